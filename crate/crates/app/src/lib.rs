//! Command line tool, dataset exporter and local HTTP service.

pub mod cli;
pub mod export;
pub mod service;

/// Parses `7`, `7..11` (inclusive) or `7,9,11`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad size `{t}`"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}
