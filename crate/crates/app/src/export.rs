//! Line-delimited dataset export.
//!
//! One JSON object per line:
//!
//! ```text
//! {"v":1,"split":"train","label":"D","n":7,"depth":3,"matrix":[[0,1,...],...]}
//! ```
//!
//! `matrix` is the signed exchange matrix, row-major. Optional fields:
//! `class` (orientation class index, A-tilde only), `truncated` (present and
//! `true` when the entry is depth-limited) and `edges` (with
//! `--sage-edges`). Each `edges` item is `[s, t, k, -k]` for `k` parallel
//! arrows `s -> t`: one edge carrying the attribute pair `(k, -k)`.
//!
//! Records are grouped by family in the order A, D, E, A-tilde, D-tilde,
//! E-tilde, then by `n`; within a group they follow canonical-key order.
//! Identical arguments give byte-identical files.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use quiverlab_core::{ClassRegistry, EnumLimits, Family, RegistryConfig, RegistryEntry};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
    Sizegen,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Test => "test",
            Split::Sizegen => "sizegen",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Protocol {
    /// A, D, A-tilde, D-tilde on 7 to 10 vertices, every E-tilde, E on 6 to
    /// 8 vertices and E on 10 vertices up to depth 8.
    Train,
    /// Everything on 11 vertices, E up to depth 8.
    Test,
    /// Depth-limited classes on the given sizes, subsampled to `cap` per
    /// `(family, n)`.
    Sizegen { sizes: Vec<usize>, depth: u32, cap: usize, seed: u64 },
}

impl Protocol {
    pub fn split(&self) -> Split {
        match self {
            Protocol::Train => Split::Train,
            Protocol::Test => Split::Test,
            Protocol::Sizegen { .. } => Split::Sizegen,
        }
    }

    /// `(family, n)` pairs in output order.
    pub fn cells(&self) -> Vec<(Family, usize)> {
        let sizes: Vec<usize> = match self {
            Protocol::Train => (6..=10).collect(),
            Protocol::Test => vec![11],
            Protocol::Sizegen { sizes, .. } => sizes.clone(),
        };
        let mut out = Vec::new();
        for f in Family::ALL {
            for &n in &sizes {
                let keep = match self {
                    Protocol::Train => match f {
                        Family::E => matches!(n, 6..=8 | 10),
                        Family::ETilde => (7..=9).contains(&n),
                        _ => (7..=10).contains(&n),
                    },
                    _ => f.is_defined(n) && !(n == 9 && f == Family::E),
                };
                if keep {
                    out.push((f, n));
                }
            }
        }
        out
    }
}

impl FromStr for Protocol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "train" => Ok(Protocol::Train),
            "test" => Ok(Protocol::Test),
            "sizegen" => Ok(Protocol::Sizegen { sizes: (12..=20).collect(), depth: 6, cap: 100_000, seed: 0 }),
            _ => Err(format!("unknown protocol `{s}` (train, test, sizegen)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub v: u32,
    pub split: Split,
    pub label: Family,
    pub n: usize,
    pub depth: u32,
    pub matrix: Vec<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[i32; 4]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCount {
    pub family: Family,
    pub n: usize,
    pub records: usize,
    /// Members before subsampling.
    pub members: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub v: u32,
    pub split: Split,
    pub total: usize,
    pub cells: Vec<CellCount>,
}

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("registry has no entry for {family} on {n} vertices")]
    MissingEntry { family: Family, n: usize },
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Quiver(#[from] quiverlab_core::QuiverError),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExportOptions {
    pub sage_edges: bool,
}

/// Registry with every entry `protocol` needs, enumerated from the seeds.
pub fn registry_for(protocol: &Protocol) -> Result<ClassRegistry, ExportError> {
    let mut reg = ClassRegistry::new();
    let config = RegistryConfig::default();
    let entries: Vec<Result<RegistryEntry, ExportError>> = protocol
        .cells()
        .into_par_iter()
        .map(|(f, n)| {
            let limits = match protocol {
                Protocol::Sizegen { depth, .. } => EnumLimits::depth(*depth),
                _ => config.limits_for(f, n),
            };
            Ok(RegistryEntry::enumerate(f, n, &limits)?)
        })
        .collect();
    for e in entries {
        reg.insert(e?);
    }
    Ok(reg)
}

fn lookup(reg: &ClassRegistry, f: Family, n: usize) -> Result<&RegistryEntry, ExportError> {
    reg.get(f, n)
        .or_else(|| if n == 9 && f == Family::ETilde { reg.get(Family::E, 9) } else { None })
        .ok_or(ExportError::MissingEntry { family: f, n })
}

fn sage_edges(m: &[Vec<i32>]) -> Vec<[i32; 4]> {
    let mut out = Vec::new();
    for (s, row) in m.iter().enumerate() {
        for (t, &k) in row.iter().enumerate() {
            if k > 0 {
                out.push([s as i32, t as i32, k, -k]);
            }
        }
    }
    out
}

/// Records of one `(family, n)` cell and the member count before sampling.
pub fn cell_records(
    entry: &RegistryEntry,
    protocol: &Protocol,
    opts: ExportOptions,
) -> Result<(Vec<DatasetRecord>, usize), ExportError> {
    let mut members = entry.members();
    let total = members.len();
    members.sort_by(|a, b| a.0.cmp(b.0));
    if let Protocol::Sizegen { cap, seed, .. } = protocol {
        if members.len() > *cap {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((entry.family as u64) << 32) ^ entry.n as u64);
            let mut idx = rand::seq::index::sample(&mut rng, members.len(), *cap).into_vec();
            idx.sort_unstable();
            members = idx.into_iter().map(|i| members[i]).collect();
        }
    }
    let multi = entry.classes.len() > 1;
    let truncated = entry.is_truncated();
    let split = protocol.split();
    let records = members
        .into_iter()
        .map(|(key, depth, class)| {
            let matrix = key.decode()?.to_matrix();
            Ok(DatasetRecord {
                v: FORMAT_VERSION,
                split,
                label: entry.family,
                n: entry.n,
                depth,
                edges: opts.sage_edges.then(|| sage_edges(&matrix)),
                matrix,
                class: multi.then_some(class),
                truncated,
            })
        })
        .collect::<Result<Vec<_>, ExportError>>()?;
    Ok((records, total))
}

/// Writes `<out>/<split>.jsonl` and `<out>/<split>.manifest.json`.
/// Returns the manifest.
pub fn export_dataset(
    reg: &ClassRegistry,
    protocol: &Protocol,
    out: &Path,
    opts: ExportOptions,
) -> Result<Manifest, ExportError> {
    let cells = protocol.cells();
    let entries: Vec<&RegistryEntry> =
        cells.iter().map(|&(f, n)| lookup(reg, f, n)).collect::<Result<_, _>>()?;
    let io = |p: &Path| {
        let path = p.display().to_string();
        move |source| ExportError::Io { path, source }
    };
    fs::create_dir_all(out).map_err(io(out))?;
    let split = protocol.split();
    let data: PathBuf = out.join(format!("{split}.jsonl"));
    let mut w = BufWriter::new(fs::File::create(&data).map_err(io(&data))?);
    let groups: Vec<Result<(Vec<DatasetRecord>, usize), ExportError>> =
        entries.par_iter().map(|e| cell_records(e, protocol, opts)).collect();
    let mut manifest = Manifest { v: FORMAT_VERSION, split, total: 0, cells: Vec::new() };
    for ((&(family, n), entry), group) in cells.iter().zip(&entries).zip(groups) {
        let (records, members) = group?;
        for r in &records {
            let line = serde_json::to_string(r).expect("record serializes");
            writeln!(w, "{line}").map_err(io(&data))?;
        }
        manifest.total += records.len();
        manifest.cells.push(CellCount { family, n, records: records.len(), members, truncated: entry.is_truncated() });
    }
    w.flush().map_err(io(&data))?;
    let mpath = out.join(format!("{split}.manifest.json"));
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    fs::write(&mpath, text).map_err(io(&mpath))?;
    Ok(manifest)
}
