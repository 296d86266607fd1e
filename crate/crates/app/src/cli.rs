use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverlab_classify::classify;
use quiverlab_core::format::{parse_quiver, write_arrow_list, write_matrix};
use quiverlab_core::{
    build_registry, ClassRegistry, EnumLimits, Family, RegistryConfig, RegistryEntry,
};
use quiverlab_verify::{
    closure_check, mutation_implementation_check, oracle_cross_check, standard_rules, transition_check,
    VerificationReport,
};
use serde_json::{json, Map, Value};

use crate::export::{export_dataset, registry_for, ExportOptions, Protocol};
use crate::parse_sizes;
use crate::service::{serve, PROTOCOL_VERSION};

#[derive(Debug, Parser)]
#[command(name = "quiverlab", version, about = "Quiver mutation classes: enumeration, classification, verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate mutation classes and optionally save them as a registry.
    Enumerate(EnumerateArgs),
    /// Classify quiver files; one JSON line per file.
    Classify(ClassifyArgs),
    /// Run verification suites; exits nonzero on any failure.
    Verify(VerifyArgs),
    /// Write a line-delimited dataset.
    Export(ExportArgs),
    /// Serve the local HTTP interface.
    Serve(ServeArgs),
    /// Apply a mutation sequence to a quiver file and print the result.
    Mutate(MutateArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Family name (A, D, E, A-tilde, D-tilde, E-tilde) or `all`; repeatable.
    #[arg(long, required = true)]
    pub family: Vec<String>,
    /// Size, range `7..11` or list `7,9`.
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub max_depth: Option<u32>,
    /// Enumerate the whole 9-vertex E-tilde class instead of stopping at depth 8.
    #[arg(long)]
    pub full_e9: bool,
    /// Registry directory to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, env = "QUIVERLAB_REGISTRY")]
    pub registry: Option<PathBuf>,
    /// Include the certificate in each record.
    #[arg(long)]
    pub certificate: bool,
    /// Quiver files in arrow-list or matrix form; `-` reads stdin.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Closure,
    Transitions,
    Mutation,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value = "7..11")]
    pub n: String,
    #[arg(long, env = "QUIVERLAB_REGISTRY")]
    pub registry: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolName {
    Train,
    Test,
    Sizegen,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum)]
    pub protocol: ProtocolName,
    #[arg(long)]
    pub out: PathBuf,
    /// Registry directory; classes are enumerated when absent.
    #[arg(long, env = "QUIVERLAB_REGISTRY")]
    pub registry: Option<PathBuf>,
    /// Sizes for `sizegen`.
    #[arg(long, default_value = "12..20")]
    pub sizes: String,
    /// Depth limit for `sizegen`.
    #[arg(long, default_value_t = 6)]
    pub depth: u32,
    /// Records per `(family, n)` for `sizegen`.
    #[arg(long, default_value_t = 100_000)]
    pub cap: usize,
    /// Sampling seed for `sizegen`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add the `edges` field with `(k, -k)` attributes.
    #[arg(long)]
    pub sage_edges: bool,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8765")]
    pub bind: String,
    #[arg(long, env = "QUIVERLAB_REGISTRY")]
    pub registry: Option<PathBuf>,
    /// Sizes to enumerate at startup when no registry directory is given.
    #[arg(long, default_value = "3..9")]
    pub sizes: String,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    /// Vertex to mutate at; repeat for a sequence, applied left to right.
    #[arg(long = "at")]
    pub at: Vec<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Quiver file; `-` reads stdin.
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Arrows,
    Matrix,
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn families(names: &[String]) -> Result<Vec<Family>> {
    let mut out = Vec::new();
    for s in names {
        if s.eq_ignore_ascii_case("all") {
            out.extend(Family::ALL);
        } else {
            out.push(s.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn sizes(s: &str) -> Result<Vec<usize>> {
    parse_sizes(s).map_err(anyhow::Error::msg)
}

fn load_registry(dir: &Path) -> Result<ClassRegistry> {
    ClassRegistry::load(dir).with_context(|| format!("loading registry {}", dir.display()))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate(a) => enumerate(a, out),
        Command::Classify(a) => classify_files(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Export(a) => export(a, out),
        Command::Serve(a) => {
            let reg = match &a.registry {
                Some(dir) => load_registry(dir)?,
                None => build_registry(sizes(&a.sizes)?, &Family::ALL, &RegistryConfig::default())?,
            };
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(serve(reg, &a.bind))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mutate(a) => {
            let text = read_input(&a.file)?;
            let q = parse_quiver(&text)?;
            let m = q.mutate_seq(&a.at)?;
            let matrix_in = text.trim_start().starts_with('[');
            match a.format {
                Some(Format::Matrix) => writeln!(out, "{}", write_matrix(&m))?,
                None if matrix_in => writeln!(out, "{}", write_matrix(&m))?,
                _ => write!(out, "{}", write_arrow_list(&m))?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let config = RegistryConfig { e9_depth: if a.full_e9 { None } else { Some(8) }, ..RegistryConfig::default() };
    let mut reg = ClassRegistry::new();
    let fams = families(&a.family)?;
    for n in sizes(&a.n)? {
        for &f in &fams {
            // the 9-vertex E class is the E-tilde one
            if !f.is_defined(n) || (n == 9 && f == Family::E && fams.contains(&Family::ETilde)) {
                continue;
            }
            let limits = match a.max_depth {
                Some(d) => EnumLimits::depth(d),
                None => config.limits_for(f, n),
            };
            let entry = RegistryEntry::enumerate(f, n, &limits)?;
            let mut hist: Vec<usize> = Vec::new();
            for (_, d, _) in entry.members() {
                let d = d as usize;
                if hist.len() <= d {
                    hist.resize(d + 1, 0);
                }
                hist[d] += 1;
            }
            let hist: Vec<String> = hist.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "{f} n={n} members={} classes={} truncated={} depths={}",
                entry.len(),
                entry.classes.len(),
                entry.is_truncated(),
                hist.join(",")
            )?;
            reg.insert(entry);
        }
    }
    if let Some(dir) = &a.out {
        reg.save(dir).with_context(|| format!("writing registry {}", dir.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn classify_files(a: ClassifyArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let reg = a.registry.as_deref().map(load_registry).transpose()?;
    let mut ok = true;
    for path in &a.files {
        let file = path.display().to_string();
        let mut record = Map::new();
        record.insert("v".into(), json!(PROTOCOL_VERSION));
        record.insert("file".into(), json!(file));
        match read_input(path).and_then(|t| Ok(parse_quiver(&t)?)) {
            Ok(q) => {
                let mut v = classify(&q, reg.as_ref());
                if !a.certificate {
                    v.certificate = None;
                }
                if let Value::Object(fields) = serde_json::to_value(&v)? {
                    record.extend(fields);
                }
                if !a.certificate {
                    record.remove("certificate");
                }
            }
            Err(e) => {
                ok = false;
                record.insert("error".into(), json!(format!("{e:#}")));
            }
        }
        writeln!(out, "{}", Value::Object(record))?;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let ns = sizes(&a.n)?;
    let run = |s: Suite| a.suite == Suite::All || a.suite == s;
    let mut report = VerificationReport::new(&format!("{:?}", a.suite).to_lowercase());
    if run(Suite::Mutation) {
        report.merge(mutation_implementation_check(a.trials, a.seed));
    }
    if run(Suite::Oracle) {
        let reg = match &a.registry {
            Some(dir) => load_registry(dir)?,
            None => {
                let mut reg = build_registry(ns.iter().copied(), &Family::ALL, &RegistryConfig::default())?;
                if ns.contains(&9) {
                    reg.insert(RegistryEntry::enumerate(Family::ETilde, 9, &EnumLimits::unbounded())?);
                }
                reg
            }
        };
        for &n in &ns {
            for f in Family::ALL {
                if f.is_defined(n) && !(n == 9 && f == Family::E) {
                    report.merge(oracle_cross_check(f, n, &reg)?);
                }
            }
        }
    }
    let affine: Vec<usize> = ns.iter().copied().filter(|&n| n >= 5).collect();
    if run(Suite::Closure) {
        for &n in &affine {
            report.merge(closure_check(n)?);
        }
    }
    if run(Suite::Transitions) {
        let rules = standard_rules();
        for &n in &affine {
            report.merge(transition_check(&rules, n)?);
        }
    }
    write!(out, "{report}")?;
    if report.checks.is_empty() {
        bail!("no checks ran for sizes {}", a.n);
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn export(a: ExportArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let protocol = match a.protocol {
        ProtocolName::Train => Protocol::Train,
        ProtocolName::Test => Protocol::Test,
        ProtocolName::Sizegen => Protocol::Sizegen { sizes: sizes(&a.sizes)?, depth: a.depth, cap: a.cap, seed: a.seed },
    };
    let reg = match &a.registry {
        Some(dir) => load_registry(dir)?,
        None => registry_for(&protocol)?,
    };
    let manifest = export_dataset(&reg, &protocol, &a.out, ExportOptions { sage_edges: a.sage_edges })?;
    for c in &manifest.cells {
        writeln!(
            out,
            "{} n={} records={} members={}{}",
            c.family,
            c.n,
            c.records,
            c.members,
            if c.truncated { " truncated" } else { "" }
        )?;
    }
    writeln!(out, "wrote {} records to {}", manifest.total, a.out.join(format!("{}.jsonl", manifest.split)).display())?;
    Ok(ExitCode::SUCCESS)
}
