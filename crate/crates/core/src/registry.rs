//! Registry of enumerated mutation classes keyed by `(family, n)`.
//!
//! On disk a registry is a directory holding one file per entry, named
//! `<family>_<n>.qreg` (for example `D-tilde_10.qreg`). Each file is UTF-8
//! text with `\n` line endings:
//!
//! ```text
//! quiverlab-registry v1
//! family <family>
//! n <vertex count>
//! classes <k>
//! class <i> seed <hex key> size <members> truncated <none|max-depth:D|max-members:M>   (k lines)
//! members <total>
//! <hex key> <depth> <class index>                                                  (total lines)
//! ```
//!
//! Member lines are sorted by key. Depths are relative to the seed of the
//! class the member belongs to.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey};
use crate::enumerate::{enumerate_class, EnumLimits, MutationClass, Truncation};
use crate::error::QuiverError;
use crate::quiver::Quiver;
use crate::seed::{seed_orientations, Family, SeedSpec};

pub const FORMAT_HEADER: &str = "quiverlab-registry v1";

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}:{line}: {msg}")]
    Format { path: String, line: usize, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegistryConfig {
    /// Label under which the shared 9-vertex E_9 / E-tilde_8 class is stored.
    pub e9_label: Family,
    /// Depth limit for the mutation-infinite E classes (10 or more vertices).
    pub infinite_depth: u32,
    /// Depth limit for the 9-vertex E class. The full class has 7560
    /// members; the reference data set stops at depth 8 (4376 members).
    pub e9_depth: Option<u32>,
}

impl Default for RegistryConfig {
    fn default() -> Self {
        RegistryConfig { e9_label: Family::ETilde, infinite_depth: 8, e9_depth: Some(8) }
    }
}

impl RegistryConfig {
    /// Whether `(family, n)` gets its own entry under this configuration.
    pub fn stores(&self, family: Family, n: usize) -> bool {
        if !family.is_defined(n) {
            return false;
        }
        if n == 9 && matches!(family, Family::E | Family::ETilde) {
            return family == self.e9_label;
        }
        true
    }

    pub fn limits_for(&self, family: Family, n: usize) -> EnumLimits {
        if n == 9 && matches!(family, Family::E | Family::ETilde) {
            return self.e9_depth.map_or_else(EnumLimits::unbounded, EnumLimits::depth);
        }
        if family.is_mutation_finite(n) {
            EnumLimits::unbounded()
        } else {
            EnumLimits::depth(self.infinite_depth)
        }
    }
}

/// All quivers of one `(family, n)`: a single class, or for A-tilde one class
/// per cycle orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryEntry {
    pub family: Family,
    pub n: usize,
    pub classes: Vec<MutationClass>,
}

impl RegistryEntry {
    pub fn enumerate(family: Family, n: usize, limits: &EnumLimits) -> Result<Self, QuiverError> {
        let spec = SeedSpec::new(family, n)?;
        let classes = seed_orientations(spec)?
            .iter()
            .map(|q| enumerate_class(q, limits))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RegistryEntry { family, n, classes })
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(MutationClass::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_truncated(&self) -> bool {
        self.classes.iter().any(|c| c.truncated.is_some())
    }

    pub fn contains_key(&self, key: &CanonicalKey) -> bool {
        self.classes.iter().any(|c| c.contains_key(key))
    }

    pub fn contains(&self, q: &Quiver) -> bool {
        q.n() == self.n && self.contains_key(&canonical_key(q))
    }

    /// Index of the orientation class holding `key`, with its depth.
    pub fn locate(&self, key: &CanonicalKey) -> Option<(usize, u32)> {
        self.classes
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.depth(key).map(|d| (i, d)))
    }

    /// `(key, depth, class index)` for every member, sorted by key.
    pub fn members(&self) -> Vec<(&CanonicalKey, u32, usize)> {
        let mut out: Vec<_> = self
            .classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.depth_map().iter().map(move |(k, &d)| (k, d, i)))
            .collect();
        out.sort_unstable_by(|a, b| a.0.cmp(b.0));
        out
    }

    pub fn file_name(&self) -> String {
        format!("{}_{}.qreg", self.family, self.n)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(FORMAT_HEADER);
        out.push('\n');
        out.push_str(&format!("family {}\nn {}\nclasses {}\n", self.family, self.n, self.classes.len()));
        for (i, c) in self.classes.iter().enumerate() {
            let trunc = match c.truncated {
                None => "none".to_string(),
                Some(Truncation::MaxDepth(d)) => format!("max-depth:{d}"),
                Some(Truncation::MaxMembers(m)) => format!("max-members:{m}"),
            };
            out.push_str(&format!(
                "class {i} seed {} size {} truncated {trunc}\n",
                c.seed_key.to_hex(),
                c.len()
            ));
        }
        let members = self.members();
        out.push_str(&format!("members {}\n", members.len()));
        for (k, d, i) in members {
            out.push_str(&format!("{} {d} {i}\n", k.to_hex()));
        }
        out
    }

    pub fn from_text(text: &str, path: &str) -> Result<Self, RegistryError> {
        let err = |line: usize, msg: &str| RegistryError::Format {
            path: path.to_string(),
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &str| lines.next().ok_or_else(|| err(0, &format!("missing {what}")));

        let (ln, header) = next("header")?;
        if header != FORMAT_HEADER {
            return Err(err(ln, "unsupported header"));
        }
        let field = |(ln, l): (usize, &str), name: &str| -> Result<String, RegistryError> {
            l.strip_prefix(name)
                .and_then(|r| r.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| err(ln, &format!("expected `{name}`")))
        };
        let family: Family = field(next("family")?, "family")?
            .parse()
            .map_err(|_| err(2, "bad family"))?;
        let n: usize = field(next("n")?, "n")?.parse().map_err(|_| err(3, "bad n"))?;
        let k: usize = field(next("classes")?, "classes")?
            .parse()
            .map_err(|_| err(4, "bad class count"))?;

        let mut heads = Vec::with_capacity(k);
        for i in 0..k {
            let (ln, l) = next("class line")?;
            let parts: Vec<&str> = l.split(' ').collect();
            if parts.len() != 8
                || parts[0] != "class"
                || parts[1] != i.to_string()
                || parts[2] != "seed"
                || parts[4] != "size"
                || parts[6] != "truncated"
            {
                return Err(err(ln, "malformed class line"));
            }
            let seed = CanonicalKey::from_hex(parts[3]).map_err(|_| err(ln, "bad seed key"))?;
            let size: usize = parts[5].parse().map_err(|_| err(ln, "bad size"))?;
            let trunc = match parts[7] {
                "none" => None,
                t => {
                    let (kind, v) = t.split_once(':').ok_or_else(|| err(ln, "bad truncation"))?;
                    let v: usize = v.parse().map_err(|_| err(ln, "bad truncation"))?;
                    match kind {
                        "max-depth" => Some(Truncation::MaxDepth(v as u32)),
                        "max-members" => Some(Truncation::MaxMembers(v)),
                        _ => return Err(err(ln, "bad truncation")),
                    }
                }
            };
            heads.push((seed, size, trunc));
        }
        let total: usize = field(next("members")?, "members")?
            .parse()
            .map_err(|_| err(0, "bad member count"))?;
        let mut maps: Vec<HashMap<CanonicalKey, u32>> = vec![HashMap::new(); k];
        let mut prev: Option<CanonicalKey> = None;
        for _ in 0..total {
            let (ln, l) = next("member line")?;
            let mut it = l.split(' ');
            let (Some(h), Some(d), Some(c), None) = (it.next(), it.next(), it.next(), it.next()) else {
                return Err(err(ln, "malformed member line"));
            };
            let key = CanonicalKey::from_hex(h).map_err(|_| err(ln, "bad key"))?;
            if key.n() != n {
                return Err(err(ln, "key has wrong vertex count"));
            }
            if prev.as_ref().is_some_and(|p| *p >= key) {
                return Err(err(ln, "member keys not strictly sorted"));
            }
            let d: u32 = d.parse().map_err(|_| err(ln, "bad depth"))?;
            let c: usize = c.parse().map_err(|_| err(ln, "bad class index"))?;
            let map = maps.get_mut(c).ok_or_else(|| err(ln, "class index out of range"))?;
            map.insert(key.clone(), d);
            prev = Some(key);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, "trailing data"));
        }
        let mut classes = Vec::with_capacity(k);
        for ((seed, size, trunc), map) in heads.into_iter().zip(maps) {
            if map.len() != size || map.get(&seed) != Some(&0) {
                return Err(err(0, "class header disagrees with member lines"));
            }
            classes.push(MutationClass::from_parts(seed, map, trunc));
        }
        Ok(RegistryEntry { family, n, classes })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassRegistry {
    entries: BTreeMap<(Family, usize), RegistryEntry>,
}

impl ClassRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, entry: RegistryEntry) {
        self.entries.insert((entry.family, entry.n), entry);
    }

    pub fn get(&self, family: Family, n: usize) -> Option<&RegistryEntry> {
        self.entries.get(&(family, n))
    }

    pub fn entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries containing `q`.
    pub fn lookup(&self, q: &Quiver) -> Vec<&RegistryEntry> {
        let key = canonical_key(q);
        self.entries
            .range((Family::A, q.n())..)
            .filter(|((_, n), e)| *n == q.n() && e.contains_key(&key))
            .map(|(_, e)| e)
            .collect()
    }

    pub fn save(&self, dir: &Path) -> Result<(), RegistryError> {
        let io_err = |p: &Path, source| RegistryError::Io { path: p.display().to_string(), source };
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        for entry in self.entries.values() {
            let path = dir.join(entry.file_name());
            fs::write(&path, entry.to_text()).map_err(|e| io_err(&path, e))?;
        }
        Ok(())
    }

    /// Loads every `*.qreg` file in `dir`.
    pub fn load(dir: &Path) -> Result<Self, RegistryError> {
        let io_err = |p: &Path, source| RegistryError::Io { path: p.display().to_string(), source };
        let mut paths: Vec<_> = fs::read_dir(dir)
            .map_err(|e| io_err(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "qreg"))
            .collect();
        paths.sort();
        let mut reg = ClassRegistry::new();
        for path in paths {
            let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            reg.insert(RegistryEntry::from_text(&text, &path.display().to_string())?);
        }
        Ok(reg)
    }
}

/// Enumerates every stored `(family, n)` for `n` in `sizes`.
pub fn build_registry(
    sizes: impl IntoIterator<Item = usize>,
    families: &[Family],
    config: &RegistryConfig,
) -> Result<ClassRegistry, QuiverError> {
    let mut reg = ClassRegistry::new();
    for n in sizes {
        for &family in families {
            if config.stores(family, n) {
                let limits = config.limits_for(family, n);
                reg.insert(RegistryEntry::enumerate(family, n, &limits)?);
            }
        }
    }
    Ok(reg)
}
