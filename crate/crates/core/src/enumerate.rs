//! Breadth-first enumeration of mutation classes up to isomorphism.
//!
//! Layers are expanded in parallel; each candidate is reduced to its
//! canonical key, and the new layer is the sorted set of keys not seen in any
//! earlier layer. The member set and depth map therefore do not depend on the
//! number of workers or on scheduling.
//!
//! Depths are measured from the given start quiver. Two orientations of the
//! same tree diagram enumerate the same member set but generally assign
//! different depths.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, canonicalize, CanonicalKey};
use crate::error::QuiverError;
use crate::quiver::Quiver;

/// Member budget applied when neither depth nor member limit is given.
pub const DEFAULT_MEMBER_BUDGET: usize = 5_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumLimits {
    pub max_depth: Option<u32>,
    pub max_members: Option<usize>,
    /// Post-enumeration subsample `(cap, rng seed)`, applied by consumers
    /// through [`MutationClass::subsample`].
    pub sample_cap: Option<(usize, u64)>,
}

impl EnumLimits {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn depth(max_depth: u32) -> Self {
        EnumLimits { max_depth: Some(max_depth), ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Truncation {
    MaxDepth(u32),
    MaxMembers(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
    /// Not found in a truncated class: the quiver may lie beyond the limit.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationClass {
    pub seed_key: CanonicalKey,
    depth_of: HashMap<CanonicalKey, u32>,
    pub truncated: Option<Truncation>,
}

impl MutationClass {
    pub(crate) fn from_parts(
        seed_key: CanonicalKey,
        depth_of: HashMap<CanonicalKey, u32>,
        truncated: Option<Truncation>,
    ) -> Self {
        MutationClass { seed_key, depth_of, truncated }
    }

    pub fn len(&self) -> usize {
        self.depth_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth_of.is_empty()
    }

    pub fn contains_key(&self, key: &CanonicalKey) -> bool {
        self.depth_of.contains_key(key)
    }

    pub fn depth(&self, key: &CanonicalKey) -> Option<u32> {
        self.depth_of.get(key).copied()
    }

    pub fn max_depth(&self) -> u32 {
        self.depth_of.values().copied().max().unwrap_or(0)
    }

    pub fn depth_map(&self) -> &HashMap<CanonicalKey, u32> {
        &self.depth_of
    }

    /// Members in key order.
    pub fn sorted_keys(&self) -> Vec<&CanonicalKey> {
        let mut keys: Vec<_> = self.depth_of.keys().collect();
        keys.sort_unstable();
        keys
    }

    /// Representative quivers of all members, in key order.
    pub fn quivers(&self) -> Vec<Quiver> {
        self.sorted_keys()
            .into_iter()
            .map(|k| k.decode().expect("registry keys decode"))
            .collect()
    }

    pub fn member(&self, q: &Quiver) -> Membership {
        if self.contains_key(&canonical_key(q)) {
            Membership::Member
        } else if self.truncated.is_some() {
            Membership::Unknown
        } else {
            Membership::NotMember
        }
    }

    /// Deterministic uniform sample without replacement of `min(cap, len)` keys,
    /// returned in key order.
    pub fn subsample(&self, cap: usize, rng_seed: u64) -> Vec<CanonicalKey> {
        let keys = self.sorted_keys();
        if cap >= keys.len() {
            return keys.into_iter().cloned().collect();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let mut picked = rand::seq::index::sample(&mut rng, keys.len(), cap).into_vec();
        picked.sort_unstable();
        picked.into_iter().map(|i| keys[i].clone()).collect()
    }
}

/// Enumerates the mutation class of `start` on the global thread pool.
pub fn enumerate_class(start: &Quiver, limits: &EnumLimits) -> Result<MutationClass, QuiverError> {
    let n = start.n();
    let (seed_key, seed_form) = canonicalize(start);
    let member_cap = match (limits.max_depth, limits.max_members) {
        (None, None) => Some(DEFAULT_MEMBER_BUDGET),
        (_, cap) => cap,
    };

    let mut depth_of: HashMap<CanonicalKey, u32> = HashMap::new();
    depth_of.insert(seed_key.clone(), 0);
    let mut frontier: Vec<Quiver> = vec![seed_form];
    let mut depth = 0u32;
    let mut truncated = None;

    while !frontier.is_empty() {
        let layer = expand(&frontier, n, &depth_of)?;
        if layer.is_empty() {
            break;
        }
        if limits.max_depth == Some(depth) {
            truncated = Some(Truncation::MaxDepth(depth));
            break;
        }
        let room = member_cap.map(|cap| cap.saturating_sub(depth_of.len()));
        let take = room.map_or(layer.len(), |r| r.min(layer.len()));
        if take == 0 {
            truncated = member_cap.map(Truncation::MaxMembers);
            break;
        }
        depth += 1;
        let overflow = take < layer.len();
        let mut next = Vec::with_capacity(take);
        for (key, form) in layer.into_iter().take(take) {
            depth_of.insert(key, depth);
            next.push(form);
        }
        if overflow {
            truncated = member_cap.map(Truncation::MaxMembers);
            break;
        }
        frontier = next;
    }
    Ok(MutationClass { seed_key, depth_of, truncated })
}

/// Runs [`enumerate_class`] on a dedicated pool with `workers` threads.
pub fn enumerate_class_with_workers(
    start: &Quiver,
    limits: &EnumLimits,
    workers: usize,
) -> Result<MutationClass, QuiverError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| enumerate_class(start, limits))
}

/// Canonical forms of all single mutations of the frontier that are not yet
/// known, deduplicated and sorted by key.
fn expand(
    frontier: &[Quiver],
    n: usize,
    known: &HashMap<CanonicalKey, u32>,
) -> Result<Vec<(CanonicalKey, Quiver)>, QuiverError> {
    let mut found: Vec<(CanonicalKey, Quiver)> = frontier
        .par_iter()
        .map(|q| {
            let mut out = Vec::with_capacity(n);
            for j in 0..n {
                let (key, form) = canonicalize(&q.mutate(j)?);
                if !known.contains_key(&key) {
                    out.push((key, form));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, QuiverError>>()?
        .into_iter()
        .flatten()
        .collect();
    found.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::{seed, Family, SeedSpec};

    fn seed_of(f: Family, n: usize) -> Quiver {
        seed(SeedSpec::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn a3_has_four_members() {
        let class = enumerate_class(&seed_of(Family::A, 3), &EnumLimits::unbounded()).unwrap();
        assert_eq!(class.len(), 4);
        assert!(class.truncated.is_none());
        assert_eq!(class.depth(&class.seed_key), Some(0));
    }

    #[test]
    fn depth_limit_truncates() {
        let class = enumerate_class(&seed_of(Family::D, 6), &EnumLimits::depth(1)).unwrap();
        assert_eq!(class.truncated, Some(Truncation::MaxDepth(1)));
        assert!(class.max_depth() <= 1);
        assert_eq!(class.member(&seed_of(Family::D, 6)), Membership::Member);
        let far = seed_of(Family::D, 6).mutate_seq(&[2, 3, 1, 4, 0]).unwrap();
        if !class.contains_key(&canonical_key(&far)) {
            assert_eq!(class.member(&far), Membership::Unknown);
        }
    }

    #[test]
    fn depth_limit_larger_than_class_is_not_truncation() {
        let class = enumerate_class(&seed_of(Family::A, 4), &EnumLimits::depth(50)).unwrap();
        assert!(class.truncated.is_none());
    }

    #[test]
    fn member_limit_truncates() {
        let limits = EnumLimits { max_members: Some(5), ..EnumLimits::default() };
        let class = enumerate_class(&seed_of(Family::D, 6), &limits).unwrap();
        assert_eq!(class.len(), 5);
        assert_eq!(class.truncated, Some(Truncation::MaxMembers(5)));
    }

    #[test]
    fn subsample_behaviour() {
        let class = enumerate_class(&seed_of(Family::A, 6), &EnumLimits::unbounded()).unwrap();
        let all = class.subsample(10_000, 1);
        assert_eq!(all.len(), class.len());
        let s1 = class.subsample(10, 42);
        let s2 = class.subsample(10, 42);
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 10);
        let mut d = s1.clone();
        d.dedup();
        assert_eq!(d.len(), 10);
    }

    #[test]
    fn distinct_classes_disjoint() {
        let a = enumerate_class(&seed_of(Family::A, 5), &EnumLimits::unbounded()).unwrap();
        let d = enumerate_class(&seed_of(Family::D, 5), &EnumLimits::unbounded()).unwrap();
        assert_eq!(a.member(&seed_of(Family::D, 5)), Membership::NotMember);
        assert!(a.sorted_keys().iter().all(|k| !d.contains_key(k)));
    }
}
