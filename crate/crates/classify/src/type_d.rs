//! Recognizer for the mutation class of D_n.
//!
//! Four shapes, each a small motif with type A pieces glued at its
//! connecting vertices:
//!
//! * I: a vertex `c` with two pendant leaves.
//! * II: an arrow `c' -> c` with two degree-two tips `t`, `c -> t -> c'`.
//! * III: an oriented square `c -> t -> c' -> t' -> c` with degree-two tips
//!   and `c`, `c'` not adjacent.
//! * IV: a chordless oriented cycle of length at least three whose arrows
//!   may each carry one spike apex with its own type A piece.

use std::fmt;
use std::str::FromStr;

use quiverlab_core::Quiver;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cert::{Certificate, Role};
use crate::cycles::{find_central_cycles, out_unit};
use crate::template::{validate, Placement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DSubtype {
    I,
    II,
    III,
    IV,
}

impl DSubtype {
    pub const ALL: [DSubtype; 4] = [DSubtype::I, DSubtype::II, DSubtype::III, DSubtype::IV];

    pub fn as_str(self) -> &'static str {
        match self {
            DSubtype::I => "I",
            DSubtype::II => "II",
            DSubtype::III => "III",
            DSubtype::IV => "IV",
        }
    }
}

impl fmt::Display for DSubtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DSubtype {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DSubtype::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown subtype `{s}`"))
    }
}

impl Serialize for DSubtype {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for DSubtype {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One end of a two-ended affine quiver: a D-shaped motif touching the
/// shared type A piece at `at`, plus private attachment vertices `far`.
#[derive(Clone, Debug)]
pub(crate) struct End {
    pub kind: DSubtype,
    pub at: usize,
    pub closed: Vec<(usize, Role)>,
    pub motif: Vec<(usize, usize, i32)>,
    pub far: Vec<usize>,
}

impl End {
    pub fn touches(&self, v: usize) -> bool {
        self.closed.iter().any(|&(c, _)| c == v)
    }
}

fn unit(q: &Quiver, s: usize, t: usize) -> bool {
    q.get(s, t) == 1
}

fn pairs<T: Copy>(xs: &[T]) -> impl Iterator<Item = (T, T)> + '_ {
    (0..xs.len()).flat_map(move |i| (i + 1..xs.len()).map(move |j| (xs[i], xs[j])))
}

fn directed(q: &Quiver, a: usize, b: usize) -> (usize, usize, i32) {
    if q.get(a, b) > 0 {
        (a, b, q.get(a, b))
    } else {
        (b, a, q.get(b, a))
    }
}

/// Two pendant leaves at `u`.
pub(crate) fn fork_ends(q: &Quiver, u: usize) -> Vec<End> {
    let leaves: Vec<usize> =
        q.neighbors(u).filter(|&x| q.degree(x) == 1 && q.get(u, x).abs() == 1).collect();
    pairs(&leaves)
        .map(|(x, y)| End {
            kind: DSubtype::I,
            at: u,
            closed: vec![(x, Role::Leaf), (y, Role::Leaf)],
            motif: vec![directed(q, u, x), directed(q, u, y)],
            far: vec![],
        })
        .collect()
}

/// Four-vertex blocks: an arrow between `u` and `w` with two tips spanning it.
pub(crate) fn block_ends(q: &Quiver, u: usize) -> Vec<End> {
    let mut out = Vec::new();
    for w in q.neighbors(u).collect::<Vec<_>>() {
        let (s, t, wt) = directed(q, u, w);
        if wt != 1 {
            continue;
        }
        let tips: Vec<usize> = (0..q.n())
            .filter(|&x| x != u && x != w && q.degree(x) == 2 && unit(q, t, x) && unit(q, x, s))
            .collect();
        for (x, y) in pairs(&tips) {
            out.push(End {
                kind: DSubtype::II,
                at: u,
                closed: vec![(x, Role::Tip), (y, Role::Tip)],
                motif: vec![(s, t, 1), (t, x, 1), (x, s, 1), (t, y, 1), (y, s, 1)],
                far: vec![w],
            });
        }
    }
    out
}

/// Oriented squares `u -> x -> w -> y -> u` with degree-two tips.
pub(crate) fn square_ends(q: &Quiver, u: usize) -> Vec<End> {
    let mut out = Vec::new();
    let outs: Vec<usize> = out_unit(q, u).filter(|&x| q.degree(x) == 2).collect();
    for &x in &outs {
        for w in out_unit(q, x).filter(|&w| w != u && !q.adjacent(u, w)).collect::<Vec<_>>() {
            for y in out_unit(q, w).filter(|&y| y != x && q.degree(y) == 2 && unit(q, y, u)) {
                out.push(End {
                    kind: DSubtype::III,
                    at: u,
                    closed: vec![(x, Role::Tip), (y, Role::Tip)],
                    motif: vec![(u, x, 1), (x, w, 1), (w, y, 1), (y, u, 1)],
                    far: vec![w],
                });
            }
        }
    }
    out
}

/// Central cycles with simple spikes, one end per spike apex.
pub(crate) fn spike_ends(q: &Quiver) -> Vec<End> {
    let mut out = Vec::new();
    for c in find_central_cycles(q) {
        if !c.has_simple_spikes() {
            continue;
        }
        let closed: Vec<(usize, Role)> = c.vertices.iter().map(|&v| (v, Role::Cycle(0))).collect();
        let mut motif: Vec<(usize, usize, i32)> = c.arrows().map(|(x, y)| (x, y, 1)).collect();
        let mut apexes = Vec::new();
        for ((x, y), s) in c.arrows().zip(&c.spikes) {
            if let Some(&s) = s.first() {
                motif.push((y, s, 1));
                motif.push((s, x, 1));
                apexes.push(s);
            }
        }
        for &s in &apexes {
            out.push(End {
                kind: DSubtype::IV,
                at: s,
                closed: closed.clone(),
                motif: motif.clone(),
                far: apexes.iter().copied().filter(|&a| a != s).collect(),
            });
        }
    }
    out
}

pub(crate) fn ends_at(q: &Quiver, u: usize) -> Vec<End> {
    let mut out = fork_ends(q, u);
    out.extend(block_ends(q, u));
    out.extend(square_ends(q, u));
    out
}

fn placements(q: &Quiver, kind: DSubtype) -> Vec<Placement> {
    let mut out = Vec::new();
    if kind == DSubtype::IV {
        for c in find_central_cycles(q) {
            if !c.has_simple_spikes() {
                continue;
            }
            let mut p = Placement::default();
            for &v in &c.vertices {
                p.close(v, Role::Cycle(0));
            }
            for ((x, y), s) in c.arrows().zip(&c.spikes) {
                p.arrow(x, y);
                if let Some(&s) = s.first() {
                    p.arrow(y, s);
                    p.arrow(s, x);
                    p.attach(s, Role::Apex);
                }
            }
            out.push(p);
        }
        return out;
    }
    for u in 0..q.n() {
        let ends = match kind {
            DSubtype::I => fork_ends(q, u),
            DSubtype::II => block_ends(q, u),
            _ => square_ends(q, u),
        };
        for e in ends {
            // for II keep the orientation with `c` at the head of the shared arrow
            if kind == DSubtype::II && q.get(e.far[0], u) != 1 {
                continue;
            }
            if kind == DSubtype::III && e.far[0] < u {
                continue;
            }
            let mut p = Placement {
                closed: e.closed.iter().map(|&(v, _)| v).collect(),
                motif: e.motif.clone(),
                roles: e.closed.clone(),
                groups: Vec::new(),
            };
            p.attach(u, Role::Connecting(0));
            for (k, &w) in e.far.iter().enumerate() {
                p.attach(w, Role::Connecting(1 + k as u8));
            }
            out.push(p);
        }
    }
    out
}

fn matches_kind(q: &Quiver, kind: DSubtype) -> Option<Certificate> {
    placements(q, kind).iter().find_map(|p| validate(q, p))
}

/// Subtype and certificate iff `q` is mutation equivalent to D_n. On three
/// vertices this is the class of A_3. When several shapes fit, the first in
/// the order I, II, III, IV is reported.
pub fn is_type_d(q: &Quiver) -> Option<(DSubtype, Certificate)> {
    if q.n() < 3 {
        return None;
    }
    DSubtype::ALL.into_iter().find_map(|k| matches_kind(q, k).map(|c| (k, c)))
}

/// Every subtype with a valid placement, each with one certificate.
pub fn type_d_matches(q: &Quiver) -> Vec<(DSubtype, Certificate)> {
    if q.n() < 3 {
        return Vec::new();
    }
    DSubtype::ALL.into_iter().filter_map(|k| matches_kind(q, k).map(|c| (k, c))).collect()
}
