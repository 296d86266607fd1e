//! Chordless oriented cycles and paths, and central cycles with their spikes.

use quiverlab_core::Quiver;
use serde::{Deserialize, Serialize};

use crate::type_a::neighbor_masks;

/// An oriented chordless cycle `v0 -> v1 -> ... -> v0` together with the
/// spike apexes found on each of its arrows. `spikes[i]` lists the vertices
/// `s` off the cycle with `v(i+1) -> s -> v(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCycle {
    pub vertices: Vec<usize>,
    pub spikes: Vec<Vec<usize>>,
}

impl CentralCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// Every arrow carries at most one spike and no vertex is a spike twice.
    pub fn has_simple_spikes(&self) -> bool {
        let mut seen: Vec<usize> = Vec::new();
        for s in &self.spikes {
            if s.len() > 1 {
                return false;
            }
            if let Some(&v) = s.first() {
                if seen.contains(&v) {
                    return false;
                }
                seen.push(v);
            }
        }
        true
    }
}

pub(crate) fn out_unit(q: &Quiver, v: usize) -> impl Iterator<Item = usize> + '_ {
    (0..q.n()).filter(move |&w| q.get(v, w) == 1)
}

/// Vertices `s` outside `avoid` with `y -> s -> x`, all of weight one.
pub(crate) fn apexes(q: &Quiver, x: usize, y: usize, avoid: u64) -> Vec<usize> {
    (0..q.n())
        .filter(|&s| avoid >> s & 1 == 0 && q.get(y, s) == 1 && q.get(s, x) == 1)
        .collect()
}

/// All chordless oriented cycles of length at least three made of weight-one
/// arrows. Each cycle is listed once, starting from its smallest vertex.
pub fn chordless_cycles(q: &Quiver) -> Vec<Vec<usize>> {
    let nbr = neighbor_masks(q);
    let mut out = Vec::new();
    for s in 0..q.n() {
        let mut path = vec![s];
        cycle_dfs(q, &nbr, s, 1u64 << s, &mut path, &mut out);
    }
    out
}

fn cycle_dfs(q: &Quiver, nbr: &[u64], s: usize, mask: u64, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let v = *path.last().unwrap();
    for w in out_unit(q, v) {
        if w <= s || mask >> w & 1 == 1 {
            continue;
        }
        let back = nbr[w] & mask & !(1u64 << v);
        if back == 0 {
            path.push(w);
            cycle_dfs(q, nbr, s, mask | 1 << w, path, out);
            path.pop();
        } else if back == 1u64 << s && path.len() >= 2 && q.get(w, s) == 1 {
            let mut c = path.clone();
            c.push(w);
            out.push(c);
        }
    }
}

/// Chordless oriented paths `from -> ... -> to` of at least `min_len` arrows
/// through vertices outside `avoid`. With `ends_may_touch` the endpoints may
/// be adjacent to each other.
pub(crate) fn chordless_paths(
    q: &Quiver,
    from: usize,
    to: usize,
    avoid: u64,
    min_len: usize,
    ends_may_touch: bool,
) -> Vec<Vec<usize>> {
    let nbr = neighbor_masks(q);
    let mut out = Vec::new();
    let mut path = vec![from];
    let ctx = PathSearch { q, nbr: &nbr, from, to, avoid, min_len, ends_may_touch };
    ctx.dfs(1u64 << from, &mut path, &mut out);
    out
}

struct PathSearch<'a> {
    q: &'a Quiver,
    nbr: &'a [u64],
    from: usize,
    to: usize,
    avoid: u64,
    min_len: usize,
    ends_may_touch: bool,
}

impl PathSearch<'_> {
    fn dfs(&self, mask: u64, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        for w in out_unit(self.q, v) {
            if mask >> w & 1 == 1 || self.avoid >> w & 1 == 1 {
                continue;
            }
            let mut back = self.nbr[w] & mask & !(1u64 << v);
            if w == self.to {
                if self.ends_may_touch {
                    back &= !(1u64 << self.from);
                }
                if back == 0 && path.len() > self.min_len.max(1) - 1 {
                    let mut p = path.clone();
                    p.push(w);
                    out.push(p);
                }
                continue;
            }
            if back == 0 {
                path.push(w);
                self.dfs(mask | 1 << w, path, out);
                path.pop();
            }
        }
    }
}

/// Chordless oriented cycles whose off-cycle neighbours are all spike apexes
/// of incident cycle arrows.
pub fn find_central_cycles(q: &Quiver) -> Vec<CentralCycle> {
    let nbr = neighbor_masks(q);
    let mut out = Vec::new();
    for vertices in chordless_cycles(q) {
        let k = vertices.len();
        let on_cycle = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        let spikes: Vec<Vec<usize>> =
            (0..k).map(|i| apexes(q, vertices[i], vertices[(i + 1) % k], on_cycle)).collect();
        let consistent = (0..k).all(|i| {
            let prev = &spikes[(i + k - 1) % k];
            let next = &spikes[i];
            let mut off = nbr[vertices[i]] & !on_cycle;
            while off != 0 {
                let u = off.trailing_zeros() as usize;
                off &= off - 1;
                if !prev.contains(&u) && !next.contains(&u) {
                    return false;
                }
            }
            true
        });
        if consistent {
            out.push(CentralCycle { vertices, spikes });
        }
    }
    out
}
