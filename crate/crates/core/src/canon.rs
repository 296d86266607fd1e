//! Canonical labeling of quivers.
//!
//! Vertices are first coloured by their (out-weight, in-weight) multisets and
//! the colouring is refined until stable. Remaining ties are broken by
//! individualising each vertex of the first non-singleton cell in turn,
//! refining again, and recursing. Every discrete leaf yields a relabelled
//! matrix; the key is the lexicographically least upper triangle among them.
//! Non-adjacent twins (vertices with identical rows) are interchangeable, so
//! only one of each twin class is tried per cell.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;
use crate::quiver::Quiver;

/// Isomorphism-invariant byte string identifying a quiver up to relabelling.
///
/// Layout: one byte `n`, then the `n(n-1)/2` upper-triangle entries of the
/// canonically relabelled matrix, row-major, each as a zigzag LEB128 varint.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self, QuiverError> {
        let key = CanonicalKey(bytes);
        key.decode()?;
        Ok(key)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, QuiverError> {
        let bytes = hex::decode(s).map_err(|_| QuiverError::BadKey)?;
        Self::from_bytes(bytes)
    }

    /// Vertex count encoded in the key.
    pub fn n(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    /// The canonical representative the key was built from.
    pub fn decode(&self) -> Result<Quiver, QuiverError> {
        let (&n, mut rest) = self.0.split_first().ok_or(QuiverError::BadKey)?;
        let n = n as usize;
        let mut q = Quiver::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                let (v, tail) = read_varint(rest).ok_or(QuiverError::BadKey)?;
                rest = tail;
                if v != 0 {
                    q.set(i, j, v);
                }
            }
        }
        if !rest.is_empty() {
            return Err(QuiverError::BadKey);
        }
        Ok(q)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl From<CanonicalKey> for String {
    fn from(k: CanonicalKey) -> String {
        k.to_hex()
    }
}

impl TryFrom<String> for CanonicalKey {
    type Error = QuiverError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        CanonicalKey::from_hex(&s)
    }
}

fn write_varint(out: &mut Vec<u8>, v: i32) {
    let mut z = ((v << 1) ^ (v >> 31)) as u32;
    loop {
        let byte = (z & 0x7f) as u8;
        z >>= 7;
        if z == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn read_varint(bytes: &[u8]) -> Option<(i32, &[u8])> {
    let mut z: u32 = 0;
    for (idx, &byte) in bytes.iter().enumerate().take(5) {
        z |= ((byte & 0x7f) as u32) << (7 * idx);
        if byte & 0x80 == 0 {
            let v = ((z >> 1) as i32) ^ -((z & 1) as i32);
            return Some((v, &bytes[idx + 1..]));
        }
    }
    None
}

/// Canonical key of `q`.
pub fn canonical_key(q: &Quiver) -> CanonicalKey {
    let (form, _) = canonical_form(q);
    encode(&form)
}

/// Canonical key together with the canonical representative it encodes.
pub fn canonicalize(q: &Quiver) -> (CanonicalKey, Quiver) {
    let (form, _) = canonical_form(q);
    (encode(&form), form)
}

/// Canonical relabeling: the relabelled quiver and `labeling[v]` = new index of `v`.
pub fn canonical_form(q: &Quiver) -> (Quiver, Vec<usize>) {
    let n = q.n();
    if n == 0 {
        return (q.clone(), Vec::new());
    }
    let search = Search::new(q);
    let labeling = search.run();
    let form = q.permute(&labeling).expect("labeling is a permutation");
    (form, labeling)
}

/// True iff some vertex bijection carries `a` onto `b` entrywise.
pub fn are_isomorphic(a: &Quiver, b: &Quiver) -> bool {
    if a.n() != b.n() || a.arrow_count() != b.arrow_count() {
        return false;
    }
    let mut da: Vec<_> = (0..a.n()).map(|v| (a.out_degree(v), a.in_degree(v))).collect();
    let mut db: Vec<_> = (0..b.n()).map(|v| (b.out_degree(v), b.in_degree(v))).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_key(a) == canonical_key(b)
}

fn encode(form: &Quiver) -> CanonicalKey {
    let n = form.n();
    let mut bytes = Vec::with_capacity(1 + n * (n.saturating_sub(1)) / 2);
    bytes.push(n as u8);
    for i in 0..n {
        for j in i + 1..n {
            write_varint(&mut bytes, form.get(i, j));
        }
    }
    CanonicalKey(bytes)
}

struct Search<'a> {
    q: &'a Quiver,
    n: usize,
    /// Twin class representative for each vertex.
    twin_rep: Vec<usize>,
    best: Option<(Vec<i32>, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(q: &'a Quiver) -> Self {
        let n = q.n();
        let mut twin_rep: Vec<usize> = (0..n).collect();
        for v in 0..n {
            for u in 0..v {
                if twin_rep[u] == u && are_twins(q, u, v) {
                    twin_rep[v] = u;
                    break;
                }
            }
        }
        Search { q, n, twin_rep, best: None }
    }

    fn run(mut self) -> Vec<usize> {
        let colors = self.initial_colors();
        let colors = self.refine(colors);
        self.descend(colors);
        self.best.expect("search reaches at least one leaf").1
    }

    fn initial_colors(&self) -> Vec<u32> {
        let sigs: Vec<(Vec<i32>, Vec<i32>)> = (0..self.n)
            .map(|v| {
                let row = self.q.row(v);
                let mut outs: Vec<i32> = row.iter().copied().filter(|&w| w > 0).collect();
                let mut ins: Vec<i32> = row.iter().copied().filter(|&w| w < 0).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (outs, ins)
            })
            .collect();
        rank(&sigs)
    }

    /// Iterated neighbourhood refinement until the number of cells is stable.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = self.n;
        let mut cells = count_distinct(&colors);
        loop {
            if cells == n {
                return colors;
            }
            let sigs: Vec<(u32, Vec<(u32, i32)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u32, i32)> = self
                        .q
                        .row(v)
                        .iter()
                        .enumerate()
                        .filter(|(_, &w)| w != 0)
                        .map(|(u, &w)| (colors[u], w))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let next = rank(&sigs);
            let next_cells = count_distinct(&next);
            colors = next;
            if next_cells == cells {
                return colors;
            }
            cells = next_cells;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let n = self.n;
        // First non-singleton cell by colour order.
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = counts.iter().position(|&k| k > 1);
        let Some(target) = target else {
            self.leaf(&colors);
            return;
        };
        let target = target as u32;
        let mut tried_reps: Vec<usize> = Vec::new();
        for v in 0..n {
            if colors[v] != target {
                continue;
            }
            let rep = self.twin_rep[v];
            if tried_reps.contains(&rep) {
                continue;
            }
            tried_reps.push(rep);
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
                .collect();
            let split = rank_values(&split);
            let refined = self.refine(split);
            self.descend(refined);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let n = self.n;
        let labeling: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let mut inv = vec![0usize; n];
        for (v, &l) in labeling.iter().enumerate() {
            inv[l] = v;
        }
        let mut tri = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                tri.push(self.q.get(inv[i], inv[j]));
            }
        }
        match &self.best {
            Some((best, _)) if *best <= tri => {}
            _ => self.best = Some((tri, labeling)),
        }
    }
}

fn are_twins(q: &Quiver, u: usize, v: usize) -> bool {
    if q.get(u, v) != 0 {
        return false;
    }
    (0..q.n()).all(|w| w == u || w == v || q.get(u, w) == q.get(v, w))
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut seen = vec![false; colors.len()];
    let mut k = 0;
    for &c in colors {
        if !seen[c as usize] {
            seen[c as usize] = true;
            k += 1;
        }
    }
    k
}

/// Dense ranks `0..k` of the values, ordered by value.
fn rank<T: Ord>(sigs: &[T]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..sigs.len()).collect();
    order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
    let mut out = vec![0u32; sigs.len()];
    let mut r = 0u32;
    for w in 0..order.len() {
        if w > 0 && sigs[order[w]] != sigs[order[w - 1]] {
            r += 1;
        }
        out[order[w]] = r;
    }
    out
}

fn rank_values(vals: &[u32]) -> Vec<u32> {
    rank(vals)
}
