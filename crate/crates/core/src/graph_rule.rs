//! Mutation carried out literally on an arrow multiset, step by step.
//!
//! This is a second, independent route to the same operation as
//! [`Quiver::mutate`]: compose every path `i -> j -> k`, reverse the arrows
//! at `j`, then cancel opposite pairs. It exists to cross-check the matrix
//! rule and is not used on any hot path.

use std::collections::BTreeMap;

use crate::error::QuiverError;
use crate::quiver::Quiver;

/// Directed arrow counts; both directions of a pair may be present.
type Multiset = BTreeMap<(usize, usize), i64>;

pub fn mutate_by_paths(q: &Quiver, j: usize) -> Result<Quiver, QuiverError> {
    let n = q.n();
    if j >= n {
        return Err(QuiverError::VertexOutOfRange { vertex: j, n });
    }
    let mut arrows: Multiset = q.arrows().map(|(s, t, w)| ((s, t), w as i64)).collect();

    // (i) add an arrow i -> k for each path i -> j -> k
    let into: Vec<(usize, i64)> =
        arrows.iter().filter(|((_, t), _)| *t == j).map(|(&(s, _), &m)| (s, m)).collect();
    let out_of: Vec<(usize, i64)> =
        arrows.iter().filter(|((s, _), _)| *s == j).map(|(&(_, t), &m)| (t, m)).collect();
    for &(i, m1) in &into {
        for &(k, m2) in &out_of {
            *arrows.entry((i, k)).or_insert(0) += m1 * m2;
        }
    }

    // (ii) reverse every arrow incident to j
    let mut reversed: Multiset = BTreeMap::new();
    for ((s, t), m) in arrows {
        let key = if s == j || t == j { (t, s) } else { (s, t) };
        *reversed.entry(key).or_insert(0) += m;
    }

    // (iii) remove 2-cycles
    let mut out = Quiver::empty(n);
    for (&(s, t), &m) in &reversed {
        if s < t {
            let back = reversed.get(&(t, s)).copied().unwrap_or(0);
            let net = m - back;
            let w = i32::try_from(net).map_err(|_| QuiverError::WeightOverflow)?;
            out.set(s, t, w);
        } else if !reversed.contains_key(&(t, s)) {
            let w = i32::try_from(m).map_err(|_| QuiverError::WeightOverflow)?;
            out.set(s, t, w);
        }
    }
    Ok(out)
}
