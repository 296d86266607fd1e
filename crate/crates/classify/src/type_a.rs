//! Recognizer for the mutation class of the linear A_n quiver.
//!
//! A quiver is in the class iff all weights are one, every cycle of the
//! underlying graph is an oriented triangle, degrees are at most four, a
//! degree-four vertex lies on two triangles and a degree-three vertex on
//! exactly one.
//!
//! "Every cycle is a triangle" is checked without listing cycles: the graph
//! must be connected, no edge may lie on two triangles, and the cycle rank
//! `m - n + 1` must equal the number of triangles. Edge-disjoint triangles are
//! independent in the cycle space, so equality means they form a basis, and a
//! block with four or more vertices would need a cycle that is not a single
//! triangle.

use std::collections::BTreeSet;

use quiverlab_core::Quiver;

use crate::cert::{Certificate, Role};
use crate::ClassifyError;

/// Triangle bookkeeping for an all-weight-one quiver.
pub(crate) struct Triangles {
    /// Number of triangles through each vertex.
    pub per_vertex: Vec<u8>,
    /// Triangles as vertex triples in cyclic arrow order.
    pub list: Vec<[usize; 3]>,
}

pub(crate) fn neighbor_masks(q: &Quiver) -> Vec<u64> {
    let n = q.n();
    (0..n)
        .map(|i| (0..n).filter(|&j| q.get(i, j) != 0).fold(0u64, |m, j| m | 1 << j))
        .collect()
}

/// `None` unless every triangle is oriented and no edge lies on two triangles.
fn oriented_edge_disjoint_triangles(q: &Quiver, nbr: &[u64]) -> Option<Triangles> {
    let n = q.n();
    let mut per_vertex = vec![0u8; n];
    let mut list = Vec::new();
    for i in 0..n {
        let mut higher = nbr[i] & !((2u64 << i) - 1);
        while higher != 0 {
            let j = higher.trailing_zeros() as usize;
            higher &= higher - 1;
            let common = nbr[i] & nbr[j];
            if common.count_ones() > 1 {
                return None;
            }
            if common == 0 {
                continue;
            }
            let k = common.trailing_zeros() as usize;
            if k < j {
                // counted from the pair (i, k) or (k, j) already
                continue;
            }
            let t = if q.get(i, j) > 0 { [i, j, k] } else { [j, i, k] };
            if !(q.get(t[1], t[2]) > 0 && q.get(t[2], t[0]) > 0) {
                return None;
            }
            for v in t {
                per_vertex[v] += 1;
            }
            list.push(t);
        }
    }
    Some(Triangles { per_vertex, list })
}

/// Fast membership test.
pub fn is_mutation_type_a(q: &Quiver) -> bool {
    analyse(q).is_some()
}

pub(crate) fn analyse(q: &Quiver) -> Option<Triangles> {
    let n = q.n();
    if n == 0 || q.as_flat().iter().any(|w| w.abs() > 1) || !q.is_connected() {
        return None;
    }
    let nbr = neighbor_masks(q);
    let degree: Vec<u32> = nbr.iter().map(|m| m.count_ones()).collect();
    if degree.iter().any(|&d| d > 4) {
        return None;
    }
    let tri = oriented_edge_disjoint_triangles(q, &nbr)?;
    let edges = degree.iter().sum::<u32>() as usize / 2;
    if edges + 1 != n + tri.list.len() {
        return None;
    }
    for (v, &d) in degree.iter().enumerate() {
        let need = match d {
            4 => Some(2),
            3 => Some(1),
            _ => None,
        };
        if need.is_some_and(|t| tri.per_vertex[v] != t) {
            return None;
        }
    }
    Some(tri)
}

/// Certificate iff `q` is mutation equivalent to the linear A_n quiver.
/// Every vertex is tagged `body0`; the motif is the set of oriented triangles.
pub fn is_type_a(q: &Quiver) -> Option<Certificate> {
    let tri = analyse(q)?;
    let roles = (0..q.n()).map(|v| (v, Role::Body(0))).collect();
    let motif_edges = tri
        .list
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
        .collect();
    Some(Certificate { roles, motif_edges })
}

/// Connecting-vertex predicate on a quiver already known to be of type A:
/// degree at most one, or degree two on an oriented triangle.
pub(crate) fn is_connecting_in(q: &Quiver, tri: &Triangles, v: usize) -> bool {
    match q.degree(v) {
        0 | 1 => true,
        2 => tri.per_vertex[v] == 1,
        _ => false,
    }
}

/// Whether `v` is a connecting vertex of the type A quiver `q`.
pub fn is_connecting_vertex(q: &Quiver, v: usize) -> bool {
    v < q.n() && analyse(q).is_some_and(|tri| is_connecting_in(q, &tri, v))
}

/// All connecting vertices of a type A quiver.
pub fn connecting_vertices(q: &Quiver, cert: &Certificate) -> Result<BTreeSet<usize>, ClassifyError> {
    let tri = analyse(q).ok_or(ClassifyError::NotTypeA)?;
    if cert.roles.len() != q.n() {
        return Err(ClassifyError::CertificateMismatch);
    }
    Ok((0..q.n()).filter(|&v| is_connecting_in(q, &tri, v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        let a: Vec<_> = arrows.iter().map(|&(s, t)| (s, t, 1)).collect();
        Quiver::new(n, &a).unwrap()
    }

    #[test]
    fn linear_paths_accepted() {
        for n in 1..12 {
            let arrows: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            assert!(is_type_a(&q(n, &arrows)).is_some());
        }
    }

    #[test]
    fn rejections() {
        // star with five leaves
        assert!(is_type_a(&q(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)])).is_none());
        // unoriented triangle
        assert!(is_type_a(&q(3, &[(0, 1), (1, 2), (0, 2)])).is_none());
        // oriented square
        assert!(is_type_a(&q(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).is_none());
        // two triangles sharing an edge
        assert!(is_type_a(&q(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 0)])).is_none());
        // degree three without a triangle
        assert!(is_type_a(&q(4, &[(0, 1), (0, 2), (0, 3)])).is_none());
        // double arrow
        assert!(is_type_a(&Quiver::new(2, &[(0, 1, 2)]).unwrap()).is_none());
        // disconnected
        assert!(is_type_a(&Quiver::empty(2)).is_none());
        // ring of three triangles
        let ring = q(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5), (5, 0), (0, 4)]);
        assert!(is_type_a(&ring).is_none());
    }

    #[test]
    fn two_triangles_at_a_vertex() {
        let bowtie = q(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        assert!(is_type_a(&bowtie).is_some());
        // degree-four vertex with one triangle and two pendant edges
        let bad = q(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)]);
        assert!(is_type_a(&bad).is_none());
    }

    #[test]
    fn connecting_vertex_examples() {
        let path = q(3, &[(0, 1), (1, 2)]);
        let cert = is_type_a(&path).unwrap();
        assert_eq!(connecting_vertices(&path, &cert).unwrap(), BTreeSet::from([0, 2]));
        let tri = q(3, &[(0, 1), (1, 2), (2, 0)]);
        let cert = is_type_a(&tri).unwrap();
        assert_eq!(connecting_vertices(&tri, &cert).unwrap(), BTreeSet::from([0, 1, 2]));
        let single = Quiver::empty(1);
        let cert = is_type_a(&single).unwrap();
        assert_eq!(connecting_vertices(&single, &cert).unwrap(), BTreeSet::from([0]));
        let star = q(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(connecting_vertices(&star, &cert).is_err());
    }
}
