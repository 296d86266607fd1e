//! Quivers stored as skew-symmetric exchange matrices.
//!
//! Entry `b[i][j] > 0` records `b[i][j]` parallel arrows `i -> j`. Loops and
//! 2-cycles cannot be represented, so every constructed value is a valid
//! quiver. Vertices are 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;

/// Largest vertex count accepted by the constructors.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i32>>", into = "Vec<Vec<i32>>")]
pub struct Quiver {
    n: usize,
    b: Vec<i32>,
}

impl Quiver {
    /// The quiver with `n` vertices and no arrows.
    pub fn empty(n: usize) -> Self {
        Quiver { n, b: vec![0; n * n] }
    }

    /// Builds a quiver from `(source, target, weight)` arrows.
    ///
    /// Each unordered pair may appear at most once, in one direction.
    pub fn new(n: usize, arrows: &[(usize, usize, i32)]) -> Result<Self, QuiverError> {
        if n > MAX_VERTICES {
            return Err(QuiverError::TooManyVertices(n));
        }
        let mut q = Quiver::empty(n);
        for &(s, t, w) in arrows {
            if s >= n || t >= n {
                return Err(QuiverError::VertexOutOfRange { vertex: s.max(t), n });
            }
            if s == t {
                return Err(QuiverError::Loop(s));
            }
            if w <= 0 {
                return Err(QuiverError::NonPositiveWeight { tail: s, head: t, weight: w });
            }
            if q.get(s, t) != 0 {
                return Err(QuiverError::DuplicatePair(s.min(t), s.max(t)));
            }
            q.set(s, t, w);
        }
        Ok(q)
    }

    /// Builds a quiver from a square skew-symmetric matrix.
    pub fn from_matrix(rows: &[Vec<i32>]) -> Result<Self, QuiverError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(QuiverError::TooManyVertices(n));
        }
        let mut b = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuiverError::NotSquare { row: i, len: row.len(), n });
            }
            b.extend_from_slice(row);
        }
        Self::from_flat(n, b)
    }

    /// Builds a quiver from a row-major `n * n` array.
    pub fn from_flat(n: usize, b: Vec<i32>) -> Result<Self, QuiverError> {
        if b.len() != n * n {
            return Err(QuiverError::NotSquare { row: 0, len: b.len(), n });
        }
        for i in 0..n {
            if b[i * n + i] != 0 {
                return Err(QuiverError::Loop(i));
            }
            for j in i + 1..n {
                if b[i * n + j] != -b[j * n + i] {
                    return Err(QuiverError::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(Quiver { n, b })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Signed entry `b[i][j]`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.b[i * self.n + j]
    }

    /// Sets `b[i][j] = w` and `b[j][i] = -w`.
    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, w: i32) {
        self.b[i * self.n + j] = w;
        self.b[j * self.n + i] = -w;
    }

    /// Number of arrows between `i` and `j`, ignoring direction.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> i32 {
        self.get(i, j).abs()
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.get(i, j) != 0
    }

    /// True if there is at least one arrow `i -> j`.
    #[inline]
    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.get(i, j) > 0
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.b[i * self.n..(i + 1) * self.n]
    }

    pub fn as_flat(&self) -> &[i32] {
        &self.b
    }

    /// Arrows `(source, target, weight)` in row-major order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, i32)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (0..n).filter_map(move |j| {
                let w = self.get(i, j);
                (w > 0).then_some((i, j, w))
            })
        })
    }

    pub fn arrow_count(&self) -> usize {
        self.b.iter().filter(|&&w| w > 0).count()
    }

    /// Neighbours in the underlying graph.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter_map(|(u, &w)| (w != 0).then_some(u))
    }

    /// Degree in the underlying simple graph.
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().filter(|&&w| w != 0).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.row(v).iter().filter(|&&w| w > 0).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.row(v).iter().filter(|&&w| w < 0).count()
    }

    pub fn max_weight(&self) -> i32 {
        self.b.iter().map(|w| w.abs()).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Mutation at vertex `j`.
    pub fn mutate(&self, j: usize) -> Result<Quiver, QuiverError> {
        if j >= self.n {
            return Err(QuiverError::VertexOutOfRange { vertex: j, n: self.n });
        }
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            let bij = self.get(i, j);
            if i == j || bij == 0 {
                continue;
            }
            for k in i + 1..n {
                if k == j {
                    continue;
                }
                let bjk = self.get(j, k);
                let prod = bij.checked_mul(bjk).ok_or(QuiverError::WeightOverflow)?;
                if prod > 0 {
                    let delta = bij.signum() * prod;
                    let v = self
                        .get(i, k)
                        .checked_add(delta)
                        .ok_or(QuiverError::WeightOverflow)?;
                    out.set(i, k, v);
                }
            }
        }
        for k in 0..n {
            if k != j {
                out.set(j, k, -self.get(j, k));
            }
        }
        Ok(out)
    }

    /// Left-to-right composition of mutations.
    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for &j in seq {
            q = q.mutate(j)?;
        }
        Ok(q)
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Quiver, QuiverError> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut out = Quiver::empty(n);
        for i in 0..n {
            for j in 0..n {
                out.b[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Full subquiver on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let m = vertices.len();
        let mut out = Quiver::empty(m);
        for (a, &i) in vertices.iter().enumerate() {
            for (c, &j) in vertices.iter().enumerate() {
                out.b[a * m + c] = self.get(i, j);
            }
        }
        out
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver { n: self.n, b: self.b.iter().map(|w| -w).collect() }
    }

    pub fn to_matrix(&self) -> Vec<Vec<i32>> {
        self.b.chunks(self.n.max(1)).take(self.n).map(<[i32]>::to_vec).collect()
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<(), QuiverError> {
    if perm.len() != n {
        return Err(QuiverError::BadPermutation);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(QuiverError::BadPermutation);
        }
        seen[p] = true;
    }
    Ok(())
}

impl TryFrom<Vec<Vec<i32>>> for Quiver {
    type Error = QuiverError;

    fn try_from(rows: Vec<Vec<i32>>) -> Result<Self, Self::Error> {
        Quiver::from_matrix(&rows)
    }
}

impl From<Quiver> for Vec<Vec<i32>> {
    fn from(q: Quiver) -> Self {
        q.to_matrix()
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver(n={}; ", self.n)?;
        let mut first = true;
        for (s, t, w) in self.arrows() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if w == 1 {
                write!(f, "{s}->{t}")?;
            } else {
                write!(f, "{s}-{w}->{t}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Quiver {
        Quiver::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap()
    }

    #[test]
    fn single_arrow_matrix() {
        let q = Quiver::new(2, &[(0, 1, 1)]).unwrap();
        assert_eq!(q.to_matrix(), vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn oriented_triangle_matrix() {
        assert_eq!(
            three_cycle().to_matrix(),
            vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]
        );
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            Quiver::new(2, &[(0, 1, 1), (1, 0, 1)]),
            Err(QuiverError::DuplicatePair(0, 1))
        );
        assert_eq!(Quiver::new(2, &[(1, 1, 1)]), Err(QuiverError::Loop(1)));
        assert!(matches!(
            Quiver::new(2, &[(0, 1, 0)]),
            Err(QuiverError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            Quiver::new(2, &[(0, 2, 1)]),
            Err(QuiverError::VertexOutOfRange { .. })
        ));
        assert!(Quiver::from_matrix(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(Quiver::from_matrix(&[vec![1]]).is_err());
    }

    #[test]
    fn mutate_pure_reversal() {
        let q = Quiver::new(2, &[(0, 1, 1)]).unwrap();
        assert_eq!(q.mutate(0).unwrap(), Quiver::new(2, &[(1, 0, 1)]).unwrap());
    }

    #[test]
    fn mutate_triangle_gives_path() {
        // 0->1->2->0 at 1: composite 0->2 cancels 2->0, arrows at 1 reverse.
        let p = three_cycle().mutate(1).unwrap();
        assert_eq!(p, Quiver::new(3, &[(2, 1, 1), (1, 0, 1)]).unwrap());
    }

    #[test]
    fn mutate_out_of_range() {
        assert!(matches!(
            three_cycle().mutate(3),
            Err(QuiverError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(three_cycle().mutate_seq(&[0, 5]).is_err());
    }

    #[test]
    fn mutate_seq_edge_cases() {
        let q = three_cycle();
        assert_eq!(q.mutate_seq(&[]).unwrap(), q);
        assert_eq!(q.mutate_seq(&[1, 1]).unwrap(), q);
    }

    #[test]
    fn permute_and_induced() {
        let q = Quiver::new(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let p = q.permute(&[2, 0, 1]).unwrap();
        assert_eq!(p.get(2, 0), 1);
        assert_eq!(p.get(0, 1), 2);
        assert!(q.permute(&[0, 0, 1]).is_err());
        let sub = q.induced(&[2, 1]);
        assert_eq!(sub.get(1, 0), 2);
    }

    #[test]
    fn degrees() {
        let q = Quiver::new(4, &[(0, 1, 1), (2, 1, 2), (1, 3, 1)]).unwrap();
        assert_eq!(q.degree(1), 3);
        assert_eq!(q.in_degree(1), 2);
        assert_eq!(q.out_degree(1), 1);
        assert_eq!(q.max_weight(), 2);
        assert!(q.is_connected());
        assert!(!Quiver::empty(2).is_connected());
    }
}
