//! Matching of a proposed motif placement against the rest of the quiver.
//!
//! A placement names its closed vertices, its motif arrows and its attachment
//! groups. It is accepted when
//!
//! * every motif arrow is present with the stated weight,
//! * every arrow at a closed vertex is a motif arrow,
//! * after deleting the closed vertices and the motif arrows, each connected
//!   component contains exactly one attachment group and no component is
//!   left without one,
//! * each component is of type A and every vertex of its group is a
//!   connecting vertex of it. A group listing the same vertex twice is glued
//!   on from both sides and its component must be that single vertex.

use quiverlab_core::Quiver;

use crate::cert::{Certificate, Role};
use crate::type_a::{analyse, is_connecting_in};

#[derive(Clone, Debug, Default)]
pub(crate) struct Placement {
    pub closed: Vec<usize>,
    /// `(source, target, weight)`
    pub motif: Vec<(usize, usize, i32)>,
    pub groups: Vec<Vec<usize>>,
    pub roles: Vec<(usize, Role)>,
}

impl Placement {
    pub fn arrow(&mut self, s: usize, t: usize) {
        self.motif.push((s, t, 1));
    }

    pub fn close(&mut self, v: usize, role: Role) {
        self.closed.push(v);
        self.roles.push((v, role));
    }

    pub fn attach(&mut self, v: usize, role: Role) {
        self.groups.push(vec![v]);
        self.roles.push((v, role));
    }
}

pub(crate) fn validate(q: &Quiver, p: &Placement) -> Option<Certificate> {
    let n = q.n();
    let mut closed = vec![false; n];
    for &v in &p.closed {
        if v >= n || closed[v] {
            return None;
        }
        closed[v] = true;
    }
    let mut motif = vec![false; n * n];
    for &(s, t, w) in &p.motif {
        if s >= n || t >= n || q.get(s, t) != w || motif[s * n + t] {
            return None;
        }
        motif[s * n + t] = true;
        motif[t * n + s] = true;
    }
    for v in 0..n {
        if closed[v] && (0..n).any(|u| q.get(v, u) != 0 && !motif[v * n + u]) {
            return None;
        }
    }

    // components of what is left
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if closed[start] || comp[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut list = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < list.len() {
            let v = list[i];
            i += 1;
            for u in 0..n {
                if !closed[u] && comp[u] == usize::MAX && q.get(v, u) != 0 && !motif[v * n + u] {
                    comp[u] = id;
                    list.push(u);
                }
            }
        }
        list.sort_unstable();
        members.push(list);
    }

    let mut owner = vec![usize::MAX; members.len()];
    for (g, group) in p.groups.iter().enumerate() {
        let first = *group.first()?;
        if first >= n || closed[first] {
            return None;
        }
        let id = comp[first];
        if group.iter().any(|&v| v >= n || closed[v] || comp[v] != id) || owner[id] != usize::MAX {
            return None;
        }
        owner[id] = g;
    }
    if owner.contains(&usize::MAX) {
        return None;
    }

    for (id, list) in members.iter().enumerate() {
        let group = &p.groups[owner[id]];
        let twice = group.len() == 2 && group[0] == group[1];
        if twice {
            if list.len() != 1 {
                return None;
            }
            continue;
        }
        let piece = q.induced(list);
        let tri = analyse(&piece)?;
        for &v in group {
            let local = list.binary_search(&v).ok()?;
            if !is_connecting_in(&piece, &tri, local) {
                return None;
            }
        }
    }

    let mut cert = Certificate::default();
    for (id, list) in members.iter().enumerate() {
        for &v in list {
            cert.roles.insert(v, Role::Body(id as u16));
        }
    }
    for &(v, r) in &p.roles {
        cert.roles.insert(v, r);
    }
    cert.motif_edges = p.motif.iter().map(|&(s, t, _)| (s, t)).collect();
    Some(cert)
}
