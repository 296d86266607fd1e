//! Recognizer for the mutation class of the affine D quivers.
//!
//! Shapes:
//!
//! * paired ends: two D-shaped ends (fork, block, square or spiked cycle)
//!   joined through one type A piece attached at `c` and `c'`;
//! * V, Va, Vb: a double spike `d`, `d'` between `a` and `b` closed up by a
//!   chordless oriented path from `b` to `a` whose arrows may carry spikes;
//! * V', Va', Vb': the same double spike with a single type A piece glued
//!   at a vertex `c` with `b -> c -> a`;
//! * VI: two oriented cycles through a hub of degree four, linked by two
//!   cross arrows;
//! * VI': the five-vertex version of VI with a type A piece at the hub.

use std::fmt;
use std::str::FromStr;

use quiverlab_core::Quiver;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cert::{Certificate, Role};
use crate::cycles::{apexes, chordless_paths, out_unit};
use crate::template::{validate, Placement};
use crate::type_d::{ends_at, spike_ends, DSubtype, End};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DTildeSubtype {
    /// Two ends, stored with the smaller subtype first.
    Paired(DSubtype, DSubtype),
    V,
    Va,
    Vb,
    VPrime,
    VaPrime,
    VbPrime,
    VI,
    VIPrime,
}

impl DTildeSubtype {
    pub fn paired(x: DSubtype, y: DSubtype) -> Self {
        DTildeSubtype::Paired(x.min(y), x.max(y))
    }

    /// All subtypes, pairs included.
    pub fn all() -> Vec<DTildeSubtype> {
        let mut out = Vec::new();
        for (i, &x) in DSubtype::ALL.iter().enumerate() {
            for &y in &DSubtype::ALL[i..] {
                out.push(DTildeSubtype::Paired(x, y));
            }
        }
        out.extend(SINGLES);
        out
    }
}

const SINGLES: [DTildeSubtype; 8] = [
    DTildeSubtype::V,
    DTildeSubtype::Va,
    DTildeSubtype::Vb,
    DTildeSubtype::VPrime,
    DTildeSubtype::VaPrime,
    DTildeSubtype::VbPrime,
    DTildeSubtype::VI,
    DTildeSubtype::VIPrime,
];

impl fmt::Display for DTildeSubtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DTildeSubtype::Paired(x, y) => write!(f, "{x}-{y}"),
            DTildeSubtype::V => f.write_str("V"),
            DTildeSubtype::Va => f.write_str("Va"),
            DTildeSubtype::Vb => f.write_str("Vb"),
            DTildeSubtype::VPrime => f.write_str("V'"),
            DTildeSubtype::VaPrime => f.write_str("Va'"),
            DTildeSubtype::VbPrime => f.write_str("Vb'"),
            DTildeSubtype::VI => f.write_str("VI"),
            DTildeSubtype::VIPrime => f.write_str("VI'"),
        }
    }
}

impl FromStr for DTildeSubtype {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((x, y)) = s.split_once('-') {
            return Ok(DTildeSubtype::paired(x.parse()?, y.parse()?));
        }
        SINGLES
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| format!("unknown subtype `{s}`"))
    }
}

impl Serialize for DTildeSubtype {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DTildeSubtype {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Order in which overlapping shapes are reported: the most specific first.
fn rank(t: DTildeSubtype) -> usize {
    match t {
        DTildeSubtype::Paired(..) => 0,
        DTildeSubtype::V => 1,
        DTildeSubtype::Va => 2,
        DTildeSubtype::Vb => 3,
        DTildeSubtype::VPrime => 4,
        DTildeSubtype::VaPrime => 5,
        DTildeSubtype::VbPrime => 6,
        DTildeSubtype::VIPrime => 7,
        DTildeSubtype::VI => 8,
    }
}

fn with_cycle(role: Role, k: u8) -> Role {
    match role {
        Role::Cycle(_) => Role::Cycle(k),
        r => r,
    }
}

fn paired_placements(q: &Quiver) -> Vec<(DTildeSubtype, Placement)> {
    let mut ends: Vec<End> = (0..q.n()).flat_map(|u| ends_at(q, u)).collect();
    ends.extend(spike_ends(q));
    let mut out = Vec::new();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let (e1, e2) = (&ends[i], &ends[j]);
            if e1.closed.iter().any(|&(v, _)| e2.touches(v)) {
                continue;
            }
            let mut p = Placement::default();
            for (k, e) in [(1u8, e1), (2u8, e2)] {
                for &(v, r) in &e.closed {
                    p.close(v, with_cycle(r, k));
                }
                p.motif.extend_from_slice(&e.motif);
            }
            p.groups.push(vec![e1.at, e2.at]);
            p.roles.push((e1.at, Role::Connecting(0)));
            if e2.at != e1.at {
                p.roles.push((e2.at, Role::Connecting(1)));
            }
            for (k, e) in [(2u8, e1), (3u8, e2)] {
                for &w in &e.far {
                    let role = if e.kind == DSubtype::IV { Role::Apex } else { Role::Connecting(k) };
                    p.attach(w, role);
                }
            }
            out.push((DTildeSubtype::paired(e1.kind, e2.kind), p));
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Through {
    /// `b -> d -> a`
    Back,
    /// `a -> d -> b`
    Fwd,
}

fn through(q: &Quiver, a: usize, b: usize, d: usize) -> Option<Through> {
    if q.get(b, d) == 1 && q.get(d, a) == 1 {
        Some(Through::Back)
    } else if q.get(a, d) == 1 && q.get(d, b) == 1 {
        Some(Through::Fwd)
    } else {
        None
    }
}

/// Closed double spike `a`, `b`, `d`, `d'` with its arrows.
fn double_spike(q: &Quiver, a: usize, b: usize, d: usize, d2: usize) -> Placement {
    let mut p = Placement::default();
    p.close(a, Role::A);
    p.close(b, Role::B);
    p.close(d, Role::D(0));
    p.close(d2, Role::D(1));
    let w = q.get(a, b);
    if w > 0 {
        p.motif.push((a, b, w));
    } else if w < 0 {
        p.motif.push((b, a, -w));
    }
    for x in [d, d2] {
        match through(q, a, b, x) {
            Some(Through::Back) => p.motif.extend([(b, x, 1), (x, a, 1)]),
            _ => p.motif.extend([(a, x, 1), (x, b, 1)]),
        }
    }
    p
}

fn five_placements(q: &Quiver) -> Vec<(DTildeSubtype, Placement)> {
    let n = q.n();
    let mut out = Vec::new();
    // degree-two vertices bucketed by their neighbour pair
    let mut twos: Vec<(usize, usize, usize)> = Vec::new();
    for d in 0..n {
        if q.degree(d) == 2 {
            let mut nb = q.neighbors(d);
            let (x, y) = (nb.next().unwrap(), nb.next().unwrap());
            twos.push((x.min(y), x.max(y), d));
        }
    }
    for i in 0..twos.len() {
        for j in i + 1..twos.len() {
            let (x, y, d) = twos[i];
            let (x2, y2, d2) = twos[j];
            if (x, y) != (x2, y2) {
                continue;
            }
            for (a, b) in [(x, y), (y, x)] {
                let (Some(t1), Some(t2)) = (through(q, a, b, d), through(q, a, b, d2)) else {
                    continue;
                };
                let e = q.get(a, b);
                let mixed = |first: Through| -> Option<(usize, usize)> {
                    if t1 == first && t2 != first {
                        Some((d, d2))
                    } else if t2 == first && t1 != first {
                        Some((d2, d))
                    } else {
                        None
                    }
                };
                let same = |t: Through| (t1 == t && t2 == t).then_some((d, d2));
                let shapes = [
                    (DTildeSubtype::V, same(Through::Back).filter(|_| e == 1), true),
                    (DTildeSubtype::Va, mixed(Through::Fwd).filter(|_| e == 0), true),
                    (DTildeSubtype::Vb, same(Through::Fwd).filter(|_| e == -1), true),
                    (DTildeSubtype::VPrime, same(Through::Fwd).filter(|_| e == 0), false),
                    (DTildeSubtype::VaPrime, mixed(Through::Back).filter(|_| e == 1), false),
                    (DTildeSubtype::VbPrime, same(Through::Back).filter(|_| e == 2), false),
                ];
                for (kind, dd, closed_path) in shapes {
                    let Some((d, d2)) = dd else { continue };
                    let base = double_spike(q, a, b, d, d2);
                    let used = [a, b, d, d2].iter().fold(0u64, |m, &v| m | 1 << v);
                    if closed_path {
                        for path in chordless_paths(q, b, a, used & !(1 << a), 2, true) {
                            let mut p = base.clone();
                            let on = path.iter().fold(used, |m, &v| m | 1 << v);
                            for w in path.windows(2) {
                                p.arrow(w[0], w[1]);
                                if let Some(&s) = apexes(q, w[0], w[1], on).first() {
                                    p.arrow(w[1], s);
                                    p.arrow(s, w[0]);
                                    p.attach(s, Role::Apex);
                                }
                            }
                            for &v in &path[1..path.len() - 1] {
                                p.close(v, Role::Cycle(1));
                            }
                            out.push((kind, p));
                        }
                    } else {
                        for c in apexes(q, a, b, used) {
                            let mut p = base.clone();
                            p.arrow(b, c);
                            p.arrow(c, a);
                            p.attach(c, Role::Connecting(0));
                            out.push((kind, p));
                        }
                    }
                }
            }
        }
    }
    out
}

fn six_placements(q: &Quiver) -> Vec<(DTildeSubtype, Placement)> {
    let n = q.n();
    let mut out = Vec::new();
    for h in 0..n {
        if q.degree(h) < 4 {
            continue;
        }
        let outs: Vec<usize> = out_unit(q, h).collect();
        let ins: Vec<usize> = (0..n).filter(|&v| q.get(v, h) == 1).collect();
        for &r1 in &outs {
            for &s1 in outs.iter().filter(|&&s| s != r1) {
                for &sm in ins.iter().filter(|&&v| q.get(r1, v) == 1) {
                    for &rk in ins.iter().filter(|&&v| v != sm && q.get(s1, v) == 1) {
                        out.extend(two_cycles(q, h, [r1, rk], [s1, sm]));
                    }
                }
            }
        }
    }
    out
}

/// Cycles `h -> r1 -> ... -> rk -> h` and `h -> s1 -> ... -> sm -> h` with
/// cross arrows `r1 -> sm` and `s1 -> rk`.
fn two_cycles(q: &Quiver, h: usize, [r1, rk]: [usize; 2], [s1, sm]: [usize; 2]) -> Vec<(DTildeSubtype, Placement)> {
    let mut out = Vec::new();
    let hub = 1u64 << h;
    let mut base = Placement::default();
    base.arrow(h, r1);
    base.arrow(rk, h);
    base.arrow(h, s1);
    base.arrow(sm, h);
    base.arrow(r1, sm);
    base.arrow(s1, rk);
    if q.get(r1, rk) == 1 && q.get(s1, sm) == 1 {
        let mut p = base.clone();
        p.attach(h, Role::Connecting(0));
        for (v, k) in [(r1, 1), (rk, 1), (s1, 2), (sm, 2)] {
            p.close(v, Role::Cycle(k));
        }
        p.arrow(r1, rk);
        p.arrow(s1, sm);
        out.push((DTildeSubtype::VIPrime, p));
    }
    if q.degree(h) != 4 {
        return out;
    }
    base.close(h, Role::Hub);
    for rp in chordless_paths(q, r1, rk, hub | 1 << s1 | 1 << sm, 1, false) {
        let rmask = rp.iter().fold(0u64, |m, &v| m | 1 << v);
        for sp in chordless_paths(q, s1, sm, hub | rmask, 1, false) {
            let mut p = base.clone();
            let on = hub | rmask | sp.iter().fold(0u64, |m, &v| m | 1 << v);
            for (k, path) in [(1u8, &rp), (2u8, &sp)] {
                for &v in path.iter() {
                    p.close(v, Role::Cycle(k));
                }
                for w in path.windows(2) {
                    p.arrow(w[0], w[1]);
                    if let Some(&s) = apexes(q, w[0], w[1], on).first() {
                        p.arrow(w[1], s);
                        p.arrow(s, w[0]);
                        p.attach(s, Role::Apex);
                    }
                }
            }
            out.push((DTildeSubtype::VI, p));
        }
    }
    out
}

fn all_placements(q: &Quiver) -> Vec<(DTildeSubtype, Placement)> {
    let mut v = paired_placements(q);
    v.extend(five_placements(q));
    v.extend(six_placements(q));
    v
}

/// Every subtype with a valid placement, each with one certificate, in
/// reporting order.
pub fn type_d_affine_matches(q: &Quiver) -> Vec<(DTildeSubtype, Certificate)> {
    if q.n() < 5 {
        return Vec::new();
    }
    let mut out: Vec<(DTildeSubtype, Certificate)> = Vec::new();
    for (kind, p) in all_placements(q) {
        if out.iter().any(|(k, _)| *k == kind) {
            continue;
        }
        if let Some(c) = validate(q, &p) {
            out.push((kind, c));
        }
    }
    out.sort_by_key(|(k, _)| (rank(*k), *k));
    out
}

/// Subtype and certificate iff `q` is mutation equivalent to the affine
/// D quiver on `n >= 5` vertices.
pub fn is_type_d_affine(q: &Quiver) -> Option<(DTildeSubtype, Certificate)> {
    if q.n() < 5 {
        return None;
    }
    let mut best: Option<(DTildeSubtype, Certificate)> = None;
    for (kind, p) in all_placements(q) {
        if best.as_ref().is_some_and(|(k, _)| (rank(*k), *k) <= (rank(kind), kind)) {
            continue;
        }
        if let Some(c) = validate(q, &p) {
            best = Some((kind, c));
        }
    }
    best
}
