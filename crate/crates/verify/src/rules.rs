//! Mutation transitions between affine D subtypes, as data.
//!
//! Each rule names a source subtype, the vertices to mutate (by their role in
//! the source certificate), the conditions under which it applies and the
//! subtypes the result may have.

use std::collections::BTreeSet;
use std::fmt;

use quiverlab_classify::{Certificate, DSubtype, DTildeSubtype, Role};
use quiverlab_core::Quiver;

use DSubtype::{I, II, III, IV};
use DTildeSubtype::{Paired, VIPrime, VPrime, VaPrime, Va, VbPrime, Vb, V, VI};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    One(DTildeSubtype),
    AnyPaired,
}

impl Source {
    pub fn matches(self, t: DTildeSubtype) -> bool {
        match self {
            Source::One(s) => s == t,
            Source::AnyPaired => matches!(t, Paired(..)),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::One(t) => t.fmt(f),
            Source::AnyPaired => f.write_str("paired"),
        }
    }
}

/// Which vertices of the source quiver are mutated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    /// Every vertex holding the role. The role must be present.
    Role(Role),
    /// Interior vertices of the closing path of a one-cycle quiver.
    PathInterior,
    /// Cycle vertices adjacent to the hub.
    NextToHub,
    /// Vertices other than the hub and its neighbours.
    AwayFromHub,
    /// Vertices of the piece glued at `c`, other than `c`.
    PieceAtC,
    /// Every vertex except the shared connecting vertex `c`.
    AwayFromC,
    Everywhere,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Role(r) => r.fmt(f),
            Site::PathInterior => f.write_str("path vertex"),
            Site::NextToHub => f.write_str("cycle vertex next to hub"),
            Site::AwayFromHub => f.write_str("vertex away from hub"),
            Site::PieceAtC => f.write_str("vertex of the piece at c"),
            Site::AwayFromC => f.write_str("vertex other than c"),
            Site::Everywhere => f.write_str("any vertex"),
        }
    }
}

/// Named conditions on the source quiver, its certificate and the mutated vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    /// The shared piece of a paired quiver is the single vertex `c`.
    SharedVertexAlone,
    SharedPieceLarger,
    /// `max(indegree, outdegree)` at `c` equals the value.
    SplitAtC(usize),
    /// Both fork leaves point the same way relative to `c`.
    LeavesAgree,
    LeavesDisagree,
    /// Fork leaves agree and the far block vertex `c'` lies on the other side of `c`.
    LeavesAgreeBlockOpposite,
    /// Fork leaves and `c'` all point the same way relative to `c`.
    LeavesAgreeBlockAlong,
    /// `c' -> c -> c''` or the reverse.
    BlocksThrough,
    BlocksNotThrough,
    /// The central cycle through the mutated vertex is a triangle.
    CycleIsTriangle,
    CycleIsLonger,
    /// Degree of `c` inside the piece glued at it.
    PieceDegreeAtC(usize),
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::SharedVertexAlone => f.write_str("shared piece is the single vertex c"),
            Context::SharedPieceLarger => f.write_str("shared piece has more than one vertex"),
            Context::SplitAtC(4) => f.write_str("indegree 4 or outdegree 4 at c"),
            Context::SplitAtC(3) => f.write_str("indegree 3 or outdegree 3 at c"),
            Context::SplitAtC(k) => write!(f, "indegree {} and outdegree {} at c", 4 - k, k),
            Context::LeavesAgree => f.write_str("fork arrows agree at c"),
            Context::LeavesDisagree => f.write_str("fork arrows disagree at c"),
            Context::LeavesAgreeBlockOpposite => f.write_str("fork arrows agree, c' opposite"),
            Context::LeavesAgreeBlockAlong => f.write_str("fork arrows and c' agree"),
            Context::BlocksThrough => f.write_str("c' -> c -> c'' or reverse"),
            Context::BlocksNotThrough => f.write_str("c', c'' on the same side of c"),
            Context::CycleIsTriangle => f.write_str("central cycle length 3"),
            Context::CycleIsLonger => f.write_str("central cycle length > 3"),
            Context::PieceDegreeAtC(k) => write!(f, "c has degree {k} in its piece"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Subtypes(Vec<DTildeSubtype>),
    AnyPaired,
}

impl Target {
    pub fn admits(&self, t: DTildeSubtype) -> bool {
        match self {
            Target::Subtypes(v) => v.contains(&t),
            Target::AnyPaired => matches!(t, Paired(..)),
        }
    }

    pub fn expand(&self) -> BTreeSet<DTildeSubtype> {
        match self {
            Target::Subtypes(v) => v.iter().copied().collect(),
            Target::AnyPaired => DTildeSubtype::all().into_iter().filter(|t| matches!(t, Paired(..))).collect(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::AnyPaired => f.write_str("paired"),
            Target::Subtypes(v) => {
                let names: Vec<String> = v.iter().map(|t| t.to_string()).collect();
                f.write_str(&names.join("|"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionRule {
    pub from: Source,
    pub site: Site,
    pub when: Vec<Context>,
    pub to: Target,
}

impl fmt::Display for TransitionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.from, self.site)?;
        if !self.when.is_empty() {
            let w: Vec<String> = self.when.iter().map(|c| c.to_string()).collect();
            write!(f, " [{}]", w.join("; "))?;
        }
        write!(f, " -> {}", self.to)
    }
}

fn rule(from: DTildeSubtype, site: Site, when: &[Context], to: &[DTildeSubtype]) -> TransitionRule {
    TransitionRule { from: Source::One(from), site, when: when.to_vec(), to: Target::Subtypes(to.to_vec()) }
}

fn to_paired(from: Source, site: Site, when: &[Context]) -> TransitionRule {
    TransitionRule { from, site, when: when.to_vec(), to: Target::AnyPaired }
}

const C: Site = Site::Role(Role::Connecting(0));
const A: Site = Site::Role(Role::A);
const B: Site = Site::Role(Role::B);
const D0: Site = Site::Role(Role::D(0));
const D1: Site = Site::Role(Role::D(1));

/// The full transition table.
pub fn standard_rules() -> Vec<TransitionRule> {
    use Context::*;
    let alone = SharedVertexAlone;
    vec![
        // paired types
        to_paired(Source::AnyPaired, Site::Everywhere, &[SharedPieceLarger]),
        to_paired(Source::AnyPaired, Site::AwayFromC, &[alone]),
        rule(Paired(I, I), C, &[alone, SplitAtC(4)], &[Paired(I, I)]),
        rule(Paired(I, I), C, &[alone, SplitAtC(3)], &[V]),
        rule(Paired(I, I), C, &[alone, SplitAtC(2)], &[VIPrime]),
        rule(Paired(I, II), C, &[alone, LeavesAgreeBlockOpposite], &[Paired(I, II)]),
        rule(Paired(I, II), C, &[alone, LeavesAgreeBlockAlong], &[VIPrime]),
        rule(Paired(I, II), C, &[alone, LeavesDisagree], &[V]),
        rule(Paired(I, III), C, &[alone, LeavesAgree], &[V]),
        rule(Paired(I, III), C, &[alone, LeavesDisagree], &[VI]),
        rule(Paired(I, IV), C, &[alone, LeavesAgree], &[V]),
        rule(Paired(I, IV), C, &[alone, LeavesDisagree], &[VI]),
        rule(Paired(II, II), C, &[alone, BlocksThrough], &[VIPrime]),
        rule(Paired(II, II), C, &[alone, BlocksNotThrough], &[Paired(II, II)]),
        rule(Paired(II, III), C, &[alone], &[V]),
        rule(Paired(II, IV), C, &[alone], &[V]),
        rule(Paired(III, III), C, &[alone], &[VI]),
        rule(Paired(III, IV), C, &[alone], &[VI]),
        rule(Paired(IV, IV), C, &[alone], &[VI]),
        // one central cycle
        to_paired(Source::One(V), A, &[]),
        to_paired(Source::One(V), B, &[]),
        rule(V, D0, &[], &[Va]),
        rule(V, D1, &[], &[Va]),
        rule(V, Site::PathInterior, &[CycleIsLonger], &[V]),
        rule(V, Site::PathInterior, &[CycleIsTriangle], &[VPrime]),
        rule(Va, D0, &[], &[V]),
        rule(Va, D1, &[], &[Vb]),
        rule(Va, A, &[], &[VI]),
        rule(Va, B, &[], &[VI]),
        rule(Va, Site::PathInterior, &[CycleIsLonger], &[Va]),
        rule(Va, Site::PathInterior, &[CycleIsTriangle], &[VaPrime]),
        rule(Vb, D0, &[], &[Va]),
        rule(Vb, D1, &[], &[Va]),
        rule(Vb, A, &[], &[Vb]),
        rule(Vb, B, &[], &[Vb]),
        rule(Vb, Site::PathInterior, &[CycleIsLonger], &[Vb]),
        rule(Vb, Site::PathInterior, &[CycleIsTriangle], &[VbPrime]),
        rule(VPrime, D0, &[], &[VaPrime]),
        rule(VPrime, D1, &[], &[VaPrime]),
        rule(VPrime, A, &[], &[VIPrime]),
        rule(VPrime, B, &[], &[VIPrime]),
        rule(VPrime, C, &[], &[V]),
        rule(VaPrime, D0, &[], &[VPrime]),
        rule(VaPrime, D1, &[], &[VbPrime]),
        rule(VaPrime, A, &[], &[VaPrime]),
        rule(VaPrime, B, &[], &[VaPrime]),
        rule(VaPrime, C, &[], &[Va]),
        rule(VbPrime, D0, &[], &[VaPrime]),
        rule(VbPrime, D1, &[], &[VaPrime]),
        rule(VbPrime, A, &[], &[VbPrime]),
        rule(VbPrime, B, &[], &[VbPrime]),
        rule(VbPrime, C, &[], &[Vb]),
        // two central cycles
        to_paired(Source::One(VI), Site::Role(Role::Hub), &[]),
        rule(VI, Site::NextToHub, &[CycleIsTriangle], &[Va]),
        rule(VI, Site::NextToHub, &[CycleIsLonger], &[VI]),
        rule(VI, Site::AwayFromHub, &[], &[VI]),
        rule(VIPrime, C, &[PieceDegreeAtC(0)], &[Paired(I, I)]),
        rule(VIPrime, C, &[PieceDegreeAtC(1)], &[Paired(I, II)]),
        rule(VIPrime, C, &[PieceDegreeAtC(2)], &[Paired(II, II)]),
        rule(VIPrime, Site::NextToHub, &[], &[VPrime]),
        rule(VIPrime, Site::PieceAtC, &[], &[VIPrime]),
    ]
}

/// Union of all admissible outcomes of `rules`.
pub fn reachable(rules: &[TransitionRule]) -> BTreeSet<DTildeSubtype> {
    rules.iter().flat_map(|r| r.to.expand()).collect()
}

/// `+1` if the arrow between `x` and `c` points into `c`, `-1` if out of it.
fn side(q: &Quiver, x: usize, c: usize) -> i32 {
    q.get(x, c).signum()
}

fn hub_of(cert: &Certificate) -> Option<usize> {
    cert.first_with(Role::Hub).or_else(|| cert.first_with(Role::Connecting(0)))
}

/// Far block vertices `c'` (and `c''`) of a paired certificate.
fn far_vertices(cert: &Certificate) -> Vec<usize> {
    let mut v = cert.vertices_with(Role::Connecting(2));
    v.extend(cert.vertices_with(Role::Connecting(3)));
    v
}

impl Context {
    /// `None` when the certificate lacks what the condition refers to.
    pub fn holds(self, q: &Quiver, cert: &Certificate, v: usize) -> Option<bool> {
        let c = cert.first_with(Role::Connecting(0));
        let leaves = || -> Option<Vec<i32>> {
            let c = c?;
            let l: Vec<i32> =
                cert.vertices_with(Role::Leaf).into_iter().filter(|&x| q.adjacent(x, c)).map(|x| side(q, x, c)).collect();
            (l.len() == 2).then_some(l)
        };
        Some(match self {
            Context::SharedVertexAlone => c.is_some() && cert.first_with(Role::Connecting(1)).is_none(),
            Context::SharedPieceLarger => c.is_some() && cert.first_with(Role::Connecting(1)).is_some(),
            Context::SplitAtC(k) => {
                let c = c?;
                q.in_degree(c).max(q.out_degree(c)) == k
            }
            Context::LeavesAgree => {
                let l = leaves()?;
                l[0] == l[1]
            }
            Context::LeavesDisagree => {
                let l = leaves()?;
                l[0] != l[1]
            }
            Context::LeavesAgreeBlockOpposite | Context::LeavesAgreeBlockAlong => {
                let l = leaves()?;
                let far = far_vertices(cert);
                let f = side(q, *far.first()?, c?);
                let along = self == Context::LeavesAgreeBlockAlong;
                l[0] == l[1] && (f == l[0]) == along
            }
            Context::BlocksThrough | Context::BlocksNotThrough => {
                let far = far_vertices(cert);
                if far.len() != 2 {
                    return None;
                }
                let through = side(q, far[0], c?) == -side(q, far[1], c?);
                through == (self == Context::BlocksThrough)
            }
            Context::CycleIsTriangle | Context::CycleIsLonger => {
                let Role::Cycle(k) = cert.role(v)? else { return None };
                let members = cert.vertices_with(Role::Cycle(k)).len();
                // the hub, or a and b, close the cycle
                let len = if cert.first_with(Role::Hub).is_some() || cert.first_with(Role::A).is_none() {
                    members + 1
                } else {
                    members + 2
                };
                (len == 3) == (self == Context::CycleIsTriangle)
            }
            Context::PieceDegreeAtC(k) => q.degree(c?) == 4 + k,
        })
    }
}

impl Site {
    /// Vertices selected by the site, or `None` if a required role is absent.
    pub fn vertices(self, q: &Quiver, cert: &Certificate) -> Option<Vec<usize>> {
        let n = q.n();
        Some(match self {
            Site::Role(r) => {
                let v = cert.vertices_with(r);
                if v.is_empty() {
                    return None;
                }
                v
            }
            Site::PathInterior => cert.vertices_with(Role::Cycle(1)),
            Site::NextToHub => {
                let h = hub_of(cert)?;
                (0..n).filter(|&v| q.adjacent(v, h) && matches!(cert.role(v), Some(Role::Cycle(_)))).collect()
            }
            Site::AwayFromHub => {
                let h = hub_of(cert)?;
                (0..n).filter(|&v| v != h && !q.adjacent(v, h)).collect()
            }
            Site::PieceAtC => {
                cert.first_with(Role::Connecting(0))?;
                (0..n).filter(|&v| matches!(cert.role(v), Some(Role::Body(_)))).collect()
            }
            Site::AwayFromC => {
                let c = cert.first_with(Role::Connecting(0))?;
                (0..n).filter(|&v| v != c).collect()
            }
            Site::Everywhere => (0..n).collect(),
        })
    }
}
