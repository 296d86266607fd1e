//! Witnesses returned by the recognizers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Part a vertex plays in a matched template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// Connecting vertex where a type A piece is glued on: `c`, `c'`, `c''`, `c'''`.
    Connecting(u8),
    /// Vertex shared by both central cycles of a two-cycle quiver.
    Hub,
    /// Endpoints of the double-spike edge.
    A,
    B,
    /// Double-spike vertices `d` and `d'`.
    D(u8),
    /// Pendant vertex of a fork.
    Leaf,
    /// Degree-two vertex of a four-vertex block or oriented square.
    Tip,
    /// Member of central cycle 1 or 2.
    Cycle(u8),
    /// Spike apex carrying its own type A piece.
    Apex,
    /// Any other vertex of the type A piece with the given segment index.
    Body(u16),
}

impl Role {
    /// Closed roles are fully described by the motif: every arrow at such a
    /// vertex is a motif arrow.
    pub fn is_closed(self) -> bool {
        matches!(
            self,
            Role::Hub | Role::A | Role::B | Role::D(_) | Role::Leaf | Role::Tip | Role::Cycle(_)
        )
    }

    /// Roles at which a type A piece is attached.
    pub fn is_attachment(self) -> bool {
        matches!(self, Role::Connecting(_) | Role::Apex)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Connecting(k) => write!(f, "c{}", "'".repeat(*k as usize)),
            Role::Hub => f.write_str("hub"),
            Role::A => f.write_str("a"),
            Role::B => f.write_str("b"),
            Role::D(k) => write!(f, "d{}", "'".repeat(*k as usize)),
            Role::Leaf => f.write_str("leaf"),
            Role::Tip => f.write_str("tip"),
            Role::Cycle(k) => write!(f, "cycle{k}"),
            Role::Apex => f.write_str("apex"),
            Role::Body(k) => write!(f, "body{k}"),
        }
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let primes = |rest: &str| -> Option<u8> {
            rest.chars().all(|ch| ch == '\'').then_some(rest.len() as u8)
        };
        let bad = || format!("unknown role `{s}`");
        match s {
            "hub" => return Ok(Role::Hub),
            "a" => return Ok(Role::A),
            "b" => return Ok(Role::B),
            "leaf" => return Ok(Role::Leaf),
            "tip" => return Ok(Role::Tip),
            "apex" => return Ok(Role::Apex),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("cycle") {
            return rest.parse().map(Role::Cycle).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("body") {
            return rest.parse().map(Role::Body).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('c') {
            return primes(rest).map(Role::Connecting).ok_or_else(bad);
        }
        if let Some(rest) = s.strip_prefix('d') {
            return primes(rest).map(Role::D).ok_or_else(bad);
        }
        Err(bad())
    }
}

impl Serialize for Role {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Role {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Vertex roles plus the arrows forming the distinguishing motif.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub roles: BTreeMap<usize, Role>,
    pub motif_edges: Vec<(usize, usize)>,
}

impl Certificate {
    pub fn role(&self, v: usize) -> Option<Role> {
        self.roles.get(&v).copied()
    }

    /// Vertices holding `role`, in increasing order.
    pub fn vertices_with(&self, role: Role) -> Vec<usize> {
        self.roles.iter().filter(|(_, &r)| r == role).map(|(&v, _)| v).collect()
    }

    pub fn first_with(&self, role: Role) -> Option<usize> {
        self.roles.iter().find(|(_, &r)| r == role).map(|(&v, _)| v)
    }
}
