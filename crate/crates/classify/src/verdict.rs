//! Combined classification: structural recognizers first, then registry lookup.

use std::fmt;

use quiverlab_core::{ClassRegistry, Family, Quiver};
use serde::{Deserialize, Serialize, Serializer};

use crate::affine::{is_type_d_affine, DTildeSubtype};
use crate::cert::Certificate;
use crate::type_a::{analyse, is_connecting_in, is_type_a};
use crate::type_d::{is_type_d, DSubtype};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Structural,
    RegistryLookup,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Structural => "structural",
            Method::RegistryLookup => "registry-lookup",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subtype {
    D(DSubtype),
    DTilde(DTildeSubtype),
}

impl fmt::Display for Subtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subtype::D(t) => t.fmt(f),
            Subtype::DTilde(t) => t.fmt(f),
        }
    }
}

impl Serialize for Subtype {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    /// `None` means unknown.
    #[serde(serialize_with = "family_or_unknown")]
    pub family: Option<Family>,
    pub n: usize,
    pub subtype: Option<Subtype>,
    pub certificate: Option<Certificate>,
    pub method: Option<Method>,
    /// Registry entry that contained the quiver.
    pub matched: Option<(Family, usize)>,
    pub diagnostic: Option<String>,
}

fn family_or_unknown<S: Serializer>(f: &Option<Family>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(f.map_or("Unknown", Family::as_str))
}

impl TypeVerdict {
    pub fn family_name(&self) -> &'static str {
        self.family.map_or("Unknown", Family::as_str)
    }

    pub fn is_unknown(&self) -> bool {
        self.family.is_none()
    }

    fn structural(n: usize, family: Family, subtype: Option<Subtype>, cert: Certificate) -> Self {
        TypeVerdict {
            family: Some(family),
            n,
            subtype,
            certificate: Some(cert),
            method: Some(Method::Structural),
            matched: None,
            diagnostic: None,
        }
    }

    fn unknown(n: usize, diagnostic: String) -> Self {
        TypeVerdict {
            family: None,
            n,
            subtype: None,
            certificate: None,
            method: None,
            matched: None,
            diagnostic: Some(diagnostic),
        }
    }
}

/// Structural checks in the order A, D, affine D, then a registry lookup
/// for the remaining families.
pub fn classify(q: &Quiver, registry: Option<&ClassRegistry>) -> TypeVerdict {
    let n = q.n();
    if let Some(cert) = is_type_a(q) {
        return TypeVerdict::structural(n, Family::A, None, cert);
    }
    if let Some((t, cert)) = is_type_d(q) {
        return TypeVerdict::structural(n, Family::D, Some(Subtype::D(t)), cert);
    }
    if let Some((t, cert)) = is_type_d_affine(q) {
        return TypeVerdict::structural(n, Family::DTilde, Some(Subtype::DTilde(t)), cert);
    }
    let Some(reg) = registry else {
        return TypeVerdict::unknown(n, "structural checks rejected and no registry was given".into());
    };
    if let Some(entry) = reg.lookup(q).into_iter().next() {
        return TypeVerdict {
            family: Some(entry.family),
            n,
            subtype: None,
            certificate: None,
            method: Some(Method::RegistryLookup),
            matched: Some((entry.family, entry.n)),
            diagnostic: None,
        };
    }
    let missing: Vec<&str> = [Family::E, Family::ATilde, Family::ETilde]
        .into_iter()
        .filter(|f| f.is_defined(n) && reg.get(*f, n).is_none())
        .map(Family::as_str)
        .collect();
    let truncated: Vec<&str> = reg
        .entries()
        .filter(|e| e.n == n && e.is_truncated())
        .map(|e| e.family.as_str())
        .collect();
    let mut msg = String::from("structural checks rejected and no registry entry contains the quiver");
    if !missing.is_empty() {
        msg += &format!("; registry has no entry for {} at n={n}", missing.join(", "));
    }
    if !truncated.is_empty() {
        msg += &format!("; depth-limited entries ({}) cannot rule membership out", truncated.join(", "));
    }
    TypeVerdict::unknown(n, msg)
}

/// Mechanical check of a certificate against its quiver: roles cover every
/// vertex, motif arrows exist, closed vertices only carry motif arrows, and
/// every attachment vertex is a connecting vertex of the type A piece left
/// around it once the closed vertices and motif arrows are removed.
pub fn check_certificate(q: &Quiver, cert: &Certificate) -> Result<(), String> {
    let n = q.n();
    if cert.roles.len() != n || cert.roles.keys().any(|&v| v >= n) {
        return Err(format!("roles cover {} of {n} vertices", cert.roles.len()));
    }
    let mut motif = vec![false; n * n];
    for &(s, t) in &cert.motif_edges {
        if s >= n || t >= n || q.get(s, t) <= 0 {
            return Err(format!("motif arrow {s}->{t} is not in the quiver"));
        }
        motif[s * n + t] = true;
        motif[t * n + s] = true;
    }
    let closed: Vec<bool> = (0..n).map(|v| cert.roles[&v].is_closed()).collect();
    for v in (0..n).filter(|&v| closed[v]) {
        if let Some(u) = (0..n).find(|&u| q.get(v, u) != 0 && !motif[v * n + u]) {
            return Err(format!("closed vertex {v} has extra arrow to {u}"));
        }
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if closed[start] || seen[start] {
            continue;
        }
        let mut list = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < list.len() {
            let v = list[i];
            i += 1;
            for u in 0..n {
                if !closed[u] && !seen[u] && q.get(v, u) != 0 && !motif[v * n + u] {
                    seen[u] = true;
                    list.push(u);
                }
            }
        }
        list.sort_unstable();
        let piece = q.induced(&list);
        let Some(tri) = analyse(&piece) else {
            return Err(format!("piece containing {start} is not of type A"));
        };
        for (local, &v) in list.iter().enumerate() {
            if cert.roles[&v].is_attachment() && !is_connecting_in(&piece, &tri, local) {
                return Err(format!("vertex {v} tagged {} is not connecting", cert.roles[&v]));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiverlab_core::{seed, SeedSpec};

    fn seed_of(f: Family, n: usize) -> Quiver {
        seed(SeedSpec::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn seeds_classify_structurally() {
        let v = classify(&seed_of(Family::A, 11), None);
        assert_eq!(v.family, Some(Family::A));
        assert_eq!(v.method, Some(Method::Structural));
        let v = classify(&seed_of(Family::D, 9), None);
        assert_eq!(v.subtype, Some(Subtype::D(DSubtype::I)));
        let v = classify(&seed_of(Family::DTilde, 9), None);
        assert_eq!(v.subtype, Some(Subtype::DTilde(DTildeSubtype::Paired(DSubtype::I, DSubtype::I))));
        for f in [Family::A, Family::D, Family::DTilde] {
            let q = seed_of(f, 9);
            check_certificate(&q, classify(&q, None).certificate.as_ref().unwrap()).unwrap();
        }
    }

    #[test]
    fn unknown_without_registry() {
        let k = Quiver::new(2, &[(0, 1, 3)]).unwrap();
        let v = classify(&k, None);
        assert!(v.is_unknown());
        assert!(v.diagnostic.is_some());
        let v = classify(&k, Some(&ClassRegistry::new()));
        assert!(v.diagnostic.unwrap().contains("no registry entry"));
    }

    #[test]
    fn a_wins_on_three_vertices() {
        let q = seed_of(Family::A, 3);
        assert_eq!(classify(&q, None).family, Some(Family::A));
        assert!(is_type_d(&q).is_some());
    }
}
