use std::collections::BTreeSet;
use std::time::Instant;

use quiverlab_classify::{is_type_a, is_type_d, is_type_d_affine, type_d_affine_matches, Certificate, DTildeSubtype};
use quiverlab_core::graph_rule::mutate_by_paths;
use quiverlab_core::{
    canonical_key, enumerate_class, seed, CanonicalKey, ClassRegistry, EnumLimits, Family, MutationClass, Quiver,
    SeedSpec,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::minimize::shrink;
use crate::report::{Counterexample, VerificationReport};
use crate::rules::{reachable, TransitionRule};
use crate::VerifyError;

fn recognizes(family: Family, q: &Quiver) -> Option<bool> {
    match family {
        Family::A => Some(is_type_a(q).is_some()),
        Family::D => Some(is_type_d(q).is_some()),
        Family::DTilde => Some(is_type_d_affine(q).is_some()),
        _ => None,
    }
}

fn any_structural(q: &Quiver) -> bool {
    is_type_a(q).is_some() || is_type_d(q).is_some() || is_type_d_affine(q).is_some()
}

/// Mutation sequence leading from a copy of the class seed to the member
/// `key`, found by walking down the depth map.
pub fn path_from_seed(class: &MutationClass, key: &CanonicalKey) -> Option<(Quiver, Vec<usize>)> {
    let mut q = key.decode().ok()?;
    let mut d = class.depth(key)?;
    let mut back = Vec::new();
    while d > 0 {
        let j = (0..q.n()).find(|&j| q.mutate(j).is_ok_and(|m| class.depth(&canonical_key(&m)) == Some(d - 1)))?;
        q = q.mutate(j).ok()?;
        back.push(j);
        d -= 1;
    }
    back.reverse();
    Some((q, back))
}

fn class_of(family: Family, n: usize) -> Result<MutationClass, VerifyError> {
    let s = seed(SeedSpec::new(family, n)?)?;
    Ok(enumerate_class(&s, &EnumLimits::unbounded())?)
}

/// Compare one structural recognizer with the enumerated classes of size `n`.
/// For families without a recognizer, check that every recognizer rejects.
pub fn oracle_cross_check(family: Family, n: usize, registry: &ClassRegistry) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let nine = |f: Family| n == 9 && matches!(f, Family::E | Family::ETilde);
    let has = |f: Family| registry.get(f, n).is_some() || (nine(f) && (registry.get(Family::E, 9).is_some() || registry.get(Family::ETilde, 9).is_some()));
    for f in Family::ALL {
        if f.is_defined(n) && !has(f) {
            return Err(VerifyError::MissingEntry { family: f, n });
        }
    }
    let label = if nine(family) && registry.get(family, 9).is_none() {
        if family == Family::E { Family::ETilde } else { Family::E }
    } else {
        family
    };
    let mut report = VerificationReport::new("oracle");
    let own = registry.get(label, n).ok_or(VerifyError::MissingEntry { family, n })?;

    let name = format!("{family} n={n} accepted");
    let rejected: Vec<(&CanonicalKey, usize)> = own
        .members()
        .into_par_iter()
        .filter_map(|(k, _, c)| {
            let q = k.decode().ok()?;
            let ok = match recognizes(family, &q) {
                Some(r) => r,
                None => !any_structural(&q),
            };
            (!ok).then_some((k, c))
        })
        .collect();
    let verb = if recognizes(family, &Quiver::empty(1)).is_some() { "accepted" } else { "rejected by every recognizer" };
    report.push(
        name.clone(),
        own.len() as u64,
        rejected.len() as u64,
        format!("{} of {} {verb}{}", own.len() - rejected.len(), own.len(), if own.is_truncated() { " (depth-limited entry)" } else { "" }),
    );
    for (k, c) in rejected {
        if let Some((s, seq)) = path_from_seed(&own.classes[c], k) {
            report.add_counterexample(Counterexample::new(&name, &s, seq, format!("member of {family} not matched")));
        }
    }

    if recognizes(family, &Quiver::empty(1)).is_some() {
        let name = format!("{family} n={n} rejects other classes");
        let mut checked = 0u64;
        let mut wrong = 0u64;
        for entry in registry.entries().filter(|e| e.n == n && e.family != label) {
            let hits: Vec<(&CanonicalKey, usize)> = entry
                .members()
                .into_par_iter()
                .filter(|(k, _, _)| k.decode().ok().and_then(|q| recognizes(family, &q)) == Some(true))
                .map(|(k, _, c)| (k, c))
                .collect();
            checked += entry.len() as u64;
            let exception = n == 3 && family == Family::D && entry.family == Family::A;
            if exception {
                continue;
            }
            wrong += hits.len() as u64;
            for (k, c) in hits {
                if let Some((s, seq)) = path_from_seed(&entry.classes[c], k) {
                    report.add_counterexample(Counterexample::new(
                        &name,
                        &s,
                        seq,
                        format!("member of {} accepted as {family}", entry.family),
                    ));
                }
            }
        }
        report.push(name, checked, wrong, "");
    }

    if family == Family::A && n == 3 {
        let d_hits = own.members().iter().filter(|(k, _, _)| k.decode().is_ok_and(|q| is_type_d(&q).is_some())).count();
        report.push(
            "A n=3 also matched as D (A_3 = D_3)",
            own.len() as u64,
            0,
            format!("{d_hits} of {} members; documented exception, A is reported", own.len()),
        );
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Every single mutation of every affine D member on `n` vertices is
/// accepted again.
pub fn closure_check(n: usize) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let class = class_of(Family::DTilde, n)?;
    let members = class.quivers();
    let failures: Vec<(Quiver, usize)> = members
        .par_iter()
        .flat_map_iter(|q| (0..n).filter(|&j| !accepted_after(q, j)).map(move |j| (q.clone(), j)))
        .collect();
    let mut report = VerificationReport::new("closure");
    let name = format!("D-tilde n={n} closed under mutation");
    report.push(name.clone(), (members.len() * n) as u64, failures.len() as u64, format!("{} members x {n} vertices", members.len()));
    for (q, j) in failures {
        let fails = |p: &Quiver| is_type_d_affine(p).is_some() && (0..p.n()).any(|j| !accepted_after(p, j));
        let small = shrink(&q, fails);
        let j = (0..small.n()).find(|&j| !accepted_after(&small, j)).unwrap_or(j);
        report.add_counterexample(Counterexample::new(&name, &small, vec![j], "mutation leaves the class".into()));
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn accepted_after(q: &Quiver, j: usize) -> bool {
    q.mutate(j).is_ok_and(|m| is_type_d_affine(&m).is_some())
}

/// Outcome of one rule on one quiver.
struct Application {
    /// Number of `(quiver, vertex)` instances the rule applied to.
    instances: u64,
    /// First failing vertex and the subtype found there, if any.
    failure: Option<(usize, Option<DTildeSubtype>)>,
    outcomes: BTreeSet<DTildeSubtype>,
}

fn apply(rule: &TransitionRule, q: &Quiver, from: DTildeSubtype, cert: &Certificate) -> Result<Application, String> {
    let mut app = Application { instances: 0, failure: None, outcomes: BTreeSet::new() };
    if !rule.from.matches(from) {
        return Ok(app);
    }
    let sites = rule.site.vertices(q, cert).ok_or_else(|| format!("rule `{rule}`: role absent from a {from} certificate"))?;
    for v in sites {
        let mut applies = true;
        for c in &rule.when {
            match c.holds(q, cert, v) {
                Some(true) => {}
                Some(false) => {
                    applies = false;
                    break;
                }
                None => return Err(format!("rule `{rule}`: condition `{c}` undefined on a {from} certificate")),
            }
        }
        if !applies {
            continue;
        }
        app.instances += 1;
        // On five vertices some subtypes coincide; any matching subtype counts.
        let after: Vec<DTildeSubtype> =
            q.mutate(v).map(|m| type_d_affine_matches(&m).into_iter().map(|(t, _)| t).collect()).unwrap_or_default();
        match after.iter().find(|&&t| rule.to.admits(t)) {
            Some(&t) => {
                app.outcomes.insert(t);
            }
            None => {
                if app.failure.is_none() {
                    app.failure = Some((v, after.first().copied()));
                }
            }
        }
    }
    Ok(app)
}

/// Check every rule on every affine D member on `n` vertices.
pub fn transition_check(rules: &[TransitionRule], n: usize) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let class = class_of(Family::DTilde, n)?;
    let members = class.quivers();
    let classified: Vec<(Quiver, DTildeSubtype, Certificate)> = members
        .into_par_iter()
        .filter_map(|q| is_type_d_affine(&q).map(|(t, c)| (q, t, c)))
        .collect();
    let mut report = VerificationReport::new("transitions");
    let mut observed = BTreeSet::new();
    for rule in rules {
        let results: Vec<Result<(Application, &Quiver), String>> = classified
            .par_iter()
            .map(|(q, t, c)| apply(rule, q, *t, c).map(|a| (a, q)))
            .collect();
        let mut instances = 0;
        let mut failures = 0;
        for r in results {
            let (app, q) = r.map_err(VerifyError::Config)?;
            instances += app.instances;
            observed.extend(app.outcomes);
            if let Some((v, got)) = app.failure {
                failures += 1;
                let still = |p: &Quiver| {
                    is_type_d_affine(p)
                        .is_some_and(|(t, c)| apply(rule, p, t, &c).is_ok_and(|a| a.failure.is_some()))
                };
                let small = shrink(q, still);
                let (vertex, got) = is_type_d_affine(&small)
                    .and_then(|(t, c)| apply(rule, &small, t, &c).ok()?.failure)
                    .unwrap_or((v, got));
                let shown = if small.n() == q.n() { q.clone() } else { small };
                let got = got.map_or("outside the class".to_string(), |t| t.to_string());
                report.add_counterexample(Counterexample::new(&rule.to_string(), &shown, vec![vertex], format!("mutation gives {got}")));
            }
        }
        let detail = if instances == 0 { format!("no instances at n={n}") } else { String::new() };
        report.push(rule.to_string(), instances, failures, detail);
    }
    let all: BTreeSet<DTildeSubtype> = DTildeSubtype::all().into_iter().collect();
    let table = reachable(rules);
    let missing: Vec<String> = all.difference(&table).map(|t| t.to_string()).collect();
    let extra: Vec<String> = table.difference(&all).map(|t| t.to_string()).collect();
    report.push(
        "rule targets cover every subtype",
        all.len() as u64,
        (missing.len() + extra.len()) as u64,
        if missing.is_empty() { String::new() } else { format!("missing {}", missing.join(",")) },
    );
    let seen: Vec<String> = observed.iter().map(|t| t.to_string()).collect();
    report.push(format!("observed outcomes n={n}"), observed.len() as u64, 0, seen.join(","));
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Outcomes observed across reports, read back from the `observed outcomes` lines.
pub fn observed_outcomes(report: &VerificationReport) -> BTreeSet<DTildeSubtype> {
    report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("observed outcomes"))
        .flat_map(|c| c.detail.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()))
        .collect()
}

fn random_quiver(rng: &mut impl Rng, n: usize, max_w: i32) -> Quiver {
    let density = rng.gen_range(0.2..0.9);
    let mut b = vec![0i32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let w = rng.gen_range(1..=max_w) * if rng.gen_bool(0.5) { 1 } else { -1 };
                b[i * n + j] = w;
                b[j * n + i] = -w;
            }
        }
    }
    Quiver::from_flat(n, b).expect("skew-symmetric by construction")
}

/// The worked example: vertices `j=0, b=1, c=2, d=3, e=4`.
pub fn worked_example() -> (Quiver, Quiver) {
    let before = Quiver::new(5, &[(2, 0, 2), (0, 1, 1), (0, 4, 1), (4, 3, 1), (3, 0, 1)]).expect("valid");
    let after = Quiver::new(5, &[(0, 2, 2), (1, 0, 1), (4, 0, 1), (0, 3, 1), (2, 1, 2), (3, 1, 1), (2, 4, 2)])
        .expect("valid");
    (before, after)
}

/// Random trials comparing the matrix rule with the path rule, plus the
/// involution and relabelling properties, on up to 11 vertices with weights
/// at most 2.
pub fn mutation_implementation_check(trials: usize, rng_seed: u64) -> VerificationReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut report = VerificationReport::new("mutation");
    let (before, after) = worked_example();
    let forward = before.mutate(0).ok() == Some(after.clone()) && mutate_by_paths(&before, 0).ok() == Some(after.clone());
    let backward = after.mutate(0).ok() == Some(before.clone()) && mutate_by_paths(&after, 0).ok() == Some(before.clone());
    report.push("worked example forward", 1, u64::from(!forward), "");
    report.push("worked example backward", 1, u64::from(!backward), "");

    let mut bad = [0u64; 3];
    for _ in 0..trials {
        let n = rng.gen_range(1..=11);
        let q = random_quiver(&mut rng, n, 2);
        let j = rng.gen_range(0..n);
        let m = q.mutate(j).expect("small weights");
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let checks = [
            mutate_by_paths(&q, j).ok().as_ref() == Some(&m),
            m.mutate(j).ok().as_ref() == Some(&q),
            q.permute(&perm).and_then(|p| p.mutate(perm[j])).ok() == m.permute(&perm).ok(),
        ];
        for (i, ok) in checks.into_iter().enumerate() {
            if !ok {
                bad[i] += 1;
                report.add_counterexample(Counterexample::new(
                    ["matrix rule = path rule", "involution", "relabelling"][i],
                    &q,
                    vec![j],
                    String::new(),
                ));
            }
        }
    }
    report.push("matrix rule = path rule", trials as u64, bad[0], "");
    report.push("involution", trials as u64, bad[1], "");
    report.push("relabelling", trials as u64, bad[2], "");
    report.elapsed = start.elapsed();
    report
}
