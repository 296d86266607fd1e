use std::collections::HashMap;

use quiverlab_core::{
    are_isomorphic, canonical_form, canonical_key, enumerate_class, seed_orientations, EnumLimits,
    Family, Quiver, SeedSpec,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Lexicographically least relabelled matrix over all n! permutations.
fn brute_force_form(q: &Quiver) -> Vec<i32> {
    let n = q.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<i32>> = None;
    loop {
        let mut m = vec![0i32; n * n];
        for i in 0..n {
            for j in 0..n {
                m[perm[i] * n + perm[j]] = q.get(i, j);
            }
        }
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn random_quiver(rng: &mut impl Rng, n: usize, max_w: i32) -> Quiver {
    let density = rng.gen_range(0.2..0.8);
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let w = rng.gen_range(1..=max_w);
                arrows.push(if rng.gen_bool(0.5) { (i, j, w) } else { (j, i, w) });
            }
        }
    }
    Quiver::new(n, &arrows).unwrap()
}

fn shuffled(q: &Quiver, rng: &mut impl Rng) -> Quiver {
    let mut perm: Vec<usize> = (0..q.n()).collect();
    perm.shuffle(rng);
    q.permute(&perm).unwrap()
}

/// Every member of every seeded class on 4..=6 vertices, plus random quivers
/// that share degree data with class members.
fn small_corpus() -> Vec<Quiver> {
    let mut out = Vec::new();
    for n in 4..=6 {
        for family in Family::ALL {
            let Ok(spec) = SeedSpec::new(family, n) else { continue };
            for s in seed_orientations(spec).unwrap() {
                out.extend(enumerate_class(&s, &EnumLimits::unbounded()).unwrap().quivers());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        out.push(random_quiver(&mut rng, n, 2));
    }
    out
}

#[test]
fn isomorphism_agrees_with_exhaustive_permutation_search() {
    let corpus = small_corpus();
    let forms: Vec<(usize, Vec<i32>)> = corpus.iter().map(|q| (q.n(), brute_force_form(q))).collect();
    let keys: Vec<_> = corpus.iter().map(canonical_key).collect();
    let mut checked = 0usize;
    for a in 0..corpus.len() {
        for b in a..corpus.len() {
            let expected = forms[a] == forms[b];
            assert_eq!(keys[a] == keys[b], expected, "{:?} vs {:?}", corpus[a], corpus[b]);
            if corpus[a].n() == corpus[b].n() && a % 7 == b % 7 {
                assert_eq!(are_isomorphic(&corpus[a], &corpus[b]), expected);
            }
            checked += 1;
        }
    }
    assert!(checked > 100_000);
}

#[test]
fn relabelled_copies_share_a_key() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=11);
        let q = random_quiver(&mut rng, n, 2);
        let p = shuffled(&q, &mut rng);
        assert_eq!(canonical_key(&q), canonical_key(&p), "{q:?}");
        assert!(are_isomorphic(&q, &p));
    }
}

#[test]
fn key_round_trips_to_an_isomorphic_quiver() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let n = rng.gen_range(1..=11);
        let q = random_quiver(&mut rng, n, 3);
        let key = canonical_key(&q);
        let back = key.decode().unwrap();
        assert!(are_isomorphic(&q, &back));
        assert_eq!(canonical_key(&back), key);
        assert_eq!(quiverlab_core::CanonicalKey::from_hex(&key.to_hex()).unwrap(), key);
    }
}

#[test]
fn canonical_form_permutation_is_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.gen_range(1..=10);
        let q = random_quiver(&mut rng, n, 2);
        let (form, perm) = canonical_form(&q);
        assert_eq!(q.permute(&perm).unwrap(), form);
    }
}

#[test]
fn small_examples() {
    let path = Quiver::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
    let reversed = Quiver::new(3, &[(2, 1, 1), (1, 0, 1)]).unwrap();
    let tri = Quiver::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
    assert_eq!(canonical_key(&path), canonical_key(&reversed));
    assert_ne!(canonical_key(&path), canonical_key(&tri));
    assert!(are_isomorphic(&path, &path));
    assert!(!are_isomorphic(&path, &tri));
}

#[test]
fn highly_symmetric_quivers_are_handled() {
    // Regular tournaments and cycles defeat colour refinement on its own.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [5usize, 7, 9, 11] {
        let circulant = |shifts: &[usize]| {
            let arrows: Vec<_> =
                (0..n).flat_map(|i| shifts.iter().map(move |&s| (i, (i + s) % n, 1))).collect();
            Quiver::new(n, &arrows).unwrap()
        };
        let half: Vec<usize> = (1..=n / 2).collect();
        let t1 = circulant(&half);
        let cycle = circulant(&[1]);
        for q in [t1, cycle] {
            let key = canonical_key(&q);
            for _ in 0..20 {
                assert_eq!(canonical_key(&shuffled(&q, &mut rng)), key);
            }
        }
    }
    // Two non-isomorphic regular tournaments on 7 vertices.
    let paley = {
        let qr = [1usize, 2, 4];
        let arrows: Vec<_> = (0..7).flat_map(|i| qr.iter().map(move |&s| (i, (i + s) % 7, 1))).collect();
        Quiver::new(7, &arrows).unwrap()
    };
    let rotational = {
        let arrows: Vec<_> = (0..7).flat_map(|i| [1usize, 2, 3].into_iter().map(move |s| (i, (i + s) % 7, 1))).collect();
        Quiver::new(7, &arrows).unwrap()
    };
    assert_eq!(brute_force_form(&paley) == brute_force_form(&rotational), are_isomorphic(&paley, &rotational));
}

#[test]
fn key_counts_match_isomorphism_classes_of_small_tournaments() {
    // Tournaments on n vertices up to isomorphism: 1, 1, 2, 4, 12 for n = 1..=5.
    for (n, expected) in [(1usize, 1usize), (2, 1), (3, 2), (4, 4), (5, 12)] {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut classes: HashMap<_, usize> = HashMap::new();
        for mask in 0u32..(1 << pairs.len()) {
            let arrows: Vec<_> = pairs
                .iter()
                .enumerate()
                .map(|(b, &(i, j))| if mask >> b & 1 == 1 { (i, j, 1) } else { (j, i, 1) })
                .collect();
            *classes.entry(canonical_key(&Quiver::new(n, &arrows).unwrap())).or_default() += 1;
        }
        assert_eq!(classes.len(), expected, "n = {n}");
    }
}
