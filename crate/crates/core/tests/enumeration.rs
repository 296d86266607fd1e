use std::collections::{HashMap, HashSet};

use quiverlab_core::enumerate::enumerate_class_with_workers;
use quiverlab_core::{
    build_registry, canonical_key, enumerate_class, seed, CanonicalKey, EnumLimits, Family,
    Membership, MutationClass, Quiver, RegistryConfig, SeedSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seed_of(f: Family, n: usize) -> Quiver {
    seed(SeedSpec::new(f, n).unwrap()).unwrap()
}

fn full(q: &Quiver) -> MutationClass {
    enumerate_class(q, &EnumLimits::unbounded()).unwrap()
}

fn key_set(c: &MutationClass) -> HashSet<CanonicalKey> {
    c.depth_map().keys().cloned().collect()
}

fn random_reorientation(q: &Quiver, rng: &mut impl Rng) -> Quiver {
    let arrows: Vec<_> = q
        .arrows()
        .map(|(s, t, w)| if rng.gen_bool(0.5) { (t, s, w) } else { (s, t, w) })
        .collect();
    Quiver::new(q.n(), &arrows).unwrap()
}

/// Exact distance between two quivers in the mutation graph on isomorphism
/// classes, searching from both ends and stopping once the balls meet.
fn bidirectional_distance(a: &Quiver, b: &Quiver, limit: u32) -> Option<u32> {
    let ka = canonical_key(a);
    let kb = canonical_key(b);
    if ka == kb {
        return Some(0);
    }
    let mut seen = [HashMap::from([(ka, a.clone())]), HashMap::from([(kb, b.clone())])];
    let mut frontier = [vec![a.clone()], vec![b.clone()]];
    let mut radius = [0u32, 0u32];
    while radius[0] + radius[1] < limit {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let mut next = Vec::new();
        for q in &frontier[side] {
            for j in 0..q.n() {
                let m = q.mutate(j).unwrap();
                let k = canonical_key(&m);
                if seen[1 - side].contains_key(&k) {
                    return Some(radius[0] + radius[1] + 1);
                }
                if let std::collections::hash_map::Entry::Vacant(e) = seen[side].entry(k) {
                    e.insert(m.clone());
                    next.push(m);
                }
            }
        }
        radius[side] += 1;
        frontier[side] = next;
    }
    None
}

#[test]
fn small_classes_by_hand() {
    assert_eq!(full(&seed_of(Family::A, 1)).len(), 1);
    assert_eq!(full(&seed_of(Family::A, 2)).len(), 1);
    // linear, the two sink/source orientations and the oriented triangle
    assert_eq!(full(&seed_of(Family::A, 3)).len(), 4);
}

#[test]
fn tree_orientation_does_not_change_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for family in [Family::D, Family::DTilde] {
        let base = seed_of(family, 7);
        let reference = key_set(&full(&base));
        for _ in 0..6 {
            let other = random_reorientation(&base, &mut rng);
            let c = full(&other);
            assert_eq!(key_set(&c), reference, "{family} from {other:?}");
        }
    }
}

#[test]
fn depths_are_minimal() {
    let start = seed_of(Family::DTilde, 8);
    let class = full(&start);
    let mut keys: Vec<_> = class.sorted_keys().into_iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 120 && !keys.is_empty() {
        let key = keys.swap_remove(rng.gen_range(0..keys.len()));
        let q = key.decode().unwrap();
        let d = class.depth(&key).unwrap();
        assert_eq!(bidirectional_distance(&start, &q, d + 1), Some(d), "{q:?}");
        checked += 1;
    }
    assert_eq!(checked, 120);
}

#[test]
fn every_member_has_a_parent_one_layer_up() {
    let class = full(&seed_of(Family::E, 7));
    for (key, &d) in class.depth_map() {
        if d == 0 {
            assert_eq!(*key, class.seed_key);
            continue;
        }
        let q = key.decode().unwrap();
        let has_parent =
            (0..q.n()).any(|j| class.depth(&canonical_key(&q.mutate(j).unwrap())) == Some(d - 1));
        assert!(has_parent);
    }
}

#[test]
fn finite_classes_are_closed() {
    let class = full(&seed_of(Family::D, 8));
    for q in class.quivers() {
        for j in 0..q.n() {
            assert!(class.contains_key(&canonical_key(&q.mutate(j).unwrap())));
        }
    }
}

#[test]
fn worker_count_does_not_change_results() {
    for (family, n) in [(Family::DTilde, 9), (Family::A, 9)] {
        let s = seed_of(family, n);
        let one = enumerate_class_with_workers(&s, &EnumLimits::unbounded(), 1).unwrap();
        let four = enumerate_class_with_workers(&s, &EnumLimits::unbounded(), 4).unwrap();
        assert_eq!(one.depth_map(), four.depth_map());
        assert_eq!(one, four);
    }
    let e = seed_of(Family::E, 10);
    let one = enumerate_class_with_workers(&e, &EnumLimits::depth(6), 1).unwrap();
    let three = enumerate_class_with_workers(&e, &EnumLimits::depth(6), 3).unwrap();
    assert_eq!(one, three);
}

#[test]
fn membership_queries() {
    let d10 = full(&seed_of(Family::D, 10));
    assert_eq!(d10.len(), 9252);
    assert_eq!(d10.member(&seed_of(Family::D, 10)), Membership::Member);
    let a11 = full(&seed_of(Family::A, 11));
    assert_eq!(a11.member(&seed_of(Family::D, 11)), Membership::NotMember);
    let dt = full(&seed_of(Family::DTilde, 10));
    assert_eq!(dt.len(), 6864);
    assert!(dt.quivers().iter().all(|q| dt.member(q) == Membership::Member));

    let e10 = enumerate_class(&seed_of(Family::E, 10), &EnumLimits::depth(8)).unwrap();
    assert_eq!(e10.len(), 10906);
    let far = (0..40).fold(seed_of(Family::E, 10), |q, i| q.mutate((i * 7) % 10).unwrap());
    if !e10.contains_key(&canonical_key(&far)) {
        assert_eq!(e10.member(&far), Membership::Unknown);
    }
}

#[test]
fn same_size_classes_are_disjoint() {
    for n in [7usize, 8] {
        let reg = build_registry([n], &Family::ALL, &RegistryConfig::default()).unwrap();
        let entries: Vec<_> = reg.entries().collect();
        let mut owner: HashMap<&CanonicalKey, Family> = HashMap::new();
        for e in &entries {
            for (k, _, _) in e.members() {
                if let Some(prev) = owner.insert(k, e.family) {
                    panic!("{k} in both {prev} and {}", e.family);
                }
            }
        }
        // A-tilde orientation classes are pairwise disjoint as well
        let at = reg.get(Family::ATilde, n).unwrap();
        let total: usize = at.classes.iter().map(|c| c.len()).sum();
        let union: HashSet<_> = at.classes.iter().flat_map(|c| c.depth_map().keys()).collect();
        assert_eq!(total, union.len());
    }
}

#[test]
fn nine_vertex_e_is_stored_once() {
    let reg = build_registry([9], &Family::ALL, &RegistryConfig::default()).unwrap();
    assert!(reg.get(Family::E, 9).is_none());
    let et = reg.get(Family::ETilde, 9).unwrap();
    assert_eq!(et.len(), 4376);
    assert!(et.is_truncated());
    let e9 = seed_of(Family::E, 9);
    assert_eq!(reg.lookup(&e9).len(), 1);

    let full_cfg = RegistryConfig { e9_depth: None, e9_label: Family::E, ..RegistryConfig::default() };
    let reg = build_registry([9], &[Family::E, Family::ETilde], &full_cfg).unwrap();
    assert!(reg.get(Family::ETilde, 9).is_none());
    let e = reg.get(Family::E, 9).unwrap();
    assert_eq!(e.len(), 7560);
    assert!(!e.is_truncated());
    assert!(e.contains(&seed_of(Family::ETilde, 9)));
}

#[test]
fn subsample_caps_a_large_depth_limited_class() {
    let e = enumerate_class(&seed_of(Family::A, 18), &EnumLimits::depth(6)).unwrap();
    assert!(e.len() > 100_000, "{}", e.len());
    let s = e.subsample(100_000, 2024);
    assert_eq!(s.len(), 100_000);
    assert_eq!(s.iter().collect::<HashSet<_>>().len(), 100_000);
    assert!(s.iter().all(|k| e.contains_key(k)));
    assert_eq!(s, e.subsample(100_000, 2024));
    assert_ne!(s, e.subsample(100_000, 2025));
}
