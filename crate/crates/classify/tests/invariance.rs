use quiverlab_classify::{classify, is_type_d_affine};
use quiverlab_core::{enumerate_class, seed, EnumLimits, Family, Quiver, SeedSpec};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class_members(f: Family, n: usize) -> Vec<Quiver> {
    let s = seed(SeedSpec::new(f, n).unwrap()).unwrap();
    enumerate_class(&s, &EnumLimits::unbounded()).unwrap().quivers()
}

fn tag(q: &Quiver) -> (String, Option<String>) {
    let v = classify(q, None);
    (v.family_name().to_string(), v.subtype.map(|s| s.to_string()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verdict_ignores_vertex_labels(which in 0usize..3, pick in any::<u32>(), perm_seed in any::<u64>()) {
        let family = [Family::A, Family::D, Family::DTilde][which];
        let members = class_members(family, 8);
        let q = &members[pick as usize % members.len()];
        let mut perm: Vec<usize> = (0..q.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let p = q.permute(&perm).unwrap();
        prop_assert_eq!(tag(q), tag(&p));
    }
}

#[test]
fn affine_d_is_closed_under_mutation() {
    for n in 5..=9 {
        for q in class_members(Family::DTilde, n) {
            for j in 0..n {
                let m = q.mutate(j).unwrap();
                assert!(is_type_d_affine(&m).is_some(), "{q:?} at {j}");
            }
        }
    }
}
