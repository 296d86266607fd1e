use proptest::prelude::*;
use quiverlab_core::graph_rule::mutate_by_paths;
use quiverlab_core::Quiver;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_quiver(rng: &mut impl Rng, n: usize, max_w: i32, density: f64) -> Quiver {
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
    Quiver::from_flat(n, b).unwrap()
}

fn arb_quiver(max_n: usize, max_w: i32) -> impl Strategy<Value = Quiver> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-max_w..=max_w, n * (n - 1) / 2).prop_map(move |upper| {
            let mut b = vec![0i32; n * n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let w = it.next().unwrap();
                    b[i * n + j] = w;
                    b[j * n + i] = -w;
                }
            }
            Quiver::from_flat(n, b).unwrap()
        })
    })
}

fn arb_quiver_with_vertex(max_n: usize, max_w: i32) -> impl Strategy<Value = (Quiver, usize)> {
    arb_quiver(max_n, max_w).prop_flat_map(|q| {
        let n = q.n();
        (Just(q), 0..n)
    })
}

fn skew_with_zero_diagonal(q: &Quiver) -> bool {
    (0..q.n()).all(|i| q.get(i, i) == 0 && (0..q.n()).all(|j| q.get(i, j) == -q.get(j, i)))
}

// Vertices: j=0, b=1, c=2, d=3, e=4.
fn fig3_before() -> Quiver {
    Quiver::new(5, &[(2, 0, 2), (0, 1, 1), (0, 4, 1), (4, 3, 1), (3, 0, 1)]).unwrap()
}

fn fig3_after() -> Quiver {
    Quiver::new(5, &[(0, 2, 2), (1, 0, 1), (4, 0, 1), (0, 3, 1), (2, 1, 2), (3, 1, 1), (2, 4, 2)])
        .unwrap()
}

#[test]
fn worked_example_forward_and_back() {
    assert_eq!(fig3_before().mutate(0).unwrap(), fig3_after());
    assert_eq!(fig3_after().mutate(0).unwrap(), fig3_before());
    assert_eq!(mutate_by_paths(&fig3_before(), 0).unwrap(), fig3_after());
    assert_eq!(mutate_by_paths(&fig3_after(), 0).unwrap(), fig3_before());
}

#[test]
fn single_arrow_reverses() {
    let q = Quiver::new(2, &[(0, 1, 1)]).unwrap();
    assert_eq!(q.mutate(0).unwrap(), Quiver::new(2, &[(1, 0, 1)]).unwrap());
}

#[test]
fn triangle_becomes_path() {
    let tri = Quiver::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
    let p = tri.mutate(1).unwrap();
    assert_eq!(p, Quiver::new(3, &[(2, 1, 1), (1, 0, 1)]).unwrap());
    assert!(!p.adjacent(0, 2));
    assert_eq!(tri.mutate_seq(&[1, 1]).unwrap(), tri);
    assert_eq!(tri.mutate_seq(&[]).unwrap(), tri);
}

#[test]
fn matrix_rule_matches_graph_rule_on_ten_thousand_quivers() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut disagreements = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=11);
        let density = rng.gen_range(0.1..0.9);
        let q = random_quiver(&mut rng, n, 2, density);
        let j = rng.gen_range(0..n);
        if q.mutate(j).unwrap() != mutate_by_paths(&q, j).unwrap() {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn mutation_is_an_involution((q, j) in arb_quiver_with_vertex(11, 5)) {
        prop_assert_eq!(q.mutate(j).unwrap().mutate(j).unwrap(), q);
    }

    #[test]
    fn mutation_preserves_skew_symmetry((q, j) in arb_quiver_with_vertex(11, 50)) {
        prop_assert!(skew_with_zero_diagonal(&q.mutate(j).unwrap()));
    }

    #[test]
    fn matrix_rule_matches_graph_rule((q, j) in arb_quiver_with_vertex(11, 2)) {
        prop_assert_eq!(q.mutate(j).unwrap(), mutate_by_paths(&q, j).unwrap());
    }

    #[test]
    fn mutation_is_equivariant((q, j) in arb_quiver_with_vertex(11, 3), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..q.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let lhs = q.permute(&perm).unwrap().mutate(perm[j]).unwrap();
        let rhs = q.mutate(j).unwrap().permute(&perm).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn out_of_range_vertex_is_an_error() {
    let q = fig3_before();
    assert!(q.mutate(5).is_err());
    assert!(q.mutate_seq(&[0, 7]).is_err());
}

#[test]
fn overflow_is_reported() {
    let q = Quiver::new(3, &[(0, 1, i32::MAX), (1, 2, 2)]).unwrap();
    assert!(q.mutate(1).is_err());
}
