use quiverlab_classify::{
    classify, connecting_vertices, find_central_cycles, is_type_a, is_type_d, is_type_d_affine, DSubtype,
    DTildeSubtype, Method, Role, Subtype,
};
use quiverlab_core::{build_registry, seed, Family, Quiver, RegistryConfig, SeedSpec};

fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let a: Vec<_> = arrows.iter().map(|&(s, t)| (s, t, 1)).collect();
    Quiver::new(n, &a).unwrap()
}

fn seed_of(f: Family, n: usize) -> Quiver {
    seed(SeedSpec::new(f, n).unwrap()).unwrap()
}

#[test]
fn d_seed_is_a_fork_at_n_minus_3() {
    for n in 5..=12 {
        let (t, cert) = is_type_d(&seed_of(Family::D, n)).unwrap();
        assert_eq!(t, DSubtype::I);
        assert_eq!(cert.first_with(Role::Connecting(0)), Some(n - 3));
        assert_eq!(cert.vertices_with(Role::Leaf), vec![n - 2, n - 1]);
    }
}

#[test]
fn oriented_square_is_type_three() {
    let (t, cert) = is_type_d(&q(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap();
    assert_eq!(t, DSubtype::III);
    assert_eq!(cert.motif_edges.len(), 4);
}

#[test]
fn affine_seed_is_fork_path_fork() {
    for n in 5..=12 {
        let (t, _) = is_type_d_affine(&seed_of(Family::DTilde, n)).unwrap();
        assert_eq!(t, DTildeSubtype::Paired(DSubtype::I, DSubtype::I));
    }
}

#[test]
fn five_vertex_two_cycle_block_is_vi_prime() {
    let bv = q(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 4), (3, 2)]);
    let (t, cert) = is_type_d_affine(&bv).unwrap();
    assert_eq!(t, DTildeSubtype::VIPrime);
    assert_eq!(cert.role(0), Some(Role::Connecting(0)));
    // with a longer piece at the hub it is still VI'
    let mut arrows: Vec<_> = bv.arrows().collect();
    arrows.extend([(0, 5, 1), (5, 6, 1)]);
    let t = is_type_d_affine(&Quiver::new(7, &arrows).unwrap()).unwrap().0;
    assert_eq!(t, DTildeSubtype::VIPrime);
}

#[test]
fn minimal_type_v_has_seven_arrows() {
    // a=0, b=1, path 1 -> 2 -> 0, d=3, d'=4 with 1 -> d -> 0
    let v = q(5, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 0), (1, 4), (4, 0)]);
    let (t, cert) = is_type_d_affine(&v).unwrap();
    assert_eq!(t, DTildeSubtype::V);
    assert_eq!(cert.role(0), Some(Role::A));
    assert_eq!(cert.role(1), Some(Role::B));
    assert_eq!(cert.motif_edges.len(), 7);
    let central = find_central_cycles(&v);
    let through_path = central.iter().find(|c| c.vertices == vec![0, 1, 2]).unwrap();
    assert_eq!(through_path.spikes[0], vec![3, 4]);
}

#[test]
fn two_cycles_share_the_hub() {
    // hub 0; cycles 0 -> 1 -> 2 -> 3 -> 0 and 0 -> 4 -> 5 -> 0; cross 1 -> 5, 4 -> 3
    let vi = q(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 0), (1, 5), (4, 3)]);
    let (t, cert) = is_type_d_affine(&vi).unwrap();
    assert_eq!(t, DTildeSubtype::VI);
    assert_eq!(cert.role(0), Some(Role::Hub));
    assert_eq!(cert.vertices_with(Role::Cycle(1)).len() + cert.vertices_with(Role::Cycle(2)).len(), 5);
}

#[test]
fn connecting_vertices_of_small_pieces() {
    let path = q(3, &[(0, 1), (1, 2)]);
    let cert = is_type_a(&path).unwrap();
    assert_eq!(connecting_vertices(&path, &cert).unwrap().into_iter().collect::<Vec<_>>(), vec![0, 2]);
}

#[test]
fn classify_examples() {
    let v = classify(&seed_of(Family::A, 11), None);
    assert_eq!((v.family, v.method), (Some(Family::A), Some(Method::Structural)));
    assert!(v.certificate.is_some());

    let reg = build_registry([8], &[Family::ATilde, Family::E, Family::ETilde], &RegistryConfig::default()).unwrap();
    for family in [Family::ATilde, Family::E, Family::ETilde] {
        let entry = reg.get(family, 8).unwrap();
        for (key, _, _) in entry.members().into_iter().step_by(97) {
            let v = classify(&key.decode().unwrap(), Some(&reg));
            assert_eq!(v.family, Some(family));
            assert_eq!(v.method, Some(Method::RegistryLookup));
            assert_eq!(v.matched, Some((family, 8)));
        }
    }

    let kronecker = Quiver::new(2, &[(0, 1, 3)]).unwrap();
    let v = classify(&kronecker, Some(&reg));
    assert!(v.is_unknown());
    assert!(v.diagnostic.unwrap().contains("no registry entry"));

    let v = classify(&seed_of(Family::D, 6), None);
    assert_eq!(v.subtype, Some(Subtype::D(DSubtype::I)));
}
