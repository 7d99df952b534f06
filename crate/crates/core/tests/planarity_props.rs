mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tnplanar::planar::{check_planarity, Planarity};
use tnplanar::Tensor;

fn unit(_: &mut ChaCha8Rng, d: usize) -> Tensor {
    Tensor::unit(d)
}

/// Kuratowski graph with subdivided edges, extra edges, and relabelled vertices.
fn kuratowski(rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let (mut n, base): (usize, Vec<(usize, usize)>) = if rng.gen_bool(0.5) {
        (5, (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect())
    } else {
        (6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect())
    };
    let mut edges = Vec::new();
    for (a, b) in base {
        let mut prev = a;
        for _ in 0..rng.gen_range(0..3) {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, b));
    }
    for _ in 0..rng.gen_range(0..4) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (n, edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn outerplanar_multigraphs_are_planar(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=12);
        let edges = common::random_edges(&mut rng, n, 30, true);
        let net = common::network_from_edges(&mut rng, n, &edges, unit);
        match check_planarity(&net) {
            Planarity::Planar(e) => {
                prop_assert!(e.euler_holds());
                prop_assert_eq!(e.num_edges(), edges.len());
            }
            Planarity::NotPlanar(w) => prop_assert!(false, "rejected: {:?}", w),
        }
    }

    #[test]
    fn kuratowski_subdivisions_are_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, edges) = kuratowski(&mut rng);
        let net = common::network_from_edges(&mut rng, n, &edges, unit);
        prop_assert!(!check_planarity(&net).is_planar());
    }

    #[test]
    fn random_planar_networks_embed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..60);
        let net = tnplanar::bench::random_planar_network(n, &mut rng);
        let emb = check_planarity(&net).embedding();
        prop_assert!(emb.is_some_and(|e| e.euler_holds()));
    }
}
