use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::generators::{cycle, petersen, random_trifree_planar, trifree_planar_corpus, wheel_subdivided};
use crate::plane_graph::SimpleGraph;

fn r(p: i64, q: i64) -> BigRational {
    BigRational::from_ratio(p, q)
}

/// Every maximal independent set, by enumerating all vertex subsets.
fn maximal_independent_sets<G: Graph>(g: &G) -> Vec<BTreeSet<VertexId>> {
    let ids = g.vertex_ids();
    let n = ids.len();
    assert!(n <= 16);
    let independent = |m: u32| {
        (0..n).all(|i| m >> i & 1 == 0 || (0..n).all(|j| m >> j & 1 == 0 || !g.has_edge(ids[i], ids[j])))
    };
    (0u32..1 << n)
        .filter(|&m| independent(m) && (0..n).all(|i| m >> i & 1 == 1 || !independent(m | 1 << i)))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| ids[i]).collect())
        .collect()
}

/// The packing LP written out over every maximal independent set.
fn brute_force_chi_f<G: Graph>(g: &G) -> BigRational {
    let ids = g.vertex_ids();
    let sets = maximal_independent_sets(g);
    let a: Vec<Vec<BigRational>> =
        sets.iter().map(|s| ids.iter().map(|v| if s.contains(v) { r(1, 1) } else { r(0, 1) }).collect()).collect();
    match maximize(&a, &vec![r(1, 1); sets.len()], &vec![r(1, 1); ids.len()]) {
        LpOutcome::Optimal(sol) => sol.value,
        LpOutcome::Unbounded => panic!("bounded"),
    }
}

fn k(n: u32) -> SimpleGraph {
    let edges: Vec<(u32, u32)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    SimpleGraph::from_edges(0..n, &edges)
}

#[test]
fn simplex_textbook_example() {
    // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    let a = vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(2, 1)], vec![r(3, 1), r(2, 1)]];
    let b = vec![r(4, 1), r(12, 1), r(18, 1)];
    let c = vec![r(3, 1), r(5, 1)];
    let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else { panic!() };
    assert_eq!(sol.value, r(36, 1));
    assert_eq!(sol.x, vec![r(2, 1), r(6, 1)]);
    assert_eq!(sol.duals, vec![r(0, 1), r(3, 2), r(1, 1)]);
    let unbounded = maximize(&[vec![r(-1, 1)]], &[r(1, 1)], &[r(1, 1)]);
    assert_eq!(unbounded, LpOutcome::Unbounded);
    let float = maximize(&[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]], &[4.0, 12.0, 18.0], &[3.0, 5.0]);
    let LpOutcome::Optimal(fs): LpOutcome<f64> = float else { panic!() };
    assert!((fs.value - 36.0).abs() < 1e-9);
}

#[test]
fn mwis_examples() {
    assert_eq!(independence_number(&cycle(5)), 2);
    assert_eq!(independence_number(&petersen()), 4);
    let g = cycle(5);
    let w: BTreeMap<VertexId, BigRational> = [(0, 3), (1, 1), (2, 1), (3, 1), (4, 1)].map(|(v, x)| (v, r(x, 1))).into();
    let (set, weight) = max_weight_independent_set(&g, &w);
    assert_eq!(weight, r(4, 1));
    assert!(set.contains(&0) && set.len() == 2);
}

#[test]
fn mwis_matches_enumeration_on_random_weights() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for seed in 0..30 {
        let g = random_trifree_planar(11, seed);
        let w: BTreeMap<VertexId, BigRational> =
            g.vertex_ids().into_iter().map(|v| (v, r(rng.random_range(0..9), rng.random_range(1..4)))).collect();
        let best = maximal_independent_sets(&g)
            .into_iter()
            .map(|s| s.iter().fold(r(0, 1), |a, v| a + w[v].clone()))
            .max()
            .unwrap();
        assert_eq!(max_weight_independent_set(&g, &w).1, best);
    }
}

#[test]
fn chi_f_small_examples() {
    assert_eq!(chi_f(&k(3)).unwrap().value, r(3, 1));
    let c5 = chi_f(&cycle(5)).unwrap();
    assert_eq!(c5.value, r(5, 2));
    assert_eq!(c5.check(&cycle(5)), Ok(()));
    assert_eq!(brute_force_chi_f(&cycle(5)), r(5, 2));
    assert_eq!(maximal_independent_sets(&cycle(5)).len(), 5);
    assert_eq!(chi_f(&petersen()).unwrap().value, r(5, 2));
    assert_eq!(chi_f(&SimpleGraph::new()), Err(FractionalError::EmptyGraph));
}

#[test]
fn chi_f_float_instantiation_is_close() {
    let approx: ChiF<f64> = chi_f_with(&petersen()).unwrap();
    assert!((approx.value - 2.5).abs() < 1e-9);
    assert_eq!(approx.check(&petersen()), Ok(()));
}

#[test]
fn broken_certificates_are_rejected() {
    let g = cycle(5);
    let mut c = chi_f(&g).unwrap();
    c.dual.insert(0, r(1, 1));
    assert!(c.check(&g).is_err());
    let mut c = chi_f(&g).unwrap();
    c.cover.sets[0].0.insert(1);
    c.cover.sets[0].0.insert(0);
    assert!(c.check(&g).is_err());
    let mut c = chi_f(&g).unwrap();
    c.cover.sets.pop();
    assert!(c.check(&g).is_err());
}

#[test]
fn column_generation_matches_full_lp_on_corpus() {
    for g in trifree_planar_corpus(7) {
        let c = chi_f(&g).unwrap();
        assert_eq!(c.value, brute_force_chi_f(&g), "{:?}", g.rotations());
        assert_eq!(c.check(&g), Ok(()));
    }
    for seed in 0..20 {
        let g = random_trifree_planar(12, seed);
        let c = chi_f(&g).unwrap();
        assert_eq!(c.value, brute_force_chi_f(&g));
        assert_eq!(c.check(&g), Ok(()));
    }
}

#[test]
fn ratio_bounds_sandwich() {
    let b = ratio_bounds(&cycle(5)).unwrap();
    assert_eq!(b.lower, r(5, 2));
    assert_eq!(b.upper, r(5, 2));
    for seed in 0..10 {
        let g = random_trifree_planar(10, seed);
        let b = ratio_bounds(&g).unwrap();
        let x = chi_f(&g).unwrap().value;
        assert!(b.lower <= x && x <= b.upper, "seed {seed}");
        assert_eq!(crate::set_coloring::verify(&g, &b.witness, &ColoringSpec::uniform(b.witness.palette, b.b)), Ok(()));
    }
    let w = wheel_subdivided(5);
    assert!(ratio_bounds(&w).unwrap().lower <= chi_f(&w).unwrap().value);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deleting_a_vertex_never_raises_chi_f(seed in 0u64..1000, n in 5usize..11, pick in 0usize..100) {
        let g = random_trifree_planar(n, seed).to_simple();
        let ids = g.vertex_ids();
        let mut h = g.clone();
        h.remove_vertex(ids[pick % ids.len()]);
        prop_assert!(chi_f(&h).unwrap().value <= chi_f(&g).unwrap().value);
    }

    #[test]
    fn chi_f_at_least_n_over_alpha(seed in 0u64..1000, n in 3usize..12) {
        let g = random_trifree_planar(n, seed);
        let lower = BigRational::from_ratio(g.num_vertices() as i64, independence_number(&g) as i64);
        prop_assert!(chi_f(&g).unwrap().value >= lower);
    }
}
