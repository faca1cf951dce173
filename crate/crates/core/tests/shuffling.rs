use arctic_core::shuffling::*;
use arctic_core::{Error, LGeometry, VertexType};
use proptest::prelude::*;

fn geom(n: usize, r: usize, s: usize) -> LGeometry {
    LGeometry::new(n, r, s).unwrap()
}

#[test]
fn order_one_uniform() {
    let wg = build_weights(&geom(1, 1, 0), 0.5).unwrap();
    assert_eq!(wg.cell(0, 0), &CellWeights::uniform(1.0));
    let pr = edge_probabilities(&wg).unwrap();
    assert_eq!(pr.quadruple(0, 0), [0.5; 4]);

    let tab = RhoTable::new(&wg).unwrap();
    let trials = 20_000;
    let ns = (0..trials).filter(|&s| tab.sample(s).has(0, 0, Edge::N)).count() as f64;
    let sd = (0.25 / trials as f64).sqrt();
    assert!((ns / trials as f64 - 0.5).abs() < 3.0 * sd);
}

#[test]
fn half_alpha_square_is_unbiased() {
    let wg = build_weights(&geom(6, 6, 0), 0.5).unwrap();
    assert!(wg.cells().iter().all(|c| *c == CellWeights::uniform(1.0)));
}

#[test]
fn cut_corner_is_frozen() {
    let g = geom(12, 7, 4);
    let pr = edge_probabilities(&build_weights(&g, 0.4).unwrap()).unwrap();
    for i in 0..4 {
        for j in 7..12 {
            assert_eq!(pr.quadruple(i, j), [0.0, 0.0, 0.0, 1.0]);
        }
    }
}

#[test]
fn deep_frozen_corners() {
    let pr = edge_probabilities(&build_weights(&geom(200, 200, 0), 0.5).unwrap()).unwrap();
    let unit = |q: [f64; 4]| {
        let big = q.iter().cloned().fold(0.0, f64::max);
        (1.0 - big) + q.iter().sum::<f64>() - big
    };
    for (i, j) in [(0, 0), (0, 199), (199, 0), (199, 199), (3, 5)] {
        assert!(unit(pr.quadruple(i, j)) < 1e-8, "{:?}", pr.quadruple(i, j));
    }
}

#[test]
fn over_constrained_cut() {
    let wg = build_weights(&geom(5, 2, 3), 0.5).unwrap();
    assert_eq!(edge_probabilities(&wg), Err(Error::ZeroTotalWeight));
    assert_eq!(sample_tiling(&wg, 1), Err(Error::ZeroTotalWeight));
}

#[test]
fn degenerate_alpha_is_still_exact() {
    // alpha = 0 forbids types 3 and 4, leaving one state on the square.
    let pr = edge_probabilities(&build_weights(&geom(5, 5, 0), 0.0).unwrap()).unwrap();
    for k in 0..25 {
        let q = [pr.p[k], pr.q[k], pr.r[k], pr.s[k]];
        assert!(q.iter().all(|&v| v == 0.0 || v == 1.0), "{q:?}");
    }
    assert!((pr.total() - 30.0).abs() < 1e-12);
}

#[test]
fn seeds_and_version() {
    let wg = build_weights(&geom(16, 10, 4), 0.5).unwrap();
    let a = sample_tiling(&wg, 7).unwrap();
    assert_eq!(a, sample_tiling(&wg, 7).unwrap());
    assert_ne!(a.cells, sample_tiling(&wg, 8).unwrap().cells);
    assert_eq!(a.sampler_version, SAMPLER_VERSION);
    assert_eq!(RhoTable::new(&wg).unwrap().sample(7), a);
}

#[test]
fn rho_table_guard() {
    let wg = build_weights(&geom(MAX_RHO_TABLE_ORDER + 1, 10, 0), 0.5).unwrap();
    assert!(matches!(RhoTable::new(&wg), Err(Error::SizeGuard { .. })));
}

#[test]
fn order_parameter_definitions() {
    let mk = |q: [f64; 4]| PlaquetteProbabilities {
        order: 1,
        p: vec![q[0]],
        q: vec![q[1]],
        r: vec![q[2]],
        s: vec![q[3]],
        ln_z: 0.0,
    };
    let f = order_parameters(&mk([1.0, 0.0, 0.0, 0.0]), 1.0);
    assert_eq!((f.x[0], f.z[0]), (1.0, [1.0, 0.0]));
    let f = order_parameters(&mk([0.25; 4]), 1.0);
    assert_eq!((f.x[0], f.z[0]), (0.5, [0.0, 0.0]));
}

fn any_geometry() -> impl Strategy<Value = LGeometry> {
    (1usize..24).prop_flat_map(|n| (Just(n), 1..=n)).prop_flat_map(|(n, r)| (Just(n), Just(r), 0..=r)).prop_map(|(n, r, s)| geom(n, r, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_are_six_vertex_states(g in any_geometry(), alpha in 0.05f64..0.95, seed in any::<u64>()) {
        let t = sample_tiling(&build_weights(&g, alpha).unwrap(), seed).unwrap();
        prop_assert!(t.is_perfect_matching());
        prop_assert_eq!(t.domino_count(), g.n * (g.n + 1));
        let st = t.to_six_vertex(&g).unwrap();
        for k in 0..g.s {
            for j in g.r..g.n {
                prop_assert_eq!(st.get(j, k), VertexType::Two);
            }
        }
    }

    #[test]
    fn probabilities_are_consistent(g in any_geometry(), alpha in prop_oneof![Just(0.5), 0.0f64..=1.0]) {
        let pr = match edge_probabilities(&build_weights(&g, alpha).unwrap()) {
            Ok(p) => p,
            Err(e) => {
                prop_assert_eq!(e, Error::ZeroTotalWeight);
                return Ok(());
            }
        };
        for v in pr.p.iter().chain(&pr.q).chain(&pr.r).chain(&pr.s) {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(v));
        }
        prop_assert!((pr.total() - (g.n * (g.n + 1)) as f64).abs() < 1e-10);
        let f = order_parameters(&pr, 1.0);
        let range = if alpha == 0.5 { 0.0..=1.0 } else { -0.5..=1.5 };
        for (x, z) in f.x.iter().zip(&f.z) {
            prop_assert!((range.start() - 1e-12..=range.end() + 1e-12).contains(x));
            prop_assert!(z[0] * z[0] + z[1] * z[1] <= 1.0 + 1e-12);
        }
    }
}
