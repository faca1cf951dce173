use arctic_core::exact::{int, rat};
use arctic_core::loggas::{f_at_one, h_coefficients, h_generating, h_via_loggas, MAX_LOGGAS_R, MAX_LOGGAS_S};
use arctic_core::sixvertex::{boundary_distribution, enumerate_states, gefp_bruteforce, partition_function, weight_tally};
use arctic_core::{FreeFermionWeights, LGeometry, Value};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn alphas() -> [(i64, i64); 4] {
    [(1, 4), (1, 3), (1, 2), (2, 3)]
}

#[test]
fn square_partition_function_is_one() {
    for n in 1..=6 {
        for (p, q) in alphas() {
            let z = partition_function(&LGeometry::square(n).unwrap(), &FreeFermionWeights::ratio(p, q).unwrap()).unwrap();
            let e = z.exact.unwrap();
            assert!(e.is_rational() && e.coeff.is_one(), "N={n}: {e}");
        }
    }
}

#[test]
fn cut_partition_function_is_emptiness_probability() {
    for n in 2..=5 {
        for r in 1..n {
            for s in 1..=(n - r).min(r) {
                let g = LGeometry::new(n, r, s).unwrap();
                for (p, q) in alphas() {
                    let w = FreeFermionWeights::ratio(p, q).unwrap();
                    let a = rat(p, q);
                    let z = partition_function(&g, &w).unwrap().exact.unwrap();
                    let lhs = z.times_half_power(&(int(1) - &a), s * (n - r));
                    assert!(lhs.is_rational());
                    let efp = gefp_bruteforce(n, &vec![r; s], &w).unwrap();
                    assert_eq!(Value::Exact(lhs.coeff.clone()), efp, "{g:?}");
                    assert_eq!(lhs.coeff, f_at_one(n, r, s, &a).unwrap(), "{g:?}");
                }
            }
        }
    }
}

#[test]
fn boundary_polynomial_matches_enumeration() {
    for n in 2..=5 {
        for r in 1..n {
            for s in 1..=(n - r).min(r) {
                let g = LGeometry::new(n, r, s).unwrap();
                for (p, q) in alphas() {
                    let a = rat(p, q);
                    let brute = boundary_distribution(&g, &FreeFermionWeights::ratio(p, q).unwrap()).unwrap();
                    let coeffs = h_coefficients(n, r, s, &a).unwrap();
                    let brute: Vec<BigRational> = brute.iter().map(|v| v.exact().unwrap().clone()).collect();
                    assert_eq!(coeffs, brute, "{g:?} alpha={a}");
                }
            }
        }
    }
}

#[test]
fn enumeration_counts() {
    // Square DWBC counts are the alternating sign matrix numbers.
    for (n, asm) in [(1, 1u64), (2, 2), (3, 7), (4, 42), (5, 429), (6, 7436)] {
        assert_eq!(weight_tally(&LGeometry::square(n).unwrap()).unwrap().states(), asm);
    }
}

fn small_loggas_geometry() -> impl Strategy<Value = (usize, usize, usize)> {
    (1..=MAX_LOGGAS_S)
        .prop_flat_map(|s| (Just(s), s..=MAX_LOGGAS_R))
        .prop_flat_map(|(s, r)| (Just(s), Just(r), 0usize..3))
        .prop_map(|(s, r, q)| (r + s + q, r, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn loggas_equals_determinant((n, r, s) in small_loggas_geometry(), ap in 1i64..9, wn in -7i64..12, wd in 1i64..5) {
        let a = rat(ap, 10);
        let w = rat(wn, wd);
        prop_assume!(wn != 0);
        let lhs = h_via_loggas(n, r, s, &a, &w);
        let rhs = h_generating(n, r, s, &a, &w);
        match (lhs, rhs) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{x:?} vs {y:?}"),
        }
    }

    #[test]
    fn states_satisfy_ice_rule(n in 1usize..=5, r in 1usize..=5, s in 0usize..=5) {
        prop_assume!(r <= n && s <= n);
        let g = LGeometry::new(n, r, s).unwrap();
        let states = enumerate_states(&g).unwrap();
        prop_assert_eq!(states.is_empty(), !g.admits_states());
        for st in &states {
            prop_assert!(st.is_valid());
        }
    }
}
