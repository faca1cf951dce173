use arctic_core::curve::*;
use proptest::prelude::*;

fn ellipse(x: f64, y: f64, a: f64) -> f64 {
    let (p, q) = (1.0 - x - y, x - y);
    p * p / (1.0 - a) + q * q / a - 1.0
}

#[test]
fn regime_one_is_the_ellipse() {
    let a = 0.3;
    let f = TangentFamily::new(5.0, 0.0, a, Branch::Plus).unwrap();
    assert_eq!(f.params.regime, Regime::I);
    for i in 0..1000 {
        let theta = -1.5 + 3.0 * i as f64 / 999.0;
        let (x, y) = f.point_chart(Chart::from_angle(theta)).unwrap();
        assert!(ellipse(x, y, a).abs() < 1e-12, "theta={theta}");
    }
    let (x, y) = f.caustic_point(1.0).unwrap();
    assert!((x - a).abs() < 1e-10 && y.abs() < 1e-10);
    let (x, y) = f.caustic_point(f64::INFINITY).unwrap();
    assert!((x - 1.0).abs() < 1e-10 && (y - (1.0 - a)).abs() < 1e-10);
}

#[test]
fn round_trips_in_every_regime() {
    for (r, q, a) in [(5.0, 0.0, 0.3), (5.0, 2.0, 0.3), (1.5, 0.0, 0.3), (2.0, 0.7, 0.5), (1.2, 5.0, 0.3), (2.0, 8.0, 0.5)] {
        let p = RegimeParams::new(r, q, a).unwrap();
        for sign in [1.0, -1.0] {
            for i in 1..100 {
                let u = a + (1.0 - a) * i as f64 / 100.0;
                let Ok(pt) = inverse_resolvent(u, &p, sign) else { continue };
                let back = exp_minus_resolvent_at(pt, &p).unwrap();
                assert!((back - u).abs() < 1e-10, "({r},{q},{a}) sign {sign} u={u}: {back}");
            }
        }
    }
}

#[test]
fn small_q_matches_closed_form() {
    let (r, a) = (1.5, 0.3);
    for br in [Branch::Plus, Branch::Minus] {
        let closed = TangentFamily::new(r, 0.0, a, br).unwrap();
        let generic = TangentFamily::generic(r, 1e-8, a, br).unwrap();
        for w in [-3.0, -0.5, 0.3, 1.7, 2.5, 6.0, 40.0] {
            let (p0, p1) = (closed.phi(w).unwrap(), generic.phi(w).unwrap());
            assert!((p0 - p1).abs() < 1e-6, "{br:?} w={w}: {p0} vs {p1}");
            let (a0, a1) = (closed.caustic_point(w).unwrap(), generic.caustic_point(w).unwrap());
            assert!((a0.0 - a1.0).abs() < 1e-6 && (a0.1 - a1.1).abs() < 1e-6, "{br:?} w={w}");
        }
    }
}

#[test]
fn curve_points_annihilate_the_sextic() {
    for (r, a) in [(1.5, 0.3), (14.0 / 11.0, 0.5), (2.0, 0.6)] {
        let sx = ImplicitSexticQ0::new(a, r).unwrap();
        let set = curve_branches(r, 0.0, a, 300).unwrap();
        for b in &set.branches {
            for s in &b.samples {
                let v = sx.eval_xy(s.x, s.y) / sx.scale_xy(s.x, s.y);
                assert!(v.abs() < 1e-8, "({r},{a}) {s:?}: {v}");
            }
        }
    }
}

#[test]
fn eta_grid() {
    for a in [0.3, 0.5, 0.7] {
        for i in 0..6 {
            for j in 0..6 {
                let q = 0.05 + 4.0 * j as f64;
                let rc = critical_r(q, a).unwrap();
                let r = 1.0 + (rc - 1.0) * (0.05 + 0.9 * i as f64 / 5.0);
                let p = solve_eta_ab(r, q, a).unwrap();
                assert!(eta_equation(p.eta.unwrap(), r, q, a).abs() < 1e-13);
                assert!(ab_residuals(&p).iter().all(|v| v.abs() < 1e-10));
                assert_eq!(eta_sign_changes(r, q, a, 4000), 1);
            }
        }
    }
}

fn regime_two() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.1f64..0.9, 0.0f64..6.0, 0.02f64..0.98).prop_map(|(a, q, t)| {
        let rc = critical_r(q, a).unwrap();
        (1.0 + (rc - 1.0) * t, q, a)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn caustic_points_are_tangent((r, q, a) in regime_two(), w in prop_oneof![-20.0f64..-0.01, 0.01f64..0.99, 1.01f64..30.0], plus in any::<bool>()) {
        let br = if plus { Branch::Plus } else { Branch::Minus };
        let f = TangentFamily::new(r, q, a, br).unwrap();
        let m = f.slope(w).unwrap();
        let (Ok(phi), Ok((x, y))) = (f.phi(w), f.caustic_point(w)) else { return Ok(()) };
        let scale = 1.0 + phi.abs() + x.abs() + m.abs() * y.abs();
        prop_assert!((x - m * y - phi).abs() / scale < 1e-8);
        let h = 1e-5 * (1.0 + w.abs());
        let (Ok(p1), Ok(p2)) = (f.caustic_point(w - h), f.caustic_point(w + h)) else { return Ok(()) };
        let (dx, dy) = (p2.0 - p1.0, p2.1 - p1.1);
        let len = (dx * dx + dy * dy).sqrt();
        prop_assume!(len > 1e-9);
        prop_assert!((dx - m * dy).abs() / (len * (1.0 + m.abs())) < 1e-4);
    }

    #[test]
    fn phi_increases_before_w0((r, q, a) in regime_two(), plus in any::<bool>()) {
        let br = if plus { Branch::Plus } else { Branch::Minus };
        let f = TangentFamily::new(r, q, a, br).unwrap();
        let w0 = f.w0().unwrap();
        prop_assert!(w0 > 1.0);
        let mut prev = f64::NEG_INFINITY;
        for i in 1..200 {
            let phi = f.phi(1.0 + (w0 - 1.0) * i as f64 / 200.0).unwrap();
            prop_assert!(phi > prev);
            prev = phi;
        }
    }
}
