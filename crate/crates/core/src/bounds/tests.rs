use super::*;
use alloc::vec;

// Complements `1 − E[…]` from direct mpmath quadrature of the defining
// expectations at 30 digits.

fn params(n: usize, m: f64, rho: f64, l: u32, d_min: f64, w: f64) -> BoundParams {
    BoundParams { n, k_per_dim: 4, l, m, rho, d_min, w }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn packing_sphere_closed_form_matches_quadrature_oracle() {
    let cases = [
        ((2, 2, 1, 1.0, 10.0, 1.0), 0.615_384_615_384_615_4),
        ((4, 4, 1, 2.0, 10.0, 1.3), 0.785_444_194_290_487_8),
        ((4, 4, 3, 1.0, 31.6, 1.0), 0.917_866_690_515_895_0),
        ((2, 2, 100, 2.0, 100.0, 1.0), 0.359_556_125_946_364_4),
    ];
    for ((n, k, l, m, rho, d), want) in cases {
        let p = params(n, m, rho, l, d, 1.0);
        let got = func_a_closed(&p, k, 1e-13).unwrap().complement;
        assert!(rel(got, want) < 1e-11, "{n} {k} {l} {m} {rho}: {got} vs {want}");
    }
}

#[test]
fn packing_sphere_quadrature_matches_oracle() {
    let cases = [
        ((2, 1, 1.0, 10.0), 0.379_826_327_053_957_7),
        ((4, 3, 2.0, 1000.0), 1.845_052_695_921_416_2e-3),
        ((3, 2, 0.5, 10.0), 0.830_088_063_246_600_1),
    ];
    for ((n, k, m, rho), want) in cases {
        let p = params(n, m, rho, 1, 1.0, 1.0);
        let got = func_a_quadrature(&p, k).unwrap().complement;
        assert!(rel(got, want) < 1e-9, "{n} {k} {m} {rho}: {got} vs {want}");
    }
    // even k with integer m has both routes
    let p = params(4, 2.0, 10.0, 1, 1.3, 1.0);
    let q = func_a_quadrature(&p, 4).unwrap().complement;
    let c = func_a_closed(&p, 4, 1e-13).unwrap().complement;
    assert!(rel(q, c) < 1e-9);
}

#[test]
fn equal_volume_max_gain_expectation_matches_oracle() {
    let p = params(4, 1.0, 10.0, 1, 1.0, 1.0);
    let got = func_b_closed(&p, 2, 1e-13).unwrap().complement;
    assert!(rel(got, 0.100_433_469_101_891_6) < 1e-11, "{got}");
    let p = params(4, 3.0, 100.0, 1, 1.0, 1.2);
    let got = func_b_closed(&p, 2, 1e-13).unwrap().complement;
    assert!(rel(got, 1.440_821_204_024_884_2e-7) < 1e-10, "{got}");

    let p = params(2, 1.0, 10.0, 1, 1.0, 1.0);
    let got = func_b(&p, 1).unwrap().complement;
    assert!(rel(got, 0.129_461_687_946_182_5) < 1e-9, "{got}");
    let p = params(4, 4.0, 1000.0, 1, 1.0, 1.0);
    let got = func_b(&p, 3).unwrap().complement;
    assert!(rel(got, 1.155_458_741_711_418_7e-19) < 1e-8, "{got}");
}

#[test]
fn equal_volume_full_dimension_matches_oracle() {
    let cases = [((1u32, 1.0, 10.0), 0.395_921_831_452_951), ((2, 2.0, 10.0), 0.485_576_226_287_421), ((3, 1.0, 100.0), 0.061_655_974_834_929_03), ((1, 4.0, 1000.0), 1.049_084_746_946_982e-10)];
    for ((l, m, rho), want) in cases {
        let p = params(2, m, rho, l, 1.0, 1.0);
        let h = func_c_hypergeometric(&p, 1e-13).unwrap().complement;
        let g = func_c_meijer(&p, 1e-13).unwrap().complement;
        assert!(rel(h, want) < 1e-12, "2F1 {l} {m} {rho}: {h} vs {want}");
        assert!(rel(g, want) < 1e-12, "G {l} {m} {rho}: {g} vs {want}");
    }
}

#[test]
fn closed_forms_reject_unsupported_parameters() {
    let p = params(3, 1.0, 10.0, 1, 1.0, 1.0);
    assert!(matches!(func_c(&p, 1e-12), Err(Error::ParameterUnsupported(_))));
    let p = params(2, 1.5, 10.0, 1, 1.0, 1.0);
    assert!(matches!(func_a_closed(&p, 2, 1e-12), Err(Error::ParameterUnsupported(_))));
    let p = params(2, 1.0, 10.0, 1, 1.0, 1.0);
    assert!(matches!(func_b_closed(&p, 1, 1e-12), Err(Error::ParameterUnsupported(_))));
}

#[test]
fn sphere_integral_examples() {
    let p = params(2, 1.0, 2.0 * core::f64::consts::PI, 1, 1.0, 1.0);
    let h = FadingRealization::from_powers(vec![1.0, 1.0]);
    assert_eq!(sphere_integral_i(0, &h, &p).unwrap(), 1.0);
    let v = sphere_integral_i(2, &h, &p).unwrap();
    assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    assert_eq!(sphere_integral_i(1, &h, &p.with_rho(0.0)).unwrap(), 0.0);

    let p = params(2, 1.0, 2.0, 1, 2.0, 1.0);
    assert_eq!(sphere_integral_i_cal(0, &h, &p).unwrap(), 1.0);
    let v = sphere_integral_i_cal(2, &h, &p).unwrap();
    assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    let deep = FadingRealization::from_powers(vec![0.0, 3.0]);
    assert_eq!(sphere_integral_i_cal(2, &deep, &p).unwrap(), 0.0);
    assert!(sphere_integral_i(3, &h, &p).is_err());
}

#[test]
fn full_radius_ball_volume_equals_faded_cell_volume() {
    let p = params(3, 1.0, 1.0, 1, 1.0, 1.0);
    let h = FadingRealization::from_powers(vec![0.3, 2.0, 1.7]);
    let r = r_k_sq(3, &h, &p).sqrt();
    // V_3(r) = 4/3 π r³
    let vol = 4.0 / 3.0 * core::f64::consts::PI * r * r * r;
    let cell: f64 = h.h.iter().product();
    assert!(rel(vol, cell) < 1e-13);
}

#[test]
fn numeric_expectation_trivial_cases() {
    let one = numeric_expectation(&|_| 1.0, 3, 1.0, 2, 1000, 1).unwrap();
    assert_eq!(one, (1.0, 0.0));
    let q = numeric_expectation(&|_| 0.5, 2, 2.5, 3, 1000, 1).unwrap();
    assert_eq!(q, (0.25, 0.0));
    assert!(numeric_expectation(&|_| 1.0, 1, 1.0, 2, 999, 1).is_err());
}

#[test]
fn single_point_constellation_never_errs() {
    let p = BoundParams { k_per_dim: 1, ..params(2, 1.0, 10.0, 1, 1.0, 1.0) };
    assert_eq!(mslb(&p).unwrap().value, 0.0);
    assert_eq!(msub(&p).unwrap().value, 0.0);
}

#[test]
fn zero_snr_always_errs() {
    let p = params(2, 1.0, 0.0, 1, 1.0, 1.0);
    assert_eq!(slb(&p).unwrap().value, 1.0);
    assert_eq!(sub(&p).unwrap().value, 1.0);
}

#[test]
fn dispatch_rule() {
    let p = params(2, 1.0, 10.0, 1, 1.0, 1.0);
    assert!(p.closed_form_eligible(BoundKind::Mslb));
    assert!(!p.closed_form_eligible(BoundKind::Mslb) || p.l == 1);
    assert!(!BoundParams { l: 2, ..p }.closed_form_eligible(BoundKind::Msub));
    assert!(BoundParams { l: 2, ..p }.closed_form_eligible(BoundKind::Slb));
    assert!(!BoundParams { n: 3, ..p }.closed_form_eligible(BoundKind::Sub));
    assert!(!BoundParams { m: 0.5, ..p }.closed_form_eligible(BoundKind::Sub));

    let opts = BoundOptions { samples: 20_000, ..BoundOptions::default() };
    let v = evaluate(BoundKind::Sub, &BoundParams { n: 3, ..p }, &opts, &Sequential).unwrap();
    assert_eq!(v.method, Method::NumericExpectation);
    assert!(v.stderr > 0.0);
    let v = evaluate(BoundKind::Sub, &p, &opts, &Sequential).unwrap();
    assert_eq!(v.method, Method::ClosedForm);
    assert_eq!(v.stderr, 0.0);
}

#[test]
fn weights_sum_to_one() {
    for (n, k) in [(2, 4), (4, 32), (3, 2), (8, 1)] {
        let s: f64 = sphere_weights(n, k).iter().sum();
        assert!((s - 1.0).abs() < 1e-14, "{n} {k}");
    }
}

#[test]
fn multi_sphere_closed_form_against_numeric_path() {
    let p = params(2, 1.0, 10.0, 1, 1.0, 1.0);
    let opts = BoundOptions { samples: 200_000, ..BoundOptions::default() };
    for kind in [BoundKind::Mslb, BoundKind::Msub] {
        let c = closed_bound(kind, &p, 1e-12).unwrap();
        let n = numeric_bound(kind, &p, &opts, &Sequential).unwrap();
        assert!((c.value - n.value).abs() < 3.0 * n.stderr, "{kind:?}: {} vs {} ± {}", c.value, n.value, n.stderr);
    }
}
