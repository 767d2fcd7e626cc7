use latbound::bounds::{
    closed_bound, evaluate, slb, sphere_integral_i, sphere_integral_i_cal, sphere_weights, BoundKind, BoundOptions, BoundParams,
};
use latbound::channel::{gamma_power_cdf, gamma_power_pdf, order_statistics, sample_fading, ChannelParams, FadingSampler, RandomStream};
use latbound::exec::Sequential;
use latbound::lattice::{normalize_generator, rotated_zn_generator, Constellation, Matrix, RotationSpec};
use latbound::sfuncs::quad::integrate;
use latbound::sfuncs::{gauss_2f1, upper_gamma_reg};
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2.0f64..2.0, n * n).prop_filter_map("singular", move |v| {
        let rows: Vec<Vec<f64>> = v.chunks(n).map(|r| r.to_vec()).collect();
        let m = Matrix::from_rows(&rows).ok()?;
        (m.det().abs() > 0.05).then_some(m)
    })
}

fn rotation(theta: f64) -> Matrix {
    let (s, c) = theta.sin_cos();
    Matrix::from_rows(&[vec![c, -s], vec![s, c]]).unwrap()
}

fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_is_idempotent(m in (1usize..5).prop_flat_map(matrix)) {
        let g = normalize_generator(&m).unwrap();
        prop_assert!((g.matrix().det().abs() - 1.0).abs() < 1e-12);
        let again = normalize_generator(g.matrix()).unwrap();
        prop_assert!(max_abs_diff(g.matrix(), again.matrix()) < 1e-12);
    }

    #[test]
    fn min_distance_is_rotation_invariant(m in matrix(2), theta in 0.0f64..6.3, k in 2u32..5) {
        let g = normalize_generator(&m).unwrap();
        let c = Constellation::finite(g.clone(), k).unwrap();
        let r = normalize_generator(&rotation(theta).mul(g.matrix())).unwrap();
        let cr = Constellation::finite(r, k).unwrap();
        prop_assert!((c.min_distance().unwrap() - cr.min_distance().unwrap()).abs() < 1e-9);
        prop_assert_eq!(c.enumerate_points().unwrap().len(), (k as usize).pow(2));
    }

    #[test]
    fn elementary_symmetric_means_bounded_by_mean_norm(m in (2usize..6).prop_flat_map(matrix)) {
        let g = normalize_generator(&m).unwrap();
        let n = g.dim();
        let c = Constellation::finite(g.clone(), 2).unwrap();
        let w = c.mean_basis_norm();
        let norms: Vec<f64> = (0..n).map(|j| g.matrix().column_norm(j)).collect();
        for k in 1..n {
            let mut sum = 0.0;
            let mut count = 0.0;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize == k {
                    sum += (0..n).filter(|j| mask >> j & 1 == 1).map(|j| norms[j]).product::<f64>();
                    count += 1.0;
                }
            }
            prop_assert!(sum <= count * w.powi(k as i32) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn upper_gamma_reg_decreasing(a in 0.5f64..30.0, x in 0.0f64..40.0, dx in 0.01f64..5.0) {
        let q0 = upper_gamma_reg(a, x).unwrap();
        let q1 = upper_gamma_reg(a, x + dx).unwrap();
        prop_assert!((0.0..=1.0).contains(&q0));
        prop_assert!(q1 <= q0);
    }

    #[test]
    fn gauss_2f1_symmetric(a in 0.1f64..6.0, b in 0.1f64..6.0, dc in 0.1f64..6.0, z in -20.0f64..0.9) {
        let c = a.max(b) + dc;
        let x = gauss_2f1(a, b, c, z).unwrap();
        let y = gauss_2f1(b, a, c, z).unwrap();
        prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1e-300));
    }

    #[test]
    fn gamma_power_pdf_integrates_to_one(m in 0.5f64..8.0) {
        let f = |x: f64| if x <= 0.0 { 0.0 } else { gamma_power_pdf(x, m).unwrap() };
        let mut total = 0.0;
        let mut lo = 0.0;
        for hi in [1e-6, 1e-3, 0.1, 1.0, 5.0, 50.0 / m] {
            if hi > lo {
                total += integrate(f, lo, hi, 1e-14, 1e-10).unwrap().0;
                lo = hi;
            }
        }
        prop_assert!((total - gamma_power_cdf(50.0 / m, m).unwrap()).abs() < 1e-6);
        prop_assert!((total - 1.0).abs() < 1e-6);
    }

    #[test]
    fn packing_spheres_dominated_by_equal_volume_spheres(seed in any::<u64>(), m in 0.5f64..4.0, db in 0.0f64..30.0, k in 1u32..33) {
        let c = Constellation::finite(rotated_zn_generator(2, &RotationSpec::Cyclotomic).unwrap(), k).unwrap();
        let ch = ChannelParams { m, rho: 10f64.powf(db / 10.0), n: 2, l: 1 };
        let p = BoundParams::new(&c, &ch).unwrap();
        let w = sphere_weights(2, k);
        let mut rng = RandomStream::new(seed, 0);
        for _ in 0..200 {
            let h = sample_fading(&ch, &mut rng).unwrap();
            let eq: f64 = (0..=2).map(|j| w[j] * sphere_integral_i(j, &h, &p).unwrap()).sum();
            let pk: f64 = (0..=2).map(|j| w[j] * sphere_integral_i_cal(j, &h, &p).unwrap()).sum();
            prop_assert!(eq >= pk - 1e-15);
        }
    }
}

fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((i as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max)
}

#[test]
fn power_gains_follow_gamma_law() {
    let n = 100_000;
    let crit = 1.628 / (n as f64).sqrt();
    for (i, m) in [0.5, 1.0, 2.0, 4.0].into_iter().enumerate() {
        let s = FadingSampler::new(m, 1).unwrap();
        let mut rng = RandomStream::new(77, i as u64);
        let xs: Vec<f64> = (0..n).map(|_| s.sample_gamma(&mut rng)).collect();
        let d = ks_statistic(xs, |x| gamma_power_cdf(x, m).unwrap());
        assert!(d < crit, "m = {m}: D = {d}");
    }
}

#[test]
fn minimum_power_gain_follows_order_statistic_law() {
    let n = 100_000;
    let crit = 1.628 / (n as f64).sqrt();
    for (i, (m, blocks)) in [(1.0, 2usize), (2.0, 4), (0.5, 3)].into_iter().enumerate() {
        let ch = ChannelParams { m, rho: 1.0, n: blocks, l: 1 };
        let mut rng = RandomStream::new(78, i as u64);
        let xs: Vec<f64> = (0..n).map(|_| order_statistics(&sample_fading(&ch, &mut rng).unwrap()).0).collect();
        let d = ks_statistic(xs, |x| 1.0 - upper_gamma_reg(m, m * x).unwrap().powi(blocks as i32));
        assert!(d < crit, "m = {m}, N = {blocks}: D = {d}");
    }
}

#[test]
fn equal_seeds_reproduce_realizations() {
    let ch = ChannelParams { m: 1.7, rho: 1.0, n: 4, l: 1 };
    let draw = |seed| {
        let mut rng = RandomStream::new(seed, 3);
        (0..50).map(|_| sample_fading(&ch, &mut rng).unwrap().gamma).collect::<Vec<_>>()
    };
    assert_eq!(draw(9), draw(9));
    assert_ne!(draw(9), draw(10));
}

fn base(n: usize, m: f64, k: u32) -> BoundParams {
    BoundParams { n, k_per_dim: k, l: 1, m, rho: 1.0, d_min: 1.0, w: 1.0 }
}

#[test]
fn closed_form_bounds_in_unit_interval_and_nonincreasing() {
    // 40-point log grid from 0 to 40 dB
    let grid: Vec<f64> = (0..40).map(|i| 10f64.powf(i as f64 / 10.0)).collect();
    for (n, m) in [(2, 1.0), (2, 4.0), (4, 2.0)] {
        for kind in BoundKind::ALL {
            let mut prev = 1.0;
            for &rho in &grid {
                let v = closed_bound(kind, &base(n, m, 4).with_rho(rho), 1e-12).unwrap().value;
                assert!((0.0..=1.0).contains(&v));
                assert!(v <= prev * (1.0 + 1e-9), "{kind:?} N={n} m={m} rho={rho}: {v} > {prev}");
                prev = v;
            }
        }
    }
}

#[test]
fn numeric_bounds_nonincreasing_with_common_draws() {
    let grid: Vec<f64> = (0..40).map(|i| 10f64.powf(i as f64 / 10.0)).collect();
    let opts = BoundOptions { samples: 10_000, ..BoundOptions::default() };
    let p = BoundParams { l: 3, ..base(3, 1.5, 4) };
    for kind in BoundKind::ALL {
        let mut prev = 1.0;
        for &rho in &grid {
            let v = evaluate(kind, &p.with_rho(rho), &opts, &Sequential).unwrap().value;
            assert!((0.0..=1.0).contains(&v));
            assert!(v <= prev + 1e-12, "{kind:?} rho={rho}: {v} > {prev}");
            prev = v;
        }
    }
}

#[test]
fn ordering_chain_where_all_closed_forms_exist() {
    for (n, m, k) in [(2, 1.0, 4), (2, 2.0, 32), (4, 1.0, 4), (4, 4.0, 2)] {
        for db in (0..=30).step_by(5) {
            let p = base(n, m, k).with_rho(10f64.powf(db as f64 / 10.0));
            let v = |kind| closed_bound(kind, &p, 1e-12).unwrap().value;
            let (lo, up, mlo, mup) = (v(BoundKind::Slb), v(BoundKind::Sub), v(BoundKind::Mslb), v(BoundKind::Msub));
            assert!(lo <= up && mlo <= mup && mup <= up, "N={n} m={m} K={k} {db} dB: {lo} {up} {mlo} {mup}");
        }
    }
}

#[test]
fn high_snr_slope_tracks_diversity_order() {
    for m in [1.0, 4.0] {
        // last decade of a 0..40 dB sweep
        let pts: Vec<(f64, f64)> =
            (0..=10).map(|i| 30.0 + i as f64).map(|db| (db, slb(&base(2, m, 4).with_rho(10f64.powf(db / 10.0))).unwrap().value.log10())).collect();
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
        let want = -m * 2.0 / 10.0;
        assert!((slope / want - 1.0).abs() < 0.15, "m = {m}: slope {slope}, want {want}");
    }
}
