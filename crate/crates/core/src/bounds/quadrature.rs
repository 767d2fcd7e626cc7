//! One-dimensional expectations over `min γ` or `max γ`, used for sphere
//! indices with no finite-sum expansion (odd `k`) and for non-integer `m`.

use alloc::vec::Vec;

use super::Expectation;
use crate::sfuncs::quad::{integrate, integrate_to_inf};
use crate::sfuncs::{gamma_pq, ln_gamma};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Order {
    Min,
    Max,
}

const REL_TOL: f64 = 1e-11;

/// `1 − E[P(k/2, s·X)^L]` where `X` is the minimum or maximum of `N`
/// independent `Gamma(m, rate m)` variables.
pub(crate) fn expect_order(n: usize, m: f64, order: Order, s: f64, k: usize, l: u32) -> Result<Expectation, Error> {
    if s == 0.0 {
        return Ok(Expectation { complement: 1.0, error: 0.0 });
    }
    let a = k as f64 / 2.0;
    let lf = l as f64;
    let ln_norm = (n as f64).ln() + m * m.ln() - ln_gamma(m);
    // integrand in x, with the power-density factor x^{m-1} optionally removed
    let body = |x: f64, with_power: bool| -> f64 {
        let (_, q) = match gamma_pq(a, s * x) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        let g = if l == 1 { q } else { -libm::expm1(lf * libm::log1p(-q)) };
        if g == 0.0 {
            return 0.0;
        }
        let (cp, cq) = gamma_pq(m, m * x).unwrap_or((f64::NAN, f64::NAN));
        let sel = if order == Order::Min { cq } else { cp };
        let mut ln_w = ln_norm - m * x;
        if n > 1 {
            ln_w += (n as f64 - 1.0) * sel.ln();
        }
        if with_power {
            ln_w += (m - 1.0) * x.ln();
        }
        g * ln_w.exp()
    };

    let mut cuts: Vec<f64> = Vec::new();
    for f in [1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0] {
        cuts.push(f / s);
    }
    for x in [0.1, 1.0, 4.0, 16.0] {
        cuts.push(x / m);
    }
    cuts.retain(|x| x.is_finite() && *x > 0.0 && *x < 1e6);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();

    let mut total = 0.0;
    let mut err = 0.0;
    if m < 1.0 {
        // y = x^m removes the x^{m-1} singularity at the origin
        let f = |y: f64| if y <= 0.0 { body(0.0, false) } else { body(y.powf(1.0 / m), false) / m };
        let mut lo = 0.0;
        for c in &cuts {
            let hi = c.powf(m);
            let (v, e) = integrate(f, lo, hi, 1e-300, REL_TOL)?;
            total += v;
            err += e;
            lo = hi;
        }
        let (v, e) = integrate_to_inf(f, lo, 1e-300, REL_TOL)?;
        total += v;
        err += e;
    } else {
        let f = |x: f64| if x <= 0.0 { if m == 1.0 { body(0.0, false) } else { 0.0 } } else { body(x, true) };
        let mut lo = 0.0;
        for &hi in &cuts {
            let (v, e) = integrate(f, lo, hi, 1e-300, REL_TOL)?;
            total += v;
            err += e;
            lo = hi;
        }
        let (v, e) = integrate_to_inf(f, lo, 1e-300, REL_TOL)?;
        total += v;
        err += e;
    }
    if !total.is_finite() {
        return Err(Error::ConvergenceFailure("order-statistic quadrature"));
    }
    Ok(Expectation { complement: total, error: err })
}
