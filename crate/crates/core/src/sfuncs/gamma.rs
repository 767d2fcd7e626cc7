//! Gamma, log-gamma and digamma.


use crate::complex::Cx;
use crate::real::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln |Γ(x)|` by the Lanczos approximation (g = 7, 9 terms).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = (core::f64::consts::PI * x).sin().abs();
        return core::f64::consts::PI.ln() - s.ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// `Γ(x)` for real `x` away from the poles.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return core::f64::consts::PI / ((core::f64::consts::PI * x).sin() * gamma(1.0 - x));
    }
    if x == x.floor() && x <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    ln_gamma(x).exp()
}

/// `ln Γ(x)` for `x > 0` from the Stirling series after an upward shift.
pub(crate) fn ln_gamma_stirling<T: Real>(x: T) -> T {
    let ctx = x.ctx();
    let (coef, r) = T::stirling(&ctx);
    let xf = x.to_f64();
    let mut w = x.clone();
    let mut shift_prod: Option<T> = None;
    if xf < r {
        let n = (r - xf).ceil() as usize;
        let mut p = x.clone();
        for j in 1..n {
            p = p * (x.clone() + T::cst(&ctx, j as f64));
        }
        shift_prod = Some(p);
        w = x.clone() + T::cst(&ctx, n as f64);
    }
    let half = T::cst(&ctx, 0.5);
    let half_ln_2pi = (T::pi(&ctx) * T::cst(&ctx, 2.0)).ln() * half.clone();
    let inv = T::one(&ctx) / w.clone();
    let inv2 = inv.clone() * inv.clone();
    let mut s = T::zero(&ctx);
    for c in coef.iter().rev() {
        s = s * inv2.clone() + c.clone();
    }
    let mut v = (w.clone() - half) * w.ln() - w + half_ln_2pi + s * inv;
    if let Some(p) = shift_prod {
        v = v - p.ln();
    }
    v
}

/// Principal `ln Γ(z)` for `Re z > 0`.
#[cfg(test)]
pub(crate) fn ln_gamma_cx<T: Real>(z: &Cx<T>, coef: &[T], r: f64) -> Cx<T> {
    let ctx = z.re.ctx();
    let half_ln_2pi = (T::pi(&ctx) * T::cst(&ctx, 2.0)).ln() * T::cst(&ctx, 0.5);
    ln_gamma_cx_with(z, coef, r, &half_ln_2pi)
}

/// [`ln_gamma_cx`] with `ln(2π)/2` supplied by the caller.
pub(crate) fn ln_gamma_cx_with<T: Real>(z: &Cx<T>, coef: &[T], r: f64, half_ln_2pi: &T) -> Cx<T> {
    let ctx = z.re.ctx();
    let re = z.re.to_f64();
    let im = z.im.to_f64();
    let mut n = 0usize;
    if im.abs() < r {
        let need = (r * r - im * im).sqrt() - re;
        if need > 0.0 {
            n = need.ceil() as usize;
        }
    }
    let mut w = z.clone();
    let mut corr: Option<Cx<T>> = None;
    if n > 0 {
        let mut p = z.clone();
        let mut arg_sum = im.atan2(re);
        for j in 1..n {
            let f = Cx::new(z.re.clone() + T::cst(&ctx, j as f64), z.im.clone());
            arg_sum += im.atan2(re + j as f64);
            p = p * f;
        }
        let lp = p.ln();
        let k = ((arg_sum - lp.im.to_f64()) / core::f64::consts::TAU).round();
        let two_pi = T::pi(&ctx) * T::cst(&ctx, 2.0);
        corr = Some(Cx::new(lp.re, lp.im + two_pi * T::cst(&ctx, k)));
        w = Cx::new(z.re.clone() + T::cst(&ctx, n as f64), z.im.clone());
    }
    let half = T::cst(&ctx, 0.5);
    let inv = w.recip();
    let inv2 = inv.clone() * inv.clone();
    let mut s = Cx::real(T::zero(&ctx));
    for c in coef.iter().rev() {
        s = s * inv2.clone() + Cx::real(c.clone());
    }
    let lw = w.ln();
    let wm = Cx::new(w.re.clone() - half, w.im.clone());
    let mut v = wm * lw - w + Cx::real(half_ln_2pi.clone()) + s * inv;
    if let Some(c) = corr {
        v = v - c;
    }
    v
}

/// Digamma for `x > 0` by the asymptotic series after an upward shift.
pub(crate) fn digamma_generic<T: Real>(x: T) -> T {
    let ctx = x.ctx();
    let (coef, r) = T::stirling(&ctx);
    let target = 2.0 * r + coef.len() as f64;
    let mut acc = T::zero(&ctx);
    let mut w = x;
    while w.to_f64() < target {
        acc = acc + T::one(&ctx) / w.clone();
        w = w + T::one(&ctx);
    }
    let inv = T::one(&ctx) / w.clone();
    let inv2 = inv.clone() * inv.clone();
    // B_2k / (2k) = coef_k (2k - 1)
    let mut s = T::zero(&ctx);
    for (i, c) in coef.iter().enumerate().rev() {
        let k = (i + 1) as f64;
        s = s * inv2.clone() + c.clone() * T::cst(&ctx, 2.0 * k - 1.0);
    }
    w.ln() - inv.clone() * T::cst(&ctx, 0.5) - s * inv2 - acc
}

/// Digamma on the whole real line except the poles, via reflection.
pub(crate) fn digamma_any<T: Real>(x: T) -> T {
    if x.to_f64() > 0.0 {
        return x.digamma();
    }
    let ctx = x.ctx();
    let pi = T::pi(&ctx);
    let px = pi.clone() * x.clone();
    (T::one(&ctx) - x).digamma() - pi * px.cos() / px.sin()
}

/// `1/Γ(x)` on the whole real line; zero at the poles.
pub(crate) fn rgamma<T: Real>(x: T) -> T {
    let ctx = x.ctx();
    let xf = x.to_f64();
    if xf > 0.0 {
        return (-x.ln_gamma()).exp();
    }
    if xf == xf.floor() && is_integer(&x) {
        return T::zero(&ctx);
    }
    let pi = T::pi(&ctx);
    let one = T::one(&ctx);
    (pi.clone() * x.clone()).sin() * (one - x).ln_gamma().exp() / pi
}

/// `Γ(x)` on the whole real line; `None` at the poles.
pub(crate) fn gamma_any<T: Real>(x: T) -> Option<T> {
    let xf = x.to_f64();
    if xf > 0.0 {
        return Some(x.ln_gamma().exp());
    }
    if is_integer(&x) {
        return None;
    }
    let ctx = x.ctx();
    let pi = T::pi(&ctx);
    let one = T::one(&ctx);
    Some(pi.clone() / ((pi * x.clone()).sin() * (one - x).ln_gamma().exp()))
}

/// Exact integrality test at working precision.
pub(crate) fn is_integer<T: Real>(x: &T) -> bool {
    let f = x.to_f64();
    if f.abs() > 1e15 || f != f.round() {
        return false;
    }
    let d = x.clone() - x.lit(f.round());
    d.abs().to_f64() == 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::{Mp, MpCtx};

    #[test]
    fn lanczos_matches_factorials() {
        let mut f = 1.0f64;
        for n in 1..30 {
            let g = gamma(n as f64);
            assert!((g - f).abs() <= 1e-13 * f, "n={n}: {g} vs {f}");
            f *= n as f64;
        }
        let half = gamma(0.5);
        assert!((half - core::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!((gamma(-0.5) + 2.0 * core::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn stirling_agrees_with_lanczos() {
        for x in [0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 12.25, 80.0, 150.5] {
            let a = ln_gamma_stirling(x);
            let b = ln_gamma(x);
            assert!((a - b).abs() <= 2e-14 * b.abs().max(1.0), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn mp_ln_gamma_half_integer() {
        // Γ(5.5) = 945 √π / 32
        let ctx = MpCtx::new(256);
        let x = Mp::cst(&ctx, 5.5);
        let v = x.ln_gamma();
        let exact = (Mp::cst(&ctx, 945.0 / 32.0) * Mp::pi(&ctx).sqrt()).ln();
        let d = (v - exact).abs().to_f64();
        assert!(d < 1e-70, "{d:e}");
    }

    #[test]
    fn complex_ln_gamma_recurrence() {
        let (coef, r) = <f64 as Real>::stirling(&());
        for (re, im) in [(0.3, 0.7), (1.2, -5.0), (2.5, 40.0), (0.05, 0.0)] {
            let z = Cx::new(re, im);
            let z1 = Cx::new(re + 1.0, im);
            let a = ln_gamma_cx(&z1, &coef, r);
            let b = ln_gamma_cx(&z, &coef, r) + z.ln();
            let tau = core::f64::consts::TAU;
            let dim = (a.im - b.im) / tau;
            assert!((a.re - b.re).abs() < 1e-12, "{z:?}");
            assert!((dim - dim.round()).abs() < 1e-12, "{z:?}");
        }
        // real axis agrees with the real routine
        let v = ln_gamma_cx(&Cx::new(3.25, 0.0), &coef, r);
        assert!((v.re - ln_gamma(3.25)).abs() < 1e-14 && v.im.abs() < 1e-15);
    }

    #[test]
    fn digamma_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma_generic(1.0) + euler).abs() < 1e-14);
        assert!((digamma_generic(0.5) + euler + 2.0 * core::f64::consts::LN_2).abs() < 1e-14);
        // ψ(x+1) = ψ(x) + 1/x
        for x in [0.2, 1.7, 9.5] {
            assert!((digamma_generic(x + 1.0) - digamma_generic(x) - 1.0 / x).abs() < 1e-13);
        }
        assert!((digamma_any(-0.5) - (digamma_generic(0.5) + 2.0)).abs() < 1e-13);
    }

    #[test]
    fn reciprocal_gamma_at_poles() {
        assert_eq!(rgamma(-2.0), 0.0);
        assert_eq!(rgamma(0.0), 0.0);
        assert!((rgamma(-1.5) - 1.0 / gamma(-1.5)).abs() < 1e-14);
        assert!(gamma_any(-3.0).is_none());
    }
}
