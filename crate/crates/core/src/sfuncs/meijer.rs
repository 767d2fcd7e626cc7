//! `G^{n,n}_{n,n}` by trapezoidal quadrature of the Mellin–Barnes integral
//!
//! ```text
//! G(x) = 1/(2πi) ∫_{c-i∞}^{c+i∞} Π Γ(b_j - u) Π Γ(1 - a_j + u) x^u du
//! ```
//!
//! on a vertical line strictly between the two pole families. The integrand
//! is analytic in a strip around the line and decays like `e^{-πn|t|}`, so
//! the trapezoid rule converges geometrically in the step.

use alloc::vec::Vec;


use super::gamma::{ln_gamma, ln_gamma_cx_with};
use crate::complex::Cx;
use crate::real::Real;
use crate::Error;

/// Discretization controls.
#[derive(Clone, Copy, Debug)]
pub struct ContourCtl {
    /// Relative accuracy target against the integral of `|integrand|`.
    pub target: f64,
    /// Upper bound on the step.
    pub max_step: f64,
    /// Truncation height `T` of `|Im u|`.
    pub max_height: f64,
}

/// Gamma factors of a Mellin–Barnes integrand
/// `Π Γ(b_i − u)^{k_i} · Π Γ(κ_j u + β_j)^{k_j} · x^u`.
#[derive(Clone, Debug)]
pub struct MellinFactors<T> {
    /// `(b, multiplicity)`.
    pub left: Vec<(T, usize)>,
    /// `(κ, β, multiplicity)` with `κ > 0`.
    pub right: Vec<(f64, T, usize)>,
    /// Degree of a polynomial weight applied at evaluation time; it slows
    /// the decay of the integrand and so raises the truncation height.
    pub weight_degree: u32,
}

impl<T: Real> MellinFactors<T> {
    /// Factors of `G^{n,n}_{n,n}[x | a; b]`.
    pub fn meijer(a: &[T], b: &[T]) -> Self {
        let ctx = a.first().or(b.first()).map(|x| x.ctx());
        let left = dedup(b);
        let right = match ctx {
            Some(ctx) => dedup(a).into_iter().map(|(x, k)| (1.0, T::one(&ctx) - x, k)).collect(),
            None => Vec::new(),
        };
        MellinFactors { left, right, weight_degree: 0 }
    }
}

/// Integrand samples on `u = c + ikh`, reusable for many arguments `x`.
pub struct Contour<T: Real> {
    c: T,
    h: T,
    values: Vec<Cx<T>>,
}

fn dedup<T: Real>(v: &[T]) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize)> = Vec::new();
    for x in v {
        match out.iter_mut().find(|(y, _)| y == x) {
            Some(e) => e.1 += 1,
            None => out.push((x.clone(), 1)),
        }
    }
    out
}

impl<T: Real> Contour<T> {
    /// Builds the node table of `G^{n,n}_{n,n}` for parameters `a`, `b`
    /// (equal length) and arguments with `ln x` in `ln_x` (min, max).
    pub fn new(ctx: &T::Ctx, a: &[T], b: &[T], ln_x: (f64, f64), ctl: ContourCtl) -> Result<Self, Error> {
        if a.is_empty() || b.len() != a.len() {
            return Err(Error::DomainError("Meijer G needs equal, nonempty parameter lists"));
        }
        Self::with_factors(ctx, &MellinFactors::meijer(a, b), ln_x, ctl)
    }

    pub fn with_factors(ctx: &T::Ctx, f: &MellinFactors<T>, ln_x: (f64, f64), ctl: ContourCtl) -> Result<Self, Error> {
        if f.left.is_empty() || f.right.is_empty() || f.right.iter().any(|r| !(r.0 > 0.0)) {
            return Err(Error::DomainError("Mellin-Barnes integrand needs poles on both sides"));
        }
        let left_f: Vec<(f64, f64)> = f.left.iter().map(|(b, k)| (b.to_f64(), *k as f64)).collect();
        let right_f: Vec<(f64, f64, f64)> = f.right.iter().map(|(s, b, k)| (*s, b.to_f64(), *k as f64)).collect();
        let lo = right_f.iter().map(|&(s, b, _)| -b / s).fold(f64::NEG_INFINITY, f64::max);
        let hi = left_f.iter().map(|&(b, _)| b).fold(f64::INFINITY, f64::min);
        if !(lo < hi) {
            return Err(Error::DomainError("Meijer G pole families overlap"));
        }

        // saddle-like choice of the abscissa for the mid argument
        let lx_mid = 0.5 * (ln_x.0 + ln_x.1);
        let width = hi - lo;
        let phi = |c: f64| {
            let mut s = c * lx_mid;
            for &(b, k) in &left_f {
                s += k * ln_gamma(b - c);
            }
            for &(sc, b, k) in &right_f {
                s += k * ln_gamma(sc * c + b);
            }
            s
        };
        let mut c = 0.5 * (lo + hi);
        let mut best = phi(c);
        for i in 1..64 {
            let cand = lo + width * (0.1 + 0.8 * i as f64 / 64.0);
            let v = phi(cand);
            if v < best {
                best = v;
                c = cand;
            }
        }
        let d = (c - lo).min(hi - c);
        let dp = 0.8 * d;
        let lx_span = ln_x.0.abs().max(ln_x.1.abs());
        let h = (core::f64::consts::TAU * dp
            / ((1.0 / ctl.target).ln() + dp * lx_span + (1.0 / (0.2 * d)).ln().max(0.0) + 3.0))
            .min(ctl.max_step);

        let (coef, r) = T::stirling(ctx);
        let half_ln_2pi = (T::pi(ctx) * T::cst(ctx, 2.0)).ln() * T::cst(ctx, 0.5);
        let ct = T::cst(ctx, c);
        let ht = T::cst(ctx, h);
        let mults: Vec<T> = f.left.iter().map(|(_, k)| T::cst(ctx, *k as f64)).collect();
        let rmults: Vec<T> = f.right.iter().map(|(_, _, k)| T::cst(ctx, *k as f64)).collect();
        let rscale: Vec<T> = f.right.iter().map(|(s, _, _)| T::cst(ctx, *s)).collect();

        let rate = 0.5 * core::f64::consts::PI * (left_f.iter().map(|l| l.1).sum::<f64>() + right_f.iter().map(|r| r.0 * r.2).sum::<f64>());
        let stop_margin = ctl.target.ln() + (rate * h).min(1.0).ln();
        let deg = f.weight_degree as f64;
        let mut values = Vec::new();
        let mut ln_acc = f64::NEG_INFINITY;
        let mut prev = f64::INFINITY;
        let mut falling = 0usize;
        let mut k = 0usize;
        loop {
            let t = T::cst(ctx, k as f64) * ht.clone();
            let mut lf = Cx::real(T::zero(ctx));
            for ((b, _), mult) in f.left.iter().zip(&mults) {
                let z = Cx::new(b.clone() - ct.clone(), -t.clone());
                lf = lf + ln_gamma_cx_with(&z, &coef, r, &half_ln_2pi).scale(mult);
            }
            for (((_, b, _), mult), sc) in f.right.iter().zip(&rmults).zip(&rscale) {
                let z = Cx::new(sc.clone() * ct.clone() + b.clone(), sc.clone() * t.clone());
                lf = lf + ln_gamma_cx_with(&z, &coef, r, &half_ln_2pi).scale(mult);
            }
            let lm = lf.re.to_f64() + deg * (1.0 + k as f64 * h).ln();
            if !lm.is_finite() {
                return Err(Error::ContourFailure("non-finite Mellin-Barnes integrand"));
            }
            values.push(lf.exp());
            let w = if k == 0 { 0.0 } else { core::f64::consts::LN_2 };
            ln_acc = log_add(ln_acc, lm + w);
            falling = if lm < prev { falling + 1 } else { 0 };
            prev = lm;
            if falling >= 3 && lm < ln_acc + stop_margin {
                break;
            }
            k += 1;
            if k as f64 * h > ctl.max_height {
                if lm > ln_acc + (1e-10f64).ln() {
                    return Err(Error::ContourFailure("integrand tail exceeds 1e-10 at truncation height"));
                }
                break;
            }
        }
        Ok(Contour { c: ct, h: ht, values })
    }

    pub fn nodes(&self) -> usize {
        self.values.len()
    }

    /// `G(x)` and the cancellation ratio `∫|integrand| / |G|`.
    pub fn eval(&self, x: &T) -> (T, f64) {
        self.eval_weighted(x, |_, _| None)
    }

    /// `1/(2πi) ∫ F(u) w(u) x^u du` for a weight with real coefficients,
    /// so that `w(ū) = conj w(u)`. `weight(k, u)` returns `None` for `w = 1`.
    pub fn eval_weighted<W: FnMut(usize, &Cx<T>) -> Option<Cx<T>>>(&self, x: &T, mut weight: W) -> (T, f64) {
        let ctx = x.ctx();
        let lx = x.ln();
        let hl = self.h.clone() * lx.clone();
        let rot = Cx::new(hl.cos(), hl.sin());
        let mut cur = Cx::real(T::one(&ctx));
        let mut sum = T::zero(&ctx);
        let mut abs = 0.0;
        let two = T::cst(&ctx, 2.0);
        for (k, f) in self.values.iter().enumerate() {
            if k > 0 {
                cur = cur * rot.clone();
            }
            let u = Cx::new(self.c.clone(), T::cst(&ctx, k as f64) * self.h.clone());
            let fw = match weight(k, &u) {
                Some(w) => f.clone() * w,
                None => f.clone(),
            };
            let re = fw.re.clone() * cur.re.clone() - fw.im.clone() * cur.im.clone();
            let a = fw.abs_f64();
            if k == 0 {
                sum = re;
                abs = a;
            } else {
                sum = sum + two.clone() * re;
                abs += 2.0 * a;
            }
        }
        let scale = self.h.clone() / (T::pi(&ctx) * two) * (self.c.clone() * lx).exp();
        let ratio = abs / sum.abs().to_f64();
        (scale * sum, ratio)
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sfuncs::gamma::gamma;

    const CTL: ContourCtl = ContourCtl { target: 1e-14, max_step: 0.05, max_height: 200.0 };

    fn g11(a: f64, b: f64, x: f64) -> f64 {
        let lx = x.ln();
        let c = Contour::<f64>::new(&(), &[a], &[b], (lx, lx), CTL).unwrap();
        c.eval(&x).0
    }

    #[test]
    fn order_one_closed_form() {
        for (a, b, x) in [(0.5f64, 1.0f64, 0.7f64), (0.0, 1.0, 3.0), (0.2, 2.0, 0.05), (0.9, 0.3, 20.0)] {
            let e = gamma(1.0 + b - a) * x.powf(b) * (1.0 + x).powf(a - b - 1.0);
            let v = g11(a, b, x);
            assert!((v - e).abs() < 1e-11 * e, "a={a} b={b} x={x}: {v} vs {e}");
        }
    }

    #[test]
    fn overlapping_poles_rejected() {
        assert!(Contour::<f64>::new(&(), &[2.5], &[1.0], (0.0, 0.0), CTL).is_err());
    }
}
