//! Special functions: incomplete gamma, `₂F₁`, the g-integral, Meijer G,
//! and the weak compositions indexing the multinomial expansions.
//!
//! The `f64` entry points here wrap generic evaluators that the closed-form
//! bounds also run in multiprecision.

pub mod gamma;
pub mod gint;
pub mod hyp2f1;
pub mod incgamma;
pub mod meijer;
pub mod quad;

use alloc::vec;
use alloc::vec::Vec;

pub use gamma::{gamma, ln_gamma};
pub use hyp2f1::SeriesCtl;
pub use incgamma::{gamma_pq, lower_gamma_reg, upper_gamma_reg};
pub use meijer::{Contour, ContourCtl, MellinFactors};

use crate::Error;

/// Tolerances for the `f64` special-function entry points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialFnConfig {
    pub series_tol: f64,
    pub max_terms: usize,
    pub contour_height: f64,
    pub contour_step: f64,
}

impl Default for SpecialFnConfig {
    fn default() -> Self {
        SpecialFnConfig { series_tol: 1e-12, max_terms: 100_000, contour_height: 60.0, contour_step: 0.05 }
    }
}

impl SpecialFnConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let ok = self.series_tol > 0.0
            && self.series_tol < 1e-6
            && self.max_terms > 0
            && self.contour_height > 0.0
            && self.contour_step > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("special-function config out of range"))
        }
    }

    pub fn series(&self) -> SeriesCtl {
        SeriesCtl { tol: self.series_tol, max_terms: self.max_terms }
    }

    pub fn contour(&self) -> ContourCtl {
        ContourCtl { target: 1e-14, max_step: self.contour_step, max_height: self.contour_height }
    }
}

/// Digamma `ψ(x)` for real `x` off the poles.
pub fn digamma(x: f64) -> f64 {
    gamma::digamma_any(x)
}

/// `₂F₁(a, b; c; z)` for `z < 1`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64, Error> {
    gauss_2f1_with(a, b, c, z, &SpecialFnConfig::default())
}

pub fn gauss_2f1_with(a: f64, b: f64, c: f64, z: f64, cfg: &SpecialFnConfig) -> Result<f64, Error> {
    hyp2f1::hyp2f1(a, b, c, z, cfg.series())
}

/// `∫₀^∞ x^{α-1} Γ(ν, βx) e^{-px} dx`.
pub fn g_integral(alpha: f64, beta: f64, p: f64, nu: f64) -> Result<f64, Error> {
    g_integral_with(alpha, beta, p, nu, &SpecialFnConfig::default())
}

pub fn g_integral_with(alpha: f64, beta: f64, p: f64, nu: f64, cfg: &SpecialFnConfig) -> Result<f64, Error> {
    gint::g_generic(alpha, beta, p, nu, cfg.series())
}

/// General `G^{n,n}_{n,n}[x | a; b]` with `a`, `b` of equal length.
pub fn meijer_g(a: &[f64], b: &[f64], x: f64, cfg: &SpecialFnConfig) -> Result<f64, Error> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError("Meijer G argument must be positive"));
    }
    let lx = x.ln();
    let c = Contour::<f64>::new(&(), a, b, (lx, lx), cfg.contour())?;
    Ok(c.eval(&x).0)
}

/// Parameters `a_j = (j - Q)/n`, `j = 1..n`, and `b_j = m`.
pub fn meijer_nn_params(n: usize, m: f64, q_coef: f64) -> (Vec<f64>, Vec<f64>) {
    let a = (1..=n).map(|j| (j as f64 - q_coef) / n as f64).collect();
    (a, vec![m; n])
}

/// `G^{n,n}_{n,n}[x | (1-Q)/n, …, (n-Q)/n; m, …, m]`.
pub fn meijer_g_nn(n: usize, m: f64, q_coef: f64, x: f64) -> Result<f64, Error> {
    meijer_g_nn_with(n, m, q_coef, x, &SpecialFnConfig::default())
}

pub fn meijer_g_nn_with(n: usize, m: f64, q_coef: f64, x: f64, cfg: &SpecialFnConfig) -> Result<f64, Error> {
    if n == 0 || !(m > 0.0) {
        return Err(Error::DomainError("Meijer G needs n >= 1 and m > 0"));
    }
    let (a, b) = meijer_nn_params(n, m, q_coef);
    meijer_g(&a, &b, x, cfg)
}

/// A weak composition of `q` into `t` ordered parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<u32>,
}

impl Composition {
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `Σ i · n_i`, the weighted index sum that multiplies the exponents.
    pub fn weighted(&self) -> u32 {
        self.parts.iter().enumerate().map(|(i, &n)| i as u32 * n).sum()
    }
}

/// Weak compositions of `q` into `t` parts, lexicographically increasing.
pub struct Compositions {
    cur: Option<Vec<u32>>,
}

pub fn compositions(q: u32, t: usize) -> Compositions {
    if t == 0 {
        return Compositions { cur: None };
    }
    let mut first = vec![0u32; t];
    first[t - 1] = q;
    Compositions { cur: Some(first) }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.cur.take()?;
        let t = cur.len();
        let mut next = cur.clone();
        let mut suffix = 0u32;
        let mut advanced = false;
        for j in (0..t.saturating_sub(1)).rev() {
            suffix += next[j + 1];
            if suffix > 0 {
                next[j] += 1;
                for x in next.iter_mut().skip(j + 1) {
                    *x = 0;
                }
                next[t - 1] = suffix - 1;
                advanced = true;
                break;
            }
        }
        if advanced {
            self.cur = Some(next);
        }
        Some(Composition { parts: cur })
    }
}

/// Number of weak compositions `C(q + t - 1, t - 1)`.
pub fn composition_count(q: u32, t: usize) -> u128 {
    if t == 0 {
        return u128::from(q == 0);
    }
    binomial_u128(q as u64 + t as u64 - 1, t as u64 - 1)
}

pub(crate) fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}
