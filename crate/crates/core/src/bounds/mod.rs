//! Sphere lower and upper bounds on the frame error probability.
//!
//! `SLB`/`SUB` bound infinite lattices, `MSLB`/`MSUB` finite `K`-PAM
//! carvings. Each bound is `1 − E[(inner)^L]` over the fading; it is
//! computed as the expectation of `1 − inner^L` so that small values keep
//! their relative accuracy.

pub mod closed;
mod expect;
mod quadrature;

use alloc::vec::Vec;

pub use expect::{numeric_expectation, numeric_expectation_with};

use crate::channel::{order_statistics, ChannelParams, FadingRealization};
use crate::exec::{Executor, Sequential};
use crate::lattice::{Constellation, Size};
use crate::mp::Mp;
use crate::sfuncs::{binomial_u128, gamma_pq, ln_gamma};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Slb,
    Sub,
    Mslb,
    Msub,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [BoundKind::Slb, BoundKind::Sub, BoundKind::Mslb, BoundKind::Msub];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Slb => "slb",
            BoundKind::Sub => "sub",
            BoundKind::Mslb => "mslb",
            BoundKind::Msub => "msub",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        BoundKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// Whether the bound needs a finite constellation size.
    pub fn is_multi_sphere(self) -> bool {
        matches!(self, BoundKind::Mslb | BoundKind::Msub)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    /// Dimension `N`.
    pub n: usize,
    /// Points per dimension `K`; unused by SLB and SUB.
    pub k_per_dim: u32,
    /// Frame length `L`.
    pub l: u32,
    /// Nakagami shape.
    pub m: f64,
    /// Linear SNR.
    pub rho: f64,
    pub d_min: f64,
    /// Mean basis-vector norm.
    pub w: f64,
}

impl BoundParams {
    /// Parameters for `constellation` over `channel`. Infinite lattices get
    /// `k_per_dim = 0`, which the multi-sphere bounds reject.
    pub fn new(constellation: &Constellation, channel: &ChannelParams) -> Result<Self, Error> {
        if constellation.dim() != channel.n {
            return Err(Error::DimensionMismatch { expected: constellation.dim(), got: channel.n });
        }
        let k_per_dim = match constellation.size() {
            Size::Finite(k) => k,
            Size::Infinite { .. } => 0,
        };
        let d_min = match constellation.min_distance() {
            Ok(d) => d,
            // a single point never errs; the radius is irrelevant
            Err(Error::DegenerateConstellation) => 1.0,
            Err(e) => return Err(e),
        };
        Ok(BoundParams {
            n: channel.n,
            k_per_dim,
            l: channel.l,
            m: channel.m,
            rho: channel.rho,
            d_min,
            w: constellation.mean_basis_norm(),
        })
    }

    pub fn with_rho(self, rho: f64) -> Self {
        BoundParams { rho, ..self }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.n == 0 || self.l == 0 {
            return Err(Error::InvalidParameter("N and L must be at least 1"));
        }
        if !(self.m >= 0.5) || !self.m.is_finite() {
            return Err(Error::InvalidShape(self.m));
        }
        if !(self.rho >= 0.0) || self.rho.is_nan() {
            return Err(Error::InvalidParameter("SNR must be non-negative"));
        }
        if !(self.d_min > 0.0) || !(self.w > 0.0) {
            return Err(Error::InvalidParameter("d_min and W must be positive"));
        }
        Ok(())
    }

    /// Integer shape, when `m` is one.
    pub fn integer_m(&self) -> Option<u32> {
        if self.m.fract() == 0.0 && self.m >= 1.0 && self.m <= u32::MAX as f64 {
            Some(self.m as u32)
        } else {
            None
        }
    }

    /// Dispatch rule: closed forms need even `N`, integer `m`, and `L = 1`
    /// for the multi-sphere bounds.
    pub fn closed_form_eligible(&self, kind: BoundKind) -> bool {
        self.n % 2 == 0 && self.integer_m().is_some() && (!kind.is_multi_sphere() || self.l == 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    NumericExpectation,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::NumericExpectation => "numeric",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub method: Method,
    /// Monte Carlo standard error; zero for closed forms.
    pub stderr: f64,
    /// Deterministic evaluation error estimate.
    pub error: f64,
    /// Set when the raw value left `[0, 1]` by at most `1e-9` and was clamped.
    pub clamped: bool,
}

impl BoundValue {
    fn new(raw: f64, method: Method, stderr: f64, error: f64) -> Result<Self, Error> {
        if !raw.is_finite() || !(-1e-9..=1.0 + 1e-9).contains(&raw) {
            return Err(Error::ConvergenceFailure("bound evaluated outside [0, 1]"));
        }
        let value = raw.clamp(0.0, 1.0);
        Ok(BoundValue { value, method, stderr, error, clamped: value != raw })
    }
}

/// Evaluation controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundOptions {
    /// Fading draws for the numeric path.
    pub samples: u64,
    /// Batches for the batch-mean standard error.
    pub batches: u32,
    pub seed: u64,
    /// Relative agreement demanded of the two closed-form precisions.
    pub rel_tol: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { samples: 1_000_000, batches: 100, seed: 0x5eed, rel_tol: 1e-12 }
    }
}

impl BoundOptions {
    pub fn validate(&self) -> Result<(), Error> {
        if self.samples < 1000 {
            return Err(Error::InvalidParameter("numeric expectation needs at least 1000 samples"));
        }
        if self.batches < 2 || self.batches as u64 > self.samples {
            return Err(Error::InvalidParameter("batch count must be in 2..=samples"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-3) {
            return Err(Error::InvalidParameter("relative tolerance out of range"));
        }
        Ok(())
    }
}

/// An expectation reported through its complement `1 − E[…]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Expectation {
    pub complement: f64,
    pub error: f64,
}

impl Expectation {
    pub fn value(&self) -> f64 {
        1.0 - self.complement
    }
}

fn gamma_half_pow(k: usize) -> f64 {
    // Γ(k/2+1)^{2/k}
    (2.0 / k as f64 * ln_gamma(k as f64 / 2.0 + 1.0)).exp()
}

/// `R_k²(H)`: equal-volume radius, from `max γ` for `k < N` and from the
/// geometric mean for `k = N`.
pub fn r_k_sq(k: usize, h: &FadingRealization, params: &BoundParams) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let (_, max, geo) = order_statistics(h);
    let g = gamma_half_pow(k) / core::f64::consts::PI;
    if k < params.n {
        g * params.w * params.w * max
    } else {
        g * geo
    }
}

/// `𝓡²(H) = d_min²/4 · min γ`.
pub fn r_cal_sq(h: &FadingRealization, params: &BoundParams) -> f64 {
    let (min, _, _) = order_statistics(h);
    params.d_min * params.d_min / 4.0 * min
}

fn check_k(k: usize, h: &FadingRealization, params: &BoundParams) -> Result<(), Error> {
    if h.gamma.len() != params.n {
        return Err(Error::DimensionMismatch { expected: params.n, got: h.gamma.len() });
    }
    if k > params.n {
        return Err(Error::InvalidParameter("sphere index exceeds the dimension"));
    }
    Ok(())
}

/// `(I_k, 1 − I_k)` for the equal-volume sphere.
pub fn sphere_integral_i_pair(k: usize, h: &FadingRealization, params: &BoundParams) -> Result<(f64, f64), Error> {
    check_k(k, h, params)?;
    if k == 0 {
        return Ok((1.0, 0.0));
    }
    gamma_pq(k as f64 / 2.0, r_k_sq(k, h, params) * params.rho / 2.0)
}

/// `(𝓘_k, 1 − 𝓘_k)` for the packing sphere.
pub fn sphere_integral_i_cal_pair(k: usize, h: &FadingRealization, params: &BoundParams) -> Result<(f64, f64), Error> {
    check_k(k, h, params)?;
    if k == 0 {
        return Ok((1.0, 0.0));
    }
    gamma_pq(k as f64 / 2.0, r_cal_sq(h, params) * params.rho / 2.0)
}

/// Probability that `k`-dimensional noise stays inside the equal-volume
/// sphere of radius `R_k(H)`.
pub fn sphere_integral_i(k: usize, h: &FadingRealization, params: &BoundParams) -> Result<f64, Error> {
    sphere_integral_i_pair(k, h, params).map(|p| p.0)
}

/// Same as [`sphere_integral_i`] for the packing sphere of radius `𝓡(H)`.
pub fn sphere_integral_i_cal(k: usize, h: &FadingRealization, params: &BoundParams) -> Result<f64, Error> {
    sphere_integral_i_cal_pair(k, h, params).map(|p| p.0)
}

/// `w_k = (K−1)^k C(N,k) / K^N`, the share of sphere index `k`.
pub fn sphere_weights(n: usize, k_per_dim: u32) -> Vec<f64> {
    let k = k_per_dim as f64;
    (0..=n)
        .map(|j| {
            let lw = j as f64 * (k - 1.0).ln() - n as f64 * k.ln();
            if k_per_dim == 1 {
                if j == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                binomial_u128(n as u64, j as u64) as f64 * lw.exp()
            }
        })
        .collect()
}

fn check_closed(params: &BoundParams, k: usize) -> Result<u32, Error> {
    params.validate()?;
    if k == 0 || k > params.n {
        return Err(Error::InvalidParameter("sphere index out of range"));
    }
    match params.integer_m() {
        Some(m) if k % 2 == 0 => Ok(m),
        _ => Err(Error::ParameterUnsupported("closed form needs even k and integer m")),
    }
}

/// Packing-sphere expectation `A(ρ, N; k, L)` in closed form.
pub fn func_a_closed(params: &BoundParams, k: usize, rel_tol: f64) -> Result<Expectation, Error> {
    let m = check_closed(params, k)?;
    if params.rho == 0.0 {
        return Ok(Expectation { complement: 1.0, error: 0.0 });
    }
    let p = *params;
    let r = closed::adaptive(
        |ctx| closed::a_complement::<Mp>(ctx, p.n, k, p.l, m, p.rho, p.d_min),
        closed::start_bits(p.l),
        rel_tol,
    )?;
    Ok(Expectation { complement: r.value, error: r.error })
}

/// `A(ρ, N; k, L)` by one-dimensional quadrature over `min γ`.
pub fn func_a_quadrature(params: &BoundParams, k: usize) -> Result<Expectation, Error> {
    params.validate()?;
    if k == 0 || k > params.n {
        return Err(Error::InvalidParameter("sphere index out of range"));
    }
    let scale = params.rho * params.d_min * params.d_min / 8.0;
    quadrature::expect_order(params.n, params.m, quadrature::Order::Min, scale, k, params.l)
}

/// `A(ρ, N; k, L)`: closed form when `k` is even and `m` integer,
/// quadrature otherwise.
pub fn func_a(params: &BoundParams, k: usize) -> Result<Expectation, Error> {
    match func_a_closed(params, k, BoundOptions::default().rel_tol) {
        Err(Error::ParameterUnsupported(_)) => func_a_quadrature(params, k),
        r => r,
    }
}

/// Equal-volume expectation `B(ρ, N; k)` in closed form.
pub fn func_b_closed(params: &BoundParams, k: usize, rel_tol: f64) -> Result<Expectation, Error> {
    let m = check_closed(params, k)?;
    if k == params.n {
        return Err(Error::InvalidParameter("B is defined for k < N"));
    }
    if params.rho == 0.0 {
        return Ok(Expectation { complement: 1.0, error: 0.0 });
    }
    let p = *params;
    let bits = 96 + (p.m * p.n as f64 * p.rho.max(1.0).log2()) as usize;
    let r = closed::adaptive(
        |ctx| closed::b_complement::<Mp>(ctx, p.n, k, m, p.rho, p.w, closed::mp_series(ctx)),
        bits,
        rel_tol,
    )?;
    Ok(Expectation { complement: r.value, error: r.error })
}

/// `B(ρ, N; k)` by one-dimensional quadrature over `max γ`.
pub fn func_b_quadrature(params: &BoundParams, k: usize) -> Result<Expectation, Error> {
    params.validate()?;
    if k == 0 || k >= params.n {
        return Err(Error::InvalidParameter("B is defined for 1 <= k < N"));
    }
    let scale = params.rho * gamma_half_pow(k) * params.w * params.w / (2.0 * core::f64::consts::PI);
    quadrature::expect_order(params.n, params.m, quadrature::Order::Max, scale, k, 1)
}

pub fn func_b(params: &BoundParams, k: usize) -> Result<Expectation, Error> {
    match func_b_closed(params, k, BoundOptions::default().rel_tol) {
        Err(Error::ParameterUnsupported(_)) => func_b_quadrature(params, k),
        r => r,
    }
}

fn check_c(params: &BoundParams) -> Result<(), Error> {
    params.validate()?;
    if params.n % 2 == 1 || params.integer_m().is_none() {
        return Err(Error::ParameterUnsupported("closed form needs even N and integer m"));
    }
    Ok(())
}

/// `C(ρ, N; L)` through `₂F₁` (N = 2) or Meijer G (other even N).
pub fn func_c(params: &BoundParams, rel_tol: f64) -> Result<Expectation, Error> {
    check_c(params)?;
    if params.n == 2 {
        func_c_hypergeometric(params, rel_tol)
    } else {
        func_c_meijer(params, rel_tol)
    }
}

/// `N = 2` form of `C` via Gauss hypergeometric functions.
pub fn func_c_hypergeometric(params: &BoundParams, rel_tol: f64) -> Result<Expectation, Error> {
    check_c(params)?;
    if params.n != 2 {
        return Err(Error::ParameterUnsupported("hypergeometric form is for N = 2"));
    }
    if params.rho == 0.0 {
        return Ok(Expectation { complement: 1.0, error: 0.0 });
    }
    let p = *params;
    let r = closed::adaptive(
        |ctx| closed::c_complement_2f1::<Mp>(ctx, p.l, p.m, p.rho, closed::mp_series(ctx)),
        closed::start_bits(p.l),
        rel_tol,
    )?;
    Ok(Expectation { complement: r.value, error: r.error })
}

/// General even-`N` form of `C` via `G^{N,N}_{N,N}`.
pub fn func_c_meijer(params: &BoundParams, rel_tol: f64) -> Result<Expectation, Error> {
    check_c(params)?;
    if params.rho == 0.0 {
        return Ok(Expectation { complement: 1.0, error: 0.0 });
    }
    let p = *params;
    let r = closed::adaptive(
        |ctx| closed::c_complement_meijer::<Mp>(ctx, p.n, p.l, p.m, p.rho, closed::mp_contour(ctx)),
        closed::start_bits(p.l),
        rel_tol,
    )?;
    Ok(Expectation { complement: r.value, error: r.error })
}

/// Per-draw complement `1 − inner(H)` of the bound's inner expression.
pub fn inner_complement(kind: BoundKind, h: &FadingRealization, params: &BoundParams) -> Result<f64, Error> {
    let n = params.n;
    match kind {
        BoundKind::Slb => sphere_integral_i_pair(n, h, params).map(|p| p.1),
        BoundKind::Sub => sphere_integral_i_cal_pair(n, h, params).map(|p| p.1),
        BoundKind::Mslb | BoundKind::Msub => {
            let w = sphere_weights(n, params.k_per_dim);
            let mut s = 0.0;
            for (k, wk) in w.iter().enumerate().skip(1) {
                if *wk == 0.0 {
                    continue;
                }
                let q = if kind == BoundKind::Mslb {
                    sphere_integral_i_pair(k, h, params)?.1
                } else {
                    sphere_integral_i_cal_pair(k, h, params)?.1
                };
                s += wk * q;
            }
            Ok(s)
        }
    }
}

/// Monte Carlo estimate of a bound.
pub fn numeric_bound<E: Executor>(kind: BoundKind, params: &BoundParams, opts: &BoundOptions, exec: &E) -> Result<BoundValue, Error> {
    params.validate()?;
    opts.validate()?;
    if kind.is_multi_sphere() && params.k_per_dim == 0 {
        return Err(Error::InvalidParameter("multi-sphere bounds need a finite constellation"));
    }
    let p = *params;
    let l = p.l as f64;
    let (mean, stderr) = expect::batched_mean(p.m, p.n, opts, exec, &|h: &FadingRealization| {
        let q = inner_complement(kind, h, &p)?;
        Ok(-libm::expm1(l * libm::log1p(-q)))
    })?;
    BoundValue::new(mean, Method::NumericExpectation, stderr, 0.0)
}

/// Closed-form value of a bound, failing with `ParameterUnsupported` when
/// the dispatch rule does not allow one.
pub fn closed_bound(kind: BoundKind, params: &BoundParams, rel_tol: f64) -> Result<BoundValue, Error> {
    params.validate()?;
    if !params.closed_form_eligible(kind) {
        return Err(Error::ParameterUnsupported("closed form needs even N, integer m, and L = 1 for multi-sphere bounds"));
    }
    if kind.is_multi_sphere() && params.k_per_dim == 0 {
        return Err(Error::InvalidParameter("multi-sphere bounds need a finite constellation"));
    }
    let n = params.n;
    let (value, error) = match kind {
        BoundKind::Slb => {
            let e = func_c(params, rel_tol)?;
            (e.complement, e.error)
        }
        BoundKind::Sub => {
            let e = func_a_closed(params, n, rel_tol)?;
            (e.complement, e.error)
        }
        BoundKind::Mslb | BoundKind::Msub => {
            let w = sphere_weights(n, params.k_per_dim);
            let (mut v, mut err) = (0.0, 0.0);
            for (k, wk) in w.iter().enumerate().skip(1) {
                if *wk == 0.0 {
                    continue;
                }
                let e = match (kind, k % 2 == 0, k == n) {
                    (BoundKind::Mslb, _, true) => func_c(params, rel_tol)?,
                    (BoundKind::Mslb, true, false) => func_b_closed(params, k, rel_tol)?,
                    (BoundKind::Mslb, false, false) => func_b_quadrature(params, k)?,
                    (_, true, _) => func_a_closed(params, k, rel_tol)?,
                    (_, false, _) => func_a_quadrature(params, k)?,
                };
                v += wk * e.complement;
                err += wk * e.error;
            }
            (v, err)
        }
    };
    BoundValue::new(value, Method::ClosedForm, 0.0, error)
}

/// Evaluates a bound with the dispatch rule: closed form where eligible,
/// numeric expectation otherwise.
pub fn evaluate<E: Executor>(kind: BoundKind, params: &BoundParams, opts: &BoundOptions, exec: &E) -> Result<BoundValue, Error> {
    opts.validate()?;
    if params.closed_form_eligible(kind) {
        closed_bound(kind, params, opts.rel_tol)
    } else {
        numeric_bound(kind, params, opts, exec)
    }
}

/// Sphere lower bound for an infinite lattice.
pub fn slb(params: &BoundParams) -> Result<BoundValue, Error> {
    evaluate(BoundKind::Slb, params, &BoundOptions::default(), &Sequential)
}

/// Sphere upper bound for an infinite lattice.
pub fn sub(params: &BoundParams) -> Result<BoundValue, Error> {
    evaluate(BoundKind::Sub, params, &BoundOptions::default(), &Sequential)
}

/// Multiple-sphere lower bound for a `K`-PAM constellation.
pub fn mslb(params: &BoundParams) -> Result<BoundValue, Error> {
    evaluate(BoundKind::Mslb, params, &BoundOptions::default(), &Sequential)
}

/// Multiple-sphere upper bound for a `K`-PAM constellation.
pub fn msub(params: &BoundParams) -> Result<BoundValue, Error> {
    evaluate(BoundKind::Msub, params, &BoundOptions::default(), &Sequential)
}

#[cfg(test)]
mod tests;
