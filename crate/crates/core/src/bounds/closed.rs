//! Finite-sum evaluations of `1 − A`, `1 − B` and `1 − C`.
//!
//! Each function returns the complement of the expectation, which is the
//! quantity the bounds need and the one that must stay accurate when it is
//! tiny. The binomial expansions alternate in sign, so callers run them in
//! multiprecision through [`adaptive`].

use alloc::vec;
use alloc::vec::Vec;

use crate::mp::{Mp, MpCtx};
use crate::real::Real;
use crate::sfuncs::gint::g_generic;
use crate::sfuncs::hyp2f1::hyp2f1;
use crate::complex::Cx;
use crate::sfuncs::{composition_count, compositions, Contour, ContourCtl, MellinFactors, SeriesCtl};
use crate::Error;

/// Summand cap shared by all expansions.
pub const TERM_CAP: u128 = 100_000_000;

fn factorials<T: Real>(ctx: &T::Ctx, n: usize) -> Vec<T> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(T::one(ctx));
    for i in 1..=n {
        let next = f[i - 1].clone() * T::cst(ctx, i as f64);
        f.push(next);
    }
    f
}

/// `Σ 1/Π_i (i!)^{n_i} n_i!` over compositions of `q` into `t` parts,
/// bucketed by the weighted index `Σ i n_i`.
fn weighted_buckets<T: Real>(ctx: &T::Ctx, q: u32, t: usize, fact: &[T]) -> Vec<T> {
    let max_w = q as usize * t.saturating_sub(1);
    let mut out: Vec<T> = (0..=max_w).map(|_| T::zero(ctx)).collect();
    for c in compositions(q, t) {
        let mut den = T::one(ctx);
        for (i, &ni) in c.parts.iter().enumerate() {
            if ni > 0 {
                den = den * fact[i].ipow(ni as i64) * fact[ni as usize].clone();
            }
        }
        let w = c.weighted() as usize;
        out[w] = out[w].clone() + T::one(ctx) / den;
    }
    out
}

fn check_cap(count: u128) -> Result<(), Error> {
    if count > TERM_CAP {
        Err(Error::ExcessiveTerms { count, cap: TERM_CAP })
    } else {
        Ok(())
    }
}

/// Summand count of the packing-sphere expansion.
pub fn a_term_count(n: usize, k: usize, l: u32, m: u32) -> u128 {
    let inner = composition_count(n as u32 - 1, m as usize);
    (1..=l).map(|q| composition_count(q, k / 2)).sum::<u128>().saturating_mul(inner)
}

pub fn b_term_count(n: usize, m: u32) -> u128 {
    (1..=n as u32).map(|q| composition_count(q, m as usize)).sum()
}

pub fn c_term_count(n: usize, l: u32) -> u128 {
    (1..=l).map(|q| composition_count(q, n / 2)).sum()
}

/// `1 − E[P(k/2, c·min γ)^L]` with `c = ρ d²/8`, for even `k` and integer `m`.
pub fn a_complement<T: Real>(ctx: &T::Ctx, n: usize, k: usize, l: u32, m: u32, rho: f64, d_min: f64) -> Result<T, Error> {
    if k == 0 || k % 2 == 1 || m == 0 || n == 0 {
        return Err(Error::ParameterUnsupported("packing-sphere closed form needs even k and integer m"));
    }
    check_cap(a_term_count(n, k, l, m))?;
    let nu = k / 2;
    let mu = m as usize;
    let max_z = l as usize * (nu - 1);
    let max_y = (n - 1) * (mu - 1);
    let fact: Vec<T> = factorials(ctx, (l as usize).max(n).max(max_z + max_y + mu + 1));

    let mt = T::cst(ctx, m as f64);
    let c = T::cst(ctx, rho) * T::cst(ctx, d_min) * T::cst(ctx, d_min) / T::cst(ctx, 8.0);
    // Σ_t m^Y / Ξ bucketed by Y
    let tb = weighted_buckets::<T>(ctx, n as u32 - 1, mu, &fact);
    let ty: Vec<T> = tb.iter().enumerate().map(|(y, s)| s.clone() * mt.ipow(y as i64)).collect();

    // N! m^m / Γ(m)
    let lead = fact[n].clone() * mt.ipow(mu as i64) / fact[mu - 1].clone();
    let big_n = T::cst(ctx, (mu * n) as f64);
    let mut total = T::zero(ctx);
    let mut falling = T::one(ctx);
    let mut c_pow: Vec<T> = vec![T::one(ctx)];
    for z in 1..=max_z {
        let next = c_pow[z - 1].clone() * c.clone();
        c_pow.push(next);
    }
    for q in 1..=l {
        falling = falling * T::cst(ctx, (l - q + 1) as f64);
        let d = big_n.clone() + T::cst(ctx, q as f64) * c.clone();
        // r[s] = Γ(s) / d^s
        let smax = max_y + mu + q as usize * (nu - 1);
        let mut r: Vec<T> = Vec::with_capacity(smax + 1);
        r.push(T::zero(ctx));
        r.push(T::one(ctx) / d.clone());
        for s in 1..smax {
            let next = r[s].clone() * T::cst(ctx, s as f64) / d.clone();
            r.push(next);
        }
        let zb = weighted_buckets::<T>(ctx, q, nu, &fact);
        let mut sq = T::zero(ctx);
        for (z, sz) in zb.iter().enumerate() {
            if !(sz.to_f64() > 0.0) {
                continue;
            }
            let mut inner = T::zero(ctx);
            for (y, w) in ty.iter().enumerate() {
                if w.to_f64() > 0.0 {
                    inner = inner + w.clone() * r[y + mu + z].clone();
                }
            }
            sq = sq + sz.clone() * c_pow[z].clone() * inner;
        }
        let term = falling.clone() * sq;
        // 1 − A = −Σ_q (−1)^q (…)
        total = if q % 2 == 1 { total + term } else { total - term };
    }
    Ok(total * lead)
}

/// `1 − E[P(k/2, β max γ)]` with `β = ρ Γ(k/2+1)^{2/k} W² / (2π)`.
pub fn b_complement<T: Real>(ctx: &T::Ctx, n: usize, k: usize, m: u32, rho: f64, w: f64, ctl: SeriesCtl) -> Result<T, Error> {
    if k == 0 || k % 2 == 1 || m == 0 || n == 0 {
        return Err(Error::ParameterUnsupported("equal-volume closed form needs even k and integer m"));
    }
    check_cap(b_term_count(n, m))?;
    let mu = m as usize;
    let fact: Vec<T> = factorials(ctx, n.max(n * mu + 1));
    let nu = T::cst(ctx, (k / 2) as f64);
    let beta = beta_k::<T>(ctx, k, rho, w);
    let mt = T::cst(ctx, m as f64);
    let mut total = T::zero(ctx);
    for q in 1..=n {
        let p = T::cst(ctx, (q * mu) as f64);
        let xb = weighted_buckets::<T>(ctx, q as u32, mu, &fact);
        let mut inner = T::zero(ctx);
        for (x, s) in xb.iter().enumerate() {
            if !(s.to_f64() > 0.0) {
                continue;
            }
            let ups = s.clone() * mt.ipow(x as i64);
            let xt = T::cst(ctx, x as f64);
            let mut v = -(p.clone() * g_generic(xt.clone() + T::one(ctx), beta.clone(), p.clone(), nu.clone(), ctl)?);
            if x > 0 {
                v = v + xt.clone() * g_generic(xt, beta.clone(), p.clone(), nu.clone(), ctl)?;
            }
            inner = inner + ups * v;
        }
        let binom = fact[n].clone() / fact[n - q].clone();
        let term = binom * inner;
        total = if q % 2 == 1 { total - term } else { total + term };
    }
    Ok(total / fact[k / 2 - 1].clone())
}

fn beta_k<T: Real>(ctx: &T::Ctx, k: usize, rho: f64, w: f64) -> T {
    // Γ(k/2+1)^{2/k} = ((k/2)!)^{2/k} for even k
    let nu = k / 2;
    let mut f = T::one(ctx);
    for i in 2..=nu {
        f = f * T::cst(ctx, i as f64);
    }
    let g = if nu == 1 { f } else { f.pow(&(T::one(ctx) / T::cst(ctx, nu as f64))) };
    T::cst(ctx, rho) * g * T::cst(ctx, w) * T::cst(ctx, w) / (T::cst(ctx, 2.0) * T::pi(ctx))
}

/// `1 − E[I_2^L]` for `N = 2` through Gauss hypergeometric functions.
pub fn c_complement_2f1<T: Real>(ctx: &T::Ctx, l: u32, m: f64, rho: f64, ctl: SeriesCtl) -> Result<T, Error> {
    check_cap(c_term_count(2, l))?;
    let mt = T::cst(ctx, m);
    let half = T::cst(ctx, 0.5);
    let one = T::one(ctx);
    let a = half.clone() + mt.clone();
    let c = half.clone() + mt.clone() * T::cst(ctx, 2.0);
    let konst = (a.ln_gamma() * T::cst(ctx, 2.0) - c.ln_gamma()).exp() / T::pi(ctx).sqrt();
    let four_pi_m = T::cst(ctx, 4.0) * T::pi(ctx) * mt.clone() / T::cst(ctx, rho);
    let mut total = T::zero(ctx);
    let mut binom = T::one(ctx);
    for q in 1..=l {
        binom = binom * T::cst(ctx, (l - q + 1) as f64) / T::cst(ctx, q as f64);
        let r = four_pi_m.clone() / T::cst(ctx, q as f64);
        let r2 = r.clone() * r.clone();
        let f = hyp2f1(a.clone(), mt.clone(), c.clone(), one.clone() - r2.clone(), ctl)?;
        let term = binom.clone() * konst.clone() * r2.pow(&mt) * f;
        total = if q % 2 == 1 { total + term } else { total - term };
    }
    Ok(total)
}

/// `1 − E[I_N^L]` for even `N` through `G^{N,N}_{N,N}`.
///
/// By Gauss multiplication the `a`-side gammas of `G(x | (j−Q)/N; m)`
/// collapse to `Γ(Nu + Q) = Γ(Nu) (Nu)_Q`, so every `Q` shares one node
/// table for `Γ(m−u)^N Γ(Nu)` and contributes a Pochhammer weight.
pub fn c_complement_meijer<T: Real>(ctx: &T::Ctx, n: usize, l: u32, m: f64, rho: f64, ctl: ContourCtl) -> Result<T, Error> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::ParameterUnsupported("Meijer-G closed form needs even N"));
    }
    check_cap(c_term_count(n, l))?;
    let half = n / 2;
    let nt = T::cst(ctx, n as f64);
    let mt = T::cst(ctx, m);
    let fact: Vec<T> = factorials(ctx, half.max(l as usize) + 1);
    let g_half = fact[half].clone();
    let base = T::cst(ctx, 2.0) * T::pi(ctx) * mt.clone() / T::cst(ctx, rho);
    // x_q / N^N
    let y_of = |q: u32| (base.clone() / T::cst(ctx, q as f64)).ipow(n as i64) / (g_half.clone() * g_half.clone());
    let lead = nt.clone() / (mt.ln_gamma() * nt.clone()).exp();

    let max_q = l as usize * (half - 1);
    let factors = MellinFactors {
        left: vec![(mt.clone(), n)],
        right: vec![(n as f64, T::zero(ctx), 1)],
        weight_degree: max_q as u32,
    };
    let range = (y_of(l).ln().to_f64(), y_of(1).ln().to_f64());
    let contour = Contour::with_factors(ctx, &factors, range, ctl)?;

    let mut total = T::zero(ctx);
    let mut falling = T::one(ctx);
    for q in 1..=l {
        falling = falling * T::cst(ctx, (l - q + 1) as f64);
        let coef: Vec<T> = {
            let b = weighted_buckets::<T>(ctx, q, half, &fact);
            let inv_q = T::one(ctx) / T::cst(ctx, q as f64);
            b.into_iter().enumerate().map(|(qc, s)| s * inv_q.ipow(qc as i64)).collect()
        };
        let (g, _) = contour.eval_weighted(&y_of(q), |_, u| {
            if coef.len() == 1 {
                return None;
            }
            let nu = u.scale(&nt);
            let mut poch = Cx::real(T::one(ctx));
            let mut acc = Cx::real(coef[0].clone());
            for (j, cj) in coef.iter().enumerate().skip(1) {
                poch = poch * Cx::new(nu.re.clone() + T::cst(ctx, (j - 1) as f64), nu.im.clone());
                acc = acc + poch.scale(cj);
            }
            Some(acc)
        });
        let g = if coef.len() == 1 { g * coef[0].clone() } else { g };
        let term = falling.clone() * g;
        total = if q % 2 == 1 { total + term } else { total - term };
    }
    Ok(total * lead)
}

/// Term-by-term transcription with one `G^{N,N}_{N,N}` per weighted index.
#[cfg(test)]
pub(crate) fn c_complement_meijer_literal<T: Real>(ctx: &T::Ctx, n: usize, l: u32, m: f64, rho: f64, ctl: ContourCtl) -> Result<T, Error> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::ParameterUnsupported("Meijer-G closed form needs even N"));
    }
    check_cap(c_term_count(n, l))?;
    let half = n / 2;
    let nt = T::cst(ctx, n as f64);
    let mt = T::cst(ctx, m);
    let two_pi = T::cst(ctx, 2.0) * T::pi(ctx);
    let fact: Vec<T> = factorials(ctx, half.max(l as usize) + 1);
    // Γ(N/2+1)² appears once N-th power of the ratio is taken
    let g_half = fact[half].clone();
    let base = two_pi.clone() * mt.clone() * nt.clone() / T::cst(ctx, rho);
    let x_of = |q: u32| base.clone().ipow(n as i64) / T::cst(ctx, q as f64).ipow(n as i64) / (g_half.clone() * g_half.clone());
    // √N / (Γ(m)^N (2π)^{(N−1)/2})
    let lead = nt.sqrt() / ((mt.ln_gamma() * nt.clone()).exp() * (two_pi.ln() * T::cst(ctx, (n as f64 - 1.0) / 2.0)).exp());

    let max_q = l as usize * (half - 1);
    let b: Vec<T> = (0..n).map(|_| mt.clone()).collect();
    let mut contours: Vec<Option<Contour<T>>> = (0..=max_q).map(|_| None).collect();
    let buckets: Vec<Vec<T>> = (1..=l).map(|q| weighted_buckets::<T>(ctx, q, half, &fact)).collect();
    let mut total = T::zero(ctx);
    let mut falling = T::one(ctx);
    for q in 1..=l {
        falling = falling * T::cst(ctx, (l - q + 1) as f64);
        let x = x_of(q);
        let mut sq = T::zero(ctx);
        for (qc, s) in buckets[q as usize - 1].iter().enumerate() {
            if !(s.to_f64() > 0.0) {
                continue;
            }
            if contours[qc].is_none() {
                // every q whose compositions reach this weighted index
                let q_lo = if half == 1 { 1 } else { ((qc + half - 2) / (half - 1)).max(1) as u32 };
                let lx_hi = x_of(q_lo).ln().to_f64();
                let lx_lo = x_of(l).ln().to_f64();
                let a: Vec<T> = (1..=n)
                    .map(|j| (T::cst(ctx, j as f64) - T::cst(ctx, qc as f64)) / nt.clone())
                    .collect();
                contours[qc] = Some(Contour::new(ctx, &a, &b, (lx_lo, lx_hi), ctl)?);
            }
            let (g, _) = contours[qc].as_ref().unwrap().eval(&x);
            let scale = (nt.clone() / T::cst(ctx, q as f64)).ipow(qc as i64);
            sq = sq + s.clone() * scale * g;
        }
        let term = falling.clone() * sq;
        total = if q % 2 == 1 { total + term } else { total - term };
    }
    Ok(total * lead)
}

/// Outcome of a precision-checked evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Checked {
    pub value: f64,
    /// Difference between the two final precisions.
    pub error: f64,
    pub bits: usize,
}

pub const MAX_BITS: usize = 4096;

/// Evaluates `f` at increasing precision until two runs `Δ = 48` bits apart
/// agree to `rel_tol`.
pub fn adaptive<F: Fn(&MpCtx) -> Result<Mp, Error>>(f: F, start_bits: usize, rel_tol: f64) -> Result<Checked, Error> {
    let mut bits = start_bits.max(64);
    let mut prev = f(&MpCtx::new(bits))?.to_f64();
    loop {
        let next_bits = bits + 48;
        let cur = f(&MpCtx::new(next_bits))?.to_f64();
        let diff = (cur - prev).abs();
        if cur.is_finite() && diff <= rel_tol * cur.abs() + 1e-300 {
            return Ok(Checked { value: cur, error: diff, bits: next_bits });
        }
        if next_bits >= MAX_BITS {
            return Err(Error::ConvergenceFailure("closed form did not stabilize with precision"));
        }
        bits = next_bits + 16;
        prev = f(&MpCtx::new(bits))?.to_f64();
    }
}

/// Working precision needed by an alternating binomial sum of length `l`.
pub fn start_bits(l: u32) -> usize {
    96 + 2 * l as usize
}

/// Multiprecision series and contour controls for `ctx`.
pub fn mp_series(ctx: &MpCtx) -> SeriesCtl {
    SeriesCtl { tol: Mp::eps(ctx), max_terms: 1_000_000 }
}

pub fn mp_contour(ctx: &MpCtx) -> ContourCtl {
    ContourCtl { target: Mp::eps(ctx) * 16.0, max_step: 0.25, max_height: 400.0 }
}
