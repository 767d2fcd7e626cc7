//! Regularized incomplete gamma functions.


use super::gamma::ln_gamma;
use crate::Error;

const MAX_ITER: usize = 100_000;
const TINY: f64 = 1e-300;

/// Both regularized incomplete gammas `(P(a,x), Q(a,x))`.
///
/// The smaller of the two is computed directly, so each is accurate in the
/// relative sense even when the other is close to one.
pub fn gamma_pq(a: f64, x: f64) -> Result<(f64, f64), Error> {
    if !(a > 0.0) || !(x >= 0.0) || !a.is_finite() {
        return Err(Error::DomainError("incomplete gamma needs a > 0 and x >= 0"));
    }
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    if x.is_infinite() {
        return Ok((1.0, 0.0));
    }
    let log_pref = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        let p = series(a, x, log_pref)?;
        Ok((p, 1.0 - p))
    } else {
        let q = continued_fraction(a, x, log_pref)?;
        Ok((1.0 - q, q))
    }
}

/// `Γ(a,x)/Γ(a)`.
pub fn upper_gamma_reg(a: f64, x: f64) -> Result<f64, Error> {
    gamma_pq(a, x).map(|(_, q)| q)
}

/// `γ(a,x)/Γ(a)`.
pub fn lower_gamma_reg(a: f64, x: f64) -> Result<f64, Error> {
    gamma_pq(a, x).map(|(p, _)| p)
}

fn series(a: f64, x: f64, log_pref: f64) -> Result<f64, Error> {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * f64::EPSILON * 0.25 {
            return Ok(sum * log_pref.exp());
        }
    }
    Err(Error::ConvergenceFailure("incomplete gamma series"))
}

fn continued_fraction(a: f64, x: f64, log_pref: f64) -> Result<f64, Error> {
    // modified Lentz on the Legendre fraction
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < f64::EPSILON * 0.25 {
            return Ok(log_pref.exp() * h);
        }
    }
    Err(Error::ConvergenceFailure("incomplete gamma continued fraction"))
}
