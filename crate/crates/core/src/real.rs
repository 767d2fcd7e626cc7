//! Scalar abstraction shared by the closed-form evaluators.
//!
//! Every closed form is written once over [`Real`] and instantiated with
//! `f64` or with the multiprecision [`Mp`](crate::mp::Mp) type. Alternating
//! sums such as the binomial expansion of `E[I^L]` lose about `L` bits, which
//! `f64` cannot absorb for `L = 100`.

use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Evaluation context (precision, cached constants).
    type Ctx: Clone;

    fn ctx(&self) -> Self::Ctx;
    fn cst(ctx: &Self::Ctx, x: f64) -> Self;
    fn pi(ctx: &Self::Ctx) -> Self;
    /// Unit roundoff of the arithmetic.
    fn eps(ctx: &Self::Ctx) -> f64;
    fn to_f64(&self) -> f64;

    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_finite(&self) -> bool;

    /// `ln Γ(x)` for `x > 0`.
    fn ln_gamma(&self) -> Self;
    /// Digamma `ψ(x)` for `x > 0`.
    fn digamma(&self) -> Self;

    /// Coefficients `B_2k / (2k (2k-1))` of the Stirling series and the
    /// modulus beyond which the truncated series reaches working precision.
    fn stirling(ctx: &Self::Ctx) -> (Rc<[Self]>, f64);

    fn lit(&self, x: f64) -> Self {
        Self::cst(&self.ctx(), x)
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::cst(ctx, 0.0)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::cst(ctx, 1.0)
    }

    /// `self^e` for `self > 0`.
    fn pow(&self, e: &Self) -> Self {
        (self.ln() * e.clone()).exp()
    }

    fn ipow(&self, n: i64) -> Self {
        let mut base = self.clone();
        let mut k = n.unsigned_abs();
        let mut acc = self.lit(1.0);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        if n < 0 {
            self.lit(1.0) / acc
        } else {
            acc
        }
    }

    fn atan2_of(y: &Self, x: &Self) -> Self {
        let zero = x.lit(0.0);
        let pi = Self::pi(&x.ctx());
        if *x > zero {
            (y.clone() / x.clone()).atan()
        } else if *x < zero {
            let base = (y.clone() / x.clone()).atan();
            if *y >= zero {
                base + pi
            } else {
                base - pi
            }
        } else if *y > zero {
            pi * x.lit(0.5)
        } else if *y < zero {
            pi * x.lit(-0.5)
        } else {
            zero
        }
    }

    fn maxv(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

/// Bernoulli numbers `B_2, B_4, …, B_2n` from tangent numbers.
///
/// The tangent recurrence only adds positive quantities, so it is accurate
/// in any working precision.
pub(crate) fn bernoulli_even<T: Real>(ctx: &T::Ctx, n: usize) -> Vec<T> {
    let mut t: Vec<T> = (0..=n).map(|_| T::zero(ctx)).collect();
    if n == 0 {
        return Vec::new();
    }
    t[1] = T::one(ctx);
    for k in 2..=n {
        t[k] = t[k - 1].clone() * T::cst(ctx, (k - 1) as f64);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = t[j - 1].clone() * T::cst(ctx, (j - k) as f64)
                + t[j].clone() * T::cst(ctx, (j - k + 2) as f64);
        }
    }
    let two = T::cst(ctx, 2.0);
    (1..=n)
        .map(|k| {
            let p = two.ipow(2 * k as i64);
            let b = t[k].clone() * T::cst(ctx, (2 * k) as f64) / (p.clone() * (p - T::one(ctx)));
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Stirling coefficients and shift radius for a target of `bits` bits.
pub(crate) fn stirling_setup<T: Real>(ctx: &T::Ctx, bits: f64) -> (Vec<T>, f64) {
    let terms = ((bits / 5.0).ceil() as usize).clamp(8, 160);
    let b = bernoulli_even::<T>(ctx, terms + 1);
    // |B_{2K+2}| / ((2K+2)(2K+1) r^{2K+1}) < 2^-bits
    let j = (terms + 1) as f64;
    let ln_next = b[terms].to_f64().abs().ln();
    let ln_r = (ln_next - ((2.0 * j) * (2.0 * j - 1.0)).ln() + bits * core::f64::consts::LN_2)
        / (2.0 * j - 1.0);
    let coef = b
        .into_iter()
        .take(terms)
        .enumerate()
        .map(|(i, bk)| {
            let k = (i + 1) as f64;
            bk / T::cst(ctx, 2.0 * k * (2.0 * k - 1.0))
        })
        .collect();
    (coef, ln_r.exp().max(1.0))
}

impl Real for f64 {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn cst(_: &(), x: f64) -> f64 {
        x
    }

    fn pi(_: &()) -> f64 {
        core::f64::consts::PI
    }

    fn eps(_: &()) -> f64 {
        f64::EPSILON / 2.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn exp(&self) -> f64 {
        f64::exp(*self)
    }

    fn ln(&self) -> f64 {
        f64::ln(*self)
    }

    fn sqrt(&self) -> f64 {
        f64::sqrt(*self)
    }

    fn sin(&self) -> f64 {
        f64::sin(*self)
    }

    fn cos(&self) -> f64 {
        f64::cos(*self)
    }

    fn atan(&self) -> f64 {
        f64::atan(*self)
    }

    fn abs(&self) -> f64 {
        f64::abs(*self)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn ln_gamma(&self) -> f64 {
        crate::sfuncs::ln_gamma(*self)
    }

    fn digamma(&self) -> f64 {
        crate::sfuncs::gamma::digamma_generic(self.clone())
    }

    fn stirling(_: &()) -> (Rc<[f64]>, f64) {
        let (c, r) = stirling_setup::<f64>(&(), 60.0);
        (c.into(), r)
    }

    fn pow(&self, e: &f64) -> f64 {
        f64::powf(*self, *e)
    }

    fn ipow(&self, n: i64) -> f64 {
        match i32::try_from(n) {
            Ok(n) => f64::powi(*self, n),
            Err(_) => f64::powf(*self, n as f64),
        }
    }

    fn atan2_of(y: &f64, x: &f64) -> f64 {
        f64::atan2(*y, *x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_matches_known_values() {
        let b = bernoulli_even::<f64>(&(), 6);
        let known = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
        for (x, y) in b.iter().zip(known) {
            assert!((x - y).abs() < 1e-15 * y.abs(), "{x} vs {y}");
        }
    }

    #[test]
    fn atan2_quadrants() {
        for (y, x) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (1.0, 0.0), (0.0, -1.0)] {
            let d: f64 = <f64 as Real>::atan2_of(&y, &x);
            assert!((d - f64::atan2(y, x)).abs() < 1e-15);
        }
    }
}
