//! Multiprecision [`Real`] backed by `astro-float`.
//!
//! Values carry a shared context holding the working precision and cached
//! constants, so generic code can create literals without global state.

use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::real::{stirling_setup, Real};

const RM: RoundingMode = RoundingMode::ToEven;

struct Inner {
    bits: usize,
    cc: RefCell<Consts>,
    pi: BigFloat,
    stirling: RefCell<Option<(Rc<[Mp]>, f64)>>,
}

/// Working precision plus constant caches. Cheap to clone.
#[derive(Clone)]
pub struct MpCtx(Rc<Inner>);

impl MpCtx {
    pub fn new(bits: usize) -> Self {
        let mut cc = Consts::new().expect("astro-float constants");
        let pi = cc.pi(bits, RM);
        MpCtx(Rc::new(Inner {
            bits,
            cc: RefCell::new(cc),
            pi,
            stirling: RefCell::new(None),
        }))
    }

    pub fn bits(&self) -> usize {
        self.0.bits
    }

    fn wrap(&self, v: BigFloat) -> Mp {
        Mp { v, ctx: self.clone() }
    }
}

impl fmt::Debug for MpCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MpCtx({} bits)", self.0.bits)
    }
}

#[derive(Clone)]
pub struct Mp {
    v: BigFloat,
    ctx: MpCtx,
}

impl Mp {
    fn p(&self) -> usize {
        self.ctx.0.bits
    }

    fn with_cc<F: FnOnce(&BigFloat, usize, &mut Consts) -> BigFloat>(&self, f: F) -> Mp {
        let mut cc = self.ctx.0.cc.borrow_mut();
        let v = f(&self.v, self.p(), &mut cc);
        self.ctx.wrap(v)
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl PartialEq for Mp {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for Mp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Mp {
            type Output = Mp;
            fn $f(self, rhs: Mp) -> Mp {
                let v = self.v.$f(&rhs.v, self.p(), RM);
                Mp { v, ctx: self.ctx }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp { v: self.v.neg(), ctx: self.ctx }
    }
}

impl Real for Mp {
    type Ctx = MpCtx;

    fn ctx(&self) -> MpCtx {
        self.ctx.clone()
    }

    fn cst(ctx: &MpCtx, x: f64) -> Mp {
        ctx.wrap(BigFloat::from_f64(x, ctx.0.bits))
    }

    fn pi(ctx: &MpCtx) -> Mp {
        ctx.wrap(ctx.0.pi.clone())
    }

    fn eps(ctx: &MpCtx) -> f64 {
        libm::ldexp(1.0, -(ctx.0.bits as i32))
    }

    fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        match self.v.as_raw_parts() {
            Some((words, _, sign, e, _)) => {
                let top = *words.last().unwrap_or(&0);
                if top == 0 {
                    return 0.0;
                }
                let mag = libm::ldexp(top as f64, e - 64);
                if sign == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
            None => f64::NAN,
        }
    }

    fn exp(&self) -> Mp {
        self.with_cc(|v, p, cc| v.exp(p, RM, cc))
    }

    fn ln(&self) -> Mp {
        self.with_cc(|v, p, cc| v.ln(p, RM, cc))
    }

    fn sqrt(&self) -> Mp {
        self.ctx.wrap(self.v.sqrt(self.p(), RM))
    }

    fn sin(&self) -> Mp {
        self.with_cc(|v, p, cc| v.sin(p, RM, cc))
    }

    fn cos(&self) -> Mp {
        self.with_cc(|v, p, cc| v.cos(p, RM, cc))
    }

    fn atan(&self) -> Mp {
        self.with_cc(|v, p, cc| v.atan(p, RM, cc))
    }

    fn abs(&self) -> Mp {
        self.ctx.wrap(self.v.abs())
    }

    fn is_finite(&self) -> bool {
        !(self.v.is_nan() || self.v.is_inf())
    }

    fn ln_gamma(&self) -> Mp {
        crate::sfuncs::gamma::ln_gamma_stirling(self.clone())
    }

    fn digamma(&self) -> Mp {
        crate::sfuncs::gamma::digamma_generic(self.clone())
    }

    fn stirling(ctx: &MpCtx) -> (Rc<[Mp]>, f64) {
        if let Some(s) = ctx.0.stirling.borrow().as_ref() {
            return s.clone();
        }
        let (c, r): (Vec<Mp>, f64) = stirling_setup(ctx, ctx.0.bits as f64 + 8.0);
        let s: (Rc<[Mp]>, f64) = (c.into(), r);
        *ctx.0.stirling.borrow_mut() = Some(s.clone());
        s
    }

    fn ipow(&self, n: i64) -> Mp {
        let p = self.p();
        let v = self.v.powi(n.unsigned_abs() as usize, p, RM);
        if n < 0 {
            self.ctx.wrap(BigFloat::from_f64(1.0, p).div(&v, p, RM))
        } else {
            self.ctx.wrap(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_f64() {
        let ctx = MpCtx::new(128);
        for x in [1.0, -3.5, 0.75, 1e-300, 7.25e280, 0.0] {
            assert_eq!(Mp::cst(&ctx, x).to_f64(), x);
        }
    }

    #[test]
    fn elementary_functions_agree_with_f64() {
        let ctx = MpCtx::new(160);
        let x = Mp::cst(&ctx, 0.8125);
        let close = |a: Mp, b: f64| assert!((a.to_f64() - b).abs() <= 4e-16 * b.abs().max(1e-300));
        close(x.exp(), 0.8125f64.exp());
        close(x.ln(), 0.8125f64.ln());
        close(x.sqrt(), 0.8125f64.sqrt());
        close(x.sin(), 0.8125f64.sin());
        close(x.cos(), 0.8125f64.cos());
        close(x.atan(), 0.8125f64.atan());
        close(x.ipow(-7), 0.8125f64.powi(-7));
        close(Mp::pi(&ctx), core::f64::consts::PI);
    }

    #[test]
    fn precision_exceeds_f64() {
        let ctx = MpCtx::new(200);
        let one = Mp::one(&ctx);
        let tiny = Mp::cst(&ctx, 1e-40);
        let d = (one.clone() + tiny.clone()) - one;
        assert!((d.to_f64() - 1e-40).abs() < 1e-55);
    }
}
