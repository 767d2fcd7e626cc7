//! Minimal complex arithmetic over [`Real`], enough for Mellin–Barnes
//! integrands.

use core::ops::{Add, Mul, Neg, Sub};

use crate::real::Real;

#[derive(Clone, Debug)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }

    pub fn real(re: T) -> Self {
        let im = re.lit(0.0);
        Cx { re, im }
    }

    pub fn norm_sqr(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn abs(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> T {
        T::atan2_of(&self.im, &self.re)
    }

    pub fn scale(&self, s: &T) -> Self {
        Cx::new(self.re.clone() * s.clone(), self.im.clone() * s.clone())
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Cx::new(self.re.clone() / d.clone(), -(self.im.clone() / d))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.clone() * o.recip()
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let half = self.re.lit(0.5);
        Cx::new(self.norm_sqr().ln() * half, self.arg())
    }

    /// `|z|` in double precision.
    pub fn abs_f64(&self) -> f64 {
        libm::hypot(self.re.to_f64(), self.im.to_f64())
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        Cx::new(r.clone() * self.im.cos(), r * self.im.sin())
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Cx<T>;
    fn add(self, o: Cx<T>) -> Cx<T> {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}

impl<T: Real> Sub for Cx<T> {
    type Output = Cx<T>;
    fn sub(self, o: Cx<T>) -> Cx<T> {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}

impl<T: Real> Mul for Cx<T> {
    type Output = Cx<T>;
    fn mul(self, o: Cx<T>) -> Cx<T> {
        Cx::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re * o.im + self.im * o.re,
        )
    }
}

impl<T: Real> Neg for Cx<T> {
    type Output = Cx<T>;
    fn neg(self) -> Cx<T> {
        Cx::new(-self.re, -self.im)
    }
}
