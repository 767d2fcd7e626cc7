//! Nakagami-m block fading with additive white Gaussian noise.
//!
//! Power gains `γ_i` are `Gamma(m, rate m)` so that `E[γ_i] = 1`, amplitudes
//! are `h_i = √γ_i`, and the SNR is `ρ = 1/σ²`.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::sfuncs::{gamma_pq, ln_gamma};
use crate::Error;

/// Seedable, splittable random source. Each `(seed, stream)` pair is an
/// independent ChaCha8 keystream, so per-frame streams make results
/// independent of how work is scheduled.
#[derive(Clone, Debug)]
pub struct RandomStream(ChaCha8Rng);

impl RandomStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(stream);
        RandomStream(r)
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand_core::Error> {
        self.0.try_fill_bytes(dest)
    }
}

/// SplitMix64 finalizer, used to derive independent seeds from labels.
pub fn mix_seed(seed: u64, label: u64) -> u64 {
    let mut z = seed ^ label.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    /// Nakagami shape.
    pub m: f64,
    /// Linear SNR `1/σ²`.
    pub rho: f64,
    /// Blocks per frame, equal to the lattice dimension.
    pub n: usize,
    /// Symbols per frame.
    pub l: u32,
}

impl ChannelParams {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.m >= 0.5) {
            return Err(Error::InvalidShape(self.m));
        }
        if !(self.rho > 0.0) {
            return Err(Error::InvalidParameter("SNR must be positive"));
        }
        if self.l == 0 || self.n == 0 {
            return Err(Error::InvalidParameter("N and L must be at least 1"));
        }
        Ok(())
    }

    pub fn sigma(&self) -> f64 {
        (1.0 / self.rho).sqrt()
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Per-block gains of one frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FadingRealization {
    pub h: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl FadingRealization {
    pub fn from_gains(h: Vec<f64>) -> Self {
        let gamma = h.iter().map(|x| x * x).collect();
        FadingRealization { h, gamma }
    }

    pub fn from_powers(gamma: Vec<f64>) -> Self {
        let h = gamma.iter().map(|g| g.sqrt()).collect();
        FadingRealization { h, gamma }
    }
}

/// Draws `Gamma(m, rate m)` power gains.
#[derive(Clone, Debug)]
pub struct FadingSampler {
    dist: Gamma<f64>,
    n: usize,
}

impl FadingSampler {
    pub fn new(m: f64, n: usize) -> Result<Self, Error> {
        if !(m >= 0.5) {
            return Err(Error::InvalidShape(m));
        }
        let dist = Gamma::new(m, 1.0 / m).map_err(|_| Error::InvalidShape(m))?;
        Ok(FadingSampler { dist, n })
    }

    pub fn sample_gamma<R: RngCore>(&self, rng: &mut R) -> f64 {
        self.dist.sample(rng)
    }

    pub fn sample<R: RngCore>(&self, rng: &mut R) -> FadingRealization {
        FadingRealization::from_powers((0..self.n).map(|_| self.dist.sample(rng)).collect())
    }

    /// Fills `gamma` in place, avoiding allocation in hot loops.
    pub fn fill_powers<R: RngCore>(&self, rng: &mut R, gamma: &mut [f64]) {
        for g in gamma {
            *g = self.dist.sample(rng);
        }
    }

    /// Redraws `h` in place.
    pub fn fill<R: RngCore>(&self, rng: &mut R, h: &mut FadingRealization) {
        h.gamma.resize(self.n, 0.0);
        h.h.resize(self.n, 0.0);
        for (g, a) in h.gamma.iter_mut().zip(h.h.iter_mut()) {
            *g = self.dist.sample(rng);
            *a = g.sqrt();
        }
    }
}

pub fn sample_fading<R: RngCore>(params: &ChannelParams, rng: &mut R) -> Result<FadingRealization, Error> {
    Ok(FadingSampler::new(params.m, params.n)?.sample(rng))
}

/// Power-gain density `m^m x^{m-1} e^{-mx} / Γ(m)`.
pub fn gamma_power_pdf(x: f64, m: f64) -> Result<f64, Error> {
    if !(x >= 0.0) {
        return Err(Error::DomainError("power gain must be non-negative"));
    }
    if !(m >= 0.5) {
        return Err(Error::InvalidShape(m));
    }
    if x == 0.0 {
        return Ok(if m < 1.0 {
            f64::INFINITY
        } else if m == 1.0 {
            1.0
        } else {
            0.0
        });
    }
    Ok((m * m.ln() + (m - 1.0) * x.ln() - m * x - ln_gamma(m)).exp())
}

/// Power-gain distribution `1 - Γ(m, mx)/Γ(m)`.
pub fn gamma_power_cdf(x: f64, m: f64) -> Result<f64, Error> {
    gamma_power_cdf_pair(x, m).map(|(p, _)| p)
}

/// `(F(x), 1 - F(x))` with both sides accurate.
pub fn gamma_power_cdf_pair(x: f64, m: f64) -> Result<(f64, f64), Error> {
    if !(x >= 0.0) {
        return Err(Error::DomainError("power gain must be non-negative"));
    }
    if !(m >= 0.5) {
        return Err(Error::InvalidShape(m));
    }
    gamma_pq(m, m * x)
}

/// `y = H x + z` with `z ~ N(0, σ² I)`.
pub fn apply_channel<R: RngCore>(x: &[f64], h: &FadingRealization, sigma: f64, rng: &mut R) -> Result<Vec<f64>, Error> {
    if x.len() != h.h.len() {
        return Err(Error::DimensionMismatch { expected: h.h.len(), got: x.len() });
    }
    if !(sigma >= 0.0) {
        return Err(Error::InvalidParameter("noise deviation must be non-negative"));
    }
    Ok(x
        .iter()
        .zip(&h.h)
        .map(|(xi, hi)| {
            let z: f64 = StandardNormal.sample(rng);
            hi * xi + sigma * z
        })
        .collect())
}

/// `(min γ, max γ, (Π γ)^{1/N})`.
pub fn order_statistics(h: &FadingRealization) -> (f64, f64, f64) {
    let g = &h.gamma;
    let min = g.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = g.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let geo = if min <= 0.0 {
        0.0
    } else {
        (g.iter().map(|x| x.ln()).sum::<f64>() / g.len() as f64).exp()
    };
    (min, max, geo)
}
