//! Monte Carlo frame error probability with maximum-likelihood decoding.
//!
//! Each frame draws one fading realization and `L` symbols from the stream
//! `(seed, frame index)`, so counts do not depend on how frames are split
//! across workers, and all SNR points of a sweep see the same fading and
//! noise shapes.

use alloc::vec;
use alloc::vec::Vec;

use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::channel::{ChannelParams, FadingRealization, FadingSampler, RandomStream};
use crate::exec::{Executor, Sequential};
use crate::lattice::{Constellation, Matrix, Size, ENUMERATION_CAP};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig {
    pub frames: u64,
    pub seed: u64,
    /// `‖z‖_∞` bound of the infinite-lattice candidate set.
    pub decode_window: u32,
    /// Two-sided confidence level of the reported interval.
    pub ci_level: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { frames: 100_000, seed: 0x5eed, decode_window: 4, ci_level: 0.95 }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.frames == 0 {
            return Err(Error::InvalidParameter("frames must be at least 1"));
        }
        if self.decode_window == 0 {
            return Err(Error::InvalidParameter("decode window must be at least 1"));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(Error::InvalidParameter("confidence level must be in (0, 1)"));
        }
        Ok(())
    }
}

/// Frames per scheduled job.
const CHUNK: u64 = 512;

/// Boundary-decided share of errors above which the window is suspect.
pub const WINDOW_SUSPECT_SHARE: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FepEstimate {
    /// `errors / frames`.
    pub fep: f64,
    pub stderr: f64,
    pub frames: u64,
    pub errors: u64,
    /// Wilson score interval at the configured level.
    pub ci: (f64, f64),
    /// Error frames whose first wrong decision lay on the window boundary
    /// (infinite lattices only).
    pub boundary_errors: u64,
    pub window_suspect: bool,
}

impl FepEstimate {
    pub fn from_counts(errors: u64, frames: u64, boundary_errors: u64, ci_level: f64) -> Self {
        let p = errors as f64 / frames as f64;
        let z = normal_quantile(0.5 + 0.5 * ci_level);
        let suspect = errors > 0 && boundary_errors as f64 > WINDOW_SUSPECT_SHARE * errors as f64;
        FepEstimate {
            fep: p,
            stderr: (p * (1.0 - p) / frames as f64).sqrt(),
            frames,
            errors,
            ci: wilson_interval(errors, frames, z),
            boundary_errors,
            window_suspect: suspect,
        }
    }
}

/// Wilson score interval for `errors` successes in `frames` trials.
pub fn wilson_interval(errors: u64, frames: u64, z: f64) -> (f64, f64) {
    if frames == 0 {
        return (0.0, 1.0);
    }
    let n = frames as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let den = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / den;
    let half = z / den * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

/// Standard normal quantile (Acklam's rational approximation, polished by
/// one Halley step).
pub fn normal_quantile(p: f64) -> f64 {
    if !(p > 0.0 && p < 1.0) {
        return if p == 0.0 { f64::NEG_INFINITY } else if p == 1.0 { f64::INFINITY } else { f64::NAN };
    }
    const A: [f64; 6] = [-3.969683028665376e1, 2.209460984245205e2, -2.759285104469687e2, 1.383577518672690e2, -3.066479806614716e1, 2.506628277459239];
    const B: [f64; 5] = [-5.447609879822406e1, 1.615858368580409e2, -1.556989798598866e2, 6.680131188771972e1, -1.328068155288572e1];
    const C: [f64; 6] = [-7.784894002430293e-3, -3.223964580411365e-1, -2.400758277161838, -2.549732539343734, 4.374664141464968, 2.938163982698783];
    const D: [f64; 4] = [7.784695709041462e-3, 3.224671290700398e-1, 2.445134137142996, 3.754408661907416];
    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    let x = if p < 0.02425 {
        tail((-2.0 * p.ln()).sqrt())
    } else if p > 1.0 - 0.02425 {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    };
    let e = 0.5 * libm::erfc(-x / core::f64::consts::SQRT_2) - p;
    let u = e * (2.0 * core::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
    x - u / (1.0 + x * u / 2.0)
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Index of the candidate nearest to `y`; ties go to the lowest index.
pub fn ml_decode(y: &[f64], candidates: &[Vec<f64>]) -> Result<usize, Error> {
    let mut best = (0usize, f64::INFINITY);
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    for (i, c) in candidates.iter().enumerate() {
        if c.len() != y.len() {
            return Err(Error::DimensionMismatch { expected: y.len(), got: c.len() });
        }
        let d = dist2(y, c);
        if d < best.1 {
            best = (i, d);
        }
    }
    Ok(best.0)
}

/// [`ml_decode`] over candidates stored row after row in `flat`.
fn ml_decode_flat(y: &[f64], flat: &[f64]) -> usize {
    let n = y.len();
    let mut best = (0usize, f64::INFINITY);
    for (i, c) in flat.chunks_exact(n).enumerate() {
        let d = dist2(y, c);
        if d < best.1 {
            best = (i, d);
        }
    }
    best.0
}

/// Nearest point of `{B z : ‖z‖_∞ ≤ w}` by Schnorr–Euchner enumeration on
/// the QR factor of `B`.
#[derive(Clone, Debug)]
pub struct BoxDecoder {
    n: usize,
    q: Vec<f64>,
    r: Vec<f64>,
    window: i64,
}

impl BoxDecoder {
    pub fn new(b: &Matrix, window: u32) -> Self {
        let n = b.dim();
        // modified Gram–Schmidt on the columns
        let mut q = vec![0.0; n * n];
        let mut r = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                q[k * n + i] = b.get(k, i);
            }
        }
        for i in 0..n {
            let norm = (0..n).map(|k| q[k * n + i] * q[k * n + i]).sum::<f64>().sqrt();
            r[i * n + i] = norm;
            if norm > 0.0 {
                for k in 0..n {
                    q[k * n + i] /= norm;
                }
            }
            for j in i + 1..n {
                let dot: f64 = (0..n).map(|k| q[k * n + i] * q[k * n + j]).sum();
                r[i * n + j] = dot;
                for k in 0..n {
                    q[k * n + j] -= dot * q[k * n + i];
                }
            }
        }
        BoxDecoder { n, q, r, window: window as i64 }
    }

    /// Closest box point to `y` and its squared distance. The origin wins
    /// ties, so a decision is wrong only if some `z ≠ 0` is strictly closer.
    pub fn decode(&self, y: &[f64], z: &mut [i64]) -> f64 {
        let n = self.n;
        let w = self.window;
        let yq: Vec<f64> = (0..n).map(|i| (0..n).map(|k| self.q[k * n + i] * y[k]).sum()).collect();
        let mut best_d = dist2(y, &vec![0.0; n]);
        for v in z.iter_mut() {
            *v = 0;
        }
        let mut cur = vec![0i64; n];
        let mut center = vec![0.0; n];
        let mut partial = vec![0.0; n + 1];
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];

        let enter = |i: usize, cur: &mut [i64], center: &mut [f64], lo: &mut [i64], hi: &mut [i64]| {
            let mut s = yq[i];
            for j in i + 1..n {
                s -= self.r[i * n + j] * cur[j] as f64;
            }
            let rii = self.r[i * n + i];
            center[i] = if rii > 0.0 { s / rii } else { 0.0 };
            let first = libm::round(center[i]).clamp(-(w as f64), w as f64) as i64;
            cur[i] = first;
            lo[i] = first - 1;
            hi[i] = first + 1;
        };
        // next value at level `i` in order of distance from its center
        let advance = |i: usize, cur: &mut [i64], center: &[f64], lo: &mut [i64], hi: &mut [i64]| -> bool {
            let c = center[i];
            let pick = match (lo[i] >= -w, hi[i] <= w) {
                (false, false) => return false,
                (true, false) => lo[i],
                (false, true) => hi[i],
                (true, true) if c - lo[i] as f64 <= hi[i] as f64 - c => lo[i],
                (true, true) => hi[i],
            };
            if pick == lo[i] {
                lo[i] -= 1;
            } else {
                hi[i] += 1;
            }
            cur[i] = pick;
            true
        };

        let mut i = n - 1;
        enter(i, &mut cur, &mut center, &mut lo, &mut hi);
        loop {
            let rii = self.r[i * n + i];
            let diff = center[i] - cur[i] as f64;
            let d = partial[i + 1] + rii * rii * diff * diff;
            if d < best_d {
                if i > 0 {
                    partial[i] = d;
                    i -= 1;
                    enter(i, &mut cur, &mut center, &mut lo, &mut hi);
                    continue;
                }
                best_d = d;
                z.copy_from_slice(&cur);
                if advance(0, &mut cur, &center, &mut lo, &mut hi) {
                    continue;
                }
            }
            // remaining siblings are no closer; climb
            loop {
                i += 1;
                if i >= n {
                    return best_d;
                }
                if advance(i, &mut cur, &center, &mut lo, &mut hi) {
                    break;
                }
            }
        }
    }
}

fn check_dims(c: &Constellation, ch: &ChannelParams) -> Result<(), Error> {
    ch.validate()?;
    if c.dim() != ch.n {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: ch.n });
    }
    Ok(())
}

fn run_frames<E: Executor>(cfg: &SimConfig, exec: &E, frame: &(dyn Fn(u64) -> (bool, bool) + Sync)) -> FepEstimate {
    let jobs = cfg.frames.div_ceil(CHUNK) as usize;
    let counts = exec.run(jobs, &|j: usize| {
        let start = j as u64 * CHUNK;
        let end = (start + CHUNK).min(cfg.frames);
        let (mut e, mut b) = (0u64, 0u64);
        for f in start..end {
            let (err, boundary) = frame(f);
            e += err as u64;
            b += (err && boundary) as u64;
        }
        (e, b)
    });
    let (errors, boundary) = counts.into_iter().fold((0, 0), |a, c| (a.0 + c.0, a.1 + c.1));
    FepEstimate::from_counts(errors, cfg.frames, boundary, cfg.ci_level)
}

/// FEP of a finite constellation by exhaustive ML decoding.
pub fn simulate_fep_finite(c: &Constellation, ch: &ChannelParams, cfg: &SimConfig) -> Result<FepEstimate, Error> {
    simulate_fep_finite_with(c, ch, cfg, &Sequential)
}

pub fn simulate_fep_finite_with<E: Executor>(c: &Constellation, ch: &ChannelParams, cfg: &SimConfig, exec: &E) -> Result<FepEstimate, Error> {
    cfg.validate()?;
    check_dims(c, ch)?;
    if !matches!(c.size(), Size::Finite(_)) {
        return Err(Error::InvalidParameter("finite simulation needs a finite constellation"));
    }
    let points = c.enumerate_points_capped(ENUMERATION_CAP)?;
    let count = points.len();
    if count == 1 {
        return Ok(FepEstimate::from_counts(0, cfg.frames, 0, cfg.ci_level));
    }
    let n = ch.n;
    let flat: Vec<f64> = points.iter().flatten().copied().collect();
    let sampler = FadingSampler::new(ch.m, n)?;
    let sigma = ch.sigma();
    let pick = Uniform::new(0usize, count);
    let frame = |f: u64| -> (bool, bool) {
        let mut rng = RandomStream::new(cfg.seed, f);
        let h = sampler.sample(&mut rng);
        let faded: Vec<f64> = flat.chunks_exact(n).flat_map(|p| p.iter().zip(&h.h).map(|(x, g)| x * g)).collect();
        let mut y = vec![0.0; n];
        for _ in 0..ch.l {
            let sent = pick.sample(&mut rng);
            for (k, yk) in y.iter_mut().enumerate() {
                let z: f64 = StandardNormal.sample(&mut rng);
                *yk = faded[sent * n + k] + sigma * z;
            }
            if ml_decode_flat(&y, &faded) != sent {
                return (true, false);
            }
        }
        (false, false)
    };
    Ok(run_frames(cfg, exec, &frame))
}

/// FEP of an infinite lattice: the origin is sent every symbol and decoded
/// over the faded points with `‖z‖_∞ ≤ decode_window`.
pub fn simulate_fep_infinite(c: &Constellation, ch: &ChannelParams, cfg: &SimConfig) -> Result<FepEstimate, Error> {
    simulate_fep_infinite_with(c, ch, cfg, &Sequential)
}

pub fn simulate_fep_infinite_with<E: Executor>(c: &Constellation, ch: &ChannelParams, cfg: &SimConfig, exec: &E) -> Result<FepEstimate, Error> {
    cfg.validate()?;
    check_dims(c, ch)?;
    let n = ch.n;
    let sampler = FadingSampler::new(ch.m, n)?;
    let sigma = ch.sigma();
    let w = cfg.decode_window as i64;
    let gen = c.generator().matrix().clone();
    let frame = |f: u64| -> (bool, bool) {
        let mut rng = RandomStream::new(cfg.seed, f);
        let h: FadingRealization = sampler.sample(&mut rng);
        let dec = BoxDecoder::new(&gen.scale_rows(&h.h), cfg.decode_window);
        let mut y = vec![0.0; n];
        let mut z = vec![0i64; n];
        for _ in 0..ch.l {
            for yk in y.iter_mut() {
                let e: f64 = StandardNormal.sample(&mut rng);
                *yk = sigma * e;
            }
            dec.decode(&y, &mut z);
            if z.iter().any(|&v| v != 0) {
                return (true, z.iter().any(|v| v.abs() == w));
            }
        }
        (false, false)
    };
    Ok(run_frames(cfg, exec, &frame))
}
