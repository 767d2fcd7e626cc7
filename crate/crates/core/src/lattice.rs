//! Lattice generators, finite K-PAM carvings and their geometry.
//!
//! Matrices are stored row-major and points are `M u` with `u` an integer
//! column vector, so the basis vectors are the columns.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::FadingRealization;
use crate::Error;

/// Default cap on `K^N` for enumeration.
pub const ENUMERATION_CAP: u64 = 1 << 24;
/// Default integer window for infinite-lattice searches.
pub const DEFAULT_WINDOW: u32 = 3;

/// Square real matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
                .unwrap_or(k);
            if a[p * n + k] == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let piv = a[k * n + k];
            det *= piv;
            for i in k + 1..n {
                let f = a[i * n + k] / piv;
                for j in k..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
        det
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        Matrix { n, data }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Matrix { n, data }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `diag(d) · self`.
    pub fn scale_rows(&self, d: &[f64]) -> Matrix {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] *= d[i];
            }
        }
        Matrix { n, data }
    }

    pub fn column_norm(&self, c: usize) -> f64 {
        (0..self.n).map(|r| self.get(r, c).powi(2)).sum::<f64>().sqrt()
    }

    /// `max |QᵀQ - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.transpose().mul(self);
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g.get(i, j) - e).abs());
            }
        }
        worst
    }
}

/// Lattice basis with `|det| = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix(Matrix);

impl GeneratorMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.n
    }
}

/// Scales `raw` to unit determinant.
pub fn normalize_generator(raw: &Matrix) -> Result<GeneratorMatrix, Error> {
    let det = raw.det();
    if !(det.abs() > 1e-12) {
        return Err(Error::SingularMatrix(det.abs()));
    }
    let s = det.abs().powf(-1.0 / raw.n as f64);
    Ok(GeneratorMatrix(raw.scale(s)))
}

pub fn normalize_rows(rows: &[Vec<f64>]) -> Result<GeneratorMatrix, Error> {
    normalize_generator(&Matrix::from_rows(rows)?)
}

pub fn zn_generator(n: usize) -> GeneratorMatrix {
    GeneratorMatrix(Matrix::identity(n))
}

/// Rotation applied to `Z^n`.
#[derive(Clone, Debug, PartialEq)]
pub enum RotationSpec {
    /// Built-in full-diversity rotation for `n ∈ {2, 4, 8}`.
    Cyclotomic,
    /// User-supplied orthogonal matrix.
    Matrix(Matrix),
}

/// Rotation angle of the two-dimensional built-in, `atan(2)/2`. It
/// maximizes the minimum product distance of `Z²`, reaching `1/√5`.
pub const ROTATION_ANGLE_2D: f64 = 0.553_574_358_897_045_3;

/// Built-in rotation for `n ∈ {2, 4, 8}`.
///
/// `n = 2` is the plane rotation by [`ROTATION_ANGLE_2D`]. `n = 4, 8` use
/// `√(2/n) cos(π(2j-1)(2k-1)/(4n))`, the real cyclotomic construction from
/// `Q(ζ_{4n})⁺`, which is orthogonal and has full diversity on `Z^n`.
pub fn cyclotomic_rotation(n: usize) -> Result<Matrix, Error> {
    match n {
        2 => {
            let (s, c) = ROTATION_ANGLE_2D.sin_cos();
            Matrix::from_rows(&[vec![c, -s], vec![s, c]])
        }
        4 | 8 => {
            let nf = n as f64;
            let rows: Vec<Vec<f64>> = (1..=n)
                .map(|j| {
                    (1..=n)
                        .map(|k| {
                            let arg = core::f64::consts::PI * ((2 * j - 1) * (2 * k - 1)) as f64 / (4.0 * nf);
                            (2.0 / nf).sqrt() * arg.cos()
                        })
                        .collect()
                })
                .collect();
            Matrix::from_rows(&rows)
        }
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

pub fn rotated_zn_generator(n: usize, rotation: &RotationSpec) -> Result<GeneratorMatrix, Error> {
    let q = match rotation {
        RotationSpec::Cyclotomic => cyclotomic_rotation(n)?,
        RotationSpec::Matrix(m) => {
            if m.n != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.n });
            }
            m.clone()
        }
    };
    let defect = q.orthogonality_defect();
    if defect > 1e-9 {
        return Err(Error::NotOrthogonal(defect));
    }
    Ok(GeneratorMatrix(q))
}

/// Hexagonal lattice with unit determinant.
pub fn a2_generator() -> GeneratorMatrix {
    let s3 = 3f64.sqrt();
    GeneratorMatrix(Matrix {
        n: 2,
        data: vec![(2.0 / s3).sqrt(), (1.0 / (2.0 * s3)).sqrt(), 0.0, (3.0 / (2.0 * s3)).sqrt()],
    })
}

/// Points per dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Size {
    Finite(u32),
    /// Whole lattice; `window` bounds `‖z‖_∞` in searches.
    Infinite { window: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constellation {
    generator: GeneratorMatrix,
    size: Size,
    d_min: Option<f64>,
    w: f64,
}

impl Constellation {
    /// `K`-PAM carving `{M u : u ∈ {0..K-1}^N}`.
    pub fn finite(generator: GeneratorMatrix, k: u32) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::InvalidParameter("K must be at least 1"));
        }
        Ok(Self::build(generator, Size::Finite(k)))
    }

    pub fn infinite(generator: GeneratorMatrix, window: u32) -> Result<Self, Error> {
        if window == 0 {
            return Err(Error::InvalidParameter("search window must be at least 1"));
        }
        Ok(Self::build(generator, Size::Infinite { window }))
    }

    fn build(generator: GeneratorMatrix, size: Size) -> Self {
        let m = generator.matrix();
        let w = (0..m.n).map(|c| m.column_norm(c)).sum::<f64>() / m.n as f64;
        let d_min = shortest_difference(m, size);
        Constellation { generator, size, d_min, w }
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    pub fn size(&self) -> Size {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    /// Minimum distance between distinct points.
    pub fn min_distance(&self) -> Result<f64, Error> {
        self.d_min.ok_or(Error::DegenerateConstellation)
    }

    /// Mean basis-vector norm `W`.
    pub fn mean_basis_norm(&self) -> f64 {
        self.w
    }

    pub fn point_count(&self) -> Option<u128> {
        match self.size {
            Size::Finite(k) => Some((k as u128).pow(self.dim() as u32)),
            Size::Infinite { .. } => None,
        }
    }

    /// All `K^N` points in lexicographic order of `u` (first coordinate
    /// slowest).
    pub fn enumerate_points(&self) -> Result<Vec<Vec<f64>>, Error> {
        self.enumerate_points_capped(ENUMERATION_CAP)
    }

    pub fn enumerate_points_capped(&self, cap: u64) -> Result<Vec<Vec<f64>>, Error> {
        let k = match self.size {
            Size::Finite(k) => k,
            Size::Infinite { .. } => return Err(Error::InvalidParameter("cannot enumerate an infinite lattice")),
        };
        let count = self.point_count().unwrap_or(0);
        if count > cap as u128 {
            return Err(Error::TooLarge { count, cap });
        }
        let m = self.generator.matrix();
        let mut out = Vec::with_capacity(count as usize);
        for_each_box_point(self.dim(), 0, k as i64 - 1, |u| out.push(m.mul_vec(u)));
        Ok(out)
    }

    pub fn fade(&self, h: &FadingRealization) -> Result<FadedConstellation, Error> {
        if h.h.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: h.h.len() });
        }
        let faded = self.generator.matrix().scale_rows(&h.h);
        Ok(FadedConstellation { base: self.clone(), h: h.clone(), faded_generator: faded })
    }
}

/// A constellation seen through one fading realization: `M_f = H M`.
#[derive(Clone, Debug)]
pub struct FadedConstellation {
    pub base: Constellation,
    pub h: FadingRealization,
    pub faded_generator: Matrix,
}

/// Visits every integer vector in `[lo, hi]^n`, first coordinate slowest.
pub fn for_each_box_point<F: FnMut(&[f64])>(n: usize, lo: i64, hi: i64, mut f: F) {
    if hi < lo {
        return;
    }
    let mut u = vec![lo; n];
    let mut uf: Vec<f64> = u.iter().map(|&x| x as f64).collect();
    loop {
        f(&uf);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if u[i] < hi {
                u[i] += 1;
                uf[i] = u[i] as f64;
                break;
            }
            u[i] = lo;
            uf[i] = lo as f64;
        }
    }
}

const DIFFERENCE_CAP: u64 = 1 << 22;

fn shortest_difference(m: &Matrix, size: Size) -> Option<f64> {
    let n = m.n;
    let radius = match size {
        Size::Finite(1) => return None,
        Size::Finite(k) => {
            let full = (k - 1) as u64;
            if (2 * full + 1).checked_pow(n as u32).map_or(false, |c| c <= DIFFERENCE_CAP) {
                full
            } else {
                full.min(DEFAULT_WINDOW as u64)
            }
        }
        Size::Infinite { window } => window as u64,
    } as i64;
    let mut best = f64::INFINITY;
    for_each_box_point(n, -radius, radius, |z| {
        if z.iter().all(|&x| x == 0.0) {
            return;
        }
        let d: f64 = m.mul_vec(z).iter().map(|x| x * x).sum();
        if d < best {
            best = d;
        }
    });
    Some(best.sqrt())
}
