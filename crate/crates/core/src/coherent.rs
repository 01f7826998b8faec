//! Orthonormal frames, wedge coordinates and coherent states in a sector.
//!
//! A frame is `N-1` orthonormal rows `z[1..N-1]` in C^N. Its wedge coordinate
//! on a sorted β-subset `I` is `w_β(I) = det(Z[1..β, I]) / sqrt(β!)`, and the
//! coherent state in sector `C` is
//!
//! ```text
//! |z> = Π_β (1/C_β!) (β! Σ_I w_β(I) a†[β]_I)^{C_β} |0>
//! ```
//!
//! kept unnormalized. In the occupation basis this gives the amplitude
//! `Π_{β,I} (β! w_β(I))^{n_I} / sqrt(n_I!)`.

use alloc::format;
use alloc::vec::Vec;

use rand_core::RngCore;
use rand_distr::{Distribution, StandardNormal};

use crate::combinatorics::{factorial, subsets};
use crate::error::{Error, Result};
use crate::fock::{FockVector, SchwingerRealization, SectorBasis};
use crate::linalg::{expm_i_hermitian, max_abs};
use crate::{CMatrix, Complex};

/// Gram residual above which a frame is rejected.
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// `N-1` orthonormal rows in C^N.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    rows: CMatrix,
    gram_residual: f64,
}

/// `max |Z Z^† - 1|`.
fn gram_residual(rows: &CMatrix) -> f64 {
    let k = rows.nrows();
    max_abs(&(rows * rows.adjoint() - CMatrix::identity(k, k)))
}

/// Checks orthonormality of `rows` (`N-1` vectors of length `N`).
pub fn validate_frame(rows: &[Vec<Complex>]) -> Result<Frame> {
    let n = rows.len() + 1;
    if n < 2 {
        return Err(Error::GroupRankTooSmall { n });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(format!(
            "frame row of length {} for N = {n}",
            bad.len()
        )));
    }
    Frame::from_matrix(CMatrix::from_fn(n - 1, n, |a, i| rows[a][i]))
}

impl Frame {
    /// Accepts an `(N-1) x N` matrix whose rows are the frame.
    pub fn from_matrix(rows: CMatrix) -> Result<Self> {
        let n = rows.ncols();
        if n < 2 {
            return Err(Error::GroupRankTooSmall { n });
        }
        if rows.nrows() + 1 != n {
            return Err(Error::ShapeMismatch(format!(
                "{} rows of length {n}; a frame has N-1 rows",
                rows.nrows()
            )));
        }
        let gram_residual = gram_residual(&rows);
        if gram_residual.is_nan() || gram_residual > FRAME_TOLERANCE {
            return Err(Error::FrameNotOrthonormal { residual: gram_residual });
        }
        Ok(Self { rows, gram_residual })
    }

    /// `(e_1, .., e_{N-1})`.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::GroupRankTooSmall { n });
        }
        Self::from_matrix(CMatrix::identity(n - 1, n))
    }

    pub fn n(&self) -> usize {
        self.rows.ncols()
    }

    pub fn rows(&self) -> &CMatrix {
        &self.rows
    }

    pub fn row(&self, alpha: usize) -> Vec<Complex> {
        self.rows.row(alpha).iter().copied().collect()
    }

    pub fn gram_residual(&self) -> f64 {
        self.gram_residual
    }

    /// Frame with every row mapped by `u`: `z'[α]^i = Σ_j u_ij z[α]^j`.
    pub fn transformed(&self, u: &CMatrix) -> Result<Self> {
        Self::from_matrix(&self.rows * u.transpose())
    }
}

fn minor(rows: &CMatrix, beta: usize, cols: &[usize]) -> Complex {
    CMatrix::from_fn(beta, beta, |r, c| rows[(r, cols[c])]).determinant()
}

/// `w_β(I)` for every β and canonical β-subset `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeCoordinates {
    n: usize,
    /// Index β-1: values in the canonical (lexicographic) subset order.
    values: Vec<Vec<Complex>>,
}

pub fn wedge_coordinates(frame: &Frame) -> WedgeCoordinates {
    let n = frame.n();
    let values = (1..n)
        .map(|beta| {
            let scale = 1.0 / libm::sqrt(factorial(beta));
            subsets(n, beta).iter().map(|set| minor(&frame.rows, beta, set) * scale).collect()
        })
        .collect();
    WedgeCoordinates { n, values }
}

impl WedgeCoordinates {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinates of degree β, aligned with `subsets(N, β)`.
    pub fn degree(&self, beta: usize) -> &[Complex] {
        &self.values[beta - 1]
    }

    /// `w_β(I)` for a sorted 0-based subset.
    pub fn get(&self, beta: usize, set: &[usize]) -> Option<Complex> {
        let sets = subsets(self.n, beta);
        sets.iter().position(|s| s == set).map(|i| self.values[beta - 1][i])
    }

    /// `max_β |Σ_I β! |w_β(I)|² - 1|`.
    pub fn norm_residual(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let f = factorial(k + 1);
                libm::fabs(w.iter().map(|x| f * x.norm_sqr()).sum::<f64>() - 1.0)
            })
            .fold(0.0, f64::max)
    }
}

/// The top wedge contracted with ε: `d_k = (-1)^{N-k} det(Z without column k)`
/// (1-based k). A unit vector orthogonal to every frame row.
pub fn dual_vector(frame: &Frame) -> Vec<Complex> {
    let n = frame.n();
    (0..n)
        .map(|k| {
            let cols: Vec<usize> = (0..n).filter(|&c| c != k).collect();
            let sign = if (n - 1 - k).is_multiple_of(2) { 1.0 } else { -1.0 };
            minor(&frame.rows, n - 1, &cols) * sign
        })
        .collect()
}

/// `max_α |Σ_k d_k z[α]^k|`.
pub fn dual_orthogonality_residual(frame: &Frame) -> f64 {
    let d = dual_vector(frame);
    (0..frame.n() - 1)
        .map(|a| d.iter().zip(frame.rows.row(a).iter()).map(|(x, z)| x * z).sum::<Complex>().norm())
        .fold(0.0, f64::max)
}

/// The frame rows followed by the conjugated dual vector. The last row is the
/// cofactor expansion along row N, so the determinant is `Σ_k |d_k|² = 1`.
pub fn complete_unitary(frame: &Frame) -> CMatrix {
    let n = frame.n();
    let dual = dual_vector(frame);
    CMatrix::from_fn(n, n, |r, c| if r + 1 < n { frame.rows[(r, c)] } else { dual[c].conj() })
}

fn check_frame_sector(frame: &Frame, sector: &SectorBasis) -> Result<()> {
    if frame.n() != sector.label().n() {
        return Err(Error::ShapeMismatch(format!(
            "frame for N = {}, sector for N = {}",
            frame.n(),
            sector.label().n()
        )));
    }
    Ok(())
}

/// The unnormalized coherent state of `frame` in `sector`.
pub fn coherent_vector(frame: &Frame, sector: &SectorBasis) -> Result<FockVector> {
    check_frame_sector(frame, sector)?;
    let w = wedge_coordinates(frame);
    // per mode: β! w_β(I), in sector mode order
    let coeffs: Vec<Complex> = sector
        .modes()
        .iter()
        .map(|m| {
            let sets = subsets(frame.n(), m.alpha);
            let i = sets.iter().position(|s| *s == m.set).expect("canonical mode");
            w.degree(m.alpha)[i] * factorial(m.alpha)
        })
        .collect();
    let amplitudes = sector
        .states()
        .iter()
        .map(|occ| {
            occ.iter().zip(&coeffs).fold(Complex::new(1.0, 0.0), |acc, (&k, c)| {
                if k == 0 {
                    acc
                } else {
                    acc * c.powu(k) / libm::sqrt(factorial(k as usize))
                }
            })
        })
        .collect();
    Ok(FockVector::from_amplitudes(amplitudes))
}

/// `<z_a | z_b>` in `sector`.
pub fn overlap(a: &Frame, b: &Frame, sector: &SectorBasis) -> Result<Complex> {
    coherent_vector(a, sector)?.inner(&coherent_vector(b, sector)?)
}

/// First `N-1` rows of a Haar-random unitary: QR of a complex Gaussian
/// matrix, with `Q` rephased so that `R` has a positive diagonal.
pub fn haar_frame<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Frame> {
    if n < 2 {
        return Err(Error::GroupRankTooSmall { n });
    }
    let scale = core::f64::consts::FRAC_1_SQRT_2;
    let mut g = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            g[(i, j)] = Complex::new(re * scale, im * scale);
        }
    }
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm > 0.0 {
            let phase = d / norm;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    Frame::from_matrix(q.rows(0, n - 1).into_owned())
}

/// `‖ |z'> - exp(i θ·Q) |z> ‖ / ‖ |z> ‖` with `z' = z exp(i θ·t)^T`.
pub fn covariance_residual(frame: &Frame, theta: &[f64], realization: &SchwingerRealization) -> Result<f64> {
    let sector = &realization.sector;
    let u = realization.algebra.group_element(theta)?;
    let moved = frame.transformed(&u)?;
    let z = coherent_vector(frame, sector)?;
    let z_moved = coherent_vector(&moved, sector)?;
    let big_u = expm_i_hermitian(&realization.generator_combination(theta)?);
    let rotated = &big_u * nalgebra::DVector::from_column_slice(z.amplitudes());
    let diff = nalgebra::DVector::from_column_slice(z_moved.amplitudes()) - rotated;
    let norm = z.norm();
    Ok(if norm == 0.0 { diff.norm() } else { diff.norm() / norm })
}
