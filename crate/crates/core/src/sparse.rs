//! Sparse complex operators in sorted coordinate form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::{CMatrix, Complex};

/// Entries with modulus below this are never stored.
pub const ZERO_FLOOR: f64 = 1e-15;

/// Complex sparse matrix; entries sorted by `(row, col)`, unique, and all of
/// modulus at least [`ZERO_FLOOR`].
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, Complex)>,
}

impl SparseOperator {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, entries: Vec::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex::new(1.0, 0.0))
    }

    pub fn scalar(dim: usize, value: Complex) -> Self {
        let entries = if value.norm() < ZERO_FLOOR {
            Vec::new()
        } else {
            (0..dim).map(|i| (i, i, value)).collect()
        };
        Self { nrows: dim, ncols: dim, entries }
    }

    /// Sums duplicate coordinates and drops entries below the floor.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), Complex> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r}, {c}) outside {nrows}x{ncols}"
                )));
            }
            *acc.entry((r, c)).or_insert(Complex::new(0.0, 0.0)) += v;
        }
        Ok(Self::from_map(nrows, ncols, acc))
    }

    fn from_map(nrows: usize, ncols: usize, acc: BTreeMap<(usize, usize), Complex>) -> Self {
        let entries = acc
            .into_iter()
            .filter(|(_, v)| v.norm() >= ZERO_FLOOR)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Self { nrows, ncols, entries }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Complex)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map(|i| self.entries[i].2)
            .unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        let mut acc = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            acc.insert((c, r), v.conj());
        }
        Self::from_map(self.ncols, self.nrows, acc)
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut acc = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            acc.insert((r, c), v * s);
        }
        Self::from_map(self.nrows, self.ncols, acc)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Self, s: Complex) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut acc: BTreeMap<(usize, usize), Complex> =
            self.entries.iter().map(|&(r, c, v)| ((r, c), v)).collect();
        for &(r, c, v) in &other.entries {
            *acc.entry((r, c)).or_insert(Complex::new(0.0, 0.0)) += v * s;
        }
        Ok(Self::from_map(self.nrows, self.ncols, acc))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, Complex::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, Complex::new(-1.0, 0.0))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        // row offsets of `other`
        let mut starts = vec![0usize; other.nrows + 1];
        for &(r, _, _) in &other.entries {
            starts[r + 1] += 1;
        }
        for i in 0..other.nrows {
            starts[i + 1] += starts[i];
        }
        let mut acc: BTreeMap<(usize, usize), Complex> = BTreeMap::new();
        for &(r, k, a) in &self.entries {
            for &(_, c, b) in &other.entries[starts[k]..starts[k + 1]] {
                *acc.entry((r, c)).or_insert(Complex::new(0.0, 0.0)) += a * b;
            }
        }
        Ok(Self::from_map(self.nrows, other.ncols, acc))
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `self * x`.
    pub fn apply(&self, x: &[Complex]) -> Result<Vec<Complex>> {
        if x.len() != self.ncols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.ncols
            )));
        }
        let mut y = vec![Complex::new(0.0, 0.0); self.nrows];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        Ok(y)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.nrows, self.ncols);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }

    pub fn from_dense(m: &CMatrix) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if m[(r, c)].norm() >= ZERO_FLOOR {
                    entries.push((r, c, m[(r, c)]));
                }
            }
        }
        Self { nrows: m.nrows(), ncols: m.ncols(), entries }
    }

    /// Largest stored modulus (0 for an empty operator).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, e| acc.max(e.2.norm()))
    }

    /// `max |self - self^†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.sub(&self.adjoint()).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }

    /// `true` when the operator is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|&(r, c, _)| r == c)
    }
}
