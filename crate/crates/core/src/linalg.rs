//! Dense complex helpers on top of nalgebra.

use nalgebra::SymmetricEigen;

use crate::{CMatrix, Complex};

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `max |M - M^†|`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// `max |U^† U - 1|`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let n = u.ncols();
    max_abs(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

/// `exp(i H)` for Hermitian `H`, through the spectral decomposition
/// `H = V diag(λ) V^†`.
pub fn expm_i_hermitian(h: &CMatrix) -> CMatrix {
    let n = h.nrows();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    // symmetrize so the eigensolver sees an exactly Hermitian input
    let sym = (h + h.adjoint()) * Complex::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let v = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(
        &eig.eigenvalues.map(|l| Complex::new(libm::cos(l), libm::sin(l))),
    );
    v * phases * v.adjoint()
}

/// Real spectrum of a Hermitian matrix, sorted in descending order.
pub fn hermitian_eigenvalues_desc(m: &CMatrix) -> alloc::vec::Vec<f64> {
    let sym = (m + m.adjoint()) * Complex::new(0.5, 0.0);
    let mut ev: alloc::vec::Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}
