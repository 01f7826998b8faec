//! The Lie algebra su(N): generalized Gell-Mann generators, structure
//! constants and the antisymmetric fundamental representations.
//!
//! Generators are normalized as `tr(t^a t^b) = δ^{ab}/2`, so that for `N = 2`
//! they are the Pauli matrices divided by two. Their order is fixed:
//!
//! 1. symmetric `(E_jk + E_kj)/2` for all pairs `j < k`, lexicographic;
//! 2. antisymmetric `(-i E_jk + i E_kj)/2` for all pairs `j < k`, lexicographic;
//! 3. diagonal `diag(1, .., 1, -l, 0, ..)/sqrt(2 l (l + 1))` for `l = 1..N-1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::combinatorics::{sort_with_sign, subsets};
use crate::error::{Error, Result};
use crate::linalg::{commutator, expm_i_hermitian, max_abs};
use crate::{CMatrix, Complex};

/// Entries of `f` below this magnitude are treated as structural zeros.
const F_ZERO: f64 = 1e-13;
/// Largest imaginary residue tolerated when extracting `f` from traces.
const F_IMAG_TOL: f64 = 1e-10;

/// Totally antisymmetric structure constants, stored for `a < b < c` only.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), f64>,
}

impl StructureConstants {
    /// Number of generators.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero entries with `a < b < c`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `f^{abc}` for arbitrary index order.
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        let mut idx = [a, b, c];
        match sort_with_sign(&mut idx) {
            None => 0.0,
            Some(sign) => {
                let v = self.entries.get(&(idx[0], idx[1], idx[2])).copied().unwrap_or(0.0);
                f64::from(sign) * v
            }
        }
    }

    /// Full `dim^3` tensor, row-major in `(a, b, c)`.
    pub fn dense(&self) -> Vec<f64> {
        let d = self.dim;
        let mut out = alloc::vec![0.0; d * d * d];
        for (&(a, b, c), &v) in &self.entries {
            for (x, y, z, s) in [
                (a, b, c, 1.0),
                (b, c, a, 1.0),
                (c, a, b, 1.0),
                (b, a, c, -1.0),
                (a, c, b, -1.0),
                (c, b, a, -1.0),
            ] {
                out[(x * d + y) * d + z] = s * v;
            }
        }
        out
    }

    /// Largest violation of the Jacobi identity
    /// `Σ_d f^{abd} f^{dce} + f^{bcd} f^{dae} + f^{cad} f^{dbe} = 0`.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let f = self.dense();
        let at = |a: usize, b: usize, c: usize| f[(a * d + b) * d + c];
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let mut s = 0.0;
                        for k in 0..d {
                            s += at(a, b, k) * at(k, c, e)
                                + at(b, c, k) * at(k, a, e)
                                + at(c, a, k) * at(k, b, e);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }
}

/// The `N² - 1` fundamental generators of su(N) with their structure constants.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    pub n: usize,
    pub generators: Vec<CMatrix>,
    pub f: StructureConstants,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// `exp(i Σ_a θ^a t^a)` in the defining representation.
    pub fn group_element(&self, theta: &[f64]) -> Result<CMatrix> {
        group_element(&self.generators, theta)
    }
}

/// Builds the generalized Gell-Mann basis of su(N).
pub fn gellmann(n: usize) -> Result<AlgebraBasis> {
    if n < 2 {
        return Err(Error::GroupRankTooSmall { n });
    }
    let half = Complex::new(0.5, 0.0);
    let mut generators = Vec::with_capacity(n * n - 1);
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(j, k)] = half;
        m[(k, j)] = half;
        generators.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(j, k)] = Complex::new(0.0, -0.5);
        m[(k, j)] = Complex::new(0.0, 0.5);
        generators.push(m);
    }
    for l in 1..n {
        let norm = 1.0 / libm::sqrt(2.0 * (l * (l + 1)) as f64);
        let mut m = CMatrix::zeros(n, n);
        for i in 0..l {
            m[(i, i)] = Complex::new(norm, 0.0);
        }
        m[(l, l)] = Complex::new(-(l as f64) * norm, 0.0);
        generators.push(m);
    }
    let f = structure_constants(&generators)?;
    Ok(AlgebraBasis { n, generators, f })
}

/// `f^{abc} = -2i tr([t^a, t^b] t^c)`, evaluated for every `a < b < c`.
///
/// Assumes the `tr(t^a t^b) = δ^{ab}/2` normalization.
pub fn structure_constants(generators: &[CMatrix]) -> Result<StructureConstants> {
    let dim = generators.len();
    let mut entries = BTreeMap::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let comm = commutator(&generators[a], &generators[b]);
            for c in b + 1..dim {
                let tr = (&comm * &generators[c]).trace();
                let v = Complex::new(0.0, -2.0) * tr;
                if v.im.abs() > F_IMAG_TOL {
                    return Err(Error::InternalConsistency(format!(
                        "f^({a},{b},{c}) has imaginary part {:e}",
                        v.im
                    )));
                }
                if v.re.abs() > F_ZERO {
                    entries.insert((a, b, c), v.re);
                }
            }
        }
    }
    Ok(StructureConstants { dim, entries })
}

/// The α-th fundamental representation: su(N) acting on the α-th exterior
/// power of the defining representation.
///
/// The carrier basis is the list of sorted α-subsets of `0..N` in
/// lexicographic order; `e_{i1} ∧ .. ∧ e_{iα}` for unsorted indices equals the
/// sorting sign times the canonical basis vector.
#[derive(Debug, Clone)]
pub struct WedgeRep {
    pub n: usize,
    pub alpha: usize,
    pub basis_sets: Vec<Vec<usize>>,
    pub matrices: Vec<CMatrix>,
}

impl WedgeRep {
    pub fn dim(&self) -> usize {
        self.basis_sets.len()
    }

    pub fn group_element(&self, theta: &[f64]) -> Result<CMatrix> {
        group_element(&self.matrices, theta)
    }

    /// Position of a sorted subset in `basis_sets`.
    pub fn index_of(&self, set: &[usize]) -> Option<usize> {
        self.basis_sets.binary_search_by(|s| s.as_slice().cmp(set)).ok()
    }
}

/// Builds `Λ^a[α]` for every generator of `basis`.
pub fn wedge_rep(basis: &AlgebraBasis, alpha: usize) -> Result<WedgeRep> {
    let n = basis.n;
    if alpha == 0 || alpha >= n {
        return Err(Error::AlphaOutOfRange { alpha, max: n - 1 });
    }
    let basis_sets = subsets(n, alpha);
    let matrices = basis
        .generators
        .iter()
        .map(|t| induced_wedge_matrix(t, &basis_sets))
        .collect();
    Ok(WedgeRep { n, alpha, basis_sets, matrices })
}

/// Derivation action of `t` on the exterior power spanned by `sets`:
/// `t (e_{j1} ∧ .. ∧ e_{jα}) = Σ_k e_{j1} ∧ .. ∧ t e_{jk} ∧ .. ∧ e_{jα}`.
pub fn induced_wedge_matrix(t: &CMatrix, sets: &[Vec<usize>]) -> CMatrix {
    let d = sets.len();
    let n = t.nrows();
    let mut m = CMatrix::zeros(d, d);
    for (col, set) in sets.iter().enumerate() {
        for pos in 0..set.len() {
            for i in 0..n {
                let amp = t[(i, set[pos])];
                if amp == Complex::new(0.0, 0.0) {
                    continue;
                }
                let mut image = set.clone();
                image[pos] = i;
                let Some(sign) = sort_with_sign(&mut image) else {
                    continue;
                };
                let row = sets
                    .binary_search_by(|s| s.as_slice().cmp(image.as_slice()))
                    .expect("sorted subset is in the basis");
                m[(row, col)] += amp * f64::from(sign);
            }
        }
    }
    m
}

/// `exp(i Σ_a θ^a M^a)` for Hermitian `M^a`.
pub fn group_element(matrices: &[CMatrix], theta: &[f64]) -> Result<CMatrix> {
    if theta.len() != matrices.len() {
        return Err(Error::ShapeMismatch(format!(
            "theta has {} components, algebra has {}",
            theta.len(),
            matrices.len()
        )));
    }
    let d = matrices.first().map_or(0, |m| m.nrows());
    let mut h = CMatrix::zeros(d, d);
    for (m, &th) in matrices.iter().zip(theta) {
        h += m * Complex::new(th, 0.0);
    }
    Ok(expm_i_hermitian(&h))
}

/// `max_{a<b} ‖[M^a, M^b] - i Σ_c f^{abc} M^c‖_max`.
pub fn closure_residual(matrices: &[CMatrix], f: &StructureConstants) -> f64 {
    let d = matrices.len();
    let mut worst: f64 = 0.0;
    for a in 0..d {
        for b in a + 1..d {
            let mut r = commutator(&matrices[a], &matrices[b]);
            for (c, m) in matrices.iter().enumerate() {
                let fabc = f.get(a, b, c);
                if fabc != 0.0 {
                    r -= m * Complex::new(0.0, fabc);
                }
            }
            worst = worst.max(max_abs(&r));
        }
    }
    worst
}

/// Trace-form check: returns `(k, residual)` where `tr(M^a M^b) ≈ k δ^{ab}`,
/// `k` the mean diagonal value and `residual` the largest deviation.
pub fn trace_orthogonality(matrices: &[CMatrix]) -> (f64, f64) {
    let d = matrices.len();
    if d == 0 {
        return (0.0, 0.0);
    }
    let gram: Vec<Vec<Complex>> = (0..d)
        .map(|a| (0..d).map(|b| (&matrices[a] * &matrices[b]).trace()).collect())
        .collect();
    let k = (0..d).map(|a| gram[a][a].re).sum::<f64>() / d as f64;
    let mut worst: f64 = 0.0;
    for (a, row) in gram.iter().enumerate() {
        for (b, g) in row.iter().enumerate() {
            let target = if a == b { k } else { 0.0 };
            worst = worst.max((g - Complex::new(target, 0.0)).norm());
        }
    }
    (k, worst)
}
