//! Fixed-Casimir Fock sectors and the oscillator realization of su(N).
//!
//! Each family α = 1..N-1 of oscillators carries antisymmetric indices
//! `a[α]^{i1..iα}`. We keep one canonical mode per sorted index set `I`; an
//! ordered-index component is the sorting sign times the canonical one, and
//! vanishes when an index repeats. With that convention the canonical modes
//! are independent bosons, `[a_I, a†_J] = δ_IJ`, and every `1/α!` that the
//! ordered-index sums carry is absorbed by summing over sorted sets only.
//!
//! A sector fixes the family totals `Σ_I n_(α,I) = C_α`, which are the
//! eigenvalues of the (N-1) number-operator Casimirs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::algebra::{gellmann, wedge_rep, AlgebraBasis, StructureConstants, WedgeRep};
use crate::combinatorics::{multichoose, subsets};
use crate::error::{Error, Result};
use crate::sparse::SparseOperator;
use crate::{CMatrix, Complex};

/// Default upper bound on the number of sector states.
pub const DEFAULT_SECTOR_CAP: usize = 5_000_000;

/// Casimir eigenvalues `(C_1, .., C_{N-1})` labelling an irrep of SU(N).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepLabel {
    n: usize,
    c: Vec<u32>,
}

impl IrrepLabel {
    pub fn new(n: usize, c: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::GroupRankTooSmall { n });
        }
        if c.len() != n - 1 {
            return Err(Error::InvalidLabel(format!(
                "SU({n}) needs {} Casimir values, got {}",
                n - 1,
                c.len()
            )));
        }
        Ok(Self { n, c })
    }

    /// The all-zero (trivial) label.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(n, vec![0; n.saturating_sub(1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &[u32] {
        &self.c
    }

    /// `C_α` for `α` in `1..N`.
    pub fn count(&self, alpha: usize) -> u32 {
        self.c[alpha - 1]
    }

    /// Total number of boxes `Σ_α α C_α` of the Young diagram.
    pub fn total_boxes(&self) -> usize {
        self.c.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }
}

/// One canonical oscillator mode: family `alpha` and sorted 0-based index set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub alpha: usize,
    pub set: Vec<usize>,
}

/// Sorted α-subsets of `0..N` in lexicographic order.
pub fn canonical_modes(n: usize, alpha: usize) -> Result<Vec<Vec<usize>>> {
    if n < 2 {
        return Err(Error::GroupRankTooSmall { n });
    }
    if alpha == 0 || alpha >= n {
        return Err(Error::AlphaOutOfRange { alpha, max: n - 1 });
    }
    Ok(subsets(n, alpha))
}

/// `Π_α multichoose(binomial(N, α), C_α)`.
pub fn sector_dimension(label: &IrrepLabel) -> Result<u128> {
    let n = label.n();
    let mut dim: u128 = 1;
    for alpha in 1..n {
        let modes = crate::combinatorics::binomial(n as u64, alpha as u64)
            .ok_or(Error::Overflow("binomial"))?;
        let modes = u64::try_from(modes).map_err(|_| Error::Overflow("binomial"))?;
        let count = multichoose(modes, u64::from(label.count(alpha)))
            .ok_or(Error::Overflow("multichoose"))?;
        dim = dim.checked_mul(count).ok_or(Error::Overflow("sector dimension"))?;
    }
    Ok(dim)
}

/// Occupation basis of a fixed-Casimir sector.
///
/// States are occupation vectors over all modes (family 1 first, each family
/// in lexicographic subset order), sorted lexicographically.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    label: IrrepLabel,
    modes: Vec<Mode>,
    families: Vec<Range<usize>>,
    states: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl SectorBasis {
    /// Enumerates the sector with the default cap.
    pub fn new(label: &IrrepLabel) -> Result<Self> {
        Self::with_cap(label, DEFAULT_SECTOR_CAP)
    }

    pub fn with_cap(label: &IrrepLabel, cap: usize) -> Result<Self> {
        let dim = match sector_dimension(label) {
            Err(Error::Overflow(_)) => u128::MAX,
            other => other?,
        };
        if dim > cap as u128 {
            return Err(Error::SectorTooLarge { dim, cap });
        }
        let n = label.n();
        let mut modes = Vec::new();
        let mut families = Vec::with_capacity(n - 1);
        for alpha in 1..n {
            let start = modes.len();
            modes.extend(subsets(n, alpha).into_iter().map(|set| Mode { alpha, set }));
            families.push(start..modes.len());
        }

        let per_family: Vec<Vec<Vec<u32>>> = families
            .iter()
            .enumerate()
            .map(|(i, r)| compositions(label.c[i], r.len()))
            .collect();
        let mut states: Vec<Vec<u32>> = vec![Vec::with_capacity(modes.len())];
        for family in &per_family {
            let mut next = Vec::with_capacity(states.len() * family.len());
            for prefix in &states {
                for part in family {
                    let mut s = prefix.clone();
                    s.extend_from_slice(part);
                    next.push(s);
                }
            }
            states = next;
        }
        debug_assert_eq!(states.len() as u128, dim);
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Self { label: label.clone(), modes, families, states, index })
    }

    pub fn label(&self) -> &IrrepLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn states(&self) -> &[Vec<u32>] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &[u32] {
        &self.states[i]
    }

    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    /// Range of mode positions belonging to family `alpha`.
    pub fn family(&self, alpha: usize) -> Result<Range<usize>> {
        if alpha == 0 || alpha > self.families.len() {
            return Err(Error::AlphaOutOfRange { alpha, max: self.families.len() });
        }
        Ok(self.families[alpha - 1].clone())
    }

    /// Position of the canonical mode `(alpha, set)`.
    pub fn mode_index(&self, alpha: usize, set: &[usize]) -> Result<usize> {
        let range = self.family(alpha)?;
        if set.len() != alpha {
            return Err(Error::SubsetMismatch { expected: alpha, got: set.len() });
        }
        self.modes[range.clone()]
            .binary_search_by(|m| m.set.as_slice().cmp(set))
            .map(|i| range.start + i)
            .map_err(|_| Error::LabelMismatch(format!("{set:?} is not a sorted subset of 0..N")))
    }

    /// Number of times each index `0..N` appears across the occupied modes.
    pub fn weight(&self, state: usize) -> Vec<u32> {
        let mut w = vec![0u32; self.label.n()];
        for (mode, &occ) in self.modes.iter().zip(&self.states[state]) {
            for &i in &mode.set {
                w[i] += occ;
            }
        }
        w
    }
}

/// All compositions of `total` into `parts` nonnegative parts, ascending
/// lexicographic order.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Amplitudes over the states of one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<Complex>,
}

impl FockVector {
    pub fn zeros(dim: usize) -> Self {
        Self { amplitudes: vec![Complex::new(0.0, 0.0); dim] }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex>) -> Self {
        Self { amplitudes }
    }

    /// Unit vector on basis state `i`.
    pub fn basis_state(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.amplitudes[i] = Complex::new(1.0, 0.0);
        v
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Hermitian inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.len(), other.len())));
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, s: Complex) -> Self {
        Self { amplitudes: self.amplitudes.iter().map(|z| z * s).collect() }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Self, s: Complex) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.len(), other.len())));
        }
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += b * s;
        }
        Ok(())
    }

    /// Largest amplitude modulus.
    pub fn max_abs(&self) -> f64 {
        self.amplitudes.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn apply(&self, op: &SparseOperator) -> Result<Self> {
        Ok(Self { amplitudes: op.apply(&self.amplitudes)? })
    }
}

/// `Σ_{I,J} M_{IJ} a†_I a_J` over the canonical modes of family `alpha`.
pub fn one_body(sector: &SectorBasis, alpha: usize, matrix: &CMatrix) -> Result<SparseOperator> {
    let range = sector.family(alpha)?;
    let m = range.len();
    if matrix.nrows() != m || matrix.ncols() != m {
        return Err(Error::ShapeMismatch(format!(
            "family {alpha} has {m} modes, matrix is {}x{}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let zero = Complex::new(0.0, 0.0);
    let mut triplets = Vec::new();
    let mut scratch = Vec::new();
    for (col, occ) in sector.states().iter().enumerate() {
        for j in 0..m {
            let nj = occ[range.start + j];
            if nj == 0 {
                continue;
            }
            for i in 0..m {
                let amp = matrix[(i, j)];
                if amp == zero {
                    continue;
                }
                if i == j {
                    triplets.push((col, col, amp * f64::from(nj)));
                    continue;
                }
                scratch.clear();
                scratch.extend_from_slice(occ);
                scratch[range.start + j] -= 1;
                scratch[range.start + i] += 1;
                let ni = scratch[range.start + i];
                let row = sector.index_of(&scratch).ok_or_else(|| {
                    Error::InternalConsistency("one-body operator left the sector".into())
                })?;
                let factor = libm::sqrt(f64::from(nj) * f64::from(ni));
                triplets.push((row, col, amp * factor));
            }
        }
    }
    SparseOperator::from_triplets(sector.dim(), sector.dim(), triplets)
}

/// `a†_I a_J` for two canonical modes of family `alpha`.
pub fn bilinear(
    sector: &SectorBasis,
    alpha: usize,
    i_set: &[usize],
    j_set: &[usize],
) -> Result<SparseOperator> {
    let range = sector.family(alpha)?;
    let i = sector.mode_index(alpha, i_set)? - range.start;
    let j = sector.mode_index(alpha, j_set)? - range.start;
    let mut m = CMatrix::zeros(range.len(), range.len());
    m[(i, j)] = Complex::new(1.0, 0.0);
    one_body(sector, alpha, &m)
}

/// `Q^a = Σ_α Σ_{I,J} Λ^a[α]_{IJ} a†[α]_I a[α]_J`.
///
/// `reps[α - 1]` must be the α-th wedge representation of the same basis.
pub fn generator_q(a: usize, sector: &SectorBasis, reps: &[WedgeRep]) -> Result<SparseOperator> {
    let n = sector.label().n();
    if reps.len() != n - 1 {
        return Err(Error::ShapeMismatch(format!("need {} wedge reps, got {}", n - 1, reps.len())));
    }
    let mut q = SparseOperator::zero(sector.dim(), sector.dim());
    for (k, rep) in reps.iter().enumerate() {
        if rep.alpha != k + 1 || rep.n != n {
            return Err(Error::ShapeMismatch(format!(
                "rep {k} is alpha={} of SU({})",
                rep.alpha, rep.n
            )));
        }
        let lambda = rep.matrices.get(a).ok_or_else(|| {
            Error::ShapeMismatch(format!("generator index {a} out of range"))
        })?;
        // empty families contribute nothing
        if sector.label().count(rep.alpha) == 0 {
            continue;
        }
        q = q.add(&one_body(sector, rep.alpha, lambda)?)?;
    }
    Ok(q)
}

/// `𝒞[α] = Σ_I a†[α]_I a[α]_I`.
pub fn casimir_op(alpha: usize, sector: &SectorBasis) -> Result<SparseOperator> {
    let m = sector.family(alpha)?.len();
    one_body(sector, alpha, &CMatrix::identity(m, m))
}

fn ladder(
    alpha: usize,
    set: &[usize],
    lower: &SectorBasis,
    upper: &SectorBasis,
) -> Result<(usize, Vec<(usize, usize, Complex)>)> {
    let n = lower.label().n();
    if upper.label().n() != n {
        return Err(Error::LabelMismatch("sectors of different SU(N)".into()));
    }
    for beta in 1..n {
        let expect = lower.label().count(beta) + u32::from(beta == alpha);
        if upper.label().count(beta) != expect {
            return Err(Error::LabelMismatch(format!(
                "{:?} is not {:?} plus one quantum of family {alpha}",
                upper.label().c(),
                lower.label().c()
            )));
        }
    }
    let mode = lower.mode_index(alpha, set)?;
    let mut triplets = Vec::with_capacity(lower.dim());
    for (col, occ) in lower.states().iter().enumerate() {
        let mut raised = occ.clone();
        raised[mode] += 1;
        let row = upper
            .index_of(&raised)
            .ok_or_else(|| Error::InternalConsistency("raised state missing".into()))?;
        triplets.push((row, col, Complex::new(libm::sqrt(f64::from(raised[mode])), 0.0)));
    }
    Ok((mode, triplets))
}

/// `a†_(α,I)` as a map from `from` into the sector with one more family-α quantum.
pub fn creator(alpha: usize, set: &[usize], from: &SectorBasis, to: &SectorBasis) -> Result<SparseOperator> {
    let (_, t) = ladder(alpha, set, from, to)?;
    SparseOperator::from_triplets(to.dim(), from.dim(), t)
}

/// `a_(α,I)` as a map from `from` into the sector with one less family-α quantum.
pub fn annihilator(alpha: usize, set: &[usize], from: &SectorBasis, to: &SectorBasis) -> Result<SparseOperator> {
    let (_, t) = ladder(alpha, set, to, from)?;
    SparseOperator::from_triplets(from.dim(), to.dim(), t).map(|op| op.adjoint())
}

/// Everything needed to act with su(N) on one sector.
#[derive(Debug, Clone)]
pub struct SchwingerRealization {
    pub algebra: AlgebraBasis,
    pub reps: Vec<WedgeRep>,
    pub sector: SectorBasis,
    pub generators: Vec<SparseOperator>,
}

impl SchwingerRealization {
    pub fn new(label: &IrrepLabel) -> Result<Self> {
        Self::with_cap(label, DEFAULT_SECTOR_CAP)
    }

    pub fn with_cap(label: &IrrepLabel, cap: usize) -> Result<Self> {
        let algebra = gellmann(label.n())?;
        let reps = (1..label.n()).map(|a| wedge_rep(&algebra, a)).collect::<Result<Vec<_>>>()?;
        let sector = SectorBasis::with_cap(label, cap)?;
        let generators = (0..algebra.dim())
            .map(|a| generator_q(a, &sector, &reps))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { algebra, reps, sector, generators })
    }

    pub fn label(&self) -> &IrrepLabel {
        self.sector.label()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.algebra.f
    }

    /// `max_{a<b} ‖[Q^a, Q^b] - i Σ_c f^{abc} Q^c‖_max`.
    pub fn closure_residual(&self) -> Result<f64> {
        let d = self.generators.len();
        let f = &self.algebra.f;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in a + 1..d {
                let mut r = self.generators[a].commutator(&self.generators[b])?;
                for (c, q) in self.generators.iter().enumerate() {
                    let fabc = f.get(a, b, c);
                    if fabc != 0.0 {
                        r = r.add_scaled(q, Complex::new(0.0, -fabc))?;
                    }
                }
                worst = worst.max(r.max_abs());
            }
        }
        Ok(worst)
    }

    /// `Σ_a Q^a Q^a`.
    pub fn quadratic_casimir(&self) -> Result<SparseOperator> {
        let d = self.sector.dim();
        let mut acc = SparseOperator::zero(d, d);
        for q in &self.generators {
            acc = acc.add(&q.mul(q)?)?;
        }
        Ok(acc)
    }

    /// Dense `Σ_a θ^a Q^a`.
    pub fn generator_combination(&self, theta: &[f64]) -> Result<CMatrix> {
        if theta.len() != self.generators.len() {
            return Err(Error::ShapeMismatch(format!(
                "theta has {} components, algebra has {}",
                theta.len(),
                self.generators.len()
            )));
        }
        let d = self.sector.dim();
        let mut h = CMatrix::zeros(d, d);
        for (q, &th) in self.generators.iter().zip(theta) {
            for &(r, c, v) in q.entries() {
                h[(r, c)] += v * th;
            }
        }
        Ok(h)
    }
}
