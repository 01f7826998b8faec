//! Young diagrams, row symmetrizers and irreducible-representation vectors.
//!
//! A label `(C_1, .., C_{N-1})` is drawn as `C_{N-1}` columns of height N-1,
//! then `C_{N-2}` columns of height N-2, and so on down to `C_1` single boxes,
//! so row `h` has `Σ_{β ≥ h} C_β` boxes. A filling of the diagram maps each
//! column of height α to the creation operator `a†[α]` carrying that column's
//! indices (top to bottom). The column antisymmetry is already built into the
//! oscillators, so only the row symmetrizers are applied.
//!
//! Row symmetrizers are evaluated two ways:
//!
//! * [`irrep_basis_vector`] sums over every permutation of every row
//!   explicitly (rows of at most 10 boxes);
//! * [`irrep_basis_vector_grouped`] sums the same terms, but groups the
//!   permutations that produce the same multiset of columns and weighs each
//!   group by its exact multiplicity. This has no row-length limit and is what
//!   [`irrep_subspace`] uses.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::combinatorics::{permutations_with_sign, sort_with_sign};
use crate::error::{Error, Result};
use crate::fock::{FockVector, IrrepLabel, SectorBasis};
use crate::sparse::SparseOperator;
use crate::{CMatrix, Complex};

/// Largest N handled by the grouped symmetrizer (column codes use 4-bit digits).
pub const MAX_GROUPED_N: usize = 15;
/// Relative singular-value cutoff for the irrep subspace rank.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Young diagram of an irrep label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungDiagram {
    label: IrrepLabel,
    row_lengths: Vec<usize>,
    total_boxes: usize,
}

/// Builds the diagram; empty rows are dropped.
pub fn young_diagram(label: &IrrepLabel) -> YoungDiagram {
    let c = label.c();
    let row_lengths: Vec<usize> = (0..c.len())
        .map(|h| c[h..].iter().map(|&x| x as usize).sum::<usize>())
        .filter(|&len| len > 0)
        .collect();
    let total_boxes = row_lengths.iter().sum();
    YoungDiagram { label: label.clone(), row_lengths, total_boxes }
}

impl YoungDiagram {
    pub fn label(&self) -> &IrrepLabel {
        &self.label
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    pub fn total_boxes(&self) -> usize {
        self.total_boxes
    }

    pub fn num_rows(&self) -> usize {
        self.row_lengths.len()
    }

    /// Heights of the columns, left to right (nonincreasing).
    pub fn column_heights(&self) -> Vec<usize> {
        let width = self.row_lengths.first().copied().unwrap_or(0);
        (0..width)
            .map(|v| self.row_lengths.iter().filter(|&&len| len > v).count())
            .collect()
    }
}

/// A filling of a Young diagram with 0-based indices `0..N`, row by row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabeledMonomial {
    rows: Vec<Vec<usize>>,
}

impl LabeledMonomial {
    pub fn new(diagram: &YoungDiagram, rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        if shape != diagram.row_lengths {
            return Err(Error::LabelMismatch(format!(
                "filling has row lengths {shape:?}, diagram has {:?}",
                diagram.row_lengths
            )));
        }
        let n = diagram.label.n();
        if let Some(&bad) = rows.iter().flatten().find(|&&i| i >= n) {
            return Err(Error::LabelMismatch(format!("index {bad} outside 0..{n}")));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Column `v`, top to bottom.
    pub fn column(&self, v: usize) -> Vec<usize> {
        self.rows.iter().take_while(|r| r.len() > v).map(|r| r[v]).collect()
    }

    fn num_columns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Normalization of each row symmetrizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetrizer {
    /// `Σ_{p ∈ S_r} p`; applying it twice multiplies by `r!`.
    #[default]
    Sum,
    /// `(1/r!) Σ_{p ∈ S_r} p`, an exact projector.
    Average,
}

fn check_sector(diagram_label: &IrrepLabel, sector: &SectorBasis) -> Result<()> {
    if diagram_label != sector.label() {
        return Err(Error::LabelMismatch(format!(
            "diagram for {:?}, sector for {:?}",
            diagram_label.c(),
            sector.label().c()
        )));
    }
    Ok(())
}

/// Maps a list of columns to the occupation state they create and the
/// amplitude `sign · Π sqrt(n!)`; `None` if some column repeats an index.
fn columns_to_state(columns: &[Vec<usize>], sector: &SectorBasis) -> Result<Option<(usize, f64)>> {
    let mut occ = vec![0u32; sector.modes().len()];
    let mut sign = 1.0;
    for col in columns {
        let mut sorted = col.clone();
        let Some(s) = sort_with_sign(&mut sorted) else {
            return Ok(None);
        };
        sign *= f64::from(s);
        occ[sector.mode_index(col.len(), &sorted)?] += 1;
    }
    let state = sector
        .index_of(&occ)
        .ok_or_else(|| Error::InternalConsistency("monomial outside its sector".into()))?;
    Ok(Some((state, sign * fock_factor(&occ))))
}

/// `Π_modes sqrt(n!)`, the norm of `Π (a†)^n |0>`.
fn fock_factor(occ: &[u32]) -> f64 {
    occ.iter()
        .map(|&n| match n {
            0..=170 => libm::sqrt(crate::combinatorics::factorial(n as usize)),
            // n! itself overflows f64
            _ => (2..=n).map(|i| libm::sqrt(f64::from(i))).product(),
        })
        .product()
}

/// The unsymmetrized monomial `Π_columns a†[height]_{column} |0>`.
pub fn monomial_vector(monomial: &LabeledMonomial, sector: &SectorBasis) -> Result<FockVector> {
    let diagram = young_diagram(sector.label());
    let monomial = LabeledMonomial::new(&diagram, monomial.rows.clone())?;
    let columns: Vec<Vec<usize>> = (0..monomial.num_columns()).map(|v| monomial.column(v)).collect();
    let mut out = FockVector::zeros(sector.dim());
    if let Some((state, amp)) = columns_to_state(&columns, sector)? {
        out.amplitudes_mut()[state] = Complex::new(amp, 0.0);
    }
    Ok(out)
}

/// Applies every row symmetrizer to `monomial` by explicit permutation sums
/// and returns the resulting vector, with [`Symmetrizer::Sum`] normalization.
pub fn irrep_basis_vector(monomial: &LabeledMonomial, sector: &SectorBasis) -> Result<FockVector> {
    irrep_basis_vector_with(monomial, sector, Symmetrizer::Sum)
}

pub fn irrep_basis_vector_with(
    monomial: &LabeledMonomial,
    sector: &SectorBasis,
    norm: Symmetrizer,
) -> Result<FockVector> {
    let diagram = young_diagram(sector.label());
    check_sector(diagram.label(), sector)?;
    let monomial = LabeledMonomial::new(&diagram, monomial.rows.clone())?;

    // filling -> integer coefficient
    let mut terms: BTreeMap<Vec<Vec<usize>>, i64> = BTreeMap::new();
    terms.insert(monomial.rows.clone(), 1);
    for h in 0..diagram.num_rows() {
        let perms: Vec<Vec<usize>> =
            permutations_with_sign(diagram.row_lengths[h])?.map(|(p, _)| p).collect();
        let mut next = BTreeMap::new();
        for (rows, coef) in &terms {
            for p in &perms {
                let mut permuted = rows.clone();
                permuted[h] = p.iter().map(|&k| rows[h][k]).collect();
                *next.entry(permuted).or_insert(0) += coef;
            }
        }
        terms = next;
    }

    let scale = match norm {
        Symmetrizer::Sum => 1.0,
        Symmetrizer::Average => {
            1.0 / diagram.row_lengths.iter().map(|&r| crate::combinatorics::factorial(r)).product::<f64>()
        }
    };
    let mut integer_parts: BTreeMap<usize, (i64, f64)> = BTreeMap::new();
    for (rows, coef) in terms {
        let m = LabeledMonomial { rows };
        let columns: Vec<Vec<usize>> = (0..m.num_columns()).map(|v| m.column(v)).collect();
        if let Some((state, amp)) = columns_to_state(&columns, sector)? {
            let e = integer_parts.entry(state).or_insert((0, amp.abs()));
            e.0 += coef * if amp < 0.0 { -1 } else { 1 };
        }
    }
    let mut out = FockVector::zeros(sector.dim());
    for (state, (k, factor)) in integer_parts {
        out.amplitudes_mut()[state] = Complex::new(k as f64 * factor * scale, 0.0);
    }
    Ok(out)
}

// Column codes for the grouped symmetrizer: 4-bit digit per row (0xF =
// unassigned), the column height in the top nibble.
const UNASSIGNED: u64 = 0xF;

fn empty_column(height: usize) -> u64 {
    let mut code = (height as u64) << 60;
    for r in 0..height {
        code |= UNASSIGNED << (4 * r);
    }
    code
}

fn column_height(code: u64) -> usize {
    (code >> 60) as usize
}

fn column_entries(code: u64) -> Vec<usize> {
    (0..column_height(code)).map(|r| ((code >> (4 * r)) & 0xF) as usize).collect()
}

fn with_entry(code: u64, row: usize, value: usize) -> u64 {
    (code & !(0xF << (4 * row))) | ((value as u64) << (4 * row))
}

/// `n choose k` as a float (exact while below 2^53).
fn binomial_f64(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Grouped evaluation of the row symmetrizers on one filling.
///
/// Returns a map from the sorted multiset of column codes to its weight, with
/// the per-row constant `Π_v k_v!` (k_v = multiplicity of value v in the row)
/// divided out, so every weight is the integer `Π_types m! / Π x!`.
fn grouped_terms(diagram: &YoungDiagram, rows: &[Vec<usize>]) -> BTreeMap<Vec<u64>, f64> {
    let n = diagram.label().n();
    let mut start: Vec<u64> = diagram.column_heights().into_iter().map(empty_column).collect();
    start.sort_unstable();
    let mut terms: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
    terms.insert(start, 1.0);

    for h in (0..diagram.num_rows()).rev() {
        let mut counts = vec![0usize; n];
        for &v in &rows[h] {
            counts[v] += 1;
        }
        let mut next: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
        for (cols, weight) in &terms {
            let (eligible, fixed): (Vec<u64>, Vec<u64>) =
                cols.iter().partition(|&&c| column_height(c) > h);
            // run-length encode the eligible column types
            let mut types: Vec<(u64, usize)> = Vec::new();
            for c in eligible {
                match types.last_mut() {
                    Some((t, m)) if *t == c => *m += 1,
                    _ => types.push((c, 1)),
                }
            }
            let mut remaining = counts.clone();
            let mut built = fixed.clone();
            distribute(&types, 0, h, &mut remaining, &mut built, *weight, &mut next);
        }
        terms = next;
    }
    terms
}

/// Enumerates every way of handing the row values in `remaining` to the
/// column types `types[t..]`, accumulating weighted column multisets.
fn distribute(
    types: &[(u64, usize)],
    t: usize,
    row: usize,
    remaining: &mut [usize],
    built: &mut Vec<u64>,
    weight: f64,
    out: &mut BTreeMap<Vec<u64>, f64>,
) {
    if t == types.len() {
        let mut key = built.clone();
        key.sort_unstable();
        *out.entry(key).or_insert(0.0) += weight;
        return;
    }
    let (code, m) = types[t];
    split_type(types, t, row, code, m, 0, remaining, built, weight, out);
}

/// Splits the `m` columns of one type over the values `v..N`.
#[allow(clippy::too_many_arguments)]
fn split_type(
    types: &[(u64, usize)],
    t: usize,
    row: usize,
    code: u64,
    m: usize,
    v: usize,
    remaining: &mut [usize],
    built: &mut Vec<u64>,
    weight: f64,
    out: &mut BTreeMap<Vec<u64>, f64>,
) {
    if m == 0 {
        distribute(types, t + 1, row, remaining, built, weight, out);
        return;
    }
    if v == remaining.len() {
        return;
    }
    let max_here = m.min(remaining[v]);
    for x in 0..=max_here {
        // choosing which x of the m remaining columns receive value v
        let w = weight * binomial_f64(m, x);
        remaining[v] -= x;
        let filled = with_entry(code, row, v);
        built.extend(core::iter::repeat_n(filled, x));
        split_type(types, t, row, code, m - x, v + 1, remaining, built, w, out);
        built.truncate(built.len() - x);
        remaining[v] += x;
    }
}

/// Converts grouped terms into a vector on `sector`, multiplying each
/// amplitude by `scale`. Cancellation is resolved on the integer weights
/// before the Fock factors are applied.
fn grouped_to_vector(
    terms: &BTreeMap<Vec<u64>, f64>,
    sector: &SectorBasis,
    scale: f64,
) -> Result<FockVector> {
    // state -> (signed sum, absolute sum, fock factor)
    let mut acc: BTreeMap<usize, (f64, f64, f64)> = BTreeMap::new();
    for (codes, &w) in terms {
        let columns: Vec<Vec<usize>> = codes.iter().map(|&c| column_entries(c)).collect();
        if let Some((state, amp)) = columns_to_state(&columns, sector)? {
            let e = acc.entry(state).or_insert((0.0, 0.0, amp.abs()));
            e.0 += if amp < 0.0 { -w } else { w };
            e.1 += w;
        }
    }
    let mut out = FockVector::zeros(sector.dim());
    for (state, (signed, abs, factor)) in acc {
        // below 2^53 the integer sums are exact; above, treat relative roundoff as zero
        let exact = abs <= 9.007_199_254_740_992e15;
        if signed == 0.0 || (!exact && signed.abs() <= 1e-12 * abs) {
            continue;
        }
        out.amplitudes_mut()[state] = Complex::new(signed * factor * scale, 0.0);
    }
    Ok(out)
}

fn ln_row_content_factor(rows: &[Vec<usize>], n: usize) -> f64 {
    let mut total = 0.0;
    for row in rows {
        let mut counts = vec![0usize; n];
        for &v in row {
            counts[v] += 1;
        }
        total += counts.iter().map(|&k| ln_factorial(k)).sum::<f64>();
    }
    total
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| libm::log(i as f64)).sum()
}

/// Same vector as [`irrep_basis_vector_with`], computed by grouping equal
/// permutation images. No row-length limit; requires `N <= 15`.
pub fn irrep_basis_vector_grouped(
    monomial: &LabeledMonomial,
    sector: &SectorBasis,
    norm: Symmetrizer,
) -> Result<FockVector> {
    let diagram = young_diagram(sector.label());
    check_sector(diagram.label(), sector)?;
    let n = diagram.label().n();
    if n > MAX_GROUPED_N {
        return Err(Error::ShapeMismatch(format!("grouped symmetrizer supports N <= {MAX_GROUPED_N}")));
    }
    let monomial = LabeledMonomial::new(&diagram, monomial.rows.clone())?;
    let terms = grouped_terms(&diagram, &monomial.rows);
    let mut ln_scale = ln_row_content_factor(&monomial.rows, n);
    if norm == Symmetrizer::Average {
        ln_scale -= diagram.row_lengths.iter().map(|&r| ln_factorial(r)).sum::<f64>();
    }
    grouped_to_vector(&terms, sector, libm::exp(ln_scale))
}

/// Dimension of the irrep from the hook-content formula
/// `Π_cells (N + col - row) / hook(cell)`, in exact integer arithmetic.
pub fn weyl_dimension(label: &IrrepLabel) -> Result<u128> {
    let diagram = young_diagram(label);
    let n = label.n() as i64;
    let heights = diagram.column_heights();
    // prime exponents of the rational result
    let mut exponents: BTreeMap<u64, i64> = BTreeMap::new();
    for (r, &len) in diagram.row_lengths.iter().enumerate() {
        for c in 0..len {
            let content = (n + c as i64 - r as i64) as u64;
            let hook = ((len - c - 1) + (heights[c] - r - 1) + 1) as u64;
            for (p, e) in factorize(content) {
                *exponents.entry(p).or_insert(0) += e;
            }
            for (p, e) in factorize(hook) {
                *exponents.entry(p).or_insert(0) -= e;
            }
        }
    }
    let mut dim: u128 = 1;
    for (p, e) in exponents {
        if e < 0 {
            return Err(Error::InternalConsistency("hook-content product is not an integer".into()));
        }
        for _ in 0..e {
            dim = dim.checked_mul(u128::from(p)).ok_or(Error::Overflow("weyl dimension"))?;
        }
    }
    Ok(dim)
}

fn factorize(mut x: u64) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        let mut e = 0;
        while x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Orthonormal basis of the span of all symmetrized fillings.
#[derive(Debug, Clone)]
pub struct IrrepSubspace {
    pub label: IrrepLabel,
    /// Numerical rank of the span.
    pub dim: usize,
    /// Sector dimension × `dim`, orthonormal columns.
    pub basis: CMatrix,
    /// Every singular value, all weight blocks, descending.
    pub singular_values: Vec<f64>,
    /// A singular value fell within a factor 10 of the cutoff.
    pub ambiguous: bool,
    /// Number of row-sorted fillings whose vectors entered the rank.
    pub fillings_used: usize,
}

impl IrrepSubspace {
    /// `‖(1 - P) v‖ / ‖v‖`.
    pub fn projection_residual(&self, v: &FockVector) -> f64 {
        let x = nalgebra::DVector::from_column_slice(v.amplitudes());
        let norm = x.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let coeffs = self.basis.adjoint() * &x;
        (&x - &self.basis * coeffs).norm() / norm
    }

    /// `max_a ‖(1 - P) Q^a P‖_max`.
    pub fn invariance_residual(&self, generators: &[SparseOperator]) -> f64 {
        let d = self.basis.nrows();
        let p = &self.basis * self.basis.adjoint();
        let complement = CMatrix::identity(d, d) - &p;
        generators
            .iter()
            .map(|q| crate::linalg::max_abs(&(&complement * q.to_dense() * &p)))
            .fold(0.0, f64::max)
    }

    /// Restriction `B^† C B` of an operator to the subspace; returns its mean
    /// diagonal value and `max |B^† C B - mean·1|`.
    pub fn scalar_spread(&self, op: &SparseOperator) -> (f64, f64) {
        let k = self.dim;
        if k == 0 {
            return (0.0, 0.0);
        }
        let restricted = self.basis.adjoint() * op.to_dense() * &self.basis;
        let mean = (0..k).map(|i| restricted[(i, i)].re).sum::<f64>() / k as f64;
        let spread = crate::linalg::max_abs(&(restricted - CMatrix::identity(k, k) * Complex::new(mean, 0.0)));
        (mean, spread)
    }
}

/// Nondecreasing sequences of length `len` over `0..n`.
fn sorted_rows(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, len: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in min..n {
            cur.push(v);
            rec(n, len, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Span of the symmetrized fillings and its numerical rank.
///
/// Fillings that differ by a permutation within rows give identical vectors,
/// so one filling with weakly increasing rows per orbit is enough. Vectors of
/// different weight (index content) have disjoint support and are ranked in
/// separate blocks; a block stops taking new vectors once they span all of its
/// states. Each vector is normalized before ranking.
pub fn irrep_subspace(sector: &SectorBasis) -> Result<IrrepSubspace> {
    let label = sector.label().clone();
    let diagram = young_diagram(&label);
    let n = label.n();
    if n > MAX_GROUPED_N {
        return Err(Error::ShapeMismatch(format!("grouped symmetrizer supports N <= {MAX_GROUPED_N}")));
    }

    // weight -> states carrying it
    let mut blocks: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for s in 0..sector.dim() {
        blocks.entry(sector.weight(s)).or_default().push(s);
    }
    struct Block {
        states: Vec<usize>,
        vectors: Vec<Vec<f64>>,
        ortho: Vec<Vec<f64>>,
    }
    let mut work: BTreeMap<Vec<u32>, Block> = blocks
        .into_iter()
        .map(|(w, states)| (w, Block { states, vectors: Vec::new(), ortho: Vec::new() }))
        .collect();

    let row_choices: Vec<Vec<Vec<usize>>> =
        diagram.row_lengths.iter().map(|&len| sorted_rows(n, len)).collect();
    let mut fillings_used = 0usize;
    let mut pick = vec![0usize; row_choices.len()];
    let total: usize = row_choices.iter().map(Vec::len).product();
    for _ in 0..total {
        let rows: Vec<Vec<usize>> =
            pick.iter().zip(&row_choices).map(|(&i, choices)| choices[i].clone()).collect();
        advance(&mut pick, &row_choices);

        let mut weight = vec![0u32; n];
        for &v in rows.iter().flatten() {
            weight[v] += 1;
        }
        let Some(block) = work.get_mut(&weight) else {
            continue;
        };
        if block.ortho.len() == block.states.len() {
            continue;
        }
        let terms = grouped_terms(&diagram, &rows);
        let v = grouped_to_vector(&terms, sector, 1.0)?;
        fillings_used += 1;
        let mut local: Vec<f64> = block.states.iter().map(|&s| v.amplitudes()[s].re).collect();
        // rescale before squaring: long rows give amplitudes near 1e154
        let peak = local.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if peak == 0.0 {
            continue;
        }
        if !peak.is_finite() {
            return Err(Error::Overflow("symmetrized amplitude"));
        }
        local.iter_mut().for_each(|x| *x /= peak);
        let norm = libm::sqrt(local.iter().map(|x| x * x).sum::<f64>());
        local.iter_mut().for_each(|x| *x /= norm);
        // two passes of Gram-Schmidt to decide whether the block is saturated
        let mut r = local.clone();
        for _ in 0..2 {
            for q in &block.ortho {
                let d: f64 = q.iter().zip(&r).map(|(a, b)| a * b).sum();
                r.iter_mut().zip(q).for_each(|(x, qq)| *x -= d * qq);
            }
        }
        let rn = libm::sqrt(r.iter().map(|x| x * x).sum::<f64>());
        if rn > 1e-6 {
            block.ortho.push(r.into_iter().map(|x| x / rn).collect());
        }
        block.vectors.push(local);
    }

    // rank per block from singular values, cutoff relative to the global maximum
    let mut per_block: Vec<(Vec<usize>, Vec<f64>, DMatrix<f64>)> = Vec::new();
    for block in work.into_values() {
        if block.vectors.is_empty() {
            continue;
        }
        let b = block.states.len();
        let m = DMatrix::from_fn(block.vectors.len(), b, |i, j| block.vectors[i][j]);
        let svd = m.svd(false, true);
        let vt = svd.v_t.expect("requested right singular vectors");
        let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        per_block.push((block.states, sv, vt));
    }
    let sigma_max = per_block.iter().flat_map(|(_, sv, _)| sv.iter().copied()).fold(0.0, f64::max);
    let cutoff = RANK_TOLERANCE * sigma_max;

    let mut singular_values = Vec::new();
    let mut columns: Vec<Vec<Complex>> = Vec::new();
    let mut ambiguous = false;
    for (states, sv, vt) in &per_block {
        for (k, &s) in sv.iter().enumerate() {
            singular_values.push(s);
            if s > cutoff / 10.0 && s < cutoff * 10.0 {
                ambiguous = true;
            }
            if s > cutoff {
                let mut col = vec![Complex::new(0.0, 0.0); sector.dim()];
                for (j, &st) in states.iter().enumerate() {
                    col[st] = Complex::new(vt[(k, j)], 0.0);
                }
                columns.push(col);
            }
        }
    }
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let dim = columns.len();
    let basis = CMatrix::from_fn(sector.dim(), dim, |i, j| columns[j][i]);
    Ok(IrrepSubspace { label, dim, basis, singular_values, ambiguous, fillings_used })
}

/// Numerical rank of the symmetrized span together with the ambiguity flag.
pub fn irrep_subspace_dimension(sector: &SectorBasis) -> Result<(usize, bool)> {
    let sub = irrep_subspace(sector)?;
    Ok((sub.dim, sub.ambiguous))
}

fn advance(pick: &mut [usize], choices: &[Vec<Vec<usize>>]) {
    for i in (0..pick.len()).rev() {
        pick[i] += 1;
        if pick[i] < choices[i].len() {
            return;
        }
        pick[i] = 0;
    }
}
