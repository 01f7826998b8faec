//! JSON forms of sector bases, operators, vectors and Monte Carlo reports.
//!
//! Index sets are written 1-based, as in the usual oscillator notation.
//!
//! ```text
//! basis:    {"n": 2, "c": [1], "states": [[{"alpha": 1, "set": [1], "count": 1}], ...]}
//! operator: {"rows": 2, "cols": 2, "entries": [[row, col, re, im], ...]}
//! vector:   {"amplitudes": [[re, im], ...]}
//! ```

use serde::{Deserialize, Serialize};
use sunbose_core::{Complex, FockVector, IrrepLabel, MCIdentityReport, SectorBasis, SparseOperator};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub n: usize,
    pub c: Vec<u32>,
}

impl From<&IrrepLabel> for LabelJson {
    fn from(l: &IrrepLabel) -> Self {
        Self { n: l.n(), c: l.c().to_vec() }
    }
}

impl LabelJson {
    pub fn to_label(&self) -> sunbose_core::Result<IrrepLabel> {
        IrrepLabel::new(self.n, self.c.clone())
    }
}

/// One occupied mode of a basis state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeOccupation {
    pub alpha: usize,
    pub set: Vec<usize>,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub n: usize,
    pub c: Vec<u32>,
    pub states: Vec<Vec<ModeOccupation>>,
}

impl From<&SectorBasis> for BasisJson {
    fn from(sector: &SectorBasis) -> Self {
        let states = sector
            .states()
            .iter()
            .map(|occ| {
                occ.iter()
                    .zip(sector.modes())
                    .filter(|(&k, _)| k > 0)
                    .map(|(&count, m)| ModeOccupation {
                        alpha: m.alpha,
                        set: m.set.iter().map(|i| i + 1).collect(),
                        count,
                    })
                    .collect()
            })
            .collect();
        let label = sector.label();
        Self { n: label.n(), c: label.c().to_vec(), states }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl From<&SparseOperator> for OperatorJson {
    fn from(op: &SparseOperator) -> Self {
        Self {
            rows: op.nrows(),
            cols: op.ncols(),
            entries: op.entries().iter().map(|&(r, c, v)| (r, c, v.re, v.im)).collect(),
        }
    }
}

impl OperatorJson {
    pub fn to_operator(&self) -> sunbose_core::Result<SparseOperator> {
        SparseOperator::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().map(|&(r, c, re, im)| (r, c, Complex::new(re, im))),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&FockVector> for VectorJson {
    fn from(v: &FockVector) -> Self {
        Self { amplitudes: v.amplitudes().iter().map(|z| [z.re, z.im]).collect() }
    }
}

impl VectorJson {
    pub fn to_vector(&self) -> FockVector {
        FockVector::from_amplitudes(self.amplitudes.iter().map(|&[re, im]| Complex::new(re, im)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MCIdentityRecord {
    pub label: LabelJson,
    pub samples: usize,
    pub eigenvalues: Vec<f64>,
    pub k_cluster_mean: f64,
    pub k_cluster_spread: f64,
    pub zero_cluster_max: Option<f64>,
    pub irrep_dim_estimate: usize,
    pub seed: u64,
    /// Seconds.
    pub wall_time: f64,
}

impl MCIdentityRecord {
    pub fn new(report: &MCIdentityReport, seed: u64, wall_time: f64) -> Self {
        Self {
            label: (&report.label).into(),
            samples: report.samples,
            eigenvalues: report.eigenvalues.clone(),
            k_cluster_mean: report.k_cluster_mean,
            k_cluster_spread: report.k_cluster_spread,
            zero_cluster_max: report.zero_cluster_max,
            irrep_dim_estimate: report.irrep_dim_estimate,
            seed,
            wall_time,
        }
    }
}
