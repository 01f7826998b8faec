//! Monte Carlo estimate of `E[|z><z|]` over Haar frames.
//!
//! Sample `i` draws its frame from `ChaCha8Rng::seed_from_u64(seed)` on
//! stream `i`, and samples are summed in fixed chunks of [`CHUNK`] that are
//! then added in chunk order. Any scheduler that evaluates chunks
//! independently and sums them in order reproduces the serial estimator bit
//! for bit.

use alloc::vec::Vec;
use core::ops::Range;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::coherent::{coherent_vector, haar_frame};
use crate::error::{Error, Result};
use crate::fock::{IrrepLabel, SectorBasis};
use crate::linalg::hermitian_eigenvalues_desc;
use crate::{CMatrix, Complex};

pub const MIN_SAMPLES: usize = 100;
/// Largest sector handled (dense eigendecomposition).
pub const MAX_SECTOR_DIM: usize = 500;
pub const CHUNK: usize = 1024;
/// Gap ratio at or above which the spectrum is split in two clusters.
pub const SPLIT_RATIO: f64 = 5.0;
/// Gap ratios in `[AMBIGUOUS_RATIO, SPLIT_RATIO)` are flagged.
pub const AMBIGUOUS_RATIO: f64 = 0.5;

/// The RNG for sample `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn check_request(sector: &SectorBasis, samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { samples, min: MIN_SAMPLES });
    }
    if sector.dim() > MAX_SECTOR_DIM {
        return Err(Error::SectorTooLarge { dim: sector.dim() as u128, cap: MAX_SECTOR_DIM });
    }
    Ok(())
}

/// Chunk boundaries covering `0..samples`.
pub fn chunks(samples: usize) -> Vec<Range<usize>> {
    (0..samples.div_ceil(CHUNK)).map(|k| k * CHUNK..((k + 1) * CHUNK).min(samples)).collect()
}

/// `Σ_{i ∈ range} |z_i><z_i|`.
pub fn accumulate(sector: &SectorBasis, seed: u64, range: Range<usize>) -> Result<CMatrix> {
    let d = sector.dim();
    let n = sector.label().n();
    let mut acc = CMatrix::zeros(d, d);
    for i in range {
        let frame = haar_frame(n, &mut sample_rng(seed, i as u64))?;
        let z = coherent_vector(&frame, sector)?;
        let a = z.amplitudes();
        for r in 0..d {
            for c in 0..d {
                acc[(r, c)] += a[r] * a[c].conj();
            }
        }
    }
    Ok(acc)
}

/// Spectrum of the estimator and its two-cluster split.
#[derive(Debug, Clone, PartialEq)]
pub struct MCIdentityReport {
    pub label: IrrepLabel,
    pub samples: usize,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub k_cluster_mean: f64,
    /// `max - min` over the upper cluster.
    pub k_cluster_spread: f64,
    /// Largest eigenvalue below the split; `None` when there is one cluster.
    pub zero_cluster_max: Option<f64>,
    pub irrep_dim_estimate: usize,
    /// Largest gap over the larger of the two cluster widths and the lower edge.
    pub gap_ratio: f64,
    pub ambiguous: bool,
}

impl MCIdentityReport {
    pub fn relative_spread(&self) -> f64 {
        self.k_cluster_spread / self.k_cluster_mean
    }
}

/// Builds the report from `Σ |z><z|` over `samples` draws.
pub fn analyze(label: &IrrepLabel, samples: usize, sum: &CMatrix) -> MCIdentityReport {
    let estimator = sum / Complex::new(samples as f64, 0.0);
    let eigenvalues = hermitian_eigenvalues_desc(&estimator);
    let d = eigenvalues.len();

    // largest gap and its ratio to the widths around it
    let mut split = d;
    let mut gap_ratio = 0.0;
    if d > 1 {
        let (k, gap) = (0..d - 1)
            .map(|k| (k, eigenvalues[k] - eigenvalues[k + 1]))
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        let upper = eigenvalues[0] - eigenvalues[k];
        let lower = eigenvalues[k + 1] - eigenvalues[d - 1];
        let scale = upper.max(lower).max(eigenvalues[k + 1].abs());
        gap_ratio = if scale > 0.0 { gap / scale } else { f64::INFINITY };
        if gap_ratio >= SPLIT_RATIO {
            split = k + 1;
        }
    }
    let ambiguous = (AMBIGUOUS_RATIO..SPLIT_RATIO).contains(&gap_ratio);
    let top = &eigenvalues[..split];
    let k_cluster_mean = top.iter().sum::<f64>() / split as f64;
    let k_cluster_spread = top[0] - top[split - 1];
    let zero_cluster_max = eigenvalues.get(split).copied();
    MCIdentityReport {
        label: label.clone(),
        samples,
        eigenvalues,
        k_cluster_mean,
        k_cluster_spread,
        zero_cluster_max,
        irrep_dim_estimate: split,
        gap_ratio,
        ambiguous,
    }
}

/// Serial estimator over `samples` Haar frames.
pub fn identity_mc(sector: &SectorBasis, samples: usize, seed: u64) -> Result<MCIdentityReport> {
    check_request(sector, samples)?;
    let d = sector.dim();
    let mut sum = CMatrix::zeros(d, d);
    for range in chunks(samples) {
        sum += accumulate(sector, seed, range)?;
    }
    Ok(analyze(sector.label(), samples, &sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sector(n: usize, c: &[u32]) -> SectorBasis {
        SectorBasis::new(&IrrepLabel::new(n, c.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            identity_mc(&sector(2, &[1]), 10, 1),
            Err(Error::InsufficientSamples { samples: 10, min: 100 })
        ));
    }

    #[test]
    fn chunking_covers_every_sample_once() {
        let c = chunks(2 * CHUNK + 5);
        assert_eq!(c, vec![0..CHUNK, CHUNK..2 * CHUNK, 2 * CHUNK..2 * CHUNK + 5]);
        assert!(chunks(0).is_empty());
    }

    #[test]
    fn split_rules() {
        let label = IrrepLabel::new(2, vec![1]).unwrap();
        let diag = |v: &[f64]| CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            v.len(),
            v.iter().map(|&x| Complex::new(x, 0.0)),
        ));
        let r = analyze(&label, 1, &diag(&[1.0, 1.01, 0.99, 0.001]));
        assert_eq!(r.irrep_dim_estimate, 3);
        assert_eq!(r.zero_cluster_max, Some(0.001));
        assert!((r.k_cluster_spread - 0.02).abs() < 1e-12);
        assert!(!r.ambiguous);
        let r = analyze(&label, 1, &diag(&[1.0, 1.01, 0.99]));
        assert_eq!(r.irrep_dim_estimate, 3);
        assert_eq!(r.zero_cluster_max, None);
        let r = analyze(&label, 1, &diag(&[1.0, 0.5]));
        assert!(r.ambiguous);
        assert_eq!(r.irrep_dim_estimate, 2);
    }

    #[test]
    fn fundamental_spectrum_is_flat() {
        let r = identity_mc(&sector(2, &[1]), 20_000, 42).unwrap();
        assert_eq!(r.irrep_dim_estimate, 2);
        assert!(r.relative_spread() < 0.05);
        // E|z_i|^2 = 1/N for one row of a Haar unitary
        assert!((r.k_cluster_mean - 0.5).abs() < 0.02);
        assert!(r.eigenvalues.iter().all(|&x| x >= -1e-10));
    }

    #[test]
    fn seeds_reproduce() {
        let s = sector(3, &[1, 0]);
        assert_eq!(identity_mc(&s, 500, 7).unwrap(), identity_mc(&s, 500, 7).unwrap());
        assert_ne!(identity_mc(&s, 500, 7).unwrap(), identity_mc(&s, 500, 8).unwrap());
    }
}
