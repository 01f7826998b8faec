//! Parallel evaluation of the Haar-average estimator.
//!
//! Chunks are evaluated on the rayon pool and summed in chunk order, which
//! gives the same bits as `sunbose_core::identity::identity_mc`.

use rayon::prelude::*;
use sunbose_core::identity::{accumulate, analyze, check_request, chunks};
use sunbose_core::{CMatrix, MCIdentityReport, Result, SectorBasis};

pub fn identity_mc(sector: &SectorBasis, samples: usize, seed: u64) -> Result<MCIdentityReport> {
    check_request(sector, samples)?;
    let partial: Vec<CMatrix> = chunks(samples)
        .into_par_iter()
        .map(|range| accumulate(sector, seed, range))
        .collect::<Result<_>>()?;
    let d = sector.dim();
    let sum = partial.into_iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
    Ok(analyze(sector.label(), samples, &sum))
}

/// Mean nonzero-cluster spread over `replicates` independent runs at
/// `samples` and at `2 * samples`, and their ratio (ideally `1/sqrt 2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadScaling {
    pub spread: f64,
    pub spread_doubled: f64,
    pub ratio: f64,
}

pub fn spread_scaling(sector: &SectorBasis, samples: usize, replicates: usize, seed: u64) -> Result<SpreadScaling> {
    let mean_spread = |m: usize, offset: u64| -> Result<f64> {
        let spreads: Vec<f64> = (0..replicates as u64)
            .into_par_iter()
            .map(|r| {
                let s = seed.wrapping_add(offset + r);
                sunbose_core::identity::identity_mc(sector, m, s).map(|rep| rep.k_cluster_spread)
            })
            .collect::<Result<_>>()?;
        Ok(spreads.iter().sum::<f64>() / replicates as f64)
    };
    let spread = mean_spread(samples, 0)?;
    let spread_doubled = mean_spread(2 * samples, replicates as u64)?;
    Ok(SpreadScaling { spread, spread_doubled, ratio: spread_doubled / spread })
}
