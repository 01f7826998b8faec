//! The four verification commands. Each returns a [`Report`]; library errors
//! (bad label, oversized sector, too few samples) propagate as `Err`.

use std::time::Instant;

use rand_distr::{Distribution, StandardNormal};
use serde_json::json;
use sunbose_core::algebra::{closure_residual, trace_orthogonality};
use sunbose_core::coherent::{
    complete_unitary, coherent_vector, covariance_residual, dual_orthogonality_residual, haar_frame,
    wedge_coordinates,
};
use sunbose_core::fock::casimir_op;
use sunbose_core::identity::sample_rng;
use sunbose_core::linalg::unitarity_residual;
use sunbose_core::young::{irrep_subspace, weyl_dimension};
use sunbose_core::{gellmann, wedge_rep, Complex, Frame, SchwingerRealization, SectorBasis};

use crate::config::{ConfigError, RunConfig};
use crate::formats::MCIdentityRecord;
use crate::report::Report;

/// Dense checks (invariance of the irrep subspace) are skipped above this.
pub const DENSE_CHECK_DIM: usize = 500;
/// Random frames drawn by `coherent` when `--samples` is not given.
pub const DEFAULT_FRAMES: usize = 16;
pub const DEFAULT_MC_SAMPLES: usize = 100_000;

// stream offsets separating the frame and theta draws of `coherent`
const THETA_STREAM: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Algebra,
    Irrep,
    Coherent,
    Identity,
}

pub fn run(command: Command, config: &RunConfig) -> Result<Report, ConfigError> {
    let start = Instant::now();
    let mut report = match command {
        Command::Algebra => cmd_algebra(config),
        Command::Irrep => cmd_irrep(config),
        Command::Coherent => cmd_coherent(config),
        Command::Identity => cmd_identity(config),
    }?;
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn cmd_algebra(config: &RunConfig) -> Result<Report, ConfigError> {
    config.check_tolerance_names(&["closure", "jacobi", "trace"])?;
    let mut r = Report::new("algebra", config);
    let n = config.n;
    let basis = gellmann(n)?;
    let f = &basis.f;

    let mut worst_closure: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    let mut per_alpha = Vec::new();
    for alpha in 1..n {
        let rep = wedge_rep(&basis, alpha)?;
        let closure = closure_residual(&rep.matrices, f);
        let (k, trace) = trace_orthogonality(&rep.matrices);
        worst_closure = worst_closure.max(closure);
        worst_trace = worst_trace.max(trace);
        per_alpha.push(json!({
            "alpha": alpha,
            "dim": rep.dim(),
            "commutatorResidual": closure,
            "traceConstant": k,
            "traceResidual": trace,
        }));
    }
    r.below("commutatorClosure", worst_closure, "closure", 1e-11);
    r.below("jacobi", f.jacobi_residual(), "jacobi", 1e-10);
    r.below("traceOrthogonality", worst_trace, "trace", 1e-12);
    let (k1, _) = trace_orthogonality(&basis.generators);
    r.below("traceNormalization", (k1 - 0.5).abs(), "trace", 1e-12);

    r.evidence("generators", basis.dim());
    r.evidence("maxCommutatorResidual", worst_closure);
    r.evidence("wedgeReps", per_alpha);
    r.evidence("structureConstantsNonzero", f.nnz());
    if n == 2 {
        let mut dev: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let eps = levi_civita(a, b, c);
                    dev = dev.max((f.get(a, b, c) - eps).abs());
                }
            }
        }
        r.below("structureConstantsEqualEpsilon", dev, "closure", 1e-11);
        r.evidence("epsilonDeviation", dev);
    }
    Ok(r)
}

fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub fn cmd_irrep(config: &RunConfig) -> Result<Report, ConfigError> {
    config.check_tolerance_names(&["closure", "invariance"])?;
    let mut r = Report::new("irrep", config);
    let label = config.label();
    let real = SchwingerRealization::with_cap(&label, config.sector_cap)?;
    let sector = &real.sector;
    let weyl = weyl_dimension(&label)?;

    r.below("generatorClosure", real.closure_residual()?, "closure", 1e-11);

    // every basis state has family numbers exactly C_α; Q^a commutes exactly
    let mut casimir_deviation: f64 = 0.0;
    let mut commutator_nnz = 0usize;
    for alpha in 1..label.n() {
        let cas = casimir_op(alpha, sector)?;
        let expect = f64::from(label.count(alpha));
        for s in 0..sector.dim() {
            casimir_deviation = casimir_deviation.max((cas.get(s, s) - Complex::new(expect, 0.0)).norm());
        }
        let off_diagonal = cas.entries().iter().filter(|(i, j, _)| i != j).count();
        casimir_deviation = casimir_deviation.max(off_diagonal as f64);
        for q in &real.generators {
            commutator_nnz += q.commutator(&cas)?.nnz();
        }
    }
    r.at_most("casimirEigenvalues", casimir_deviation, 0.0);
    r.equal("casimirCommutatorNonzeros", commutator_nnz, 0);

    let sub = irrep_subspace(sector)?;
    r.equal("rankEqualsWeyl", sub.dim as u128, weyl);
    r.equal("rankUnambiguous", sub.ambiguous, false);
    if sector.dim() <= DENSE_CHECK_DIM {
        r.below("subspaceInvariance", sub.invariance_residual(&real.generators), "invariance", 1e-10);
        let (casimir2, spread) = sub.scalar_spread(&real.quadratic_casimir()?);
        r.below("quadraticCasimirScalar", spread, "invariance", 1e-10);
        r.evidence("quadraticCasimir", casimir2);
    }

    r.evidence("sectorDim", sector.dim());
    r.evidence("weylDim", weyl);
    r.evidence("rankDim", sub.dim);
    r.evidence("fillingsUsed", sub.fillings_used);
    r.evidence("smallestKeptSingularValue", sub.singular_values.get(sub.dim.wrapping_sub(1)).copied());
    r.evidence("largestDroppedSingularValue", sub.singular_values.get(sub.dim).copied());
    Ok(r)
}

pub fn cmd_coherent(config: &RunConfig) -> Result<Report, ConfigError> {
    config.check_tolerance_names(&["frame", "covariance", "membership", "norm"])?;
    let frames = config.samples.unwrap_or(DEFAULT_FRAMES);
    if frames == 0 {
        return Err(ConfigError::Invalid("coherent needs --samples >= 1".into()));
    }
    let mut r = Report::new("coherent", config);
    let label = config.label();
    let n = label.n();
    let real = SchwingerRealization::with_cap(&label, config.sector_cap)?;
    let sector = &real.sector;
    let subspace = if sector.dim() <= DENSE_CHECK_DIM { Some(irrep_subspace(sector)?) } else { None };

    let reference = Frame::standard(n)?;
    let reference_norm = coherent_vector(&reference, sector)?.norm_sqr();
    let self_overlap = sunbose_core::coherent::overlap(&reference, &reference, sector)?;

    let (mut gram, mut wedge, mut dual, mut unit, mut det_mod, mut det_phase) = (0f64, 0f64, 0f64, 0f64, 0f64, 0f64);
    let (mut covariance, mut membership, mut norm_dev) = (0f64, 0f64, 0f64);
    for i in 0..frames as u64 {
        let frame = haar_frame(n, &mut sample_rng(config.seed, i))?;
        let mut theta_rng = sample_rng(config.seed, THETA_STREAM + i);
        let theta: Vec<f64> = (0..n * n - 1).map(|_| StandardNormal.sample(&mut theta_rng)).collect();

        gram = gram.max(frame.gram_residual());
        wedge = wedge.max(wedge_coordinates(&frame).norm_residual());
        dual = dual.max(dual_orthogonality_residual(&frame));
        let u = complete_unitary(&frame);
        unit = unit.max(unitarity_residual(&u));
        let det = u.determinant();
        det_mod = det_mod.max((det.norm() - 1.0).abs());
        det_phase = det_phase.max((det - Complex::new(1.0, 0.0)).norm());
        covariance = covariance.max(covariance_residual(&frame, &theta, &real)?);
        let z = coherent_vector(&frame, sector)?;
        if let Some(sub) = &subspace {
            membership = membership.max(sub.projection_residual(&z));
        }
        norm_dev = norm_dev.max((z.norm_sqr() - reference_norm).abs() / reference_norm);
    }
    r.below("frameOrthonormality", gram, "frame", 1e-12);
    r.below("wedgeNorm", wedge, "frame", 1e-12);
    r.below("dualOrthogonality", dual, "frame", 1e-12);
    r.below("completedUnitarity", unit, "frame", 1e-12);
    r.below("determinantModulus", det_mod, "frame", 1e-12);
    r.below("covariance", covariance, "covariance", 1e-9);
    if subspace.is_some() {
        r.below("irrepMembership", membership, "membership", 1e-10);
    }
    r.below("normFrameIndependence", norm_dev, "norm", 1e-10);

    r.evidence("frames", frames);
    r.evidence("sectorDim", sector.dim());
    r.evidence("covarianceResidual", covariance);
    r.evidence("irrepMembershipResidual", subspace.as_ref().map(|_| membership));
    r.evidence("maxDeterminantDeviationFromOne", det_phase);
    r.evidence("selfOverlap", [self_overlap.re, self_overlap.im]);
    Ok(r)
}

pub fn cmd_identity(config: &RunConfig) -> Result<Report, ConfigError> {
    config.check_tolerance_names(&["relativeSpread", "zeroCluster", "positivity"])?;
    let samples = config.samples.unwrap_or(DEFAULT_MC_SAMPLES);
    let label = config.label();
    let sector = SectorBasis::with_cap(&label, config.sector_cap)?;
    let weyl = weyl_dimension(&label)?;
    let start = Instant::now();
    let mc = crate::mc::identity_mc(&sector, samples, config.seed)?;
    let elapsed = start.elapsed().as_secs_f64();

    let mut r = Report::new("identity", config);
    r.equal("nonzeroClusterSize", mc.irrep_dim_estimate as u128, weyl);
    r.below("relativeSpread", mc.relative_spread(), "relativeSpread", 0.02);
    if let Some(zmax) = mc.zero_cluster_max {
        r.below("zeroClusterRelative", zmax / mc.k_cluster_mean, "zeroCluster", 0.02);
    }
    let min_eig = mc.eigenvalues.last().copied().unwrap_or(0.0);
    r.below("negativeEigenvalue", (-min_eig).max(0.0), "positivity", 1e-10);
    r.equal("clusterUnambiguous", mc.ambiguous, false);

    r.evidence("report", MCIdentityRecord::new(&mc, config.seed, elapsed));
    r.evidence("sectorDim", sector.dim());
    r.evidence("weylDim", weyl);
    r.evidence("gapRatio", if mc.gap_ratio.is_finite() { Some(mc.gap_ratio) } else { None });
    r.evidence("ambiguous", mc.ambiguous);
    Ok(r)
}
