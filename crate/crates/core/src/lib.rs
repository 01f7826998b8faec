//! Schwinger-boson realization of SU(N) on fixed-Casimir Fock sectors.
//!
//! The crate builds the fundamental generators of SU(N) and their
//! antisymmetric (wedge-power) representations, realizes the algebra as
//! bilinears in `2(2^{N-1}-1)` bosonic modes, produces irreducible
//! representation vectors with Young row symmetrizers, and constructs SU(N)
//! coherent states from orthonormal frames.
//!
//! Everything here is `no_std` + `alloc`. Parallel Monte Carlo, JSON and the
//! command-line front-end live in the `sunbose` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod coherent;
pub mod combinatorics;
mod error;
pub mod fock;
pub mod identity;
pub mod linalg;
pub mod sparse;
pub mod young;

pub use algebra::{gellmann, structure_constants, wedge_rep, AlgebraBasis, StructureConstants, WedgeRep};
pub use coherent::{Frame, WedgeCoordinates};
pub use error::{Error, Result};
pub use fock::{FockVector, IrrepLabel, Mode, SchwingerRealization, SectorBasis, DEFAULT_SECTOR_CAP};
pub use identity::MCIdentityReport;
pub use sparse::SparseOperator;
pub use young::{LabeledMonomial, Symmetrizer, YoungDiagram};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<Complex>;
