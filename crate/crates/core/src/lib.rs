//! Constructions and checks for the finite Weyl-Heisenberg and Clifford
//! groups: complete sets of mutually unbiased bases in prime dimensions and
//! in dimension 4, the exact SICs in dimensions 3 and 4, equiangular sets,
//! minimum-uncertainty states, the Hesse, Segre and Kummer incidence
//! configurations, and a numerical SIC fiducial search.

pub mod bases;
pub mod error;
pub mod format;
pub mod geometry;
pub mod heisenberg;
pub mod linalg;
pub mod optimizer;
pub mod report;
pub mod sic;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector, Tolerance, UnitaryOp, C64};
pub use report::VerificationReport;
pub use bases::{BasisLabel, BasisSet};
pub use format::{MatrixFile, MatrixKind};
pub use geometry::{HessePencilParam, IncidenceStructure, Signature};
pub use optimizer::{SearchConfig, SearchResult, Symmetry};
pub use sic::SicCandidate;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
