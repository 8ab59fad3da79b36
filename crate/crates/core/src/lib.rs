//! Exact computation of Milnor-Wood degree bounds for Higgs bundles.
//!
//! All linear algebra runs over the field Q(i, sqrt2) with arbitrary
//! precision rational coefficients, so every Lie-theoretic constant in the
//! bound is produced exactly. The only approximate object is pi, which is
//! handled through certified rational enclosures of arbitrary width.

// Errors deliberately carry exact matrix witnesses, and the index-paired
// loops over symmetric tables read better as ranges.
#![allow(clippy::result_large_err, clippy::large_enum_variant, clippy::needless_range_loop)]

pub mod admissible;
pub mod cli;
pub mod higgs;
pub mod interval;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod scalar;

pub use admissible::{
    check_admissible, compute_c_sigma, embed_sp_in_su, standard_rep_su, AdmissibilityCertificate,
    AdmissibleError, AdmissibleRep, EmbeddingData,
};
pub use higgs::{
    curvature_and_trace_identity, make_sample, omega_two_routes, tau, theta_c,
    verify_wedge_collapse, wedge, CurvatureBlocks, HiggsError, HiggsSample, IdentityCheck,
    IdentityReport, SampleMode,
};
pub use interval::{pi_enclosure, IntervalError, RationalInterval, DEFAULT_PI_BITS, PI_BITS_CAP};
pub use lie::{
    build_algebra, CartanDecomposition, Family, HermitianStructure, LieError, MetricForm,
    MetricKind, RealLieAlgebra,
};
pub use matrix::{MatrixError, MatrixF};
pub use report::{
    build_report, build_scan, degree_bound, mw_gate, toledo_from_degree, DegreeRow, GateOutcome,
    IdentitySummary, MwReport, ReportCertificates, ReportError, ReportOptions, ScanTable,
    ToledoValue,
};
pub use scalar::{FieldScalar, ScalarError};

/// Arbitrary precision rational scalar used throughout.
pub type Rational = num_rational::BigRational;
