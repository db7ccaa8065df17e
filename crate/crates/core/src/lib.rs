//! Generalized Werner states on `n` qudits of dimension `d`.
//!
//! `W(s) = (1 - s) I / d^n + s |Psi><Psi|` with `|Psi> = d^{-1/2} sum_j |j...j>`
//! is fully separable exactly when `s <= 1 / (1 + d^(n-1))`. This crate builds
//! the states, evaluates the necessary conditions (element-wise
//! Cauchy-Schwarz and partial transpose), produces explicit separable
//! decompositions at and below the threshold, and verifies them.

pub mod certificate;
pub mod criteria;
pub mod decompose;
pub mod error;
pub mod exec;
pub mod phases;
pub mod rational;
pub mod states;
pub mod tensor;

pub use certificate::{parse, serialize, verify, verify_with, VerificationReport, Verdict, VerifyTolerances};
pub use criteria::{
    cauchy_schwarz_margin, ppt_min_eig, threshold, werner_necessary_max_s, witness_quadruple, worst_cauchy_schwarz,
    IndexQuadruple, ScanMode,
};
pub use decompose::{decompose_rho_n, decompose_werner, Config, ProductTerm, SeparableCertificate, TargetDescriptor};
pub use error::{Error, Result};
pub use exec::Exec;
pub use phases::{enumerate_phase_vectors, fourth_moment, moment_sums, GaussInt, MomentSums, PhaseVector, Unit};
pub use rational::ExactRational;
pub use states::{psi_ghz, pure_from_phases, rho1_pure, rho_phase_family, werner, FixedPhases, WernerParams};
pub use tensor::{
    eig_min_hermitian, kron, partial_transpose, ComplexMatrix, DensityMatrix, MultiIndex, Tolerances,
};
