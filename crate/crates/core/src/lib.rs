//! Complex-quaternion reformulations of the time-harmonic Maxwell system and
//! the fixed-energy Dirac equation, with an exact operator calculus that
//! certifies the identities connecting them.

pub mod bridge;
pub mod dirac;
pub mod error;
pub mod field;
pub mod grid;
pub mod harness;
pub mod literal;
pub mod matrix;
pub mod maxwell;
pub mod operator;
pub mod quaternion;
pub mod scalar;

pub use bridge::{
    decompose, dispersion_check, maxwell_to_dirac, operator_identities, projector_laws, projectors,
    DispersionRecord, IdentityReport, ProjectorPair,
};
pub use dirac::{
    alpha_vector, matching_kappa, reconstruct_gammas, DiracParams, GammaReconstruction, GammaSet,
    TransformA,
};
pub use error::{Error, Result};
pub use field::{apply_operator, vector_parts, AnalyticField, PlaneWaveTerm, VectorParts};
pub use grid::{fd_apply, residual_max, sample, GridField, GridSpec};
pub use harness::{run_suite, ScenarioConfig, VerificationReport};
pub use matrix::Matrix4;
pub use maxwell::{
    beltrami_residual, maxwell_residuals, plane_wave, Helicity, MaxwellPair, MediumParams,
};
pub use operator::{
    d_alpha, d_kappa, laplacian, moisil_theodoresco, DiffOperator, Monomial, ReflectionMask, Sign,
};
pub use quaternion::{lift_left, lift_right, qmul, qmul_vecform, square_of_vector, Quaternion};
pub use scalar::{Exact, Float, Mode, Scalar};
