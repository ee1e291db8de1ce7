//! Flag-dipole spinors: construction, the `Γ(p)` dual, bilinear covariants,
//! Lounesto classification and the discrete `C`, `P`, `T` symmetries.
//!
//! Every quantity is computed in a single fixed chiral basis (see [`algebra`]).

pub mod algebra;
pub mod complex_serde;
pub mod covariants;
pub mod dualspace;
pub mod error;
pub mod kinematics;
pub mod sampling;
pub mod spinors;
pub mod symmetries;

pub use algebra::{gamma_basis, helicity_operator, wigner_theta, CMat2, CMat4, CVec2, CVec4, GammaBasis, C64};
pub use covariants::{bilinears, fpk_residuals, lounesto_classify, BilinearSet, FpkResiduals, LounestoClass};
pub use dualspace::{
    closed_form_functions, dirac_dual, flag_dipole_dual, gamma_boost_covariance_check, gamma_closed_form,
    gamma_from_spin_sums, gram_dirac, spin_sum, ClosedFormFunctions, DualKind, DualRow, GammaOperator, GammaSource,
};
pub use error::{Error, Result};
pub use kinematics::{boost_factors, boost_matrix, BoostFactors, Kinematics, KinematicsLiteral};
pub use sampling::{sample_points, PhaseMode, SamplePoint};
pub use spinors::{
    build_spinor, family, helicity_basis, FlagDipoleSpinor, Helicity, Kind, PhasePair, SpinorLabel, SpinorLiteral,
};
pub use symmetries::{charge_conjugate, parity_apply, symmetry_ledger, time_reverse, SymmetryAction, SymmetryLedger};
