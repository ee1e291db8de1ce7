//! Dirac dual, the `Γ(p)` operator and the flag-dipole dual built from it.
//!
//! `Γ(p)` is defined by the signed spin sum
//!
//! ```text
//! Γ = (1/2m) [Λ^S_{+-} Λ̄^S_{+-} + Λ^S_{-+} Λ̄^S_{-+} - Λ^A_{+-} Λ̄^A_{+-} - Λ^A_{-+} Λ̄^A_{-+}]
//! ```
//!
//! and cross-checked against the closed block form in terms of `g`, `f₁`, `f₂`.
//! The flag-dipole dual is `Λ̃ = [Γ Λ]† γ₀`.

use nalgebra::RowVector4;
use serde::Serialize;

use crate::algebra::{gamma_basis, max_abs, CMat4, CVec4, C64};
use crate::complex_serde;
use crate::error::{Error, Result};
use crate::kinematics::{boost_matrix, inverse_boost_matrix, Kinematics};
use crate::spinors::{family, FlagDipoleSpinor, Kind, PhasePair, SpinorLabel};

/// Residual allowed on `Γ² - 𝟙` before degenerate phases are reported as an error.
pub const GAMMA_INVOLUTION_TOL: f64 = 1e-10;

/// A row covector; pairing with a column spinor gives a scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualRow(pub RowVector4<C64>);

impl DualRow {
    pub fn pair(&self, psi: &CVec4) -> C64 {
        (self.0 * psi)[(0, 0)]
    }

    /// Outer product `ψ ⊗ row`.
    pub fn outer(&self, psi: &CVec4) -> CMat4 {
        psi * self.0
    }
}

/// `ψ̄ = ψ† γ₀`.
pub fn dirac_dual(psi: &CVec4) -> DualRow {
    DualRow(psi.adjoint() * gamma_basis().gamma[0])
}

/// `table[a][b] = Λ̄_a Λ_b` with labels in [`SpinorLabel::ALL`] order.
pub type GramTable = [[C64; 4]; 4];

pub fn gram_dirac(kin: Kinematics, phases: PhasePair) -> Result<GramTable> {
    let fam = family(kin, phases)?;
    Ok(std::array::from_fn(|a| {
        let dual = dirac_dual(&fam[a].psi);
        std::array::from_fn(|b| dual.pair(&fam[b].psi))
    }))
}

/// Value the Gram table takes in units of `m`: `+2` for opposite-helicity S
/// pairs, `-2` for opposite-helicity A pairs, zero everywhere else.
pub fn expected_gram_entry(a: SpinorLabel, b: SpinorLabel) -> f64 {
    if a.kind == b.kind && a.helicity != b.helicity {
        2.0 * a.norm_sign()
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaSource {
    SpinSum,
    ClosedForm,
}

/// `Γ(p)` together with the context it was built in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaOperator {
    pub matrix: CMat4,
    pub source: GammaSource,
    pub kin: Kinematics,
    pub phases: PhasePair,
}

impl GammaOperator {
    pub fn apply(&self, psi: &CVec4) -> CVec4 {
        self.matrix * psi
    }

    pub fn scale(&self) -> f64 {
        max_abs(&self.matrix).max(1.0)
    }

    /// `max|Γ² - 𝟙| / max|Γ|²`.
    pub fn involution_residual(&self) -> f64 {
        max_abs(&(self.matrix * self.matrix - CMat4::identity())) / self.scale().powi(2)
    }

    /// `max|Γ - Γ⁻¹| / max|Γ|`, with the inverse from an LU solve.
    /// Infinite if `Γ` is singular.
    pub fn self_inverse_residual(&self) -> f64 {
        match self.matrix.lu().solve(&CMat4::identity()) {
            Some(inv) => max_abs(&(self.matrix - inv)) / self.scale(),
            None => f64::INFINITY,
        }
    }

    /// `max|[Γ, γ₅]| / max|Γ|`.
    pub fn gamma5_commutator_residual(&self) -> f64 {
        let g5 = gamma_basis().gamma5;
        max_abs(&(self.matrix * g5 - g5 * self.matrix)) / self.scale()
    }

    /// Largest of the eight entries coupling the upper and lower Weyl blocks.
    pub fn off_block_residual(&self) -> f64 {
        let upper_right = max_abs(&self.matrix.fixed_view::<2, 2>(0, 2));
        let lower_left = max_abs(&self.matrix.fixed_view::<2, 2>(2, 0));
        upper_right.max(lower_left) / self.scale()
    }

    fn same_context(&self, s: &FlagDipoleSpinor) -> bool {
        self.kin == s.kin && self.phases == s.phases
    }
}

/// Normative `Γ(p)` from the signed spin sum.
pub fn gamma_from_spin_sums(kin: Kinematics, phases: PhasePair) -> Result<GammaOperator> {
    let fam = family(kin, phases)?;
    let sum = fam
        .iter()
        .fold(CMat4::zeros(), |acc, s| acc + dirac_dual(&s.psi).outer(&s.psi) * C64::from(s.label.norm_sign()));
    let gamma = GammaOperator { matrix: sum / C64::from(2.0 * kin.mass()), source: GammaSource::SpinSum, kin, phases };
    if phases.is_degenerate() {
        let residual = gamma.involution_residual();
        if residual > GAMMA_INVOLUTION_TOL {
            return Err(Error::DegeneratePhases { residual });
        }
    }
    Ok(gamma)
}

/// The three functions of the closed block form of `Γ(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormFunctions {
    #[serde(with = "complex_serde::pair")]
    pub g: C64,
    #[serde(with = "complex_serde::pair")]
    pub f1: C64,
    #[serde(with = "complex_serde::pair")]
    pub f2: C64,
}

impl ClosedFormFunctions {
    /// `g² + f₁f₂`, which must equal one for `Γ² = 𝟙`.
    pub fn determinant_like(&self) -> C64 {
        self.g * self.g + self.f1 * self.f2
    }
}

/// ```text
/// g  = sinθ/2 · [(E+p)β₊² + (E-p)β₋²] / (m β₊β₋)
/// f₁ = e^{iφ}  [(E+p)cos²(θ/2)β₊² - (E-p)sin²(θ/2)β₋²] / (m β₊β₋)
/// f₂ = e^{-iφ} [(E-p)cos²(θ/2)β₋² - (E+p)sin²(θ/2)β₊²] / (m β₊β₋)
/// ```
pub fn closed_form_functions(kin: &Kinematics, phases: &PhasePair) -> ClosedFormFunctions {
    let (e, p, m) = (kin.energy(), kin.momentum(), kin.mass());
    let (bp, bm) = (phases.beta_plus(), phases.beta_minus());
    let (bp2, bm2) = (bp * bp, bm * bm);
    let denom = bp * bm * m;
    let (s_half, c_half) = (kin.theta() / 2.0).sin_cos();
    let (c2, s2) = (c_half * c_half, s_half * s_half);
    let g = (bp2 * (e + p) + bm2 * (e - p)) / denom * (kin.theta().sin() / 2.0);
    let f1 = (bp2 * ((e + p) * c2) - bm2 * ((e - p) * s2)) / denom * C64::from_polar(1.0, kin.phi());
    let f2 = (bm2 * ((e - p) * c2) - bp2 * ((e + p) * s2)) / denom * C64::from_polar(1.0, -kin.phi());
    ClosedFormFunctions { g, f1, f2 }
}

/// `[[-g*, f₁*, 0, 0], [f₂*, g*, 0, 0], [0, 0, -g, f₂], [0, 0, f₁, g]]`.
pub fn closed_form_matrix(f: &ClosedFormFunctions) -> CMat4 {
    let z = C64::from(0.0);
    let (g, f1, f2) = (f.g, f.f1, f.f2);
    CMat4::new(-g.conj(), f1.conj(), z, z, f2.conj(), g.conj(), z, z, z, z, -g, f2, z, z, f1, g)
}

pub fn gamma_closed_form(kin: Kinematics, phases: PhasePair) -> GammaOperator {
    GammaOperator {
        matrix: closed_form_matrix(&closed_form_functions(&kin, &phases)),
        source: GammaSource::ClosedForm,
        kin,
        phases,
    }
}

/// `max|Γ_closed - Γ_spin-sum| / max|Γ_spin-sum|`.
pub fn closed_form_residual(kin: Kinematics, phases: PhasePair) -> Result<f64> {
    let spin = gamma_from_spin_sums(kin, phases)?;
    let closed = gamma_closed_form(kin, phases);
    Ok(max_abs(&(closed.matrix - spin.matrix)) / spin.scale())
}

/// `Λ̃ = [Γ Λ]† γ₀`.
pub fn flag_dipole_dual(psi: &FlagDipoleSpinor, gamma: &GammaOperator) -> Result<DualRow> {
    if !gamma.same_context(psi) {
        return Err(Error::MismatchedContext);
    }
    Ok(dirac_dual(&gamma.apply(&psi.psi)))
}

/// Size of the partial sums in `¬λ λ / m`: `max|Γ| · max|λ|² / m`, floored at 1.
/// Γ can be much larger than the spinors it flips, so roundoff in the new-dual
/// pairing tracks this rather than the pairing itself.
pub fn dual_pairing_scale(psi: &FlagDipoleSpinor, gamma: &GammaOperator) -> f64 {
    (gamma.scale() * max_abs(&psi.psi).powi(2) / psi.kin.mass()).max(1.0)
}

/// `max|Γ(p) - B Γ_rest B⁻¹| / max|Γ(p)|` for two already-built operators.
pub fn covariance_residual(moving: &GammaOperator, rest: &GammaOperator) -> f64 {
    let b = boost_matrix(&moving.kin);
    let conjugated = b * rest.matrix * inverse_boost_matrix(&moving.kin);
    max_abs(&(moving.matrix - conjugated)) / moving.scale()
}

/// Residual of `Γ(p) = B Γ(k) B⁻¹`, with `Γ(k)` built at rest with the same
/// angles and phases.
pub fn gamma_boost_covariance_check(kin: Kinematics, phases: PhasePair) -> Result<f64> {
    let moving = gamma_from_spin_sums(kin, phases)?;
    let rest = gamma_from_spin_sums(kin.rest(), phases)?;
    Ok(covariance_residual(&moving, &rest))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualKind {
    Dirac,
    FlagDipole,
}

/// `Σ_h Λ^{kind}_h ⊗ dual(Λ^{kind}_h)`.
pub fn spin_sum(kind: Kind, kin: Kinematics, phases: PhasePair, dual: DualKind) -> Result<CMat4> {
    let gamma = match dual {
        DualKind::Dirac => None,
        DualKind::FlagDipole => Some(gamma_from_spin_sums(kin, phases)?),
    };
    family(kin, phases)?.iter().filter(|s| s.label.kind == kind).try_fold(CMat4::zeros(), |acc, s| {
        let row = match &gamma {
            None => dirac_dual(&s.psi),
            Some(g) => flag_dipole_dual(s, g)?,
        };
        Ok(acc + row.outer(&s.psi))
    })
}
