//! Helicity Weyl basis and the four flag-dipole spinors `Λ^{S/A}_{±,∓}(p)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{join, CVec2, CVec4, C64};
use crate::complex_serde;
use crate::error::{Error, Result};
use crate::kinematics::{boost_factors, Kinematics, KinematicsLiteral};

/// Distance from unity below which a modulus counts as unit.
pub const UNIT_MODULUS_TOL: f64 = 1e-9;

/// The complex phases `(β₊, β₋)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PhaseLiteral", into = "PhaseLiteral")]
pub struct PhasePair {
    beta_plus: C64,
    beta_minus: C64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct PhaseLiteral {
    #[serde(with = "complex_serde::pair")]
    beta_plus: C64,
    #[serde(with = "complex_serde::pair")]
    beta_minus: C64,
}

impl TryFrom<PhaseLiteral> for PhasePair {
    type Error = Error;

    fn try_from(p: PhaseLiteral) -> Result<Self> {
        PhasePair::new(p.beta_plus, p.beta_minus)
    }
}

impl From<PhasePair> for PhaseLiteral {
    fn from(p: PhasePair) -> Self {
        PhaseLiteral { beta_plus: p.beta_plus, beta_minus: p.beta_minus }
    }
}

fn usable(z: C64) -> bool {
    z.is_finite() && z.norm() > 0.0
}

impl PhasePair {
    pub fn new(beta_plus: C64, beta_minus: C64) -> Result<Self> {
        if !usable(beta_plus) {
            return Err(Error::ZeroPhase("beta_plus"));
        }
        if !usable(beta_minus) {
            return Err(Error::ZeroPhase("beta_minus"));
        }
        Ok(Self { beta_plus, beta_minus })
    }

    pub fn real(beta_plus: f64, beta_minus: f64) -> Result<Self> {
        Self::new(C64::from(beta_plus), C64::from(beta_minus))
    }

    pub fn beta_plus(&self) -> C64 {
        self.beta_plus
    }

    pub fn beta_minus(&self) -> C64 {
        self.beta_minus
    }

    pub fn is_real(&self) -> bool {
        self.beta_plus.im == 0.0 && self.beta_minus.im == 0.0
    }

    /// `|β₊|² ≈ 1` or `|β₋|² ≈ 1`: the phase constraint required of a proper
    /// flag-dipole is violated.
    pub fn is_degenerate(&self) -> bool {
        (self.beta_plus.norm_sqr() - 1.0).abs() <= UNIT_MODULUS_TOL
            || (self.beta_minus.norm_sqr() - 1.0).abs() <= UNIT_MODULUS_TOL
    }

    /// `|β₊ β₋| ≈ 1`. On this surface the axial current `K` vanishes and the
    /// spinors are flagpoles (class 5) rather than flag-dipoles.
    pub fn is_flagpole(&self) -> bool {
        ((self.beta_plus * self.beta_minus).norm_sqr() - 1.0).abs() <= UNIT_MODULUS_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    S,
    A,
}

/// `(right-hand, left-hand)` component helicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Helicity {
    #[serde(rename = "+-")]
    PlusMinus,
    #[serde(rename = "-+")]
    MinusPlus,
}

impl Helicity {
    pub fn flipped(self) -> Self {
        match self {
            Helicity::PlusMinus => Helicity::MinusPlus,
            Helicity::MinusPlus => Helicity::PlusMinus,
        }
    }

    /// Helicity eigenvalues of the `(upper, lower)` blocks.
    pub fn eigenvalues(self) -> (f64, f64) {
        match self {
            Helicity::PlusMinus => (1.0, -1.0),
            Helicity::MinusPlus => (-1.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinorLabel {
    pub kind: Kind,
    pub helicity: Helicity,
}

impl SpinorLabel {
    /// `(S,+-)`, `(S,-+)`, `(A,+-)`, `(A,-+)`: the ordering used by every table.
    pub const ALL: [SpinorLabel; 4] = [
        SpinorLabel::new(Kind::S, Helicity::PlusMinus),
        SpinorLabel::new(Kind::S, Helicity::MinusPlus),
        SpinorLabel::new(Kind::A, Helicity::PlusMinus),
        SpinorLabel::new(Kind::A, Helicity::MinusPlus),
    ];

    pub const fn new(kind: Kind, helicity: Helicity) -> Self {
        Self { kind, helicity }
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|l| *l == self).expect("label is one of four")
    }

    pub fn flipped(self) -> Self {
        Self::new(self.kind, self.helicity.flipped())
    }

    /// Sign of the flag-dipole norm, `+1` for S and `-1` for A.
    pub fn norm_sign(self) -> f64 {
        match self.kind {
            Kind::S => 1.0,
            Kind::A => -1.0,
        }
    }
}

impl fmt::Display for SpinorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.helicity {
            Helicity::PlusMinus => "+-",
            Helicity::MinusPlus => "-+",
        };
        write!(f, "{:?}{}", self.kind, h)
    }
}

/// A constructed flag-dipole spinor and the context it was built in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlagDipoleSpinor {
    pub label: SpinorLabel,
    pub psi: CVec4,
    pub kin: Kinematics,
    pub phases: PhasePair,
}

/// `φ_L^±(k)`: the `σ·p̂ = ±1` eigenvectors with `√m` normalization,
///
/// `φ_L⁺ = √m (cos(θ/2) e^{-iφ/2}, sin(θ/2) e^{iφ/2})`,
/// `φ_L⁻ = √m (-sin(θ/2) e^{-iφ/2}, cos(θ/2) e^{iφ/2})`.
///
/// They satisfy `Θ φ_L⁺* = φ_L⁻` and `Θ φ_L⁻* = -φ_L⁺`.
pub fn helicity_basis(k: &Kinematics) -> (CVec2, CVec2) {
    let root_m = k.mass().sqrt();
    let (s, c) = (k.theta() / 2.0).sin_cos();
    let back = C64::from_polar(root_m, -k.phi() / 2.0);
    let fwd = C64::from_polar(root_m, k.phi() / 2.0);
    (CVec2::new(back * c, fwd * s), CVec2::new(-back * s, fwd * c))
}

/// Assemble `Λ^{S/A}_{±,∓}(p)` from the block formulas
///
/// ```text
/// Λ^S_{+,-} = B₊ (-β₋*⁻¹ Θφ_L⁻*, β₊ φ_L⁻)    Λ^S_{-,+} = B₋ ( β₊*⁻¹ Θφ_L⁺*, β₋ φ_L⁺)
/// Λ^A_{+,-} = B₊ ( β₋*⁻¹ Θφ_L⁻*, β₊ φ_L⁻)    Λ^A_{-,+} = B₋ (-β₊*⁻¹ Θφ_L⁺*, β₋ φ_L⁺)
/// ```
pub fn build_spinor(label: SpinorLabel, kin: Kinematics, phases: PhasePair) -> Result<FlagDipoleSpinor> {
    let phases = PhasePair::new(phases.beta_plus, phases.beta_minus)?;
    let (plus, minus) = helicity_basis(&kin);
    let b = boost_factors(&kin);
    let theta = crate::algebra::wigner_theta();
    let sign = C64::from(match label.kind {
        Kind::S => -1.0,
        Kind::A => 1.0,
    });
    let psi = match label.helicity {
        Helicity::PlusMinus => {
            let upper = theta * minus.conjugate() * (sign / phases.beta_minus.conj());
            let lower = minus * phases.beta_plus;
            join(&upper, &lower) * C64::from(b.b_plus)
        }
        Helicity::MinusPlus => {
            let upper = theta * plus.conjugate() * (-sign / phases.beta_plus.conj());
            let lower = plus * phases.beta_minus;
            join(&upper, &lower) * C64::from(b.b_minus)
        }
    };
    Ok(FlagDipoleSpinor { label, psi, kin, phases })
}

/// All four spinors at `(kin, phases)` in [`SpinorLabel::ALL`] order.
pub fn family(kin: Kinematics, phases: PhasePair) -> Result<[FlagDipoleSpinor; 4]> {
    let build = |l| build_spinor(l, kin, phases);
    Ok([
        build(SpinorLabel::ALL[0])?,
        build(SpinorLabel::ALL[1])?,
        build(SpinorLabel::ALL[2])?,
        build(SpinorLabel::ALL[3])?,
    ])
}

/// JSON spinor literal: `{"label": {...}, "kin": {...}, "phases": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorLiteral {
    pub label: SpinorLabel,
    pub kin: KinematicsLiteral,
    pub phases: PhasePair,
}

impl SpinorLiteral {
    pub fn build(&self) -> Result<FlagDipoleSpinor> {
        build_spinor(self.label, Kinematics::try_from(self.kin)?, self.phases)
    }
}

impl FlagDipoleSpinor {
    pub fn literal(&self) -> SpinorLiteral {
        SpinorLiteral { label: self.label, kin: self.kin.literal(), phases: self.phases }
    }
}
