//! On-shell kinematics, the scalar boost factors `B±` and the spinor-space boost.

use serde::{Deserialize, Serialize};

use crate::algebra::{block_diag, helicity_operator, CMat2, CMat4, C64, I};
use crate::error::{Error, Result};

/// On-shell momentum `(m, p, θ, φ)` with `E = sqrt(p² + m²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Kinematics {
    mass: f64,
    momentum: f64,
    energy: f64,
    theta: f64,
    phi: f64,
}

/// Serialized form of [`Kinematics`]; the energy is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicsLiteral {
    pub m: f64,
    pub p: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Kinematics {
    /// Validates `m > 0`, `p ≥ 0`, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn new(mass: f64, momentum: f64, theta: f64, phi: f64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidKinematics(msg));
        if !(mass.is_finite() && mass > 0.0) {
            return bad(format!("mass must be positive and finite, got {mass}"));
        }
        if !(momentum.is_finite() && momentum >= 0.0) {
            return bad(format!("momentum must be non-negative and finite, got {momentum}"));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return bad(format!("theta must lie in [0, π], got {theta}"));
        }
        if !(0.0..std::f64::consts::TAU).contains(&phi) {
            return bad(format!("phi must lie in [0, 2π), got {phi}"));
        }
        Ok(Self { mass, momentum, energy: momentum.hypot(mass), theta, phi })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The rest frame `k^μ`: zero momentum, same mass and direction angles.
    pub fn rest(&self) -> Self {
        Self { momentum: 0.0, energy: self.mass, ..*self }
    }

    pub fn is_rest(&self) -> bool {
        self.momentum == 0.0
    }

    /// Rapidity `χ` with `e^χ = (E + p) / m`.
    pub fn rapidity(&self) -> f64 {
        ((self.energy + self.momentum) / self.mass).ln()
    }

    pub fn helicity_operator(&self) -> CMat2 {
        helicity_operator(self.theta, self.phi)
    }

    pub fn literal(&self) -> KinematicsLiteral {
        KinematicsLiteral { m: self.mass, p: self.momentum, theta: self.theta, phi: self.phi }
    }
}

impl TryFrom<KinematicsLiteral> for Kinematics {
    type Error = Error;

    fn try_from(k: KinematicsLiteral) -> Result<Self> {
        Kinematics::new(k.m, k.p, k.theta, k.phi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoostFactors {
    pub b_plus: f64,
    pub b_minus: f64,
}

/// `B± = sqrt((E + m) / 2m) · (1 ± p / (E + m))`.
pub fn boost_factors(k: &Kinematics) -> BoostFactors {
    let (e, m, p) = (k.energy, k.mass, k.momentum);
    let pref = ((e + m) / (2.0 * m)).sqrt();
    BoostFactors { b_plus: pref * (1.0 + p / (e + m)), b_minus: pref * (1.0 - p / (e + m)) }
}

/// Anti-Hermitian generator `κφ` of the collinear boost, so that
/// `boost_matrix(k) = exp(i κφ)`.
pub fn boost_generator(k: &Kinematics) -> CMat4 {
    let half = C64::from(k.rapidity() / 2.0);
    let h = k.helicity_operator();
    block_diag(&(h * half), &(h * (-half))) * (-I)
}

/// `blockdiag(exp(+σ·p̂ χ/2), exp(-σ·p̂ χ/2))`.
///
/// Since `(σ·p̂)² = 𝟙` the exponentials are `cosh(χ/2) ± σ·p̂ sinh(χ/2)`.
pub fn boost_matrix(k: &Kinematics) -> CMat4 {
    let half = k.rapidity() / 2.0;
    let (c, s) = (C64::from(half.cosh()), C64::from(half.sinh()));
    let h = k.helicity_operator();
    let id = CMat2::identity();
    block_diag(&(id * c + h * s), &(id * c - h * s))
}

/// Inverse boost, `blockdiag(exp(-σ·p̂ χ/2), exp(+σ·p̂ χ/2))`.
pub fn inverse_boost_matrix(k: &Kinematics) -> CMat4 {
    let half = k.rapidity() / 2.0;
    let (c, s) = (C64::from(half.cosh()), C64::from(half.sinh()));
    let h = k.helicity_operator();
    let id = CMat2::identity();
    block_diag(&(id * c - h * s), &(id * c + h * s))
}
