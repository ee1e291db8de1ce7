//! Bilinear covariants, Fierz–Pauli–Kofink residuals and the Lounesto classes.

use serde::Serialize;

use crate::algebra::{gamma_basis, max_abs, metric, CMat4, CVec4, C64, I};
use crate::complex_serde;
use crate::dualspace::dirac_dual;
use crate::error::{Error, Result};

/// Default relative threshold for the classifier's zero tests.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-8;

/// Index pairs `(μ, ν)` with `μ < ν`, in the order `S` stores them.
pub const TENSOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The sixteen bilinears of a spinor under the Dirac dual.
///
/// `σ = ψ̄ψ`, `ω = ψ̄γ₅ψ`, `J^μ = ψ̄γ^μψ`, `K^μ = ψ̄γ^μγ₅ψ`,
/// `S^{μν} = ψ̄ iγ^{μν} ψ` with `γ^{μν} = ½[γ^μ, γ^ν]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BilinearSet {
    #[serde(with = "complex_serde::pair")]
    pub sigma: C64,
    #[serde(with = "complex_serde::pair")]
    pub omega: C64,
    #[serde(rename = "J", with = "complex_serde::pairs")]
    pub j: [C64; 4],
    #[serde(rename = "K", with = "complex_serde::pairs")]
    pub k: [C64; 4],
    #[serde(rename = "S", with = "complex_serde::pairs")]
    pub s: [C64; 6],
}

fn minkowski(a: &[C64; 4], b: &[C64; 4]) -> C64 {
    (0..4).map(|mu| a[mu] * b[mu] * metric(mu, mu)).sum()
}

fn inf_norm(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

impl BilinearSet {
    /// `max(|σ|, |ω|, ‖J‖∞, ‖K‖∞, ‖S‖∞)`.
    pub fn scale(&self) -> f64 {
        self.sigma.norm().max(self.omega.norm()).max(inf_norm(&self.j)).max(inf_norm(&self.k)).max(inf_norm(&self.s))
    }

    pub fn j_dot_j(&self) -> C64 {
        minkowski(&self.j, &self.j)
    }

    pub fn k_dot_k(&self) -> C64 {
        minkowski(&self.k, &self.k)
    }

    pub fn j_dot_k(&self) -> C64 {
        minkowski(&self.j, &self.k)
    }
}

pub fn bilinears(psi: &CVec4) -> Result<BilinearSet> {
    if max_abs(psi) == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let basis = gamma_basis();
    let bar = dirac_dual(psi);
    let sandwich = |m: &CMat4| bar.pair(&(m * psi));
    Ok(BilinearSet {
        sigma: bar.pair(psi),
        omega: sandwich(&basis.gamma5),
        j: std::array::from_fn(|mu| sandwich(&basis.gamma[mu])),
        k: std::array::from_fn(|mu| sandwich(&(basis.gamma[mu] * basis.gamma5))),
        s: TENSOR_PAIRS.map(|(mu, nu)| sandwich(&(basis.sigma_munu(mu, nu) * I))),
    })
}

/// Moduli of the three quadratic Fierz identities.
///
/// `ω = ψ̄γ₅ψ` is kept without a factor of `i`, so it is purely imaginary and
/// `-ω²` equals the square of the usual Hermitian pseudoscalar. The identities
/// therefore read `J·J = σ² - ω²`, `J·K = 0`, `K·K = -(σ² - ω²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FpkResiduals {
    /// `|J·J - σ² + ω²|`
    pub r1: f64,
    /// `|J·K|`
    pub r2: f64,
    /// `|K·K + σ² - ω²|`
    pub r3: f64,
}

impl FpkResiduals {
    pub fn max(&self) -> f64 {
        self.r1.max(self.r2).max(self.r3)
    }

    /// Residuals divided by `scale²` of the bilinears they came from.
    pub fn scaled(&self, b: &BilinearSet) -> FpkResiduals {
        let s2 = b.scale().powi(2).max(f64::MIN_POSITIVE);
        FpkResiduals { r1: self.r1 / s2, r2: self.r2 / s2, r3: self.r3 / s2 }
    }
}

pub fn fpk_residuals(b: &BilinearSet) -> FpkResiduals {
    let scalars = b.sigma * b.sigma - b.omega * b.omega;
    FpkResiduals { r1: (b.j_dot_j() - scalars).norm(), r2: b.j_dot_k().norm(), r3: (b.k_dot_k() + scalars).norm() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LounestoClass {
    pub class_id: u8,
    pub tol: f64,
}

/// Lounesto decision tree on `(σ, ω, K, S)`; a quantity counts as zero when it
/// is below `tol · scale`.
///
/// | class | σ | ω | K | S |
/// |-------|---|---|---|---|
/// | 1 | ≠0 | ≠0 | | |
/// | 2 | ≠0 | 0 | | |
/// | 3 | 0 | ≠0 | | |
/// | 4 | 0 | 0 | ≠0 | ≠0 |
/// | 5 | 0 | 0 | 0 | ≠0 |
/// | 6 | 0 | 0 | ≠0 | 0 |
pub fn lounesto_classify(b: &BilinearSet, tol: f64) -> Result<LounestoClass> {
    let threshold = tol * b.scale();
    let zero = |x: f64| x <= threshold;
    if zero(inf_norm(&b.j)) {
        return Err(Error::Unclassifiable("current J vanishes"));
    }
    let class_id = match (zero(b.sigma.norm()), zero(b.omega.norm())) {
        (false, false) => 1,
        (false, true) => 2,
        (true, false) => 3,
        (true, true) => match (zero(inf_norm(&b.k)), zero(inf_norm(&b.s))) {
            (false, false) => 4,
            (true, false) => 5,
            (false, true) => 6,
            (true, true) => return Err(Error::Unclassifiable("σ, ω, K and S all vanish")),
        },
    };
    Ok(LounestoClass { class_id, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Kinematics;
    use crate::spinors::{family, PhasePair};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn dirac_like() -> CVec4 {
        let h = C64::from(FRAC_1_SQRT_2);
        let z = C64::from(0.0);
        CVec4::new(h, z, h, z)
    }

    /// Independent route to `J·J`: `J⁰² - |J|²` written out by hand.
    fn jj_by_hand(b: &BilinearSet) -> C64 {
        b.j[0] * b.j[0] - b.j[1] * b.j[1] - b.j[2] * b.j[2] - b.j[3] * b.j[3]
    }

    #[test]
    fn dirac_like_vector() {
        let b = bilinears(&dirac_like()).unwrap();
        assert!((b.sigma - C64::from(1.0)).norm() < 1e-15);
        assert!(b.omega.norm() < 1e-15);
        assert!(fpk_residuals(&b).max() < 1e-14);
        assert_eq!(lounesto_classify(&b, DEFAULT_CLASSIFY_TOL).unwrap().class_id, 2);
    }

    #[test]
    fn zero_spinor_rejected() {
        assert_eq!(bilinears(&CVec4::zeros()).unwrap_err(), Error::ZeroSpinor);
    }

    #[test]
    fn flag_dipole_bilinears() {
        let k = Kinematics::new(1.0, 1.7, 0.8, 2.6).unwrap();
        let ph = PhasePair::new(C64::new(2.0, 0.5), C64::new(0.3, -0.1)).unwrap();
        for s in family(k, ph).unwrap() {
            let b = bilinears(&s.psi).unwrap();
            let scale = b.scale();
            assert!(b.sigma.norm() < 1e-12 * scale);
            assert!(b.omega.norm() < 1e-12 * scale);
            assert!(jj_by_hand(&b).norm() < 1e-12 * scale * scale);
            assert!(b.k_dot_k().norm() < 1e-12 * scale * scale);
            assert!(b.j.iter().all(|z| z.im.abs() < 1e-12 * scale));
            assert!(b.j[0].re > 0.0);
            assert!(fpk_residuals(&b).scaled(&b).max() < 1e-12);
            assert_eq!(lounesto_classify(&b, DEFAULT_CLASSIFY_TOL).unwrap().class_id, 4);
        }
    }

    #[test]
    fn flagpole_when_beta_product_has_unit_modulus() {
        let k = Kinematics::new(1.0, 0.75, 1.0, 0.3).unwrap();
        for ph in [PhasePair::real(2.0, 0.5).unwrap(), PhasePair::real(1.0, 1.0).unwrap()] {
            for s in family(k, ph).unwrap() {
                let b = bilinears(&s.psi).unwrap();
                assert_eq!(lounesto_classify(&b, DEFAULT_CLASSIFY_TOL).unwrap().class_id, 5);
            }
        }
        // a single unit-modulus phase is not enough to kill K
        let one_unit = PhasePair::new(C64::from_polar(1.0, 1.0), C64::from(0.5)).unwrap();
        let b = bilinears(&family(k, one_unit).unwrap()[0].psi).unwrap();
        assert_eq!(lounesto_classify(&b, DEFAULT_CLASSIFY_TOL).unwrap().class_id, 4);
    }

    #[test]
    fn corrupted_set_breaks_fierz() {
        let k = Kinematics::new(1.0, 0.5, 0.3, 0.3).unwrap();
        let ph = PhasePair::real(3.0, 0.5).unwrap();
        let mut b = bilinears(&family(k, ph).unwrap()[1].psi).unwrap();
        b.j[0] += 1.0;
        assert!(fpk_residuals(&b).r1 > 0.1);
    }

    #[test]
    fn remaining_classes() {
        let z = C64::from(0.0);
        let one = C64::from(1.0);
        // Weyl: purely right-handed spinor
        let weyl = bilinears(&CVec4::new(one, z, z, z)).unwrap();
        assert_eq!(lounesto_classify(&weyl, DEFAULT_CLASSIFY_TOL).unwrap().class_id, 6);
        // ψ = (1, 0, i, 0)/√2 has σ = 0, ω ≠ 0
        let h = C64::from(FRAC_1_SQRT_2);
        let c3 = bilinears(&CVec4::new(h, z, h * I, z)).unwrap();
        assert_eq!(lounesto_classify(&c3, DEFAULT_CLASSIFY_TOL).unwrap().class_id, 3);
        let c1 = bilinears(&CVec4::new(h, z, h * C64::from_polar(1.0, 0.4), z)).unwrap();
        assert_eq!(lounesto_classify(&c1, DEFAULT_CLASSIFY_TOL).unwrap().class_id, 1);
    }

    #[test]
    fn vanishing_current_is_unclassifiable() {
        let z = C64::from(0.0);
        let b = BilinearSet { sigma: C64::from(1.0), omega: z, j: [z; 4], k: [z; 4], s: [z; 6] };
        assert!(matches!(lounesto_classify(&b, 1e-8), Err(Error::Unclassifiable(_))));
    }
}
