//! Fixed-size complex kernel and the concrete chiral gamma basis.
//!
//! Conventions used throughout the crate:
//!
//! * metric signature `(+, -, -, -)`;
//! * `γ⁰ = [[0, 1], [1, 0]]`, `γʲ = [[0, σʲ], [-σʲ, 0]]`, `γ₅ = diag(1, -1)`;
//! * with these blocks `γ₅ = -i γ⁰γ¹γ²γ³`;
//! * Weyl blocks are stacked as `(right-handed, left-handed)`.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CVec2 = Vector2<C64>;
pub type CVec4 = Vector4<C64>;
pub type CMat2 = Matrix2<C64>;
pub type CMat4 = Matrix4<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Minkowski metric component `η^{μν}`.
pub fn metric(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

/// Pauli matrix `σʲ` for `j ∈ {1, 2, 3}`.
pub fn pauli(j: usize) -> CMat2 {
    match j {
        1 => CMat2::new(ZERO, ONE, ONE, ZERO),
        2 => CMat2::new(ZERO, -I, I, ZERO),
        3 => CMat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {j} out of range 1..=3"),
    }
}

/// Wigner time-reversal matrix `Θ = [[0, -1], [1, 0]]`.
pub fn wigner_theta() -> CMat2 {
    CMat2::new(ZERO, -ONE, ONE, ZERO)
}

/// Unit vector `(sinθ cosφ, sinθ sinφ, cosθ)`.
pub fn unit_direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Helicity operator `σ·p̂` for the direction `(θ, φ)`.
pub fn helicity_operator(theta: f64, phi: f64) -> CMat2 {
    let n = unit_direction(theta, phi);
    (1..=3).fold(CMat2::zeros(), |acc, j| acc + pauli(j) * C64::from(n[j - 1]))
}

/// Assemble a 4×4 matrix from 2×2 blocks `[[a, b], [c, d]]`.
pub fn block(a: &CMat2, b: &CMat2, c: &CMat2, d: &CMat2) -> CMat4 {
    let mut m = CMat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

pub fn block_diag(a: &CMat2, d: &CMat2) -> CMat4 {
    block(a, &CMat2::zeros(), &CMat2::zeros(), d)
}

/// Stack two Weyl blocks into a 4-spinor.
pub fn join(upper: &CVec2, lower: &CVec2) -> CVec4 {
    CVec4::new(upper[0], upper[1], lower[0], lower[1])
}

/// Split a 4-spinor into its `(upper, lower)` Weyl blocks.
pub fn split(psi: &CVec4) -> (CVec2, CVec2) {
    (CVec2::new(psi[0], psi[1]), CVec2::new(psi[2], psi[3]))
}

/// Largest entry modulus of any vector or matrix.
pub fn max_abs<R, C, S>(m: &nalgebra::Matrix<C64, R, C, S>) -> f64
where
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    S: nalgebra::RawStorage<C64, R, C>,
{
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |a - b|` divided by `scale` (or by 1 when `scale` is zero).
pub fn scaled_diff<const R: usize, const C: usize>(
    a: &nalgebra::SMatrix<C64, R, C>,
    b: &nalgebra::SMatrix<C64, R, C>,
    scale: f64,
) -> f64 {
    let d = max_abs(&(a - b));
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

/// The chiral-representation Dirac basis together with the 2×2 building blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaBasis {
    pub gamma: [CMat4; 4],
    pub gamma5: CMat4,
    pub theta: CMat2,
    pub sigma: [CMat2; 3],
}

impl GammaBasis {
    pub fn gamma0(&self) -> &CMat4 {
        &self.gamma[0]
    }

    /// `γ^{μν} = ½[γ^μ, γ^ν]`.
    pub fn sigma_munu(&self, mu: usize, nu: usize) -> CMat4 {
        let (a, b) = (&self.gamma[mu], &self.gamma[nu]);
        (a * b - b * a) * C64::from(0.5)
    }

    /// `E γ⁰ + p γʲp̂ʲ`, which in this basis is `[[0, E + p σ·p̂], [E - p σ·p̂, 0]]`.
    pub fn slash(&self, energy: f64, momentum: f64, theta: f64, phi: f64) -> CMat4 {
        let n = unit_direction(theta, phi);
        let spatial = (1..=3).fold(CMat4::zeros(), |acc, j| acc + self.gamma[j] * C64::from(momentum * n[j - 1]));
        self.gamma[0] * C64::from(energy) + spatial
    }
}

impl Default for GammaBasis {
    fn default() -> Self {
        gamma_basis()
    }
}

pub fn gamma_basis() -> GammaBasis {
    let id = CMat2::identity();
    let zero = CMat2::zeros();
    let sigma = [pauli(1), pauli(2), pauli(3)];
    let spatial = |s: &CMat2| block(&zero, s, &(-s), &zero);
    GammaBasis {
        gamma: [block(&zero, &id, &id, &zero), spatial(&sigma[0]), spatial(&sigma[1]), spatial(&sigma[2])],
        gamma5: block_diag(&id, &(-id)),
        theta: wigner_theta(),
        sigma,
    }
}
