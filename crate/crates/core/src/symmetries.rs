//! Discrete operators `C`, `P`, `T` acting on four-spinors.
//!
//! `C = γ² 𝒦` and `T = iγ₅ C` are anti-linear. They are applied to concrete
//! vectors as "conjugate, then multiply", and compositions are always built by
//! applying the operators one after another to a vector, never by multiplying
//! matrices (which would drop the conjugations). `P = m⁻¹ γ_μ p^μ` depends on
//! the momentum.
//!
//! Composite words are read right to left: `CPT ψ = C(P(T ψ))`.

use serde::Serialize;

use crate::algebra::{gamma_basis, max_abs, CMat4, CVec4, C64, I};
use crate::complex_serde;
use crate::error::Result;
use crate::kinematics::Kinematics;
use crate::spinors::{family, FlagDipoleSpinor, PhasePair, SpinorLabel};

/// Relative residual below which an output counts as a multiple of a family member.
pub const FAMILY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DiscreteOp {
    C,
    P,
    T,
}

/// `m⁻¹(E γ⁰ + p γʲp̂ʲ) = m⁻¹ [[0, E + p σ·p̂], [E - p σ·p̂, 0]]`.
pub fn parity_matrix(kin: &Kinematics) -> CMat4 {
    gamma_basis().slash(kin.energy(), kin.momentum(), kin.theta(), kin.phi()) / C64::from(kin.mass())
}

pub fn parity_apply_vec(kin: &Kinematics, psi: &CVec4) -> CVec4 {
    parity_matrix(kin) * psi
}

pub fn parity_apply(psi: &FlagDipoleSpinor) -> CVec4 {
    parity_apply_vec(&psi.kin, &psi.psi)
}

/// `γ² ψ*`, i.e. `[[0, iΘ], [-iΘ, 0]] ψ*`.
pub fn charge_conjugate(psi: &CVec4) -> CVec4 {
    gamma_basis().gamma[2] * psi.conjugate()
}

/// `iγ₅ C ψ`.
pub fn time_reverse(psi: &CVec4) -> CVec4 {
    gamma_basis().gamma5 * charge_conjugate(psi) * I
}

impl DiscreteOp {
    pub fn apply(self, kin: &Kinematics, psi: &CVec4) -> CVec4 {
        match self {
            DiscreteOp::C => charge_conjugate(psi),
            DiscreteOp::P => parity_apply_vec(kin, psi),
            DiscreteOp::T => time_reverse(psi),
        }
    }
}

/// Apply a word of operators, rightmost first.
pub fn apply_word(word: &[DiscreteOp], kin: &Kinematics, psi: &CVec4) -> CVec4 {
    word.iter().rev().fold(*psi, |v, op| op.apply(kin, &v))
}

/// Best single-member fit of `v` against a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyMatch {
    pub in_family: bool,
    pub label: Option<SpinorLabel>,
    #[serde(with = "option_pair")]
    pub coefficient: Option<C64>,
    /// Smallest `max|v - c w| / max|v|` over the four members.
    pub residual: f64,
}

mod option_pair {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(z: &Option<C64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        z.map(complex_serde::to_pair).serialize(s)
    }
}

/// Least-squares fit `c = ⟨w, v⟩ / ⟨w, w⟩` against each member individually.
pub fn family_match(v: &CVec4, members: &[FlagDipoleSpinor]) -> FamilyMatch {
    let scale = max_abs(v).max(f64::MIN_POSITIVE);
    let (best, residual) = members
        .iter()
        .map(|w| {
            let c = w.psi.dotc(v) / w.psi.dotc(&w.psi);
            ((w.label, c), max_abs(&(v - w.psi * c)) / scale)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("family is nonempty");
    let in_family = residual <= FAMILY_TOL;
    FamilyMatch { in_family, label: in_family.then_some(best.0), coefficient: in_family.then_some(best.1), residual }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Operator {
    C,
    P,
    T,
    CP,
    PC,
    CPT,
}

impl Operator {
    pub const ALL: [Operator; 6] = [Operator::C, Operator::P, Operator::T, Operator::CP, Operator::PC, Operator::CPT];

    pub fn word(self) -> &'static [DiscreteOp] {
        use DiscreteOp::*;
        match self {
            Operator::C => &[C],
            Operator::P => &[P],
            Operator::T => &[T],
            Operator::CP => &[C, P],
            Operator::PC => &[P, C],
            Operator::CPT => &[C, P, T],
        }
    }
}

/// Result of one operator acting on one family member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryAction {
    pub operator: Operator,
    pub input: SpinorLabel,
    #[serde(serialize_with = "ser_vec4")]
    pub output: CVec4,
    #[serde(flatten)]
    pub fit: FamilyMatch,
}

fn ser_vec4<S: serde::Serializer>(v: &CVec4, s: S) -> std::result::Result<S::Ok, S::Error> {
    complex_serde::vec4_to_pairs(v).serialize(s)
}

pub fn symmetry_action(op: Operator, input: &FlagDipoleSpinor, members: &[FlagDipoleSpinor]) -> SymmetryAction {
    let output = apply_word(op.word(), &input.kin, &input.psi);
    SymmetryAction { operator: op, input: input.label, output, fit: family_match(&output, members) }
}

/// An operator identity `X ψ = λ ψ` checked on the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Expected eigenvalue `λ` (`0` for the commutator-type identities).
    pub expected: f64,
    pub max_residual: f64,
    pub pass: bool,
}

/// How each identity is evaluated on a vector.
fn identity_lhs(name: &str, kin: &Kinematics, psi: &CVec4) -> CVec4 {
    use DiscreteOp::*;
    let w = |word: &[DiscreteOp]| apply_word(word, kin, psi);
    match name {
        "P^2" => w(&[P, P]),
        "C^2" => w(&[C, C]),
        "T^2" => w(&[T, T]),
        "(CPT)^2" => w(&[C, P, T, C, P, T]),
        "{C,P}" => w(&[C, P]) + w(&[P, C]),
        "[C,T]" => w(&[C, T]) - w(&[T, C]),
        "[T,P]" => w(&[T, P]) - w(&[P, T]),
        _ => unreachable!("unknown identity {name}"),
    }
}

/// Identities and their expected eigenvalues.
pub const IDENTITIES: [(&str, f64); 7] =
    [("P^2", 1.0), ("C^2", 1.0), ("T^2", -1.0), ("(CPT)^2", 1.0), ("{C,P}", 0.0), ("[C,T]", 0.0), ("[T,P]", 0.0)];

/// `max|X ψ - λ ψ| / max|ψ|` over the given vectors.
pub fn identity_residual(name: &str, expected: f64, kin: &Kinematics, vectors: &[CVec4]) -> f64 {
    vectors
        .iter()
        .map(|psi| {
            let lhs = identity_lhs(name, kin, psi);
            max_abs(&(lhs - psi * C64::from(expected))) / max_abs(psi).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// Sign `s ∈ {+1, -1}` for which `X ψ ≈ s ψ` fits better, per vector set.
fn observed_square_sign(name: &str, kin: &Kinematics, vectors: &[CVec4]) -> f64 {
    let plus = identity_residual(name, 1.0, kin, vectors);
    let minus = identity_residual(name, -1.0, kin, vectors);
    if plus <= minus {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryLedger {
    pub identities: Vec<IdentityCheck>,
    /// `P² ≠ T²` as observed on the family.
    pub lee_wick_evaded: bool,
    /// `(CPT)² = +𝟙` as observed on the family.
    pub cpt_squared_plus: bool,
    pub actions: Vec<SymmetryAction>,
}

impl SymmetryLedger {
    pub fn all_identities_pass(&self) -> bool {
        self.identities.iter().all(|c| c.pass)
    }

    pub fn actions_of(&self, op: Operator) -> impl Iterator<Item = &SymmetryAction> {
        self.actions.iter().filter(move |a| a.operator == op)
    }
}

pub fn symmetry_ledger(kin: Kinematics, phases: PhasePair, tol: f64) -> Result<SymmetryLedger> {
    let members = family(kin, phases)?;
    let vectors = members.map(|s| s.psi);
    let identities = IDENTITIES
        .iter()
        .map(|&(name, expected)| {
            let max_residual = identity_residual(name, expected, &kin, &vectors);
            IdentityCheck { name, expected, max_residual, pass: max_residual <= tol }
        })
        .collect::<Vec<_>>();
    let p2 = observed_square_sign("P^2", &kin, &vectors);
    let t2 = observed_square_sign("T^2", &kin, &vectors);
    let cpt2 = observed_square_sign("(CPT)^2", &kin, &vectors);
    let actions = Operator::ALL
        .iter()
        .flat_map(|&op| members.iter().map(move |s| (op, s)))
        .map(|(op, s)| symmetry_action(op, s, &members))
        .collect();
    Ok(SymmetryLedger { identities, lee_wick_evaded: p2 != t2, cpt_squared_plus: cpt2 > 0.0, actions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinors::{build_spinor, Helicity, Kind};

    fn kin(m: f64, p: f64, t: f64, f: f64) -> Kinematics {
        Kinematics::new(m, p, t, f).unwrap()
    }

    fn generic() -> (Kinematics, PhasePair) {
        (kin(1.3, 2.2, 1.1, 0.4), PhasePair::new(C64::new(1.8, 0.6), C64::new(0.3, -0.2)).unwrap())
    }

    #[test]
    fn parity_at_rest_is_gamma0() {
        let k = kin(2.0, 0.0, 0.5, 0.5);
        assert_eq!(parity_matrix(&k), gamma_basis().gamma[0]);
    }

    #[test]
    fn parity_output_leaves_family_for_generic_phases() {
        let k = kin(1.0, 0.75, 1.0, 0.0);
        let ph = PhasePair::real(2.0, 1.0 / 3.0).unwrap();
        let members = family(k, ph).unwrap();
        let s = build_spinor(SpinorLabel::new(Kind::S, Helicity::PlusMinus), k, ph).unwrap();
        let out = parity_apply(&s);
        assert!(!family_match(&out, &members).in_family);
        let twice = parity_apply_vec(&k, &out);
        assert!(max_abs(&(twice - s.psi)) < 1e-10 * max_abs(&s.psi));
    }

    #[test]
    fn parity_output_is_a_member_on_flagpole_surface() {
        // |β₊β₋| = 1: P Λ^S_{+-} = |β₊|² Λ^S_{-+}
        let k = kin(1.0, 0.75, 1.0, 0.0);
        let ph = PhasePair::real(2.0, 0.5).unwrap();
        let members = family(k, ph).unwrap();
        let fit = family_match(&parity_apply(&members[0]), &members);
        assert!(fit.in_family);
        assert_eq!(fit.label, Some(SpinorLabel::ALL[1]));
        assert!((fit.coefficient.unwrap() - C64::from(4.0)).norm() < 1e-12);
    }

    #[test]
    fn squares_and_commutators_on_arbitrary_vectors() {
        let (k, _) = generic();
        let v = [
            CVec4::new(C64::new(1.0, 2.0), C64::new(-0.5, 0.1), C64::new(0.0, 3.0), C64::new(0.7, -0.7)),
            CVec4::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
        ];
        for (name, expected) in IDENTITIES {
            assert!(identity_residual(name, expected, &k, &v) < 1e-12, "{name}");
        }
    }

    #[test]
    fn cpt_squared_is_plus_for_every_ordering() {
        use DiscreteOp::*;
        let (k, ph) = generic();
        let orderings = [[C, P, T], [C, T, P], [P, C, T], [P, T, C], [T, C, P], [T, P, C]];
        for s in family(k, ph).unwrap() {
            for word in orderings {
                let doubled: Vec<_> = word.iter().chain(word.iter()).copied().collect();
                let out = apply_word(&doubled, &k, &s.psi);
                assert!(max_abs(&(out - s.psi)) < 1e-12 * max_abs(&s.psi), "{word:?}");
            }
        }
    }

    #[test]
    fn matrix_product_would_lose_conjugation() {
        // C∘C as operators is +𝟙, the bare matrix square (γ²)² is -𝟙
        let (k, ph) = generic();
        let psi = family(k, ph).unwrap()[0].psi;
        let g2 = gamma_basis().gamma[2];
        let honest = apply_word(&[DiscreteOp::C, DiscreteOp::C], &k, &psi);
        assert!(max_abs(&(honest - psi)) < 1e-12 * max_abs(&psi));
        assert!(max_abs(&(g2 * g2 * psi + psi)) < 1e-12 * max_abs(&psi));
    }

    #[test]
    fn ledger_at_generic_point() {
        let (k, ph) = generic();
        let ledger = symmetry_ledger(k, ph, 1e-10).unwrap();
        assert!(ledger.all_identities_pass(), "{:?}", ledger.identities);
        assert!(ledger.lee_wick_evaded);
        assert!(ledger.cpt_squared_plus);
        assert_eq!(ledger.actions.len(), 24);
        for op in [Operator::C, Operator::P, Operator::T] {
            assert!(ledger.actions_of(op).all(|a| !a.fit.in_family), "{op:?}");
        }
    }
}
