//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::FRAC_PI_2;
use std::process::Command;

use num_complex::Complex64 as C;
use spinor_lab_core::algebra::max_abs;
use spinor_lab_core::covariants::DEFAULT_CLASSIFY_TOL;
use spinor_lab_core::dualspace::{closed_form_residual, covariance_residual, dual_pairing_scale};
use spinor_lab_core::symmetries::{apply_word, DiscreteOp, Operator};
use spinor_lab_core::{
    bilinears, closed_form_functions, dirac_dual, family, flag_dipole_dual, fpk_residuals, gamma_from_spin_sums,
    gram_dirac, lounesto_classify, sample_points, symmetry_ledger, CVec4, Helicity, Kind, Kinematics, PhaseMode,
    PhasePair, SamplePoint, SpinorLabel,
};

const TOL: f64 = 1e-10;
const SEED: u64 = 42;
const N: usize = 1000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    worst: f64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { worst: 0.0, failures: Vec::new() }
    }

    fn bound(&mut self, what: &str, value: f64, tol: f64) {
        self.worst = self.worst.max(value);
        if value.is_nan() || value > tol {
            self.fail(format!("{what}: {value:e} > {tol:e}"));
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok {
            self.fail(what.to_string());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 5 {
            self.failures.push(msg);
        } else if self.failures.len() == 5 {
            self.failures.push("...".into());
        }
    }
}

fn generic() -> Vec<SamplePoint> {
    sample_points(SEED, N, PhaseMode::Generic)
}

fn real() -> Vec<SamplePoint> {
    sample_points(SEED, N, PhaseMode::Real)
}

fn spinor_scale(p: &SamplePoint) -> f64 {
    family(p.kin, p.phases).unwrap().iter().map(|s| max_abs(&s.psi)).fold(0.0, f64::max)
}

fn dirac_degeneracy() -> Outcome {
    let mut o = Outcome::new();
    for p in generic() {
        let scale = spinor_scale(&p).powi(2).max(p.kin.mass());
        for s in family(p.kin, p.phases).unwrap() {
            o.bound(&format!("{} Dirac norm", s.label), dirac_dual(&s.psi).pair(&s.psi).norm() / scale, TOL);
        }
    }
    o
}

fn gram_table() -> Outcome {
    // rows and columns in S+-, S-+, A+-, A-+ order, units of m
    const EXPECTED: [[f64; 4]; 4] =
        [[0.0, 2.0, 0.0, 0.0], [2.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, -2.0], [0.0, 0.0, -2.0, 0.0]];
    let mut o = Outcome::new();
    for p in generic() {
        let m = p.kin.mass();
        let rel = (spinor_scale(&p).powi(2) / m).max(1.0);
        let t = gram_dirac(p.kin, p.phases).unwrap();
        for (a, row) in EXPECTED.iter().enumerate() {
            for (b, &want) in row.iter().enumerate() {
                o.bound("Gram entry", (t[a][b] / m - want).norm() / rel, TOL);
            }
        }
    }
    o
}

fn gamma_properties() -> Outcome {
    let mut o = Outcome::new();
    for p in generic() {
        let g = gamma_from_spin_sums(p.kin, p.phases).unwrap();
        o.bound("Γ² = 1", g.involution_residual(), TOL);
        o.bound("Γ = Γ⁻¹", g.self_inverse_residual(), TOL);
        o.bound("[Γ, γ₅] = 0", g.gamma5_commutator_residual(), TOL);
        let fam = family(p.kin, p.phases).unwrap();
        for s in &fam {
            let target = fam[s.label.flipped().index()].psi;
            o.bound(&format!("Γ {}", s.label), max_abs(&(g.apply(&s.psi) - target)) / max_abs(&target), TOL);
        }
    }
    o
}

fn closed_form() -> Outcome {
    let mut o = Outcome::new();
    let k = Kinematics::new(1.0, 0.75, FRAC_PI_2, 0.0).unwrap();
    o.require("E = 5/4", (k.energy() - 1.25).abs() <= 1e-15);
    let f = closed_form_functions(&k, &PhasePair::real(2.0, 0.5).unwrap());
    o.bound("g", (f.g - 4.0625).norm(), 1e-12);
    o.bound("f1", (f.f1 - 3.9375).norm(), 1e-12);
    o.bound("f2", (f.f2 + 3.9375).norm(), 1e-12);
    for p in real() {
        let f = closed_form_functions(&p.kin, &p.phases);
        let scale = f.g.norm().max(f.f1.norm()).max(f.f2.norm()).max(1.0).powi(2);
        o.bound("g² + f1 f2 = 1", (f.determinant_like() - 1.0).norm() / scale, TOL);
        o.bound("closed form vs spin sum", closed_form_residual(p.kin, p.phases).unwrap(), TOL);
    }
    o
}

fn boost_covariance() -> Outcome {
    let mut o = Outcome::new();
    for p in generic() {
        let moving = gamma_from_spin_sums(p.kin, p.phases).unwrap();
        let rest = gamma_from_spin_sums(p.kin.rest(), p.phases).unwrap();
        o.bound("Γ(p) = B Γ(k) B⁻¹", covariance_residual(&moving, &rest), TOL);
        let scrambled = PhasePair::new(p.phases.beta_plus() * C::new(0.0, 2.0), p.phases.beta_minus()).unwrap();
        let wrong = gamma_from_spin_sums(p.kin.rest(), scrambled).unwrap();
        o.require("scrambled-phase control exceeds 1e-3", covariance_residual(&moving, &wrong) > 1e-3);
    }
    o
}

fn new_dual_norms() -> Outcome {
    let mut o = Outcome::new();
    for p in generic() {
        let m = p.kin.mass();
        let g = gamma_from_spin_sums(p.kin, p.phases).unwrap();
        let g_rest = gamma_from_spin_sums(p.kin.rest(), p.phases).unwrap();
        let rest = family(p.kin.rest(), p.phases).unwrap();
        for (s, r) in family(p.kin, p.phases).unwrap().iter().zip(rest.iter()) {
            let scale = dual_pairing_scale(s, &g).max(dual_pairing_scale(r, &g_rest));
            let n = flag_dipole_dual(s, &g).unwrap().pair(&s.psi) / m;
            let n_rest = flag_dipole_dual(r, &g_rest).unwrap().pair(&r.psi) / m;
            let want = match s.label.kind {
                Kind::S => 2.0,
                Kind::A => -2.0,
            };
            o.bound(&format!("{} norm", s.label), (n - want).norm() / scale, TOL);
            o.bound(&format!("{} imaginary part", s.label), n.im.abs() / scale, 1e-12);
            o.bound(&format!("{} rest vs boosted", s.label), (n - n_rest).norm() / scale, TOL);
        }
    }
    o
}

fn lounesto() -> Outcome {
    let mut o = Outcome::new();
    for (points, class) in [(generic(), 4), (sample_points(SEED, N, PhaseMode::UnitModulus), 5)] {
        for p in points {
            if class == 4 {
                o.require("generic sample has |β±|² ≠ 1", !p.phases.is_degenerate());
            }
            for s in family(p.kin, p.phases).unwrap() {
                let b = bilinears(&s.psi).unwrap();
                let s2 = b.scale().powi(2);
                o.bound("FPK", fpk_residuals(&b).scaled(&b).max(), TOL);
                o.bound("J·J", b.j_dot_j().norm() / s2, TOL);
                o.bound("K·K", b.k_dot_k().norm() / s2, TOL);
                let got = lounesto_classify(&b, DEFAULT_CLASSIFY_TOL).map(|c| c.class_id);
                o.require(&format!("class {class} expected, got {got:?}"), got == Ok(class));
            }
        }
    }
    o
}

fn symmetry_ledgers() -> Outcome {
    let mut o = Outcome::new();
    for p in generic() {
        let ledger = symmetry_ledger(p.kin, p.phases, TOL).unwrap();
        for c in &ledger.identities {
            o.bound(c.name, c.max_residual, TOL);
        }
        o.require("P² ≠ T²", ledger.lee_wick_evaded);
        o.require("(CPT)² = +1", ledger.cpt_squared_plus);
        for op in [Operator::C, Operator::T, Operator::P] {
            for a in ledger.actions_of(op) {
                o.require(&format!("{op:?} {} not in family", a.input), !a.fit.in_family);
            }
        }
    }
    o
}

/// Hand-assembled two-component blocks, independent of the library's
/// constructors and operators.
mod oracle {
    use super::C;

    pub type Two = [C; 2];

    pub fn phi_plus(m: f64, theta: f64, phi: f64) -> Two {
        let r = m.sqrt();
        [C::from_polar(r * (theta / 2.0).cos(), -phi / 2.0), C::from_polar(r * (theta / 2.0).sin(), phi / 2.0)]
    }

    pub fn phi_minus(m: f64, theta: f64, phi: f64) -> Two {
        let r = m.sqrt();
        [C::from_polar(-r * (theta / 2.0).sin(), -phi / 2.0), C::from_polar(r * (theta / 2.0).cos(), phi / 2.0)]
    }

    /// `Θ v*` with `Θ = [[0, -1], [1, 0]]`.
    pub fn theta_conj(v: Two) -> Two {
        [-v[1].conj(), v[0].conj()]
    }

    pub fn conj(v: Two) -> Two {
        [v[0].conj(), v[1].conj()]
    }

    pub fn boost(m: f64, p: f64) -> (f64, f64) {
        let e = (m * m + p * p).sqrt();
        let pref = ((e + m) / (2.0 * m)).sqrt();
        (pref * (1.0 + p / (e + m)), pref * (1.0 - p / (e + m)))
    }

    pub fn stack(scale: C, upper: (C, Two), lower: (C, Two)) -> [C; 4] {
        [
            scale * upper.0 * upper.1[0],
            scale * upper.0 * upper.1[1],
            scale * lower.0 * lower.1[0],
            scale * lower.0 * lower.1[1],
        ]
    }
}

fn displayed_actions() -> Outcome {
    use oracle::*;
    let mut o = Outcome::new();
    let mut points = vec![
        SamplePoint {
            kin: Kinematics::new(1.0, 0.75, FRAC_PI_2, 0.0).unwrap(),
            phases: PhasePair::real(2.0, 1.0 / 3.0).unwrap(),
        },
        SamplePoint {
            kin: Kinematics::new(2.3, 4.1, 0.4, 5.9).unwrap(),
            phases: PhasePair::new(C::new(0.7, -1.1), C::new(-0.2, 0.45)).unwrap(),
        },
    ];
    points.extend(generic().into_iter().take(200));
    let i = C::new(0.0, 1.0);
    let one = C::new(1.0, 0.0);
    for p in points {
        let (m, mom, th, ph) = (p.kin.mass(), p.kin.momentum(), p.kin.theta(), p.kin.phi());
        let (bp, bm) = (p.phases.beta_plus(), p.phases.beta_minus());
        let (big_p, big_m) = boost(m, mom);
        let (fp, fm) = (phi_plus(m, th, ph), phi_minus(m, th, ph));
        let expected = [
            (Operator::P, stack(C::from(big_m), (bp, theta_conj(fp)), (one / bm.conj(), fp))),
            (Operator::C, stack(C::from(big_p), (i * bp.conj(), theta_conj(fm)), (-i / bm, fm))),
            (Operator::T, stack(C::from(-big_p), (bp.conj(), theta_conj(fm)), (one / bm, fm))),
            (Operator::CP, stack(C::from(big_m), (i / bm, theta_conj(fp)), (i * bp.conj(), fp))),
            (Operator::PC, stack(C::from(big_m), (-i / bm, theta_conj(fp)), (-i * bp.conj(), fp))),
        ];
        let input = family(p.kin, p.phases).unwrap()[SpinorLabel::new(Kind::S, Helicity::PlusMinus).index()];
        for (op, want) in expected {
            let want = CVec4::from(want);
            let got = apply_word(op.word(), &p.kin, &input.psi);
            o.bound(&format!("{op:?} Λ^S_(+-)"), max_abs(&(got - want)) / max_abs(&want), TOL);
        }
        // the C block in its displayed pre-conjugation form, γ²·(B₊(-β₋⁻¹Θφ⁻, β₊*φ⁻*))
        let pre = [-(one / bm), bp.conj()];
        let theta_fm = [-fm[1], fm[0]];
        let c_first = [pre[0] * theta_fm[0], pre[0] * theta_fm[1], pre[1] * conj(fm)[0], pre[1] * conj(fm)[1]];
        let gamma2_applied = {
            // γ² = [[0, iΘ], [-iΘ, 0]], Θ(x, y) = (-y, x)
            let th = |a: C, b: C| [-b, a];
            let up = th(c_first[2], c_first[3]);
            let lo = th(c_first[0], c_first[1]);
            [i * up[0], i * up[1], -i * lo[0], -i * lo[1]].map(|z| z * big_p)
        };
        let c_out = DiscreteOp::C.apply(&p.kin, &input.psi);
        o.bound("C via displayed intermediate", max_abs(&(c_out - CVec4::from(gamma2_applied))) / max_abs(&c_out), TOL);
    }
    o
}

fn determinism() -> Outcome {
    let mut o = Outcome::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_spinor-lab"))
            .args(["sweep", "--seed", "42"])
            .env_remove("SPINOR_LAB_TOL")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    o.require("first run exits 0", a.status.code() == Some(0));
    o.require("second run exits 0", b.status.code() == Some(0));
    o.require("reports are non-empty", !a.stdout.is_empty());
    o.require("reports are byte-identical", a.stdout == b.stdout);
    o
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Dirac-dual degeneracy", dirac_degeneracy),
        ("Gram table", gram_table),
        ("Gamma properties", gamma_properties),
        ("Closed form", closed_form),
        ("Boost covariance", boost_covariance),
        ("New-dual norms", new_dual_norms),
        ("Lounesto classes", lounesto),
        ("Symmetry ledger", symmetry_ledgers),
        ("Displayed-action regressions", displayed_actions),
        ("Determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:>2}: {name} (worst residual {:.3e})", n + 1, o.worst);
        for f in &o.failures {
            println!("      {f}");
        }
        failed += usize::from(!o.failures.is_empty());
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
