//! Report types and their JSON / text rendering.

use std::fmt::Write;

use serde::Serialize;
use spinor_lab_core::complex_serde::{mat4_to_pairs, to_pair};
use spinor_lab_core::covariants::DEFAULT_CLASSIFY_TOL;
use spinor_lab_core::symmetries::SymmetryLedger;
use spinor_lab_core::{
    bilinears, closed_form_functions, family, flag_dipole_dual, fpk_residuals, gamma_from_spin_sums, gram_dirac,
    lounesto_classify, symmetry_ledger, BilinearSet, ClosedFormFunctions, FpkResiduals, Kinematics, KinematicsLiteral,
    PhasePair, SpinorLabel, C64,
};

use crate::config::Environment;
use crate::suite::{CheckResult, PointError, SuiteOutcome};

pub const SCHEMA_VERSION: u32 = 1;

type Pair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub environment: Environment,
    pub overall: bool,
    pub checks: Vec<CheckResult>,
    pub class_counts: std::collections::BTreeMap<String, usize>,
    pub errors: Vec<PointError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointDetail>,
}

impl VerificationReport {
    pub fn new(
        command: &'static str,
        environment: Environment,
        outcome: SuiteOutcome,
        point: Option<PointDetail>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            environment,
            overall: outcome.overall(),
            checks: outcome.checks,
            class_counts: outcome.class_counts,
            errors: outcome.errors,
            point,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinorDetail {
    pub label: SpinorLabel,
    #[serde(serialize_with = "ser_vec")]
    pub psi: spinor_lab_core::CVec4,
    pub class_id: Option<u8>,
    pub bilinears: BilinearSet,
    /// `¬λ λ / m` at the point and at rest.
    pub new_dual_norm: Pair,
    pub new_dual_norm_rest: Pair,
}

fn ser_vec<S: serde::Serializer>(v: &spinor_lab_core::CVec4, s: S) -> Result<S::Ok, S::Error> {
    spinor_lab_core::complex_serde::vec4_to_pairs(v).serialize(s)
}

/// Everything computed at a single explicit point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointDetail {
    pub kinematics: KinematicsLiteral,
    pub energy: f64,
    pub phases: PhasePair,
    /// `|β₊|² = 1` or `|β₋|² = 1`.
    pub degenerate_phases: bool,
    /// `|β₊β₋| = 1`, where the spinors are flagpoles rather than flag-dipoles.
    pub flagpole: bool,
    /// All four spinors classify as class 4 and the phases are not degenerate.
    pub flag_dipole: bool,
    /// Dirac-dual Gram table `Λ̄_a Λ_b / m`, rows and columns in S+-, S-+, A+-, A-+ order.
    pub gram: [[Pair; 4]; 4],
    pub closed_form: ClosedFormFunctions,
    pub gamma: [[Pair; 4]; 4],
    pub spinors: Vec<SpinorDetail>,
    pub symmetry_ledger: SymmetryLedger,
}

impl PointDetail {
    pub fn compute(kin: Kinematics, phases: PhasePair, tol: f64) -> spinor_lab_core::Result<Self> {
        let m = C64::from(kin.mass());
        let gamma = gamma_from_spin_sums(kin, phases)?;
        let gamma_rest = gamma_from_spin_sums(kin.rest(), phases)?;
        let rest = family(kin.rest(), phases)?;
        let mut spinors = Vec::with_capacity(4);
        for (s, r) in family(kin, phases)?.iter().zip(rest.iter()) {
            let b = bilinears(&s.psi)?;
            spinors.push(SpinorDetail {
                label: s.label,
                psi: s.psi,
                class_id: lounesto_classify(&b, DEFAULT_CLASSIFY_TOL).ok().map(|c| c.class_id),
                bilinears: b,
                new_dual_norm: to_pair(flag_dipole_dual(s, &gamma)?.pair(&s.psi) / m),
                new_dual_norm_rest: to_pair(flag_dipole_dual(r, &gamma_rest)?.pair(&r.psi) / m),
            });
        }
        let gram = gram_dirac(kin, phases)?.map(|row| row.map(|z| to_pair(z / m)));
        let degenerate = phases.is_degenerate();
        Ok(Self {
            kinematics: kin.literal(),
            energy: kin.energy(),
            phases,
            degenerate_phases: degenerate,
            flagpole: phases.is_flagpole(),
            flag_dipole: !degenerate && spinors.iter().all(|s| s.class_id == Some(4)),
            gram,
            closed_form: closed_form_functions(&kin, &phases),
            gamma: mat4_to_pairs(&gamma.matrix),
            spinors,
            symmetry_ledger: symmetry_ledger(kin, phases, tol)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<SpinorLabel>,
    #[serde(serialize_with = "ser_vec")]
    pub psi: spinor_lab_core::CVec4,
    pub bilinears: BilinearSet,
    pub fpk_residuals: FpkResiduals,
    /// Residuals divided by the squared largest bilinear.
    pub fpk_residuals_scaled: FpkResiduals,
    pub class_id: u8,
    pub classify_tol: f64,
}

impl ClassifyReport {
    pub fn compute(psi: spinor_lab_core::CVec4, label: Option<SpinorLabel>) -> spinor_lab_core::Result<Self> {
        let b = bilinears(&psi)?;
        let class = lounesto_classify(&b, DEFAULT_CLASSIFY_TOL)?;
        let r = fpk_residuals(&b);
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            label,
            psi,
            bilinears: b,
            fpk_residuals: r,
            fpk_residuals_scaled: r.scaled(&b),
            class_id: class.class_id,
            classify_tol: class.tol,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaReport {
    pub schema_version: u32,
    pub source: spinor_lab_core::GammaSource,
    pub kinematics: KinematicsLiteral,
    pub phases: PhasePair,
    pub matrix: [[Pair; 4]; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<ClosedFormFunctions>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn fmt_num(x: f64) -> String {
    format!("{x:.3e}")
}

fn fmt_pair(p: &Pair) -> String {
    format!("{:>+.6}{:+.6}i", p[0], p[1])
}

fn write_matrix(out: &mut String, title: &str, rows: &[[Pair; 4]; 4]) {
    let _ = writeln!(out, "\n{title}");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|p| format!("{:>24}", fmt_pair(p))).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

pub fn verification_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let env = &r.environment;
    let seed = env.seed.map_or("-".to_string(), |s| s.to_string());
    let _ = writeln!(
        out,
        "spinor-lab {} (schema {})  precision={} seed={} count={} kinematics={} phases={}",
        r.command, r.schema_version, env.precision, seed, env.count, env.kinematics, env.phases
    );
    let _ = writeln!(out, "\n{:<32} {:>14} {:>12} {:>6}  verdict", "check", "max_residual", "tolerance", "bound");
    for c in &r.checks {
        let bound = match c.bound {
            crate::suite::Bound::AtMost => "<=",
            crate::suite::Bound::Above => ">",
        };
        let res = c.max_residual.map_or("-".to_string(), fmt_num);
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:<32} {:>14} {:>12} {:>6}  {}", c.name, res, fmt_num(c.tolerance), bound, verdict);
    }
    let classes: Vec<String> = r.class_counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let _ = writeln!(out, "\nlounesto classes (per spinor): {}", classes.join(" "));
    for e in &r.errors {
        let _ = writeln!(out, "point {}: {}", e.index, e.message);
    }
    if let Some(p) = &r.point {
        let _ = writeln!(
            out,
            "\npoint: m={} p={} theta={} phi={} E={}  beta+={} beta-={}",
            p.kinematics.m,
            p.kinematics.p,
            p.kinematics.theta,
            p.kinematics.phi,
            p.energy,
            fmt_pair(&to_pair(p.phases.beta_plus())),
            fmt_pair(&to_pair(p.phases.beta_minus()))
        );
        let _ = writeln!(
            out,
            "flag_dipole={} flagpole={} degenerate_phases={}",
            p.flag_dipole, p.flagpole, p.degenerate_phases
        );
        let _ = writeln!(
            out,
            "closed form: g={} f1={} f2={}",
            fmt_pair(&to_pair(p.closed_form.g)),
            fmt_pair(&to_pair(p.closed_form.f1)),
            fmt_pair(&to_pair(p.closed_form.f2))
        );
        let _ = writeln!(out, "\n{:<6} {:>6} {:>24} {:>24}", "label", "class", "new-dual norm / m", "at rest");
        for s in &p.spinors {
            let class = s.class_id.map_or("-".to_string(), |c| c.to_string());
            let _ = writeln!(
                out,
                "{:<6} {:>6} {:>24} {:>24}",
                s.label.to_string(),
                class,
                fmt_pair(&s.new_dual_norm),
                fmt_pair(&s.new_dual_norm_rest)
            );
        }
        write_matrix(&mut out, "Dirac Gram table / m (S+-, S-+, A+-, A-+):", &p.gram);
        write_matrix(&mut out, "Gamma (spin sum):", &p.gamma);
        let ledger = &p.symmetry_ledger;
        let _ = writeln!(out, "\nsymmetry ledger:");
        for c in &ledger.identities {
            let _ = writeln!(
                out,
                "  {:<10} = {:>+3}  residual {:>10}  {}",
                c.name,
                c.expected,
                fmt_num(c.max_residual),
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
        let _ =
            writeln!(out, "  lee_wick_evaded={} cpt_squared_plus={}", ledger.lee_wick_evaded, ledger.cpt_squared_plus);
        let _ = writeln!(
            out,
            "\n  {:<4} {:<6} {:<10} {:<6} {:>24} {:>12}",
            "op", "input", "in_family", "match", "coefficient", "fit"
        );
        for a in &ledger.actions {
            let label = a.fit.label.map_or("-".to_string(), |l| l.to_string());
            let coeff = a.fit.coefficient.map_or("-".to_string(), |c| fmt_pair(&to_pair(c)));
            let _ = writeln!(
                out,
                "  {:<4} {:<6} {:<10} {:<6} {:>24} {:>12}",
                format!("{:?}", a.operator),
                a.input.to_string(),
                a.fit.in_family,
                label,
                coeff,
                fmt_num(a.fit.residual)
            );
        }
    }
    let _ = writeln!(out, "\noverall: {}", if r.overall { "PASS" } else { "FAIL" });
    out
}

pub fn classify_text(r: &ClassifyReport) -> String {
    let b = &r.bilinears;
    let mut out = String::new();
    if let Some(l) = r.label {
        let _ = writeln!(out, "label: {l}");
    }
    let psi: Vec<String> = r.psi.iter().map(|z| fmt_pair(&to_pair(*z))).collect();
    let _ = writeln!(out, "psi:   {}", psi.join(", "));
    let _ = writeln!(out, "sigma: {}", fmt_pair(&to_pair(b.sigma)));
    let _ = writeln!(out, "omega: {}", fmt_pair(&to_pair(b.omega)));
    for (name, v) in [("J", &b.j[..]), ("K", &b.k[..]), ("S", &b.s[..])] {
        let cells: Vec<String> = v.iter().map(|z| fmt_pair(&to_pair(*z))).collect();
        let _ = writeln!(out, "{name}:     {}", cells.join(", "));
    }
    let f = &r.fpk_residuals;
    let _ = writeln!(out, "fierz residuals: {} {} {}", fmt_num(f.r1), fmt_num(f.r2), fmt_num(f.r3));
    let _ = writeln!(out, "lounesto class: {}", r.class_id);
    out
}

pub fn gamma_text(r: &GammaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "source: {:?}", r.source);
    write_matrix(&mut out, "Gamma:", &r.matrix);
    if let Some(f) = &r.functions {
        let _ = writeln!(
            out,
            "\ng={} f1={} f2={}",
            fmt_pair(&to_pair(f.g)),
            fmt_pair(&to_pair(f.f1)),
            fmt_pair(&to_pair(f.f2))
        );
    }
    out
}
