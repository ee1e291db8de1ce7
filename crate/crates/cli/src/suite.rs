//! The identity suite evaluated at each point, and its aggregation.
//!
//! Every check produces one number per point. Bounded checks pass when the
//! worst value is at most the tolerance. Controls are deliberately broken
//! inputs and pass when the smallest value stays above the threshold.

use rayon::prelude::*;
use serde::Serialize;
use spinor_lab_core::algebra::max_abs;
use spinor_lab_core::covariants::DEFAULT_CLASSIFY_TOL;
use spinor_lab_core::dualspace::{closed_form_matrix, covariance_residual, dual_pairing_scale, expected_gram_entry};
use spinor_lab_core::symmetries::Operator;
use spinor_lab_core::{
    bilinears, boost_factors, closed_form_functions, family, flag_dipole_dual, fpk_residuals, gamma_from_spin_sums,
    gram_dirac, lounesto_classify, symmetry_ledger, Kinematics, PhasePair, SamplePoint, C64,
};

/// Threshold for the scrambled-phase control.
pub const SCRAMBLE_THRESHOLD: f64 = 1e-3;

/// Tolerance on the imaginary part of new-dual norms, relative to the main tolerance.
pub const IMAGINARY_TOL_FACTOR: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// pass iff max ≤ tolerance
    AtMost,
    /// pass iff min > tolerance
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckSpec {
    pub name: &'static str,
    pub tolerance: f64,
    pub bound: Bound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Suite {
    pub tol: f64,
    pub with_controls: bool,
}

// Verdict checks report 0 (agrees with prediction) or 1 (disagrees).
const VERDICT: f64 = 0.0;

const fn verdict(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

impl Suite {
    pub fn new(tol: f64, with_controls: bool) -> Self {
        Self { tol, with_controls }
    }

    pub fn checks(&self) -> Vec<CheckSpec> {
        let t = self.tol;
        let at_most = |name, tolerance| CheckSpec { name, tolerance, bound: Bound::AtMost };
        let mut v = vec![
            at_most("dirac_norm", t),
            at_most("gram_table", t),
            at_most("boost_factors", t),
            at_most("gamma_involution", t),
            at_most("gamma_self_inverse", t),
            at_most("gamma_gamma5_commutator", t),
            at_most("gamma_block_diagonal", t),
            at_most("gamma_helicity_flip", t),
            at_most("closed_form_equivalence", t),
            at_most("closed_form_unit_determinant", t),
            at_most("boost_covariance", t),
            at_most("new_dual_norm", t),
            at_most("new_dual_norm_imaginary", t * IMAGINARY_TOL_FACTOR),
            at_most("new_dual_norm_invariance", t),
            at_most("fierz_identities", t),
            at_most("null_currents", t),
            at_most("lounesto_class", VERDICT),
            at_most("phase_constraint", VERDICT),
        ];
        v.extend(spinor_lab_core::symmetries::IDENTITIES.iter().map(|&(name, _)| at_most(name, t)));
        v.extend([
            at_most("lee_wick_evaded", VERDICT),
            at_most("cpt_squared_plus", VERDICT),
            at_most("family_membership", VERDICT),
        ]);
        if self.with_controls {
            v.push(CheckSpec { name: "control_corrupted_fierz", tolerance: t, bound: Bound::Above });
            v.push(CheckSpec {
                name: "control_scrambled_covariance",
                tolerance: SCRAMBLE_THRESHOLD,
                bound: Bound::Above,
            });
        }
        v
    }

    /// One value per entry of [`Suite::checks`], in the same order.
    pub fn evaluate(&self, kin: Kinematics, phases: PhasePair) -> spinor_lab_core::Result<PointValues> {
        let m = kin.mass();
        let fam = family(kin, phases)?;
        let rest = family(kin.rest(), phases)?;
        let gamma = gamma_from_spin_sums(kin, phases)?;
        let gamma_rest = gamma_from_spin_sums(kin.rest(), phases)?;
        let spinor_scale = fam.iter().map(|s| max_abs(&s.psi)).fold(0.0, f64::max);
        let pair_scale = spinor_scale.powi(2).max(m);

        let gram = gram_dirac(kin, phases)?;
        let dirac_norm = (0..4).map(|a| gram[a][a].norm()).fold(0.0, f64::max) / pair_scale;
        let mut gram_dev = 0.0f64;
        for a in fam.iter().map(|s| s.label) {
            for b in fam.iter().map(|s| s.label) {
                let want = C64::from(expected_gram_entry(a, b) * m);
                gram_dev = gram_dev.max((gram[a.index()][b.index()] - want).norm() / pair_scale);
            }
        }

        let bf = boost_factors(&kin);
        let boost = (bf.b_plus * bf.b_minus - 1.0)
            .abs()
            .max((bf.b_plus * (kin.energy() - kin.momentum()) - m * bf.b_minus).abs() / m);

        let flip = fam
            .iter()
            .map(|s| {
                let target = fam[s.label.flipped().index()].psi;
                max_abs(&(gamma.apply(&s.psi) - target)) / max_abs(&target)
            })
            .fold(0.0, f64::max);

        let cf = closed_form_functions(&kin, &phases);
        let cf_equiv = max_abs(&(closed_form_matrix(&cf) - gamma.matrix)) / gamma.scale();
        let cf_scale = cf.g.norm().max(cf.f1.norm()).max(cf.f2.norm()).max(1.0).powi(2);
        let cf_det = (cf.determinant_like() - C64::from(1.0)).norm() / cf_scale;

        let (mut norm_dev, mut norm_imag, mut norm_inv) = (0.0f64, 0.0f64, 0.0f64);
        for (s, r) in fam.iter().zip(rest.iter()) {
            let scale = dual_pairing_scale(s, &gamma).max(dual_pairing_scale(r, &gamma_rest));
            let n = flag_dipole_dual(s, &gamma)?.pair(&s.psi) / m;
            let n_rest = flag_dipole_dual(r, &gamma_rest)?.pair(&r.psi) / m;
            norm_dev = norm_dev.max((n - C64::from(2.0 * s.label.norm_sign())).norm() / scale);
            norm_imag = norm_imag.max(n.im.abs() / scale);
            norm_inv = norm_inv.max((n - n_rest).norm() / scale);
        }

        let expected_class = if phases.is_flagpole() { 5 } else { 4 };
        let (mut fierz, mut null, mut class_ok) = (0.0f64, 0.0f64, true);
        let mut classes = [0u8; 4];
        for s in &fam {
            let b = bilinears(&s.psi)?;
            let s2 = b.scale().powi(2);
            fierz = fierz.max(fpk_residuals(&b).scaled(&b).max());
            null = null.max(b.j_dot_j().norm().max(b.k_dot_k().norm()) / s2);
            let class = lounesto_classify(&b, DEFAULT_CLASSIFY_TOL).map(|c| c.class_id).unwrap_or(0);
            classes[s.label.index()] = class;
            class_ok &= class == expected_class;
        }

        let ledger = symmetry_ledger(kin, phases, self.tol)?;
        let family_ok = [Operator::C, Operator::P, Operator::T]
            .iter()
            .flat_map(|&op| ledger.actions_of(op))
            .all(|a| a.fit.in_family == phases.is_flagpole());

        let mut values = vec![
            dirac_norm,
            gram_dev,
            boost,
            gamma.involution_residual(),
            gamma.self_inverse_residual(),
            gamma.gamma5_commutator_residual(),
            gamma.off_block_residual(),
            flip,
            cf_equiv,
            cf_det,
            covariance_residual(&gamma, &gamma_rest),
            norm_dev,
            norm_imag,
            norm_inv,
            fierz,
            null,
            verdict(class_ok),
            verdict(!phases.is_degenerate()),
        ];
        values.extend(ledger.identities.iter().map(|c| c.max_residual));
        values.extend([verdict(ledger.lee_wick_evaded), verdict(ledger.cpt_squared_plus), verdict(family_ok)]);

        if self.with_controls {
            let mut corrupted = bilinears(&fam[0].psi)?;
            corrupted.j[0] += C64::from(corrupted.scale());
            values.push(fpk_residuals(&corrupted).scaled(&corrupted).max());
            let scrambled = PhasePair::new(phases.beta_plus() * C64::new(0.0, 2.0), phases.beta_minus())?;
            values.push(covariance_residual(&gamma, &gamma_from_spin_sums(kin.rest(), scrambled)?));
        }
        Ok(PointValues { values, classes })
    }

    /// Evaluate every point in parallel and reduce in point order.
    pub fn run(&self, points: &[SamplePoint]) -> SuiteOutcome {
        let per_point: Vec<Result<PointValues, String>> =
            points.par_iter().map(|p| self.evaluate(p.kin, p.phases).map_err(|e| e.to_string())).collect();
        self.aggregate(&per_point)
    }

    fn aggregate(&self, per_point: &[Result<PointValues, String>]) -> SuiteOutcome {
        let specs = self.checks();
        let mut worst: Vec<Option<f64>> = vec![None; specs.len()];
        let mut class_counts = std::collections::BTreeMap::new();
        let mut errors = Vec::new();
        for (i, r) in per_point.iter().enumerate() {
            let pv = match r {
                Ok(pv) => pv,
                Err(e) => {
                    errors.push(PointError { index: i, message: e.clone() });
                    continue;
                }
            };
            for ((w, spec), &v) in worst.iter_mut().zip(&specs).zip(&pv.values) {
                *w = Some(match (*w, spec.bound) {
                    (None, _) => v,
                    (Some(a), Bound::AtMost) => a.max(v),
                    (Some(a), Bound::Above) => a.min(v),
                });
            }
            for c in pv.classes {
                *class_counts.entry(c.to_string()).or_insert(0usize) += 1;
            }
        }
        let checks = specs
            .iter()
            .zip(worst)
            .map(|(spec, w)| CheckResult {
                name: spec.name,
                max_residual: w,
                tolerance: spec.tolerance,
                bound: spec.bound,
                pass: match (w, spec.bound) {
                    (None, _) => false,
                    (Some(x), Bound::AtMost) => x <= spec.tolerance,
                    (Some(x), Bound::Above) => x > spec.tolerance,
                },
            })
            .collect();
        SuiteOutcome { checks, class_counts, errors }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointValues {
    pub values: Vec<f64>,
    /// Lounesto class per label (0 if unclassifiable).
    pub classes: [u8; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    /// Worst value over all points: the maximum for bounded checks and the
    /// minimum for controls. `null` if no point could be evaluated.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointError {
    pub index: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub checks: Vec<CheckResult>,
    /// Number of spinors (four per point) in each Lounesto class.
    pub class_counts: std::collections::BTreeMap<String, usize>,
    pub errors: Vec<PointError>,
}

impl SuiteOutcome {
    pub fn overall(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}
