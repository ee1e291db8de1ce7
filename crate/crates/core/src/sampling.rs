//! Seeded random sample points.
//!
//! Kinematics: `m` log-uniform in `[0.1, 10]`, `p/m` uniform in `[0, 10]`,
//! `cosθ` uniform in `[-1, 1]`, `φ` uniform in `[0, 2π)`.
//!
//! Phases (`Generic`): `|β±|` log-uniform in `[1/4, 4]`, redrawn while
//! `||β|² - 1| < 0.01`, arguments uniform in `[0, 2π)`.
//! Phases (`UnitModulus`): `|β₊| = |β₋| = 1` with uniform arguments.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::C64;
use crate::kinematics::Kinematics;
use crate::spinors::PhasePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseMode {
    #[default]
    Generic,
    UnitModulus,
    /// Generic moduli with zero arguments, so `β±` are real.
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub kin: Kinematics,
    pub phases: PhasePair,
}

pub fn sample_kinematics<R: Rng + ?Sized>(rng: &mut R) -> Kinematics {
    let mass = rng.random_range(0.1_f64.ln()..=10.0_f64.ln()).exp();
    let momentum = mass * rng.random_range(0.0..=10.0);
    let theta = rng.random_range(-1.0_f64..=1.0).acos();
    let phi = rng.random_range(0.0..TAU);
    Kinematics::new(mass, momentum, theta, phi).expect("sampler stays in the valid domain")
}

fn generic_modulus<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let r = rng.random_range(0.25_f64.ln()..=4.0_f64.ln()).exp();
        if (r * r - 1.0).abs() >= 1e-2 {
            return r;
        }
    }
}

pub fn sample_phases<R: Rng + ?Sized>(rng: &mut R, mode: PhaseMode) -> PhasePair {
    let mut draw = || match mode {
        PhaseMode::Generic => C64::from_polar(generic_modulus(rng), rng.random_range(0.0..TAU)),
        PhaseMode::UnitModulus => C64::from_polar(1.0, rng.random_range(0.0..TAU)),
        PhaseMode::Real => C64::from(generic_modulus(rng)),
    };
    let (bp, bm) = (draw(), draw());
    PhasePair::new(bp, bm).expect("sampled phases are nonzero")
}

/// `count` points from a ChaCha8 stream seeded with `seed`, drawn in order.
pub fn sample_points(seed: u64, count: usize, mode: PhaseMode) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let kin = sample_kinematics(&mut rng);
            let phases = sample_phases(&mut rng, mode);
            SamplePoint { kin, phases }
        })
        .collect()
}
