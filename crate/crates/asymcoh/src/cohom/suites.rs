//! Seeded, reproducible check suites over any [`VarietyModel`].
//!
//! Each suite draws its sample from an explicit seed and a sample count, so
//! identical inputs give identical reports.

use super::harness::{
    calibrate_direction_constants, check_lipschitz, check_telescoping_bound, run_homogeneity,
    run_walls, HomogeneityReport, LipschitzReport, TelescopingReport, WallContinuityReport,
};
use super::{DivisorClass, HarnessError, VarietyModel};
use crate::sampling::SplitMix64;
use num_traits::Zero;

/// Sample box: max-norm radius 10, denominators up to 4.
const NUM_BOUND: i64 = 10;
const DEN_BOUND: i64 = 4;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 200,
        }
    }
}

fn sample_classes(rng: &mut SplitMix64, count: usize, rank: usize) -> Vec<DivisorClass> {
    (0..count)
        .map(|_| DivisorClass::new((0..rank).map(|_| rng.rational(NUM_BOUND, DEN_BOUND)).collect()))
        .collect()
}

fn sample_pairs(
    rng: &mut SplitMix64,
    count: usize,
    rank: usize,
) -> Vec<(DivisorClass, DivisorClass)> {
    (0..count)
        .map(|_| {
            let a = DivisorClass::new(
                (0..rank).map(|_| rng.rational(NUM_BOUND, DEN_BOUND)).collect(),
            );
            let b = DivisorClass::new(
                (0..rank).map(|_| rng.rational(NUM_BOUND, DEN_BOUND)).collect(),
            );
            (a, b)
        })
        .collect()
}

/// Exact homogeneity `evaluate(m x) = m^n evaluate(x)` for m = 1..8 over a
/// seeded sample.
pub fn homogeneity_suite(model: &dyn VarietyModel, cfg: SuiteConfig) -> HomogeneityReport {
    let mut rng = SplitMix64::new(cfg.seed);
    let classes = sample_classes(&mut rng, cfg.samples, model.rank());
    run_homogeneity(model, &classes, 8)
}

/// Wall continuity over every wall the model enumerates.
pub fn walls_suite(model: &dyn VarietyModel) -> WallContinuityReport {
    run_walls(model)
}

/// The Lipschitz estimate run on two disjoint seeded samples; the suite
/// passes when the empirical constants agree within a factor of two.
#[derive(Clone, Debug)]
pub struct LipschitzSuite {
    pub first: LipschitzReport,
    pub second: LipschitzReport,
    pub stable_within_factor_two: bool,
}

impl LipschitzSuite {
    pub fn pass(&self) -> bool {
        self.stable_within_factor_two
    }
}

pub fn lipschitz_suite(model: &dyn VarietyModel, cfg: SuiteConfig) -> LipschitzSuite {
    let run = |seed: u64| {
        let mut rng = SplitMix64::new(seed);
        let pairs = sample_pairs(&mut rng, cfg.samples, model.rank());
        // No threshold is imposed on a single run: the reported constant is
        // the smallest that would pass, and stability across samples is the
        // pass criterion.
        let probe = check_lipschitz(model, &pairs, &crate::Rat::from_integer((-1).into()));
        check_lipschitz(model, &pairs, &probe.max_observed_ratio)
    };
    let first = run(cfg.seed);
    let second = run(cfg.seed.wrapping_add(1));
    let (lo, hi) = if first.max_observed_ratio <= second.max_observed_ratio {
        (&first.max_observed_ratio, &second.max_observed_ratio)
    } else {
        (&second.max_observed_ratio, &first.max_observed_ratio)
    };
    let two = crate::Rat::from_integer(2.into());
    let stable = hi <= &(lo * &two) && (!hi.is_zero() || lo.is_zero());
    LipschitzSuite {
        first,
        second,
        stable_within_factor_two: stable,
    }
}

/// The telescoping bound: per-direction constants calibrated on a seeded
/// hypothesis sample, then the conclusion constant `(max C_i) r n n!`
/// checked on fresh pairs drawn from the successor seed.
pub fn telescoping_suite(
    model: &dyn VarietyModel,
    cfg: SuiteConfig,
) -> Result<TelescopingReport, HarnessError> {
    let basis = model.basis();
    let mut rng = SplitMix64::new(cfg.seed);
    let hypothesis: Vec<(DivisorClass, u64)> = (0..cfg.samples)
        .map(|_| {
            let d = DivisorClass::new(
                (0..model.rank())
                    .map(|_| rng.rational(NUM_BOUND, DEN_BOUND))
                    .collect(),
            );
            (d, 1 + rng.next_u64() % 4)
        })
        .collect();
    let constants = calibrate_direction_constants(model, &basis, &hypothesis);
    let mut fresh_rng = SplitMix64::new(cfg.seed.wrapping_add(1));
    let pairs = sample_pairs(&mut fresh_rng, cfg.samples, model.rank());
    check_telescoping_bound(model, &basis, &constants, &hypothesis, &pairs)
}

/// Euler identity sample for surface models: seeded classes in the box.
pub fn euler_sample(rank: usize, cfg: SuiteConfig) -> Vec<DivisorClass> {
    let mut rng = SplitMix64::new(cfg.seed);
    sample_classes(&mut rng, cfg.samples, rank)
}
