//! Executable checks for the structural properties of asymptotic
//! cohomological functions: homogeneity, wall continuity, the Lipschitz-type
//! estimate, the telescoping bound and the limsup proxy used by oracles.

use super::{
    factorial, max_norm, ChamberId, CohomologyVector, DivisorClass, HarnessError, NormedBasis,
    VarietyModel, WallSpec,
};
use crate::Rat;
use num_traits::{One, Signed, Zero};

fn rat_u64(n: u64) -> Rat {
    Rat::from_integer(n.into())
}

fn rat_pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

// ---------------------------------------------------------------------------
// Homogeneity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct HomogeneityFailure {
    pub class: DivisorClass,
    pub multiplier: u64,
    pub expected: CohomologyVector,
    pub got: CohomologyVector,
}

#[derive(Clone, Debug)]
pub struct HomogeneityReport {
    pub checked: usize,
    pub failures: Vec<HomogeneityFailure>,
}

impl HomogeneityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Asserts `evaluate(m x) = m^n evaluate(x)` componentwise and exactly.
pub fn check_homogeneity(
    model: &dyn VarietyModel,
    class: &DivisorClass,
    multiplier: u64,
) -> Option<HomogeneityFailure> {
    assert!(multiplier >= 1);
    let m = rat_u64(multiplier);
    let scaled = model.evaluate(&class.scale(&m));
    let factor = rat_pow(&m, model.dimension());
    let expected = CohomologyVector::new(
        model
            .evaluate(class)
            .values()
            .iter()
            .map(|v| v * &factor)
            .collect(),
    );
    if scaled == expected {
        None
    } else {
        Some(HomogeneityFailure {
            class: class.clone(),
            multiplier,
            expected,
            got: scaled,
        })
    }
}

pub fn run_homogeneity(
    model: &dyn VarietyModel,
    classes: &[DivisorClass],
    max_multiplier: u64,
) -> HomogeneityReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for class in classes {
        for m in 1..=max_multiplier {
            checked += 1;
            if let Some(f) = check_homogeneity(model, class, m) {
                failures.push(f);
            }
        }
    }
    HomogeneityReport { checked, failures }
}

// ---------------------------------------------------------------------------
// Wall continuity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SideLimit {
    /// +1 or -1: which side of the wall the approach came from.
    pub side: i64,
    /// Chamber the approach segment lies in.
    pub chamber: ChamberId,
    /// Exact limit of the chamber polynomial at the wall point, recovered
    /// by polynomial interpolation in the step parameter.
    pub limit: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct WallPointCheck {
    pub wall: String,
    pub point: DivisorClass,
    pub direction: DivisorClass,
    pub wall_value: CohomologyVector,
    pub sides: Vec<SideLimit>,
    /// Largest |limit - wall value| over both sides and all degrees.
    pub max_discrepancy: Rat,
    /// Samples of one side failed to settle into a single chamber.
    pub straddled: bool,
}

impl WallPointCheck {
    pub fn pass(&self) -> bool {
        !self.straddled && self.max_discrepancy.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct WallContinuityReport {
    pub checks: Vec<WallPointCheck>,
    pub max_discrepancy: Rat,
}

impl WallContinuityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass())
    }
}

/// Interpolates the exact value at `t = 0` of the degree `<= samples-1`
/// polynomial through `(t_k, y_k)`.
fn lagrange_at_zero(samples: &[(Rat, Rat)]) -> Rat {
    let mut acc = Rat::zero();
    for (k, (tk, yk)) in samples.iter().enumerate() {
        let mut weight = Rat::one();
        for (j, (tj, _)) in samples.iter().enumerate() {
            if j != k {
                weight *= -tj.clone() / (tk - tj);
            }
        }
        acc += yk * &weight;
    }
    acc
}

/// Two-sided exact limit of the cohomology vector at a wall point.
///
/// For each side the approach classes `point + (±1/k) direction` must settle
/// into a single chamber; the chamber polynomial restricted to the segment
/// is a polynomial of degree at most `n` in the step, so interpolating
/// `n + 1` exact samples and evaluating at step zero recovers the one-sided
/// limit exactly.
pub fn check_wall_continuity(
    model: &dyn VarietyModel,
    point: &DivisorClass,
    directions: &[DivisorClass],
    denominators: &[u64],
) -> WallContinuityReport {
    let mut checks = Vec::new();
    for direction in directions {
        checks.push(check_wall_point(
            model,
            "wall",
            point,
            direction,
            denominators,
        ));
    }
    let max_discrepancy = checks
        .iter()
        .map(|c| c.max_discrepancy.clone())
        .max()
        .unwrap_or_else(Rat::zero);
    WallContinuityReport {
        checks,
        max_discrepancy,
    }
}

fn check_wall_point(
    model: &dyn VarietyModel,
    wall: &str,
    point: &DivisorClass,
    direction: &DivisorClass,
    denominators: &[u64],
) -> WallPointCheck {
    let n = model.dimension();
    assert!(
        denominators.len() >= n + 1,
        "need at least dimension + 1 steps to pin the chamber polynomial"
    );
    let wall_value = model.evaluate(point);
    let mut sides = Vec::new();
    let mut straddled = false;
    let mut max_discrepancy = Rat::zero();

    for side in [1i64, -1i64] {
        let mut samples: Vec<(Rat, CohomologyVector)> = Vec::new();
        let mut chambers = Vec::new();
        for &k in denominators {
            let t = Rat::new(side.into(), k.into());
            let class = point.add(&direction.scale(&t));
            chambers.push(model.chamber_id(&class));
            samples.push((t, model.evaluate(&class)));
        }
        let settled = chambers.windows(2).all(|w| w[0] == w[1]);
        if !settled {
            straddled = true;
        }
        let mut limit = Vec::new();
        for degree in 0..=n {
            let pts: Vec<(Rat, Rat)> = samples
                .iter()
                .map(|(t, v)| (t.clone(), v.values()[degree].clone()))
                .collect();
            let value = lagrange_at_zero(&pts);
            let discrepancy = (&value - &wall_value.values()[degree]).abs();
            if discrepancy > max_discrepancy {
                max_discrepancy = discrepancy;
            }
            limit.push(value);
        }
        sides.push(SideLimit {
            side,
            chamber: chambers[0].clone(),
            limit,
        });
    }

    WallPointCheck {
        wall: wall.to_string(),
        point: point.clone(),
        direction: direction.clone(),
        wall_value,
        sides,
        max_discrepancy,
        straddled,
    }
}

/// Runs the wall-continuity check over every wall the model enumerates.
///
/// The step sizes are chosen adaptively: starting from `1/base`, the base is
/// doubled until both approach segments settle into a single chamber.
pub fn run_walls(model: &dyn VarietyModel) -> WallContinuityReport {
    let n = model.dimension();
    let mut checks = Vec::new();
    for WallSpec {
        label,
        points,
        direction,
    } in model.wall_specs()
    {
        for point in &points {
            debug_assert!(
                model.chamber_id(point).is_wall(),
                "wall witness {point} of {label} must lie on a wall"
            );
            let mut base = 4u64;
            let mut check = loop {
                let denominators: Vec<u64> = (0..=n as u64).map(|i| base + i).collect();
                let check = check_wall_point(model, &label, point, &direction, &denominators);
                if !check.straddled || base > (1 << 20) {
                    break check;
                }
                base *= 2;
            };
            check.wall = label.clone();
            checks.push(check);
        }
    }
    let max_discrepancy = checks
        .iter()
        .map(|c| c.max_discrepancy.clone())
        .max()
        .unwrap_or_else(Rat::zero);
    WallContinuityReport {
        checks,
        max_discrepancy,
    }
}

// ---------------------------------------------------------------------------
// Lipschitz estimate
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LipschitzViolation {
    pub left: DivisorClass,
    pub right: DivisorClass,
    pub degree: usize,
    pub ratio: Rat,
}

/// Outcome of testing `|h^i(x) - h^i(y)| <= C sum_k max(|x|,|y|)^{n-k} |x-y|^k`.
#[derive(Clone, Debug)]
pub struct LipschitzReport {
    pub constant: Rat,
    pub pairs_tested: usize,
    /// Smallest constant that would pass on this sample.
    pub max_observed_ratio: Rat,
    pub violations: Vec<LipschitzViolation>,
}

impl LipschitzReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The bound side `sum_{k=1}^{n} M^{n-k} d^k` of the estimate.
fn lipschitz_envelope(m: &Rat, d: &Rat, n: usize) -> Rat {
    let mut acc = Rat::zero();
    for k in 1..=n {
        acc += rat_pow(m, n - k) * rat_pow(d, k);
    }
    acc
}

pub fn check_lipschitz(
    model: &dyn VarietyModel,
    pairs: &[(DivisorClass, DivisorClass)],
    constant: &Rat,
) -> LipschitzReport {
    let n = model.dimension();
    let basis = model.basis();
    let mut max_ratio = Rat::zero();
    let mut violations = Vec::new();
    for (left, right) in pairs {
        let vl = model.evaluate(left);
        let vr = model.evaluate(right);
        let nl = max_norm(&basis, left).expect("rank-checked class");
        let nr = max_norm(&basis, right).expect("rank-checked class");
        let m = if nl >= nr { nl } else { nr };
        let d = max_norm(&basis, &left.sub(right)).expect("rank-checked class");
        let envelope = lipschitz_envelope(&m, &d, n);
        if envelope.is_zero() {
            // x = y: the left side vanishes as well.
            continue;
        }
        for degree in 0..=n {
            let diff = (&vl.values()[degree] - &vr.values()[degree]).abs();
            let ratio = diff / &envelope;
            if ratio > max_ratio {
                max_ratio = ratio.clone();
            }
            if &ratio > constant {
                violations.push(LipschitzViolation {
                    left: left.clone(),
                    right: right.clone(),
                    degree,
                    ratio,
                });
            }
        }
    }
    LipschitzReport {
        constant: constant.clone(),
        pairs_tested: pairs.len(),
        max_observed_ratio: max_ratio,
        violations,
    }
}

/// Smallest constant C with `h^i(x) <= C |x|^n` over the sample.
pub fn norm_growth_constant(model: &dyn VarietyModel, classes: &[DivisorClass]) -> Rat {
    let n = model.dimension();
    let basis = model.basis();
    let mut best = Rat::zero();
    for class in classes {
        let norm = max_norm(&basis, class).expect("rank-checked class");
        if norm.is_zero() {
            continue;
        }
        let denom = rat_pow(&norm, n);
        for v in model.evaluate(class).values() {
            let ratio = v / &denom;
            if ratio > best {
                best = ratio;
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Telescoping bound
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct TelescopingReport {
    pub per_direction_constants: Vec<Rat>,
    /// `(max C_i) * r * n * n!`, the constant of the conclusion.
    pub conclusion_constant: Rat,
    pub hypothesis_checked: usize,
    pub pairs_checked: usize,
    pub violations: Vec<LipschitzViolation>,
}

impl TelescopingReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn basis_vector(rank: usize, i: usize) -> DivisorClass {
    let mut coords = vec![Rat::zero(); rank];
    coords[i] = Rat::one();
    DivisorClass::new(coords)
}

/// Per-direction hypothesis envelope `sum_{k=1}^{n} |D|^{n-k} b^k`.
fn hypothesis_envelope(norm_d: &Rat, b: u64, n: usize) -> Rat {
    lipschitz_envelope(norm_d, &rat_u64(b), n)
}

/// Smallest per-direction constants making the hypothesis hold on the
/// sampled `(D, b)` pairs.
pub fn calibrate_direction_constants(
    model: &dyn VarietyModel,
    basis: &NormedBasis,
    samples: &[(DivisorClass, u64)],
) -> Vec<Rat> {
    let n = model.dimension();
    let r = model.rank();
    let mut constants = vec![Rat::zero(); r];
    for (d, b) in samples {
        let norm_d = max_norm(basis, d).expect("rank-checked class");
        let envelope = hypothesis_envelope(&norm_d, *b, n);
        let vd = model.evaluate(d);
        for (i, constant) in constants.iter_mut().enumerate() {
            let shifted = d.sub(&basis_vector(r, i).scale(&rat_u64(*b)));
            let vs = model.evaluate(&shifted);
            for degree in 0..=n {
                let diff = (&vs.values()[degree] - &vd.values()[degree]).abs();
                let ratio = diff / &envelope;
                if ratio > *constant {
                    *constant = ratio;
                }
            }
        }
    }
    constants
}

/// Checks the telescoping bound: once the per-direction hypothesis holds with
/// constants `C_i` on the sampled data, the two-point conclusion must hold
/// with `C = (max C_i) * r * n * n!` on the test pairs.
pub fn check_telescoping_bound(
    model: &dyn VarietyModel,
    basis: &NormedBasis,
    per_direction_constants: &[Rat],
    hypothesis_samples: &[(DivisorClass, u64)],
    test_pairs: &[(DivisorClass, DivisorClass)],
) -> Result<TelescopingReport, HarnessError> {
    let n = model.dimension();
    let r = model.rank();
    assert_eq!(per_direction_constants.len(), r);

    // Re-verify the hypothesis for the supplied constants.
    let mut hypothesis_checked = 0;
    for (d, b) in hypothesis_samples {
        let norm_d = max_norm(basis, d)?;
        let envelope = hypothesis_envelope(&norm_d, *b, n);
        let vd = model.evaluate(d);
        for (i, ci) in per_direction_constants.iter().enumerate() {
            let shifted = d.sub(&basis_vector(r, i).scale(&rat_u64(*b)));
            let vs = model.evaluate(&shifted);
            hypothesis_checked += 1;
            for degree in 0..=n {
                let diff = (&vs.values()[degree] - &vd.values()[degree]).abs();
                if diff > ci * &envelope {
                    return Err(HarnessError::HypothesisNotVerified {
                        direction: i,
                        detail: format!("D = {d}, b = {b}, degree {degree}"),
                    });
                }
            }
        }
    }

    let max_ci = per_direction_constants
        .iter()
        .cloned()
        .max()
        .unwrap_or_else(Rat::zero);
    let conclusion_constant =
        max_ci * rat_u64(r as u64) * rat_u64(n as u64) * Rat::from_integer(factorial(n));

    let conclusion = check_lipschitz(model, test_pairs, &conclusion_constant);
    Ok(TelescopingReport {
        per_direction_constants: per_direction_constants.to_vec(),
        conclusion_constant,
        hypothesis_checked,
        pairs_checked: test_pairs.len(),
        violations: conclusion.violations,
    })
}

// ---------------------------------------------------------------------------
// Limsup proxy
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimsupEstimate {
    pub value: Rat,
    /// The m attaining the maximum within the tail.
    pub attained_at: u64,
    /// First m of the tail half used for the estimate.
    pub tail_start: u64,
}

/// Finite-prefix proxy for `limsup a_m / (m^n / n!)`: the maximum of the
/// normalized values over the tail half of the sample.
pub fn limsup_estimate(
    sequence: &[(u64, Rat)],
    degree: usize,
) -> Result<LimsupEstimate, HarnessError> {
    if sequence.is_empty() {
        return Err(HarnessError::EmptySequence);
    }
    assert!(
        sequence.windows(2).all(|w| w[0].0 < w[1].0),
        "m must be strictly increasing"
    );
    let tail = &sequence[sequence.len() / 2..];
    let n_fact = Rat::from_integer(factorial(degree));
    let mut best: Option<(Rat, u64)> = None;
    for (m, value) in tail {
        assert!(*m >= 1);
        let normalized = value * &n_fact / rat_pow(&rat_u64(*m), degree);
        best = match best {
            None => Some((normalized, *m)),
            Some((bv, bm)) => {
                if normalized > bv {
                    Some((normalized, *m))
                } else {
                    Some((bv, bm))
                }
            }
        };
    }
    let (value, attained_at) = best.expect("tail is nonempty");
    Ok(LimsupEstimate {
        value,
        attained_at,
        tail_start: tail[0].0,
    })
}
