//! Exact linear programming: dense two-phase simplex with Bland's rule.
//!
//! Bland's pivoting rule rules out cycling, and exact field arithmetic rules
//! out tolerance questions, so every query here terminates with a certified
//! yes/no (plus a rational witness where one exists).

use super::LinAlgError;
use crate::scalar::Scalar;

/// Result of maximizing a linear functional over `{A x = b, x >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<S> {
    Optimal { value: S, solution: Vec<S> },
    Infeasible,
    Unbounded,
}

/// Maximizes `c . x` subject to `A x = b`, `x >= 0`.
pub fn simplex_max<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S]) -> LpOutcome<S> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "simplex: rhs length mismatch");
    for row in a {
        assert_eq!(row.len(), n, "simplex: row length mismatch");
    }

    // Tableau columns: n structural vars, m artificials, then the rhs.
    let ncols = n + m;
    let mut tab: Vec<Vec<S>> = Vec::with_capacity(m);
    for i in 0..m {
        let negate = b[i] < S::zero();
        let mut row: Vec<S> = a[i]
            .iter()
            .map(|v| if negate { -v.clone() } else { v.clone() })
            .collect();
        for j in 0..m {
            row.push(if j == i { S::one() } else { S::zero() });
        }
        row.push(if negate { -b[i].clone() } else { b[i].clone() });
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: maximize minus the sum of artificials.
    let mut phase1_cost = vec![S::zero(); ncols];
    for cost in phase1_cost.iter_mut().skip(n) {
        *cost = -S::one();
    }
    match run_simplex(&mut tab, &mut basis, &phase1_cost, ncols) {
        SimplexEnd::Unbounded => unreachable!("phase-1 objective is bounded above by zero"),
        SimplexEnd::Optimal => {}
    }
    let phase1_value = objective_value(&tab, &basis, &phase1_cost);
    if !phase1_value.is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; rows that cannot pivot
    // on a structural column are redundant.
    let mut row = 0;
    while row < tab.len() {
        if basis[row] >= n {
            if let Some(j) = (0..n).find(|&j| !tab[row][j].is_zero()) {
                pivot(&mut tab, &mut basis, row, j);
            } else {
                tab.remove(row);
                basis.remove(row);
                continue;
            }
        }
        row += 1;
    }

    // Phase 2 over the structural columns only.
    let mut cost = c.to_vec();
    cost.resize(ncols, S::zero());
    match run_simplex(&mut tab, &mut basis, &cost, n) {
        SimplexEnd::Unbounded => LpOutcome::Unbounded,
        SimplexEnd::Optimal => {
            let mut solution = vec![S::zero(); n];
            let rhs = ncols;
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    solution[bv] = tab[i][rhs].clone();
                }
            }
            LpOutcome::Optimal {
                value: objective_value(&tab, &basis, &cost),
                solution,
            }
        }
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

fn objective_value<S: Scalar>(tab: &[Vec<S>], basis: &[usize], cost: &[S]) -> S {
    let rhs = cost.len();
    let mut value = S::zero();
    for (i, &bv) in basis.iter().enumerate() {
        value = value + cost[bv].clone() * tab[i][rhs].clone();
    }
    value
}

fn run_simplex<S: Scalar>(
    tab: &mut [Vec<S>],
    basis: &mut [usize],
    cost: &[S],
    enterable: usize,
) -> SimplexEnd {
    let rhs = cost.len();
    loop {
        // Bland: entering variable is the lowest-index column with positive
        // reduced cost.
        let mut entering = None;
        'cols: for j in 0..enterable {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = cost[j].clone();
            for (i, &bv) in basis.iter().enumerate() {
                rc = rc - cost[bv].clone() * tab[i][j].clone();
            }
            if rc > S::zero() {
                entering = Some(j);
                break 'cols;
            }
        }
        let entering = match entering {
            Some(j) => j,
            None => return SimplexEnd::Optimal,
        };

        // Ratio test; ties broken by the lowest basic-variable index.
        let mut leaving: Option<(usize, S)> = None;
        for i in 0..tab.len() {
            if tab[i][entering] > S::zero() {
                let ratio = tab[i][rhs].clone() / tab[i][entering].clone();
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((best_i, best)) => {
                        if ratio < best || (ratio == best && basis[i] < basis[best_i]) {
                            Some((i, ratio))
                        } else {
                            Some((best_i, best))
                        }
                    }
                };
            }
        }
        match leaving {
            None => return SimplexEnd::Unbounded,
            Some((row, _)) => pivot(tab, basis, row, entering),
        }
    }
}

fn pivot<S: Scalar>(tab: &mut [Vec<S>], basis: &mut [usize], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v = v.clone() / p.clone();
    }
    for r in 0..tab.len() {
        if r == row || tab[r][col].is_zero() {
            continue;
        }
        let factor = tab[r][col].clone();
        for c in 0..tab[r].len() {
            let upd = factor.clone() * tab[row][c].clone();
            tab[r][c] = tab[r][c].clone() - upd;
        }
    }
    basis[row] = col;
}

/// Finds nonnegative coefficients expressing `point` over `generators`,
/// or `None` when `point` lies outside the generated cone.
pub fn nonneg_combination<S: Scalar>(
    generators: &[Vec<S>],
    point: &[S],
) -> Result<Option<Vec<S>>, LinAlgError> {
    let dim = point.len();
    for g in generators {
        if g.len() != dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
    }
    let k = generators.len();
    let a: Vec<Vec<S>> = (0..dim)
        .map(|coord| (0..k).map(|g| generators[g][coord].clone()).collect())
        .collect();
    let c = vec![S::zero(); k];
    match simplex_max(&a, point, &c) {
        LpOutcome::Optimal { solution, .. } => Ok(Some(solution)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// True iff `point` is a nonnegative rational combination of `generators`.
pub fn cone_member<S: Scalar>(generators: &[Vec<S>], point: &[S]) -> Result<bool, LinAlgError> {
    Ok(nonneg_combination(generators, point)?.is_some())
}

/// Requested strict sign of a pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Decides whether some `x` satisfies `sign(<x, v_i>) = signs[i]` strictly
/// for every normal `v_i`.
///
/// Strictness is reduced to a bounded LP by maximizing a shared slack `t`
/// with `eps_i <x, v_i> >= t`, `0 <= t <= 1`; the open system is feasible
/// iff the optimum has `t > 0`.
pub fn open_sign_feasible<S: Scalar>(
    normals: &[Vec<S>],
    signs: &[Sign],
) -> Result<bool, LinAlgError> {
    assert_eq!(
        normals.len(),
        signs.len(),
        "one sign per normal is required"
    );
    let dim = normals.first().map(|v| v.len()).unwrap_or(0);
    let mut system = ConstraintSystem::new(dim);
    for (v, sign) in normals.iter().zip(signs) {
        if v.len() != dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        let coeffs: Vec<S> = match sign {
            Sign::Plus => v.clone(),
            Sign::Minus => v.iter().map(|c| -c.clone()).collect(),
        };
        system.push(coeffs, Rel::Gt, S::zero());
    }
    Ok(system.solve().is_some())
}

/// Relation of a linear constraint `a . x REL rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ge,
    /// Strict inequality, handled through the shared-slack reduction.
    Gt,
}

/// A system of linear constraints over free (sign-unrestricted) variables.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<S> {
    dim: usize,
    rows: Vec<(Vec<S>, Rel, S)>,
}

impl<S: Scalar> ConstraintSystem<S> {
    pub fn new(dim: usize) -> Self {
        ConstraintSystem {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<S>, rel: Rel, rhs: S) {
        assert_eq!(coeffs.len(), self.dim, "constraint length mismatch");
        self.rows.push((coeffs, rel, rhs));
    }

    /// Finds any solution of the system, honoring strict rows, or `None`.
    pub fn solve(&self) -> Option<Vec<S>> {
        let has_strict = self.rows.iter().any(|(_, rel, _)| *rel == Rel::Gt);
        let d = self.dim;
        // Variables: x+ (d), x- (d), then t if needed, then one slack per
        // Ge/Gt row plus the t-cap slack.
        let n_slack = self
            .rows
            .iter()
            .filter(|(_, rel, _)| *rel != Rel::Eq)
            .count();
        let t_col = 2 * d;
        let n = 2 * d + usize::from(has_strict) * 2 + n_slack;
        let slack_base = 2 * d + if has_strict { 1 } else { 0 };

        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut slack = slack_base;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![S::zero(); n];
            for (j, cj) in coeffs.iter().enumerate() {
                row[j] = cj.clone();
                row[d + j] = -cj.clone();
            }
            match rel {
                Rel::Eq => {}
                Rel::Ge => {
                    row[slack] = -S::one();
                    slack += 1;
                }
                Rel::Gt => {
                    row[t_col] = -S::one();
                    row[slack] = -S::one();
                    slack += 1;
                }
            }
            a.push(row);
            b.push(rhs.clone());
        }
        if has_strict {
            // t + cap = 1
            let mut row = vec![S::zero(); n];
            row[t_col] = S::one();
            row[n - 1] = S::one();
            a.push(row);
            b.push(S::one());
        }

        let mut c = vec![S::zero(); n];
        if has_strict {
            c[t_col] = S::one();
        }
        match simplex_max(&a, &b, &c) {
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("objective is bounded"),
            LpOutcome::Optimal { value, solution } => {
                let strictly_positive = value > S::zero();
                if has_strict && !strictly_positive {
                    return None;
                }
                Some(
                    (0..d)
                        .map(|j| solution[j].clone() - solution[d + j].clone())
                        .collect(),
                )
            }
        }
    }

    /// Maximizes `objective . x` over the system, which must be closed
    /// (no strict rows).
    pub fn maximize(&self, objective: &[S]) -> LpOutcome<S> {
        assert!(
            self.rows.iter().all(|(_, rel, _)| *rel != Rel::Gt),
            "maximize requires a closed system"
        );
        assert_eq!(objective.len(), self.dim);
        let d = self.dim;
        let n_slack = self
            .rows
            .iter()
            .filter(|(_, rel, _)| *rel != Rel::Eq)
            .count();
        let n = 2 * d + n_slack;

        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut slack = 2 * d;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![S::zero(); n];
            for (j, cj) in coeffs.iter().enumerate() {
                row[j] = cj.clone();
                row[d + j] = -cj.clone();
            }
            if *rel == Rel::Ge {
                row[slack] = -S::one();
                slack += 1;
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let mut c = vec![S::zero(); n];
        for (j, cj) in objective.iter().enumerate() {
            c[j] = cj.clone();
            c[d + j] = -cj.clone();
        }
        match simplex_max(&a, &b, &c) {
            LpOutcome::Optimal { value, solution } => LpOutcome::Optimal {
                value,
                solution: (0..d)
                    .map(|j| solution[j].clone() - solution[d + j].clone())
                    .collect(),
            },
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::Zero;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn vq(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&n| q(n)).collect()
    }

    #[test]
    fn cone_member_quadrant() {
        let gens = vec![vq(&[1, 0]), vq(&[0, 1])];
        assert!(cone_member(&gens, &vq(&[2, 3])).unwrap());
        assert!(!cone_member(&gens, &vq(&[-1, 0])).unwrap());
    }

    #[test]
    fn cone_member_blowup_mori_cone() {
        // Mori cone of the blown-up plane in (H, E)-coordinates: E and H - E.
        let gens = vec![vq(&[0, 1]), vq(&[1, -1])];
        // (1, -3) would need coefficient -2 on E.
        assert!(!cone_member(&gens, &vq(&[1, -3])).unwrap());
        assert!(cone_member(&gens, &vq(&[3, 1])).unwrap());
    }

    #[test]
    fn cone_member_dimension_mismatch() {
        let gens = vec![vq(&[1, 0, 0])];
        assert!(matches!(
            cone_member(&gens, &vq(&[1, 0])),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nonneg_combination_returns_certificate() {
        let gens = vec![vq(&[0, 1]), vq(&[1, -1])];
        let point = vq(&[3, 1]);
        let coeffs = nonneg_combination(&gens, &point).unwrap().unwrap();
        let mut recon = vec![q(0), q(0)];
        for (c, g) in coeffs.iter().zip(&gens) {
            assert!(*c >= q(0));
            for (r, gi) in recon.iter_mut().zip(g) {
                *r = r.clone() + c.clone() * gi.clone();
            }
        }
        assert_eq!(recon, point);
    }

    #[test]
    fn open_sign_single_normal() {
        assert!(open_sign_feasible(&[vq(&[1, 0])], &[Sign::Plus]).unwrap());
    }

    #[test]
    fn open_sign_a2_arrangement() {
        // Coroot-pairing functionals of the rank-2 arrangement where the
        // middle normal is the sum of the outer two.
        let normals = vec![vq(&[1, 0]), vq(&[1, 1]), vq(&[0, 1])];
        use Sign::{Minus, Plus};
        assert!(open_sign_feasible(&normals, &[Plus, Plus, Plus]).unwrap());
        // The sum of two positives cannot be negative.
        assert!(!open_sign_feasible(&normals, &[Plus, Minus, Plus]).unwrap());
        assert!(!open_sign_feasible(&normals, &[Minus, Plus, Minus]).unwrap());
        assert!(open_sign_feasible(&normals, &[Minus, Minus, Minus]).unwrap());
    }

    #[test]
    fn cone_member_matches_caratheodory_enumeration() {
        // Brute force: a point lies in the cone iff some linearly
        // independent subset of generators expresses it nonnegatively.
        fn brute_force(gens: &[Vec<Rat>], point: &[Rat]) -> bool {
            let dim = point.len();
            if point.iter().all(|c| c.is_zero()) {
                return true;
            }
            let k = gens.len();
            for mask in 1u32..(1 << k) {
                let subset: Vec<&Vec<Rat>> = (0..k)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| &gens[i])
                    .collect();
                if subset.len() > dim {
                    continue;
                }
                if let Some(coeffs) = solve_consistent(&subset, point) {
                    if coeffs.iter().all(|c| *c >= Rat::from_integer(0.into())) {
                        return true;
                    }
                }
            }
            false
        }

        // Least general solve: Gaussian elimination of the (dim x s) system,
        // returning the unique solution when the subset is independent and
        // the system is consistent.
        fn solve_consistent(subset: &[&Vec<Rat>], point: &[Rat]) -> Option<Vec<Rat>> {
            let dim = point.len();
            let s = subset.len();
            let mut rows: Vec<Vec<Rat>> = (0..dim)
                .map(|r| {
                    let mut row: Vec<Rat> = subset.iter().map(|g| g[r].clone()).collect();
                    row.push(point[r].clone());
                    row
                })
                .collect();
            let mut pivot_of_col = vec![usize::MAX; s];
            let mut rank = 0;
            for col in 0..s {
                let p = (rank..dim).find(|&r| !rows[r][col].is_zero());
                let p = match p {
                    Some(p) => p,
                    None => continue,
                };
                rows.swap(rank, p);
                let pv = rows[rank][col].clone();
                for r in 0..dim {
                    if r == rank || rows[r][col].is_zero() {
                        continue;
                    }
                    let f = rows[r][col].clone() / pv.clone();
                    for c in col..=s {
                        let upd = f.clone() * rows[rank][c].clone();
                        rows[r][c] = rows[r][c].clone() - upd;
                    }
                }
                pivot_of_col[col] = rank;
                rank += 1;
            }
            if pivot_of_col.iter().any(|&p| p == usize::MAX) {
                return None; // dependent subset: skip, a smaller one covers it
            }
            for r in rank..dim {
                if !rows[r][s].is_zero() {
                    return None; // inconsistent
                }
            }
            Some(
                (0..s)
                    .map(|c| {
                        let r = pivot_of_col[c];
                        rows[r][s].clone() / rows[r][c].clone()
                    })
                    .collect(),
            )
        }

        let gen_sets: Vec<Vec<Vec<Rat>>> = vec![
            vec![vq(&[1, 0, 0]), vq(&[0, 1, 0]), vq(&[0, 0, 1])],
            vec![vq(&[1, 1, 0]), vq(&[0, 1, 1]), vq(&[1, 0, 1]), vq(&[1, 1, 1])],
            vec![vq(&[0, 1, 0]), vq(&[1, -1, 0]), vq(&[0, 0, 2])],
            vec![vq(&[2, 1, 0]), vq(&[-1, 2, 1])],
        ];
        let mut grid = Vec::new();
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                for z in -2..=2i64 {
                    grid.push(vq(&[x, y, z]));
                }
            }
        }
        for gens in &gen_sets {
            for point in &grid {
                assert_eq!(
                    cone_member(gens, point).unwrap(),
                    brute_force(gens, point),
                    "gens {gens:?} point {point:?}"
                );
            }
        }
    }

    #[test]
    fn constraint_system_strict_and_equalities() {
        // x + y = 2, x > 0, y > 0 is feasible; adding x >= 3 kills it.
        let mut sys = ConstraintSystem::new(2);
        sys.push(vq(&[1, 1]), Rel::Eq, q(2));
        sys.push(vq(&[1, 0]), Rel::Gt, q(0));
        sys.push(vq(&[0, 1]), Rel::Gt, q(0));
        let x = sys.solve().expect("feasible");
        assert_eq!(x[0].clone() + x[1].clone(), q(2));
        assert!(x[0] > q(0) && x[1] > q(0));

        sys.push(vq(&[1, 0]), Rel::Ge, q(3));
        assert!(sys.solve().is_none());
    }

    #[test]
    fn maximize_linear_functional() {
        // max x + y over the triangle x,y >= 0, x + 2y <= 4, 2x + y <= 4.
        let mut sys = ConstraintSystem::new(2);
        sys.push(vq(&[1, 0]), Rel::Ge, q(0));
        sys.push(vq(&[0, 1]), Rel::Ge, q(0));
        sys.push(vq(&[-1, -2]), Rel::Ge, q(-4));
        sys.push(vq(&[-2, -1]), Rel::Ge, q(-4));
        match sys.maximize(&vq(&[1, 1])) {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, Rat::new(8.into(), 3.into()));
                assert_eq!(solution, vec![Rat::new(4.into(), 3.into()); 2]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn unbounded_detected() {
        let mut sys = ConstraintSystem::new(1);
        sys.push(vq(&[1]), Rel::Ge, q(0));
        assert!(matches!(sys.maximize(&vq(&[1])), LpOutcome::Unbounded));
    }
}
