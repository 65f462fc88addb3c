//! Asymptotic cohomology on generalized flag varieties G/B.
//!
//! A root system is stored entirely in rational data: positive roots as
//! integer vectors in the simple-root basis, the symmetrized Cartan form as
//! a rational Gram matrix, and weights by their pairings with simple coroots
//! (Dynkin labels). All pairings against coroots are rational regardless of
//! root lengths, which keeps the Weyl dimension formula and the chamber
//! arrangement in exact arithmetic; no irrational Euclidean coordinates are
//! ever introduced.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::cohom::{ChamberId, CohomologyVector, DivisorClass, VarietyModel, WallSpec};
use crate::exactlin::{open_sign_feasible, signature, solve, Sign, SymMatrix};
use crate::{Int, QSymMatrix, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagError {
    UnsupportedType(String),
    /// Weight has a non-integer Dynkin label where an integral weight is
    /// required.
    NonIntegralWeight,
    NotDominant,
}

impl std::fmt::Display for FlagError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlagError::UnsupportedType(t) => write!(f, "unsupported root system type: {t}"),
            FlagError::NonIntegralWeight => write!(f, "weight is not integral"),
            FlagError::NotDominant => write!(f, "weight is not dominant"),
        }
    }
}

impl std::error::Error for FlagError {}

/// A weight, stored by its Dynkin labels (coordinates in the
/// fundamental-weight basis). Arbitrary rational labels are allowed for
/// asymptotic divisor classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    labels: Vec<Rat>,
}

impl Weight {
    pub fn new(labels: Vec<Rat>) -> Self {
        Weight { labels }
    }

    pub fn from_integers(labels: &[i64]) -> Self {
        Weight {
            labels: labels.iter().map(|&l| Rat::from_integer(l.into())).collect(),
        }
    }

    pub fn labels(&self) -> &[Rat] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn is_integral(&self) -> bool {
        self.labels.iter().all(|l| l.is_integer())
    }

    pub fn from_class(class: &DivisorClass) -> Self {
        Weight {
            labels: class.coords().to_vec(),
        }
    }
}

/// Outcome of an index computation: either a cohomological degree or a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexResult {
    Index(usize),
    Wall,
}

/// A chamber of the arrangement cut out by the positive-root hyperplanes,
/// identified by its strict sign vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberDescriptor {
    /// Sign of the pairing with each positive root, in root order.
    pub signs: Vec<Sign>,
    /// Number of negative pairings; the degree carrying cohomology.
    pub index: usize,
    pub nonempty: bool,
}

impl ChamberDescriptor {
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.to_string()).collect()
    }
}

/// A semisimple root system with everything precomputed for exact pairing
/// arithmetic.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, by increasing height.
    positive_roots: Vec<Vec<i64>>,
    gram: QSymMatrix,
    /// For each positive root v, the functional giving `<lambda, v^vee>` on
    /// Dynkin labels.
    coroot_pairings: Vec<Vec<Rat>>,
    /// `<rho, v^vee>` for each positive root.
    rho_pairings: Vec<Rat>,
    /// Fundamental weights in simple-root coordinates.
    fundamental_weights: Vec<Vec<Rat>>,
}

impl RootSystem {
    /// Builds the root system named by a token such as "A2", "B3" or "G2".
    pub fn from_token(token: &str) -> Result<RootSystem, FlagError> {
        let token = token.trim();
        let unsupported = || FlagError::UnsupportedType(token.to_string());
        let mut chars = token.chars();
        let family = chars.next().ok_or_else(unsupported)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        RootSystem::new(family, rank)
    }

    /// Builds the root system of the given family and rank.
    pub fn new(family: char, rank: usize) -> Result<RootSystem, FlagError> {
        let label = format!("{family}{rank}");
        let unsupported = || FlagError::UnsupportedType(label.clone());
        let supported = match family {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 3,
            'G' => rank == 2,
            'F' => rank == 4,
            'E' => (6..=8).contains(&rank),
            _ => false,
        };
        if !supported {
            return Err(unsupported());
        }
        let (cartan, lengths) = cartan_data(family, rank);
        let positive_roots = close_positive_roots(&cartan);

        let gram_entries: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| Rat::from_integer((lengths[j] * cartan[i][j]).into()))
                    .collect()
            })
            .collect();
        let gram = SymMatrix::new(gram_entries).expect("symmetrized Cartan form");
        let sig = signature(&gram);
        assert!(
            sig.negatives == 0 && sig.zeros == 0,
            "Cartan form of {label} must be positive definite"
        );

        let coroot_pairings: Vec<Vec<Rat>> = positive_roots
            .iter()
            .map(|root| {
                let mut sq = 0i64;
                for i in 0..rank {
                    for j in 0..rank {
                        sq += root[i] * lengths[j] * cartan[i][j] * root[j];
                    }
                }
                assert!(sq > 0);
                (0..rank)
                    .map(|i| Rat::new((2 * root[i] * lengths[i]).into(), sq.into()))
                    .collect()
            })
            .collect();
        let rho_pairings: Vec<Rat> = coroot_pairings
            .iter()
            .map(|kappa| kappa.iter().sum())
            .collect();

        // Fundamental weight j in root coordinates solves
        // sum_k x_k <alpha_k, alpha_i^vee> = delta_ij.
        let cartan_t: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| Rat::from_integer(cartan[j][i].into()))
                    .collect()
            })
            .collect();
        let fundamental_weights: Vec<Vec<Rat>> = (0..rank)
            .map(|j| {
                let mut rhs = vec![Rat::zero(); rank];
                rhs[j] = Rat::one();
                solve(&cartan_t, &rhs).expect("Cartan matrix is invertible")
            })
            .collect();

        Ok(RootSystem {
            label,
            rank,
            cartan,
            positive_roots,
            gram,
            coroot_pairings,
            rho_pairings,
            fundamental_weights,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots; the dimension of G/B.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Positive roots in simple-root coordinates, by increasing height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn gram(&self) -> &QSymMatrix {
        &self.gram
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn fundamental_weights(&self) -> &[Vec<Rat>] {
        &self.fundamental_weights
    }

    /// Half the sum of positive roots: the weight with all Dynkin labels 1.
    pub fn rho(&self) -> Weight {
        Weight {
            labels: vec![Rat::one(); self.rank],
        }
    }

    /// `<w, v^vee>` against the positive root with index `root`.
    pub fn coroot_pairing(&self, w: &Weight, root: usize) -> Rat {
        assert_eq!(w.rank(), self.rank, "weight rank mismatch");
        self.coroot_pairings[root]
            .iter()
            .zip(&w.labels)
            .map(|(k, l)| k * l)
            .sum()
    }

    /// Pairings of a weight against all positive coroots, in root order.
    pub fn coroot_pairings_of(&self, w: &Weight) -> Vec<Rat> {
        (0..self.positive_roots.len())
            .map(|v| self.coroot_pairing(w, v))
            .collect()
    }

    fn rho_pairing_product(&self) -> Rat {
        let mut acc = Rat::one();
        for p in &self.rho_pairings {
            acc *= p;
        }
        acc
    }
}

fn chain_cartan(rank: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        a[i][i] = 2;
        if i + 1 < rank {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

/// Cartan matrix `A[i][j] = <alpha_i, alpha_j^vee>` plus the integer
/// symmetrizing factors (proportional to half squared root lengths).
fn cartan_data(family: char, rank: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    match family {
        'A' => (chain_cartan(rank), vec![1; rank]),
        'B' => {
            // Last simple root short.
            let mut a = chain_cartan(rank);
            a[rank - 2][rank - 1] = -2;
            let mut d = vec![2; rank];
            d[rank - 1] = 1;
            (a, d)
        }
        'C' => {
            // Last simple root long.
            let mut a = chain_cartan(rank);
            a[rank - 1][rank - 2] = -2;
            let mut d = vec![1; rank];
            d[rank - 1] = 2;
            (a, d)
        }
        'D' => {
            let mut a = chain_cartan(rank - 1);
            for row in a.iter_mut() {
                row.push(0);
            }
            a.push(vec![0; rank]);
            a[rank - 1][rank - 1] = 2;
            a[rank - 3][rank - 1] = -1;
            a[rank - 1][rank - 3] = -1;
            (a, vec![1; rank])
        }
        'G' => (vec![vec![2, -3], vec![-1, 2]], vec![3, 1]),
        'F' => {
            let mut a = chain_cartan(4);
            a[1][2] = -2;
            (a, vec![2, 2, 1, 1])
        }
        'E' => {
            // Chain 0..rank-2 with the branch node rank-1 attached to node 2.
            let mut a = chain_cartan(rank - 1);
            for row in a.iter_mut() {
                row.push(0);
            }
            a.push(vec![0; rank]);
            a[rank - 1][rank - 1] = 2;
            a[2][rank - 1] = -1;
            a[rank - 1][2] = -1;
            (a, vec![1; rank])
        }
        _ => unreachable!("family validated by the caller"),
    }
}

/// Generates all positive roots from the simple ones by root strings:
/// `beta + alpha_i` is a root iff `p - <beta, alpha_i^vee> >= 1` where `p`
/// is the largest k with `beta - k alpha_i` still a root.
fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for i in 0..rank {
        let mut simple = vec![0i64; rank];
        simple[i] = 1;
        seen.insert(simple.clone());
        roots.push(simple);
    }
    let mut cursor = 0;
    while cursor < roots.len() {
        let beta = roots[cursor].clone();
        cursor += 1;
        for i in 0..rank {
            let mut candidate = beta.clone();
            candidate[i] += 1;
            if seen.contains(&candidate) {
                continue;
            }
            let mut p = 0i64;
            let mut lower = beta.clone();
            loop {
                lower[i] -= 1;
                if seen.contains(&lower) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
            if p - pairing >= 1 {
                seen.insert(candidate.clone());
                roots.push(candidate);
            }
        }
    }
    // Stable by height, keeping discovery order (simple roots first, in
    // index order).
    roots.sort_by_key(|r| r.iter().sum::<i64>());
    roots
}

/// The Borel-Weil-Bott index of an integral weight: `Wall` when
/// `lambda + rho` pairs to zero with some positive root, otherwise the
/// number of positive roots pairing strictly negatively.
pub fn bwb_index(rs: &RootSystem, lambda: &Weight) -> Result<IndexResult, FlagError> {
    if !lambda.is_integral() {
        return Err(FlagError::NonIntegralWeight);
    }
    let shifted = Weight {
        labels: lambda.labels.iter().map(|l| l + Rat::one()).collect(),
    };
    Ok(index_of_pairings(&rs.coroot_pairings_of(&shifted)))
}

fn index_of_pairings(pairings: &[Rat]) -> IndexResult {
    if pairings.iter().any(|p| p.is_zero()) {
        return IndexResult::Wall;
    }
    IndexResult::Index(pairings.iter().filter(|p| p.is_negative()).count())
}

/// Walks `weight` to the dominant chamber by simple reflections, in Dynkin
/// label coordinates. Only called on regular weights.
fn dominant_conjugate(rs: &RootSystem, mut labels: Vec<Rat>) -> Vec<Rat> {
    let guard = 2 * rs.num_positive_roots() + 16;
    for _ in 0..guard {
        let neg = labels.iter().position(|l| l.is_negative());
        let i = match neg {
            Some(i) => i,
            None => return labels,
        };
        let coeff = labels[i].clone();
        for j in 0..rs.rank {
            labels[j] -= &coeff * &Rat::from_integer(rs.cartan[i][j].into());
        }
    }
    unreachable!("reflection walk exceeds the length of the longest Weyl element")
}

/// Dimension of the irreducible representation with dominant highest
/// weight `lambda`, by the Weyl dimension formula.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<Int, FlagError> {
    if !lambda.is_integral() {
        return Err(FlagError::NonIntegralWeight);
    }
    if lambda.labels.iter().any(|l| l.is_negative()) {
        return Err(FlagError::NotDominant);
    }
    let shifted = Weight {
        labels: lambda.labels.iter().map(|l| l + Rat::one()).collect(),
    };
    let mut num = Rat::one();
    for p in rs.coroot_pairings_of(&shifted) {
        num *= p;
    }
    let dim = num / rs.rho_pairing_product();
    assert!(dim.is_integer(), "Weyl product must divide exactly");
    Ok(dim.to_integer())
}

/// Cohomology of the line bundle of an integral weight: empty on walls,
/// otherwise a single `(degree, dimension)` pair with the degree given by
/// the index and the dimension by the Weyl formula applied to the dominant
/// conjugate of `lambda + rho`.
pub fn bwb_cohomology(
    rs: &RootSystem,
    lambda: &Weight,
) -> Result<Vec<(usize, Int)>, FlagError> {
    let index = match bwb_index(rs, lambda)? {
        IndexResult::Wall => return Ok(Vec::new()),
        IndexResult::Index(i) => i,
    };
    let shifted: Vec<Rat> = lambda.labels.iter().map(|l| l + Rat::one()).collect();
    let dominant = dominant_conjugate(rs, shifted);
    let mut num = Rat::one();
    for p in rs.coroot_pairings_of(&Weight { labels: dominant }) {
        assert!(p.is_positive(), "dominant conjugate of a regular weight");
        num *= p;
    }
    let dim = num / rs.rho_pairing_product();
    assert!(dim.is_integer(), "Weyl product must divide exactly");
    Ok(vec![(index, dim.to_integer())])
}

/// Index of a rational class in the asymptotic chamber arrangement: the
/// count of positive roots pairing strictly negatively, `Wall` when some
/// pairing vanishes. Ample (dominant) classes get index 0.
pub fn asymptotic_index(rs: &RootSystem, alpha: &Weight) -> IndexResult {
    index_of_pairings(&rs.coroot_pairings_of(alpha))
}

/// The asymptotic cohomology vector of a rational class: concentrated in
/// the degree given by its index, with value
/// `n! |prod <alpha, v^vee>| / prod <rho, v^vee>`; identically zero on
/// walls, where the product vanishes (the continuous extension).
pub fn flag_asym_h(rs: &RootSystem, alpha: &Weight) -> CohomologyVector {
    let n = rs.num_positive_roots();
    let pairings = rs.coroot_pairings_of(alpha);
    let index = match index_of_pairings(&pairings) {
        IndexResult::Wall => return CohomologyVector::zero(n + 1),
        IndexResult::Index(i) => i,
    };
    let mut num = Rat::one();
    for p in &pairings {
        num *= p;
    }
    let magnitude =
        Rat::from_integer(crate::cohom::factorial(n)) * num.abs() / rs.rho_pairing_product();
    CohomologyVector::concentrated(n + 1, index, magnitude)
}

/// Tests every sign vector over the positive roots for strict feasibility
/// and returns the nonempty chambers in lexicographic order (`+` before
/// `-`).
pub fn enumerate_chambers(rs: &RootSystem) -> Vec<ChamberDescriptor> {
    let n = rs.num_positive_roots();
    assert!(
        n < 26,
        "chamber enumeration over 2^n sign vectors is intractable for n = {n}"
    );
    let normals = &rs.coroot_pairings;
    let mut chambers = Vec::new();
    for mask in 0u64..(1 << n) {
        let signs: Vec<Sign> = (0..n)
            .map(|i| {
                if (mask >> (n - 1 - i)) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        let feasible = open_sign_feasible(normals, &signs).expect("uniform normal dimensions");
        if feasible {
            let index = signs.iter().filter(|s| **s == Sign::Minus).count();
            chambers.push(ChamberDescriptor {
                signs,
                index,
                nonempty: true,
            });
        }
    }
    chambers
}

/// A flag variety G/B as a [`VarietyModel`], with divisor-class coordinates
/// in the fundamental-weight basis.
#[derive(Clone, Debug)]
pub struct FlagModel {
    rs: RootSystem,
}

impl FlagModel {
    pub fn new(rs: RootSystem) -> Self {
        FlagModel { rs }
    }

    pub fn from_token(token: &str) -> Result<Self, FlagError> {
        Ok(FlagModel {
            rs: RootSystem::from_token(token)?,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Rational points spanning the hyperplane of one positive root, all
    /// off the remaining hyperplanes.
    fn wall_points(&self, root: usize, count: usize) -> Vec<DivisorClass> {
        let rs = &self.rs;
        let r = rs.rank;
        let kappa = &rs.coroot_pairings[root];
        let pivot = kappa
            .iter()
            .position(|c| !c.is_zero())
            .expect("coroot functional is nonzero");
        // Kernel basis: e_i - (kappa_i / kappa_pivot) e_pivot for i != pivot.
        let mut kernel: Vec<Vec<Rat>> = Vec::new();
        for i in 0..r {
            if i == pivot {
                continue;
            }
            let mut w = vec![Rat::zero(); r];
            w[i] = Rat::one();
            w[pivot] = -&kappa[i] / &kappa[pivot];
            kernel.push(w);
        }
        if kernel.is_empty() {
            // Rank one: the wall is the origin.
            return vec![DivisorClass::zero(r)];
        }

        let off_other_walls = |x: &[Rat]| {
            (0..rs.positive_roots.len()).all(|v| {
                if v == root {
                    return true;
                }
                let p: Rat = rs.coroot_pairings[v]
                    .iter()
                    .zip(x)
                    .map(|(k, c)| k * c)
                    .sum();
                !p.is_zero()
            })
        };

        let mut points = Vec::new();
        let mut bound = 1i64;
        while points.len() < count && bound < 64 {
            points.clear();
            let dims = kernel.len();
            let side = (2 * bound + 1) as usize;
            let total = side.pow(dims as u32);
            for mut idx in 0..total {
                let mut coeffs = Vec::with_capacity(dims);
                for _ in 0..dims {
                    coeffs.push((idx % side) as i64 - bound);
                    idx /= side;
                }
                if coeffs.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut x = vec![Rat::zero(); r];
                for (c, w) in coeffs.iter().zip(&kernel) {
                    for (xi, wi) in x.iter_mut().zip(w) {
                        *xi += Rat::from_integer((*c).into()) * wi;
                    }
                }
                if off_other_walls(&x) {
                    points.push(DivisorClass::new(x));
                    if points.len() == count {
                        break;
                    }
                }
            }
            bound *= 2;
        }
        assert!(
            points.len() >= count.min(1),
            "no interior wall points found for root {root}"
        );
        points
    }
}

impl VarietyModel for FlagModel {
    fn dimension(&self) -> usize {
        self.rs.num_positive_roots()
    }

    fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn evaluate(&self, class: &DivisorClass) -> CohomologyVector {
        flag_asym_h(&self.rs, &Weight::from_class(class))
    }

    fn chamber_id(&self, class: &DivisorClass) -> ChamberId {
        let pairings = self.rs.coroot_pairings_of(&Weight::from_class(class));
        if pairings.iter().any(|p| p.is_zero()) {
            return ChamberId::Wall;
        }
        let signs: String = pairings
            .iter()
            .map(|p| if p.is_positive() { '+' } else { '-' })
            .collect();
        ChamberId::Interior(signs)
    }

    fn wall_specs(&self) -> Vec<WallSpec> {
        let r = self.rs.rank();
        let count = r + 1;
        (0..self.rs.num_positive_roots())
            .map(|root| WallSpec {
                label: format!("root{}[{:?}]", root, self.rs.positive_roots[root]),
                points: self.wall_points(root, count),
                // rho pairs positively with every coroot, so the all-ones
                // direction crosses each wall transversally.
                direction: DivisorClass::new(vec![Rat::one(); r]),
            })
            .collect()
    }
}
