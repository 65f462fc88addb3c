//! Asymptotic cohomology on smooth projective surfaces via Zariski
//! decompositions.
//!
//! A surface is modeled by its Neron-Severi lattice: a rational intersection
//! form of signature (1, r-1), a list of irreducible classes of negative
//! self-intersection, an effective-cone description and an ample class. With
//! that data, every pseudo-effective class decomposes uniquely as
//! `D = P + N` with `P` nef, the support of `N` negative definite and
//! `P . N_i = 0`; the evaluation is the exact case split
//!
//! * `D` pseudo-effective: `(P^2, -(N^2), 0)`;
//! * `-D` pseudo-effective: the mirror `(0, -(N^2), P^2)` of `-D`;
//! * neither: `(0, -(D^2), 0)`.
//!
//! The support of `N` is found by the iterative scheme that keeps enlarging
//! the support by every curve the current candidate still meets negatively;
//! each decomposition is certified after the fact against the defining
//! conditions rather than trusted.
//!
//! Outputs are conditional on the supplied curve and cone data actually
//! generating the effective cone: the model validates internal consistency
//! (signature, ample pairings, negativity) but cannot check geometric
//! completeness of a curve list.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::cohom::{ChamberId, CohomologyVector, DivisorClass, NormedBasis, VarietyModel, WallSpec};
use crate::exactlin::{
    is_negative_definite, kernel_basis, signature, solve_symmetric, ConstraintSystem, LpOutcome,
    Rel, SymMatrix,
};
use crate::{QSymMatrix, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceError {
    DimensionMismatch { expected: usize, got: usize },
    NotPseudoEffective,
    /// The supplied curve/cone data is internally inconsistent (for example
    /// a support Gram that fails to be negative definite, or a certificate
    /// check that fails after decomposition).
    IllConditionedModel(String),
    NotBig,
    UnsupportedConeMode,
    InvalidModel(String),
}

impl std::fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceError::DimensionMismatch { expected, got } => {
                write!(f, "class has {got} coordinates, model rank is {expected}")
            }
            SurfaceError::NotPseudoEffective => write!(f, "class is not pseudo-effective"),
            SurfaceError::IllConditionedModel(msg) => write!(f, "inconsistent model: {msg}"),
            SurfaceError::NotBig => write!(f, "class is not big"),
            SurfaceError::UnsupportedConeMode => {
                write!(f, "operation requires a polyhedral effective cone")
            }
            SurfaceError::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
        }
    }
}

impl std::error::Error for SurfaceError {}

/// An irreducible curve class with negative self-intersection.
#[derive(Clone, Debug)]
pub struct NegativeCurve {
    pub name: String,
    pub class: DivisorClass,
}

/// Description of the pseudo-effective cone.
#[derive(Clone, Debug)]
pub enum ConeMode {
    /// Finitely generated: `mori_generators` together with the negative
    /// curves must generate the closed effective cone.
    Polyhedral { mori_generators: Vec<DivisorClass> },
    /// The round cone `{D^2 >= 0, D . ample >= 0}`; pseudo-effective equals
    /// nef (abelian surfaces). Chamber enumeration is unavailable here.
    Quadric,
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    rank: usize,
    gram: QSymMatrix,
    curves: Vec<NegativeCurve>,
    cone_mode: ConeMode,
    ample: DivisorClass,
    basis_labels: Vec<String>,
}

/// The pair `(P, N)` with its support and coefficients; `D = P + N`,
/// `P` nef, `P . C = 0` on the support, support Gram negative definite and
/// all kept coefficients positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: DivisorClass,
    pub negative: DivisorClass,
    /// Indices into the model's curve list, ascending.
    pub support: Vec<usize>,
    /// Coefficients aligned with `support`, all strictly positive.
    pub coefficients: Vec<Rat>,
}

/// A realizable Zariski chamber: the curves supporting the negative part,
/// with a big rational witness.
#[derive(Clone, Debug)]
pub struct ZariskiChamber {
    pub support: Vec<usize>,
    pub support_names: Vec<String>,
    pub witness: DivisorClass,
}

impl SurfaceModel {
    pub fn new(
        gram: QSymMatrix,
        curves: Vec<NegativeCurve>,
        cone_mode: ConeMode,
        ample: DivisorClass,
        basis_labels: Option<Vec<String>>,
    ) -> Result<SurfaceModel, SurfaceError> {
        let rank = gram.dim();
        if rank == 0 {
            return Err(SurfaceError::InvalidModel("rank must be positive".into()));
        }
        let sig = signature(&gram);
        if !(sig.positives == 1 && sig.zeros == 0) {
            return Err(SurfaceError::InvalidModel(format!(
                "intersection form must have signature (1, {}, 0), got ({}, {}, {})",
                rank - 1,
                sig.positives,
                sig.negatives,
                sig.zeros
            )));
        }
        let model = SurfaceModel {
            rank,
            gram,
            curves,
            cone_mode,
            ample,
            basis_labels: Vec::new(),
        };
        if model.ample.rank() != rank {
            return Err(SurfaceError::InvalidModel("ample class has wrong rank".into()));
        }
        if !model.intersect(&model.ample, &model.ample).is_positive() {
            return Err(SurfaceError::InvalidModel(
                "ample class must have positive self-intersection".into(),
            ));
        }
        let mut names = BTreeSet::new();
        for curve in &model.curves {
            if curve.class.rank() != rank {
                return Err(SurfaceError::InvalidModel(format!(
                    "curve {} has wrong rank",
                    curve.name
                )));
            }
            if !names.insert(curve.name.clone()) {
                return Err(SurfaceError::InvalidModel(format!(
                    "duplicate curve name {}",
                    curve.name
                )));
            }
            if !model.intersect(&curve.class, &curve.class).is_negative() {
                return Err(SurfaceError::InvalidModel(format!(
                    "curve {} must have negative self-intersection",
                    curve.name
                )));
            }
            if !model.intersect(&model.ample, &curve.class).is_positive() {
                return Err(SurfaceError::InvalidModel(format!(
                    "ample class must meet curve {} positively",
                    curve.name
                )));
            }
        }
        if let ConeMode::Polyhedral { mori_generators } = &model.cone_mode {
            for (i, g) in mori_generators.iter().enumerate() {
                if g.rank() != rank {
                    return Err(SurfaceError::InvalidModel(format!(
                        "curve-cone generator {i} has wrong rank"
                    )));
                }
                if !model.intersect(&model.ample, g).is_positive() {
                    return Err(SurfaceError::InvalidModel(format!(
                        "ample class must meet curve-cone generator {i} positively"
                    )));
                }
            }
        }
        let basis_labels = match basis_labels {
            Some(labels) => {
                if labels.len() != rank {
                    return Err(SurfaceError::InvalidModel("basis label count".into()));
                }
                labels
            }
            None => (0..rank).map(|i| format!("b{i}")).collect(),
        };
        Ok(SurfaceModel {
            basis_labels,
            ..model
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &QSymMatrix {
        &self.gram
    }

    pub fn curves(&self) -> &[NegativeCurve] {
        &self.curves
    }

    pub fn cone_mode(&self) -> &ConeMode {
        &self.cone_mode
    }

    pub fn ample(&self) -> &DivisorClass {
        &self.ample
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    /// The intersection number `a . b`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Rat {
        self.gram.pair(a.coords(), b.coords())
    }

    fn check_rank(&self, d: &DivisorClass) -> Result<(), SurfaceError> {
        if d.rank() != self.rank {
            return Err(SurfaceError::DimensionMismatch {
                expected: self.rank,
                got: d.rank(),
            });
        }
        Ok(())
    }

    /// All generators of the effective cone (polyhedral mode).
    fn effective_generators(&self) -> Vec<Vec<Rat>> {
        match &self.cone_mode {
            ConeMode::Polyhedral { mori_generators } => {
                let mut gens: Vec<Vec<Rat>> = mori_generators
                    .iter()
                    .map(|g| g.coords().to_vec())
                    .collect();
                for curve in &self.curves {
                    let coords = curve.class.coords().to_vec();
                    if !gens.contains(&coords) {
                        gens.push(coords);
                    }
                }
                gens
            }
            ConeMode::Quadric => unreachable!("quadric mode has no generator list"),
        }
    }

    /// Nefness: nonnegative against every curve-cone generator in polyhedral
    /// mode; `D^2 >= 0` and `D . ample >= 0` in quadric mode.
    pub fn is_nef(&self, d: &DivisorClass) -> Result<bool, SurfaceError> {
        self.check_rank(d)?;
        match &self.cone_mode {
            ConeMode::Polyhedral { mori_generators } => Ok(mori_generators
                .iter()
                .all(|g| !self.intersect(d, g).is_negative())),
            ConeMode::Quadric => Ok(!self.intersect(d, d).is_negative()
                && !self.intersect(d, &self.ample).is_negative()),
        }
    }

    /// Pseudo-effectivity: exact cone membership over the declared
    /// generators in polyhedral mode; in quadric mode the effective cone
    /// coincides with the nef cone.
    pub fn is_pseff(&self, d: &DivisorClass) -> Result<bool, SurfaceError> {
        self.check_rank(d)?;
        match &self.cone_mode {
            ConeMode::Polyhedral { .. } => {
                let gens = self.effective_generators();
                crate::exactlin::cone_member(&gens, d.coords())
                    .map_err(|_| SurfaceError::DimensionMismatch {
                        expected: self.rank,
                        got: d.rank(),
                    })
            }
            ConeMode::Quadric => self.is_nef(d),
        }
    }

    /// The Zariski decomposition of a pseudo-effective class.
    ///
    /// Support grows monotonically: every round adds all curves the current
    /// positive part still meets negatively, then re-solves the orthogonality
    /// system on the enlarged support. At most `#curves` rounds.
    pub fn zariski_decompose(
        &self,
        d: &DivisorClass,
    ) -> Result<ZariskiDecomposition, SurfaceError> {
        self.check_rank(d)?;
        if !self.is_pseff(d)? {
            return Err(SurfaceError::NotPseudoEffective);
        }

        let mut support: BTreeSet<usize> = BTreeSet::new();
        let mut negative = DivisorClass::zero(self.rank);
        let mut coefficients: Vec<Rat> = Vec::new();

        for _round in 0..=self.curves.len() {
            let positive = d.sub(&negative);
            let newly: Vec<usize> = (0..self.curves.len())
                .filter(|i| {
                    !support.contains(i)
                        && self
                            .intersect(&positive, &self.curves[*i].class)
                            .is_negative()
                })
                .collect();
            if newly.is_empty() {
                if !self.is_nef(&positive)? {
                    return Err(SurfaceError::IllConditionedModel(
                        "pseudo-effective class with non-nef residue: curve list cannot \
                         generate the declared cone"
                            .into(),
                    ));
                }
                let support: Vec<usize> = support.into_iter().collect();
                return self.certified(d, positive, negative, support, coefficients);
            }
            support.extend(newly);
            let indices: Vec<usize> = support.iter().copied().collect();
            let sub = self.curve_gram(&indices);
            if !is_negative_definite(&sub) {
                return Err(SurfaceError::IllConditionedModel(format!(
                    "support {:?} has a Gram matrix that is not negative definite",
                    self.names(&indices)
                )));
            }
            let rhs: Vec<Rat> = indices
                .iter()
                .map(|&i| self.intersect(d, &self.curves[i].class))
                .collect();
            let solved = solve_symmetric(&sub, &rhs)
                .expect("negative definite Gram matrices are nonsingular");
            negative = DivisorClass::zero(self.rank);
            for (&i, a) in indices.iter().zip(&solved) {
                negative = negative.add(&self.curves[i].class.scale(a));
            }
            coefficients = solved;
        }
        unreachable!("support grows strictly, bounded by the curve count")
    }

    /// Drops zero coefficients, then re-verifies every defining condition of
    /// the decomposition before handing it out.
    fn certified(
        &self,
        d: &DivisorClass,
        positive: DivisorClass,
        negative: DivisorClass,
        support: Vec<usize>,
        coefficients: Vec<Rat>,
    ) -> Result<ZariskiDecomposition, SurfaceError> {
        let err = |msg: String| Err(SurfaceError::IllConditionedModel(msg));
        let mut kept_support = Vec::new();
        let mut kept_coeffs = Vec::new();
        for (&i, a) in support.iter().zip(&coefficients) {
            if a.is_negative() {
                return err(format!(
                    "negative coefficient {a} on curve {}",
                    self.curves[i].name
                ));
            }
            if !a.is_zero() {
                kept_support.push(i);
                kept_coeffs.push(a.clone());
            }
        }
        if !positive.add(&negative).sub(d).is_zero() {
            return err("P + N does not reproduce D".into());
        }
        for &i in &kept_support {
            if !self.intersect(&positive, &self.curves[i].class).is_zero() {
                return err(format!("P meets support curve {}", self.curves[i].name));
            }
        }
        if !self.intersect(&positive, &negative).is_zero() {
            return err("P . N is nonzero".into());
        }
        if !self.is_nef(&positive)? {
            return err("P is not nef".into());
        }
        if !kept_support.is_empty() && !is_negative_definite(&self.curve_gram(&kept_support)) {
            return err("support Gram is not negative definite".into());
        }
        Ok(ZariskiDecomposition {
            positive,
            negative,
            support: kept_support,
            coefficients: kept_coeffs,
        })
    }

    fn curve_gram(&self, indices: &[usize]) -> QSymMatrix {
        let entries: Vec<Vec<Rat>> = indices
            .iter()
            .map(|&i| {
                indices
                    .iter()
                    .map(|&j| self.intersect(&self.curves[i].class, &self.curves[j].class))
                    .collect()
            })
            .collect();
        SymMatrix::new(entries).expect("intersection numbers are symmetric")
    }

    fn names(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.curves[i].name.clone()).collect()
    }

    /// The exact vector `(h^0, h^1, h^2)` by the three-way case split.
    pub fn asym_h(&self, d: &DivisorClass) -> Result<CohomologyVector, SurfaceError> {
        self.check_rank(d)?;
        let (h0, h1, h2);
        if self.is_pseff(d)? {
            let z = self.zariski_decompose(d)?;
            h0 = self.intersect(&z.positive, &z.positive);
            h1 = -self.intersect(&z.negative, &z.negative);
            h2 = Rat::zero();
        } else if self.is_pseff(&d.neg())? {
            let z = self.zariski_decompose(&d.neg())?;
            h0 = Rat::zero();
            h1 = -self.intersect(&z.negative, &z.negative);
            h2 = self.intersect(&z.positive, &z.positive);
        } else {
            h0 = Rat::zero();
            h1 = -self.intersect(d, d);
            h2 = Rat::zero();
        }
        for v in [&h0, &h1, &h2] {
            if v.is_negative() {
                return Err(SurfaceError::IllConditionedModel(format!(
                    "negative cohomology value {v} for class {d}"
                )));
            }
        }
        Ok(CohomologyVector::new(vec![h0, h1, h2]))
    }

    /// `vol(D) = (P_D^2)` for pseudo-effective classes, zero otherwise.
    pub fn volume(&self, d: &DivisorClass) -> Result<Rat, SurfaceError> {
        self.check_rank(d)?;
        if self.is_pseff(d)? {
            let z = self.zariski_decompose(d)?;
            Ok(self.intersect(&z.positive, &z.positive))
        } else {
            Ok(Rat::zero())
        }
    }

    /// The Zariski chamber of a big class: the sorted support names of its
    /// negative part.
    pub fn zariski_chamber(&self, d: &DivisorClass) -> Result<Vec<String>, SurfaceError> {
        self.check_rank(d)?;
        if !self.is_pseff(d)? {
            return Err(SurfaceError::NotBig);
        }
        let z = self.zariski_decompose(d)?;
        if !self.intersect(&z.positive, &z.positive).is_positive() {
            return Err(SurfaceError::NotBig);
        }
        let mut names = self.names(&z.support);
        names.sort();
        Ok(names)
    }

    /// A nef class `P` with `P . C = 0` exactly on `zero_set`, `P . C > 0`
    /// for every other curve, `P . ample = 1`, and `P^2 > 0`; `None` when no
    /// big class satisfies the face conditions.
    fn big_face_point(&self, zero_set: &[usize]) -> Result<Option<DivisorClass>, SurfaceError> {
        let mori = match &self.cone_mode {
            ConeMode::Polyhedral { mori_generators } => mori_generators,
            ConeMode::Quadric => return Err(SurfaceError::UnsupportedConeMode),
        };
        // Constraints act on the coordinates of P through the pairing
        // functionals gram . C.
        let functional = |c: &DivisorClass| -> Vec<Rat> { self.gram.apply(c.coords()) };

        let mut system = ConstraintSystem::new(self.rank);
        system.push(functional(&self.ample), Rel::Eq, Rat::one());
        for &i in zero_set {
            system.push(functional(&self.curves[i].class), Rel::Eq, Rat::zero());
        }
        for (i, curve) in self.curves.iter().enumerate() {
            if !zero_set.contains(&i) {
                system.push(functional(&curve.class), Rel::Gt, Rat::zero());
            }
        }
        for g in mori {
            system.push(functional(g), Rel::Ge, Rat::zero());
        }
        let p0 = match system.solve() {
            Some(p) => DivisorClass::new(p),
            None => return Ok(None),
        };
        if self.intersect(&p0, &p0).is_positive() {
            return Ok(Some(p0));
        }

        // The face touches the null cone at p0. Any second face point not
        // proportional to p0 pairs positively with it (two independent nef
        // classes cannot both be null and orthogonal), so maximizing
        // P . p0 over the closed face decides bigness.
        let mut closed = ConstraintSystem::new(self.rank);
        closed.push(functional(&self.ample), Rel::Eq, Rat::one());
        for &i in zero_set {
            closed.push(functional(&self.curves[i].class), Rel::Eq, Rat::zero());
        }
        for (i, curve) in self.curves.iter().enumerate() {
            if !zero_set.contains(&i) {
                closed.push(functional(&curve.class), Rel::Ge, Rat::zero());
            }
        }
        for g in mori {
            closed.push(functional(g), Rel::Ge, Rat::zero());
        }
        match closed.maximize(&functional(&p0)) {
            LpOutcome::Infeasible => unreachable!("p0 satisfies the closed system"),
            LpOutcome::Unbounded => Err(SurfaceError::IllConditionedModel(
                "nef slice is unbounded: curve-cone generators do not span".into(),
            )),
            LpOutcome::Optimal { value, solution } => {
                if value.is_positive() {
                    let p1 = DivisorClass::new(solution);
                    let half = Rat::new(1.into(), 2.into());
                    Ok(Some(p0.add(&p1).scale(&half)))
                } else {
                    Ok(None)
                }
            }
        }
    }

    /// All realizable Zariski-chamber supports with big rational witnesses,
    /// in ascending subset-bitmask order. Polyhedral mode only.
    pub fn enumerate_zariski_chambers(&self) -> Result<Vec<ZariskiChamber>, SurfaceError> {
        if matches!(self.cone_mode, ConeMode::Quadric) {
            return Err(SurfaceError::UnsupportedConeMode);
        }
        let k = self.curves.len();
        assert!(k < 20, "subset enumeration over {k} curves is intractable");
        let mut chambers = Vec::new();
        for mask in 0u32..(1 << k) {
            let support: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            if !support.is_empty() && !is_negative_definite(&self.curve_gram(&support)) {
                continue;
            }
            let p = match self.big_face_point(&support)? {
                Some(p) => p,
                None => continue,
            };
            let mut witness = p.clone();
            for &i in &support {
                witness = witness.add(&self.curves[i].class);
            }
            let z = self.zariski_decompose(&witness)?;
            if z.support != support {
                return Err(SurfaceError::IllConditionedModel(format!(
                    "witness for support {:?} decomposed with support {:?}",
                    self.names(&support),
                    self.names(&z.support)
                )));
            }
            chambers.push(ZariskiChamber {
                support_names: self.names(&support),
                support,
                witness,
            });
        }
        Ok(chambers)
    }

    /// Facets of the effective cone, as sets of generator indices lying on
    /// the facet hyperplane.
    fn effective_facets(&self) -> Vec<Vec<Vec<Rat>>> {
        let gens = self.effective_generators();
        let r = self.rank;
        if gens.len() < r || r < 2 {
            return Vec::new();
        }
        let mut facets: Vec<(Vec<Rat>, Vec<Vec<Rat>>)> = Vec::new();
        let subsets = subsets_of_size(gens.len(), r - 1);
        'subset: for subset in subsets {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| gens[i].clone()).collect();
            let kernel = kernel_basis(&rows);
            if kernel.len() != 1 {
                continue;
            }
            let mut normal = kernel.into_iter().next().unwrap();
            let mut saw_positive = false;
            let mut saw_negative = false;
            for g in &gens {
                let v: Rat = normal.iter().zip(g).map(|(n, c)| n * c).sum();
                if v.is_positive() {
                    saw_positive = true;
                } else if v.is_negative() {
                    saw_negative = true;
                }
                if saw_positive && saw_negative {
                    continue 'subset;
                }
            }
            if saw_negative {
                for n in normal.iter_mut() {
                    *n = -n.clone();
                }
            }
            let on_facet: Vec<Vec<Rat>> = gens
                .iter()
                .filter(|g| {
                    let v: Rat = normal.iter().zip(g.iter()).map(|(n, c)| n * c).sum();
                    v.is_zero()
                })
                .cloned()
                .collect();
            if facets.iter().any(|(_, f)| *f == on_facet) {
                continue;
            }
            facets.push((normal, on_facet));
        }
        facets.into_iter().map(|(_, f)| f).collect()
    }

    fn polyhedral_wall_specs(&self) -> Vec<WallSpec> {
        let mut specs = Vec::new();
        let chambers = match self.enumerate_zariski_chambers() {
            Ok(c) => c,
            Err(_) => return specs,
        };
        let supports: Vec<Vec<usize>> = chambers.iter().map(|c| c.support.clone()).collect();
        let count = self.rank + 1;

        // Walls between chambers whose supports differ by one curve.
        for small in &supports {
            for c in 0..self.curves.len() {
                if small.contains(&c) {
                    continue;
                }
                let mut large = small.clone();
                large.push(c);
                large.sort_unstable();
                if !supports.contains(&large) {
                    continue;
                }
                let p = match self.big_face_point(&large) {
                    Ok(Some(p)) => p,
                    _ => continue,
                };
                let mut base = p.clone();
                for &i in small {
                    base = base.add(&self.curves[i].class);
                }
                let points: Vec<DivisorClass> = (1..=count as i64)
                    .map(|k| {
                        let k = Rat::from_integer(k.into());
                        if small.is_empty() {
                            base.scale(&k)
                        } else {
                            let mut d = p.clone();
                            for &i in small {
                                d = d.add(&self.curves[i].class.scale(&k));
                            }
                            d
                        }
                    })
                    .collect();
                let label = format!(
                    "zariski:{:?}|{:?}",
                    self.names(small),
                    self.names(&[c])
                );
                let direction = self.curves[c].class.clone();
                specs.push(WallSpec {
                    label: label.clone(),
                    points: points.clone(),
                    direction: direction.clone(),
                });
                // Mirrored wall inside the anti-effective region.
                specs.push(WallSpec {
                    label: format!("mirror:{label}"),
                    points: points.iter().map(|p| p.neg()).collect(),
                    direction: direction.neg(),
                });
            }
        }

        // Facets of the effective cone: crossing leaves the cone along the
        // ample direction.
        for (fi, facet) in self.effective_facets().into_iter().enumerate() {
            let mut points = Vec::new();
            let mut sum = DivisorClass::zero(self.rank);
            for g in &facet {
                sum = sum.add(&DivisorClass::new(g.clone()));
            }
            for k in 0..count as i64 {
                let bump = DivisorClass::new(facet[0].clone())
                    .scale(&Rat::from_integer(k.into()));
                points.push(sum.add(&bump));
            }
            let label = format!("effective-facet:{fi}");
            specs.push(WallSpec {
                label: label.clone(),
                points: points.clone(),
                direction: self.ample.clone(),
            });
            specs.push(WallSpec {
                label: format!("mirror:{label}"),
                points: points.iter().map(|p| p.neg()).collect(),
                direction: self.ample.neg(),
            });
        }
        specs
    }

    fn quadric_wall_specs(&self) -> Vec<WallSpec> {
        // Rational points on the null cone: search a small box for one null
        // vector, then sweep lines through it (the cone is rational once one
        // rational point exists).
        let r = self.rank;
        let mut seed: Option<Vec<Rat>> = None;
        'search: for raw in integer_box(r, 2) {
            if raw.iter().all(|c| c.is_zero()) {
                continue;
            }
            let v = DivisorClass::new(raw.clone());
            if self.intersect(&v, &v).is_zero() {
                seed = Some(raw);
                break 'search;
            }
        }
        let seed = match seed {
            Some(s) => s,
            None => return Vec::new(),
        };
        let seed = DivisorClass::new(seed);

        let mut points: Vec<DivisorClass> = Vec::new();
        let push = |p: DivisorClass, points: &mut Vec<DivisorClass>| {
            let pairing = self.intersect(&p, &self.ample);
            if pairing.is_zero() {
                return;
            }
            let oriented = if pairing.is_positive() { p } else { p.neg() };
            if !points.contains(&oriented) {
                points.push(oriented);
            }
        };
        push(seed.clone(), &mut points);
        let u2 = Rat::zero();
        debug_assert_eq!(self.intersect(&seed, &seed), u2);
        for raw in integer_box(r, 2) {
            if points.len() > 3 * (r + 1) {
                break;
            }
            if raw.iter().all(|c| c.is_zero()) {
                continue;
            }
            let w = DivisorClass::new(raw);
            let ww = self.intersect(&w, &w);
            let uw = self.intersect(&seed, &w);
            if ww.is_zero() || uw.is_zero() {
                continue;
            }
            // (seed + t w)^2 = 2 t (seed.w) + t^2 w^2 vanishes at
            // t = -2 (seed.w) / w^2.
            let t = -Rat::from_integer(2.into()) * &uw / &ww;
            let p = seed.add(&w.scale(&t));
            if !p.is_zero() {
                debug_assert!(self.intersect(&p, &p).is_zero());
                push(p, &mut points);
            }
        }
        if points.len() < r + 1 {
            return Vec::new();
        }
        points.truncate((r + 1).max(4));
        vec![
            WallSpec {
                label: "null-cone".into(),
                points: points.clone(),
                direction: self.ample.clone(),
            },
            WallSpec {
                label: "mirror:null-cone".into(),
                points: points.iter().map(|p| p.neg()).collect(),
                direction: self.ample.neg(),
            },
        ]
    }

    /// Decides whether a class lies on a wall of the decomposition: the big
    /// cone boundary, or a face where the positive part meets an off-support
    /// curve.
    fn wall_status(&self, d: &DivisorClass) -> Result<ChamberId, SurfaceError> {
        if d.is_zero() {
            return Ok(ChamberId::Wall);
        }
        if self.is_pseff(d)? {
            let z = self.zariski_decompose(d)?;
            return Ok(self.side_status(&z, "zariski"));
        }
        let neg = d.neg();
        if self.is_pseff(&neg)? {
            let z = self.zariski_decompose(&neg)?;
            return Ok(self.side_status(&z, "dual"));
        }
        Ok(ChamberId::Interior("indefinite".into()))
    }

    fn side_status(&self, z: &ZariskiDecomposition, prefix: &str) -> ChamberId {
        if !self.intersect(&z.positive, &z.positive).is_positive() {
            return ChamberId::Wall;
        }
        for (i, curve) in self.curves.iter().enumerate() {
            if !z.support.contains(&i) && self.intersect(&z.positive, &curve.class).is_zero() {
                return ChamberId::Wall;
            }
        }
        let mut names = self.names(&z.support);
        names.sort();
        ChamberId::Interior(format!("{prefix}:{{{}}}", names.join(",")))
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Integer vectors in `[-bound, bound]^rank`, lexicographic.
fn integer_box(rank: usize, bound: i64) -> Vec<Vec<Rat>> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(rank as u32);
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut coords = Vec::with_capacity(rank);
        for _ in 0..rank {
            coords.push(Rat::from_integer(((idx % side) as i64 - bound).into()));
            idx /= side;
        }
        coords.reverse();
        out.push(coords);
    }
    out
}

impl VarietyModel for SurfaceModel {
    fn dimension(&self) -> usize {
        2
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn evaluate(&self, class: &DivisorClass) -> CohomologyVector {
        self.asym_h(class).expect("validated model, rank-checked class")
    }

    fn chamber_id(&self, class: &DivisorClass) -> ChamberId {
        self.wall_status(class)
            .expect("validated model, rank-checked class")
    }

    fn wall_specs(&self) -> Vec<WallSpec> {
        match self.cone_mode {
            ConeMode::Polyhedral { .. } => self.polyhedral_wall_specs(),
            ConeMode::Quadric => self.quadric_wall_specs(),
        }
    }

    fn basis(&self) -> NormedBasis {
        NormedBasis::new(self.basis_labels.clone())
    }
}

/// Result of checking the asymptotic Riemann-Roch identity
/// `h^0 - h^1 + h^2 = D . D` over a sample.
#[derive(Clone, Debug)]
pub struct EulerReport {
    pub checked: usize,
    pub pseff: usize,
    pub anti_pseff: usize,
    pub indefinite: usize,
    pub failures: Vec<DivisorClass>,
}

impl EulerReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `h^0 - h^1 + h^2 = D^2` exactly on every sampled class, counting
/// how often each case branch was taken.
pub fn euler_identity_check(
    model: &SurfaceModel,
    classes: &[DivisorClass],
) -> Result<EulerReport, SurfaceError> {
    let mut report = EulerReport {
        checked: 0,
        pseff: 0,
        anti_pseff: 0,
        indefinite: 0,
        failures: Vec::new(),
    };
    for d in classes {
        report.checked += 1;
        if model.is_pseff(d)? {
            report.pseff += 1;
        } else if model.is_pseff(&d.neg())? {
            report.anti_pseff += 1;
        } else {
            report.indefinite += 1;
        }
        let h = model.asym_h(d)?;
        if h.euler_characteristic() != model.intersect(d, d) {
            report.failures.push(d.clone());
        }
    }
    Ok(report)
}

/// The projective plane blown up in one point: basis (H, E), one negative
/// curve E, curve cone generated by E and H - E.
pub fn bl1p2() -> SurfaceModel {
    let q = |n: i64| Rat::from_integer(n.into());
    let gram = SymMatrix::new(vec![vec![q(1), q(0)], vec![q(0), q(-1)]]).unwrap();
    SurfaceModel::new(
        gram,
        vec![NegativeCurve {
            name: "E".into(),
            class: DivisorClass::from_integers(&[0, 1]),
        }],
        ConeMode::Polyhedral {
            mori_generators: vec![
                DivisorClass::from_integers(&[0, 1]),
                DivisorClass::from_integers(&[1, -1]),
            ],
        },
        DivisorClass::from_integers(&[2, -1]),
        Some(vec!["H".into(), "E".into()]),
    )
    .expect("valid model")
}

/// The projective plane blown up in two points: basis (H, E1, E2), negative
/// curves E1, E2 and the line L = H - E1 - E2 through the two points.
pub fn bl2p2() -> SurfaceModel {
    let q = |n: i64| Rat::from_integer(n.into());
    let gram = SymMatrix::new(vec![
        vec![q(1), q(0), q(0)],
        vec![q(0), q(-1), q(0)],
        vec![q(0), q(0), q(-1)],
    ])
    .unwrap();
    let e1 = DivisorClass::from_integers(&[0, 1, 0]);
    let e2 = DivisorClass::from_integers(&[0, 0, 1]);
    let line = DivisorClass::from_integers(&[1, -1, -1]);
    SurfaceModel::new(
        gram,
        vec![
            NegativeCurve {
                name: "E1".into(),
                class: e1.clone(),
            },
            NegativeCurve {
                name: "E2".into(),
                class: e2.clone(),
            },
            NegativeCurve {
                name: "L".into(),
                class: line.clone(),
            },
        ],
        ConeMode::Polyhedral {
            mori_generators: vec![e1, e2, line],
        },
        DivisorClass::from_integers(&[3, -1, -1]),
        Some(vec!["H".into(), "E1".into(), "E2".into()]),
    )
    .expect("valid model")
}

/// The self-product of an elliptic curve as a quadric-cone surface model:
/// basis (e1, e2, delta) with the standard intersection numbers; the
/// effective cone is the round cone, so there are no negative curves.
pub fn exe_quadric() -> SurfaceModel {
    let q = |n: i64| Rat::from_integer(n.into());
    let gram = SymMatrix::new(vec![
        vec![q(0), q(1), q(1)],
        vec![q(1), q(0), q(1)],
        vec![q(1), q(1), q(0)],
    ])
    .unwrap();
    SurfaceModel::new(
        gram,
        Vec::new(),
        ConeMode::Quadric,
        DivisorClass::from_integers(&[1, 1, 1]),
        Some(vec!["e1".into(), "e2".into(), "d".into()]),
    )
    .expect("valid model")
}
