//! Asymptotic cohomology on abelian varieties.
//!
//! A g-dimensional abelian variety is modeled by Hermitian forms: one g x g
//! Hermitian matrix per basis class of the divisor-class space, together
//! with 2g lattice generators in the realification of C^g. For a rational
//! class, the degree carrying cohomology is the number of negative
//! eigenvalues of its Hermitian form (read off the exact inertia of the
//! realified symmetric matrix), and the value there is `g!` times the
//! absolute Pfaffian of the imaginary part pulled back to the lattice.
//! Degenerate classes evaluate to the zero vector, which is the continuous
//! extension since the Pfaffian vanishes on the degenerate locus.
//!
//! The realification convention is fixed so lattice matrices are
//! reproducible bit for bit: `C^g -> R^{2g}` interleaves coordinates as
//! `re_1, im_1, ..., re_g, im_g`.

use num_traits::{One, Signed, Zero};

use crate::cohom::{ChamberId, CohomologyVector, DivisorClass, NormedBasis, VarietyModel, WallSpec};
use crate::exactlin::{determinant, pfaffian, signature, solve, AntisymMatrix, SymMatrix};
use crate::{Int, QAntisymMatrix, QSymMatrix, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianError {
    DimensionMismatch { expected: usize, got: usize },
    InvalidModel(String),
}

impl std::fmt::Display for AbelianError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AbelianError::DimensionMismatch { expected, got } => {
                write!(f, "class has {got} coordinates, model rank is {expected}")
            }
            AbelianError::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
        }
    }
}

impl std::error::Error for AbelianError {}

/// A Hermitian g x g matrix split into rational real and imaginary parts.
#[derive(Clone, Debug)]
pub struct HermitianForm {
    re: Vec<Vec<Rat>>,
    im: Vec<Vec<Rat>>,
}

impl HermitianForm {
    /// Validates Hermitian symmetry: `re` symmetric, `im` antisymmetric.
    pub fn new(re: Vec<Vec<Rat>>, im: Vec<Vec<Rat>>) -> Result<Self, AbelianError> {
        let g = re.len();
        let square = |m: &Vec<Vec<Rat>>| m.iter().all(|row| row.len() == g);
        if im.len() != g || !square(&re) || !square(&im) {
            return Err(AbelianError::InvalidModel(
                "Hermitian form parts must be square of equal size".into(),
            ));
        }
        for i in 0..g {
            if !im[i][i].is_zero() {
                return Err(AbelianError::InvalidModel(
                    "imaginary part must vanish on the diagonal".into(),
                ));
            }
            for j in 0..g {
                if re[i][j] != re[j][i] || im[i][j] != -im[j][i].clone() {
                    return Err(AbelianError::InvalidModel(
                        "form is not conjugate-symmetric".into(),
                    ));
                }
            }
        }
        Ok(HermitianForm { re, im })
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let g = entries.len();
        let mut re = vec![vec![Rat::zero(); g]; g];
        for (i, e) in entries.iter().enumerate() {
            re[i][i] = e.clone();
        }
        HermitianForm {
            re,
            im: vec![vec![Rat::zero(); g]; g],
        }
    }

    pub fn size(&self) -> usize {
        self.re.len()
    }

    pub fn re(&self) -> &[Vec<Rat>] {
        &self.re
    }

    pub fn im(&self) -> &[Vec<Rat>] {
        &self.im
    }

    /// The real symmetric 2g x 2g matrix of `Re H` in interleaved
    /// coordinates.
    fn realified_symmetric(&self) -> QSymMatrix {
        let g = self.size();
        let mut s = vec![vec![Rat::zero(); 2 * g]; 2 * g];
        for i in 0..g {
            for j in 0..g {
                s[2 * i][2 * j] = self.re[i][j].clone();
                s[2 * i + 1][2 * j + 1] = self.re[i][j].clone();
                s[2 * i][2 * j + 1] = -self.im[i][j].clone();
                s[2 * i + 1][2 * j] = self.im[i][j].clone();
            }
        }
        SymMatrix::new(s).expect("realification of a Hermitian form is symmetric")
    }

    /// The real antisymmetric 2g x 2g matrix of `E = Im H` in interleaved
    /// coordinates.
    fn realified_imaginary(&self) -> QAntisymMatrix {
        let g = self.size();
        let mut m = vec![vec![Rat::zero(); 2 * g]; 2 * g];
        for i in 0..g {
            for j in 0..g {
                m[2 * i][2 * j] = self.im[i][j].clone();
                m[2 * i + 1][2 * j + 1] = self.im[i][j].clone();
                m[2 * i][2 * j + 1] = self.re[i][j].clone();
                m[2 * i + 1][2 * j] = -self.re[i][j].clone();
            }
        }
        AntisymMatrix::new(m).expect("imaginary part realifies antisymmetrically")
    }

    fn scaled_sum(forms: &[HermitianForm], coords: &[Rat]) -> HermitianForm {
        let g = forms[0].size();
        let mut re = vec![vec![Rat::zero(); g]; g];
        let mut im = vec![vec![Rat::zero(); g]; g];
        for (form, x) in forms.iter().zip(coords) {
            for i in 0..g {
                for j in 0..g {
                    re[i][j] += x * &form.re[i][j];
                    im[i][j] += x * &form.im[i][j];
                }
            }
        }
        HermitianForm { re, im }
    }
}

/// Index of a nondegenerate class, or degeneracy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexOutcome {
    Index(usize),
    Degenerate,
}

#[derive(Clone, Debug)]
pub struct AbelianModel {
    g: usize,
    basis_forms: Vec<HermitianForm>,
    lattice: Vec<Vec<Rat>>,
    /// Imaginary parts pulled back to the lattice, one per basis class;
    /// validated to be integral.
    lattice_forms: Vec<QAntisymMatrix>,
}

impl AbelianModel {
    pub fn new(
        g: usize,
        basis_forms: Vec<HermitianForm>,
        lattice: Vec<Vec<Rat>>,
    ) -> Result<AbelianModel, AbelianError> {
        if g == 0 {
            return Err(AbelianError::InvalidModel("dimension must be positive".into()));
        }
        if basis_forms.is_empty() {
            return Err(AbelianError::InvalidModel(
                "at least one basis form is required".into(),
            ));
        }
        for form in &basis_forms {
            if form.size() != g {
                return Err(AbelianError::InvalidModel(format!(
                    "basis form size {} does not match dimension {g}",
                    form.size()
                )));
            }
        }
        if lattice.len() != 2 * g || lattice.iter().any(|v| v.len() != 2 * g) {
            return Err(AbelianError::InvalidModel(format!(
                "lattice must consist of 2g = {} vectors of length {}",
                2 * g,
                2 * g
            )));
        }
        if determinant(&lattice).is_zero() {
            return Err(AbelianError::InvalidModel(
                "lattice generators must be linearly independent".into(),
            ));
        }
        let mut lattice_forms = Vec::with_capacity(basis_forms.len());
        for (k, form) in basis_forms.iter().enumerate() {
            let m = form.realified_imaginary();
            let pulled = pull_back(&m, &lattice);
            for row in pulled.rows() {
                for entry in row {
                    if !entry.is_integer() {
                        return Err(AbelianError::InvalidModel(format!(
                            "imaginary part of basis form {k} is not integral on the lattice"
                        )));
                    }
                }
            }
            lattice_forms.push(pulled);
        }
        Ok(AbelianModel {
            g,
            basis_forms,
            lattice,
            lattice_forms,
        })
    }

    pub fn dim_abelian(&self) -> usize {
        self.g
    }

    pub fn rank_ns(&self) -> usize {
        self.basis_forms.len()
    }

    pub fn basis_forms(&self) -> &[HermitianForm] {
        &self.basis_forms
    }

    pub fn lattice(&self) -> &[Vec<Rat>] {
        &self.lattice
    }

    fn check_rank(&self, coords: &[Rat]) -> Result<(), AbelianError> {
        if coords.len() != self.rank_ns() {
            return Err(AbelianError::DimensionMismatch {
                expected: self.rank_ns(),
                got: coords.len(),
            });
        }
        Ok(())
    }

    /// The Hermitian form of a class.
    pub fn form_of(&self, coords: &[Rat]) -> Result<HermitianForm, AbelianError> {
        self.check_rank(coords)?;
        Ok(HermitianForm::scaled_sum(&self.basis_forms, coords))
    }

    /// `E` of a class pulled back to the lattice.
    pub fn lattice_form_of(&self, coords: &[Rat]) -> Result<QAntisymMatrix, AbelianError> {
        self.check_rank(coords)?;
        let mut acc = AntisymMatrix::zero(2 * self.g);
        for (form, x) in self.lattice_forms.iter().zip(coords) {
            acc = acc.add_scaled(form, x);
        }
        Ok(acc)
    }

    /// `Pf(E_xi)` on the lattice.
    pub fn lattice_pfaffian(&self, coords: &[Rat]) -> Result<Rat, AbelianError> {
        let e = self.lattice_form_of(coords)?;
        Ok(pfaffian(&e).expect("lattice form has even dimension"))
    }

    /// Number of negative eigenvalues of the Hermitian form, computed as
    /// half the negative inertia of the realified symmetric matrix;
    /// `Degenerate` when the form is singular.
    pub fn hermitian_index(&self, coords: &[Rat]) -> Result<IndexOutcome, AbelianError> {
        let form = self.form_of(coords)?;
        let sig = signature(&form.realified_symmetric());
        debug_assert!(
            sig.positives % 2 == 0 && sig.negatives % 2 == 0 && sig.zeros % 2 == 0,
            "realified eigenvalues come in pairs"
        );
        if sig.zeros > 0 {
            Ok(IndexOutcome::Degenerate)
        } else {
            Ok(IndexOutcome::Index(sig.negatives / 2))
        }
    }

    /// The exact vector `(h^0, ..., h^g)`: concentrated at the index with
    /// value `g! |Pf(E_xi)|`, identically zero on the degenerate locus.
    pub fn asym_h(&self, coords: &[Rat]) -> Result<CohomologyVector, AbelianError> {
        let g = self.g;
        match self.hermitian_index(coords)? {
            IndexOutcome::Degenerate => Ok(CohomologyVector::zero(g + 1)),
            IndexOutcome::Index(index) => {
                let pf = self.lattice_pfaffian(coords)?;
                let value = Rat::from_integer(crate::cohom::factorial(g)) * pf.abs();
                Ok(CohomologyVector::concentrated(g + 1, index, value))
            }
        }
    }

    /// Pf(E) along the segment `u + t w` is a degree-g polynomial in t;
    /// its exact coefficients by interpolation at t = 0..g.
    fn pfaffian_polynomial(&self, u: &[Rat], w: &[Rat]) -> Vec<Rat> {
        let g = self.g;
        let samples: Vec<Rat> = (0..=g as i64)
            .map(|t| {
                let t = Rat::from_integer(t.into());
                let coords: Vec<Rat> =
                    u.iter().zip(w).map(|(a, b)| a + &t * b).collect();
                self.lattice_pfaffian(&coords).expect("rank-checked")
            })
            .collect();
        // Solve the Vandermonde system for the coefficients.
        let rows: Vec<Vec<Rat>> = (0..=g)
            .map(|s| {
                let t = Rat::from_integer((s as i64).into());
                let mut row = Vec::with_capacity(g + 1);
                let mut acc = Rat::one();
                for _ in 0..=g {
                    row.push(acc.clone());
                    acc *= &t;
                }
                row
            })
            .collect();
        solve(&rows, &samples).expect("Vandermonde nodes are distinct")
    }
}

fn pull_back(m: &QAntisymMatrix, lattice: &[Vec<Rat>]) -> QAntisymMatrix {
    let n = lattice.len();
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Rat::zero();
            for a in 0..n {
                for b in 0..n {
                    acc += &lattice[i][a] * m.entry(a, b) * &lattice[j][b];
                }
            }
            entries[i][j] = acc;
        }
    }
    AntisymMatrix::new(entries).expect("pullback of an antisymmetric form")
}

/// Rational roots of a polynomial with rational coefficients, by the
/// rational root theorem after clearing denominators. Divisor enumeration is
/// capped, so this is a best-effort search suited to small model data.
fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    use num_integer::Integer;
    let mut lcm = Int::from(1);
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<Int> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    let mut roots = Vec::new();
    if low == ints.len() {
        return roots; // identically zero: handled by the caller
    }
    if low > 0 {
        roots.push(Rat::zero());
    }
    let tail = &ints[low..];
    let lead = tail.last().unwrap().clone();
    let constant = tail[0].clone();
    let cap = Int::from(1_000_000);
    if constant.abs() > cap || lead.abs() > cap {
        return roots;
    }
    let divisors = |n: &Int| -> Vec<i64> {
        let n: i64 = n.abs().try_into().unwrap();
        (1..=n).filter(|d| n % d == 0).collect()
    };
    let eval = |t: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    for p in divisors(&constant) {
        for q in divisors(&lead) {
            for sign in [1i64, -1] {
                let t = Rat::new((sign * p).into(), q.into());
                if eval(&t).is_zero() && !roots.contains(&t) {
                    roots.push(t.clone());
                }
            }
        }
    }
    roots
}

impl VarietyModel for AbelianModel {
    fn dimension(&self) -> usize {
        self.g
    }

    fn rank(&self) -> usize {
        self.rank_ns()
    }

    fn evaluate(&self, class: &DivisorClass) -> CohomologyVector {
        self.asym_h(class.coords()).expect("rank-checked class")
    }

    fn chamber_id(&self, class: &DivisorClass) -> ChamberId {
        match self.hermitian_index(class.coords()).expect("rank-checked") {
            IndexOutcome::Degenerate => ChamberId::Wall,
            IndexOutcome::Index(i) => ChamberId::Interior(format!("index:{i}")),
        }
    }

    /// Wall witnesses found by scanning segments between small integer
    /// classes for rational zeros of the Pfaffian.
    fn wall_specs(&self) -> Vec<WallSpec> {
        let r = self.rank_ns();
        let ones = DivisorClass::new(vec![Rat::one(); r]);
        let mut seeds: Vec<DivisorClass> = Vec::new();
        for i in 0..r {
            let mut v = vec![Rat::zero(); r];
            v[i] = Rat::one();
            seeds.push(DivisorClass::new(v));
        }
        seeds.push(ones.clone());
        for i in 0..r {
            let mut v = vec![Rat::one(); r];
            v[i] = -Rat::one();
            seeds.push(DivisorClass::new(v));
        }

        let mut points: Vec<DivisorClass> = Vec::new();
        for u in &seeds {
            for w in &seeds {
                if points.len() >= 4 * (r + 1) {
                    break;
                }
                if u == w {
                    continue;
                }
                let poly = self.pfaffian_polynomial(u.coords(), w.coords());
                if poly.iter().all(|c| c.is_zero()) {
                    if !u.is_zero() && !points.contains(u) {
                        points.push(u.clone());
                    }
                    continue;
                }
                for t in rational_roots(&poly) {
                    let p = u.add(&w.scale(&t));
                    if !p.is_zero() && !points.contains(&p) {
                        points.push(p);
                    }
                }
            }
        }
        if points.is_empty() {
            return Vec::new();
        }
        vec![WallSpec {
            label: "degenerate-locus".into(),
            points,
            direction: ones,
        }]
    }
}

// ---------------------------------------------------------------------------
// The self-product of an elliptic curve, in closed form
// ---------------------------------------------------------------------------

/// `(xi^2) = 2(xy + xz + yz)` in the (e1, e2, delta) basis.
pub fn exe_self_intersection(x: &Rat, y: &Rat, z: &Rat) -> Rat {
    Rat::from_integer(2.into()) * (x * y + x * z + y * z)
}

/// Index of a class on the self-product of an elliptic curve: 0 on the
/// ample cone, 2 on its negative, 1 where the square is negative,
/// degenerate on the null cone.
pub fn exe_index(x: &Rat, y: &Rat, z: &Rat) -> IndexOutcome {
    let square = exe_self_intersection(x, y, z);
    if square.is_zero() {
        return IndexOutcome::Degenerate;
    }
    if square.is_negative() {
        return IndexOutcome::Index(1);
    }
    let trace = x + y + z;
    debug_assert!(!trace.is_zero(), "positive square forces a definite side");
    if trace.is_positive() {
        IndexOutcome::Index(0)
    } else {
        IndexOutcome::Index(2)
    }
}

/// Closed-form evaluation on the self-product of an elliptic curve:
/// `|(xi^2)|` concentrated at the index, zero on the degenerate locus.
pub fn exe_asym_h(x: &Rat, y: &Rat, z: &Rat) -> CohomologyVector {
    match exe_index(x, y, z) {
        IndexOutcome::Degenerate => CohomologyVector::zero(3),
        IndexOutcome::Index(i) => {
            CohomologyVector::concentrated(3, i, exe_self_intersection(x, y, z).abs())
        }
    }
}

/// The E x E preset as a [`VarietyModel`] over the basis (e1, e2, delta).
#[derive(Clone, Copy, Debug, Default)]
pub struct ExePreset;

impl ExePreset {
    fn split(class: &DivisorClass) -> (&Rat, &Rat, &Rat) {
        let c = class.coords();
        assert_eq!(c.len(), 3, "the preset is rank 3");
        (&c[0], &c[1], &c[2])
    }
}

impl VarietyModel for ExePreset {
    fn dimension(&self) -> usize {
        2
    }

    fn rank(&self) -> usize {
        3
    }

    fn evaluate(&self, class: &DivisorClass) -> CohomologyVector {
        let (x, y, z) = Self::split(class);
        exe_asym_h(x, y, z)
    }

    fn chamber_id(&self, class: &DivisorClass) -> ChamberId {
        let (x, y, z) = Self::split(class);
        match exe_index(x, y, z) {
            IndexOutcome::Degenerate => ChamberId::Wall,
            IndexOutcome::Index(i) => ChamberId::Interior(format!("index:{i}")),
        }
    }

    fn wall_specs(&self) -> Vec<WallSpec> {
        // Rational points on xy + xz + yz = 0 via z = -xy/(x + y).
        let pt = |x: i64, y: i64, zn: i64, zd: i64| {
            DivisorClass::new(vec![
                Rat::from_integer(x.into()),
                Rat::from_integer(y.into()),
                Rat::new(zn.into(), zd.into()),
            ])
        };
        let points = vec![
            pt(1, 1, -1, 2),
            pt(2, 1, -2, 3),
            pt(1, 2, -2, 3),
            pt(3, 1, -3, 4),
        ];
        for p in &points {
            let (x, y, z) = Self::split(p);
            debug_assert!(exe_self_intersection(x, y, z).is_zero());
        }
        let ample = DivisorClass::from_integers(&[1, 1, 1]);
        vec![
            WallSpec {
                label: "null-cone".into(),
                points: points.clone(),
                direction: ample.clone(),
            },
            WallSpec {
                label: "mirror:null-cone".into(),
                points: points.iter().map(|p| p.neg()).collect(),
                direction: ample.neg(),
            },
        ]
    }

    fn basis(&self) -> NormedBasis {
        NormedBasis::new(vec!["e1".into(), "e2".into(), "d".into()])
    }
}

/// The full E x E model over the square lattice: forms for the two fiber
/// classes and the diagonal, lattice Z^4 in interleaved coordinates.
pub fn exe_model() -> AbelianModel {
    let q = |n: i64| Rat::from_integer(n.into());
    let h1 = HermitianForm::diagonal(&[q(1), q(0)]);
    let h2 = HermitianForm::diagonal(&[q(0), q(1)]);
    let hd = HermitianForm::new(
        vec![vec![q(1), q(-1)], vec![q(-1), q(1)]],
        vec![vec![q(0), q(0)], vec![q(0), q(0)]],
    )
    .expect("diagonal-class form is Hermitian");
    let mut lattice = vec![vec![Rat::zero(); 4]; 4];
    for (i, row) in lattice.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    AbelianModel::new(2, vec![h1, h2, hd], lattice).expect("valid model")
}

/// An elliptic curve with a degree-`d > 0` polarization class: g = 1,
/// `H = [d]`, square lattice.
pub fn elliptic_model(d: i64) -> AbelianModel {
    let q = |n: i64| Rat::from_integer(n.into());
    let form = HermitianForm::diagonal(&[q(d)]);
    let lattice = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
    AbelianModel::new(1, vec![form], lattice).expect("valid model")
}
