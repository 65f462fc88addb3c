//! Dense exact matrices: inertia, solves, determinants, Pfaffians.

use super::LinAlgError;
use crate::scalar::Scalar;

/// Dense symmetric matrix over an ordered field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix<S> {
    dim: usize,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> SymMatrix<S> {
    /// Builds a symmetric matrix, rejecting non-symmetric input.
    pub fn new(entries: Vec<Vec<S>>) -> Result<Self, LinAlgError> {
        let dim = entries.len();
        for row in &entries {
            if row.len() != dim {
                return Err(LinAlgError::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i][j] != entries[j][i] {
                    return Err(LinAlgError::NotSymmetric);
                }
            }
        }
        Ok(SymMatrix { dim, entries })
    }

    pub fn zero(dim: usize) -> Self {
        SymMatrix {
            dim,
            entries: vec![vec![S::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.entries
    }

    /// The submatrix picked out by `indices` (as a symmetric matrix again).
    pub fn principal_submatrix(&self, indices: &[usize]) -> SymMatrix<S> {
        let entries = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        SymMatrix {
            dim: indices.len(),
            entries,
        }
    }

    /// The bilinear form x^T M y.
    pub fn pair(&self, x: &[S], y: &[S]) -> S {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut acc = S::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = acc + x[i].clone() * self.entries[i][j].clone() * y[j].clone();
            }
        }
        acc
    }

    /// Matrix-vector product M x.
    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.dim);
        self.entries
            .iter()
            .map(|row| {
                let mut acc = S::zero();
                for (a, b) in row.iter().zip(x) {
                    acc = acc + a.clone() * b.clone();
                }
                acc
            })
            .collect()
    }
}

/// Dense antisymmetric matrix over an ordered field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymMatrix<S> {
    dim: usize,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> AntisymMatrix<S> {
    /// Builds an antisymmetric matrix, rejecting input with a nonzero
    /// diagonal or `entries[i][j] != -entries[j][i]`.
    pub fn new(entries: Vec<Vec<S>>) -> Result<Self, LinAlgError> {
        let dim = entries.len();
        for row in &entries {
            if row.len() != dim {
                return Err(LinAlgError::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        for i in 0..dim {
            if !entries[i][i].is_zero() {
                return Err(LinAlgError::NotAntisymmetric);
            }
            for j in (i + 1)..dim {
                if entries[i][j] != -entries[j][i].clone() {
                    return Err(LinAlgError::NotAntisymmetric);
                }
            }
        }
        Ok(AntisymMatrix { dim, entries })
    }

    pub fn zero(dim: usize) -> Self {
        AntisymMatrix {
            dim,
            entries: vec![vec![S::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.entries
    }

    /// Entrywise linear combination `self + c * other`.
    pub fn add_scaled(&self, other: &AntisymMatrix<S>, c: &S) -> AntisymMatrix<S> {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| {
                r.iter()
                    .zip(s)
                    .map(|(a, b)| a.clone() + c.clone() * b.clone())
                    .collect()
            })
            .collect();
        AntisymMatrix {
            dim: self.dim,
            entries,
        }
    }
}

/// Inertia of a symmetric matrix: counts of positive, negative and zero
/// eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positives + self.negatives + self.zeros
    }
}

/// Exact inertia by symmetric Gaussian elimination.
///
/// Pivots on nonzero diagonal entries; when every remaining diagonal entry
/// vanishes but some off-diagonal entry survives, a congruence step
/// `e_i <- e_i + e_j` creates a nonzero diagonal entry (the classical
/// rank-revealing trick). Congruence transforms leave the inertia unchanged,
/// so the pivot signs count eigenvalue signs.
pub fn signature<S: Scalar>(m: &SymMatrix<S>) -> Signature {
    let n = m.dim();
    let mut a: Vec<Vec<S>> = m.rows().to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut positives = 0;
    let mut negatives = 0;
    let mut zeros = 0;

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let d = a[p][p].clone();
            if d.is_positive() {
                positives += 1;
            } else {
                negatives += 1;
            }
            for &j in &active {
                for &k in &active {
                    let upd = a[p][j].clone() * a[p][k].clone() / d.clone();
                    a[j][k] = a[j][k].clone() - upd;
                }
            }
        } else {
            // All active diagonal entries vanish.
            let mut pair = None;
            'outer: for (s, &i) in active.iter().enumerate() {
                for &j in &active[s + 1..] {
                    if !a[i][j].is_zero() {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            match pair {
                None => {
                    zeros += active.len();
                    break;
                }
                Some((i, j)) => {
                    // e_i <- e_i + e_j, applied as a row then a column update.
                    for &k in &active {
                        let add = a[j][k].clone();
                        a[i][k] = a[i][k].clone() + add;
                    }
                    for &k in &active {
                        let add = a[k][j].clone();
                        a[k][i] = a[k][i].clone() + add;
                    }
                }
            }
        }
    }

    Signature {
        positives,
        negatives,
        zeros,
    }
}

/// True iff the matrix is negative definite, i.e. its inertia is `(0, n, 0)`.
pub fn is_negative_definite<S: Scalar>(m: &SymMatrix<S>) -> bool {
    let sig = signature(m);
    sig.positives == 0 && sig.zeros == 0
}

/// Solves `M x = rhs` for symmetric nonsingular `M`, exactly.
pub fn solve_symmetric<S: Scalar>(m: &SymMatrix<S>, rhs: &[S]) -> Result<Vec<S>, LinAlgError> {
    if rhs.len() != m.dim() {
        return Err(LinAlgError::DimensionMismatch {
            expected: m.dim(),
            got: rhs.len(),
        });
    }
    solve(m.rows(), rhs)
}

/// Solves a square system `A x = rhs` by Gaussian elimination with exact
/// pivoting on any nonzero entry.
pub fn solve<S: Scalar>(a: &[Vec<S>], rhs: &[S]) -> Result<Vec<S>, LinAlgError> {
    let n = a.len();
    if rhs.len() != n {
        return Err(LinAlgError::DimensionMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    let mut work: Vec<Vec<S>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n, "solve: ragged matrix");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !work[r][col].is_zero());
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => return Err(LinAlgError::SingularMatrix),
        };
        work.swap(col, pivot_row);
        let pivot = work[col][col].clone();
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone() / pivot.clone();
            for c in col..=n {
                let upd = factor.clone() * work[col][c].clone();
                work[r][c] = work[r][c].clone() - upd;
            }
        }
    }

    Ok((0..n)
        .map(|i| work[i][n].clone() / work[i][i].clone())
        .collect())
}

/// Exact determinant of a square matrix by fraction-full Gaussian elimination.
pub fn determinant<S: Scalar>(a: &[Vec<S>]) -> S {
    let n = a.len();
    let mut work: Vec<Vec<S>> = a.to_vec();
    for row in &work {
        assert_eq!(row.len(), n, "determinant: ragged matrix");
    }
    let mut det = S::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !work[r][col].is_zero()) {
            Some(r) => r,
            None => return S::zero(),
        };
        if pivot_row != col {
            work.swap(col, pivot_row);
            det = -det;
        }
        let pivot = work[col][col].clone();
        det = det * pivot.clone();
        for r in (col + 1)..n {
            if work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone() / pivot.clone();
            for c in col..n {
                let upd = factor.clone() * work[col][c].clone();
                work[r][c] = work[r][c].clone() - upd;
            }
        }
    }
    det
}

/// Basis of the right kernel `{x : A x = 0}` of a (possibly rectangular)
/// matrix, by reduced row echelon form.
pub fn kernel_basis<S: Scalar>(a: &[Vec<S>]) -> Vec<Vec<S>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut work: Vec<Vec<S>> = a.to_vec();
    for row in &work {
        assert_eq!(row.len(), cols, "kernel_basis: ragged matrix");
    }
    let rows = work.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let p = (rank..rows).find(|&r| !work[r][col].is_zero());
        let p = match p {
            Some(p) => p,
            None => continue,
        };
        work.swap(rank, p);
        let pivot = work[rank][col].clone();
        for c in col..cols {
            work[rank][c] = work[rank][c].clone() / pivot.clone();
        }
        for r in 0..rows {
            if r == rank || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for c in col..cols {
                let upd = factor.clone() * work[rank][c].clone();
                work[r][c] = work[r][c].clone() - upd;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Pfaffian of an even-dimensional antisymmetric matrix.
///
/// Skew elimination under congruence: adding a multiple of a row (and the
/// same column) leaves the Pfaffian unchanged, swapping a row/column pair
/// flips its sign, so Pf comes out as the signed product of the 2x2 block
/// pivots. Satisfies `Pf(E)^2 = det(E)`.
pub fn pfaffian<S: Scalar>(e: &AntisymMatrix<S>) -> Result<S, LinAlgError> {
    let n = e.dim();
    if n % 2 != 0 {
        return Err(LinAlgError::OddDimension { dim: n });
    }
    let mut a: Vec<Vec<S>> = e.rows().to_vec();
    let mut pf = S::one();

    let mut k = 0;
    while k < n {
        let pivot_row = ((k + 1)..n).find(|&r| !a[r][k].is_zero());
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => return Ok(S::zero()),
        };
        if pivot_row != k + 1 {
            a.swap(pivot_row, k + 1);
            for row in a.iter_mut() {
                row.swap(pivot_row, k + 1);
            }
            pf = -pf;
        }
        let pivot = a[k][k + 1].clone();
        pf = pf * pivot.clone();
        for i in (k + 2)..n {
            // Zero out a[i][k] using row k+1 (a[k+1][k] = -pivot), then
            // a[i][k+1] using row k; mirrored column updates keep antisymmetry.
            if !a[i][k].is_zero() {
                let c = a[i][k].clone() / pivot.clone();
                add_scaled_row_col(&mut a, i, k + 1, &c);
            }
            if !a[i][k + 1].is_zero() {
                let c = -(a[i][k + 1].clone() / pivot.clone());
                add_scaled_row_col(&mut a, i, k, &c);
            }
        }
        k += 2;
    }
    Ok(pf)
}

/// row_i += c * row_j followed by col_i += c * col_j.
fn add_scaled_row_col<S: Scalar>(a: &mut [Vec<S>], i: usize, j: usize, c: &S) {
    let n = a.len();
    for col in 0..n {
        let add = c.clone() * a[j][col].clone();
        a[i][col] = a[i][col].clone() + add;
    }
    for row in 0..n {
        let add = c.clone() * a[row][j].clone();
        a[row][i] = a[row][i].clone() + add;
    }
}
