use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LinAlgError, Rational, Subspace};

/// Dense matrix over [`Rational`], row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from row vectors. Panics on ragged input; use
    /// [`Matrix::try_from_rows`] for untrusted data.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Matrix {
        Matrix::try_from_rows(rows).expect("ragged rows")
    }

    pub fn try_from_rows(rows: Vec<Vec<Rational>>) -> Result<Matrix, LinAlgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(LinAlgError::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    row.len(),
                    ncols
                )));
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Builds from integer rows; test and table shorthand.
    pub fn from_int_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Rational::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: Vec<Vec<Rational>>) -> Matrix {
        Matrix::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> Matrix {
        let mut m = self.clone();
        for e in &mut m.entries {
            *e *= factor;
        }
        m
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<Rational>()
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest absolute value among the entries; exact max-norm.
    pub fn max_norm(&self) -> Rational {
        self.entries
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rational) {
        for c in 0..self.cols {
            self[(r, c)] *= factor;
        }
    }

    /// `row[dst] -= factor * row[src]`
    fn row_sub_scaled(&mut self, dst: usize, src: usize, factor: &Rational) {
        for c in 0..self.cols {
            let d = factor * &self[(src, c)];
            self[(dst, c)] -= &d;
        }
    }

    /// `col[dst] -= factor * col[src]`
    fn col_sub_scaled(&mut self, dst: usize, src: usize, factor: &Rational) {
        for r in 0..self.rows {
            let d = factor * &self[(r, src)];
            self[(r, dst)] -= &d;
        }
    }

    fn row_add(&mut self, dst: usize, src: usize) {
        for c in 0..self.cols {
            let s = self[(src, c)].clone();
            self[(dst, c)] += &s;
        }
    }

    fn col_add(&mut self, dst: usize, src: usize) {
        for r in 0..self.rows {
            let s = self[(r, src)].clone();
            self[(r, dst)] += &s;
        }
    }

    /// Reduced row echelon form with leftmost-pivot, first-nonzero-row
    /// selection. Deterministic: equal inputs yield identical output.
    /// Returns the reduced matrix and the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    m.row_sub_scaled(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : self * v = 0}` as a canonical subspace of ℚ^cols.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -&r[(prow, f)];
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, &basis)
    }

    pub fn determinant(&self) -> Result<Rational, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let f = &m[(r, col)] / &pivot;
                    m.row_sub_scaled(r, col, &f);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare);
        }
        let n = self.rows;
        // Gauss-Jordan on [self | I].
        let mut aug = Matrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(LinAlgError::Singular);
        }
        let mut inv = Matrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    /// Sylvester inertia `(n₋, n₀, n₊)` of a symmetric matrix, computed by
    /// exact symmetric (congruence) diagonalization: a nonzero diagonal
    /// entry clears its row and column; if only off-diagonal entries remain
    /// active, adding row+column `j` into `i` manufactures the nonzero
    /// diagonal entry `2·m[i][j]`. Congruence preserves inertia, so the
    /// diagonal signs at the end are the invariant.
    pub fn signature(&self) -> Result<(usize, usize, usize), LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare);
        }
        if !self.is_symmetric() {
            return Err(LinAlgError::NotSymmetric);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut done = vec![false; n];
        let (mut plus, mut minus) = (0usize, 0usize);
        loop {
            if let Some(i) = (0..n).find(|&i| !done[i] && !m[(i, i)].is_zero()) {
                let d = m[(i, i)].clone();
                for j in 0..n {
                    if j != i && !m[(j, i)].is_zero() {
                        let f = &m[(j, i)] / &d;
                        m.row_sub_scaled(j, i, &f);
                        m.col_sub_scaled(j, i, &f);
                    }
                }
                if d.is_positive() {
                    plus += 1;
                } else {
                    minus += 1;
                }
                done[i] = true;
            } else if let Some((i, j)) = Self::active_offdiagonal(&m, &done) {
                m.row_add(i, j);
                m.col_add(i, j);
            } else {
                break;
            }
        }
        Ok((minus, n - plus - minus, plus))
    }

    fn active_offdiagonal(m: &Matrix, done: &[bool]) -> Option<(usize, usize)> {
        let n = m.rows;
        for i in 0..n {
            if done[i] {
                continue;
            }
            for j in 0..n {
                if i != j && !done[j] && !m[(i, j)].is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Stacks `self` on top of `other` (equal column counts).
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }
}

/// `a*b - b*a`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut m = self.clone();
        for (e, r) in m.entries.iter_mut().zip(&rhs.entries) {
            *e += r;
        }
        m
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut m = self.clone();
        for (e, r) in m.entries.iter_mut().zip(&rhs.entries) {
            *e -= r;
        }
        m
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let mut m = self.clone();
        for e in &mut m.entries {
            *e = -e.clone();
        }
        m
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "product shape mismatch");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let d = a * &rhs[(k, c)];
                    out[(r, c)] += &d;
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        Matrix::try_from_rows(rows).map_err(serde::de::Error::custom)
    }
}
