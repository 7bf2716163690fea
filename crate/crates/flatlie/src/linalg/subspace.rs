use serde::{Serialize, Serializer};

use super::{LinAlgError, Matrix, Rational};

/// Linear subspace of ℚⁿ held in a canonical form: the basis rows are the
/// nonzero rows of a reduced row echelon matrix. Two `Subspace` values are
/// equal as sets exactly when they are equal as values.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the given vectors, canonicalized by row reduction.
    pub fn from_spanning(ambient: usize, vectors: &[Vec<Rational>]) -> Subspace {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector length mismatch");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (reduced, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
        if pivots.is_empty() {
            return Subspace::zero(ambient);
        }
        let basis = Matrix::from_rows(
            (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect(),
        );
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Remainder of `v` after elimination against the canonical basis; zero
    /// exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        self.eliminate(v).1
    }

    /// Coefficients of `v` in the canonical basis, or `None` when `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (coeffs, remainder) = self.eliminate(v);
        remainder.iter().all(Rational::is_zero).then_some(coeffs)
    }

    fn eliminate(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.dim());
        for row in 0..self.dim() {
            // The basis is in reduced echelon form: the pivot is the first
            // nonzero entry of the row and equals 1.
            let col = (0..self.ambient)
                .find(|&c| !self.basis[(row, c)].is_zero())
                .expect("zero row in canonical basis");
            let f = w[col].clone();
            if !f.is_zero() {
                for (c, wc) in w.iter_mut().enumerate() {
                    let d = &f * &self.basis[(row, c)];
                    *wc -= &d;
                }
            }
            coeffs.push(f);
        }
        (coeffs, w)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_spanning(self.ambient, &vs)
    }

    /// Intersection, via the kernel of `[B₁ᵀ | -B₂ᵀ]`: a kernel element
    /// `(a, b)` certifies `B₁ᵀa = B₂ᵀb`, a vector lying in both row spaces.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let k1 = self.dim();
        let k2 = other.dim();
        if k1 == 0 || k2 == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut stacked = Matrix::zero(self.ambient, k1 + k2);
        for r in 0..self.ambient {
            for c in 0..k1 {
                stacked[(r, c)] = self.basis[(c, r)].clone();
            }
            for c in 0..k2 {
                stacked[(r, k1 + c)] = -&other.basis[(c, r)];
            }
        }
        let coeffs = stacked.kernel();
        let vectors: Vec<Vec<Rational>> = coeffs
            .basis_vectors()
            .iter()
            .map(|ab| {
                (0..self.ambient)
                    .map(|i| {
                        (0..k1)
                            .map(|c| &ab[c] * &self.basis[(c, i)])
                            .sum::<Rational>()
                    })
                    .collect()
            })
            .collect();
        Subspace::from_spanning(self.ambient, &vectors)
    }

    /// Orthogonal complement with respect to a nondegenerate symmetric
    /// bilinear form given by its Gram matrix.
    pub fn orthogonal_complement(&self, gram: &Matrix) -> Result<Subspace, LinAlgError> {
        check_form(gram, self.ambient)?;
        if gram.determinant()?.is_zero() {
            return Err(LinAlgError::DegenerateForm);
        }
        if self.dim() == 0 {
            return Ok(Subspace::full(self.ambient));
        }
        // v ⊥ W  ⟺  (B G) v = 0 for the basis rows B.
        Ok((&self.basis * gram).kernel())
    }

    /// Radical `W ∩ W⊥` of the restricted form: kernel vectors of the
    /// restricted Gram matrix `B G Bᵀ`, mapped back to ambient coordinates.
    /// The ambient form may be degenerate here.
    pub fn radical(&self, gram: &Matrix) -> Result<Subspace, LinAlgError> {
        check_form(gram, self.ambient)?;
        if self.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let restricted = &(&self.basis * gram) * &self.basis.transpose();
        let coeffs = restricted.kernel();
        let vectors: Vec<Vec<Rational>> = coeffs
            .basis_vectors()
            .iter()
            .map(|a| {
                (0..self.ambient)
                    .map(|i| {
                        (0..self.dim())
                            .map(|c| &a[c] * &self.basis[(c, i)])
                            .sum::<Rational>()
                    })
                    .collect()
            })
            .collect();
        Ok(Subspace::from_spanning(self.ambient, &vectors))
    }
}

fn check_form(gram: &Matrix, ambient: usize) -> Result<(), LinAlgError> {
    if !gram.is_square() || gram.rows() != ambient {
        return Err(LinAlgError::DimensionMismatch(format!(
            "form is {}x{}, ambient dimension is {}",
            gram.rows(),
            gram.cols(),
            ambient
        )));
    }
    if !gram.is_symmetric() {
        return Err(LinAlgError::NotSymmetric);
    }
    Ok(())
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "span{:?}", self.basis)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.basis_vectors().serialize(serializer)
    }
}
