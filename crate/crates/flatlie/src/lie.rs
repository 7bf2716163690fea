//! Finite-dimensional Lie algebras over ℚ, given by structure constants on
//! a fixed basis. Construction validates antisymmetric input and the Jacobi
//! identity, so every value of [`LieAlgebra`] is a genuine Lie algebra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{unit_vec, vec_add, vec_is_zero, vec_neg, Matrix, Rational, Subspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("bracket index pair ({0}, {1}) must satisfy i < j < dim")]
    BadIndexPair(usize, usize),
    #[error("duplicate bracket entry for ({0}, {1})")]
    DuplicateBracket(usize, usize),
    #[error("bracket coefficient vector for ({0}, {1}) has length {2}, expected {3}")]
    BadCoefficientLength(usize, usize, usize, usize),
    #[error("expected {expected} basis names, got {got}")]
    BadBasisNames { expected: usize, got: usize },
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
}

/// Lie algebra with basis `e_0, …, e_{n-1}` and brackets stored sparsely as
/// `[e_i, e_j]` for `i < j`.
#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<Rational>>,
}

/// Solvable and nilpotent invariants read off the derived and lower central
/// series; `None` means the series stabilizes without reaching zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassLabels {
    pub solvable_length: Option<usize>,
    pub nilpotency_class: Option<usize>,
}

impl LieAlgebra {
    /// Builds and validates. `brackets` lists `(i, j, coefficients of
    /// [e_i, e_j])` with `i < j`; omitted pairs commute.
    pub fn new(
        dim: usize,
        names: Vec<String>,
        brackets: Vec<(usize, usize, Vec<Rational>)>,
    ) -> Result<LieAlgebra, LieError> {
        if names.len() != dim {
            return Err(LieError::BadBasisNames {
                expected: dim,
                got: names.len(),
            });
        }
        let mut table = BTreeMap::new();
        for (i, j, coeffs) in brackets {
            if i >= j || j >= dim {
                return Err(LieError::BadIndexPair(i, j));
            }
            if coeffs.len() != dim {
                return Err(LieError::BadCoefficientLength(i, j, coeffs.len(), dim));
            }
            if vec_is_zero(&coeffs) {
                continue;
            }
            if table.insert((i, j), coeffs).is_some() {
                return Err(LieError::DuplicateBracket(i, j));
            }
        }
        let algebra = LieAlgebra {
            dim,
            names,
            brackets: table,
        };
        if let Some((i, j, k)) = algebra.jacobi_defect() {
            return Err(LieError::JacobiViolation(i, j, k));
        }
        Ok(algebra)
    }

    /// Same as [`LieAlgebra::new`] with basis names `e1, …, en`.
    pub fn with_default_names(
        dim: usize,
        brackets: Vec<(usize, usize, Vec<Rational>)>,
    ) -> Result<LieAlgebra, LieError> {
        let names = (1..=dim).map(|k| format!("e{k}")).collect();
        LieAlgebra::new(dim, names, brackets)
    }

    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra::with_default_names(dim, Vec::new()).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, &Vec<Rational>)> {
        self.brackets.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// `[e_i, e_j]` for any index order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        if i == j {
            return vec![Rational::zero(); self.dim];
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.brackets.get(&(a, b)) {
            Some(c) if flip => vec_neg(c),
            Some(c) => c.clone(),
            None => vec![Rational::zero(); self.dim],
        }
    }

    /// `[u, v]` by bilinear expansion.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        assert_eq!(u.len(), self.dim, "vector length mismatch");
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), c) in &self.brackets {
            // [u, v] picks up (u_i v_j - u_j v_i) [e_i, e_j].
            let coeff = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            if coeff.is_zero() {
                continue;
            }
            for k in 0..self.dim {
                let d = &coeff * &c[k];
                out[k] += &d;
            }
        }
        out
    }

    /// First basis triple `(i, j, k)` with `i < j < k` violating the Jacobi
    /// identity, if any.
    pub fn jacobi_defect(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let ei = unit_vec(self.dim, i);
                    let ej = unit_vec(self.dim, j);
                    let ek = unit_vec(self.dim, k);
                    let cyc = vec_add(
                        &self.bracket(&ei, &self.bracket(&ej, &ek)),
                        &vec_add(
                            &self.bracket(&ej, &self.bracket(&ek, &ei)),
                            &self.bracket(&ek, &self.bracket(&ei, &ej)),
                        ),
                    );
                    if !vec_is_zero(&cyc) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Matrix of `ad_u = [u, ·]`; column `j` holds `[u, e_j]`.
    pub fn adjoint(&self, u: &[Rational]) -> Matrix {
        let cols = (0..self.dim)
            .map(|j| self.bracket(u, &unit_vec(self.dim, j)))
            .collect();
        Matrix::from_columns(cols)
    }

    pub fn adjoint_basis(&self, i: usize) -> Matrix {
        self.adjoint(&unit_vec(self.dim, i))
    }

    /// Center `{u : [u, v] = 0 ∀v}`: joint kernel of all basis adjoints.
    pub fn center(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        let mut stacked = self.adjoint_basis(0);
        for i in 1..self.dim {
            stacked = stacked.vstack(&self.adjoint_basis(i));
        }
        // ad_{e_i} u = -ad_u e_i, so u is central iff every stacked block
        // kills it.
        stacked.kernel()
    }

    /// Span of all brackets `[U, V]`.
    pub fn subspace_bracket(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut spans = Vec::new();
        for a in u.basis_vectors() {
            for b in v.basis_vectors() {
                spans.push(self.bracket(&a, &b));
            }
        }
        Subspace::from_spanning(self.dim, &spans)
    }

    /// Derived subalgebra `[𝔤, 𝔤]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let full = Subspace::full(self.dim);
        self.subspace_bracket(&full, &full)
    }

    /// Derived series `𝔤 ⊇ [𝔤,𝔤] ⊇ [[𝔤,𝔤],[𝔤,𝔤]] ⊇ …`, listed until the
    /// first repeated term (zero included when reached).
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().unwrap();
            let next = self.subspace_bracket(last, last);
            if &next == last {
                break;
            }
            series.push(next);
            if series.last().unwrap().is_zero() {
                break;
            }
        }
        series
    }

    /// Lower central series `𝔤 ⊇ [𝔤,𝔤] ⊇ [𝔤,[𝔤,𝔤]] ⊇ …`, listed until the
    /// first repeated term (zero included when reached).
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.subspace_bracket(&full, last);
            if &next == last {
                break;
            }
            series.push(next);
            if series.last().unwrap().is_zero() {
                break;
            }
        }
        series
    }

    /// Solvable length and nilpotency class, when the respective series
    /// reach zero. The abelian algebra has length 1 and class 1; the zero
    /// algebra has length 0 and class 0.
    pub fn class_labels(&self) -> ClassLabels {
        let derived = self.derived_series();
        let solvable_length = if derived.last().unwrap().is_zero() {
            Some(derived.len() - 1)
        } else {
            None
        };
        let lower = self.lower_central_series();
        let nilpotency_class = if lower.last().unwrap().is_zero() {
            Some(lower.len() - 1)
        } else {
            None
        };
        ClassLabels {
            solvable_length,
            nilpotency_class,
        }
    }

    /// `tr(ad_u) = 0` for all `u`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.adjoint_basis(i).trace().is_zero())
    }

    /// Structure-constant equality on the underlying vector space; basis
    /// names are ignored.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.brackets == other.brackets
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim)?;
        for (&(i, j), c) in &self.brackets {
            write!(f, ", [{},{}]={:?}", self.names[i], self.names[j], c)?;
        }
        write!(f, ")")
    }
}

/// Interchange form: `{"dim": n, "basis": [...], "brackets": [{"i", "j",
/// "coeffs"}...]}` with `i < j` and zero-based indices.
#[derive(Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<Rational>,
}

impl From<&LieAlgebra> for LieAlgebraJson {
    fn from(alg: &LieAlgebra) -> LieAlgebraJson {
        LieAlgebraJson {
            dim: alg.dim,
            basis: alg.names.clone(),
            brackets: alg
                .bracket_entries()
                .map(|(i, j, c)| BracketJson {
                    i,
                    j,
                    coeffs: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<LieAlgebraJson> for LieAlgebra {
    type Error = LieError;

    fn try_from(json: LieAlgebraJson) -> Result<LieAlgebra, LieError> {
        LieAlgebra::new(
            json.dim,
            json.basis,
            json.brackets
                .into_iter()
                .map(|b| (b.i, b.j, b.coeffs))
                .collect(),
        )
    }
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LieAlgebraJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = LieAlgebraJson::deserialize(deserializer)?;
        LieAlgebra::try_from(json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vec;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn coeffs(entries: &[(usize, i64)], dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for &(k, c) in entries {
            v[k] = r(c);
        }
        v
    }

    /// Basis (z, z̄, e₁) with [z̄, e₁] = z: the 3-dimensional Heisenberg
    /// algebra.
    fn heisenberg() -> LieAlgebra {
        LieAlgebra::new(
            3,
            vec!["z".into(), "zbar".into(), "e1".into()],
            vec![(1, 2, coeffs(&[(0, 1)], 3))],
        )
        .unwrap()
    }

    /// [e₁, e₂] = e₂: the 2-dimensional non-abelian algebra.
    fn affine_line() -> LieAlgebra {
        LieAlgebra::with_default_names(2, vec![(0, 1, coeffs(&[(1, 1)], 2))]).unwrap()
    }

    #[test]
    fn jacobi_violation_is_reported_with_its_triple() {
        // [e₁,[e₂,e₃]] + cyclic = [e₁,e₂] + [e₂,-e₂] + [e₃,e₃] = e₃ ≠ 0.
        let bad = LieAlgebra::with_default_names(
            3,
            vec![
                (0, 1, coeffs(&[(2, 1)], 3)),
                (0, 2, coeffs(&[(1, 1)], 3)),
                (1, 2, coeffs(&[(1, 1)], 3)),
            ],
        );
        assert_eq!(bad.unwrap_err(), LieError::JacobiViolation(0, 1, 2));
    }

    #[test]
    fn valid_algebras_have_no_jacobi_defect() {
        assert_eq!(heisenberg().jacobi_defect(), None);
        assert_eq!(affine_line().jacobi_defect(), None);
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let h = heisenberg();
        let u = vec![r(1), r(2), r(-1)];
        let v = vec![r(0), r(3), r(5)];
        assert_eq!(h.bracket(&u, &v), vec_neg(&h.bracket(&v, &u)));
        assert!(vec_is_zero(&h.bracket(&u, &u)));
    }

    #[test]
    fn adjoint_of_e1_in_heisenberg_sends_zbar_to_minus_z() {
        let h = heisenberg();
        let ad = h.adjoint(&unit_vec(3, 2));
        assert_eq!(ad.apply(&unit_vec(3, 1)), coeffs(&[(0, -1)], 3));
        assert!(ad.apply(&unit_vec(3, 0)).iter().all(Rational::is_zero));
    }

    #[test]
    fn center_of_heisenberg_is_the_z_line() {
        let z_line = Subspace::from_spanning(3, &[unit_vec(3, 0)]);
        assert_eq!(heisenberg().center(), z_line);
        assert!(affine_line().center().is_zero());
        assert_eq!(LieAlgebra::abelian(4).center(), Subspace::full(4));
    }

    #[test]
    fn series_and_labels_of_small_algebras() {
        // Abelian: both series are (𝔤, 0).
        let ab = LieAlgebra::abelian(3);
        assert_eq!(
            ab.class_labels(),
            ClassLabels {
                solvable_length: Some(1),
                nilpotency_class: Some(1)
            }
        );

        // Heisenberg: nilpotent of class 2, solvable of length 2.
        assert_eq!(
            heisenberg().class_labels(),
            ClassLabels {
                solvable_length: Some(2),
                nilpotency_class: Some(2)
            }
        );

        // [e₁,e₂]=e₂: solvable of length 2, not nilpotent (the lower
        // central series stabilizes at span{e₂}).
        assert_eq!(
            affine_line().class_labels(),
            ClassLabels {
                solvable_length: Some(2),
                nilpotency_class: None
            }
        );
    }

    #[test]
    fn four_dimensional_examples_match_hand_computation() {
        // (z, z̄, e₁, e₂), [z̄,e₁]=a z, [z̄,e₂]=e₁, [e₁,e₂]=-z with a=1:
        // 𝔤² = span{z, e₁}, 𝔤³ = span{z}, 𝔤⁴ = 0 → class 3.
        let a = LieAlgebra::new(
            4,
            vec!["z".into(), "zbar".into(), "e1".into(), "e2".into()],
            vec![
                (1, 2, coeffs(&[(0, 1)], 4)),
                (1, 3, coeffs(&[(2, 1)], 4)),
                (2, 3, coeffs(&[(0, -1)], 4)),
            ],
        )
        .unwrap();
        let labels = a.class_labels();
        assert_eq!(labels.nilpotency_class, Some(3));
        assert_eq!(labels.solvable_length, Some(2));
        assert!(a.is_unimodular());

        // (z, z̄, e₁, e₂), [z̄,e₁]=e₂, [z̄,e₂]=-e₁: solvable of length 2,
        // not nilpotent.
        let b = LieAlgebra::new(
            4,
            vec!["z".into(), "zbar".into(), "e1".into(), "e2".into()],
            vec![
                (1, 2, coeffs(&[(3, 1)], 4)),
                (1, 3, coeffs(&[(2, -1)], 4)),
            ],
        )
        .unwrap();
        let labels = b.class_labels();
        assert_eq!(labels.solvable_length, Some(2));
        assert_eq!(labels.nilpotency_class, None);
        assert!(b.is_unimodular());
    }

    #[test]
    fn affine_line_is_not_unimodular() {
        // ad_{e₁} = diag(0, 1) has trace 1.
        assert!(!affine_line().is_unimodular());
    }

    #[test]
    fn json_round_trip_preserves_structure() {
        let h = heisenberg();
        let s = serde_json::to_string(&h).unwrap();
        let back: LieAlgebra = serde_json::from_str(&s).unwrap();
        assert!(h.same_structure(&back));
        assert_eq!(back.basis_names(), h.basis_names());

        // Schema violations are rejected: i ≥ j.
        let bad = r#"{"dim":2,"basis":["a","b"],"brackets":[{"i":1,"j":0,"coeffs":["1","0"]}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(bad).is_err());
        // Jacobi violations are rejected at the same boundary.
        let nonjacobi = r#"{"dim":3,"basis":["a","b","c"],"brackets":[
            {"i":0,"j":1,"coeffs":["0","0","1"]},
            {"i":0,"j":2,"coeffs":["0","1","0"]},
            {"i":1,"j":2,"coeffs":["0","1","0"]}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(nonjacobi).is_err());
    }
}
