//! Exact linear algebra over ℚ: arbitrary-precision rationals, dense
//! matrices with reduced row echelon form, kernels, inverses and Sylvester
//! inertia, and canonically represented subspaces with complements and
//! radicals relative to a symmetric bilinear form.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{commutator, Matrix};
pub use rational::Rational;
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

/// `u + v`
pub fn vec_add(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    assert_eq!(u.len(), v.len(), "vector length mismatch");
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// `u - v`
pub fn vec_sub(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    assert_eq!(u.len(), v.len(), "vector length mismatch");
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// `c * v`
pub fn vec_scale(c: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|a| c * a).collect()
}

pub fn vec_neg(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|a| -a).collect()
}

pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Standard basis vector `e_i` of ℚⁿ.
pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(arb_rational(), rows * cols).prop_map(move |es| {
            let rows_vec: Vec<Vec<Rational>> =
                es.chunks(cols).map(|c| c.to_vec()).collect();
            Matrix::from_rows(rows_vec)
        })
    }

    fn arb_symmetric(n: usize) -> impl Strategy<Value = Matrix> {
        arb_matrix(n, n).prop_map(|m| {
            let mut s = m.clone();
            for i in 0..s.rows() {
                for j in 0..i {
                    s[(i, j)] = m[(j, i)].clone();
                }
            }
            s
        })
    }

    /// Invertible by construction: unit lower-triangular times an upper
    /// triangular matrix with nonzero diagonal.
    fn arb_invertible(n: usize) -> impl Strategy<Value = Matrix> {
        (arb_matrix(n, n), arb_matrix(n, n)).prop_map(move |(a, b)| {
            let mut l = Matrix::identity(n);
            let mut u = Matrix::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    if j < i {
                        l[(i, j)] = a[(i, j)].clone();
                    }
                    if j > i {
                        u[(i, j)] = b[(i, j)].clone();
                    }
                }
                let d = &b[(i, i)];
                u[(i, i)] = if d.is_zero() { Rational::one() } else { d.clone() };
            }
            &l * &u
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in arb_matrix(4, 5)) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), 5);
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in arb_matrix(3, 4)) {
            for v in m.kernel().basis_vectors() {
                prop_assert!(vec_is_zero(&m.apply(&v)));
            }
        }

        #[test]
        fn sylvester_inertia_is_congruence_invariant(
            s in arb_symmetric(4),
            p in arb_invertible(4),
        ) {
            let congruent = &(&p.transpose() * &s) * &p;
            prop_assert_eq!(s.signature().unwrap(), congruent.signature().unwrap());
        }

        #[test]
        fn inertia_parts_sum_to_dimension(s in arb_symmetric(4)) {
            let (m, z, p) = s.signature().unwrap();
            prop_assert_eq!(m + z + p, 4);
            prop_assert_eq!(z, 4 - s.rank());
        }

        #[test]
        fn inverse_round_trip(p in arb_invertible(3)) {
            let inv = p.inverse().unwrap();
            prop_assert_eq!(&p * &inv, Matrix::identity(3));
            prop_assert_eq!(&inv * &p, Matrix::identity(3));
        }

        #[test]
        fn determinant_is_multiplicative(a in arb_matrix(3, 3), b in arb_matrix(3, 3)) {
            let lhs = (&a * &b).determinant().unwrap();
            let rhs = a.determinant().unwrap() * b.determinant().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn radical_lies_in_both_space_and_complement(s in arb_symmetric(4)) {
            let w = Subspace::from_spanning(
                4,
                &[unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 2)],
            );
            let rad = w.radical(&s).unwrap();
            prop_assert!(w.contains(&rad));
            for v in rad.basis_vectors() {
                for b in w.basis_vectors() {
                    let inner: Rational = s
                        .apply(&b)
                        .iter()
                        .zip(&v)
                        .map(|(a, c)| a * c)
                        .sum();
                    prop_assert!(inner.is_zero());
                }
            }
        }

        #[test]
        fn modular_dimension_law(
            a in arb_matrix(2, 4),
            b in arb_matrix(2, 4),
        ) {
            let u = Subspace::from_spanning(4, &a.row_vectors());
            let v = Subspace::from_spanning(4, &b.row_vectors());
            prop_assert_eq!(
                u.dim() + v.dim(),
                u.sum(&v).dim() + u.intersect(&v).dim()
            );
        }

        #[test]
        fn complement_dimensions_add_up(p in arb_invertible(4)) {
            // A nondegenerate symmetric form: PᵀP (positive definite here,
            // but only nondegeneracy matters).
            let gram = &p.transpose() * &p;
            let w = Subspace::from_spanning(4, &[unit_vec(4, 1), unit_vec(4, 3)]);
            let perp = w.orthogonal_complement(&gram).unwrap();
            prop_assert_eq!(w.dim() + perp.dim(), 4);
        }
    }
}
