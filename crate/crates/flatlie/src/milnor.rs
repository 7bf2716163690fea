//! Riemannian flat metric Lie algebras.
//!
//! Milnor's criterion: a Riemannian (positive definite) metric Lie algebra
//! is flat if and only if the skew-adjoint part `𝔏 = {u : ad_u skew}` and
//! the derived ideal `𝔇 = [𝔤,𝔤]` are both abelian and `𝔏⊥ = 𝔇`. When that
//! holds, `𝔇` is even-dimensional (as soon as `𝔏 ≠ 0`) and the Levi-Civita
//! product collapses to
//!
//! ```text
//! L_a = ad_a  for a ∈ 𝔏,      L_a = 0  for a ∈ 𝔇.
//! ```
//!
//! Every such algebra can be written in a normal form: an orthonormal basis
//! `s₁,…,s_p, f₁,…,f_{2r}` where the `s_i` span `𝔏`, the `f_k` span `𝔇`,
//! and each `s` acts on the k-th `f`-plane as an infinitesimal rotation
//! with speed ⟨s, u_k⟩ for parameter vectors `u_k ∈ ℝᵖ`.
//! [`build_riemannian_flat`] constructs that normal form;
//! [`milnor_check`] verifies the criterion on arbitrary input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::LieError;
use crate::linalg::{vec_is_zero, Matrix, Rational};
use crate::metric::MetricLieAlgebra;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MilnorError {
    #[error("rotation parameter vector {0} has length {1}, expected {2}")]
    WrongLength(usize, usize, usize),
    #[error("rotation parameter vector {0} is zero")]
    ZeroVector(usize),
    #[error("metric is not positive definite")]
    NotRiemannian,
    #[error("algebra fails the flatness criterion: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Parameters of the normal form: `p` generators and one nonzero rotation
/// speed vector in `ℝᵖ` per plane.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MilnorData {
    pub p: usize,
    pub u_vectors: Vec<Vec<Rational>>,
}

/// Builds the normal form: dimension `p + 2r` (where `r` is the number of
/// `u`-vectors), Euclidean metric, brackets
///
/// ```text
/// [s_i, f_{2j-1}] = ⟨s_i, u_j⟩ f_{2j},    [s_i, f_{2j}] = -⟨s_i, u_j⟩ f_{2j-1}.
/// ```
///
/// The result is always flat; with all `u_j ≠ 0` (enforced) the `f`-planes
/// all carry a genuine rotation, so `𝔏` is exactly the `s`-span and `𝔇`
/// exactly the `f`-span.
pub fn build_riemannian_flat(data: &MilnorData) -> Result<MetricLieAlgebra, MilnorError> {
    let p = data.p;
    let r = data.u_vectors.len();
    for (j, u) in data.u_vectors.iter().enumerate() {
        if u.len() != p {
            return Err(MilnorError::WrongLength(j + 1, u.len(), p));
        }
        if vec_is_zero(u) {
            return Err(MilnorError::ZeroVector(j + 1));
        }
    }
    let n = p + 2 * r;
    let mut names: Vec<String> = (1..=p).map(|i| format!("s{i}")).collect();
    names.extend((1..=2 * r).map(|k| format!("f{k}")));

    let mut brackets = Vec::new();
    for i in 0..p {
        for (j, u) in data.u_vectors.iter().enumerate() {
            let speed = &u[i];
            if speed.is_zero() {
                continue;
            }
            let a = p + 2 * j; // index of f_{2j+1}
            let b = p + 2 * j + 1; // index of f_{2j+2}
            let mut c1 = vec![Rational::zero(); n];
            c1[b] = speed.clone();
            brackets.push((i, a, c1));
            let mut c2 = vec![Rational::zero(); n];
            c2[a] = -speed.clone();
            brackets.push((i, b, c2));
        }
    }
    let algebra = crate::lie::LieAlgebra::new(n, names, brackets)?;
    Ok(MetricLieAlgebra::new(algebra, Matrix::identity(n))
        .expect("identity metric is nondegenerate"))
}

/// Outcome of testing Milnor's criterion on a Riemannian metric Lie
/// algebra. `matches` records that the three structural conditions hold
/// jointly exactly when the metric is flat — that equivalence is a theorem,
/// so `matches == false` would expose a computation bug, not a property of
/// the input.
#[derive(Clone, Debug, Serialize)]
pub struct MilnorVerdict {
    pub flat: bool,
    pub killing_abelian: bool,
    pub derived_abelian: bool,
    pub killing_perp_is_derived: bool,
    pub matches: bool,
    /// `Some(even)` when flat and `𝔏 ≠ 0`: whether dim 𝔇 is even.
    pub derived_dim_even: Option<bool>,
    /// Human-readable reason when the criterion fails.
    pub witness: Option<String>,
}

impl MilnorVerdict {
    pub fn criterion_holds(&self) -> bool {
        self.killing_abelian && self.derived_abelian && self.killing_perp_is_derived
    }
}

/// Evaluates Milnor's criterion. Errors unless the metric is positive
/// definite.
pub fn milnor_check(m: &MetricLieAlgebra) -> Result<MilnorVerdict, MilnorError> {
    if !m.is_riemannian() {
        return Err(MilnorError::NotRiemannian);
    }
    let alg = m.algebra();
    let killing = m.killing_subalgebra();
    let derived = alg.derived_subalgebra();

    let killing_abelian = alg.subspace_bracket(&killing, &killing).is_zero();
    let derived_abelian = alg.subspace_bracket(&derived, &derived).is_zero();
    let killing_perp = killing
        .orthogonal_complement(m.gram())
        .expect("nondegenerate metric");
    let killing_perp_is_derived = killing_perp == derived;

    let flat = m.is_flat();
    let criterion = killing_abelian && derived_abelian && killing_perp_is_derived;
    let witness = if criterion {
        None
    } else {
        let mut reasons = Vec::new();
        if !killing_abelian {
            reasons.push("skew-adjoint part is not abelian");
        }
        if !derived_abelian {
            reasons.push("derived ideal is not abelian");
        }
        if !killing_perp_is_derived {
            reasons.push("orthogonal of the skew-adjoint part is not the derived ideal");
        }
        Some(reasons.join("; "))
    };
    let derived_dim_even =
        (flat && !killing.is_zero()).then(|| derived.dim().is_multiple_of(2));

    Ok(MilnorVerdict {
        flat,
        killing_abelian,
        derived_abelian,
        killing_perp_is_derived,
        matches: flat == criterion,
        derived_dim_even,
        witness,
    })
}

/// On a Riemannian flat algebra the left multiplications degenerate:
/// `L_a = ad_a` on `𝔏` and `L_a = 0` on `𝔇`. Verifies both on the
/// canonical bases. Errors if the input is not Riemannian flat.
pub fn left_mult_collapse_check(m: &MetricLieAlgebra) -> Result<bool, MilnorError> {
    let verdict = milnor_check(m)?;
    if !verdict.flat {
        return Err(MilnorError::PreconditionFailed(
            verdict
                .witness
                .unwrap_or_else(|| "metric is not flat".into()),
        ));
    }
    let killing = m.killing_subalgebra();
    let derived = m.algebra().derived_subalgebra();
    let on_killing = killing
        .basis_vectors()
        .into_iter()
        .all(|a| m.left_mult(&a) == m.algebra().adjoint(&a));
    let on_derived = derived
        .basis_vectors()
        .into_iter()
        .all(|a| m.left_mult(&a).is_zero());
    Ok(on_killing && on_derived)
}

/// Small convenience used by builders elsewhere: the standard basis
/// vectors of the `f`-planes in a normal form of shape `(p, r)`.
pub fn plane_indices(p: usize, r: usize) -> Vec<(usize, usize)> {
    (0..r).map(|j| (p + 2 * j, p + 2 * j + 1)).collect()
}
