//! The double-extension construction and its inverse.
//!
//! Every Lorentzian flat metric Lie algebra whose center is nonzero and
//! degenerate arises from a Riemannian flat algebra `B` by adjoining an
//! isotropic pair `(z, z̄)` with `⟨z, z̄⟩ = 1`:
//!
//! ```text
//! [z̄, z] = μz,
//! [z̄, a] = D(a) - ⟨b₀, a⟩ z,
//! [a, b] = [a, b]_B + ⟨(ξ - ξ*)a, b⟩ z        (a, b ∈ B),
//! ```
//!
//! where `ξ, D : B → B`, `μ ∈ ℚ`, `b₀ ∈ B`. The quadruple `(ξ, D, μ, b₀)`
//! must be *admissible* — five equations tying it to the Levi-Civita
//! product of `B` — for the result to be a flat metric Lie algebra; see
//! [`is_admissible`]. [`extend`] performs the construction, [`split`]
//! recovers `(B, ξ, D, μ, b₀)` from a Lorentzian flat algebra with
//! degenerate center, and the two are mutually inverse up to the change of
//! basis recorded in [`SplitResult::frame`].
//!
//! Over an *abelian* base the five equations collapse to two conditions on
//! `A = D - ξ` ([`abelian_analysis`]), and every admissible pair in
//! dimensions ≤ 4 is isometric to one of the normal forms in
//! [`AbelianForm`]. Over a non-abelian base in the normal form of
//! [`crate::milnor`], admissibility is equivalent to the componentwise
//! conditions of [`structured_condition_check`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::linalg::{
    commutator, unit_vec, vec_is_zero, vec_scale, vec_sub, Matrix, Rational, Subspace,
};
use crate::metric::{MetricError, MetricLieAlgebra};
use crate::milnor::milnor_check;

#[derive(Debug, Error)]
pub enum DoubleExtError {
    #[error("operator must be {0}x{0}, got {1}x{2}")]
    BadOperatorShape(usize, usize, usize),
    #[error("b0 must have length {0}, got {1}")]
    BadVectorLength(usize, usize),
    #[error("base algebra is not flat")]
    BaseNotFlat,
    #[error("extension data is not admissible (failing: {0})")]
    NotAdmissible(String),
    #[error("input is not flat")]
    NotFlat,
    #[error("input metric is not Lorentzian")]
    NotLorentzian,
    #[error("center is zero or nondegenerate")]
    CenterNotDegenerate,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// The quadruple `(ξ, D, μ, b₀)` attached to a base algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionData {
    pub xi: Matrix,
    #[serde(rename = "D")]
    pub d: Matrix,
    pub mu: Rational,
    pub b0: Vec<Rational>,
}

impl ExtensionData {
    pub fn new(xi: Matrix, d: Matrix, mu: Rational, b0: Vec<Rational>) -> ExtensionData {
        ExtensionData { xi, d, mu, b0 }
    }

    /// Whether `(D, b₀) = (0, 0)`. Over an abelian base this decides the
    /// degeneracy of the extension's center (zero pair ⟺ nondegenerate);
    /// over a non-abelian base see [`extend`] for the inner-derivation
    /// escape.
    pub fn is_central_pair_zero(&self) -> bool {
        self.d.is_zero() && vec_is_zero(&self.b0)
    }

    fn validate(&self, dim: usize) -> Result<(), DoubleExtError> {
        for m in [&self.xi, &self.d] {
            if m.rows() != dim || m.cols() != dim {
                return Err(DoubleExtError::BadOperatorShape(dim, m.rows(), m.cols()));
            }
        }
        if self.b0.len() != dim {
            return Err(DoubleExtError::BadVectorLength(dim, self.b0.len()));
        }
        Ok(())
    }
}

/// One admissibility equation: whether it holds, and where it first failed.
#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Condition {
    fn ok() -> Condition {
        Condition {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Condition {
        Condition {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Result of [`is_admissible`]: the five defining equations, separately.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    /// `ξ([a,b]) = a·ξ(b) - b·ξ(a)` — `ξ` is a cocycle for the
    /// Levi-Civita representation.
    pub cocycle: Condition,
    /// `D([a,b]) = [D(a),b] + [a,D(b)]` — `D` is a derivation.
    pub derivation: Condition,
    /// `D - ξ` is skew-adjoint.
    pub skew_symmetry: Condition,
    /// `[D,ξ] = ξ² - μξ - R_{b₀}`.
    pub commutator_identity: Condition,
    /// `a·ξ(b) - ξ(a·b) = D(a)·b + a·D(b) - D(a·b)`.
    pub product_compatibility: Condition,
}

impl AdmissibilityReport {
    pub fn all_pass(&self) -> bool {
        self.conditions().iter().all(|(_, c)| c.pass)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.conditions()
            .into_iter()
            .filter(|(_, c)| !c.pass)
            .map(|(name, _)| name)
            .collect()
    }

    fn conditions(&self) -> Vec<(&'static str, &Condition)> {
        vec![
            ("cocycle", &self.cocycle),
            ("derivation", &self.derivation),
            ("skew_symmetry", &self.skew_symmetry),
            ("commutator_identity", &self.commutator_identity),
            ("product_compatibility", &self.product_compatibility),
        ]
    }
}

/// Checks the five admissibility equations of `(ξ, D, μ, b₀)` over a flat
/// base. Errors on shape mismatches or a non-flat base; equation failures
/// are reported, not raised.
pub fn is_admissible(
    base: &MetricLieAlgebra,
    data: &ExtensionData,
) -> Result<AdmissibilityReport, DoubleExtError> {
    let n = base.dim();
    data.validate(n)?;
    if !base.is_flat() {
        return Err(DoubleExtError::BaseNotFlat);
    }
    let names = base.algebra().basis_names();
    let pair = |i: usize, j: usize| format!("({}, {})", names[i], names[j]);

    let mut cocycle = Condition::ok();
    let mut derivation = Condition::ok();
    let mut product_compatibility = Condition::ok();
    'outer: for i in 0..n {
        let ei = unit_vec(n, i);
        for j in 0..n {
            let ej = unit_vec(n, j);
            // a·ξ(b) - ξ(a·b) on one side; the cocycle equation is its
            // antisymmetrization, the compatibility equation matches it
            // against the same expression built from D.
            let xi_gap = vec_sub(
                &base.product(&ei, &data.xi.apply(&ej)),
                &data.xi.apply(&base.product(&ei, &ej)),
            );
            if cocycle.pass && j > i {
                let lhs = data.xi.apply(&base.algebra().bracket(&ei, &ej));
                let rhs = vec_sub(
                    &base.product(&ei, &data.xi.apply(&ej)),
                    &base.product(&ej, &data.xi.apply(&ei)),
                );
                if lhs != rhs {
                    cocycle = Condition::fail(format!("fails at basis pair {}", pair(i, j)));
                }
            }
            if derivation.pass && j > i {
                let br = base.algebra().bracket(&ei, &ej);
                let lhs = data.d.apply(&br);
                let rhs = crate::linalg::vec_add(
                    &base.algebra().bracket(&data.d.apply(&ei), &ej),
                    &base.algebra().bracket(&ei, &data.d.apply(&ej)),
                );
                if lhs != rhs {
                    derivation =
                        Condition::fail(format!("fails at basis pair {}", pair(i, j)));
                }
            }
            if product_compatibility.pass {
                let d_gap = vec_sub(
                    &crate::linalg::vec_add(
                        &base.product(&data.d.apply(&ei), &ej),
                        &base.product(&ei, &data.d.apply(&ej)),
                    ),
                    &data.d.apply(&base.product(&ei, &ej)),
                );
                if xi_gap != d_gap {
                    product_compatibility =
                        Condition::fail(format!("fails at basis pair {}", pair(i, j)));
                }
            }
            if !cocycle.pass && !derivation.pass && !product_compatibility.pass {
                break 'outer;
            }
        }
    }

    let skew_gap = {
        let a = &data.d - &data.xi;
        &a + &base.operator_adjoint(&a)
    };
    let skew_symmetry = if skew_gap.is_zero() {
        Condition::ok()
    } else {
        Condition::fail("(D - ξ) + (D - ξ)* is nonzero".into())
    };

    // [D, ξ] - ξ² + μξ + R_{b₀} = 0.
    let r_b0 = base.right_mult(&data.b0);
    let eq = &(&commutator(&data.d, &data.xi) - &data.xi.pow(2))
        + &(&data.xi.scale(&data.mu) + &r_b0);
    let commutator_identity = if eq.is_zero() {
        Condition::ok()
    } else {
        Condition::fail("[D,ξ] - ξ² + μξ + R_{b₀} is nonzero".into())
    };

    Ok(AdmissibilityReport {
        cocycle,
        derivation,
        skew_symmetry,
        commutator_identity,
        product_compatibility,
    })
}

/// Performs the double extension. The result has dimension `n + 2`, basis
/// `(z, b₁, …, bₙ, z̄)`, the metric of the base on the middle block, and
/// `⟨z, z̄⟩ = 1` with `z, z̄` isotropic and orthogonal to the base.
///
/// Requires admissible data: over a Riemannian flat base the result is
/// then a Lorentzian flat metric Lie algebra, unimodular. Over an
/// *abelian* base its center is degenerate exactly when
/// `(D, b₀) ≠ (0, 0)`. Over a non-abelian base that equivalence can fail:
/// when `D(x) = [x, w]₀` for some `w ∈ B` whose twist matches `b₀`
/// (`ω(w, ·) = ⟨b₀, ·⟩₀`, `D(w) = 0`, `⟨b₀, w⟩₀ = 0`), the vector
/// `z̄ + w` is central and the center is nondegenerate even though
/// `(D, b₀) ≠ (0, 0)`.
pub fn extend(
    base: &MetricLieAlgebra,
    data: &ExtensionData,
) -> Result<MetricLieAlgebra, DoubleExtError> {
    let report = is_admissible(base, data)?;
    if !report.all_pass() {
        return Err(DoubleExtError::NotAdmissible(report.failing().join(", ")));
    }
    let n = base.dim();
    let dim = n + 2;
    let g0 = base.gram();

    let mut gram = Matrix::zero(dim, dim);
    gram[(0, n + 1)] = Rational::one();
    gram[(n + 1, 0)] = Rational::one();
    for i in 0..n {
        for j in 0..n {
            gram[(i + 1, j + 1)] = g0[(i, j)].clone();
        }
    }

    let mut names = vec!["z".to_string()];
    names.extend(base.algebra().basis_names().iter().cloned());
    names.push("zbar".to_string());

    // ω(a, b) = ⟨(ξ - ξ*)a, b⟩ gives the z-component of the new bracket.
    let omega = {
        let x = &data.xi - &base.operator_adjoint(&data.xi);
        &x.transpose() * g0
    };
    let gb0 = g0.apply(&data.b0);

    let mut brackets = Vec::new();
    // [z, z̄] = -μ z.
    if !data.mu.is_zero() {
        let mut c = vec![Rational::zero(); dim];
        c[0] = -data.mu.clone();
        brackets.push((0, n + 1, c));
    }
    // [bᵢ, z̄] = -D(εᵢ) + ⟨b₀, εᵢ⟩ z.
    for (i, gb) in gb0.iter().enumerate() {
        let mut c = vec![Rational::zero(); dim];
        c[0] = gb.clone();
        for r in 0..n {
            c[r + 1] = -data.d[(r, i)].clone();
        }
        brackets.push((i + 1, n + 1, c));
    }
    // [bᵢ, bⱼ] = [εᵢ, εⱼ]_B + ω(εᵢ, εⱼ) z.
    for i in 0..n {
        for j in i + 1..n {
            let br = base.algebra().bracket_basis(i, j);
            let mut c = vec![Rational::zero(); dim];
            c[0] = omega[(i, j)].clone();
            c[1..=n].clone_from_slice(&br);
            brackets.push((i + 1, j + 1, c));
        }
    }

    let algebra = LieAlgebra::new(dim, names, brackets)
        .expect("admissible data always yields a Lie bracket");
    Ok(MetricLieAlgebra::new(algebra, gram)?)
}

/// Inverse of [`extend`]: recovered base, data, and the adapted basis of
/// the input (as vectors in input coordinates, ordered `z, b₁, …, bₙ, z̄`)
/// that exhibits the input as a double extension. Concretely,
/// `extend(&base, &data)` equals `input.change_basis(&frame)` up to
/// nothing at all — structure constants and metric agree exactly.
#[derive(Clone, Debug, Serialize)]
pub struct SplitResult {
    pub base: MetricLieAlgebra,
    pub data: ExtensionData,
    pub frame: Vec<Vec<Rational>>,
}

/// Splits a flat Lorentzian metric Lie algebra with nonzero degenerate
/// center into a base and admissible extension data.
pub fn split(m: &MetricLieAlgebra) -> Result<SplitResult, DoubleExtError> {
    if !m.is_flat() {
        return Err(DoubleExtError::NotFlat);
    }
    if !m.is_lorentzian() {
        return Err(DoubleExtError::NotLorentzian);
    }
    if !m.center_degenerate() {
        return Err(DoubleExtError::CenterNotDegenerate);
    }
    let n = m.dim();
    let gram = m.gram();

    // The degenerate part of the center is an isotropic line (the metric
    // has only one non-spacelike direction to offer).
    let z_rad = m
        .algebra()
        .center()
        .radical(gram)
        .expect("metric is symmetric");
    assert_eq!(z_rad.dim(), 1, "degenerate center slice must be a line");
    let z = z_rad.basis_vectors().remove(0);

    // Pick any w with ⟨z, w⟩ ≠ 0 and complete z to a hyperbolic pair:
    // z̄ = w/⟨z,w⟩ - ⟨w,w⟩/(2⟨z,w⟩²) z is isotropic with ⟨z, z̄⟩ = 1.
    let w = (0..n)
        .map(|i| unit_vec(n, i))
        .find(|w| !m.inner(&z, w).is_zero())
        .expect("nondegenerate metric pairs z with some basis vector");
    let zw = m.inner(&z, &w);
    let ww = m.inner(&w, &w);
    let half = Rational::new(1, 2);
    let zbar = vec_sub(
        &vec_scale(&zw.clone().recip(), &w),
        &vec_scale(&(&(&half * &ww) / &(&zw * &zw)), &z),
    );
    debug_assert!(m.inner(&zbar, &zbar).is_zero());
    debug_assert!(m.inner(&z, &zbar).is_one());

    // B = {z, z̄}⊥ inherits a positive definite metric.
    let b_space = Subspace::from_spanning(n, &[z.clone(), zbar.clone()])
        .orthogonal_complement(gram)
        .expect("nondegenerate metric");
    let k = b_space.dim();
    let b_vecs = b_space.basis_vectors();
    let mut g_b = Matrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            g_b[(i, j)] = m.inner(&b_vecs[i], &b_vecs[j]);
        }
    }

    // Component extraction: v = αz + w_B + βz̄ has α = ⟨v, z̄⟩, β = ⟨v, z⟩.
    let b_part = |v: &[Rational]| -> Vec<Rational> {
        let alpha = m.inner(v, &zbar);
        let beta = m.inner(v, &z);
        assert!(beta.is_zero(), "component along z̄ must vanish");
        b_space
            .coordinates(&vec_sub(v, &vec_scale(&alpha, &z)))
            .expect("remainder lies in the base subspace")
    };

    // Base brackets: the z̄-component of [B, B] vanishes and the
    // z-component is the cocycle term; what is left closes on B.
    let mut base_brackets = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            base_brackets.push((i, j, b_part(&m.algebra().bracket(&b_vecs[i], &b_vecs[j]))));
        }
    }
    let base_names = (1..=k).map(|t| format!("e{t}")).collect();
    let base_algebra = LieAlgebra::new(k, base_names, base_brackets)
        .expect("base brackets inherit the Jacobi identity");
    let base = MetricLieAlgebra::new(base_algebra, g_b.clone())?;

    // [z̄, a] = D(a) - ⟨b₀, a⟩z recovers D from the B-component and b₀
    // from the z-component (paired against z̄).
    let mut d_cols = Vec::with_capacity(k);
    let mut b0_rhs = Vec::with_capacity(k);
    for bi in &b_vecs {
        let br = m.algebra().bracket(&zbar, bi);
        d_cols.push(b_part(&br));
        b0_rhs.push(-m.inner(&br, &zbar));
    }
    let d = Matrix::from_columns(d_cols);
    let b0 = g_b
        .inverse()
        .expect("restricted metric is nondegenerate")
        .apply(&b0_rhs);

    // μ = 0 because z is central.
    assert!(
        vec_is_zero(&m.algebra().bracket(&zbar, &z)),
        "z must be central"
    );

    // ξ(a) = -(B-component of a·z̄), read off the Levi-Civita product.
    let xi = Matrix::from_columns(
        b_vecs
            .iter()
            .map(|bi| {
                b_part(&m.product(bi, &zbar))
                    .into_iter()
                    .map(|c| -c)
                    .collect()
            })
            .collect(),
    );

    let mut frame = vec![z];
    frame.extend(b_vecs);
    frame.push(zbar);

    Ok(SplitResult {
        base,
        data: ExtensionData::new(xi, d, Rational::zero(), b0),
        frame,
    })
}

/// Analysis of admissibility over an abelian Euclidean base, where the
/// five equations collapse: with `A = D - ξ`, admissibility holds exactly
/// when `A` is skew and `[A, ξ] = ξ²`.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianAnalysis {
    pub a_skew: bool,
    /// `[A, ξ] = ξ²`.
    pub commutator_reduces_to_square: bool,
    pub admissible: bool,
    /// `admissible == (a_skew ∧ commutator_reduces_to_square)`.
    pub characterization_matches: bool,
    /// Nilpotency facts; present exactly when admissible.
    pub structure: Option<NilpotentStructure>,
}

/// Consequences of admissibility over an abelian base: `ξ` is nilpotent,
/// its kernels filter the base into `A`-invariant orthogonal layers, and
/// the iterated commutators with `A` generate the powers of `ξ`.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotentStructure {
    /// Least `q ≥ 1` with `ξ^q = 0`.
    pub xi_nilpotency_index: usize,
    /// Dimensions of `F_k = ker ξ^{k+1} ∩ (ker ξ^k)⊥`, `k = 0, …, q-1`.
    pub filtration_dims: Vec<usize>,
    /// The `F_k` are pairwise orthogonal and sum to the whole base.
    pub filtration_orthogonal_and_complete: bool,
    /// `A(F_k) ⊆ F_k` for every layer.
    pub a_preserves_filtration: bool,
    /// `[A, ξ^k] = k ξ^{k+1}` for `1 ≤ k ≤ dim`.
    pub iterated_commutator_identity: bool,
    /// `tr(ξ^k) = 0` for `2 ≤ k ≤ dim`.
    pub power_traces_vanish: bool,
    /// `ker A ⊆ ker ξ²`.
    pub ker_a_in_ker_xi_squared: bool,
    /// `q < dim`; only meaningful for `dim ≥ 3`, `None` below that.
    pub index_below_dim: Option<bool>,
}

/// Runs [`is_admissible`] over an abelian positive definite base with
/// `μ = 0` and checks the collapsed two-condition characterization, plus
/// the nilpotency structure of `ξ` when admissible.
pub fn abelian_analysis(
    base: &MetricLieAlgebra,
    data: &ExtensionData,
) -> Result<AbelianAnalysis, DoubleExtError> {
    let n = base.dim();
    data.validate(n)?;
    if !base.algebra().derived_subalgebra().is_zero() {
        return Err(DoubleExtError::Precondition("base must be abelian".into()));
    }
    if !base.is_riemannian() {
        return Err(DoubleExtError::Precondition(
            "base metric must be positive definite".into(),
        ));
    }
    if !data.mu.is_zero() {
        return Err(DoubleExtError::Precondition("μ must be zero".into()));
    }

    let a = &data.d - &data.xi;
    let a_skew = (&a + &base.operator_adjoint(&a)).is_zero();
    let commutator_reduces_to_square = commutator(&a, &data.xi) == data.xi.pow(2);
    let admissible = is_admissible(base, data)?.all_pass();
    let characterization_matches = admissible == (a_skew && commutator_reduces_to_square);

    let structure = admissible.then(|| {
        let q = (1..=n)
            .find(|&q| data.xi.pow(q).is_zero())
            .expect("admissible ξ over an abelian base is nilpotent");

        // Kernel filtration of ξ, orthogonally refined.
        let mut layers = Vec::with_capacity(q);
        for kk in 0..q {
            let big = data.xi.pow(kk + 1).kernel();
            let small_perp = data
                .xi
                .pow(kk)
                .kernel()
                .orthogonal_complement(base.gram())
                .expect("nondegenerate metric");
            layers.push(big.intersect(&small_perp));
        }
        let filtration_dims: Vec<usize> = layers.iter().map(Subspace::dim).collect();

        let mut orthogonal = true;
        for i in 0..layers.len() {
            for j in i + 1..layers.len() {
                for u in layers[i].basis_vectors() {
                    for v in layers[j].basis_vectors() {
                        orthogonal &= base.inner(&u, &v).is_zero();
                    }
                }
            }
        }
        let complete = filtration_dims.iter().sum::<usize>() == n;

        let a_preserves_filtration = layers.iter().all(|f| {
            f.basis_vectors()
                .into_iter()
                .all(|v| f.contains_vector(&a.apply(&v)))
        });

        let iterated_commutator_identity = (1..=n).all(|kk| {
            commutator(&a, &data.xi.pow(kk))
                == data.xi.pow(kk + 1).scale(&Rational::from_int(kk as i64))
        });
        let power_traces_vanish = (2..=n).all(|kk| data.xi.pow(kk).trace().is_zero());

        let xi_sq_kernel = data.xi.pow(2).kernel();
        let ker_a_in_ker_xi_squared = xi_sq_kernel.contains(&a.kernel());

        NilpotentStructure {
            xi_nilpotency_index: q,
            filtration_dims,
            filtration_orthogonal_and_complete: orthogonal && complete,
            a_preserves_filtration,
            iterated_commutator_identity,
            power_traces_vanish,
            ker_a_in_ker_xi_squared,
            index_below_dim: (n >= 3).then_some(q < n),
        }
    });

    Ok(AbelianAnalysis {
        a_skew,
        commutator_reduces_to_square,
        admissible,
        characterization_matches,
        structure,
    })
}

/// Normal forms of admissible `(ξ, D)` pairs over abelian Euclidean bases
/// of dimension ≤ 4 (the vector `b₀` stays a free parameter throughout,
/// and `μ = 0`). Constructors document the genericity constraint that
/// keeps each family distinct; admissibility itself holds for all
/// parameter values.
#[derive(Clone, Debug)]
pub enum AbelianForm {
    /// `ξ = D = 0` in any dimension: the extension is decided by `b₀`.
    Zero { dim: usize },
    /// dim 2, `ξ = D` a single nilpotent jet: `ξe₂ = a e₁`, `a ≠ 0`.
    Nilpotent2 { a: Rational },
    /// dim 2, `ξ = 0`, `D` the rotation with speed `λ > 0`.
    Rotation2 { lambda: Rational },
    /// dim 3, `ξ = D`: `ξe₃ = a e₁ + b e₂`, `(a, b) ≠ 0`.
    Nilpotent3 { a: Rational, b: Rational },
    /// dim 3, `ξ = 0`, `D` a rotation in the `(e₁,e₂)`-plane.
    Rotation3 { lambda: Rational },
    /// dim 4, `ξ = D` mapping the `(e₃,e₄)`-plane onto the
    /// `(e₁,e₂)`-plane by `[[a,b],[c,d]]`; generic when `ad - bc ≠ 0`.
    PlaneToPlane {
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    },
    /// dim 4, `ξ = D`: `ξe₄ = a e₁ + b e₂ + c e₃`, `(a, b, c) ≠ 0`.
    Nilpotent4 { a: Rational, b: Rational, c: Rational },
    /// dim 4, `ξ = 0`, `D` two independent rotations (speeds `a, b ≠ 0`).
    DoubleRotation { a: Rational, b: Rational },
    /// dim 4, `D` couples a double rotation of speed `a ≠ 0` with the
    /// plane-to-plane map `[[b,c],[-c,b]]`, `(b, c) ≠ 0`; `ξ` is the
    /// plane-to-plane part alone.
    RotationWithShear { a: Rational, b: Rational, c: Rational },
    /// dim 4, `D` a rotation of speed `a ≠ 0` in `(e₁,e₂)` plus the jet
    /// `ξe₄ = b e₃`, `b ≠ 0`; `ξ` is the jet alone.
    RotationWithJet { a: Rational, b: Rational },
}

impl AbelianForm {
    pub fn dim(&self) -> usize {
        match self {
            AbelianForm::Zero { dim } => *dim,
            AbelianForm::Nilpotent2 { .. } | AbelianForm::Rotation2 { .. } => 2,
            AbelianForm::Nilpotent3 { .. } | AbelianForm::Rotation3 { .. } => 3,
            _ => 4,
        }
    }

    /// The `(ξ, D)` pair of the form.
    pub fn operators(&self) -> (Matrix, Matrix) {
        use AbelianForm::*;
        let zero = |n: usize| Matrix::zero(n, n);
        match self {
            Zero { dim } => (zero(*dim), zero(*dim)),
            Nilpotent2 { a } => {
                let mut xi = zero(2);
                xi[(0, 1)] = a.clone();
                (xi.clone(), xi)
            }
            Rotation2 { lambda } => {
                let mut d = zero(2);
                d[(0, 1)] = lambda.clone();
                d[(1, 0)] = -lambda.clone();
                (zero(2), d)
            }
            Nilpotent3 { a, b } => {
                let mut xi = zero(3);
                xi[(0, 2)] = a.clone();
                xi[(1, 2)] = b.clone();
                (xi.clone(), xi)
            }
            Rotation3 { lambda } => {
                let mut d = zero(3);
                d[(0, 1)] = lambda.clone();
                d[(1, 0)] = -lambda.clone();
                (zero(3), d)
            }
            PlaneToPlane { a, b, c, d } => {
                let mut xi = zero(4);
                xi[(0, 2)] = a.clone();
                xi[(0, 3)] = b.clone();
                xi[(1, 2)] = c.clone();
                xi[(1, 3)] = d.clone();
                (xi.clone(), xi)
            }
            Nilpotent4 { a, b, c } => {
                let mut xi = zero(4);
                xi[(0, 3)] = a.clone();
                xi[(1, 3)] = b.clone();
                xi[(2, 3)] = c.clone();
                (xi.clone(), xi)
            }
            DoubleRotation { a, b } => {
                let mut d = zero(4);
                d[(0, 1)] = a.clone();
                d[(1, 0)] = -a.clone();
                d[(2, 3)] = b.clone();
                d[(3, 2)] = -b.clone();
                (zero(4), d)
            }
            RotationWithShear { a, b, c } => {
                let mut xi = zero(4);
                xi[(0, 2)] = b.clone();
                xi[(0, 3)] = c.clone();
                xi[(1, 2)] = -c.clone();
                xi[(1, 3)] = b.clone();
                let mut d = xi.clone();
                d[(0, 1)] = a.clone();
                d[(1, 0)] = -a.clone();
                d[(2, 3)] = a.clone();
                d[(3, 2)] = -a.clone();
                (xi, d)
            }
            RotationWithJet { a, b } => {
                let mut xi = zero(4);
                xi[(2, 3)] = b.clone();
                let mut d = zero(4);
                d[(0, 1)] = a.clone();
                d[(1, 0)] = -a.clone();
                d[(2, 3)] = b.clone();
                (xi, d)
            }
        }
    }
}

/// Builds the abelian Euclidean base of the right dimension together with
/// the form's extension data. `b0` defaults to zero.
pub fn family_abelian(
    form: &AbelianForm,
    b0: Option<Vec<Rational>>,
) -> (MetricLieAlgebra, ExtensionData) {
    let n = form.dim();
    let base = MetricLieAlgebra::new(LieAlgebra::abelian(n), Matrix::identity(n))
        .expect("Euclidean metric is nondegenerate");
    let (xi, d) = form.operators();
    let b0 = b0.unwrap_or_else(|| vec![Rational::zero(); n]);
    assert_eq!(b0.len(), n, "b0 length must match the form dimension");
    (base, ExtensionData::new(xi, d, Rational::zero(), b0))
}

/// Admissible family over the smallest non-abelian Riemannian flat base:
/// the plane-motion algebra `[s, f₁] = λf₂`, `[s, f₂] = -λf₁` (`λ > 0`).
/// The data is parametrized by `ξ(s) = a f₁ + b f₂`, a rotation speed `c`
/// appended to `D` in the `f`-plane, and a free component `b₁` of `b₀`
/// along `s`; every parameter choice is admissible.
pub fn family_nonabelian_dim3(
    lambda: &Rational,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    b1: &Rational,
) -> (MetricLieAlgebra, ExtensionData) {
    let base = crate::milnor::build_riemannian_flat(&crate::milnor::MilnorData {
        p: 1,
        u_vectors: vec![vec![lambda.clone()]],
    })
    .expect("λ ≠ 0 builds a valid normal form");
    let mut xi = Matrix::zero(3, 3);
    xi[(1, 0)] = a.clone();
    xi[(2, 0)] = b.clone();
    let mut d = xi.clone();
    d[(1, 2)] = c.clone();
    d[(2, 1)] = -c.clone();
    let cl = &(c * a) / lambda;
    let cb = &(c * b) / lambda;
    let b0 = vec![b1.clone(), cl, cb];
    (base, ExtensionData::new(xi, d, Rational::zero(), b0))
}

/// Admissible family over the `p = 2, r = 1` normal form with rotation
/// speeds `(λ₁, λ₂) ≠ 0`. The generator block of `ξ = D` is
/// `x·[[λ₁λ₂, λ₂²], [-λ₁², -λ₁λ₂]]`, the `f`-rows are `(cλᵢ)`, `(dλᵢ)`,
/// and `D` additionally rotates the `f`-plane with speed `f`; `b₀` has
/// free generator components `(b₁, b₂)` and forced `f`-components
/// `(fc, fd)`. Every parameter choice is admissible.
#[allow(clippy::too_many_arguments)]
pub fn family_nonabelian_dim4(
    lambda1: &Rational,
    lambda2: &Rational,
    x: &Rational,
    c: &Rational,
    d_param: &Rational,
    f: &Rational,
    b1: &Rational,
    b2: &Rational,
) -> (MetricLieAlgebra, ExtensionData) {
    let base = crate::milnor::build_riemannian_flat(&crate::milnor::MilnorData {
        p: 2,
        u_vectors: vec![vec![lambda1.clone(), lambda2.clone()]],
    })
    .expect("(λ₁, λ₂) ≠ 0 builds a valid normal form");
    let mut xi = Matrix::zero(4, 4);
    xi[(0, 0)] = x * &(lambda1 * lambda2);
    xi[(0, 1)] = x * &(lambda2 * lambda2);
    xi[(1, 0)] = -&(x * &(lambda1 * lambda1));
    xi[(1, 1)] = -&(x * &(lambda1 * lambda2));
    xi[(2, 0)] = c * lambda1;
    xi[(2, 1)] = c * lambda2;
    xi[(3, 0)] = d_param * lambda1;
    xi[(3, 1)] = d_param * lambda2;
    let mut dd = xi.clone();
    dd[(2, 3)] = f.clone();
    dd[(3, 2)] = -f.clone();
    let b0 = vec![b1.clone(), b2.clone(), f * c, f * d_param];
    (base, ExtensionData::new(xi, dd, Rational::zero(), b0))
}

/// Componentwise admissibility conditions over a non-abelian Riemannian
/// flat base, relative to the orthogonal splitting `B = 𝔏 ⊕ 𝔇` into the
/// skew-adjoint part and the derived ideal. Writing `F₁ = P_𝔏 ∘ F` and
/// `F₂ = P_𝔇 ∘ F` for `F ∈ {ξ, D}`, the report's conditions hold jointly
/// exactly when `(ξ, D, 0, b₀)` is admissible.
#[derive(Clone, Debug, Serialize)]
pub struct StructuredConditions {
    /// `D₁ = ξ₁ = 0` on `𝔇`, and `ξ₂ = D₂` on `𝔏`.
    pub components_vanish: bool,
    /// `[D₂(a), b] + [a, D₂(b)] = 0` for `a, b ∈ 𝔏`.
    pub killing_pairs_cancel: bool,
    /// `D₂([a, c]) = [D₁(a), c] + [a, D₂(c)]` for `a ∈ 𝔏`, `c ∈ 𝔇`.
    pub mixed_derivation: bool,
    /// `ξ₂([a, c]) = [a, ξ₂(c)]` for `a ∈ 𝔏`, `c ∈ 𝔇`.
    pub mixed_cocycle: bool,
    /// `[D₁, ξ₁] = ξ₁²` on `𝔏`.
    pub killing_commutator: bool,
    /// `[D₂, ξ₂] = ξ₂²` on `𝔇`.
    pub derived_commutator: bool,
    /// `[D₂, ξ₂](a) = ξ₂²(a) + ξ₂(D₁(a)) + [b₀, a]` for `a ∈ 𝔏`.
    pub coupling: bool,
    /// `D₁ - ξ₁` restricted to `𝔏` is skew.
    pub skew_on_killing: bool,
    /// `D₂ - ξ₂` restricted to `𝔇` is skew.
    pub skew_on_derived: bool,
}

impl StructuredConditions {
    pub fn all_pass(&self) -> bool {
        self.components_vanish
            && self.killing_pairs_cancel
            && self.mixed_derivation
            && self.mixed_cocycle
            && self.killing_commutator
            && self.derived_commutator
            && self.coupling
            && self.skew_on_killing
            && self.skew_on_derived
    }
}

/// Evaluates the componentwise conditions. Requires a non-abelian
/// Riemannian flat base with `μ = 0`.
pub fn structured_condition_check(
    base: &MetricLieAlgebra,
    data: &ExtensionData,
) -> Result<StructuredConditions, DoubleExtError> {
    let n = base.dim();
    data.validate(n)?;
    if !data.mu.is_zero() {
        return Err(DoubleExtError::Precondition("μ must be zero".into()));
    }
    let verdict = milnor_check(base).map_err(|e| DoubleExtError::Precondition(e.to_string()))?;
    if !verdict.flat {
        return Err(DoubleExtError::BaseNotFlat);
    }
    if base.algebra().derived_subalgebra().is_zero() {
        return Err(DoubleExtError::Precondition(
            "base must be non-abelian; use the abelian analysis instead".into(),
        ));
    }

    let killing = base.killing_subalgebra();
    let derived = base.algebra().derived_subalgebra();
    // Flatness gives B = 𝔏 ⊕ 𝔇 orthogonally; the projectors are built
    // from the combined basis.
    let mut cols = killing.basis_vectors();
    let k_dim = cols.len();
    cols.extend(derived.basis_vectors());
    let cmat = Matrix::from_columns(cols);
    let cinv = cmat
        .inverse()
        .expect("killing part and derived ideal span the base");
    let mut selector = Matrix::zero(n, n);
    for i in 0..k_dim {
        selector[(i, i)] = Rational::one();
    }
    let p_killing = &(&cmat * &selector) * &cinv;
    let p_derived = &Matrix::identity(n) - &p_killing;

    let xi1 = &p_killing * &data.xi;
    let xi2 = &p_derived * &data.xi;
    let d1 = &p_killing * &data.d;
    let d2 = &p_derived * &data.d;

    let kill_basis = killing.basis_vectors();
    let der_basis = derived.basis_vectors();
    let br = |u: &[Rational], v: &[Rational]| base.algebra().bracket(u, v);

    let components_vanish = der_basis.iter().all(|c| {
        vec_is_zero(&d1.apply(c)) && vec_is_zero(&xi1.apply(c))
    }) && kill_basis
        .iter()
        .all(|a| xi2.apply(a) == d2.apply(a));

    let killing_pairs_cancel = kill_basis.iter().all(|a| {
        kill_basis.iter().all(|b| {
            vec_is_zero(&crate::linalg::vec_add(
                &br(&d2.apply(a), b),
                &br(a, &d2.apply(b)),
            ))
        })
    });

    let mixed_derivation = kill_basis.iter().all(|a| {
        der_basis.iter().all(|c| {
            d2.apply(&br(a, c))
                == crate::linalg::vec_add(&br(&d1.apply(a), c), &br(a, &d2.apply(c)))
        })
    });

    let mixed_cocycle = kill_basis.iter().all(|a| {
        der_basis
            .iter()
            .all(|c| xi2.apply(&br(a, c)) == br(a, &xi2.apply(c)))
    });

    let comm1 = commutator(&d1, &xi1);
    let xi1_sq = &xi1 * &xi1;
    let killing_commutator = kill_basis
        .iter()
        .all(|a| comm1.apply(a) == xi1_sq.apply(a));

    let comm2 = commutator(&d2, &xi2);
    let xi2_sq = &xi2 * &xi2;
    let derived_commutator = der_basis
        .iter()
        .all(|c| comm2.apply(c) == xi2_sq.apply(c));

    let coupling = kill_basis.iter().all(|a| {
        let lhs = comm2.apply(a);
        let rhs = crate::linalg::vec_add(
            &crate::linalg::vec_add(&xi2_sq.apply(a), &xi2.apply(&d1.apply(a))),
            &br(&data.b0, a),
        );
        lhs == rhs
    });

    let skew_pair = |op: &Matrix, basis: &[Vec<Rational>]| {
        basis.iter().all(|u| {
            basis.iter().all(|v| {
                (base.inner(&op.apply(u), v) + base.inner(u, &op.apply(v))).is_zero()
            })
        })
    };
    let skew_on_killing = skew_pair(&(&d1 - &xi1), &kill_basis);
    let skew_on_derived = skew_pair(&(&d2 - &xi2), &der_basis);

    Ok(StructuredConditions {
        components_vanish,
        killing_pairs_cancel,
        mixed_derivation,
        mixed_cocycle,
        killing_commutator,
        derived_commutator,
        coupling,
        skew_on_killing,
        skew_on_derived,
    })
}
