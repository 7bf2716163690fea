//! Metric Lie algebras: a Lie algebra together with a nondegenerate
//! symmetric bilinear form ⟨·,·⟩, and the left-invariant geometry that the
//! pair determines.
//!
//! The Levi-Civita product `uv` is the algebraic avatar of the Levi-Civita
//! connection. It is the unique bilinear product that is torsion-free,
//! `uv - vu = [u, v]`, and metric, `⟨uv, w⟩ + ⟨v, uw⟩ = 0`; it is computed
//! here from the Koszul formula
//!
//! ```text
//! 2⟨uv, w⟩ = ⟨[u,v], w⟩ + ⟨[w,u], v⟩ + ⟨[w,v], u⟩.
//! ```
//!
//! Writing `L_u v = uv = R_v u`, the curvature of the metric is
//! `K(u,v) = L_{[u,v]} - [L_u, L_v]`, and the metric is flat exactly when
//! `K ≡ 0`, which happens exactly when the product is left-symmetric.
//!
//! Flatness is governed by a handful of structural subspaces — the
//! skew-adjoint part `𝔏 = {u : ad_u + ad_u^* = 0}`, the annihilators
//! `N_ℓ = {u : L_u = 0}` and `N_r = {u : R_u = 0}`, the derived ideal and
//! its orthogonal — and [`MetricLieAlgebra::flat_diagnostics`] certifies
//! the relations among them that hold on every flat instance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieAlgebraJson, LieError};
use crate::linalg::{
    commutator, unit_vec, vec_is_zero, LinAlgError, Matrix, Rational, Subspace,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("metric must be a symmetric {0}x{0} matrix")]
    BadMetricShape(usize),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("the metric is not flat")]
    NotFlat,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Lie algebra with a nondegenerate symmetric bilinear form. The full
/// Levi-Civita multiplication table is computed once at construction.
#[derive(Clone)]
pub struct MetricLieAlgebra {
    algebra: LieAlgebra,
    gram: Matrix,
    gram_inv: Matrix,
    // product[i][j] = coefficients of e_i · e_j
    product: Vec<Vec<Vec<Rational>>>,
}

impl MetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, gram: Matrix) -> Result<MetricLieAlgebra, MetricError> {
        let n = algebra.dim();
        if !gram.is_square() || gram.rows() != n || !gram.is_symmetric() {
            return Err(MetricError::BadMetricShape(n));
        }
        let gram_inv = gram.inverse().map_err(|_| MetricError::DegenerateMetric)?;

        // Koszul: solve 2⟨e_i e_j, e_k⟩ = rhs_k for each pair, i.e.
        // e_i e_j = ½ G⁻¹ rhs.
        let half = Rational::new(1, 2);
        let mut product = vec![vec![Vec::new(); n]; n];
        for (i, row) in product.iter_mut().enumerate() {
            let ei = unit_vec(n, i);
            for (j, cell) in row.iter_mut().enumerate() {
                let ej = unit_vec(n, j);
                let rhs: Vec<Rational> = (0..n)
                    .map(|k| {
                        let ek = unit_vec(n, k);
                        let mut t = inner_with(&gram, &algebra.bracket(&ei, &ej), &ek);
                        t += &inner_with(&gram, &algebra.bracket(&ek, &ei), &ej);
                        t += &inner_with(&gram, &algebra.bracket(&ek, &ej), &ei);
                        t
                    })
                    .collect();
                *cell = gram_inv
                    .apply(&rhs)
                    .into_iter()
                    .map(|x| &half * &x)
                    .collect();
            }
        }
        Ok(MetricLieAlgebra {
            algebra,
            gram,
            gram_inv,
            product,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// ⟨u, v⟩
    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        inner_with(&self.gram, u, v)
    }

    /// Levi-Civita product of basis vectors, `e_i · e_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.product[i][j]
    }

    /// Levi-Civita product `u · v` by bilinear expansion.
    pub fn product(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let c = ui * vj;
                if c.is_zero() {
                    continue;
                }
                for (o, p) in out.iter_mut().zip(&self.product[i][j]) {
                    let d = &c * p;
                    *o += &d;
                }
            }
        }
        out
    }

    /// Left multiplication `L_u : v ↦ uv`.
    pub fn left_mult(&self, u: &[Rational]) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(
            (0..n)
                .map(|j| self.product(u, &unit_vec(n, j)))
                .collect(),
        )
    }

    /// Right multiplication `R_u : v ↦ vu`.
    pub fn right_mult(&self, u: &[Rational]) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(
            (0..n)
                .map(|j| self.product(&unit_vec(n, j), u))
                .collect(),
        )
    }

    /// `(L_u, R_u)` for one vector.
    pub fn mult_operators(&self, u: &[Rational]) -> (Matrix, Matrix) {
        (self.left_mult(u), self.right_mult(u))
    }

    /// Metric adjoint `F^* = G⁻¹ Fᵀ G`, so that ⟨Fu, v⟩ = ⟨u, F^*v⟩.
    pub fn operator_adjoint(&self, f: &Matrix) -> Matrix {
        &(&self.gram_inv * &f.transpose()) * &self.gram
    }

    /// Curvature operator `K(u, v) = L_{[u,v]} - [L_u, L_v]`.
    pub fn curvature(&self, u: &[Rational], v: &[Rational]) -> Matrix {
        let lbr = self.left_mult(&self.algebra.bracket(u, v));
        let lu = self.left_mult(u);
        let lv = self.left_mult(v);
        &lbr - &commutator(&lu, &lv)
    }

    /// Flat ⟺ `K(e_i, e_j) = 0` for all basis pairs (bilinearity covers
    /// the rest).
    pub fn is_flat(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                self.curvature(&unit_vec(n, i), &unit_vec(n, j)).is_zero()
            })
        })
    }

    /// Max-norm over basis triples of the left-symmetry defect
    /// `ass(u,v,w) - ass(v,u,w)` where `ass(u,v,w) = (uv)w - u(vw)`.
    /// Zero exactly when the product is left-symmetric, i.e. flat.
    pub fn left_symmetric_defect(&self) -> Rational {
        let n = self.dim();
        let mut worst = Rational::zero();
        for i in 0..n {
            let ei = unit_vec(n, i);
            for j in 0..n {
                let ej = unit_vec(n, j);
                for k in 0..n {
                    let ek = unit_vec(n, k);
                    let ass_ijk = self.associator(&ei, &ej, &ek);
                    let ass_jik = self.associator(&ej, &ei, &ek);
                    for (a, b) in ass_ijk.iter().zip(&ass_jik) {
                        let d = (a - b).abs();
                        if d > worst {
                            worst = d;
                        }
                    }
                }
            }
        }
        worst
    }

    fn associator(&self, u: &[Rational], v: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let uv_w = self.product(&self.product(u, v), w);
        let u_vw = self.product(u, &self.product(v, w));
        crate::linalg::vec_sub(&uv_w, &u_vw)
    }

    /// Mean curvature vector: the unique `H` with ⟨H, u⟩ = tr(ad_u).
    pub fn mean_curvature(&self) -> Vec<Rational> {
        let n = self.dim();
        let traces: Vec<Rational> = (0..n)
            .map(|i| self.algebra.adjoint_basis(i).trace())
            .collect();
        self.gram_inv.apply(&traces)
    }

    /// Kernel of the linear map `u ↦ M(u)` where `M(u) = Σ u_j M_j` for the
    /// given per-basis-vector operators.
    fn operator_kernel(&self, per_basis: &[Matrix]) -> Subspace {
        let n = self.dim();
        let mut stacked = Matrix::zero(n * n, n);
        for (j, m) in per_basis.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    stacked[(r * n + c, j)] = m[(r, c)].clone();
                }
            }
        }
        stacked.kernel()
    }

    /// `𝔏 = {u : ad_u + ad_u^* = 0}`, the vectors whose adjoint action is
    /// skew; equivalently `{u : R_u + R_u^* = 0}`.
    pub fn killing_subalgebra(&self) -> Subspace {
        let n = self.dim();
        let ops: Vec<Matrix> = (0..n)
            .map(|j| {
                let ad = self.algebra.adjoint_basis(j);
                &ad + &self.operator_adjoint(&ad)
            })
            .collect();
        self.operator_kernel(&ops)
    }

    /// `{u : R_u = R_u^*}`, the vectors with self-adjoint right
    /// multiplication. Always equals `(𝔇𝔤)⊥ = [𝔤,𝔤]⊥`.
    pub fn self_adjoint_right_mult(&self) -> Subspace {
        let n = self.dim();
        let ops: Vec<Matrix> = (0..n)
            .map(|j| {
                let r = self.right_mult(&unit_vec(n, j));
                &r - &self.operator_adjoint(&r)
            })
            .collect();
        self.operator_kernel(&ops)
    }

    /// Left annihilator `N_ℓ = {u : L_u = 0}`.
    pub fn left_annihilator(&self) -> Subspace {
        let n = self.dim();
        let ops: Vec<Matrix> = (0..n).map(|j| self.left_mult(&unit_vec(n, j))).collect();
        self.operator_kernel(&ops)
    }

    /// Right annihilator `N_r = {u : R_u = 0}`. Always equals the
    /// orthogonal of the product span.
    pub fn right_annihilator(&self) -> Subspace {
        let n = self.dim();
        let ops: Vec<Matrix> = (0..n).map(|j| self.right_mult(&unit_vec(n, j))).collect();
        self.operator_kernel(&ops)
    }

    /// `𝔤𝔤`: the span of all Levi-Civita products. (This is generally
    /// larger than the derived ideal `[𝔤, 𝔤]`.)
    pub fn product_span(&self) -> Subspace {
        let n = self.dim();
        let mut vs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                vs.push(self.product[i][j].clone());
            }
        }
        Subspace::from_spanning(n, &vs)
    }

    /// Orthogonal of the derived ideal, `[𝔤,𝔤]⊥`.
    pub fn derived_perp(&self) -> Subspace {
        self.algebra
            .derived_subalgebra()
            .orthogonal_complement(&self.gram)
            .expect("construction guarantees a nondegenerate metric")
    }

    /// Sylvester inertia `(n₋, n₀, n₊)` of the metric; `n₀ = 0` always.
    pub fn signature(&self) -> (usize, usize, usize) {
        self.gram
            .signature()
            .expect("construction guarantees a symmetric metric")
    }

    pub fn is_riemannian(&self) -> bool {
        let (m, z, _) = self.signature();
        m == 0 && z == 0
    }

    pub fn is_lorentzian(&self) -> bool {
        let (m, z, _) = self.signature();
        m == 1 && z == 0
    }

    /// Center is nonzero and the metric restricted to it is degenerate.
    pub fn center_degenerate(&self) -> bool {
        let z = self.algebra.center();
        !z.is_zero()
            && !z
                .radical(&self.gram)
                .expect("metric is symmetric")
                .is_zero()
    }

    /// Identities valid for *every* metric Lie algebra: the right
    /// annihilator is the orthogonal of the product span, and the
    /// self-adjoint-right-multiplication space is the orthogonal of the
    /// derived ideal.
    pub fn general_identities(&self) -> GeneralIdentities {
        let product_perp = self
            .product_span()
            .orthogonal_complement(&self.gram)
            .expect("nondegenerate metric");
        GeneralIdentities {
            right_annihilator_is_product_span_perp: self.right_annihilator() == product_perp,
            self_adjoint_right_mult_is_derived_perp: self.self_adjoint_right_mult()
                == self.derived_perp(),
        }
    }

    /// Structural certificate for a flat metric. Errors when the metric is
    /// not flat. Checks run on the canonical bases of the relevant
    /// subspaces; `None` fields mark conditions whose hypothesis (signature
    /// or center shape) does not apply to this instance.
    pub fn flat_diagnostics(&self) -> Result<FlatDiagnostics, MetricError> {
        if !self.is_flat() {
            return Err(MetricError::NotFlat);
        }
        let n = self.dim();
        let killing = self.killing_subalgebra();
        let derived = self.algebra.derived_subalgebra();
        let derived_perp = self.derived_perp();
        let lorentzian = self.is_lorentzian();
        let riemannian = self.is_riemannian();

        // On 𝔏: R_u² = 0 and [R_u, L_u] = 0.
        let mut killing_right_square_zero = true;
        let mut killing_ops_commute = true;
        for u in killing.basis_vectors() {
            let (l, r) = self.mult_operators(&u);
            killing_right_square_zero &= r.pow(2).is_zero();
            killing_ops_commute &= commutator(&r, &l).is_zero();
        }

        // On [𝔤,𝔤]⊥: R_u nilpotent, [R_u, L_u] = R_u², and in Lorentzian
        // signature R_u³ = 0.
        let mut perp_right_nilpotent = true;
        let mut perp_commutator_is_square = true;
        let mut perp_right_cube_zero = true;
        for u in derived_perp.basis_vectors() {
            let (l, r) = self.mult_operators(&u);
            perp_right_nilpotent &= r.pow(n).is_zero();
            perp_commutator_is_square &= commutator(&r, &l) == r.pow(2);
            perp_right_cube_zero &= r.pow(3).is_zero();
        }

        // u·u = 0 on both distinguished subspaces.
        let mut self_product_zero = true;
        for u in killing
            .basis_vectors()
            .into_iter()
            .chain(derived_perp.basis_vectors())
        {
            self_product_zero &= vec_is_zero(&self.product(&u, &u));
        }

        // H ∈ [𝔤,𝔤] ∩ [𝔤,𝔤]⊥.
        let h = self.mean_curvature();
        let mean_curvature_in_derived_and_perp =
            derived.contains_vector(&h) && derived_perp.contains_vector(&h);

        let product_perp = self
            .product_span()
            .orthogonal_complement(&self.gram)
            .expect("nondegenerate metric");
        let right_ann = self.right_annihilator();

        // Lorentzian flat: 𝔏 = N_r = (𝔤𝔤)⊥.
        let lorentzian_killing_chain = lorentzian
            .then(|| killing == right_ann && right_ann == product_perp);

        // Riemannian flat: 𝔏 = [𝔤,𝔤]⊥ = N_r = (𝔤𝔤)⊥.
        let riemannian_four_way = riemannian.then(|| {
            killing == derived_perp && killing == right_ann && killing == product_perp
        });

        // Degenerate center: Z ∩ [𝔤,𝔤] ⊆ Z ∩ Z⊥ ⊆ N_ℓ ∩ N_r.
        let degenerate_center_chain = self.center_degenerate().then(|| {
            let z = self.algebra.center();
            let z_rad = z.radical(&self.gram).expect("metric is symmetric");
            let left_ann = self.left_annihilator();
            z_rad.contains(&z.intersect(&derived))
                && left_ann.intersect(&right_ann).contains(&z_rad)
        });

        Ok(FlatDiagnostics {
            killing_right_square_zero,
            killing_ops_commute,
            perp_right_nilpotent,
            perp_commutator_is_square,
            perp_right_cube_zero: lorentzian.then_some(perp_right_cube_zero),
            self_product_zero,
            mean_curvature_in_derived_and_perp,
            lorentzian_killing_chain,
            riemannian_four_way,
            degenerate_center_chain,
        })
    }

    /// Rewrites the algebra and metric in a new basis, given as vectors in
    /// the current coordinates.
    pub fn change_basis(&self, new_basis: &[Vec<Rational>]) -> Result<MetricLieAlgebra, MetricError> {
        let n = self.dim();
        assert_eq!(new_basis.len(), n, "need exactly dim basis vectors");
        let p = Matrix::from_columns(new_basis.to_vec());
        let p_inv = p.inverse().map_err(|_| LinAlgError::Singular)?;
        let gram = &(&p.transpose() * &self.gram) * &p;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let br = self.algebra.bracket(&new_basis[i], &new_basis[j]);
                brackets.push((i, j, p_inv.apply(&br)));
            }
        }
        let names = (1..=n).map(|k| format!("b{k}")).collect();
        let algebra = LieAlgebra::new(n, names, brackets)?;
        MetricLieAlgebra::new(algebra, gram)
    }

    /// Structure-constant and metric equality; basis names are ignored.
    pub fn same_structure(&self, other: &MetricLieAlgebra) -> bool {
        self.algebra.same_structure(&other.algebra) && self.gram == other.gram
    }
}

fn inner_with(gram: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    gram.apply(v).iter().zip(u).map(|(a, b)| a * b).sum()
}

/// See [`MetricLieAlgebra::general_identities`].
#[derive(Clone, Debug, Serialize)]
pub struct GeneralIdentities {
    pub right_annihilator_is_product_span_perp: bool,
    pub self_adjoint_right_mult_is_derived_perp: bool,
}

impl GeneralIdentities {
    pub fn all_hold(&self) -> bool {
        self.right_annihilator_is_product_span_perp
            && self.self_adjoint_right_mult_is_derived_perp
    }
}

/// See [`MetricLieAlgebra::flat_diagnostics`]. `None` = not applicable.
#[derive(Clone, Debug, Serialize)]
pub struct FlatDiagnostics {
    pub killing_right_square_zero: bool,
    pub killing_ops_commute: bool,
    pub perp_right_nilpotent: bool,
    pub perp_commutator_is_square: bool,
    pub perp_right_cube_zero: Option<bool>,
    pub self_product_zero: bool,
    pub mean_curvature_in_derived_and_perp: bool,
    pub lorentzian_killing_chain: Option<bool>,
    pub riemannian_four_way: Option<bool>,
    pub degenerate_center_chain: Option<bool>,
}

impl FlatDiagnostics {
    pub fn all_pass(&self) -> bool {
        self.killing_right_square_zero
            && self.killing_ops_commute
            && self.perp_right_nilpotent
            && self.perp_commutator_is_square
            && self.perp_right_cube_zero.unwrap_or(true)
            && self.self_product_zero
            && self.mean_curvature_in_derived_and_perp
            && self.lorentzian_killing_chain.unwrap_or(true)
            && self.riemannian_four_way.unwrap_or(true)
            && self.degenerate_center_chain.unwrap_or(true)
    }
}

/// Interchange form of a metric Lie algebra: the plain algebra plus an
/// n×n `metric` block.
#[derive(Serialize, Deserialize)]
pub struct MetricLieAlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<crate::lie::BracketJson>,
    pub metric: Matrix,
}

impl From<&MetricLieAlgebra> for MetricLieAlgebraJson {
    fn from(m: &MetricLieAlgebra) -> MetricLieAlgebraJson {
        let alg = LieAlgebraJson::from(&m.algebra);
        MetricLieAlgebraJson {
            dim: alg.dim,
            basis: alg.basis,
            brackets: alg.brackets,
            metric: m.gram.clone(),
        }
    }
}

impl TryFrom<MetricLieAlgebraJson> for MetricLieAlgebra {
    type Error = MetricError;

    fn try_from(json: MetricLieAlgebraJson) -> Result<MetricLieAlgebra, MetricError> {
        let algebra = LieAlgebra::try_from(LieAlgebraJson {
            dim: json.dim,
            basis: json.basis,
            brackets: json.brackets,
        })?;
        MetricLieAlgebra::new(algebra, json.metric)
    }
}

impl Serialize for MetricLieAlgebra {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MetricLieAlgebraJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MetricLieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = MetricLieAlgebraJson::deserialize(deserializer)?;
        MetricLieAlgebra::try_from(json).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for MetricLieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Metric{:?} with gram {:?}", self.algebra, self.gram)
    }
}
