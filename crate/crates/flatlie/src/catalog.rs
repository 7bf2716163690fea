//! Catalog of Lorentzian flat metric Lie algebras with nonzero degenerate
//! center, in dimensions 3 through 6.
//!
//! Each entry is a parametric family: brackets and metric depend on a few
//! rational parameters subject to the listed constraints (positivity,
//! nondegeneracy bounds, points on the rational unit circle standing in
//! for angles). [`verify_entry`] instantiates a family at sampled
//! parameter values and machine-checks, in exact arithmetic, that every
//! instance is flat, Lorentzian, unimodular, has a degenerate center,
//! carries the advertised solvability/nilpotency label, and satisfies the
//! structural identities of [`crate::metric::FlatDiagnostics`].
//!
//! Labels follow the convention: *k-solvable* means the derived series
//! reaches zero in exactly `k` steps, *k-nilpotent* means the lower
//! central series does (nilpotency class `k`). The two scales overlap —
//! one six-dimensional family here is both 2-solvable and 3-nilpotent,
//! and its entry is labeled by the solvable reading.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::lie::{ClassLabels, LieAlgebra, LieError};
use crate::linalg::{Matrix, Rational};
use crate::metric::{MetricError, MetricLieAlgebra};

pub type ParamMap = BTreeMap<String, Rational>;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("no catalog entry with id {0:?}")]
    UnknownEntry(String),
    #[error("missing parameter {0:?}")]
    MissingParameter(&'static str),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Structural label of a family, on the convention documented at module
/// level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    Heisenberg,
    Nilpotent(usize),
    Solvable(usize),
}

impl ClassLabel {
    pub fn matches(&self, labels: &ClassLabels, dim: usize) -> bool {
        match self {
            ClassLabel::Heisenberg => dim == 3 && labels.nilpotency_class == Some(2),
            ClassLabel::Nilpotent(k) => labels.nilpotency_class == Some(*k),
            ClassLabel::Solvable(k) => labels.solvable_length == Some(*k),
        }
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassLabel::Heisenberg => write!(f, "Heisenberg"),
            ClassLabel::Nilpotent(k) => write!(f, "{k}-nilpotent"),
            ClassLabel::Solvable(k) => write!(f, "{k}-solvable"),
        }
    }
}

/// How a parameter is sampled and which constraint it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParamRole {
    /// Strictly positive.
    Positive,
    /// Nonzero, either sign.
    Nonzero,
    /// Unconstrained.
    Free,
    /// Cosine of an angle; paired with the `CircleSin` parameter of the
    /// same entry, the two must satisfy `cos² + sin² = 1`.
    CircleCos,
    /// Sine companion of `CircleCos`.
    CircleSin,
    /// Computed from the other parameters by the entry's constraint;
    /// never sampled directly.
    Derived,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub role: ParamRole,
}

const fn p(name: &'static str, role: ParamRole) -> ParamSpec {
    ParamSpec { name, role }
}

/// One parametric family of the catalog.
pub struct CatalogEntry {
    pub id: &'static str,
    pub dim: usize,
    pub label: ClassLabel,
    pub params: &'static [ParamSpec],
    /// Mathematical remark worth surfacing alongside the entry.
    pub note: Option<&'static str>,
    builder: fn(&ParamMap) -> Result<MetricLieAlgebra, CatalogError>,
    /// Enforces derived-parameter constraints on sampled maps.
    fixup: Option<fn(&mut ParamMap)>,
}

const POSITIVE_GRID: [(i64, i64); 3] = [(1, 1), (2, 1), (1, 2)];
const FREE_GRID: [(i64, i64); 5] = [(1, 1), (-1, 1), (0, 1), (2, 1), (1, 2)];
const NONZERO_GRID: [(i64, i64); 4] = [(1, 1), (2, 1), (1, 2), (-1, 1)];
/// Rational points on the unit circle with nonzero sine, standing in for
/// the angles the families depend on.
const CIRCLE_GRID: [((i64, i64), (i64, i64)); 3] =
    [((3, 5), (4, 5)), ((5, 13), (12, 13)), ((4, 5), (3, 5))];

impl CatalogEntry {
    pub fn build(&self, params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
        (self.builder)(params)
    }

    /// Deterministic parameter sample of size `count`: sample `s` draws
    /// each parameter from its role's grid, staggered by position so
    /// consecutive samples move every parameter.
    pub fn samples(&self, count: usize) -> Vec<ParamMap> {
        (0..count)
            .map(|s| {
                let mut map = ParamMap::new();
                let circle = CIRCLE_GRID[s % CIRCLE_GRID.len()];
                for (i, spec) in self.params.iter().enumerate() {
                    let (n, d) = match spec.role {
                        ParamRole::Positive => POSITIVE_GRID[(s + i) % POSITIVE_GRID.len()],
                        ParamRole::Nonzero => NONZERO_GRID[(s + i) % NONZERO_GRID.len()],
                        ParamRole::Free => FREE_GRID[(s + i) % FREE_GRID.len()],
                        ParamRole::CircleCos => circle.0,
                        ParamRole::CircleSin => circle.1,
                        ParamRole::Derived => continue,
                    };
                    map.insert(spec.name.to_string(), Rational::new(n, d));
                }
                if let Some(f) = self.fixup {
                    f(&mut map);
                }
                map
            })
            .collect()
    }
}

/// All sixteen families, ordered by dimension.
pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        id: "dim3-heisenberg",
        dim: 3,
        label: ClassLabel::Heisenberg,
        params: &[p("alpha", ParamRole::Positive)],
        note: None,
        builder: build_dim3_heisenberg,
        fixup: None,
    },
    CatalogEntry {
        id: "dim4-2nilpotent",
        dim: 4,
        label: ClassLabel::Nilpotent(2),
        params: &[p("alpha", ParamRole::Positive), p("a", ParamRole::Free)],
        note: None,
        builder: build_dim4_2nilpotent,
        fixup: None,
    },
    CatalogEntry {
        id: "dim4-3nilpotent",
        dim: 4,
        label: ClassLabel::Nilpotent(3),
        params: &[
            p("alpha", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("beta", ParamRole::Free),
        ],
        note: None,
        builder: build_dim4_3nilpotent,
        fixup: None,
    },
    CatalogEntry {
        id: "dim4-2solvable",
        dim: 4,
        label: ClassLabel::Solvable(2),
        params: &[
            p("alpha", ParamRole::Nonzero),
            p("beta", ParamRole::Free),
            p("gamma", ParamRole::Free),
        ],
        note: None,
        builder: build_dim4_2solvable,
        fixup: None,
    },
    CatalogEntry {
        id: "dim5-2nilpotent",
        dim: 5,
        label: ClassLabel::Nilpotent(2),
        params: &[
            p("alpha", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
        ],
        note: None,
        builder: build_dim5_2nilpotent,
        fixup: None,
    },
    CatalogEntry {
        id: "dim5-3nilpotent",
        dim: 5,
        label: ClassLabel::Nilpotent(3),
        params: &[
            p("alpha", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
            p("c", ParamRole::Free),
            p("beta", ParamRole::Free),
        ],
        note: Some(
            "αc² < 1 keeps the metric Lorentzian; at αc² = 1 it degenerates, \
             beyond the signature is (2, 0, 3)",
        ),
        builder: build_dim5_3nilpotent,
        fixup: Some(fixup_dim5_3nilpotent),
    },
    CatalogEntry {
        id: "dim5-2solvable-a",
        dim: 5,
        label: ClassLabel::Solvable(2),
        params: &[
            p("alpha", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("beta", ParamRole::Free),
            p("gamma", ParamRole::Free),
        ],
        note: None,
        builder: build_dim5_2solvable_a,
        fixup: None,
    },
    CatalogEntry {
        id: "dim5-2solvable-b",
        dim: 5,
        label: ClassLabel::Solvable(2),
        params: &[
            p("alpha", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
            p("c", ParamRole::Nonzero),
            p("d", ParamRole::Free),
        ],
        note: Some(
            "c ≠ 0 is exactly degeneracy of the center: at c = 0 the \
             vector z̄ - de₁ + be₂ - ae₃ is central and the center is \
             nondegenerate",
        ),
        builder: build_dim5_2solvable_b,
        fixup: None,
    },
    CatalogEntry {
        id: "dim6-2nilpotent",
        dim: 6,
        label: ClassLabel::Nilpotent(2),
        params: &[
            p("alpha", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
            p("c", ParamRole::Free),
        ],
        note: None,
        builder: build_dim6_2nilpotent,
        fixup: None,
    },
    CatalogEntry {
        id: "dim6-2solvable-a",
        dim: 6,
        label: ClassLabel::Solvable(2),
        params: &[
            p("alpha", ParamRole::Nonzero),
            p("a", ParamRole::Nonzero),
            p("beta", ParamRole::Free),
            p("gamma", ParamRole::Free),
            p("mu", ParamRole::Free),
            p("nu", ParamRole::Free),
        ],
        note: None,
        builder: build_dim6_2solvable_a,
        fixup: None,
    },
    CatalogEntry {
        id: "dim6-2solvable-b",
        dim: 6,
        label: ClassLabel::Solvable(2),
        params: &[
            p("alpha", ParamRole::Nonzero),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
            p("beta", ParamRole::Free),
            p("gamma", ParamRole::Free),
        ],
        note: None,
        builder: build_dim6_2solvable_b,
        fixup: None,
    },
    CatalogEntry {
        id: "dim6-2solvable-c",
        dim: 6,
        label: ClassLabel::Solvable(2),
        params: &[
            p("rho1", ParamRole::Positive),
            p("rho2", ParamRole::Positive),
            p("cos_delta", ParamRole::CircleCos),
            p("sin_delta", ParamRole::CircleSin),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
            p("beta", ParamRole::Free),
            p("gamma", ParamRole::Free),
        ],
        note: Some(
            "also nilpotent of class 3; sin δ ≠ 0 keeps the metric nondegenerate",
        ),
        builder: build_dim6_2solvable_c,
        fixup: None,
    },
    CatalogEntry {
        id: "dim6-3nilpotent",
        dim: 6,
        label: ClassLabel::Nilpotent(3),
        params: &[
            p("alpha", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
            p("c", ParamRole::Free),
            p("d", ParamRole::Free),
            p("e", ParamRole::Free),
            p("beta", ParamRole::Free),
        ],
        note: Some(
            "α(d² + e²) < 1 keeps the metric Lorentzian; at α(d² + e²) = 1 \
             it degenerates, beyond the signature is (2, 0, 4)",
        ),
        builder: build_dim6_3nilpotent,
        fixup: Some(fixup_dim6_3nilpotent),
    },
    CatalogEntry {
        id: "dim6-2solvable-d",
        dim: 6,
        label: ClassLabel::Solvable(2),
        params: &[
            p("alpha", ParamRole::Positive),
            p("beta", ParamRole::Positive),
            p("a", ParamRole::Free),
            p("gamma", ParamRole::Free),
            p("mu", ParamRole::Free),
            p("nu", ParamRole::Free),
        ],
        note: None,
        builder: build_dim6_2solvable_d,
        fixup: None,
    },
    CatalogEntry {
        id: "dim6-3solvable",
        dim: 6,
        label: ClassLabel::Solvable(3),
        params: &[
            p("rho", ParamRole::Positive),
            p("cos_omega", ParamRole::CircleCos),
            p("sin_omega", ParamRole::CircleSin),
            p("alpha", ParamRole::Free),
            p("beta", ParamRole::Free),
            p("gamma", ParamRole::Free),
            p("mu", ParamRole::Free),
        ],
        note: None,
        builder: build_dim6_3solvable,
        fixup: None,
    },
    CatalogEntry {
        id: "dim6-2solvable-e",
        dim: 6,
        label: ClassLabel::Solvable(2),
        params: &[
            p("alpha", ParamRole::Positive),
            p("gamma", ParamRole::Free),
            p("beta", ParamRole::Derived),
            p("a", ParamRole::Free),
            p("b", ParamRole::Free),
            p("c", ParamRole::Free),
            p("d", ParamRole::Free),
            p("e", ParamRole::Free),
            p("f", ParamRole::Free),
        ],
        note: Some(
            "β is determined by αβ - γ² = 1; (a, d, e) ≠ (0, 0, 0) is \
             exactly degeneracy of the center — when all three vanish, \
             z̄ - fe₁ + ce₃ - be₄ is central and the center is nondegenerate",
        ),
        builder: build_dim6_2solvable_e,
        fixup: Some(fixup_dim6_2solvable_e),
    },
];

pub fn find(id: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
}

fn getp(params: &ParamMap, name: &'static str) -> Result<Rational, CatalogError> {
    params
        .get(name)
        .cloned()
        .ok_or(CatalogError::MissingParameter(name))
}

fn positive(params: &ParamMap, name: &'static str) -> Result<Rational, CatalogError> {
    let v = getp(params, name)?;
    if !v.is_positive() {
        return Err(CatalogError::BadParameter(format!(
            "{name} must be positive, got {v}"
        )));
    }
    Ok(v)
}

fn nonzero(params: &ParamMap, name: &'static str) -> Result<Rational, CatalogError> {
    let v = getp(params, name)?;
    if v.is_zero() {
        return Err(CatalogError::BadParameter(format!("{name} must be nonzero")));
    }
    Ok(v)
}

fn circle_pair(
    params: &ParamMap,
    cos_name: &'static str,
    sin_name: &'static str,
) -> Result<(Rational, Rational), CatalogError> {
    let c = getp(params, cos_name)?;
    let s = getp(params, sin_name)?;
    if !(&(&c * &c) + &(&s * &s)).is_one() {
        return Err(CatalogError::BadParameter(format!(
            "({cos_name}, {sin_name}) must lie on the unit circle"
        )));
    }
    Ok((c, s))
}

/// Basis names `z, zbar, e1, …` shared by every entry.
fn extension_names(dim: usize) -> Vec<String> {
    let mut names = vec!["z".to_string(), "zbar".to_string()];
    names.extend((1..=dim - 2).map(|k| format!("e{k}")));
    names
}

fn sparse(dim: usize, entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (i, c) in entries {
        v[*i] = c.clone();
    }
    v
}

/// Sets the symmetric pair of off-diagonal metric entries.
fn set2(g: &mut Matrix, i: usize, j: usize, v: Rational) {
    g[(j, i)] = v.clone();
    g[(i, j)] = v;
}

fn assemble(
    dim: usize,
    brackets: Vec<(usize, usize, Vec<Rational>)>,
    gram: Matrix,
) -> Result<MetricLieAlgebra, CatalogError> {
    let algebra = LieAlgebra::new(dim, extension_names(dim), brackets)?;
    Ok(MetricLieAlgebra::new(algebra, gram)?)
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

// Basis indices throughout: z = 0, z̄ = 1, eₖ = k + 1.

fn build_dim3_heisenberg(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let brackets = vec![(1, 2, sparse(3, &[(0, r(1))]))]; // [z̄, e₁] = z
    let mut g = Matrix::zero(3, 3);
    set2(&mut g, 0, 1, alpha);
    g[(2, 2)] = r(1);
    assemble(3, brackets, g)
}

fn build_dim4_2nilpotent(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let brackets = vec![(1, 2, sparse(4, &[(0, r(1))]))]; // [z̄, e₁] = z
    let mut g = Matrix::zero(4, 4);
    set2(&mut g, 0, 1, alpha);
    g[(2, 2)] = r(1);
    set2(&mut g, 2, 3, a.clone());
    g[(3, 3)] = &r(1) + &(&a * &a);
    assemble(4, brackets, g)
}

fn build_dim4_3nilpotent(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let beta = getp(params, "beta")?;
    let brackets = vec![
        (1, 2, sparse(4, &[(0, a)])),     // [z̄, e₁] = a z
        (1, 3, sparse(4, &[(2, r(1))])),  // [z̄, e₂] = e₁
        (2, 3, sparse(4, &[(0, r(-1))])), // [e₁, e₂] = -z
    ];
    let mut g = Matrix::zero(4, 4);
    set2(&mut g, 0, 1, alpha.clone());
    set2(&mut g, 1, 2, beta);
    g[(2, 2)] = alpha;
    g[(3, 3)] = r(1);
    assemble(4, brackets, g)
}

fn build_dim4_2solvable(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = nonzero(params, "alpha")?;
    let beta = getp(params, "beta")?;
    let gamma = getp(params, "gamma")?;
    let brackets = vec![
        (1, 2, sparse(4, &[(3, r(1))])),  // [z̄, e₁] = e₂
        (1, 3, sparse(4, &[(2, r(-1))])), // [z̄, e₂] = -e₁
    ];
    let alpha_sq = &alpha * &alpha;
    let mut g = Matrix::zero(4, 4);
    set2(&mut g, 0, 1, alpha.recip());
    set2(&mut g, 1, 2, beta);
    set2(&mut g, 1, 3, gamma);
    g[(2, 2)] = alpha_sq.clone();
    g[(3, 3)] = alpha_sq;
    assemble(4, brackets, g)
}

fn build_dim5_2nilpotent(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let brackets = vec![(1, 2, sparse(5, &[(0, r(1))]))]; // [z̄, e₁] = z
    let mut g = Matrix::zero(5, 5);
    set2(&mut g, 0, 1, alpha);
    g[(2, 2)] = r(1);
    set2(&mut g, 2, 3, a.clone());
    set2(&mut g, 2, 4, b.clone());
    g[(3, 3)] = &r(1) + &(&a * &a);
    set2(&mut g, 3, 4, &a * &b);
    g[(4, 4)] = &r(1) + &(&b * &b);
    assemble(5, brackets, g)
}

fn fixup_dim5_3nilpotent(map: &mut ParamMap) {
    let alpha = map["alpha"].clone();
    let mut c = map["c"].clone();
    while &alpha * &(&c * &c) >= Rational::one() {
        c = &c / &r(2);
    }
    map.insert("c".to_string(), c);
}

fn build_dim5_3nilpotent(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let c = getp(params, "c")?;
    let beta = getp(params, "beta")?;
    if &alpha * &(&c * &c) > Rational::one() {
        return Err(CatalogError::BadParameter(
            "αc² > 1 leaves the Lorentzian signature range".into(),
        ));
    }
    let brackets = vec![
        (1, 2, sparse(5, &[(0, a)])),      // [z̄, e₁] = a z
        (1, 3, sparse(5, &[(0, b)])),      // [z̄, e₂] = b z
        (1, 4, sparse(5, &[(2, r(1))])),   // [z̄, e₃] = e₁
        (2, 4, sparse(5, &[(0, r(-1))])),  // [e₁, e₃] = -z
        (3, 4, sparse(5, &[(0, -&c)])),    // [e₂, e₃] = -c z
    ];
    let mut g = Matrix::zero(5, 5);
    set2(&mut g, 0, 1, alpha.clone());
    set2(&mut g, 1, 2, beta);
    g[(2, 2)] = alpha.clone();
    set2(&mut g, 2, 3, &c * &alpha);
    g[(3, 3)] = r(1);
    g[(4, 4)] = r(1);
    // αc² = 1 would make this gram singular; the construction rejects it.
    assemble(5, brackets, g)
}

fn build_dim5_2solvable_a(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let beta = getp(params, "beta")?;
    let gamma = getp(params, "gamma")?;
    let brackets = vec![
        (1, 2, sparse(5, &[(3, r(1))])),  // [z̄, e₁] = e₂
        (1, 3, sparse(5, &[(2, r(-1))])), // [z̄, e₂] = -e₁
        (1, 4, sparse(5, &[(0, a)])),     // [z̄, e₃] = a z
    ];
    let alpha_sq = &alpha * &alpha;
    let mut g = Matrix::zero(5, 5);
    set2(&mut g, 0, 1, alpha.recip());
    set2(&mut g, 1, 2, beta);
    set2(&mut g, 1, 3, gamma);
    g[(2, 2)] = alpha_sq.clone();
    g[(3, 3)] = alpha_sq;
    g[(4, 4)] = r(1);
    assemble(5, brackets, g)
}

fn build_dim5_2solvable_b(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let c = nonzero(params, "c")?;
    let d = getp(params, "d")?;
    let brackets = vec![
        // [z̄, e₁] = a e₂ + b e₃ + c z
        (1, 2, sparse(5, &[(3, a.clone()), (4, b.clone()), (0, c)])),
        (1, 3, sparse(5, &[(4, d.clone())])),  // [z̄, e₂] = d e₃
        (1, 4, sparse(5, &[(3, -&d)])),        // [z̄, e₃] = -d e₂
        (2, 3, sparse(5, &[(4, r(1))])),       // [e₁, e₂] = e₃
        (2, 4, sparse(5, &[(3, r(-1))])),      // [e₁, e₃] = -e₂
    ];
    let mut g = Matrix::zero(5, 5);
    set2(&mut g, 0, 1, r(1));
    set2(&mut g, 1, 3, -&(&alpha * &b));
    set2(&mut g, 1, 4, &alpha * &a);
    g[(2, 2)] = alpha.recip();
    g[(3, 3)] = alpha.clone();
    g[(4, 4)] = alpha;
    assemble(5, brackets, g)
}

fn build_dim6_2nilpotent(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let c = getp(params, "c")?;
    let brackets = vec![(1, 2, sparse(6, &[(0, r(1))]))]; // [z̄, e₁] = z
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, alpha);
    g[(2, 2)] = r(1);
    set2(&mut g, 2, 3, a.clone());
    set2(&mut g, 2, 4, b.clone());
    set2(&mut g, 2, 5, c.clone());
    g[(3, 3)] = &r(1) + &(&a * &a);
    set2(&mut g, 3, 4, &a * &b);
    set2(&mut g, 3, 5, &a * &c);
    g[(4, 4)] = &r(1) + &(&b * &b);
    set2(&mut g, 4, 5, &b * &c);
    g[(5, 5)] = &r(1) + &(&c * &c);
    assemble(6, brackets, g)
}

fn build_dim6_2solvable_a(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = nonzero(params, "alpha")?;
    let a = nonzero(params, "a")?;
    let beta = getp(params, "beta")?;
    let gamma = getp(params, "gamma")?;
    let mu = getp(params, "mu")?;
    let nu = getp(params, "nu")?;
    let brackets = vec![
        (1, 2, sparse(6, &[(3, r(1))])),  // [z̄, e₁] = e₂
        (1, 3, sparse(6, &[(2, r(-1))])), // [z̄, e₂] = -e₁
        (1, 4, sparse(6, &[(5, a.clone())])), // [z̄, e₃] = a e₄
        (1, 5, sparse(6, &[(4, -&a)])),   // [z̄, e₄] = -a e₃
    ];
    let alpha_sq = &alpha * &alpha;
    let aa = &a * &a;
    let scaled = &alpha_sq * &aa;
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, alpha.recip());
    set2(&mut g, 1, 2, beta);
    set2(&mut g, 1, 3, gamma);
    set2(&mut g, 1, 4, mu);
    set2(&mut g, 1, 5, nu);
    g[(2, 2)] = alpha_sq.clone();
    g[(3, 3)] = alpha_sq;
    g[(4, 4)] = scaled.clone();
    g[(5, 5)] = scaled;
    assemble(6, brackets, g)
}

fn build_dim6_2solvable_b(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = nonzero(params, "alpha")?;
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let beta = getp(params, "beta")?;
    let gamma = getp(params, "gamma")?;
    let brackets = vec![
        (1, 2, sparse(6, &[(3, r(1))])),  // [z̄, e₁] = e₂
        (1, 3, sparse(6, &[(2, r(-1))])), // [z̄, e₂] = -e₁
        (1, 4, sparse(6, &[(0, a)])),     // [z̄, e₃] = a z
        (1, 5, sparse(6, &[(0, b)])),     // [z̄, e₄] = b z
    ];
    let alpha_sq = &alpha * &alpha;
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, alpha.recip());
    set2(&mut g, 1, 2, beta);
    set2(&mut g, 1, 3, gamma);
    g[(2, 2)] = alpha_sq.clone();
    g[(3, 3)] = alpha_sq;
    g[(4, 4)] = r(1);
    g[(5, 5)] = r(1);
    assemble(6, brackets, g)
}

fn build_dim6_2solvable_c(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let rho1 = positive(params, "rho1")?;
    let rho2 = positive(params, "rho2")?;
    let (cos_d, sin_d) = circle_pair(params, "cos_delta", "sin_delta")?;
    if sin_d.is_zero() {
        return Err(CatalogError::BadParameter(
            "sin_delta must be nonzero to keep the metric nondegenerate".into(),
        ));
    }
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let beta = getp(params, "beta")?;
    let gamma = getp(params, "gamma")?;
    // μ = ρ₁ρ₂ cos δ couples the two isotropic rotation planes.
    let m = &(&rho1 * &rho2) * &cos_d;
    let rho1_sq = &rho1 * &rho1;
    let rho2_sq = &rho2 * &rho2;
    let brackets = vec![
        (1, 2, sparse(6, &[(0, a)])),        // [z̄, e₁] = a z
        (1, 3, sparse(6, &[(0, b)])),        // [z̄, e₂] = b z
        (1, 4, sparse(6, &[(2, r(1))])),     // [z̄, e₃] = e₁
        (1, 5, sparse(6, &[(3, r(1))])),     // [z̄, e₄] = e₂
        (2, 4, sparse(6, &[(0, -&rho1_sq)])), // [e₁, e₃] = -ρ₁² z
        (2, 5, sparse(6, &[(0, -&m)])),      // [e₁, e₄] = -μ z
        (3, 4, sparse(6, &[(0, -&m)])),      // [e₂, e₃] = -μ z
        (3, 5, sparse(6, &[(0, -&rho2_sq)])), // [e₂, e₄] = -ρ₂² z
    ];
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, r(1));
    set2(&mut g, 1, 2, beta);
    set2(&mut g, 1, 3, gamma);
    g[(2, 2)] = rho1_sq;
    set2(&mut g, 2, 3, m);
    g[(3, 3)] = rho2_sq;
    g[(4, 4)] = r(1);
    g[(5, 5)] = r(1);
    assemble(6, brackets, g)
}

fn fixup_dim6_3nilpotent(map: &mut ParamMap) {
    let alpha = map["alpha"].clone();
    let mut d = map["d"].clone();
    let mut e = map["e"].clone();
    while &alpha * &(&(&d * &d) + &(&e * &e)) >= Rational::one() {
        d = &d / &r(2);
        e = &e / &r(2);
    }
    map.insert("d".to_string(), d);
    map.insert("e".to_string(), e);
}

fn build_dim6_3nilpotent(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let c = getp(params, "c")?;
    let d = getp(params, "d")?;
    let e = getp(params, "e")?;
    let beta = getp(params, "beta")?;
    if &alpha * &(&(&d * &d) + &(&e * &e)) > Rational::one() {
        return Err(CatalogError::BadParameter(
            "α(d² + e²) > 1 leaves the Lorentzian signature range".into(),
        ));
    }
    let brackets = vec![
        (1, 2, sparse(6, &[(0, a)])),     // [z̄, e₁] = a z
        (1, 3, sparse(6, &[(0, b)])),     // [z̄, e₂] = b z
        (1, 4, sparse(6, &[(0, c)])),     // [z̄, e₃] = c z
        (1, 5, sparse(6, &[(2, r(1))])),  // [z̄, e₄] = e₁
        (2, 5, sparse(6, &[(0, r(-1))])), // [e₁, e₄] = -z
        (3, 5, sparse(6, &[(0, -&d)])),   // [e₂, e₄] = -d z
        (4, 5, sparse(6, &[(0, -&e)])),   // [e₃, e₄] = -e z
    ];
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, alpha.clone());
    set2(&mut g, 1, 2, beta);
    g[(2, 2)] = alpha.clone();
    set2(&mut g, 2, 3, &alpha * &d);
    set2(&mut g, 2, 4, &alpha * &e);
    g[(3, 3)] = r(1);
    g[(4, 4)] = r(1);
    g[(5, 5)] = r(1);
    // α(d² + e²) = 1 would make this gram singular; the construction
    // rejects it.
    assemble(6, brackets, g)
}

fn build_dim6_2solvable_d(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let beta = positive(params, "beta")?;
    let a = getp(params, "a")?;
    let gamma = getp(params, "gamma")?;
    let mu = getp(params, "mu")?;
    let nu = getp(params, "nu")?;
    let brackets = vec![
        (1, 2, sparse(6, &[(3, r(1))])),  // [z̄, e₁] = e₂
        (1, 3, sparse(6, &[(2, r(-1))])), // [z̄, e₂] = -e₁
        (1, 4, sparse(6, &[(0, a)])),     // [z̄, e₃] = a z
        (1, 5, sparse(6, &[(4, r(1))])),  // [z̄, e₄] = e₃
        (4, 5, sparse(6, &[(0, r(-1))])), // [e₃, e₄] = -z
    ];
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, alpha.clone());
    set2(&mut g, 1, 2, gamma);
    set2(&mut g, 1, 3, mu);
    set2(&mut g, 1, 4, nu);
    g[(2, 2)] = beta.clone();
    g[(3, 3)] = beta.clone();
    g[(4, 4)] = alpha;
    g[(5, 5)] = beta;
    assemble(6, brackets, g)
}

fn build_dim6_3solvable(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let rho = positive(params, "rho")?;
    let (cos_w, sin_w) = circle_pair(params, "cos_omega", "sin_omega")?;
    let alpha = getp(params, "alpha")?;
    let beta = getp(params, "beta")?;
    let gamma = getp(params, "gamma")?;
    let mu = getp(params, "mu")?;
    let x = &rho * &cos_w;
    let y = &rho * &sin_w;
    let rho_sq = &rho * &rho;
    let brackets = vec![
        (1, 2, sparse(6, &[(3, r(1))])),  // [z̄, e₁] = e₂
        (1, 3, sparse(6, &[(2, r(-1))])), // [z̄, e₂] = -e₁
        // [z̄, e₃] = X e₁ + Y e₂ + e₄
        (1, 4, sparse(6, &[(2, x.clone()), (3, y.clone()), (5, r(1))])),
        // [z̄, e₄] = -Y e₁ + X e₂ - e₃
        (1, 5, sparse(6, &[(2, -&y), (3, x.clone()), (4, r(-1))])),
        (2, 4, sparse(6, &[(0, -&x)])),   // [e₁, e₃] = -X z
        (2, 5, sparse(6, &[(0, y.clone())])), // [e₁, e₄] = Y z
        (3, 4, sparse(6, &[(0, -&y)])),   // [e₂, e₃] = -Y z
        (3, 5, sparse(6, &[(0, -&x)])),   // [e₂, e₄] = -X z
        (4, 5, sparse(6, &[(0, &r(2) * &rho_sq)])), // [e₃, e₄] = 2ρ² z
    ];
    let one_plus = &r(1) + &rho_sq;
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, r(1));
    set2(&mut g, 1, 2, alpha);
    set2(&mut g, 1, 3, beta);
    set2(&mut g, 1, 4, gamma);
    set2(&mut g, 1, 5, mu);
    g[(2, 2)] = r(1);
    set2(&mut g, 2, 4, y.clone());
    set2(&mut g, 2, 5, x.clone());
    g[(3, 3)] = r(1);
    set2(&mut g, 3, 4, -&x);
    set2(&mut g, 3, 5, y);
    g[(4, 4)] = one_plus.clone();
    g[(5, 5)] = one_plus;
    assemble(6, brackets, g)
}

fn fixup_dim6_2solvable_e(map: &mut ParamMap) {
    let alpha = map["alpha"].clone();
    let gamma = map["gamma"].clone();
    let beta = &(&Rational::one() + &(&gamma * &gamma)) / &alpha;
    map.insert("beta".to_string(), beta);
}

fn build_dim6_2solvable_e(params: &ParamMap) -> Result<MetricLieAlgebra, CatalogError> {
    let alpha = positive(params, "alpha")?;
    let beta = positive(params, "beta")?;
    let gamma = getp(params, "gamma")?;
    if !(&(&alpha * &beta) - &(&gamma * &gamma)).is_one() {
        return Err(CatalogError::BadParameter("αβ - γ² must equal 1".into()));
    }
    let a = getp(params, "a")?;
    let b = getp(params, "b")?;
    let c = getp(params, "c")?;
    let d = getp(params, "d")?;
    let e = getp(params, "e")?;
    let f = getp(params, "f")?;
    if a.is_zero() && d.is_zero() && e.is_zero() {
        return Err(CatalogError::BadParameter(
            "(a, d, e) must not all vanish: the center degenerates only \
             when at least one of them is nonzero"
                .into(),
        ));
    }
    let brackets = vec![
        // [z̄, e₁] = a e₂ + b e₃ + c e₄ + d z
        (
            1,
            2,
            sparse(6, &[(3, a.clone()), (4, b.clone()), (5, c.clone()), (0, d)]),
        ),
        (1, 3, sparse(6, &[(0, e)])),        // [z̄, e₂] = e z
        (1, 4, sparse(6, &[(5, f.clone())])), // [z̄, e₃] = f e₄
        (1, 5, sparse(6, &[(4, -&f)])),      // [z̄, e₄] = -f e₃
        (2, 3, sparse(6, &[(0, a)])),        // [e₁, e₂] = a z
        (2, 4, sparse(6, &[(5, r(1))])),     // [e₁, e₃] = e₄
        (2, 5, sparse(6, &[(4, r(-1))])),    // [e₁, e₄] = -e₃
    ];
    let mut g = Matrix::zero(6, 6);
    set2(&mut g, 0, 1, alpha.clone());
    set2(&mut g, 1, 4, -&c);
    set2(&mut g, 1, 5, b);
    g[(2, 2)] = beta;
    set2(&mut g, 2, 3, gamma);
    g[(3, 3)] = alpha;
    g[(4, 4)] = r(1);
    g[(5, 5)] = r(1);
    assemble(6, brackets, g)
}

/// Per-sample verification results for one parameter assignment.
#[derive(Clone, Debug, Serialize)]
pub struct SampleChecks {
    pub params: ParamMap,
    pub flat: bool,
    pub defect_zero: bool,
    pub lorentzian: bool,
    pub center_degenerate: bool,
    pub unimodular: bool,
    pub label_matches: bool,
    pub diagnostics_pass: bool,
    pub identities_hold: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub dim: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub samples: Vec<SampleChecks>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub label_interpretation: String,
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub total: usize,
    pub all_passed: bool,
}

/// Instantiates the family at `samples` parameter assignments and checks
/// every classification claim on each instance.
pub fn verify_entry(entry: &CatalogEntry, samples: usize) -> EntryReport {
    let checks: Vec<SampleChecks> = entry
        .samples(samples)
        .into_iter()
        .map(|params| {
            let m = entry
                .build(&params)
                .expect("sampled parameters satisfy the entry constraints");
            let flat = m.is_flat();
            let defect_zero = m.left_symmetric_defect().is_zero();
            let lorentzian = m.signature() == (1, 0, entry.dim - 1);
            let center_degenerate = m.center_degenerate();
            let unimodular = m.algebra().is_unimodular();
            let label_matches = entry.label.matches(&m.algebra().class_labels(), entry.dim);
            let diagnostics_pass = flat
                && m.flat_diagnostics()
                    .map(|d| d.all_pass())
                    .unwrap_or(false);
            let identities_hold = m.general_identities().all_hold();
            let pass = flat
                && defect_zero
                && lorentzian
                && center_degenerate
                && unimodular
                && label_matches
                && diagnostics_pass
                && identities_hold;
            SampleChecks {
                params,
                flat,
                defect_zero,
                lorentzian,
                center_degenerate,
                unimodular,
                label_matches,
                diagnostics_pass,
                identities_hold,
                pass,
            }
        })
        .collect();
    EntryReport {
        id: entry.id.to_string(),
        dim: entry.dim,
        label: entry.label.to_string(),
        note: entry.note.map(str::to_string),
        passed: !checks.is_empty() && checks.iter().all(|c| c.pass),
        samples: checks,
    }
}

/// Verifies the whole catalog.
pub fn verify_all(samples: usize) -> CatalogReport {
    let entries: Vec<EntryReport> = ENTRIES
        .iter()
        .map(|e| verify_entry(e, samples))
        .collect();
    let passed = entries.iter().filter(|e| e.passed).count();
    CatalogReport {
        label_interpretation: "k-solvable: derived series reaches zero in k steps; \
                               k-nilpotent: lower central series reaches zero in k steps"
            .to_string(),
        total: entries.len(),
        passed,
        all_passed: passed == entries.len(),
        entries,
    }
}
