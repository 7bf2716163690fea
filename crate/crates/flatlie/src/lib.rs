//! Exact-arithmetic tools for metric Lie algebras.
//!
//! Everything runs over arbitrary-precision rationals — no floating point,
//! no tolerances. The crate computes Levi-Civita products and curvature of
//! left-invariant metrics, locates the structural subalgebras that control
//! flatness, performs the double-extension construction and its inverse for
//! Lorentzian flat algebras with degenerate center, and ships a catalog of
//! such algebras in dimensions 3–6 that is re-verified by machine.

pub mod catalog;
pub mod doubleext;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod milnor;

pub use lie::{ClassLabels, LieAlgebra};
pub use linalg::{Matrix, Rational, Subspace};
pub use metric::{FlatDiagnostics, MetricLieAlgebra};
