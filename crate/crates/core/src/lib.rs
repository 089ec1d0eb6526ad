//! Special polygons and independent generating systems for the congruence
//! subgroups Γ0(n) of PSL(2,ℤ).
//!
//! Everything is exact integer arithmetic. The main entry points are
//!
//! - [`polygon::grow_maximal`]: generic Farey-symbol construction by triangle
//!   attachment,
//! - [`triples::build_optimal_polygon`] and [`triples::build_twin_polygon`]:
//!   polygons of minimal cusp height for `n = p`, `p²` and close `pq`,
//! - [`gens::independent_system`] / [`gens::verify_system`]: the resulting
//!   free-product generators and their size bounds,
//! - [`invariants`]: index, cusp and cone-point counts, genus, the
//!   `m(Γ0(n))` bounds and the exact search for `m(Γ0(n))`.

pub mod arith;
pub mod cli;
pub mod error;
pub mod exec;
pub mod frac;
pub mod gens;
pub mod invariants;
pub mod polygon;
pub mod psl;
pub mod svg;
pub mod sweep;
pub mod triples;

pub use error::{Error, Result};
pub use frac::ExtFrac;
pub use gens::{GeneratingSystem, Generator, GeneratorKind};
pub use invariants::GroupInvariants;
pub use polygon::{LabeledPolygon, SideLabel, Strategy};
pub use psl::{ElementOrder, PslMat};
pub use triples::{CashewCertificate, FareyTriple};
