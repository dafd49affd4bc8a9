//! Bounds on the parametrized topological complexity of projective bundles,
//! computed symbolically in mod-2 cohomology.
//!
//! The pipeline: a base ring presentation plus a total Stiefel-Whitney class
//! ([`BundleSpec`]) yields the rings of the projectivization and of its
//! fibrewise square ([`ProjectiveModel`]); heights and genus estimates in
//! those rings give a TC interval with per-bound provenance
//! ([`BoundInterval`]).

pub mod bounds;
pub mod bundle;
pub mod char_classes;
pub mod cli;
pub mod expr;
pub mod ring;
pub mod verification;

pub use bounds::{Bound, BoundInterval, BoundSource, BoundsError};
pub use bundle::{build_projective_model, BundleSpec, ModelError, ProjectiveModel};
pub use char_classes::{dual_total_sw, DualSwClass, TotalSwClass};
pub use ring::{Element, Monomial, PresentedRing, RingError};
