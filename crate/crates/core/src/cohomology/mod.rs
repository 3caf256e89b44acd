//! Graded integral cohomology rings with cup products.

mod exterior;
mod gysin;
mod kunneth;
mod ring;

pub use exterior::{exterior_algebra, su_ring};
pub use gysin::{gysin_su2, FourManifoldData, SU2BundleCohomology};
pub use kunneth::kunneth_ring;
pub use ring::{sphere_ring, CohClass, CohomologyRing, DegreeGroup, ProductKey};
