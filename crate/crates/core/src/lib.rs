pub mod abgroup;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod exactseq;
pub mod result;
pub mod spectral;

pub use abgroup::{FGAbelianGroup, GroupHom, IntMatrix};
pub use catalog::{k_theory, Computation, MethodChoice, SpaceSpec, Twist};
pub use cohomology::{CohClass, CohomologyRing};
pub use error::{Error, Result};
pub use result::{Method, TwistedKResult};
pub use spectral::{KGroupReport, SpectralPage};
