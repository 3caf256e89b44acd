//! Named spaces, their admissible twists, and routing to a computation.

mod route;
mod space;
mod twist;

pub use crate::cohomology::FourManifoldData;
pub use crate::result::TwistedKResult;
pub use route::{cross_check, k_theory, Computation, MethodChoice, TwistRecord};
pub use space::{build, Space, SpaceSpec, MAX_SU_RANK};
pub use twist::{Twist, TwistClass};
