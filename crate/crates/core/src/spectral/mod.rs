//! The collapsed, 2-periodic twisted Atiyah–Hirzebruch spectral sequence.

mod engine;
mod page;
mod report;

pub use engine::{run_ahss, AhssOptions, AhssRun};
pub use page::{ahss_e2, apply_twisted_differential, AppliedDifferential, SpectralPage};
pub use report::{assemble_diagonal, GradedPiece, KGroupReport};
