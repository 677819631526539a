pub mod apollonian;
pub mod bounds;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod lorentz;
pub mod orbit;
pub mod render;
pub mod scalar;
pub mod zeta;

pub use error::{Error, Result};
