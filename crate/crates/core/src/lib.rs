pub mod cli;
pub mod comm;
pub mod error;
pub mod fgl;
pub mod free;
pub mod gradebook;
pub mod steenrod;
pub mod linalg;
pub mod sample;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use free::{centralizer_basis, FreeElement, GradingProfile, Nsym, Word};
pub use scalar::{Ring, Scalar};
