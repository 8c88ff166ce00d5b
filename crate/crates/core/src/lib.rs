pub mod classify;
pub mod error;
pub mod hermitian;
pub mod io;
pub mod pencil;
pub mod registry;
pub mod sampling;
pub mod sphere;
pub mod tolerances;

pub use error::{Error, Result};
