//! Transmission of a single waveguide mode through a narrower (possibly
//! cut-off) section joining two identical rectangular guides.

pub mod checks;
pub mod coupling;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod modes;
pub mod scattering;
pub mod sweep;
pub mod verify;
pub mod worked;

pub use error::{Error, Result};
