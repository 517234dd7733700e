pub mod brauer;
pub mod cli;
pub mod cohom;
pub mod error;
pub mod gmod;
pub mod hs;
pub mod intlat;

pub use error::{Error, Result};
