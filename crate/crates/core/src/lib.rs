pub mod coeff;
pub mod error;
pub mod heckechar;
pub mod klrchar;
pub mod linalg;
pub mod nilhecke;
pub mod polyring;
pub mod rankone;
pub mod sl2mod;
pub mod symfun;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
