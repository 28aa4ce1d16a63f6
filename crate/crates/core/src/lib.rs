//! Symmetric graph constructions and symmetry analysis over permutation
//! groups.

pub mod catalog;
pub mod error;
pub mod field;
pub mod forge;
pub mod lab;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
