pub mod algebra;
pub mod error;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::GaussianRational;
pub mod clifford;
pub mod report;
pub mod superspace;
pub mod brane_cocycles;
pub mod cyclification;
pub mod tduality;
pub mod fda;
pub mod catalog;
pub mod suite;
