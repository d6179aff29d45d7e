// Index loops mirror the matrix and tensor notation they implement.
#![allow(clippy::needless_range_loop)]

pub mod coadjoint;
pub mod error;
pub mod extension;
pub mod fibration;
pub mod hess;
pub mod io;
pub mod liealg;
pub mod matrix;
pub mod reduction;
pub mod sampling;
pub mod scalar;
pub mod suite;
pub mod symform;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{FieldKind, GaussianRational, Rational, Scalar};
