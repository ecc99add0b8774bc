// NaN-rejecting guards are written as !(x > 0.0); index loops mirror the component formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::excessive_precision, clippy::type_complexity)]

pub mod error;
pub mod fields;
pub mod grid;
pub mod inner;
pub mod io;
pub mod localized;
pub mod mode_algebra;
pub mod observables;
pub mod relativity;
pub mod sampling;
pub mod specfun;
pub mod symmetry_gauge;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex<f64>;
