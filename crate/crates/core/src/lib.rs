//! Differential geometry of curves passing through a Whitney umbrella.
//!
//! The umbrella is given in Bruce–West normal form with rational
//! coefficients; curves are rational polynomial germs. Everything is
//! computed with truncated power series: exact rationals wherever no square
//! root is involved, `f64` for the normalized frame and the osculating
//! developable.

pub mod developable;
pub mod error;
pub mod frame;
pub mod invariants;
pub mod mesh;
pub mod model;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
