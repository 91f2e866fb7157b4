//! Truncated power series over an exact rational field or `f64`, with
//! reliable-order bookkeeping.

mod bi;
mod coeff;
mod uni;
mod vec3;

pub use bi::BiSeries;
pub use coeff::{int, ratio, Coeff, Field, Rational, FLOAT_TOL};
pub use uni::{Series, Valuation};
pub use vec3::{cross3, dot3, normalize_f64, to_f64_3, Vec3Series};
