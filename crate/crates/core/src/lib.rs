//! Exact arithmetic for Tribonacci and Tribonacci-Lucas quaternion
//! polynomials, with numeric Binet forms and identity verifiers.
//!
//! The exact side works over [`Poly`] (integer polynomials in `x`) and
//! [`QPoly`] (quaternions with polynomial components). The numeric side in
//! [`binet`] evaluates closed forms in complex doubles, and [`identities`]
//! checks one against the other.

pub mod binet;
pub mod error;
pub mod identities;
pub mod matrixrep;
pub mod quaternion;
pub mod ring;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
pub use matrixrep::Mat3;
pub use quaternion::{NumQuat, QPoly, Quat};
pub use ring::{Poly, Ring};
pub use sequences::{QuatKind, SeqKind, Sequences};
pub use series::TruncSeries;
