//! Exact-arithmetic core for thin-triangle bases, generalized Perron
//! trees, and maximal-function level-set certificates.
//!
//! Everything measurable is computed over arbitrary-precision rationals;
//! floating point appears only in diagnostics and in the initial
//! evaluation of irrational inputs, which are snapped to
//! bounded-denominator rationals before any geometry happens.

pub mod basis;
pub mod error;
pub mod exec;
pub mod geom;
pub mod maximal;
pub mod perron;
pub mod sampling;
pub mod scalar;
pub mod seq;

pub use error::{BasisError, GeometryError, MaximalError, PerronError, SequenceError};
pub use scalar::Scalar;
