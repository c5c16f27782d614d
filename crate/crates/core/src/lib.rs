//! Gamma factors for finite and p-adic tori, the basic function of a torus
//! representation, and the birational Weyl-group action on matrix tori.
//!
//! Everything that can be exact is exact: values over finite fields live in
//! cyclotomic fields, the crystal involutions are evaluated over the
//! rationals (or symbolically over rational functions), and p-adic volumes
//! are rationals. Only the p-adic oscillatory sums and the local gamma
//! factors at complex `s` are floating point.
//!
//! Modules:
//! - [`algebra`]: rationals, multivariate polynomials and rational functions,
//!   cyclotomic numbers, finite fields.
//! - [`finite`]: torus gamma sums, character tables of `GL(1)` and `GL(2)`
//!   over finite fields, Dixon's algorithm, Deligne–Lusztig bookkeeping.
//! - [`padic`]: Tate local factors, the oscillatory oracle, the vector
//!   partition function, Mellin images, the Fourier operator, the basic
//!   function via Satake, monomial fiber volumes.
//! - [`crystal`]: the two-row involution and the `S_m x S_n` action.

pub mod algebra;
pub mod crystal;
pub mod error;
pub mod finite;
pub mod padic;
pub mod par;
pub mod weights;

pub use error::{Error, Result};
pub use weights::WeightList;
