//! The birational `S_m x S_n` action on `m x n` matrix tori.

pub mod scalar;
pub mod tau;
pub mod verify;

pub use scalar::{CrystalScalar, Dual};
pub use tau::{delta_k, eta, tau1, tau2, tau_rows, tau_tworow, CrystalPoint};
pub use verify::{apply, jacobian_of, jacobian_sign, two_by_two_identity, verify_weyl_action, Generator, WeylReport};
