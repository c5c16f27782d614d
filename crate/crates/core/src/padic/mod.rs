//! Local factors over `Q_p` for split tori: Tate gamma and L-factors, the
//! oscillatory distribution by truncated sums, the basic function, Mellin
//! transforms and monomial fiber volumes.
//!
//! The additive character is `ψ(x) = exp(2πi {x}_p)`, trivial on `Z_p` and
//! nontrivial on `p^{-1}Z_p`. Haar measure gives `Z_p` volume 1.

pub mod basic;
pub mod character;
pub mod distribution;
pub mod fourier;
pub mod lattice;
pub mod local_factor;
pub mod mellin;
pub mod oracle;
pub mod satake;
pub mod volume;

pub use basic::{basic_function_oracle, basic_function_satake, BasicFunction};
pub use character::PAdicCharacter;
pub use distribution::AlgGeomDistributionData;
pub use fourier::{calibrate, fourier_rho, fourier_rho_numeric};
pub use lattice::{partition_c_rho, LatticeFunction};
pub use local_factor::{gamma_rho_torus, l_rho, tate_gamma, tate_l, LocalLFactor, Normalization};
pub use mellin::{inverse_mellin_plain, mellin, schwartz_membership, Laurent, MellinImage};
pub use oracle::oscillatory_oracle;
pub use satake::{torus_lifting_data, unramified_satake_lift};
pub use volume::monomial_fiber_volume;
