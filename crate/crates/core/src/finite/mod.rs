//! Gamma functions of finite general linear groups and their tori.

pub mod central;
pub mod chartable;
pub mod deligne_lusztig;
pub mod dixon;
pub mod gamma;
pub mod lift;
pub mod torus;

pub use central::{central_function_from_gamma, gamma_from_central_function};
pub use chartable::{gl1_character_table, gl2_character_table, group_gamma, CharacterTable, Gl2Table};
pub use deligne_lusztig::{dl_constituents_gl2, verify_finite_main, DLLabel, FiniteMainReport};
pub use dixon::{dixon_character_table, FiniteGroup};
pub use gamma::{sqrt_q, GammaValue};
pub use lift::{gamma_rho_finite, gamma_rho_finite_with_lift, lift_weyl_image, weyl_lifts};
pub use torus::{torus_gamma, AdditiveCharacter, FiniteTorus, FiniteTorusCharacter};
