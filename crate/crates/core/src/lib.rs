//! Smooth plane quartics over `Q` that fail the Hasse principle for bitangents
//! and for symmetric determinantal representations, with exact certificates.
//!
//! The pipeline: pick `E = F_2^5` inside the stabilizer of a nonzero vector of
//! `F_2^6` satisfying both fixed-point conditions ([`subgroup`]), realize it as
//! `Gal(L/Q)` for a multiquadratic `L` with cyclic decomposition groups
//! ([`arith`]), build a conic bundle whose discriminant quartic has the right
//! Galois action on its theta characteristics ([`conic`]), and record every
//! check in a [`certificate::Certificate`].

pub mod arith;
pub mod certificate;
pub mod cli;
pub mod conic;
pub mod error;
pub mod poly;
pub mod subgroup;
pub mod symplectic;

pub use error::{Error, Result};
