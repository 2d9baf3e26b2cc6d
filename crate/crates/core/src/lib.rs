//! Exact arithmetic for valuations on Q[x] extending the p-adic valuation.
//!
//! The crate builds inductive valuations as augmentation chains in the sense
//! of MacLane and Vaquie, supports limit augmentations along continuous
//! families of key polynomials, computes residual polynomials in the graded
//! algebra of a valuation, and enumerates the extensions of the p-adic
//! valuation to the field defined by an irreducible polynomial.

pub mod chain;
pub mod error;
pub mod exactnum;
pub mod extend;
pub mod ffield;
pub mod keypoly;
pub mod limitfam;
pub mod valuation;

pub use error::{Error, Result};
