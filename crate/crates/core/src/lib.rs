//! Consistency and consequence for knowledge bases of necessities,
//! possibilities, defaults and likelihoods, with exact error bounds and a
//! linear-programming cross-check over world distributions.

pub mod kernel;
pub mod modal;
pub mod oracle;
pub mod propcore;
pub mod suite;
pub mod surface;
