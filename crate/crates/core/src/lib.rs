//! Linear codes from APN and PN monomials over finite fields, their
//! shortened and punctured variants, and exact checks of their weight
//! distributions against closed-form predictions.

pub mod arith;
pub mod code;
pub mod construct;
pub mod error;
pub mod gf;
pub mod gfmat;
pub mod harness;
pub mod predict;
pub mod report;
pub mod sums;

pub use error::{Error, Result};
