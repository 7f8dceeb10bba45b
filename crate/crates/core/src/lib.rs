//! Arithmetic for the unramified unitary group `U(2,1)` over a local
//! function field, its Iwahori subgroups, weights, and compactly induced
//! representations.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod fields;
pub mod laurent;
pub mod group;
pub mod induction;
pub mod linalg;
pub mod weights;

pub use error::{Error, Result};
