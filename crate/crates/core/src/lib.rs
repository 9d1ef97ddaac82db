#![no_std]
#![allow(clippy::needless_range_loop, clippy::wrong_self_convention)]

extern crate alloc;

pub mod algebra;
pub mod classifier;
pub mod field;
pub mod ideal;
pub mod matrix;
pub mod minimal;
pub mod quiver;
pub mod rep;
pub mod subspace;
pub mod toupie;
pub mod witness;
