//! Exact quasi-modular series engine for the elliptic curve and the Fermat
//! cubic Landau–Ginzburg model.
//!
//! Everything here is exact rational arithmetic on truncated formal series.
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod chazy;
pub mod hae;
pub mod linalg;
pub mod mirror;
pub mod modular;
pub mod npoint;
pub mod rational;
pub mod report;
pub mod series;
pub mod theta;
pub mod virasoro;
pub mod cayley;

pub use modular::{Monomial, QMPolynomial};
pub use rational::Q;
pub use series::{LaurentSeries, PowerSeries, Var};
