//! Degree-principle reductions for invariant polynomial problems over finite
//! reflection groups.

pub mod arrangement;
pub mod config;
pub mod coxeter;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod optimize;
pub mod parabolic;
pub mod poly;
pub mod reduce;
pub mod selftest;

pub use config::{OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use coxeter::{Family, GroupDescriptor};
pub use poly::{Coefficient, Polynomial};
