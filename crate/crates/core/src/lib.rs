pub mod archfactors;
pub mod arith;
pub mod cli;
pub mod artin;
pub mod error;
pub mod exact;
pub mod explicit;
pub mod cyclic;
pub mod endomotive;
pub mod numkernel;
pub mod spectral;
pub mod testfn;
pub mod thermo;

pub use error::{Error, Result};
