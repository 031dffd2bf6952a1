pub mod asymptotics;
pub mod classical;
pub mod contour;
pub mod error;
pub mod io;
pub mod mp_law;
pub mod power;
pub mod quadrature;
pub mod rng;
pub mod sampler;
pub mod tridiag;
mod tw1_table;

pub use error::{Error, Result};
pub use contour::{log_lr_exact, LogLrExact, LrKind};
pub use sampler::{EigenSample, Sampler, SpikedModel};
