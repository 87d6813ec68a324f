pub mod capacity;
pub mod channels;
pub mod cli;
pub mod cloners;
pub mod degradability;
pub mod error;
pub mod qmat;
pub mod unruh;

pub use error::{Error, Result};
