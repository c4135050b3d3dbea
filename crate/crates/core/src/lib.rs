pub mod admissible;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod join;
pub mod quotient;
pub mod rays;
pub mod report;
pub mod topology;

pub use error::{Error, Result};
