pub mod algdecide;
pub mod arith;
pub mod cli;
pub mod error;
pub mod expr;
pub mod guess;
pub mod json;
pub mod lineseries;
pub mod qcomb;

pub use error::{Error, Result};
