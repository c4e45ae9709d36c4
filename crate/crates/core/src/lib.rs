pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod e13e;
pub mod e23e;
pub mod eee;
pub mod equivalence;
pub mod error;
pub mod language;
pub mod render;
pub mod reproduction;
pub mod sample;
pub mod word;

pub use error::{Error, Result};
