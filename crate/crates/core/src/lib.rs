pub mod autmap;
pub mod curve;
pub mod error;
pub mod gf;
pub mod repro;
pub mod twistcoh;
pub mod twists;

pub use error::{Error, Result};
