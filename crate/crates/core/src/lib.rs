pub mod algebra;
pub mod ck;
pub mod cli;
pub mod error;
pub mod exact;
pub mod fock;
pub mod ktheory;
pub mod quad;
pub mod relations;
pub mod report;

pub use error::{Error, Result};
