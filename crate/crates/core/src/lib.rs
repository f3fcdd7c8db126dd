//! Exact numerosities of definable sets of numbers, ordinal arithmetic below
//! epsilon-zero, and counting measures.

pub mod error;
pub mod euclid_field;
pub mod label_net;
pub mod measure;
pub mod numerosity;
pub mod ordinal;
pub mod setlang;

pub use error::{Error, Result, SyntaxError};
