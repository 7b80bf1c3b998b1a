//! Thue-Morse derived sequences and finite-window diagnostics for the
//! properties they are known to satisfy: overlap-freeness, square-freeness,
//! uniform recurrence, aperiodicity and factor-language separation.
//!
//! Everything is computed on finite prefixes. Indices are 0-based.

pub mod derived;
pub mod dynamics;
pub mod error;
pub mod method_b;
pub mod repetitions;
pub mod sequence;
pub mod thue_morse;
pub mod words;

pub use error::{Error, Result};
pub use sequence::SequenceSpec;
pub use words::{Symbol, Word};
