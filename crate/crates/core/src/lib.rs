//! Complexity measures for Thue–Morse, pattern sequences and their
//! subsequences along polynomial values.

pub mod digits;
pub mod error;
pub mod expansion;
pub mod measure;
pub mod moc;
pub mod polynomials;
pub mod sequences;
pub mod statistics;
pub mod witness;

pub use digits::BigNat;
pub use error::{Error, Result};
pub use polynomials::IntPolynomial;
pub use sequences::{generate_prefix, GeneratorDescriptor, PatternSpec, Sequence};
