pub mod complexes;
pub mod diagrams;
pub mod error;
pub mod germs;
pub mod groups;
pub mod io;
pub mod perfection;
pub mod sample;
pub mod splinter;
pub mod vphi;

pub use error::{Error, Result};

/// Homology with machine-word coefficients; overflow is reported, not wrapped.
pub type IntHomology = complexes::HomologyResult<i64>;
/// Homology with arbitrary-precision coefficients.
pub type BigHomology = complexes::HomologyResult<num_bigint::BigInt>;
