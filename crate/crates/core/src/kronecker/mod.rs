//! Exact symmetric group characters and Kronecker coefficients.

mod characters;
mod classes;
mod oracle;
mod probe;

pub use characters::CharacterMemo;
pub use classes::{centralizer_order, class_types, factorial, ClassType};
pub use oracle::KroneckerOracle;
pub use probe::{classify, ProbeVerdict, StabilityProbe};
