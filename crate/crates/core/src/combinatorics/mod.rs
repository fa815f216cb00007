//! Partitions, permutations and the grid/line bijection.

pub mod cycles;
mod grid;
mod partition;
mod permutation;

pub use grid::{lex_index, unlex_index, GridIndex};
pub use partition::{partitions_of, Partition};
pub use permutation::{longest_element, Permutation};
