use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell `(row, col)` of an `n1 × n2` grid, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridIndex {
    pub row: usize,
    pub col: usize,
}

impl GridIndex {
    pub fn new(row: usize, col: usize) -> Self {
        GridIndex { row, col }
    }
}

/// Lexicographic position `(row-1)·n2 + col` of a cell, matching the basis
/// `e_1⊗f_1, e_1⊗f_2, …, e_{n1}⊗f_{n2}`.
pub fn lex_index(cell: GridIndex, n1: usize, n2: usize) -> Result<usize> {
    if cell.row == 0 || cell.row > n1 || cell.col == 0 || cell.col > n2 {
        return Err(Error::domain(format!(
            "cell ({}, {}) outside a {n1}×{n2} grid",
            cell.row, cell.col
        )));
    }
    Ok((cell.row - 1) * n2 + cell.col)
}

/// Inverse of [`lex_index`].
pub fn unlex_index(k: usize, n1: usize, n2: usize) -> Result<GridIndex> {
    if k == 0 || k > n1 * n2 {
        return Err(Error::domain(format!(
            "index {k} outside 1..={} for a {n1}×{n2} grid",
            n1 * n2
        )));
    }
    Ok(GridIndex::new((k - 1) / n2 + 1, (k - 1) % n2 + 1))
}
