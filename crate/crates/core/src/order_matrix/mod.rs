//! Order matrices: rank grids of `x_i + y_j` for dominant, regular,
//! `Ĝ`-regular one-parameter subgroups `τ = (x | y)`.

mod additive;
mod feasibility;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{lex_index, GridIndex, Permutation};
use crate::error::{Error, Result};

pub use additive::{marginals_and_pi, AdditiveMatrix};
pub use feasibility::{
    additive_feasibility, chain_comparisons, minimize_witness, reproduces, Comparison,
    Feasibility, Witness,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderMatrix {
    pub n1: usize,
    pub n2: usize,
    /// `ranks[i-1][j-1]` is the rank of `x_i + y_j`, rank 1 being the largest.
    pub ranks: Vec<Vec<usize>>,
    pub witness: Witness,
}

fn check_grid(ranks: &[Vec<usize>]) -> Result<(usize, usize)> {
    let n1 = ranks.len();
    let n2 = ranks.first().map_or(0, Vec::len);
    if n1 == 0 || n2 == 0 || ranks.iter().any(|r| r.len() != n2) {
        return Err(Error::domain("rank grid must be a nonempty rectangle"));
    }
    let mut seen = vec![false; n1 * n2];
    for &r in ranks.iter().flatten() {
        if r == 0 || r > n1 * n2 || seen[r - 1] {
            return Err(Error::domain(format!(
                "ranks {ranks:?} are not a bijection onto 1..={}",
                n1 * n2
            )));
        }
        seen[r - 1] = true;
    }
    Ok((n1, n2))
}

impl OrderMatrix {
    /// Validates the grid and attaches the smallest integer witness.
    pub fn new(ranks: Vec<Vec<usize>>) -> Result<Self> {
        let (n1, n2) = check_grid(&ranks)?;
        match additive_feasibility(&ranks) {
            Feasibility::Feasible(w) => {
                if !reproduces(&ranks, &w) {
                    return Err(Error::consistency(format!(
                        "witness {w:?} does not reproduce {ranks:?}"
                    )));
                }
                let witness = minimize_witness(&ranks, &w);
                Ok(OrderMatrix { n1, n2, ranks, witness })
            }
            Feasibility::Infeasible(core) => Err(Error::domain(format!(
                "rank grid {ranks:?} is not additive; conflicting comparisons {core:?}"
            ))),
        }
    }

    /// The rank grid of `x_i + y_j` for strictly decreasing nonnegative `x`, `y`
    /// with pairwise distinct sums. The given witness is kept.
    pub fn from_witness(x: Vec<i64>, y: Vec<i64>) -> Result<Self> {
        let (n1, n2) = (x.len(), y.len());
        if n1 == 0 || n2 == 0 {
            return Err(Error::domain("witness vectors must be nonempty"));
        }
        let mut cells: Vec<(i64, GridIndex)> = (1..=n1)
            .flat_map(|i| (1..=n2).map(move |j| GridIndex::new(i, j)))
            .map(|c| (x[c.row - 1] + y[c.col - 1], c))
            .collect();
        cells.sort_by(|a, b| b.0.cmp(&a.0));
        if cells.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::domain(format!(
                "witness ({x:?} | {y:?}) has repeated sums x_i + y_j"
            )));
        }
        let mut ranks = vec![vec![0; n2]; n1];
        for (r, (_, c)) in cells.iter().enumerate() {
            ranks[c.row - 1][c.col - 1] = r + 1;
        }
        let witness = Witness { x, y };
        if !reproduces(&ranks, &witness) {
            return Err(Error::domain(format!(
                "witness {witness:?} is not strictly decreasing and nonnegative"
            )));
        }
        Ok(OrderMatrix { n1, n2, ranks, witness })
    }

    pub fn size(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn rank(&self, cell: GridIndex) -> usize {
        self.ranks[cell.row - 1][cell.col - 1]
    }

    /// The cell holding rank `k`.
    pub fn cell_of_rank(&self, k: usize) -> GridIndex {
        for (i, row) in self.ranks.iter().enumerate() {
            if let Some(j) = row.iter().position(|&r| r == k) {
                return GridIndex::new(i + 1, j + 1);
            }
        }
        panic!("rank {k} outside 1..={}", self.size())
    }

    /// `ŵ(k)` is the lexicographic index of the cell of rank `k`: the `k`-th
    /// step of the flag adds `e_i ⊗ f_j` in that order.
    pub fn hat_w(&self) -> Permutation {
        let one_line = (1..=self.size())
            .map(|k| lex_index(self.cell_of_rank(k), self.n1, self.n2).expect("cell in grid"))
            .collect();
        Permutation::new(one_line).expect("ranks are a bijection")
    }

    pub fn transpose(&self) -> OrderMatrix {
        let ranks = (0..self.n2)
            .map(|j| (0..self.n1).map(|i| self.ranks[i][j]).collect())
            .collect();
        OrderMatrix {
            n1: self.n2,
            n2: self.n1,
            ranks,
            witness: Witness {
                x: self.witness.y.clone(),
                y: self.witness.x.clone(),
            },
        }
    }

    /// Rows of the rank grid, e.g. `(1,3),(2,5),(4,6)`.
    pub fn ranks_text(&self) -> String {
        self.ranks
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(usize::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `ŵ` of a rank grid, validating it first.
pub fn hat_w_from_ranks(ranks: &[Vec<usize>]) -> Result<Permutation> {
    let (n1, n2) = check_grid(ranks)?;
    let increasing = ranks.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
        && (1..n1).all(|i| (0..n2).all(|j| ranks[i - 1][j] < ranks[i][j]));
    if !increasing {
        return Err(Error::domain(format!(
            "ranks {ranks:?} do not increase along rows and columns"
        )));
    }
    let mut one_line = vec![0; n1 * n2];
    for (i, row) in ranks.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            one_line[r - 1] = lex_index(GridIndex::new(i + 1, j + 1), n1, n2)?;
        }
    }
    Permutation::new(one_line)
}

/// All fillings of the `n1 × n2` rectangle by `1..n1·n2` increasing along
/// rows and columns, in lexicographic order of the flattened grid.
pub fn candidate_grids(n1: usize, n2: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(grid: &mut Vec<Vec<usize>>, filled: &mut [usize], k: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        let (n1, n2) = (grid.len(), grid[0].len());
        if k > n1 * n2 {
            out.push(grid.clone());
            return;
        }
        for i in 0..n1 {
            let j = filled[i];
            if j < n2 && (i == 0 || filled[i - 1] > j) {
                grid[i][j] = k;
                filled[i] += 1;
                rec(grid, filled, k + 1, out);
                filled[i] -= 1;
                grid[i][j] = 0;
            }
        }
    }
    if n1 == 0 || n2 == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&mut vec![vec![0; n2]; n1], &mut vec![0; n1], 1, &mut out);
    out.sort();
    out
}

/// Every order matrix of size `n1 × n2`, with witnesses, in lexicographic
/// order of the rank grids.
pub fn enumerate_order_matrices(n1: usize, n2: usize) -> Vec<OrderMatrix> {
    candidate_grids(n1, n2)
        .into_par_iter()
        .filter_map(|ranks| OrderMatrix::new(ranks).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_counts_follow_the_hook_formula() {
        assert_eq!(candidate_grids(2, 2).len(), 2);
        assert_eq!(candidate_grids(3, 2).len(), 5);
        assert_eq!(candidate_grids(3, 3).len(), 42);
        assert_eq!(candidate_grids(2, 4).len(), 14);
    }

    #[test]
    fn order_matrix_counts() {
        assert_eq!(enumerate_order_matrices(2, 2).len(), 2);
        assert_eq!(enumerate_order_matrices(3, 2).len(), 5);
        assert_eq!(enumerate_order_matrices(2, 3).len(), 5);
        assert_eq!(enumerate_order_matrices(3, 3).len(), 36);
    }

    #[test]
    fn worked_order_matrix() {
        let r = OrderMatrix::from_witness(vec![4, 2, 0], vec![3, 0]).unwrap();
        assert_eq!(r.ranks, vec![vec![1, 3], vec![2, 5], vec![4, 6]]);
        assert_eq!(r.hat_w().one_line(), &[1, 3, 2, 5, 4, 6]);
        assert_eq!(r.hat_w().to_string(), "(2 3)(4 5)");
        let minimal = OrderMatrix::new(r.ranks.clone()).unwrap();
        assert!(reproduces(&r.ranks, &minimal.witness));
    }

    #[test]
    fn hat_w_examples() {
        let id = hat_w_from_ranks(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(id.is_identity());
        let w = hat_w_from_ranks(&[vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(w.to_string(), "(2 3)");
        assert!(hat_w_from_ranks(&[vec![2, 1], vec![3, 4]]).is_err());
        assert!(hat_w_from_ranks(&[vec![1, 1], vec![3, 4]]).is_err());
    }

    #[test]
    fn witness_of_the_lexicographic_matrix() {
        let r = OrderMatrix::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(r.witness, Witness { x: vec![2, 0], y: vec![1, 0] });
    }

    #[test]
    fn transposes_are_order_matrices() {
        for (n1, n2) in [(2, 2), (3, 2), (3, 3)] {
            let transposed = enumerate_order_matrices(n2, n1);
            for r in enumerate_order_matrices(n1, n2) {
                let t = r.transpose();
                assert!(reproduces(&t.ranks, &t.witness));
                assert!(transposed.iter().any(|s| s.ranks == t.ranks));
            }
        }
    }

    #[test]
    fn json_shape() {
        let r = OrderMatrix::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"n1":2,"n2":2,"ranks":[[1,2],[3,4]],"witness":{"x":[2,0],"y":[1,0]}}"#
        );
        let back: OrderMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
