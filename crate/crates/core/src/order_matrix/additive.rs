use serde::{Deserialize, Serialize};

use super::OrderMatrix;
use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// A nonnegative integer matrix whose 1-marginals are partitions.
///
/// Additivity itself (some strictly decreasing `x`, `y` with
/// `a_{ij} > a_{kl} ⟹ x_i + y_j > x_k + y_l`) is the caller's claim; for
/// distinct entries [`AdditiveMatrix::order_matrix`] checks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveMatrix {
    entries: Vec<Vec<u32>>,
}

impl AdditiveMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let n2 = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || n2 == 0 || entries.iter().any(|r| r.len() != n2) {
            return Err(Error::domain("matrix must be a nonempty rectangle"));
        }
        let a = AdditiveMatrix { entries };
        let (rows, cols) = (a.row_sums(), a.col_sums());
        let decreasing = |v: &[u32]| v.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing(&rows) || !decreasing(&cols) {
            return Err(Error::domain(format!(
                "marginals {rows:?} and {cols:?} are not both partitions"
            )));
        }
        Ok(a)
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    fn col_sums(&self) -> Vec<u32> {
        (0..self.entries[0].len())
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// The order matrix of a matrix with pairwise distinct entries (largest
    /// entry gets rank 1), if it is one.
    pub fn order_matrix(&self) -> Option<OrderMatrix> {
        let n2 = self.entries[0].len();
        let mut cells: Vec<(u32, usize, usize)> = self
            .entries
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &a)| (a, i, j)))
            .collect();
        cells.sort_by(|a, b| b.0.cmp(&a.0));
        if cells.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        let mut ranks = vec![vec![0; n2]; self.entries.len()];
        for (r, &(_, i, j)) in cells.iter().enumerate() {
            ranks[i][j] = r + 1;
        }
        OrderMatrix::new(ranks).ok()
    }
}

/// The 1-marginals `λ`, `μ` and the π-sequence `ν` (all entries, sorted).
pub fn marginals_and_pi(a: &AdditiveMatrix) -> (Partition, Partition, Partition) {
    let lambda = Partition::new(a.row_sums()).expect("checked at construction");
    let mu = Partition::new(a.col_sums()).expect("checked at construction");
    let nu = Partition::from_unsorted(a.entries.iter().flatten().copied().collect());
    (lambda, mu, nu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn marginals_of_small_matrices() {
        let a = AdditiveMatrix::new(vec![vec![3, 2], vec![3, 1]]).unwrap();
        assert_eq!(marginals_and_pi(&a), (p(&[5, 4]), p(&[6, 3]), p(&[3, 3, 2, 1])));
        let a = AdditiveMatrix::new(vec![vec![1, 0], vec![0, 0]]).unwrap();
        let (l, m, n) = marginals_and_pi(&a);
        assert_eq!((l.parts(), m.parts(), n.parts()), (&[1, 0][..], &[1, 0][..], &[1, 0, 0, 0][..]));
    }

    #[test]
    fn non_partition_marginals_are_rejected() {
        assert!(matches!(
            AdditiveMatrix::new(vec![vec![0, 1], vec![0, 0]]),
            Err(Error::InputDomain(_))
        ));
    }

    #[test]
    fn distinct_entries_give_an_order_matrix() {
        let a = AdditiveMatrix::new(vec![vec![7, 4], vec![5, 2], vec![3, 0]]).unwrap();
        assert_eq!(a.order_matrix().unwrap().ranks, vec![vec![1, 3], vec![2, 5], vec![4, 6]]);
    }
}
