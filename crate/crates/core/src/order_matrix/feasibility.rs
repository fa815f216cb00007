//! Exact feasibility of rank grids as orders of `x_i + y_j`.
//!
//! Each strict inequality is written with slack 1. Fourier–Motzkin
//! elimination runs over `ℚ`, every derived inequality remembering which
//! original rows produced it, so an infeasible system yields its conflicting
//! rows directly; a deletion filter then makes that set irreducible.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::GridIndex;
use crate::linalg::{rat, Rational};

/// `x_{higher.row} + y_{higher.col} ≥ x_{lower.row} + y_{lower.col} + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Comparison {
    pub higher: GridIndex,
    pub lower: GridIndex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

impl Witness {
    pub fn value(&self, cell: GridIndex) -> i64 {
        self.x[cell.row - 1] + self.y[cell.col - 1]
    }

    pub fn max_entry(&self) -> i64 {
        self.x.iter().chain(&self.y).copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Witness),
    /// An irreducible set of rank comparisons that no `(x, y)` satisfies.
    Infeasible(Vec<Comparison>),
}

/// `coeffs · z ≥ bound` with `z = (x_1..x_{n1}, y_1..y_{n2})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Row {
    coeffs: Vec<Rational>,
    bound: Rational,
    origin: BTreeSet<usize>,
}

fn comparison_row(c: &Comparison, n1: usize, n2: usize, idx: usize) -> Row {
    let mut coeffs = vec![rat(0); n1 + n2];
    coeffs[c.higher.row - 1] += rat(1);
    coeffs[n1 + c.higher.col - 1] += rat(1);
    coeffs[c.lower.row - 1] -= rat(1);
    coeffs[n1 + c.lower.col - 1] -= rat(1);
    Row {
        coeffs,
        bound: rat(1),
        origin: BTreeSet::from([idx]),
    }
}

/// Rows `x_{n1} ≥ 0` and `y_{n2} ≥ 0`; they never take part in a conflict
/// because the comparison rows are invariant under translation.
fn sign_rows(n1: usize, n2: usize) -> Vec<Row> {
    [n1 - 1, n1 + n2 - 1]
        .into_iter()
        .map(|v| {
            let mut coeffs = vec![rat(0); n1 + n2];
            coeffs[v] = rat(1);
            Row {
                coeffs,
                bound: rat(0),
                origin: BTreeSet::new(),
            }
        })
        .collect()
}

/// Divides by the first nonzero coefficient's magnitude so equal rows collapse.
fn normalized(mut row: Row) -> Row {
    if let Some(lead) = row.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
        for c in row.coeffs.iter_mut() {
            *c = &*c / &lead;
        }
        row.bound = &row.bound / &lead;
    }
    row
}

/// Eliminates variables from last to first. Returns the system before each
/// elimination (for back substitution) and the final constant rows.
fn eliminate(rows: Vec<Row>, nvars: usize) -> (Vec<Vec<Row>>, Vec<Row>) {
    let mut stages = Vec::with_capacity(nvars);
    let mut current = rows;
    for v in (0..nvars).rev() {
        stages.push(current.clone());
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in current {
            if r.coeffs[v].is_positive() {
                lower.push(r);
            } else if r.coeffs[v].is_negative() {
                upper.push(r);
            } else {
                rest.push(r);
            }
        }
        let mut next: BTreeSet<Row> = rest.into_iter().map(normalized).collect();
        for lo in &lower {
            for up in &upper {
                // lo/a + up/|b| cancels v
                let a = lo.coeffs[v].clone();
                let b = -up.coeffs[v].clone();
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(p, q)| p / &a + q / &b)
                    .collect();
                let bound = &lo.bound / &a + &up.bound / &b;
                let origin = lo.origin.union(&up.origin).copied().collect();
                next.insert(normalized(Row { coeffs, bound, origin }));
            }
        }
        current = next.into_iter().collect();
    }
    stages.reverse();
    (stages, current)
}

fn conflict(constant_rows: &[Row]) -> Option<BTreeSet<usize>> {
    constant_rows
        .iter()
        .filter(|r| r.bound.is_positive())
        .min_by_key(|r| r.origin.len())
        .map(|r| r.origin.clone())
}

fn back_substitute(stages: &[Vec<Row>]) -> Vec<Rational> {
    let mut z: Vec<Rational> = Vec::with_capacity(stages.len());
    for (v, rows) in stages.iter().enumerate() {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for r in rows {
            let a = &r.coeffs[v];
            if a.is_zero() {
                continue;
            }
            let fixed: Rational = (0..v).map(|u| &r.coeffs[u] * &z[u]).sum();
            let limit = (&r.bound - fixed) / a;
            if a.is_positive() {
                lo = Some(lo.map_or(limit.clone(), |l| l.max(limit)));
            } else {
                hi = Some(hi.map_or(limit.clone(), |h| h.min(limit)));
            }
        }
        z.push(lo.or(hi).unwrap_or_else(Rational::zero));
    }
    z
}

fn feasible(rows: &[Row], nvars: usize) -> bool {
    let (_, constants) = eliminate(rows.to_vec(), nvars);
    conflict(&constants).is_none()
}

/// The comparisons `cell(k) > cell(k+1)` along the rank order.
pub fn chain_comparisons(ranks: &[Vec<usize>]) -> Vec<Comparison> {
    let m: usize = ranks.iter().map(Vec::len).sum();
    let mut cells = vec![GridIndex::new(0, 0); m];
    for (i, row) in ranks.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            cells[r - 1] = GridIndex::new(i + 1, j + 1);
        }
    }
    cells
        .windows(2)
        .map(|w| Comparison {
            higher: w[0],
            lower: w[1],
        })
        .collect()
}

/// Decides whether some integer `(x, y)` orders `x_i + y_j` by the rank grid
/// (rank 1 largest), with `x`, `y` strictly decreasing and nonnegative.
pub fn additive_feasibility(ranks: &[Vec<usize>]) -> Feasibility {
    let n1 = ranks.len();
    let n2 = ranks[0].len();
    let comparisons = chain_comparisons(ranks);
    let mut rows: Vec<Row> = comparisons
        .iter()
        .enumerate()
        .map(|(idx, c)| comparison_row(c, n1, n2, idx))
        .collect();
    rows.extend(sign_rows(n1, n2));

    let (stages, constants) = eliminate(rows.clone(), n1 + n2);
    if let Some(origin) = conflict(&constants) {
        // deletion filter: drop every comparison not needed for the conflict
        let mut core: Vec<usize> = origin.into_iter().collect();
        let mut i = 0;
        while i < core.len() {
            let trial: Vec<Row> = core
                .iter()
                .enumerate()
                .filter(|&(pos, _)| pos != i)
                .map(|(_, &idx)| rows[idx].clone())
                .collect();
            if feasible(&trial, n1 + n2) {
                i += 1;
            } else {
                core.remove(i);
            }
        }
        return Feasibility::Infeasible(core.into_iter().map(|idx| comparisons[idx]).collect());
    }

    let z = back_substitute(&stages);
    let lcm = z
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i64> = z
        .iter()
        .map(|q| {
            (q * Rational::from_integer(lcm.clone()))
                .to_integer()
                .to_i64()
                .expect("witness entries are small")
        })
        .collect();
    Feasibility::Feasible(Witness {
        x: ints[..n1].to_vec(),
        y: ints[n1..].to_vec(),
    })
}

/// Whether `witness` orders `x_i + y_j` exactly as `ranks`, with both vectors
/// strictly decreasing and nonnegative.
pub fn reproduces(ranks: &[Vec<usize>], witness: &Witness) -> bool {
    let decreasing = |v: &[i64]| v.windows(2).all(|w| w[0] > w[1]) && v.last().is_some_and(|&l| l >= 0);
    decreasing(&witness.x)
        && decreasing(&witness.y)
        && chain_comparisons(ranks)
            .iter()
            .all(|c| witness.value(c.higher) > witness.value(c.lower))
}

/// Strictly decreasing vectors of length `len` ending in 0 with first entry `≤ bound`.
fn decreasing_vectors(len: usize, bound: i64) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, remaining: usize, ceiling: i64, out: &mut Vec<Vec<i64>>) {
        if remaining == 1 {
            prefix.push(0);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in (remaining as i64 - 1..=ceiling).rev() {
            prefix.push(v);
            rec(prefix, remaining - 1, v - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), len, bound, &mut out);
    out
}

/// The witness of smallest maximal entry, ties broken by smallest sum and then
/// lexicographically on `(x, y)`. Falls back to `start` when the bounded search
/// would be too large.
pub fn minimize_witness(ranks: &[Vec<usize>], start: &Witness) -> Witness {
    const SEARCH_LIMIT: u64 = 2_000_000;
    let (n1, n2) = (start.x.len(), start.y.len());
    for bound in 0..=start.max_entry() {
        let xs = decreasing_vectors(n1, bound);
        let ys = decreasing_vectors(n2, bound);
        if (xs.len() as u64) * (ys.len() as u64) > SEARCH_LIMIT {
            break;
        }
        let best = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| Witness { x: x.clone(), y: y.clone() }))
            .filter(|w| w.max_entry() == bound && reproduces(ranks, w))
            .min_by_key(|w| {
                let sum: i64 = w.x.iter().chain(&w.y).sum();
                (sum, w.x.clone(), w.y.clone())
            });
        if let Some(w) = best {
            return w;
        }
    }
    start.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_two_by_two() {
        let ranks = vec![vec![1, 2], vec![3, 4]];
        let Feasibility::Feasible(w) = additive_feasibility(&ranks) else {
            panic!("feasible")
        };
        assert!(reproduces(&ranks, &w));
        let min = minimize_witness(&ranks, &w);
        assert_eq!(min, Witness { x: vec![2, 0], y: vec![1, 0] });
    }

    #[test]
    fn infeasible_three_by_three_grid_has_a_three_cycle() {
        // ranks 2>3, 4>5 and 7>8 sum to x1+x2+x3+y1+y2+y3 > itself
        let ranks = vec![vec![1, 2, 5], vec![3, 6, 7], vec![4, 8, 9]];
        let Feasibility::Infeasible(core) = additive_feasibility(&ranks) else {
            panic!("infeasible")
        };
        let c = |a: (usize, usize), b: (usize, usize)| Comparison {
            higher: GridIndex::new(a.0, a.1),
            lower: GridIndex::new(b.0, b.1),
        };
        assert_eq!(
            core,
            vec![c((1, 2), (2, 1)), c((3, 1), (1, 3)), c((2, 3), (3, 2))]
        );
    }

    #[test]
    fn decreasing_vector_listing() {
        assert_eq!(decreasing_vectors(2, 2), vec![vec![2, 0], vec![1, 0]]);
        assert_eq!(decreasing_vectors(3, 2), vec![vec![2, 1, 0]]);
        assert!(decreasing_vectors(3, 1).is_empty());
    }
}
