//! Configurations read off an order matrix and the dominant pairs `(v, v̂)`
//! they produce.
//!
//! Formulas are stated for `v^{-1}` and `v̂^{-1}`, with the cycles on ranks
//! conjugated into lexicographic positions: `v̂^{-1} = ŵ c ŵ₀`.

mod sweep;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{longest_element, GridIndex, Permutation};
use crate::error::{Error, Result};
use crate::order_matrix::OrderMatrix;
use crate::roots::{dominance_check, WeylPair};

pub use sweep::generic_length2_sweep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConfigKind {
    #[serde(rename = "ADD")]
    Add,
    H,
    V,
    A,
    B,
    Bt,
    C,
    D,
    E1,
    E2,
    Et1,
    Et2,
}

impl ConfigKind {
    /// `ℓ(v)`, which is also `ℓ(((v̂ŵ)^∨)^{-1})`.
    pub fn length(self) -> usize {
        match self {
            ConfigKind::Add => 0,
            ConfigKind::H | ConfigKind::V => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::Add => "ADD",
            ConfigKind::H => "H",
            ConfigKind::V => "V",
            ConfigKind::A => "A",
            ConfigKind::B => "B",
            ConfigKind::Bt => "Bt",
            ConfigKind::C => "C",
            ConfigKind::D => "D",
            ConfigKind::E1 => "E1",
            ConfigKind::E2 => "E2",
            ConfigKind::Et1 => "Et1",
            ConfigKind::Et2 => "Et2",
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ranks a configuration occupies and the cells holding them, in the order
/// the defining pattern names them (`k, k+1[, k+2]` or `k, k+1, k', k'+1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Anchor {
    pub ranks: Vec<usize>,
    pub cells: Vec<GridIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub anchor: Anchor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    Dominant,
    WellCoveringByTheorem,
    WellCoveringCertified,
}

impl PairStatus {
    pub fn is_well_covering(self) -> bool {
        self != PairStatus::Dominant
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDescriptor {
    /// 1-based position of the source matrix in the enumeration.
    pub matrix_id: usize,
    pub source: OrderMatrix,
    pub kind: ConfigKind,
    pub anchor: Anchor,
    pub v: WeylPair,
    pub v_hat: Permutation,
    pub u_hat: Permutation,
    pub status: PairStatus,
}

impl PairDescriptor {
    pub fn length(&self) -> usize {
        self.kind.length()
    }
}

fn anchor(r: &OrderMatrix, ranks: &[usize]) -> Anchor {
    Anchor {
        ranks: ranks.to_vec(),
        cells: ranks.iter().map(|&k| r.cell_of_rank(k)).collect(),
    }
}

fn below(a: GridIndex, b: GridIndex) -> bool {
    b.row == a.row + 1 && b.col == a.col
}

fn right_of(a: GridIndex, b: GridIndex) -> bool {
    b.row == a.row && b.col == a.col + 1
}

/// All configurations of an order matrix: the additive one, then the
/// length-1 patterns, then the length-2 patterns, each family sorted by rank.
pub fn detect_configs(r: &OrderMatrix) -> Vec<Configuration> {
    let m = r.size();
    let cell = |k: usize| r.cell_of_rank(k);
    let push = |out: &mut Vec<Configuration>, kind, ranks: &[usize]| {
        out.push(Configuration {
            kind,
            anchor: anchor(r, ranks),
        })
    };
    let mut out = Vec::new();
    push(&mut out, ConfigKind::Add, &[]);

    let verticals: Vec<usize> = (1..m).filter(|&k| below(cell(k), cell(k + 1))).collect();
    let horizontals: Vec<usize> = (1..m).filter(|&k| right_of(cell(k), cell(k + 1))).collect();
    for k in 1..m {
        if horizontals.contains(&k) {
            push(&mut out, ConfigKind::H, &[k, k + 1]);
        }
        if verticals.contains(&k) {
            push(&mut out, ConfigKind::V, &[k, k + 1]);
        }
    }

    for &k in &verticals {
        for &k2 in &horizontals {
            if k.abs_diff(k2) >= 2 {
                push(&mut out, ConfigKind::A, &[k, k + 1, k2, k2 + 1]);
            }
        }
    }
    for (idx, &k) in verticals.iter().enumerate() {
        for &k2 in &verticals[idx + 1..] {
            if k.abs_diff(k2) >= 2 && cell(k).row.abs_diff(cell(k2).row) >= 2 {
                push(&mut out, ConfigKind::B, &[k, k + 1, k2, k2 + 1]);
            }
        }
    }
    for (idx, &k) in horizontals.iter().enumerate() {
        for &k2 in &horizontals[idx + 1..] {
            if k.abs_diff(k2) >= 2 && cell(k).col.abs_diff(cell(k2).col) >= 2 {
                push(&mut out, ConfigKind::Bt, &[k, k + 1, k2, k2 + 1]);
            }
        }
    }
    for k in 1..m.saturating_sub(1) {
        let (a, b, c) = (cell(k), cell(k + 1), cell(k + 2));
        let ranks = [k, k + 1, k + 2];
        if (below(a, b) && right_of(a, c)) || (right_of(a, b) && below(a, c)) {
            push(&mut out, ConfigKind::C, &ranks);
        }
        let square = |x: GridIndex, y: GridIndex| {
            x.row + 1 == y.row && x.col == y.col + 1 && below(x, c) && right_of(y, c)
        };
        if square(a, b) || square(b, a) {
            push(&mut out, ConfigKind::D, &ranks);
        }
        if below(a, b) && below(b, c) {
            push(&mut out, ConfigKind::E1, &ranks);
            push(&mut out, ConfigKind::E2, &ranks);
        }
        if right_of(a, b) && right_of(b, c) {
            push(&mut out, ConfigKind::Et1, &ranks);
            push(&mut out, ConfigKind::Et2, &ranks);
        }
    }
    out
}

/// `v^{-1}` and the rank cycle `c` with `v̂^{-1} = ŵ c ŵ₀`.
fn pair_data(r: &OrderMatrix, cfg: &Configuration) -> Result<(WeylPair, Permutation)> {
    let (n1, n2, m) = (r.n1, r.n2, r.size());
    let ranks = &cfg.anchor.ranks;
    let cells = &cfg.anchor.cells;
    let t1 = |i: usize| Permutation::transposition(n1, i, i + 1);
    let t2 = |j: usize| Permutation::transposition(n2, j, j + 1);
    let id1 = Permutation::identity(n1);
    let id2 = Permutation::identity(n2);
    let rank_cycle = |c: &[usize]| Permutation::from_cycles(m, &[c]);
    let two_swaps = || -> Result<Permutation> {
        Permutation::from_cycles(m, &[&[ranks[0], ranks[1]], &[ranks[2], ranks[3]]])
    };
    Ok(match cfg.kind {
        ConfigKind::Add => (WeylPair::identity(n1, n2), Permutation::identity(m)),
        ConfigKind::H => (WeylPair::new(id1, t2(cells[0].col)?), rank_cycle(&ranks[..2])?),
        ConfigKind::V => (WeylPair::new(t1(cells[0].row)?, id2), rank_cycle(&ranks[..2])?),
        ConfigKind::A => (WeylPair::new(t1(cells[0].row)?, t2(cells[2].col)?), two_swaps()?),
        ConfigKind::B => (
            WeylPair::new(t1(cells[0].row)?.compose(&t1(cells[2].row)?)?, id2),
            two_swaps()?,
        ),
        ConfigKind::Bt => (
            WeylPair::new(id1, t2(cells[0].col)?.compose(&t2(cells[2].col)?)?),
            two_swaps()?,
        ),
        ConfigKind::C | ConfigKind::D => {
            let top = cells.iter().map(|c| c.row).min().unwrap_or(1);
            let left = cells.iter().map(|c| c.col).min().unwrap_or(1);
            let c = if cfg.kind == ConfigKind::C {
                [ranks[0], ranks[1], ranks[2]]
            } else {
                [ranks[0], ranks[2], ranks[1]]
            };
            (WeylPair::new(t1(top)?, t2(left)?), rank_cycle(&c)?)
        }
        ConfigKind::E1 | ConfigKind::E2 | ConfigKind::Et1 | ConfigKind::Et2 => {
            let forward = matches!(cfg.kind, ConfigKind::E1 | ConfigKind::Et1);
            let c = if forward {
                [ranks[0], ranks[1], ranks[2]]
            } else {
                [ranks[0], ranks[2], ranks[1]]
            };
            let columnwise = matches!(cfg.kind, ConfigKind::E1 | ConfigKind::E2);
            let start = if columnwise { cells[0].row } else { cells[0].col };
            let size = if columnwise { n1 } else { n2 };
            let g = if forward {
                Permutation::from_cycles(size, &[&[start, start + 1, start + 2]])?
            } else {
                Permutation::from_cycles(size, &[&[start, start + 2, start + 1]])?
            };
            let v_inv = if columnwise {
                WeylPair::new(g, id2)
            } else {
                WeylPair::new(id1, g)
            };
            (v_inv, rank_cycle(&c)?)
        }
    })
}

/// `û = φ(v) ∘ v̂^{-1}`: the representative `(B/B, ûB̂/B̂)` of the `G`-orbit
/// of `C = {(v^{-1}B/B, v̂^{-1}B̂/B̂)}`.
pub fn normalize(v: &WeylPair, v_hat: &Permutation) -> Result<Permutation> {
    v.embed().compose(&v_hat.inverse())
}

/// The pair a configuration produces; fails if the configuration does not
/// occur in the matrix or the pair is not dominant.
pub fn build_pair(r: &OrderMatrix, matrix_id: usize, cfg: &Configuration) -> Result<PairDescriptor> {
    if cfg.anchor != anchor(r, &cfg.anchor.ranks)
        || !detect_configs(r).iter().any(|c| c == cfg)
    {
        return Err(Error::domain(format!(
            "configuration {} at ranks {:?} does not occur in {}",
            cfg.kind,
            cfg.anchor.ranks,
            r.ranks_text()
        )));
    }
    let (v_inv, c) = pair_data(r, cfg)?;
    let w_hat = r.hat_w();
    let v_hat_inv = Permutation::product(&[&w_hat, &c, &longest_element(r.size())])?;
    let v = v_inv.inverse();
    let v_hat = v_hat_inv.inverse();
    if !dominance_check(&v, &v_hat, &w_hat)? {
        return Err(Error::consistency(format!(
            "configuration {} at ranks {:?} of {} fails the dominance criterion",
            cfg.kind,
            cfg.anchor.ranks,
            r.ranks_text()
        )));
    }
    let u_hat = normalize(&v, &v_hat)?;
    let status = if cfg.kind.length() <= 1 {
        PairStatus::WellCoveringByTheorem
    } else {
        PairStatus::Dominant
    };
    Ok(PairDescriptor {
        matrix_id,
        source: r.clone(),
        kind: cfg.kind,
        anchor: cfg.anchor.clone(),
        v,
        v_hat,
        u_hat,
        status,
    })
}

/// All pairs of all matrices, matrix by matrix; a configuration repeating an
/// earlier `(v, v̂)` of the same matrix is dropped.
pub fn build_all_pairs(matrices: &[OrderMatrix]) -> Result<Vec<PairDescriptor>> {
    let per_matrix: Vec<Vec<PairDescriptor>> = matrices
        .par_iter()
        .enumerate()
        .map(|(idx, r)| {
            let mut pairs: Vec<PairDescriptor> = Vec::new();
            for cfg in detect_configs(r) {
                let p = build_pair(r, idx + 1, &cfg)?;
                if !pairs.iter().any(|q| q.v == p.v && q.v_hat == p.v_hat) {
                    pairs.push(p);
                }
            }
            Ok(pairs)
        })
        .collect::<Result<_>>()?;
    Ok(per_matrix.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::cycles::parse_cycles;
    use crate::order_matrix::enumerate_order_matrices;

    fn matrix(rows: &[&[usize]]) -> OrderMatrix {
        OrderMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn kinds(r: &OrderMatrix) -> Vec<ConfigKind> {
        detect_configs(r).into_iter().map(|c| c.kind).collect()
    }

    #[test]
    fn normalization_of_the_worked_example() {
        let v = WeylPair::new(Permutation::transposition(2, 1, 2).unwrap(), Permutation::identity(2));
        let v_hat_inv = parse_cycles(4, "(1 4 3)").unwrap();
        let u = normalize(&v, &v_hat_inv.inverse()).unwrap();
        assert_eq!(u.to_string(), "(1 2 4)");
        let id = WeylPair::identity(2, 2);
        assert_eq!(normalize(&id, &v_hat_inv.inverse()).unwrap(), v_hat_inv);
    }

    #[test]
    fn configurations_of_the_worked_two_by_two_matrix() {
        use ConfigKind::*;
        let r = matrix(&[&[1, 3], &[2, 4]]);
        assert_eq!(kinds(&r), vec![Add, V, V, C, D]);
        let pairs = build_all_pairs(&[r]).unwrap();
        let u: Vec<String> = pairs.iter().map(|p| p.u_hat.to_string()).collect();
        assert_eq!(u, vec!["(1 4)", "(1 2 4)", "(1 4 3)", "(2 4)", "(1 3)"]);
        let raw: Vec<String> = pairs[3..].iter().map(|p| p.v_hat.inverse().to_string()).collect();
        assert_eq!(raw, vec!["(1 4 3 2)", "(1 2 3 4)"]);
    }

    #[test]
    fn column_triples_give_two_pairs_each() {
        let r = matrix(&[&[1, 4], &[2, 5], &[3, 6]]);
        let pairs = build_all_pairs(&[r]).unwrap();
        let e: Vec<String> = pairs
            .iter()
            .filter(|p| matches!(p.kind, ConfigKind::E1 | ConfigKind::E2))
            .map(|p| p.u_hat.to_string())
            .collect();
        assert_eq!(
            e,
            vec!["(1 4 5 3 6)", "(1 2 6)(3 4 5)", "(1 6 5)(2 4 3)", "(1 6 3 2 4)"]
        );
    }

    #[test]
    fn pair_counts() {
        for ((n1, n2), (add, one, two)) in [((2, 2), (2, 4, 4)), ((3, 2), (5, 15, 20)), ((3, 3), (36, 144, 232))] {
            let pairs = build_all_pairs(&enumerate_order_matrices(n1, n2)).unwrap();
            let count = |l| pairs.iter().filter(|p| p.length() == l).count();
            assert_eq!((count(0), count(1), count(2)), (add, one, two), "{n1}×{n2}");
        }
    }

    #[test]
    fn foreign_configuration_is_rejected() {
        let r = matrix(&[&[1, 2], &[3, 4]]);
        let other = matrix(&[&[1, 3], &[2, 4]]);
        let cfg = detect_configs(&other)
            .into_iter()
            .find(|c| c.kind == ConfigKind::V)
            .unwrap();
        assert!(matches!(build_pair(&r, 1, &cfg), Err(Error::InputDomain(_))));
    }

    #[test]
    fn statuses_follow_length() {
        let pairs = build_all_pairs(&enumerate_order_matrices(3, 2)).unwrap();
        for p in pairs {
            let expected = if p.length() <= 1 {
                PairStatus::WellCoveringByTheorem
            } else {
                PairStatus::Dominant
            };
            assert_eq!(p.status, expected);
        }
    }
}
