use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::characters::CharacterMemo;
use super::classes::{class_types, factorial, ClassType};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// Class data of one symmetric group `S_N`.
struct ClassTable {
    classes: Vec<ClassType>,
    /// Cycle types as `u16` parts, for the memo.
    cycle_types: Vec<Vec<u16>>,
    sizes: Vec<BigInt>,
    order: BigInt,
}

/// Exact Kronecker coefficients through the character inner product
/// `g = Σ_μ χ_α(μ) χ_β(μ) χ_γ(μ) / z_μ`.
///
/// All tables are shared and safe for concurrent queries.
#[derive(Default)]
pub struct KroneckerOracle {
    memo: CharacterMemo,
    tables: DashMap<u32, Arc<ClassTable>>,
    rows: DashMap<Vec<u32>, Arc<Vec<i128>>>,
}

fn to_u16_parts(p: &Partition) -> Result<Vec<u16>> {
    p.nonzero()
        .iter()
        .map(|&x| {
            u16::try_from(x).map_err(|_| Error::domain(format!("part {x} of {p} is too large")))
        })
        .collect()
}

impl KroneckerOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized character values.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn table(&self, n: u32) -> Arc<ClassTable> {
        if let Some(t) = self.tables.get(&n) {
            return Arc::clone(&t);
        }
        let classes = class_types(n);
        let cycle_types = classes
            .iter()
            .map(|c| c.cycle_type.nonzero().iter().map(|&p| p as u16).collect())
            .collect();
        let sizes = classes.iter().map(|c| BigInt::from(c.size())).collect();
        let table = Arc::new(ClassTable {
            classes,
            cycle_types,
            sizes,
            order: BigInt::from(factorial(n)),
        });
        self.tables.insert(n, Arc::clone(&table));
        table
    }

    /// Classes of `S_n` in the order used by [`Self::character_row`].
    pub fn classes(&self, n: u32) -> Vec<ClassType> {
        self.table(n).classes.clone()
    }

    /// `χ_λ` on the class of cycle type `class`.
    pub fn character(&self, lambda: &Partition, class: &Partition) -> Result<i128> {
        if lambda.weight() != class.weight() {
            return Err(Error::domain(format!(
                "character of {lambda} evaluated on a class of {} (weight {})",
                class,
                class.weight()
            )));
        }
        self.memo
            .value(&to_u16_parts(lambda)?, &to_u16_parts(class)?)
    }

    /// The full row `χ_λ(μ)` over all classes `μ ⊢ |λ|`.
    pub fn character_row(&self, lambda: &Partition) -> Result<Arc<Vec<i128>>> {
        let key = lambda.nonzero().to_vec();
        if let Some(row) = self.rows.get(&key) {
            return Ok(Arc::clone(&row));
        }
        let shape = to_u16_parts(lambda)?;
        let table = self.table(lambda.weight());
        let row = table
            .cycle_types
            .par_iter()
            .map(|class| self.memo.value(&shape, class))
            .collect::<Result<Vec<_>>>()?;
        let row = Arc::new(row);
        self.rows.insert(key, Arc::clone(&row));
        Ok(row)
    }

    /// The Kronecker coefficient `g_{α,β,γ}`; zero when the weights differ.
    pub fn kronecker(&self, alpha: &Partition, beta: &Partition, gamma: &Partition) -> Result<u64> {
        let n = alpha.weight();
        if beta.weight() != n || gamma.weight() != n {
            return Ok(0);
        }
        let table = self.table(n);
        let (ra, rb, rc) = (
            self.character_row(alpha)?,
            self.character_row(beta)?,
            self.character_row(gamma)?,
        );
        let mut total = BigInt::zero();
        for i in 0..table.classes.len() {
            let ab = ra[i]
                .checked_mul(rb[i])
                .ok_or_else(|| Error::Overflow(format!("χ_{alpha}·χ_{beta}")))?;
            if ab == 0 || rc[i] == 0 {
                continue;
            }
            total += BigInt::from(ab) * BigInt::from(rc[i]) * &table.sizes[i];
        }
        let (q, r) = total.div_rem(&table.order);
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "character sum for ({alpha}, {beta}, {gamma}) is not divisible by {n}!"
            )));
        }
        if q < BigInt::zero() {
            return Err(Error::consistency(format!(
                "negative Kronecker coefficient {q} for ({alpha}, {beta}, {gamma})"
            )));
        }
        q.to_u64()
            .ok_or_else(|| Error::Overflow(format!("g({alpha}, {beta}, {gamma}) = {q}")))
    }

    /// `g_{dα,dβ,dγ}`.
    pub fn kronecker_scaled(
        &self,
        alpha: &Partition,
        beta: &Partition,
        gamma: &Partition,
        d: u32,
    ) -> Result<u64> {
        self.kronecker(&alpha.scaled(d), &beta.scaled(d), &gamma.scaled(d))
    }

    /// Dimension of the irreducible module `M_λ`.
    pub fn dimension(&self, lambda: &Partition) -> Result<BigUint> {
        let d = self.memo.dimension(&to_u16_parts(lambda)?)?;
        Ok(BigUint::from(d as u128))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign_characters() {
        let oracle = KroneckerOracle::new();
        for n in 1..=7u32 {
            for class in partitions_of(n, n as usize) {
                assert_eq!(oracle.character(&p(&[n]), &class).unwrap(), 1);
                let sign = if (n as usize - class.length()).is_multiple_of(2) { 1 } else { -1 };
                let column = Partition::new(vec![1; n as usize]).unwrap();
                assert_eq!(oracle.character(&column, &class).unwrap(), sign);
            }
        }
    }

    #[test]
    fn weight_mismatch_is_a_domain_error() {
        let oracle = KroneckerOracle::new();
        assert!(matches!(
            oracle.character(&p(&[2, 1]), &p(&[2])),
            Err(Error::InputDomain(_))
        ));
    }

    #[test]
    fn kronecker_of_the_trivial_triple() {
        let oracle = KroneckerOracle::new();
        assert_eq!(oracle.kronecker(&p(&[1]), &p(&[1]), &p(&[1])).unwrap(), 1);
    }

    #[test]
    fn mismatched_weights_give_zero() {
        let oracle = KroneckerOracle::new();
        assert_eq!(oracle.kronecker(&p(&[2]), &p(&[1]), &p(&[1])).unwrap(), 0);
    }

    #[test]
    fn tensoring_with_the_trivial_module() {
        let oracle = KroneckerOracle::new();
        for n in 1..=6u32 {
            let parts = partitions_of(n, n as usize);
            for a in &parts {
                for b in &parts {
                    let expected = u64::from(a == b);
                    assert_eq!(oracle.kronecker(&p(&[n]), a, b).unwrap(), expected);
                }
            }
        }
    }
}
