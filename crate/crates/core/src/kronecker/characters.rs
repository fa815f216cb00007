//! Murnaghan–Nakayama rule on beta-sets, memoized on `(shape, class suffix)`.

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::classes::factorial;
use crate::error::{Error, Result};

/// Memo key: the nonzero parts of the shape, a `0` separator, then the
/// remaining class parts in decreasing order.
type Key = Box<[u16]>;

fn key(shape: &[u16], rest: &[u16]) -> Key {
    let mut k = Vec::with_capacity(shape.len() + rest.len() + 1);
    k.extend_from_slice(shape);
    k.push(0);
    k.extend_from_slice(rest);
    k.into_boxed_slice()
}

/// Shared table of character values `χ_shape(rest)`.
#[derive(Default)]
pub struct CharacterMemo {
    table: DashMap<Key, i128>,
}

impl CharacterMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// `χ_shape` evaluated on the class with cycle type `class`; both are
    /// nonzero parts in decreasing order and of equal weight.
    pub fn value(&self, shape: &[u16], class: &[u16]) -> Result<i128> {
        if class.is_empty() {
            return Ok(if shape.is_empty() { 1 } else { 0 });
        }
        if class[0] == 1 {
            return self.dimension(shape);
        }
        let k = key(shape, class);
        if let Some(v) = self.table.get(&k) {
            return Ok(*v);
        }
        let hook = class[0] as usize;
        let rest = &class[1..];
        let mut total: i128 = 0;
        for (sign, smaller) in remove_rim_hooks(shape, hook) {
            let v = self.value(&smaller, rest)?;
            total = total
                .checked_add(sign * v)
                .ok_or_else(|| Error::Overflow(format!("character of {shape:?} at {class:?}")))?;
        }
        self.table.insert(k, total);
        Ok(total)
    }

    /// Number of standard tableaux of the shape, by the hook length formula.
    pub fn dimension(&self, shape: &[u16]) -> Result<i128> {
        let n: u32 = shape.iter().map(|&p| p as u32).sum();
        let k = key(shape, &[]);
        if let Some(v) = self.table.get(&k) {
            return Ok(*v);
        }
        let mut hooks = BigUint::from(1u32);
        for (i, &row) in shape.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = shape[i + 1..].iter().filter(|&&r| r as usize > j).count();
                hooks *= BigUint::from(arm + leg + 1);
            }
        }
        let (dim, rem) = num_integer::Integer::div_rem(&factorial(n), &hooks);
        if rem != BigUint::from(0u32) {
            return Err(Error::consistency(format!(
                "hook length product does not divide {n}! for shape {shape:?}"
            )));
        }
        let dim = dim
            .to_i128()
            .ok_or_else(|| Error::Overflow(format!("dimension of shape {shape:?}")))?;
        self.table.insert(k, dim);
        Ok(dim)
    }
}

/// All shapes obtained by removing a rim hook of size `hook`, with the sign
/// `(-1)^{height}` of each removed hook.
///
/// On the beta-set `b_i = λ_i + (ℓ - i)` a rim hook of size `h` is a bead
/// moving from `b` to the empty position `b - h`; the height is the number of
/// beads jumped over.
pub(crate) fn remove_rim_hooks(shape: &[u16], hook: usize) -> Vec<(i128, Vec<u16>)> {
    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p as usize + (len - 1 - i))
        .collect();
    let mut out = Vec::new();
    for i in 0..len {
        let b = beta[i];
        if b < hook {
            continue;
        }
        let target = b - hook;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<u16> = moved
            .iter()
            .enumerate()
            .map(|(r, &x)| (x - (len - 1 - r)) as u16)
            .filter(|&p| p > 0)
            .collect();
        out.push((sign, smaller));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hooks_of_a_square() {
        // (2,2) has one rim hook of size 3, of height 1
        let hooks = remove_rim_hooks(&[2, 2], 3);
        assert_eq!(hooks, vec![(-1, vec![1])]);
        assert_eq!(remove_rim_hooks(&[2, 2], 1), vec![(1, vec![2, 1])]);
        // the whole square is not a rim hook
        assert!(remove_rim_hooks(&[2, 2], 4).is_empty());
    }

    #[test]
    fn small_character_values() {
        let memo = CharacterMemo::new();
        assert_eq!(memo.value(&[2, 1], &[3]).unwrap(), -1);
        assert_eq!(memo.value(&[2, 1], &[2, 1]).unwrap(), 0);
        assert_eq!(memo.value(&[2, 1], &[1, 1, 1]).unwrap(), 2);
        assert_eq!(memo.value(&[3, 2], &[1, 1, 1, 1, 1]).unwrap(), 5);
    }
}
