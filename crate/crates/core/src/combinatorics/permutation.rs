use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection of `{1..m}` in one-line notation: entry `k-1` is the image of `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let m = one_line.len();
        let mut seen = vec![false; m];
        for &x in &one_line {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::domain(format!(
                    "not a permutation of 1..{m}: {one_line:?}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            one_line: (1..=m).collect(),
        }
    }

    /// Builds a permutation of `{1..m}` from disjoint cycles `a → b → … → a`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut one_line: Vec<usize> = (1..=m).collect();
        let mut touched = vec![false; m];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                let b = cycle[(idx + 1) % cycle.len()];
                if a == 0 || a > m || b == 0 || b > m || touched[a - 1] {
                    return Err(Error::domain(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..{m}"
                    )));
                }
                touched[a - 1] = true;
                one_line[a - 1] = b;
            }
        }
        Permutation::new(one_line)
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Result<Self> {
        Permutation::from_cycles(m, &[&[a, b]])
    }

    pub fn size(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// Image of `k` (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.one_line[k - 1]
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::domain(format!(
                "cannot compose permutations of sizes {} and {}",
                self.size(),
                other.size()
            )));
        }
        Ok(Permutation {
            one_line: other.one_line.iter().map(|&k| self.apply(k)).collect(),
        })
    }

    /// Composition of a chain of equally sized permutations, rightmost applied first.
    pub fn product(factors: &[&Permutation]) -> Result<Permutation> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::domain("empty product of permutations"))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, p| acc.compose(p))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (k, &x) in self.one_line.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation { one_line: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// Coxeter length: the number of one-line inversions.
    pub fn length(&self) -> usize {
        let m = self.size();
        let mut count = 0;
        for a in 0..m {
            for b in a + 1..m {
                if self.one_line[a] > self.one_line[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest element,
    /// sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.size();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 1..=m {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// All permutations of `{1..m}` in lexicographic order of one-line notation.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=m).collect();
        loop {
            out.push(Permutation {
                one_line: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// All permutations of `{1..m}` of Coxeter length exactly `len`, sorted.
    ///
    /// Generated by right multiplication with simple transpositions, so only
    /// the `O(m^len)` short elements are ever visited.
    pub fn of_length(m: usize, len: usize) -> Vec<Permutation> {
        let mut layer = vec![Permutation::identity(m)];
        for _ in 0..len {
            let mut next = std::collections::BTreeSet::new();
            for p in &layer {
                for k in 1..m {
                    let mut q = p.clone();
                    q.one_line.swap(k - 1, k);
                    if q.length() == p.length() + 1 {
                        next.insert(q);
                    }
                }
            }
            layer = next.into_iter().collect();
        }
        layer
    }
}

/// The longest element `(m, m-1, …, 1)` of the symmetric group `S_m`.
pub fn longest_element(m: usize) -> Permutation {
    Permutation {
        one_line: (1..=m).rev().collect(),
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::cycles::format_cycles(self))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.one_line)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let one_line = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(one_line).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let p = perm(&[1, 3, 2, 4]);
        assert_eq!(p.compose(&Permutation::identity(4)).unwrap(), p);
        assert_eq!(Permutation::identity(4).compose(&p).unwrap(), p);
    }

    #[test]
    fn additive_pair_of_the_second_two_by_two_matrix() {
        let w_hat = perm(&[1, 3, 2, 4]);
        let u = w_hat.compose(&longest_element(4)).unwrap();
        assert_eq!(u.one_line(), &[4, 2, 3, 1]);
        assert_eq!(u.cycles(), vec![vec![1, 4]]);
    }

    #[test]
    fn longest_element_is_a_reversed_involution() {
        assert_eq!(longest_element(4).one_line(), &[4, 3, 2, 1]);
        let w0 = longest_element(6);
        assert_eq!(w0.one_line(), &[6, 5, 4, 3, 2, 1]);
        assert!(w0.compose(&w0).unwrap().is_identity());
        assert_eq!(w0.length(), 15);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert!(Permutation::identity(3)
            .compose(&Permutation::identity(4))
            .is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
    }

    #[test]
    fn from_cycles_matches_cycle_reading() {
        let p = Permutation::from_cycles(4, &[&[1, 4, 3]]).unwrap();
        assert_eq!(p.one_line(), &[4, 2, 1, 3]);
        assert!(Permutation::from_cycles(4, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn short_elements_are_counted_correctly() {
        // Mahonian numbers for m = 5: 1, 4, 9, ...
        assert_eq!(Permutation::of_length(5, 0).len(), 1);
        assert_eq!(Permutation::of_length(5, 1).len(), 4);
        assert_eq!(Permutation::of_length(5, 2).len(), 9);
        assert_eq!(Permutation::all(5).len(), 120);
    }

    fn arb_perm(m: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=m).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_law(p in (1usize..=8).prop_flat_map(arb_perm)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }

        #[test]
        fn associativity((p, q, r) in (1usize..=10).prop_flat_map(|m| (arb_perm(m), arb_perm(m), arb_perm(m)))) {
            let left = p.compose(&q).unwrap().compose(&r).unwrap();
            let right = p.compose(&q.compose(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
