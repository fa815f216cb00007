use num_bigint::BigUint;
use num_traits::One;

use crate::combinatorics::{partitions_of, Partition};

/// A conjugacy class of `S_N`, labelled by its cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassType {
    pub cycle_type: Partition,
    /// `z = Π_i i^{m_i} · m_i!`, where `m_i` is the multiplicity of part `i`.
    pub centralizer_order: BigUint,
}

impl ClassType {
    pub fn new(cycle_type: Partition) -> Self {
        let centralizer_order = centralizer_order(&cycle_type);
        ClassType {
            cycle_type,
            centralizer_order,
        }
    }

    /// Number of permutations with this cycle type: `N!/z`.
    pub fn size(&self) -> BigUint {
        factorial(self.cycle_type.weight()) / &self.centralizer_order
    }
}

pub fn centralizer_order(cycle_type: &Partition) -> BigUint {
    let parts = cycle_type.nonzero();
    let mut z = BigUint::one();
    let mut i = 0;
    while i < parts.len() {
        let part = parts[i];
        let mult = parts[i..].iter().take_while(|&&p| p == part).count();
        for m in 1..=mult {
            z *= BigUint::from(part) * BigUint::from(m);
        }
        i += mult;
    }
    z
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All classes of `S_n`, in reverse lexicographic order of cycle type.
pub fn class_types(n: u32) -> Vec<ClassType> {
    partitions_of(n, n as usize)
        .into_iter()
        .map(ClassType::new)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes_sum_to_the_group_order() {
        for n in 0..=12 {
            let total: BigUint = class_types(n).iter().map(ClassType::size).sum();
            assert_eq!(total, factorial(n), "n = {n}");
        }
    }

    #[test]
    fn centralizers_of_small_types() {
        let z = |parts: &[u32]| centralizer_order(&Partition::new(parts.to_vec()).unwrap());
        assert_eq!(z(&[3]), BigUint::from(3u32));
        assert_eq!(z(&[1, 1, 1]), BigUint::from(6u32));
        assert_eq!(z(&[2, 2, 1]), BigUint::from(8u32));
    }
}
