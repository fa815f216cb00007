use serde::{Deserialize, Serialize};

use super::KroneckerOracle;
use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// Bounded-depth evidence about `g_{dα,dβ,dγ}` for `d = 1..=D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    /// Every value equals 1.
    StableEvidence,
    /// Every value is at most 1 and at least one equals 1.
    AlmostStableEvidence,
    /// Some value is at least 2.
    Refuted,
    /// Every value is 0; membership in the cone is not decided.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityProbe {
    /// `values[d-1] = g_{dα,dβ,dγ}`.
    pub values: Vec<u64>,
    pub verdict: ProbeVerdict,
}

pub fn classify(values: &[u64]) -> ProbeVerdict {
    if values.iter().any(|&v| v >= 2) {
        ProbeVerdict::Refuted
    } else if values.iter().all(|&v| v == 1) {
        ProbeVerdict::StableEvidence
    } else if values.contains(&1) {
        ProbeVerdict::AlmostStableEvidence
    } else {
        ProbeVerdict::Undetermined
    }
}

impl KroneckerOracle {
    pub fn stability_probe(
        &self,
        alpha: &Partition,
        beta: &Partition,
        gamma: &Partition,
        depth: u32,
    ) -> Result<StabilityProbe> {
        if depth == 0 {
            return Err(Error::domain("stability probe depth must be at least 1"));
        }
        let values = (1..=depth)
            .map(|d| self.kronecker_scaled(alpha, beta, gamma, d))
            .collect::<Result<Vec<_>>>()?;
        let verdict = classify(&values);
        Ok(StabilityProbe { values, verdict })
    }

    /// `[g_{λ+dα, μ+dβ, ν+dγ}]` for `d = 0..=d_max`.
    pub fn murnaghan_probe(
        &self,
        base: (&Partition, &Partition, &Partition),
        direction: (&Partition, &Partition, &Partition),
        d_max: u32,
    ) -> Result<Vec<u64>> {
        (0..=d_max)
            .map(|d| {
                self.kronecker(
                    &base.0.add(&direction.0.scaled(d)),
                    &base.1.add(&direction.1.scaled(d)),
                    &base.2.add(&direction.2.scaled(d)),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn verdict_table() {
        assert_eq!(classify(&[1, 1, 1]), ProbeVerdict::StableEvidence);
        assert_eq!(classify(&[0, 1, 1]), ProbeVerdict::AlmostStableEvidence);
        assert_eq!(classify(&[1, 0, 1]), ProbeVerdict::AlmostStableEvidence);
        assert_eq!(classify(&[1, 2]), ProbeVerdict::Refuted);
        assert_eq!(classify(&[0, 0]), ProbeVerdict::Undetermined);
    }

    #[test]
    fn murnaghan_triple_is_stable() {
        let oracle = KroneckerOracle::new();
        let one = p(&[1]);
        let probe = oracle.stability_probe(&one, &one, &one, 4).unwrap();
        assert_eq!(probe.values, vec![1, 1, 1, 1]);
        assert_eq!(probe.verdict, ProbeVerdict::StableEvidence);
    }

    #[test]
    fn zero_depth_is_rejected() {
        let oracle = KroneckerOracle::new();
        let one = p(&[1]);
        assert!(oracle.stability_probe(&one, &one, &one, 0).is_err());
    }

    #[test]
    fn zero_base_reduces_to_the_direction_probe() {
        let oracle = KroneckerOracle::new();
        let one = p(&[1]);
        let zero = Partition::empty();
        let values = oracle
            .murnaghan_probe((&zero, &zero, &zero), (&one, &one, &one), 3)
            .unwrap();
        assert_eq!(values, vec![1, 1, 1, 1]);
    }
}
