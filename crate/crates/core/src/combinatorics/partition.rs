use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers.
///
/// Trailing zeros are kept so that cone coordinates have a fixed arity, but
/// equality, ordering and hashing only look at the nonzero parts.
#[derive(Clone, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// All stored parts, trailing zeros included.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The nonzero parts.
    pub fn nonzero(&self) -> &[u32] {
        let len = self.length();
        &self.parts[..len]
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    /// Number of stored parts (the arity of the coordinate vector).
    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    /// Part `i` (0-based); zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Re-pads with zeros to exactly `len` stored parts.
    pub fn padded(&self, len: usize) -> Result<Self> {
        if self.length() > len {
            return Err(Error::domain(format!(
                "partition {self} has more than {len} nonzero parts"
            )));
        }
        let mut parts = self.nonzero().to_vec();
        parts.resize(len, 0);
        Ok(Partition { parts })
    }

    pub fn scaled(&self, d: u32) -> Self {
        Partition {
            parts: self.parts.iter().map(|p| p * d).collect(),
        }
    }

    /// Part-wise sum; the arity is the larger of the two.
    pub fn add(&self, other: &Partition) -> Self {
        let len = self.parts.len().max(other.parts.len());
        Partition {
            parts: (0..len).map(|i| self.part(i) + other.part(i)).collect(),
        }
    }

    /// `arity` pairwise distinct parts once padded, the last one possibly zero.
    pub fn is_regular(&self, arity: usize) -> bool {
        if self.length() > arity {
            return false;
        }
        (0..arity.saturating_sub(1)).all(|i| self.part(i) > self.part(i + 1))
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero() == other.nonzero()
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nonzero().hash(state);
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nonzero().cmp(other.nonzero())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.nonzero().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` with at most `max_len` nonzero parts, in reverse
/// lexicographic order.
pub fn partitions_of(n: u32, max_len: usize) -> Vec<Partition> {
    fn rec(rest: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            // the remaining slots must be able to absorb what is left
            if (p as u64) * (slots as u64) < rest as u64 {
                break;
            }
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_len, &mut Vec::new(), &mut out);
    out
}
