//! Lattice points on a face, checked against the exact oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{canonical_system, integer_rows, FaceDescriptor, LatticeTriple};
use crate::combinatorics::{partitions_of, Partition};
use crate::error::Result;
use crate::kronecker::{classify, KroneckerOracle, ProbeVerdict};
use crate::linalg::{rank, rat, span_equations, Rational};

/// Triples of weight `n` on the μ = 0 subspace of `face`, in reverse
/// lexicographic order of `γ`.
///
/// On that subspace `α` and `β` are determined by `γ`, so only the
/// partitions `γ ⊢ n` need to be walked.
pub fn enumerate_face_triples(face: &FaceDescriptor, n: u32) -> Vec<LatticeTriple> {
    let m = face.n1 * face.n2;
    let decreasing = |v: &[u32]| v.windows(2).all(|w| w[0] >= w[1]);
    partitions_of(n, m)
        .into_iter()
        .filter_map(|g| {
            let gamma = g.padded(m).ok()?;
            let (alpha, beta) = face.marginals_of(gamma.parts());
            if !decreasing(&alpha) || !decreasing(&beta) {
                return None;
            }
            Some(LatticeTriple {
                alpha: Partition::new(alpha).ok()?,
                beta: Partition::new(beta).ok()?,
                gamma,
            })
        })
        .filter(|t| face.satisfies(t))
        .collect()
}

/// A triple with `g_{dα,dβ,dγ}` for `d = 1..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbedTriple {
    pub triple: LatticeTriple,
    pub values: Vec<u64>,
}

impl ProbedTriple {
    /// Some multiple up to the probed depth has a nonzero coefficient.
    pub fn in_cone(&self) -> bool {
        self.values.iter().any(|&v| v > 0)
    }

    pub fn verdict(&self) -> ProbeVerdict {
        classify(&self.values)
    }
}

/// Every triple of weight `1..=n_max` on the face, probed to depth `depth`.
pub fn probe_face(
    face: &FaceDescriptor,
    oracle: &KroneckerOracle,
    n_max: u32,
    depth: u32,
) -> Result<Vec<ProbedTriple>> {
    let triples: Vec<LatticeTriple> = (1..=n_max).flat_map(|n| enumerate_face_triples(face, n)).collect();
    triples
        .into_par_iter()
        .map(|t| {
            let probe = oracle.stability_probe(&t.alpha, &t.beta, &t.gamma, depth)?;
            Ok(ProbedTriple {
                triple: t,
                values: probe.values,
            })
        })
        .collect()
}

/// The rational span of the points of a face found in the cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpanData {
    /// Canonical (RREF, primitive integer rows) equations of the span.
    pub equations: Vec<Vec<i64>>,
    /// Rank of the point set: a lower bound for the face dimension.
    pub dimension_estimate: usize,
    pub points: usize,
    /// Triples on the μ = 0 subspace with all probed values zero.
    pub undetermined: usize,
}

impl SpanData {
    pub fn is_empty(&self) -> bool {
        self.points == 0
    }
}

/// Span of the probed triples lying in the cone.
pub fn span_of(probed: &[ProbedTriple], ncols: usize) -> SpanData {
    let points: Vec<Vec<Rational>> = probed
        .iter()
        .filter(|p| p.in_cone())
        .map(|p| p.triple.coordinates().into_iter().map(rat).collect())
        .collect();
    SpanData {
        equations: integer_rows(&span_equations(&points, ncols)),
        dimension_estimate: rank(&points, ncols),
        points: points.len(),
        undetermined: probed.len() - points.len(),
    }
}

pub fn face_span_from_points(
    face: &FaceDescriptor,
    oracle: &KroneckerOracle,
    n_max: u32,
    depth: u32,
) -> Result<SpanData> {
    Ok(span_of(&probe_face(face, oracle, n_max, depth)?, face.ncols()))
}

/// The first triple (by weight, then reverse lexicographic `γ`) on the face
/// with `g ≠ 0` and `α`, `β` regular or `γ` regular.
pub fn wellcovering_certificate(
    face: &FaceDescriptor,
    oracle: &KroneckerOracle,
    n_max: u32,
) -> Result<Option<LatticeTriple>> {
    for n in 1..=n_max {
        let candidates: Vec<LatticeTriple> = enumerate_face_triples(face, n)
            .into_iter()
            .filter(LatticeTriple::is_certificate_shape)
            .collect();
        let hits = candidates
            .par_iter()
            .map(|t| oracle.kronecker(&t.alpha, &t.beta, &t.gamma).map(|g| g > 0))
            .collect::<Result<Vec<bool>>>()?;
        if let Some(pos) = hits.iter().position(|&h| h) {
            return Ok(Some(candidates[pos].clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityExpectation {
    /// Every probed value equals 1.
    Stable,
    /// Every probed value is at most 1.
    AlmostStable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub expectation: StabilityExpectation,
    pub n_max: u32,
    pub depth: u32,
    /// Triples with some nonzero probed value.
    pub probed: usize,
    pub stable_evidence: usize,
    pub almost_stable_evidence: usize,
    pub undetermined: usize,
    /// Triples breaking the expectation.
    pub failures: Vec<ProbedTriple>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// No point of the face was found in the cone.
    pub fn possibly_zero(&self) -> bool {
        self.probed == 0
    }

    pub fn summary(&self) -> String {
        if self.possibly_zero() {
            return format!(
                "possibly reduced to zero: no point up to N={} found in the cone",
                self.n_max
            );
        }
        format!(
            "{} triples probed to d={}: {} stable, {} almost stable, {} failures",
            self.probed,
            self.depth,
            self.stable_evidence,
            self.almost_stable_evidence,
            self.failures.len()
        )
    }
}

pub fn stability_from_probes(
    probed: &[ProbedTriple],
    expectation: StabilityExpectation,
    n_max: u32,
    depth: u32,
) -> StabilityReport {
    let mut report = StabilityReport {
        expectation,
        n_max,
        depth,
        probed: 0,
        stable_evidence: 0,
        almost_stable_evidence: 0,
        undetermined: 0,
        failures: Vec::new(),
    };
    for p in probed {
        let verdict = p.verdict();
        match verdict {
            ProbeVerdict::Undetermined => {
                report.undetermined += 1;
                continue;
            }
            ProbeVerdict::StableEvidence => report.stable_evidence += 1,
            ProbeVerdict::AlmostStableEvidence => report.almost_stable_evidence += 1,
            ProbeVerdict::Refuted => {}
        }
        report.probed += 1;
        let ok = match expectation {
            StabilityExpectation::Stable => verdict == ProbeVerdict::StableEvidence,
            StabilityExpectation::AlmostStable => verdict != ProbeVerdict::Refuted,
        };
        if !ok {
            report.failures.push(p.clone());
        }
    }
    report
}

/// Probes every triple on the face; well-covering faces must show only
/// stable evidence, dominant ones only values `≤ 1`.
pub fn verify_face_stability(
    face: &FaceDescriptor,
    oracle: &KroneckerOracle,
    n_max: u32,
    depth: u32,
) -> Result<StabilityReport> {
    let probed = probe_face(face, oracle, n_max, depth)?;
    let expectation = if face.is_well_covering() {
        StabilityExpectation::Stable
    } else {
        StabilityExpectation::AlmostStable
    };
    Ok(stability_from_probes(&probed, expectation, n_max, depth))
}

/// Canonical equations of `rows` together with `|α| = |γ|` and `|β| = |γ|`.
pub fn with_weight_equations(rows: &[Vec<i64>], n1: usize, n2: usize) -> Vec<Vec<i64>> {
    let m = n1 * n2;
    let ncols = n1 + n2 + m;
    let mut all = rows.to_vec();
    let mut a = vec![0; ncols];
    let mut b = vec![0; ncols];
    for i in 0..n1 {
        a[i] = 1;
    }
    for j in 0..n2 {
        b[n1 + j] = 1;
    }
    for k in 0..m {
        a[n1 + n2 + k] = -1;
        b[n1 + n2 + k] = -1;
    }
    all.push(a);
    all.push(b);
    canonical_system(&all, ncols)
}
