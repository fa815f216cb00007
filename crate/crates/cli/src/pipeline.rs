use rayon::prelude::*;

use kronface::faces::{
    dedup_faces, face_equations, probe_face, span_of, stability_from_probes, wellcovering_certificate,
    FaceDescriptor, FaceGroups, StabilityExpectation,
};
use kronface::pairs::build_all_pairs;
use kronface::{enumerate_order_matrices, KroneckerOracle, OrderMatrix, PairDescriptor, PairStatus, Result};

/// Search bound and probe depth for one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RunParams {
    pub n1: usize,
    pub n2: usize,
    pub n_max: u32,
    pub depth: u32,
}

impl RunParams {
    /// Character cost grows with `d·N`, so larger grids get smaller bounds.
    pub fn with_defaults(n1: usize, n2: usize) -> Self {
        let (n_max, depth) = if n1 * n2 <= 6 { (10, 3) } else { (9, 2) };
        RunParams { n1, n2, n_max, depth }
    }
}

pub struct PipelineOutput {
    pub params: RunParams,
    pub matrices: Vec<OrderMatrix>,
    /// Pairs with their final status (certified pairs upgraded).
    pub pairs: Vec<PairDescriptor>,
    /// One face per pair, in pair order, before deduplication.
    pub faces: Vec<FaceDescriptor>,
    pub groups: FaceGroups,
}

impl PipelineOutput {
    /// Probed triples breaking their face's expectation.
    pub fn stability_failures(&self) -> usize {
        self.faces
            .iter()
            .filter_map(|f| f.stability.as_ref())
            .map(|s| s.failures.len())
            .sum()
    }
}

fn process(pair: &PairDescriptor, oracle: &KroneckerOracle, params: RunParams) -> Result<FaceDescriptor> {
    let mut face = face_equations(pair)?;
    if !face.is_well_covering() {
        face.certificate = wellcovering_certificate(&face, oracle, params.n_max)?;
        if face.certificate.is_some() {
            face.status = PairStatus::WellCoveringCertified;
        }
    }
    let probed = probe_face(&face, oracle, params.n_max, params.depth)?;
    face.span = Some(span_of(&probed, face.ncols()));
    let expectation = if face.is_well_covering() {
        StabilityExpectation::Stable
    } else {
        StabilityExpectation::AlmostStable
    };
    face.stability = Some(stability_from_probes(&probed, expectation, params.n_max, params.depth));
    Ok(face)
}

/// Enumerate, build pairs, extract and certify faces, probe, deduplicate.
pub fn run_pipeline(params: RunParams, oracle: &KroneckerOracle) -> Result<PipelineOutput> {
    let matrices = enumerate_order_matrices(params.n1, params.n2);
    let mut pairs = build_all_pairs(&matrices)?;
    let faces = pairs
        .par_iter()
        .map(|p| process(p, oracle, params))
        .collect::<Result<Vec<_>>>()?;
    for (p, f) in pairs.iter_mut().zip(&faces) {
        p.status = f.status;
    }
    let groups = dedup_faces(faces.clone());
    Ok(PipelineOutput {
        params,
        matrices,
        pairs,
        faces,
        groups,
    })
}
