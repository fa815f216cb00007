use serde::{Deserialize, Serialize};

use super::FaceDescriptor;
use crate::combinatorics::Permutation;
use crate::linalg::{rank, to_rational_rows};

/// Two faces kept apart by their `û` whose computed spans agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCollision {
    pub first: Permutation,
    pub second: Permutation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceGroups {
    /// Faces of well-covering pairs, one per normalized `û`.
    pub regular: Vec<FaceDescriptor>,
    /// Faces of the remaining dominant pairs, one per point span.
    pub non_regular: Vec<FaceDescriptor>,
    /// Dominant pairs without any point found in the cone.
    pub possibly_zero: Vec<FaceDescriptor>,
    /// Span coincidences that the `û` criterion does not explain; these are
    /// reported for review, not merged.
    pub collisions: Vec<SpanCollision>,
    /// Non-regular faces whose span lies strictly inside another one's.
    pub nested: Vec<SpanNesting>,
}

/// `inner` spans a proper subspace of the span of `outer`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanNesting {
    pub inner: Permutation,
    pub outer: Permutation,
}

/// The solution space of `inner` lies in that of `outer`.
pub fn span_within(inner: &[Vec<i64>], outer: &[Vec<i64>], ncols: usize) -> bool {
    let both: Vec<Vec<i64>> = inner.iter().chain(outer).cloned().collect();
    rank(&to_rational_rows(&both), ncols) == rank(&to_rational_rows(inner), ncols)
}

fn absorb(into: &mut FaceDescriptor, other: FaceDescriptor) {
    for p in other.provenance {
        into.provenance.push(p);
    }
    if into.certificate.is_none() {
        into.certificate = other.certificate;
    }
}

/// Well-covering faces are equal exactly when their `û` are; dominant faces
/// are grouped by the span of their points, which therefore must have been
/// computed. Order of first appearance is kept.
pub fn dedup_faces(faces: Vec<FaceDescriptor>) -> FaceGroups {
    let mut groups = FaceGroups::default();
    for face in faces {
        if face.is_well_covering() {
            match groups.regular.iter_mut().find(|f| f.u_hat == face.u_hat) {
                Some(existing) => absorb(existing, face),
                None => groups.regular.push(face),
            }
            continue;
        }
        let span = face.span.as_ref().map(|s| (s.is_empty(), s.equations.clone()));
        match span {
            None | Some((true, _)) => groups.possibly_zero.push(face),
            Some((false, eqs)) => {
                let same = groups
                    .non_regular
                    .iter_mut()
                    .find(|f| f.span.as_ref().is_some_and(|s| s.equations == eqs));
                match same {
                    Some(existing) => absorb(existing, face),
                    None => groups.non_regular.push(face),
                }
            }
        }
    }

    let spans: Vec<(&Permutation, &Vec<Vec<i64>>)> = groups
        .regular
        .iter()
        .chain(&groups.non_regular)
        .filter_map(|f| f.span.as_ref().filter(|s| !s.is_empty()).map(|s| (&f.u_hat, &s.equations)))
        .collect();
    for (idx, (u, eqs)) in spans.iter().enumerate() {
        for (v, other) in &spans[idx + 1..] {
            if eqs == other {
                groups.collisions.push(SpanCollision {
                    first: (*u).clone(),
                    second: (*v).clone(),
                });
            }
        }
    }
    for inner in &groups.non_regular {
        for outer in &groups.non_regular {
            let (Some(a), Some(b)) = (&inner.span, &outer.span) else {
                continue;
            };
            if a.equations != b.equations && span_within(&a.equations, &b.equations, inner.ncols()) {
                groups.nested.push(SpanNesting {
                    inner: inner.u_hat.clone(),
                    outer: outer.u_hat.clone(),
                });
            }
        }
    }
    groups
}
