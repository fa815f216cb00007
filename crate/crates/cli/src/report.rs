use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use kronface::faces::{render_row, FaceDescriptor, LatticeTriple};
use kronface::order_matrix::Witness;
use kronface::{cycles::format_cycles, ConfigKind, PairStatus, Permutation};

use crate::pipeline::{PipelineOutput, RunParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub kind: ConfigKind,
    pub anchor: Vec<usize>,
    pub u_hat: String,
    pub u_hat_one_line: Vec<usize>,
    pub status: PairStatus,
    pub certificate: Option<LatticeTriple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSection {
    pub id: usize,
    pub ranks: Vec<Vec<usize>>,
    pub witness: Witness,
    pub hat_w: String,
    pub pairs: Vec<PairRow>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSummary {
    pub additive: usize,
    pub length1: usize,
    pub length2: usize,
    pub certified: usize,
    pub regular: usize,
    pub new_regular: usize,
    pub non_regular: usize,
    pub possibly_zero: usize,
    pub collisions: usize,
    pub stability_failures: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceClass {
    Regular,
    NonRegular,
    PossiblyZero,
}

/// One deduplicated face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub class: FaceClass,
    pub u_hat: Vec<usize>,
    pub equations: Vec<String>,
    pub span_equations: Vec<String>,
    pub dimension_estimate: usize,
    pub status: PairStatus,
    pub certificate: Option<LatticeTriple>,
    pub stability: String,
    /// `matrix/kind/û` of every pair giving this face.
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub parameters: RunParams,
    pub matrices: Vec<MatrixSection>,
    pub summary: FaceSummary,
    pub faces: Vec<FaceRecord>,
    /// `inner ⊂ outer` span inclusions among non-regular faces.
    pub nested: Vec<(String, String)>,
    pub collisions: Vec<(String, String)>,
}

fn record(face: &FaceDescriptor, class: FaceClass) -> FaceRecord {
    let span = face.span.as_ref();
    FaceRecord {
        class,
        u_hat: face.u_hat.one_line().to_vec(),
        equations: face.displayed_equations(),
        span_equations: span
            .map(|s| s.equations.iter().map(|r| render_row(r, face.n1, face.n2)).collect())
            .unwrap_or_default(),
        dimension_estimate: span.map_or(0, |s| s.dimension_estimate),
        status: face.status,
        certificate: face.certificate.clone(),
        stability: face.stability.as_ref().map(|s| s.summary()).unwrap_or_default(),
        provenance: face
            .provenance
            .iter()
            .map(|p| format!("{}/{}/{}", p.matrix_id, p.kind.name(), format_cycles(&p.u_hat)))
            .collect(),
    }
}

fn pair_text(p: &Permutation) -> String {
    format_cycles(p)
}

impl RunReport {
    pub fn from_output(out: &PipelineOutput) -> Self {
        let matrices = out
            .matrices
            .iter()
            .enumerate()
            .map(|(idx, r)| MatrixSection {
                id: idx + 1,
                ranks: r.ranks.clone(),
                witness: r.witness.clone(),
                hat_w: format_cycles(&r.hat_w()),
                pairs: out
                    .pairs
                    .iter()
                    .zip(&out.faces)
                    .filter(|(p, _)| p.matrix_id == idx + 1)
                    .map(|(p, f)| PairRow {
                        kind: p.kind,
                        anchor: p.anchor.ranks.clone(),
                        u_hat: format_cycles(&p.u_hat),
                        u_hat_one_line: p.u_hat.one_line().to_vec(),
                        status: p.status,
                        certificate: f.certificate.clone(),
                    })
                    .collect(),
            })
            .collect();

        let g = &out.groups;
        let count = |len: usize| out.pairs.iter().filter(|p| p.length() == len).count();
        let summary = FaceSummary {
            additive: count(0),
            length1: count(1),
            length2: count(2),
            certified: out
                .pairs
                .iter()
                .filter(|p| p.status == PairStatus::WellCoveringCertified)
                .count(),
            regular: g.regular.len(),
            new_regular: g
                .regular
                .iter()
                .filter(|f| f.provenance.iter().all(|p| p.kind != ConfigKind::Add))
                .count(),
            non_regular: g.non_regular.len(),
            possibly_zero: g.possibly_zero.len(),
            collisions: g.collisions.len(),
            stability_failures: out.stability_failures(),
        };

        let faces = g
            .regular
            .iter()
            .map(|f| record(f, FaceClass::Regular))
            .chain(g.non_regular.iter().map(|f| record(f, FaceClass::NonRegular)))
            .chain(g.possibly_zero.iter().map(|f| record(f, FaceClass::PossiblyZero)))
            .collect();

        RunReport {
            parameters: out.params,
            matrices,
            summary,
            faces,
            nested: g.nested.iter().map(|n| (pair_text(&n.inner), pair_text(&n.outer))).collect(),
            collisions: g
                .collisions
                .iter()
                .map(|c| (pair_text(&c.first), pair_text(&c.second)))
                .collect(),
        }
    }

    /// `"6 regular (4 new), 1 non-regular"`.
    pub fn headline(&self) -> String {
        let s = &self.summary;
        let mut text = format!("{} regular ({} new), {} non-regular", s.regular, s.new_regular, s.non_regular);
        if s.possibly_zero > 0 {
            let _ = write!(text, ", {} possibly zero", s.possibly_zero);
        }
        text
    }

    /// `"36 additive, 144 length-1 well-covering, 232 length-2 dominant"`.
    pub fn pair_counts(&self) -> String {
        let s = &self.summary;
        format!(
            "{} additive, {} length-1 well-covering, {} length-2 dominant",
            s.additive, s.length1, s.length2
        )
    }

    pub fn to_markdown(&self) -> String {
        let p = &self.parameters;
        let s = &self.summary;
        let mut md = String::new();
        let _ = writeln!(md, "# Faces for {}×{}\n", p.n1, p.n2);
        let _ = writeln!(md, "Search bound N_max = {}, probe depth D = {}.\n", p.n_max, p.depth);
        let _ = writeln!(md, "{} order matrices; {}.\n", self.matrices.len(), self.pair_counts());
        let _ = writeln!(md, "Faces: {}.", self.headline());
        let _ = writeln!(
            md,
            "Dominant pairs certified well-covering: {}. Stability failures: {}. Span collisions: {}.\n",
            s.certified, s.stability_failures, s.collisions
        );

        for m in &self.matrices {
            let rows: Vec<String> = m
                .ranks
                .iter()
                .map(|r| format!("({})", r.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            let _ = writeln!(md, "## Matrix {}: {}\n", m.id, rows.join(","));
            let _ = writeln!(
                md,
                "Witness x = {:?}, y = {:?}; ŵ = {}.\n",
                m.witness.x, m.witness.y, m.hat_w
            );
            let _ = writeln!(md, "| kind | ranks | û | one-line | status | certificate |");
            let _ = writeln!(md, "|---|---|---|---|---|---|");
            for r in &m.pairs {
                let anchor: Vec<String> = r.anchor.iter().map(usize::to_string).collect();
                let one: Vec<String> = r.u_hat_one_line.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    md,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.kind.name(),
                    anchor.join(","),
                    r.u_hat,
                    one.join(" "),
                    status_text(r.status),
                    r.certificate.as_ref().map(|c| c.to_string()).unwrap_or_default()
                );
            }
            md.push('\n');
        }

        for (title, class) in [
            ("Regular faces", FaceClass::Regular),
            ("Non-regular faces", FaceClass::NonRegular),
            ("Possibly zero", FaceClass::PossiblyZero),
        ] {
            let faces: Vec<&FaceRecord> = self.faces.iter().filter(|f| f.class == class).collect();
            if faces.is_empty() {
                continue;
            }
            let _ = writeln!(md, "## {title}\n");
            for f in faces {
                let _ = writeln!(md, "- {}", f.provenance.join(", "));
                let _ = writeln!(md, "  - equations: {}", f.equations.join("; "));
                if class == FaceClass::NonRegular {
                    let _ = writeln!(
                        md,
                        "  - span (dimension ≥ {}): {}",
                        f.dimension_estimate,
                        f.span_equations.join("; ")
                    );
                }
                if let Some(c) = &f.certificate {
                    let _ = writeln!(md, "  - certificate: {c}");
                }
                let _ = writeln!(md, "  - stability: {}", f.stability);
            }
            md.push('\n');
        }

        if !self.nested.is_empty() {
            let _ = writeln!(md, "## Nested spans\n");
            for (inner, outer) in &self.nested {
                let _ = writeln!(md, "- span of {inner} lies in span of {outer}");
            }
            md.push('\n');
        }
        if !self.collisions.is_empty() {
            let _ = writeln!(md, "## Span collisions for review\n");
            for (a, b) in &self.collisions {
                let _ = writeln!(md, "- {a} and {b}");
            }
            md.push('\n');
        }
        md
    }
}

fn status_text(s: PairStatus) -> &'static str {
    match s {
        PairStatus::Dominant => "dominant",
        PairStatus::WellCoveringByTheorem => "well-covering",
        PairStatus::WellCoveringCertified => "well-covering (certified)",
    }
}
