//! Faces `F(C)` of the Kronecker cone cut out by dominant pairs.
//!
//! A normalized pair `(B/B, ûB̂/B̂)` places `γ_k` on the cell with
//! lexicographic index `û(m+1−k)`; the torus acts trivially on the fibre of
//! `L_{α,β,γ}` exactly when each `α_i` (resp. `β_j`) is the sum of the `γ_k`
//! placed in row `i` (resp. column `j`). Of the sixteen conventions one could
//! read off `û` (`û` or `û^{-1}`, `k` or `m+1−k`, rows and columns direct or
//! reversed) this is the only one matching the worked examples; see the
//! calibration test below.

mod dedup;
mod search;

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{unlex_index, GridIndex, Partition, Permutation};
use crate::error::{Error, Result};
use crate::linalg::{primitive_integer_row, rat, rref, Rational};
use crate::pairs::{ConfigKind, PairDescriptor, PairStatus};

pub use dedup::{dedup_faces, span_within, FaceGroups, SpanCollision, SpanNesting};
pub use search::{
    enumerate_face_triples, face_span_from_points, probe_face, span_of, stability_from_probes,
    verify_face_stability, wellcovering_certificate, with_weight_equations, ProbedTriple,
    SpanData, StabilityExpectation, StabilityReport,
};

/// A coordinate of `(α, β, γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Alpha(usize),
    Beta(usize),
    Gamma(usize),
}

impl Var {
    pub fn column(self, n1: usize, n2: usize) -> usize {
        match self {
            Var::Alpha(i) => i - 1,
            Var::Beta(j) => n1 + j - 1,
            Var::Gamma(k) => n1 + n2 + k - 1,
        }
    }

    pub fn from_column(c: usize, n1: usize, n2: usize) -> Var {
        if c < n1 {
            Var::Alpha(c + 1)
        } else if c < n1 + n2 {
            Var::Beta(c - n1 + 1)
        } else {
            Var::Gamma(c - n1 - n2 + 1)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Alpha(i) => write!(f, "alpha_{i}"),
            Var::Beta(j) => write!(f, "beta_{j}"),
            Var::Gamma(k) => write!(f, "gamma_{k}"),
        }
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::domain(format!("unknown variable {text}"));
        let (name, idx) = text.split_once('_').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match name {
            "alpha" => Ok(Var::Alpha(idx)),
            "beta" => Ok(Var::Beta(idx)),
            "gamma" => Ok(Var::Gamma(idx)),
            _ => Err(bad()),
        }
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `lhs = Σ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceEquation {
    pub lhs: Var,
    pub rhs: Vec<Var>,
}

impl fmt::Display for FaceEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs: Vec<String> = self.rhs.iter().map(Var::to_string).collect();
        write!(f, "{} = {}", self.lhs, rhs.join(" + "))
    }
}

/// A triple `(α, β, γ)` padded to arities `n1`, `n2`, `n1·n2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeTriple {
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
}

impl LatticeTriple {
    pub fn new(alpha: Partition, beta: Partition, gamma: Partition, n1: usize, n2: usize) -> Result<Self> {
        if alpha.weight() != beta.weight() || alpha.weight() != gamma.weight() {
            return Err(Error::domain(format!(
                "triple ({alpha}, {beta}, {gamma}) has unequal weights"
            )));
        }
        Ok(LatticeTriple {
            alpha: alpha.padded(n1)?,
            beta: beta.padded(n2)?,
            gamma: gamma.padded(n1 * n2)?,
        })
    }

    pub fn from_parts(alpha: &[u32], beta: &[u32], gamma: &[u32], n1: usize, n2: usize) -> Result<Self> {
        LatticeTriple::new(
            Partition::new(alpha.to_vec())?,
            Partition::new(beta.to_vec())?,
            Partition::new(gamma.to_vec())?,
            n1,
            n2,
        )
    }

    pub fn weight(&self) -> u32 {
        self.alpha.weight()
    }

    pub fn arities(&self) -> (usize, usize) {
        (self.alpha.arity(), self.beta.arity())
    }

    /// Coordinates in the order `(α, β, γ)`.
    pub fn coordinates(&self) -> Vec<i64> {
        self.alpha
            .parts()
            .iter()
            .chain(self.beta.parts())
            .chain(self.gamma.parts())
            .map(|&x| i64::from(x))
            .collect()
    }

    pub fn scaled(&self, d: u32) -> LatticeTriple {
        LatticeTriple {
            alpha: self.alpha.scaled(d),
            beta: self.beta.scaled(d),
            gamma: self.gamma.scaled(d),
        }
    }

    /// `α` and `β` regular, or `γ` regular.
    pub fn is_certificate_shape(&self) -> bool {
        let (n1, n2) = self.arities();
        (self.alpha.is_regular(n1) && self.beta.is_regular(n2)) || self.gamma.is_regular(n1 * n2)
    }
}

impl fmt::Display for LatticeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

/// Where a face came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub matrix_id: usize,
    pub kind: ConfigKind,
    pub ranks: Vec<usize>,
    pub u_hat: Permutation,
}

impl Provenance {
    pub fn of(pair: &PairDescriptor) -> Self {
        Provenance {
            matrix_id: pair.matrix_id,
            kind: pair.kind,
            ranks: pair.anchor.ranks.clone(),
            u_hat: pair.u_hat.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDescriptor {
    pub n1: usize,
    pub n2: usize,
    pub u_hat: Permutation,
    /// `gamma_cells[k-1]` is the cell carrying `γ_k`.
    pub gamma_cells: Vec<GridIndex>,
    /// All `n1 + n2` equations of the μ = 0 subspace.
    pub equations: Vec<FaceEquation>,
    /// The same system in reduced row-echelon form over `(α, β, γ)`.
    pub mu_zero_system: Vec<Vec<i64>>,
    pub status: PairStatus,
    pub certificate: Option<LatticeTriple>,
    pub span: Option<SpanData>,
    pub stability: Option<StabilityReport>,
    pub provenance: Vec<Provenance>,
}

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| {
            primitive_integer_row(r)
                .iter()
                .map(|x| x.to_i64().expect("small coefficients"))
                .collect()
        })
        .collect()
}

/// RREF of integer rows, each scaled to a primitive integer row.
pub fn canonical_system(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let rational: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    integer_rows(&rref(&rational, ncols).0)
}

/// Rows for `lhs − Σ rhs = 0`.
pub fn equation_rows(equations: &[FaceEquation], n1: usize, n2: usize) -> Vec<Vec<i64>> {
    let ncols = n1 + n2 + n1 * n2;
    equations
        .iter()
        .map(|e| {
            let mut row = vec![0; ncols];
            row[e.lhs.column(n1, n2)] += 1;
            for v in &e.rhs {
                row[v.column(n1, n2)] -= 1;
            }
            row
        })
        .collect()
}

/// Renders `Σ a_c x_c = 0` as `pivot = rest`, e.g. `alpha_3 = 2 gamma_6`.
pub fn render_row(row: &[i64], n1: usize, n2: usize) -> String {
    let term = |a: i64, c: usize| {
        let v = Var::from_column(c, n1, n2);
        if a == 1 {
            v.to_string()
        } else {
            format!("{a} {v}")
        }
    };
    let Some(p) = row.iter().position(|&a| a != 0) else {
        return "0 = 0".to_string();
    };
    let lhs = term(row[p], p);
    let mut rhs = String::new();
    for (c, &a) in row.iter().enumerate().skip(p + 1) {
        if a == 0 {
            continue;
        }
        let t = term(a.abs(), c);
        rhs += &match (rhs.is_empty(), a < 0) {
            (true, true) => t,
            (true, false) => format!("-{t}"),
            (false, true) => format!(" + {t}"),
            (false, false) => format!(" - {t}"),
        };
    }
    if rhs.is_empty() {
        rhs.push('0');
    }
    format!("{lhs} = {rhs}")
}

/// The cells carrying `γ_1, …, γ_m` for the normalized pair `û`.
pub fn gamma_cells(u_hat: &Permutation, n1: usize, n2: usize) -> Result<Vec<GridIndex>> {
    let m = n1 * n2;
    if u_hat.size() != m {
        return Err(Error::domain(format!(
            "û acts on {} letters, expected {m}",
            u_hat.size()
        )));
    }
    (1..=m).map(|k| unlex_index(u_hat.apply(m + 1 - k), n1, n2)).collect()
}

/// The equations `α_i = Σ_{row i} γ_k`, `β_j = Σ_{column j} γ_k`.
pub fn equations_from_cells(cells: &[GridIndex], n1: usize, n2: usize) -> Vec<FaceEquation> {
    let gammas = |pred: &dyn Fn(GridIndex) -> bool| -> Vec<Var> {
        cells
            .iter()
            .enumerate()
            .filter(|&(_, &c)| pred(c))
            .map(|(k, _)| Var::Gamma(k + 1))
            .collect()
    };
    let rows = (1..=n1).map(|i| FaceEquation {
        lhs: Var::Alpha(i),
        rhs: gammas(&|c| c.row == i),
    });
    let cols = (1..=n2).map(|j| FaceEquation {
        lhs: Var::Beta(j),
        rhs: gammas(&|c| c.col == j),
    });
    rows.chain(cols).collect()
}

/// The μ = 0 system of a dominant pair.
pub fn face_equations(pair: &PairDescriptor) -> Result<FaceDescriptor> {
    let (n1, n2) = (pair.source.n1, pair.source.n2);
    let cells = gamma_cells(&pair.u_hat, n1, n2)?;
    let equations = equations_from_cells(&cells, n1, n2);
    let mu_zero_system = canonical_system(&equation_rows(&equations, n1, n2), n1 + n2 + n1 * n2);
    Ok(FaceDescriptor {
        n1,
        n2,
        u_hat: pair.u_hat.clone(),
        gamma_cells: cells,
        equations,
        mu_zero_system,
        status: pair.status,
        certificate: None,
        span: None,
        stability: None,
        provenance: vec![Provenance::of(pair)],
    })
}

impl FaceDescriptor {
    pub fn ncols(&self) -> usize {
        self.n1 + self.n2 + self.n1 * self.n2
    }

    /// The equations as displayed conventionally: the last `α` and `β`
    /// equations follow from `|α| = |β| = |γ|` and are left out.
    pub fn displayed_equations(&self) -> Vec<String> {
        self.equations
            .iter()
            .filter(|e| e.lhs != Var::Alpha(self.n1) && e.lhs != Var::Beta(self.n2))
            .map(FaceEquation::to_string)
            .collect()
    }

    /// `(α, β)` determined by `γ` on the μ = 0 subspace.
    pub fn marginals_of(&self, gamma: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut alpha = vec![0; self.n1];
        let mut beta = vec![0; self.n2];
        for (k, c) in self.gamma_cells.iter().enumerate() {
            alpha[c.row - 1] += gamma[k];
            beta[c.col - 1] += gamma[k];
        }
        (alpha, beta)
    }

    pub fn satisfies(&self, t: &LatticeTriple) -> bool {
        let x = t.coordinates();
        x.len() == self.ncols()
            && self
                .mu_zero_system
                .iter()
                .all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    pub fn is_well_covering(&self) -> bool {
        self.status.is_well_covering()
    }
}

/// The weight of the torus `T` on the fibre of `L_{α,β,γ}` over the pair's
/// fixed point, paired with the cocharacter `σ = (σ1 | σ2)`:
/// `Σ_i σ1_i (α_i − Σ_{row i} γ_k) + Σ_j σ2_j (β_j − Σ_{column j} γ_k)`.
pub fn mu_value(t: &LatticeTriple, face: &FaceDescriptor, sigma: (&[i64], &[i64])) -> Result<i64> {
    let (n1, n2) = (face.n1, face.n2);
    if t.arities() != (n1, n2) || t.gamma.arity() != n1 * n2 {
        return Err(Error::domain(format!("triple {t} does not have arities ({n1}, {n2}, {})", n1 * n2)));
    }
    if sigma.0.len() != n1 || sigma.1.len() != n2 {
        return Err(Error::domain("cocharacter has the wrong length"));
    }
    let (rows, cols) = face.marginals_of(t.gamma.parts());
    let a: i64 = (0..n1)
        .map(|i| sigma.0[i] * (i64::from(t.alpha.part(i)) - i64::from(rows[i])))
        .sum();
    let b: i64 = (0..n2)
        .map(|j| sigma.1[j] * (i64::from(t.beta.part(j)) - i64::from(cols[j])))
        .sum();
    Ok(a + b)
}
