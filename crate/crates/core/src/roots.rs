//! Root data of `G = GL(n1) × GL(n2)` inside `Ĝ = GL(n1·n2)`.
//!
//! Weights are sparse integer combinations of the characters `ε_i`, `η_j`
//! (of the two factors of `T`) and `ε̂_k` (of `T̂`). Positive roots are those
//! of the upper triangular Borel subgroups: `ε_a − ε_b` with `a < b`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{lex_index, longest_element, unlex_index, GridIndex, Permutation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coord {
    Eps(usize),
    Eta(usize),
    EpsHat(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    terms: BTreeMap<Coord, i64>,
}

impl WeightVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Coord, i64)>) -> Self {
        let mut w = Self::zero();
        for (c, x) in terms {
            w.add_term(c, x);
        }
        w
    }

    /// `c_plus − c_minus`.
    pub fn difference(plus: Coord, minus: Coord) -> Self {
        Self::from_terms([(plus, 1), (minus, -1)])
    }

    pub fn hat_root(plus: usize, minus: usize) -> Self {
        Self::difference(Coord::EpsHat(plus), Coord::EpsHat(minus))
    }

    pub fn add_term(&mut self, c: Coord, x: i64) {
        let entry = self.terms.entry(c).or_insert(0);
        *entry += x;
        if *entry == 0 {
            self.terms.remove(&c);
        }
    }

    pub fn add(&mut self, other: &WeightVector) {
        for (&c, &x) in &other.terms {
            self.add_term(c, x);
        }
    }

    pub fn coefficient(&self, c: Coord) -> i64 {
        self.terms.get(&c).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Coord, i64)> + '_ {
        self.terms.iter().map(|(&c, &x)| (c, x))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Relabels every coordinate through `f`.
    fn map_coords(&self, f: impl Fn(Coord) -> Coord) -> Self {
        Self::from_terms(self.terms().map(|(c, x)| (f(c), x)))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, x)) in self.terms().enumerate() {
            let sign = if x < 0 { "−" } else if idx > 0 { "+" } else { "" };
            let mag = x.unsigned_abs();
            let coef = if mag == 1 { String::new() } else { mag.to_string() };
            let name = match c {
                Coord::Eps(i) => format!("ε_{i}"),
                Coord::Eta(j) => format!("η_{j}"),
                Coord::EpsHat(k) => format!("ε̂_{k}"),
            };
            write!(f, "{sign}{coef}{name}")?;
        }
        Ok(())
    }
}

/// An element `(σ1, σ2)` of the Weyl group `S_{n1} × S_{n2}` of `G`,
/// serialized as a pair of one-line lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(Permutation, Permutation)", into = "(Permutation, Permutation)")]
pub struct WeylPair {
    pub first: Permutation,
    pub second: Permutation,
}

impl From<(Permutation, Permutation)> for WeylPair {
    fn from((first, second): (Permutation, Permutation)) -> Self {
        WeylPair { first, second }
    }
}

impl From<WeylPair> for (Permutation, Permutation) {
    fn from(v: WeylPair) -> Self {
        (v.first, v.second)
    }
}

impl WeylPair {
    pub fn new(first: Permutation, second: Permutation) -> Self {
        WeylPair { first, second }
    }

    pub fn identity(n1: usize, n2: usize) -> Self {
        WeylPair::new(Permutation::identity(n1), Permutation::identity(n2))
    }

    pub fn inverse(&self) -> Self {
        WeylPair::new(self.first.inverse(), self.second.inverse())
    }

    pub fn length(&self) -> usize {
        self.first.length() + self.second.length()
    }

    pub fn is_identity(&self) -> bool {
        self.first.is_identity() && self.second.is_identity()
    }

    /// The image in `S_{n1·n2}`: cell `(i, j)` goes to `(σ1(i), σ2(j))`.
    pub fn embed(&self) -> Permutation {
        let (n1, n2) = (self.first.size(), self.second.size());
        let one_line = (1..=n1 * n2)
            .map(|k| {
                let cell = unlex_index(k, n1, n2).expect("index in range");
                let image = GridIndex::new(self.first.apply(cell.row), self.second.apply(cell.col));
                lex_index(image, n1, n2).expect("image in range")
            })
            .collect();
        Permutation::new(one_line).expect("cell action is a bijection")
    }

    /// All elements of `S_{n1} × S_{n2}` of the given total length.
    pub fn of_length(n1: usize, n2: usize, len: usize) -> Vec<WeylPair> {
        let mut out = Vec::new();
        for l1 in 0..=len {
            for a in Permutation::of_length(n1, l1) {
                for b in Permutation::of_length(n2, len - l1) {
                    out.push(WeylPair::new(a.clone(), b));
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for WeylPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// A set of roots `Φ(u) = Φ⁻ ∩ u·Φ⁺`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InversionSet {
    pub roots: BTreeSet<WeightVector>,
}

impl InversionSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// `ε_{u(a)} − ε_{u(b)}` for `a < b` with `u(a) > u(b)`: the images of positive
/// roots that `u` makes negative. The sign is fixed by `Φ(s_α) = {−α}`.
fn inversion_roots(u: &Permutation, coord: fn(usize) -> Coord) -> Vec<WeightVector> {
    let m = u.size();
    let mut out = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            if u.apply(a) > u.apply(b) {
                out.push(WeightVector::difference(coord(u.apply(a)), coord(u.apply(b))));
            }
        }
    }
    out
}

/// `Φ̂(û)` in the `ε̂` lattice.
pub fn inversion_set_hat(u: &Permutation) -> InversionSet {
    InversionSet {
        roots: inversion_roots(u, Coord::EpsHat).into_iter().collect(),
    }
}

/// `Φ(u)` for `u = (σ1, σ2)` in the `ε ⊕ η` lattice.
pub fn inversion_set_product(u: &WeylPair) -> InversionSet {
    let mut roots: BTreeSet<_> = inversion_roots(&u.first, Coord::Eps).into_iter().collect();
    roots.extend(inversion_roots(&u.second, Coord::Eta));
    InversionSet { roots }
}

/// `û · ε̂_k = ε̂_{û(k)}`; other coordinates are left alone.
pub fn act_hat(u: &Permutation, w: &WeightVector) -> WeightVector {
    w.map_coords(|c| match c {
        Coord::EpsHat(k) => Coord::EpsHat(u.apply(k)),
        other => other,
    })
}

/// `(σ1, σ2) · ε_i = ε_{σ1(i)}`, `(σ1, σ2) · η_j = η_{σ2(j)}`.
pub fn act_product(u: &WeylPair, w: &WeightVector) -> WeightVector {
    w.map_coords(|c| match c {
        Coord::Eps(i) => Coord::Eps(u.first.apply(i)),
        Coord::Eta(j) => Coord::Eta(u.second.apply(j)),
        other => other,
    })
}

/// Restriction of `T̂`-weights to `T`: `ε̂_{(i,j)} ↦ ε_i + η_j`.
pub fn restrict_rho(w: &WeightVector, n1: usize, n2: usize) -> Result<WeightVector> {
    let mut out = WeightVector::zero();
    for (c, x) in w.terms() {
        match c {
            Coord::EpsHat(k) => {
                let cell = unlex_index(k, n1, n2)?;
                out.add_term(Coord::Eps(cell.row), x);
                out.add_term(Coord::Eta(cell.col), x);
            }
            _ => {
                return Err(Error::domain(format!(
                    "restriction expects a weight of T̂, got {w}"
                )))
            }
        }
    }
    Ok(out)
}

fn check_sizes(v: &WeylPair, v_hat: &Permutation, w_hat: &Permutation) -> Result<(usize, usize)> {
    let (n1, n2) = (v.first.size(), v.second.size());
    if v_hat.size() != n1 * n2 || w_hat.size() != n1 * n2 {
        return Err(Error::domain(format!(
            "Weyl elements of sizes {n1}, {n2}, {}, {} do not fit together",
            v_hat.size(),
            w_hat.size()
        )));
    }
    Ok((n1, n2))
}

/// `((v̂ŵ)^∨)^{-1} = ŵ^{-1} v̂^{-1} ŵ₀`, with `û^∨ = ŵ₀ û`.
pub fn dual_inverse(v_hat: &Permutation, w_hat: &Permutation) -> Result<Permutation> {
    Permutation::product(&[
        &w_hat.inverse(),
        &v_hat.inverse(),
        &longest_element(w_hat.size()),
    ])
}

/// The root criterion for dominant pairs: `ρ` maps `ŵ·Φ̂(((v̂ŵ)^∨)^{-1})`
/// bijectively onto `Φ(v^{-1})`.
pub fn dominance_check(v: &WeylPair, v_hat: &Permutation, w_hat: &Permutation) -> Result<bool> {
    let (n1, n2) = check_sizes(v, v_hat, w_hat)?;
    let target = inversion_set_product(&v.inverse());
    let u = dual_inverse(v_hat, w_hat)?;
    let source = inversion_roots(&u, Coord::EpsHat);
    if source.len() != target.len() {
        return Ok(false);
    }
    let mut image = BTreeSet::new();
    for root in &source {
        let restricted = restrict_rho(&act_hat(w_hat, root), n1, n2)?;
        if !target.roots.contains(&restricted) || !image.insert(restricted) {
            return Ok(false);
        }
    }
    Ok(image.len() == target.len())
}

/// Sum of the negative roots `α` of `S_m` (in coordinates `coord`) for which
/// `g·α` is again negative, pushed forward by `g`.
fn sum_of_kept_negative_roots(
    g: &Permutation,
    coord: fn(usize) -> Coord,
) -> WeightVector {
    // α = ε_a − ε_b with a > b; g·α = ε_{g(a)} − ε_{g(b)} is negative iff g(a) > g(b)
    let m = g.size();
    let mut total = WeightVector::zero();
    for a in 1..=m {
        for b in 1..a {
            if g.apply(a) > g.apply(b) {
                total.add_term(coord(g.apply(a)), 1);
                total.add_term(coord(g.apply(b)), -1);
            }
        }
    }
    total
}

/// The root-sum identity characterising well-covering among covering pairs:
///
/// `v^{-1}·Σ_{α ∈ Φ⁻ ∩ vΦ⁻} α + ρ(v̂^{-1}·Σ_{α̂ ∈ Φ̂⁻ ∩ v̂Φ̂⁻(τ)} α̂) = Σ_{α ∈ Φ⁻} α`,
/// where `Φ̂⁻(τ) = ŵΦ̂⁻`.
pub fn wellcovering_root_identity(
    v: &WeylPair,
    v_hat: &Permutation,
    w_hat: &Permutation,
) -> Result<bool> {
    let (n1, n2) = check_sizes(v, v_hat, w_hat)?;
    let v_inv = v.inverse();

    // α ∈ Φ⁻ ∩ vΦ⁻  ⟺  α and v^{-1}α both negative; the sum is then mapped by v^{-1}
    let mut lhs = sum_of_kept_negative_roots(&v_inv.first, Coord::Eps);
    lhs.add(&sum_of_kept_negative_roots(&v_inv.second, Coord::Eta));

    // α̂ ∈ Φ̂⁻ ∩ v̂ŵΦ̂⁻  ⟺  α̂ and (v̂ŵ)^{-1}α̂ both negative
    let vw_inv = v_hat.compose(w_hat)?.inverse();
    let v_hat_inv = v_hat.inverse();
    let m = n1 * n2;
    let mut hat_sum = WeightVector::zero();
    for a in 1..=m {
        for b in 1..a {
            if vw_inv.apply(a) > vw_inv.apply(b) {
                hat_sum.add(&WeightVector::hat_root(v_hat_inv.apply(a), v_hat_inv.apply(b)));
            }
        }
    }
    lhs.add(&restrict_rho(&hat_sum, n1, n2)?);

    let mut rhs = sum_of_kept_negative_roots(&Permutation::identity(n1), Coord::Eps);
    rhs.add(&sum_of_kept_negative_roots(&Permutation::identity(n2), Coord::Eta));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::cycles::parse_cycles;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_has_no_inversions() {
        assert!(inversion_set_hat(&Permutation::identity(5)).is_empty());
    }

    #[test]
    fn simple_reflection_inverts_its_own_root() {
        let s = Permutation::transposition(4, 2, 3).unwrap();
        let set = inversion_set_hat(&s);
        assert_eq!(set.len(), 1);
        assert!(set.roots.contains(&WeightVector::hat_root(3, 2)));

        let v = WeylPair::new(Permutation::identity(2), Permutation::transposition(3, 1, 2).unwrap());
        let set = inversion_set_product(&v);
        let minus_alpha = WeightVector::difference(Coord::Eta(2), Coord::Eta(1));
        assert_eq!(set.roots, BTreeSet::from([minus_alpha]));
    }

    #[test]
    fn longest_element_inverts_everything() {
        assert_eq!(inversion_set_hat(&longest_element(6)).len(), 15);
    }

    #[test]
    fn inversion_count_matches_length() {
        for m in 1..=6 {
            for u in Permutation::all(m) {
                assert_eq!(inversion_set_hat(&u).len(), u.length());
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let r = restrict_rho(&WeightVector::hat_root(1, 2), 2, 2).unwrap();
        assert_eq!(r, WeightVector::difference(Coord::Eta(1), Coord::Eta(2)));
        let r = restrict_rho(&WeightVector::hat_root(1, 3), 2, 2).unwrap();
        assert_eq!(r, WeightVector::difference(Coord::Eps(1), Coord::Eps(2)));
        let r = restrict_rho(&WeightVector::hat_root(1, 4), 2, 2).unwrap();
        let expected = WeightVector::from_terms([
            (Coord::Eps(1), 1),
            (Coord::Eps(2), -1),
            (Coord::Eta(1), 1),
            (Coord::Eta(2), -1),
        ]);
        assert_eq!(r, expected);
        assert_eq!(r.to_string(), "ε_1−ε_2+η_1−η_2");
    }

    #[test]
    fn restriction_never_kills_a_root() {
        for (n1, n2) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            for k in 1..=n1 * n2 {
                for l in 1..=n1 * n2 {
                    if k == l {
                        continue;
                    }
                    let r = restrict_rho(&WeightVector::hat_root(k, l), n1, n2).unwrap();
                    assert!(!r.is_zero());
                    let total: i64 = r.terms().map(|(_, x)| x.abs()).sum();
                    assert!(total == 2 || total == 4);
                }
            }
        }
    }

    #[test]
    fn additive_pair_is_dominant_and_satisfies_the_identity() {
        let w_hat = perm(&[1, 3, 2, 4]);
        let v_hat = w_hat.compose(&longest_element(4)).unwrap().inverse();
        let v = WeylPair::identity(2, 2);
        assert!(dominance_check(&v, &v_hat, &w_hat).unwrap());
        assert!(wellcovering_root_identity(&v, &v_hat, &w_hat).unwrap());
    }

    #[test]
    fn identity_pair_fails_for_a_nontrivial_order_matrix() {
        let w_hat = perm(&[1, 3, 2, 4]);
        let v = WeylPair::identity(2, 2);
        assert!(!dominance_check(&v, &Permutation::identity(4), &w_hat).unwrap());
    }

    #[test]
    fn vertical_pair_of_the_worked_example() {
        // ŵ = (2 3), v^{-1} = ((1 2), 1), v̂^{-1} = ŵ(1 2)ŵ₀ = (1 4 3)
        let w_hat = perm(&[1, 3, 2, 4]);
        let v_hat_inv = parse_cycles(4, "(1 4 3)").unwrap();
        let v = WeylPair::new(Permutation::transposition(2, 1, 2).unwrap(), Permutation::identity(2));
        assert!(dominance_check(&v, &v_hat_inv.inverse(), &w_hat).unwrap());
        assert!(wellcovering_root_identity(&v, &v_hat_inv.inverse(), &w_hat).unwrap());
    }

    #[test]
    fn corrupted_pair_breaks_the_identity() {
        let w_hat = perm(&[1, 3, 2, 4]);
        let v_hat_inv = parse_cycles(4, "(1 4 3)").unwrap();
        let extra = Permutation::transposition(4, 2, 3).unwrap();
        let corrupted = v_hat_inv.compose(&extra).unwrap();
        let v = WeylPair::new(Permutation::transposition(2, 1, 2).unwrap(), Permutation::identity(2));
        assert!(!wellcovering_root_identity(&v, &corrupted.inverse(), &w_hat).unwrap());
        assert!(!dominance_check(&v, &corrupted.inverse(), &w_hat).unwrap());
    }

    #[test]
    fn embedding_acts_on_cells() {
        let v = WeylPair::new(Permutation::transposition(2, 1, 2).unwrap(), Permutation::identity(2));
        assert_eq!(v.embed().one_line(), &[3, 4, 1, 2]);
        let v = WeylPair::new(Permutation::identity(3), Permutation::transposition(2, 1, 2).unwrap());
        assert_eq!(v.embed().one_line(), &[2, 1, 4, 3, 6, 5]);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let v = WeylPair::identity(2, 2);
        assert!(dominance_check(&v, &Permutation::identity(6), &Permutation::identity(4)).is_err());
    }
}
