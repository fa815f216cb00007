use crate::combinatorics::{longest_element, Permutation};
use crate::error::Result;
use crate::order_matrix::OrderMatrix;
use crate::roots::{dominance_check, WeylPair};

/// Every `(v, v̂)` with `ℓ(v) ≤ 2` passing the dominance criterion for `r`.
///
/// The criterion forces `ℓ(((v̂ŵ)^∨)^{-1}) = ℓ(v)`, so `v̂^{-1} = ŵ u ŵ₀` with
/// `u` running over the elements of that length only.
pub fn generic_length2_sweep(r: &OrderMatrix) -> Result<Vec<(WeylPair, Permutation)>> {
    let m = r.size();
    let w_hat = r.hat_w();
    let w0 = longest_element(m);
    let mut out = Vec::new();
    for len in 0..=2 {
        let hats: Vec<Permutation> = Permutation::of_length(m, len)
            .iter()
            .map(|u| Permutation::product(&[&w_hat, u, &w0]).map(|p| p.inverse()))
            .collect::<Result<_>>()?;
        for v in WeylPair::of_length(r.n1, r.n2, len) {
            for v_hat in &hats {
                if dominance_check(&v, v_hat, &w_hat)? {
                    out.push((v.clone(), v_hat.clone()));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
