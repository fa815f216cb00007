//! Cycle notation: `"(a b c)(d e)"`, fixed points omitted, cycles ordered by
//! their smallest element, the identity written `"id"`.

use super::Permutation;
use crate::error::{Error, Result};

pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "id".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", body.join(" "))
        })
        .collect()
}

/// Parses cycle notation into a permutation of `{1..m}`.
///
/// Cycles need not be normalized, but they must be disjoint.
pub fn parse_cycles(m: usize, text: &str) -> Result<Permutation> {
    let text = text.trim();
    if text == "id" || text.is_empty() {
        return Ok(Permutation::identity(m));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::domain(format!("expected '(' in cycle string {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::domain(format!("unbalanced cycle string {text:?}")))?;
        let cycle = open[..close]
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::domain(format!("bad cycle entry {tok:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if cycle.is_empty() {
            return Err(Error::domain(format!("empty cycle in {text:?}")));
        }
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(m, &refs)
}
