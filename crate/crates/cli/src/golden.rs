//! Reference tables shipped in `golden/`, parsed from their markdown form.

use kronface::faces::{with_weight_equations, Var};
use kronface::{cycles::parse_cycles, Permutation};

use crate::CliError;

const PAIRS_2X2: &str = include_str!("../golden/pairs_2x2.md");
const PAIRS_3X2: &str = include_str!("../golden/pairs_3x2.md");
const EQUATIONS: &str = include_str!("../golden/equations.md");
const SPANS: &str = include_str!("../golden/spans.md");

/// Body rows of every markdown table in `text`.
fn table_rows(text: &str) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for line in text.lines().map(str::trim) {
        if !line.starts_with('|') {
            header_seen = false;
            continue;
        }
        let cells: Vec<String> = line.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect();
        if !header_seen {
            header_seen = true;
            continue;
        }
        if cells.iter().all(|c| c.chars().all(|ch| ch == '-')) {
            continue;
        }
        rows.push(cells);
    }
    rows
}

fn bad(what: &str, text: &str) -> CliError {
    CliError::Golden(format!("{what}: {text:?}"))
}

/// `"(1,3),(2,4)"` → `[[1,3],[2,4]]`.
pub fn parse_ranks(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split("),(")
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse().map_err(|_| bad("rank", text)))
                .collect()
        })
        .collect()
}

fn grid(text: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = text.split_once('x').ok_or_else(|| bad("grid", text))?;
    Ok((a.parse().map_err(|_| bad("grid", text))?, b.parse().map_err(|_| bad("grid", text))?))
}

/// `"alpha_1 = gamma_1 + 2 gamma_4"` as a row over `(α, β, γ)`.
pub fn parse_linear(text: &str, n1: usize, n2: usize) -> Result<Vec<i64>, CliError> {
    let mut row = vec![0i64; n1 + n2 + n1 * n2];
    let (lhs, rhs) = text.split_once('=').ok_or_else(|| bad("equation", text))?;
    for (side, sign) in [(lhs, 1i64), (rhs, -1i64)] {
        let side = side.trim().replace(" - ", " + -");
        for term in side.split(" + ") {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let (neg, term) = match term.strip_prefix('-') {
                Some(t) => (-1, t),
                None => (1, term),
            };
            let (coef, name) = match term.split_once(' ') {
                Some((c, v)) => (c.parse::<i64>().map_err(|_| bad("coefficient", text))?, v),
                None => (1, term),
            };
            let var: Var = name.parse().map_err(|_| bad("variable", text))?;
            let in_range = match var {
                Var::Alpha(i) => i <= n1,
                Var::Beta(j) => j <= n2,
                Var::Gamma(k) => k <= n1 * n2,
            };
            if !in_range {
                return Err(bad("variable out of range", text));
            }
            row[var.column(n1, n2)] += sign * neg * coef;
        }
    }
    Ok(row)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenPair {
    pub name: String,
    pub matrix: Vec<Vec<usize>>,
    pub length: usize,
    pub u_hat: Permutation,
}

/// The normalized-pair table for `n1 × n2`, if one is shipped.
pub fn pairs(n1: usize, n2: usize) -> Result<Vec<GoldenPair>, CliError> {
    let text = match (n1, n2) {
        (2, 2) => PAIRS_2X2,
        (3, 2) => PAIRS_3X2,
        _ => return Ok(Vec::new()),
    };
    table_rows(text)
        .into_iter()
        .map(|c| {
            Ok(GoldenPair {
                name: c[0].clone(),
                matrix: parse_ranks(&c[1])?,
                length: c[2].parse().map_err(|_| bad("length", &c[2]))?,
                u_hat: parse_cycles(n1 * n2, &c[3]).map_err(|_| bad("cycle", &c[3]))?,
            })
        })
        .collect()
}

/// Names of the length-2 pairs expected to be certified well-covering.
pub fn certified_3x2() -> Vec<String> {
    PAIRS_3X2
        .split("## Certified")
        .nth(1)
        .map(|tail| {
            tail.lines()
                .skip(1)
                .flat_map(|l| l.split(','))
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        })
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenSystem {
    pub n1: usize,
    pub n2: usize,
    pub matrix: Vec<Vec<usize>>,
    pub u_hat: Permutation,
    pub equations: Vec<String>,
}

pub fn systems() -> Result<Vec<GoldenSystem>, CliError> {
    table_rows(EQUATIONS)
        .into_iter()
        .map(|c| {
            let (n1, n2) = grid(&c[0])?;
            Ok(GoldenSystem {
                n1,
                n2,
                matrix: parse_ranks(&c[1])?,
                u_hat: parse_cycles(n1 * n2, &c[2]).map_err(|_| bad("cycle", &c[2]))?,
                equations: c[3].split(';').map(|e| e.trim().to_string()).collect(),
            })
        })
        .collect()
}

/// Non-regular spans for `n1 × n2`, canonicalized with the weight equations.
pub fn spans(n1: usize, n2: usize) -> Result<Vec<Vec<Vec<i64>>>, CliError> {
    let mut out = Vec::new();
    for c in table_rows(SPANS) {
        if grid(&c[0])? != (n1, n2) {
            continue;
        }
        let rows = c[1]
            .split(';')
            .map(|e| parse_linear(e.trim(), n1, n2))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(with_weight_equations(&rows, n1, n2));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        assert_eq!(pairs(2, 2).unwrap().len(), 10);
        let p = pairs(3, 2).unwrap();
        assert_eq!(p.len(), 40);
        assert_eq!(p.iter().filter(|g| g.length == 1).count(), 15);
        assert_eq!(p.iter().filter(|g| g.length == 2).count(), 20);
        assert_eq!(certified_3x2().len(), 8);
        assert_eq!(systems().unwrap().len(), 7);
        assert_eq!(spans(3, 2).unwrap().len(), 2);
        assert!(pairs(3, 3).unwrap().is_empty());
    }

    #[test]
    fn linear_forms() {
        assert_eq!(parse_linear("alpha_1 = gamma_2 + gamma_4", 2, 2).unwrap(), vec![1, 0, 0, 0, 0, -1, 0, -1]);
        assert_eq!(parse_linear("alpha_1 = 2 gamma_1", 2, 2).unwrap(), vec![1, 0, 0, 0, -2, 0, 0, 0]);
        assert_eq!(parse_linear("gamma_1 = gamma_2 - gamma_3", 2, 2).unwrap(), vec![0, 0, 0, 0, 1, -1, 1, 0]);
        assert!(parse_linear("delta_1 = gamma_1", 2, 2).is_err());
        assert!(parse_linear("gamma_9 = gamma_1", 2, 2).is_err());
        assert!(parse_linear("alpha_3 = gamma_1", 2, 2).is_err());
        assert_eq!(parse_ranks("(1,3),(2,4)").unwrap(), vec![vec![1, 3], vec![2, 4]]);
    }
}
