//! DIMACS CNF export and model import, for hand-off to an external solver.

use super::cnf::CnfFormula;
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c {}", f.matrix_ref);
    let _ = writeln!(out, "p cnf {} {}", f.var_count, f.clauses.len());
    for c in &f.clauses {
        for &l in c {
            let _ = write!(out, "{l} ");
        }
        let _ = writeln!(out, "0");
    }
    out
}

/// Parse a DIMACS CNF file into (variable count, clauses).
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut var_count = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Dimacs(format!("bad header: {line}")));
            }
            var_count = Some(
                parts[0]
                    .parse::<usize>()
                    .map_err(|e| Error::Dimacs(e.to_string()))?,
            );
            continue;
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| Error::Dimacs(format!("bad literal {tok}")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
    }
    let var_count = var_count.ok_or_else(|| Error::Dimacs("missing p cnf header".into()))?;
    for c in &clauses {
        if c.iter().any(|&l| l.unsigned_abs() as usize > var_count) {
            return Err(Error::Dimacs("literal exceeds declared variable count".into()));
        }
    }
    Ok((var_count, clauses))
}

/// Parse solver output in the usual SAT-competition style: optional
/// "s SATISFIABLE"/"s UNSATISFIABLE" line, model literals on "v" lines
/// (or bare literal lines), terminated by 0. Returns None for UNSAT.
pub fn parse_solver_output(text: &str, var_count: usize) -> Result<Option<Vec<bool>>> {
    let mut saw_sat = false;
    let mut saw_unsat = false;
    let mut lits: Vec<i32> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('c') || line.is_empty() {
            continue;
        }
        if line.starts_with('s') {
            if line.contains("UNSAT") {
                saw_unsat = true;
            } else if line.contains("SAT") {
                saw_sat = true;
            }
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            if let Ok(l) = tok.parse::<i32>() {
                if l != 0 {
                    lits.push(l);
                }
            } else {
                return Err(Error::Dimacs(format!("bad model token {tok}")));
            }
        }
    }
    if saw_unsat {
        return Ok(None);
    }
    if !saw_sat && lits.is_empty() {
        return Err(Error::Dimacs("no status line and no model literals".into()));
    }
    let mut model = vec![false; var_count];
    for l in lits {
        let v = l.unsigned_abs() as usize;
        if v == 0 || v > var_count {
            return Err(Error::Dimacs(format!("model literal {l} out of range")));
        }
        model[v - 1] = l > 0;
    }
    Ok(Some(model))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let mut f = CnfFormula::new("m", 1, vec![(0, 0), (0, 1)]);
        f.add_clause(vec![1, 2]);
        f.add_clause(vec![-1]);
        let text = write_dimacs(&f);
        let (v, cs) = parse_dimacs(&text).unwrap();
        assert_eq!(v, 2);
        assert_eq!(cs, vec![vec![1, 2], vec![-1]]);
    }

    #[test]
    fn model_parsing() {
        let m = parse_solver_output("s SATISFIABLE\nv 1 -2 3 0\n", 3).unwrap();
        assert_eq!(m, Some(vec![true, false, true]));
        let u = parse_solver_output("s UNSATISFIABLE\n", 3).unwrap();
        assert_eq!(u, None);
    }
}
