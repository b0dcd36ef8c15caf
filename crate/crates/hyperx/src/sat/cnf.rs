//! CNF formulas over rectangle-membership variables.
//!
//! For a covering instance with `r` rectangles over a slack matrix with
//! support cells `c_0, ..., c_{m-1}` (row-major order), variable
//! `(l-1)*m + t + 1` states that rectangle `l` contains cell `c_t`
//! (1-based DIMACS numbering, `l` from 1 to `r`). Variables beyond
//! `r*m` are auxiliaries introduced by symmetry breaking.

use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct CnfFormula {
    pub var_count: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Identifier of the matrix this formula talks about.
    pub matrix_ref: String,
    pub rectangles: usize,
    /// Support cells in row-major order; cell t of rectangle l is
    /// variable `l*support.len() + t + 1` for 0-based l.
    pub support: Vec<(usize, usize)>,
    cell_rank: HashMap<(usize, usize), usize>,
    /// Set when the instance is trivially unsatisfiable before any
    /// clauses exist (r = 0 against a nonempty support).
    pub trivially_unsat: bool,
}

impl CnfFormula {
    pub fn new(matrix_ref: &str, rectangles: usize, support: Vec<(usize, usize)>) -> CnfFormula {
        let cell_rank = support
            .iter()
            .enumerate()
            .map(|(t, &c)| (c, t))
            .collect();
        CnfFormula {
            var_count: rectangles * support.len(),
            clauses: Vec::new(),
            matrix_ref: matrix_ref.to_string(),
            rectangles,
            support,
            cell_rank,
            trivially_unsat: false,
        }
    }

    /// DIMACS variable for "rectangle `l` (0-based) contains support cell (i, j)".
    pub fn var(&self, l: usize, i: usize, j: usize) -> i32 {
        assert!(l < self.rectangles);
        let t = *self
            .cell_rank
            .get(&(i, j))
            .unwrap_or_else(|| panic!("({i}, {j}) is not a support cell"));
        (l * self.support.len() + t + 1) as i32
    }

    pub fn cell_of_var(&self, var: i32) -> Option<(usize, (usize, usize))> {
        let idx = var as usize - 1;
        let m = self.support.len();
        if m == 0 || idx >= self.rectangles * m {
            return None;
        }
        Some((idx / m, self.support[idx % m]))
    }

    pub fn add_clause(&mut self, lits: Vec<i32>) {
        debug_assert!(lits.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= self.var_count));
        self.clauses.push(lits);
    }

    pub fn fresh_var(&mut self) -> i32 {
        self.var_count += 1;
        self.var_count as i32
    }
}
