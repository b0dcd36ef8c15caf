//! CNF encodings of bounded covering questions on a slack matrix:
//! plain rectangle covers, refined covers (strict 2x2 cross-product
//! inequalities force two witnesses) and generically refined covers
//! (any 2x2 minor with four positive entries and unequal diagonal
//! products forces a second witness among its cells).

use super::cnf::CnfFormula;
use crate::covering::{fooling_pairs, Covering, Rectangle};
use crate::error::{Error, Result};
use crate::hypersimplex::SlackMatrix;
use std::collections::BTreeSet;

/// Can a cover with `r` rectangles exist? Satisfying assignments decode to
/// covers via `decode_cover`.
pub fn encode_rc(s: &SlackMatrix, r: usize) -> CnfFormula {
    let support = s.support();
    let mut f = CnfFormula::new(&s.id, r, support.clone());
    if r == 0 {
        f.trivially_unsat = !support.is_empty();
        return f;
    }
    for &(i, j) in &support {
        f.add_clause((0..r).map(|l| f.var(l, i, j)).collect());
    }
    // A pair of cells whose spanned 2x2 grid leaves the support can never
    // share a rectangle; pairwise exclusion of exactly these pairs makes
    // every decoded rectangle's full grid lie in the support.
    for p in fooling_pairs(s) {
        let (i, j) = p.first;
        let (i2, j2) = p.second;
        for l in 0..r {
            f.add_clause(vec![-f.var(l, i, j), -f.var(l, i2, j2)]);
        }
    }
    f
}

/// Refined covers: additionally, for every ordered cell pair ((i,k),(j,l))
/// with `S_ik * S_jl > S_il * S_jk` and all four entries positive, no single
/// rectangle may be the only one containing both (i,k) and (j,l). Pairs
/// whose cross entries vanish are fooling pairs and are already excluded
/// pairwise, which with coverage forces two distinct witnesses.
pub fn encode_rrc(s: &SlackMatrix, r: usize) -> CnfFormula {
    let mut f = encode_rc(s, r);
    if r == 0 {
        return f;
    }
    let support = f.support.clone();
    for &(i, k) in &support {
        for &(j, l) in &support {
            if i == j || k == l {
                continue;
            }
            if !s.is_positive(i, l) || !s.is_positive(j, k) {
                continue;
            }
            let lhs = s.matrix.get(i, k) * s.matrix.get(j, l);
            let rhs = s.matrix.get(i, l) * s.matrix.get(j, k);
            if lhs <= rhs {
                continue;
            }
            for l0 in 0..r {
                let mut clause = vec![-f.var(l0, i, k), -f.var(l0, j, l)];
                for l1 in 0..r {
                    if l1 != l0 {
                        clause.push(f.var(l1, i, k));
                        clause.push(f.var(l1, j, l));
                    }
                }
                f.add_clause(clause);
            }
        }
    }
    f
}

/// Generically refined covers: for every 2x2 minor on rows i<j, columns k<l
/// with four positive entries and `S_ik * S_jl != S_il * S_jk`, no single
/// rectangle may be the only one meeting the minor's four cells while
/// containing one of its diagonals.
pub fn encode_grrc(s: &SlackMatrix, r: usize) -> CnfFormula {
    let mut f = encode_rc(s, r);
    if r == 0 {
        return f;
    }
    for i in 0..s.rows() {
        for j in i + 1..s.rows() {
            for k in 0..s.cols() {
                for l in k + 1..s.cols() {
                    if !(s.is_positive(i, k)
                        && s.is_positive(i, l)
                        && s.is_positive(j, k)
                        && s.is_positive(j, l))
                    {
                        continue;
                    }
                    let d1 = s.matrix.get(i, k) * s.matrix.get(j, l);
                    let d2 = s.matrix.get(i, l) * s.matrix.get(j, k);
                    if d1 == d2 {
                        continue;
                    }
                    let cells = [(i, k), (i, l), (j, k), (j, l)];
                    for l0 in 0..r {
                        let mut clause = vec![
                            -f.var(l0, i, k),
                            -f.var(l0, j, l),
                            -f.var(l0, i, l),
                            -f.var(l0, j, k),
                        ];
                        for l1 in 0..r {
                            if l1 != l0 {
                                for &(a, b) in &cells {
                                    clause.push(f.var(l1, a, b));
                                }
                            }
                        }
                        f.add_clause(clause);
                    }
                }
            }
        }
    }
    f
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryBreaking {
    Off,
    /// Lexicographic ordering of rectangle incidence vectors via chained
    /// equality auxiliaries.
    Lex,
    /// Pin cell c_t of a pairwise-fooling cell clique to rectangle t.
    Clique,
}

/// Greedily grown clique in the fooling-pair graph, restarted from each
/// vertex; deterministic. Its size is a lower bound on the cover number.
pub fn fooling_clique(s: &SlackMatrix) -> Vec<(usize, usize)> {
    let support = s.support();
    let m = support.len();
    let mut adj = vec![vec![false; m]; m];
    let rank: std::collections::HashMap<(usize, usize), usize> = support
        .iter()
        .enumerate()
        .map(|(t, &c)| (c, t))
        .collect();
    for p in fooling_pairs(s) {
        let a = rank[&p.first];
        let b = rank[&p.second];
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let degree: Vec<usize> = (0..m).map(|a| adj[a].iter().filter(|&&x| x).count()).collect();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..m {
        let mut clique = vec![start];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(degree[a]));
        for a in order {
            if clique.iter().all(|&b| adj[a][b]) {
                clique.push(a);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best.into_iter().map(|t| support[t]).collect()
}

/// Add symmetry-breaking constraints to a covering formula. All variants
/// preserve satisfiability: rectangles of a cover can always be permuted.
pub fn break_symmetry(f: &mut CnfFormula, s: &SlackMatrix, mode: SymmetryBreaking) {
    match mode {
        SymmetryBreaking::Off => {}
        SymmetryBreaking::Clique => {
            let clique = fooling_clique(s);
            for (l, &(i, j)) in clique.iter().take(f.rectangles).enumerate() {
                f.add_clause(vec![f.var(l, i, j)]);
            }
        }
        SymmetryBreaking::Lex => {
            // rectangle l's incidence vector <=_lex rectangle l+1's,
            // with eq_t tracking "equal on cells 0..=t".
            let m = f.support.len();
            let r = f.rectangles;
            let support = f.support.clone();
            for l in 0..r.saturating_sub(1) {
                let mut prev_eq: Option<i32> = None;
                for t in 0..m {
                    let (i, j) = support[t];
                    let a = f.var(l, i, j);
                    let b = f.var(l + 1, i, j);
                    // under "equal so far", forbid a=0, b=1
                    match prev_eq {
                        None => f.add_clause(vec![a, -b]),
                        Some(e) => f.add_clause(vec![-e, a, -b]),
                    }
                    if t + 1 < m {
                        let e = f.fresh_var();
                        // e -> (a <-> b), conjoined with the prefix
                        match prev_eq {
                            None => {
                                f.add_clause(vec![-e, -a, b]);
                                f.add_clause(vec![-e, a, -b]);
                                f.add_clause(vec![e, a, b]);
                                f.add_clause(vec![e, -a, -b]);
                            }
                            Some(pe) => {
                                f.add_clause(vec![-e, pe]);
                                f.add_clause(vec![-e, -a, b]);
                                f.add_clause(vec![-e, a, -b]);
                                f.add_clause(vec![e, -pe, a, b]);
                                f.add_clause(vec![e, -pe, -a, -b]);
                            }
                        }
                        prev_eq = Some(e);
                    }
                }
            }
        }
    }
}

/// Turn a model of a covering formula into a cover. Each rectangle is the
/// row and column span of its assigned cells; the result is re-checked cell
/// by cell so an unsound model fails loudly instead of producing a bogus
/// certificate.
pub fn decode_cover(f: &CnfFormula, s: &SlackMatrix, model: &[bool]) -> Result<Covering> {
    if model.len() < f.rectangles * f.support.len() {
        return Err(Error::ModelCheckFailed(format!(
            "model has {} variables, formula needs {}",
            model.len(),
            f.rectangles * f.support.len()
        )));
    }
    let m = f.support.len();
    let mut rects = Vec::new();
    for l in 0..f.rectangles {
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        let mut cells = BTreeSet::new();
        for t in 0..m {
            if model[l * m + t] {
                let (i, j) = f.support[t];
                rows.insert(i);
                cols.insert(j);
                cells.insert((i, j));
            }
        }
        for &i in &rows {
            for &j in &cols {
                if !s.is_positive(i, j) {
                    return Err(Error::InvalidDecodedRectangle(format!(
                        "rectangle {} spans zero cell ({}, {})",
                        l + 1,
                        i,
                        j
                    )));
                }
            }
        }
        if !rows.is_empty() {
            rects.push(Rectangle::new(rows, cols));
        }
    }
    let covering = Covering::new(&s.id, rects);
    match crate::covering::verify_cover(s, &covering)? {
        crate::covering::CoverCheck::Valid => Ok(covering),
        bad => Err(Error::InvalidDecodedRectangle(format!(
            "decoded cover fails verification: {bad:?}"
        ))),
    }
}
