//! SAT-based exact computation of rectangle covering numbers and their
//! refined variants: encodings, a CDCL solver, DIMACS hand-off and a
//! certified binary-search driver.

pub mod cnf;
pub mod dimacs;
pub mod encode;
pub mod solver;

pub use cnf::CnfFormula;
pub use encode::{
    break_symmetry, decode_cover, encode_grrc, encode_rc, encode_rrc, fooling_clique,
    SymmetryBreaking,
};
pub use solver::{Limits, SolveResult, Solver, Stats, Status};

use crate::covering::Covering;
use crate::error::{Error, Result};
use crate::hypersimplex::SlackMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverVariant {
    Plain,
    Refined,
    GenericRefined,
}

pub fn encode_variant(s: &SlackMatrix, r: usize, variant: CoverVariant) -> CnfFormula {
    match variant {
        CoverVariant::Plain => encode_rc(s, r),
        CoverVariant::Refined => encode_rrc(s, r),
        CoverVariant::GenericRefined => encode_grrc(s, r),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub symmetry: SymmetryBreaking,
    pub limits: Limits,
    pub variant: CoverVariant,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            symmetry: SymmetryBreaking::Clique,
            limits: Limits::default(),
            variant: CoverVariant::Plain,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoundLog {
    pub rectangles: usize,
    pub status: Status,
    pub stats: Stats,
}

/// Result of one bounded feasibility question "does an r-rectangle cover
/// exist", with a decoded cover as the SAT certificate.
#[derive(Clone, Debug)]
pub struct FeasibilityOutcome {
    pub status: Status,
    pub cover: Option<Covering>,
    pub stats: Stats,
}

/// Decide whether `s` admits a cover (of the requested variant) with `r`
/// rectangles. SAT answers come back with a verified cover.
pub fn solve_feasibility(s: &SlackMatrix, r: usize, config: &SearchConfig) -> Result<FeasibilityOutcome> {
    let mut f = encode_variant(s, r, config.variant);
    if f.trivially_unsat {
        return Ok(FeasibilityOutcome {
            status: Status::Unsat,
            cover: None,
            stats: Stats::default(),
        });
    }
    break_symmetry(&mut f, s, config.symmetry);
    let mut solver = Solver::new(f.var_count);
    for c in &f.clauses {
        solver.add_clause(c);
    }
    let res = solver.solve(config.limits);
    let cover = match (&res.status, &res.model) {
        (Status::Sat, Some(model)) => {
            if let Some(bad) = solver::model_satisfies(model, &f.clauses) {
                return Err(Error::ModelCheckFailed(format!(
                    "model violates clause {bad}"
                )));
            }
            Some(decode_cover(&f, s, model)?)
        }
        _ => None,
    };
    Ok(FeasibilityOutcome {
        status: res.status,
        cover,
        stats: res.stats,
    })
}

/// Exact covering number by binary search, with certificates on both sides.
#[derive(Clone, Debug)]
pub struct RcExact {
    pub value: usize,
    /// Cover of size `value` (absent only when `value` equals the trusted
    /// lower bound `lo` and no SAT call was needed, which cannot happen:
    /// the final SAT witness is always retained).
    pub cover: Covering,
    /// True when infeasibility at `value - 1` was established by a solver
    /// run in this search rather than assumed from the initial bracket.
    pub unsat_certified: bool,
    pub rounds: Vec<RoundLog>,
}

/// Search the smallest r in [lo, hi] admitting a cover. Requires that
/// r = hi is feasible (any matrix is covered by its rows) and treats
/// lo as a proven lower bound: r = lo - 1 is assumed infeasible but is
/// re-checked by a solver run when the search never visited it.
pub fn rc_exact(s: &SlackMatrix, lo: usize, hi: usize, config: &SearchConfig) -> Result<RcExact> {
    if lo > hi {
        return Err(Error::BadBracket { lo, hi });
    }
    let mut rounds = Vec::new();
    let mut lo = lo;
    let mut hi = hi;
    let mut best_cover: Option<Covering>;
    let mut unsat_below: Option<usize> = None;
    // establish the top of the bracket
    let top = solve_feasibility(s, hi, config)?;
    rounds.push(RoundLog {
        rectangles: hi,
        status: top.status,
        stats: top.stats,
    });
    match top.status {
        Status::Sat => best_cover = Some(top.cover.unwrap()),
        Status::Unsat => {
            return Err(Error::BadBracket { lo, hi });
        }
        Status::Timeout => return Err(Error::Timeout(format!("r = {hi}"))),
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let out = solve_feasibility(s, mid, config)?;
        rounds.push(RoundLog {
            rectangles: mid,
            status: out.status,
            stats: out.stats,
        });
        match out.status {
            Status::Sat => {
                hi = mid;
                best_cover = Some(out.cover.unwrap());
            }
            Status::Unsat => {
                unsat_below = Some(mid);
                lo = mid + 1;
            }
            Status::Timeout => return Err(Error::Timeout(format!("r = {mid}"))),
        }
    }
    let value = lo;
    // certify the lower side when the bracket's lower bound was the answer
    let mut unsat_certified = unsat_below == Some(value - 1);
    if !unsat_certified && value > 0 {
        let below = solve_feasibility(s, value - 1, config)?;
        rounds.push(RoundLog {
            rectangles: value - 1,
            status: below.status,
            stats: below.stats,
        });
        match below.status {
            Status::Unsat => unsat_certified = true,
            Status::Sat => {
                return Err(Error::VerificationFailed(format!(
                    "claimed lower bound {value} refuted: a {}-rectangle cover exists",
                    value - 1
                )));
            }
            Status::Timeout => return Err(Error::Timeout(format!("r = {}", value - 1))),
        }
    }
    Ok(RcExact {
        value,
        cover: best_cover.expect("bracket top was satisfiable"),
        unsat_certified,
        rounds,
    })
}
