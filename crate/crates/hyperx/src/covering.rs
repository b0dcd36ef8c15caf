//! Rectangles, covers, fooling pairs, cover verification and non-SAT
//! upper-bound search (greedy plus the randomized construction for the
//! G-pattern matrices).

use crate::error::{Error, Result};
use crate::hypersimplex::{binomial, g_pattern_matrix, SlackMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// An index-set rectangle: every cell of row_set x col_set must be in the
/// support of the associated matrix. Index lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rectangle {
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
}

impl Rectangle {
    pub fn new(rows: impl IntoIterator<Item = usize>, cols: impl IntoIterator<Item = usize>) -> Self {
        let row_set: BTreeSet<usize> = rows.into_iter().collect();
        let col_set: BTreeSet<usize> = cols.into_iter().collect();
        Rectangle {
            row_set: row_set.into_iter().collect(),
            col_set: col_set.into_iter().collect(),
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.row_set.binary_search(&i).is_ok() && self.col_set.binary_search(&j).is_ok()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_set
            .iter()
            .flat_map(move |&i| self.col_set.iter().map(move |&j| (i, j)))
    }

    /// All cells lie in the support of `s`.
    pub fn is_valid_for(&self, s: &SlackMatrix) -> bool {
        self.row_set.iter().all(|&i| i < s.rows())
            && self.col_set.iter().all(|&j| j < s.cols())
            && self.cells().all(|(i, j)| s.is_positive(i, j))
    }
}

/// A collection of rectangles meant to cover the support of one matrix,
/// canonicalized and deduplicated for stable certificates.
#[derive(Clone, Debug)]
pub struct Covering {
    pub matrix_ref: String,
    pub rectangles: Vec<Rectangle>,
}

impl Covering {
    pub fn new(matrix_ref: &str, mut rectangles: Vec<Rectangle>) -> Self {
        rectangles.retain(|r| !r.row_set.is_empty() && !r.col_set.is_empty());
        rectangles.sort();
        rectangles.dedup();
        Covering {
            matrix_ref: matrix_ref.to_string(),
            rectangles,
        }
    }

    pub fn size(&self) -> usize {
        self.rectangles.len()
    }
}

/// Two support cells that can never share a rectangle:
/// `S_ij * S_i'j' > 0` while `S_ij' * S_i'j = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoolingPair {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// Outcome of cover verification; on failure carries the first violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverCheck {
    Valid,
    InvalidRectangle { index: usize, cell: (usize, usize) },
    UncoveredCell { cell: (usize, usize) },
    SpuriousCell { index: usize, cell: (usize, usize) },
}

/// Check that every rectangle is valid and the union of rectangles equals
/// the support of `s` exactly.
pub fn verify_cover(s: &SlackMatrix, c: &Covering) -> Result<CoverCheck> {
    if c.matrix_ref != s.id {
        return Err(Error::MatrixMismatch {
            expected: s.id.clone(),
            got: c.matrix_ref.clone(),
        });
    }
    for (idx, r) in c.rectangles.iter().enumerate() {
        if r.row_set.iter().any(|&i| i >= s.rows()) || r.col_set.iter().any(|&j| j >= s.cols()) {
            return Err(Error::IndexOutOfBounds(format!("rectangle {idx}")));
        }
        for (i, j) in r.cells() {
            if !s.is_positive(i, j) {
                return Ok(CoverCheck::InvalidRectangle {
                    index: idx,
                    cell: (i, j),
                });
            }
        }
    }
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if s.is_positive(i, j) && !c.rectangles.iter().any(|r| r.contains(i, j)) {
                return Ok(CoverCheck::UncoveredCell { cell: (i, j) });
            }
        }
    }
    Ok(CoverCheck::Valid)
}

/// All unordered fooling pairs of support cells, by brute force over cell
/// pairs; desk-scale supports make this trivially fast.
pub fn fooling_pairs(s: &SlackMatrix) -> Vec<FoolingPair> {
    let support = s.support();
    let mut pairs = Vec::new();
    for (a, &(i, j)) in support.iter().enumerate() {
        for &(i2, j2) in &support[a + 1..] {
            if i == i2 || j == j2 {
                continue;
            }
            if !s.is_positive(i, j2) || !s.is_positive(i2, j) {
                pairs.push(FoolingPair {
                    first: (i, j),
                    second: (i2, j2),
                });
            }
        }
    }
    pairs
}

/// Grow a maximal rectangle around a seed cell: first all compatible
/// columns, then all compatible rows.
fn grow_rectangle(s: &SlackMatrix, i: usize, j: usize) -> Rectangle {
    let cols: Vec<usize> = (0..s.cols()).filter(|&c| s.is_positive(i, c)).collect();
    // restrict to columns compatible with the seed row, then add rows
    // positive on the whole column set
    let mut col_set = vec![j];
    for &c in &cols {
        if c != j {
            col_set.push(c);
        }
    }
    let row_set: Vec<usize> = (0..s.rows())
        .filter(|&r| col_set.iter().all(|&c| s.is_positive(r, c)))
        .collect();
    // re-expand columns against the final row set
    let col_set: Vec<usize> = (0..s.cols())
        .filter(|&c| row_set.iter().all(|&r| s.is_positive(r, c)))
        .collect();
    Rectangle::new(row_set, col_set)
}

/// Drop rectangles whose cells are all covered by the others.
pub fn prune_cover(s: &SlackMatrix, rectangles: Vec<Rectangle>) -> Vec<Rectangle> {
    let mut kept = rectangles;
    let mut idx = 0;
    while idx < kept.len() {
        let redundant = kept[idx].cells().all(|(i, j)| {
            kept.iter()
                .enumerate()
                .any(|(t, r)| t != idx && r.contains(i, j))
        });
        let _ = s;
        if redundant {
            kept.remove(idx);
        } else {
            idx += 1;
        }
    }
    kept
}

/// Valid covering by maximal rectangles grown from uncovered cells; size is
/// reported, optimality is not claimed.
pub fn greedy_cover(s: &SlackMatrix) -> Covering {
    let mut covered = vec![vec![false; s.cols()]; s.rows()];
    let mut rectangles = Vec::new();
    loop {
        let mut seed = None;
        'outer: for i in 0..s.rows() {
            for j in 0..s.cols() {
                if s.is_positive(i, j) && !covered[i][j] {
                    seed = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = seed else { break };
        let r = grow_rectangle(s, i, j);
        for (a, b) in r.cells() {
            covered[a][b] = true;
        }
        rectangles.push(r);
    }
    Covering::new(&s.id, prune_cover(s, rectangles))
}

/// Batch size of the randomized construction: ceil(e (k+1)^2 ln n).
pub fn randomized_batch_size(n: usize, k: usize) -> usize {
    (std::f64::consts::E * ((k + 1) as f64).powi(2) * (n as f64).ln()).ceil() as usize
}

/// Outcome of the randomized cover construction for the G-pattern matrix.
#[derive(Clone, Debug)]
pub enum RandomizedCover {
    Found { covering: Covering, batches_used: usize },
    Failed { trials: usize },
}

/// Randomized cover of the n x C(n, n-k) pattern matrix: per batch draw
/// r = ceil(e (k+1)^2 ln n) random index sets I (each element kept with
/// probability 1/(k+1)) and use the rectangles R_I = {(x, S) : x in I,
/// I subset of S}; succeed when a batch covers the whole support. The
/// returned cover is pruned of redundant rectangles.
pub fn randomized_cover_gnk(n: usize, k: usize, trials: usize, seed: u64) -> Result<RandomizedCover> {
    if k < 2 || k + 2 > n {
        return Err(Error::BadSpec { n, k });
    }
    let s = g_pattern_matrix(n, k);
    let subsets = crate::hypersimplex::k_subsets(n, n - k);
    let r = randomized_batch_size(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for batch in 1..=trials {
        let mut rectangles = Vec::new();
        for _ in 0..r {
            let set: Vec<usize> = (0..n).filter(|_| rng.gen::<f64>() < 1.0 / (k + 1) as f64).collect();
            if set.is_empty() || set.len() > n - k {
                continue;
            }
            let cols: Vec<usize> = subsets
                .iter()
                .enumerate()
                .filter(|(_, sub)| set.iter().all(|x| sub.contains(x)))
                .map(|(j, _)| j)
                .collect();
            if cols.is_empty() {
                continue;
            }
            rectangles.push(Rectangle::new(set.clone(), cols));
        }
        let covering = Covering::new(&s.id, rectangles);
        if verify_cover(&s, &covering)? == CoverCheck::Valid {
            let pruned = Covering::new(&s.id, prune_cover(&s, covering.rectangles));
            return Ok(RandomizedCover::Found {
                covering: pruned,
                batches_used: batch,
            });
        }
    }
    Ok(RandomizedCover::Failed { trials })
}

/// Lift a cover of the G-pattern matrix G^{n,k} to a cover of the full
/// slack matrix of the (n, k)-hypersimplex: the F-part is covered by its n
/// rows, the G-part by the lifted pattern rectangles (pattern columns are
/// (n-k)-subsets, slack columns their k-subset complements). The result is
/// verified and has n + |pattern cover| rectangles.
pub fn lift_pattern_cover(n: usize, k: usize, pattern: &Covering) -> Result<Covering> {
    let s_pattern = g_pattern_matrix(n, k);
    if verify_cover(&s_pattern, pattern)? != CoverCheck::Valid {
        return Err(Error::VerificationFailed(
            "pattern cover does not cover the G-pattern matrix".into(),
        ));
    }
    let spec = crate::hypersimplex::HypersimplexSpec::new(n, k)?;
    let s = crate::hypersimplex::slack_matrix_standard(spec);
    let k_subs = crate::hypersimplex::k_subsets(n, k);
    let co_subs = crate::hypersimplex::k_subsets(n, n - k);
    // pattern column (an (n-k)-subset) -> slack column of its complement
    let col_map: Vec<usize> = co_subs
        .iter()
        .map(|sub| {
            let complement: Vec<usize> = (0..n).filter(|x| !sub.contains(x)).collect();
            k_subs.iter().position(|t| *t == complement).expect("complement is a k-subset")
        })
        .collect();
    let mut rectangles = Vec::new();
    for i in 0..n {
        let cols: Vec<usize> = (0..s.cols()).filter(|&j| s.is_positive(i, j)).collect();
        rectangles.push(Rectangle::new([i], cols));
    }
    for r in &pattern.rectangles {
        rectangles.push(Rectangle::new(
            r.row_set.iter().map(|&i| n + i),
            r.col_set.iter().map(|&j| col_map[j]),
        ));
    }
    let covering = Covering::new(&s.id, rectangles);
    match verify_cover(&s, &covering)? {
        CoverCheck::Valid => Ok(covering),
        bad => Err(Error::VerificationFailed(format!(
            "lifted cover fails verification: {bad:?}"
        ))),
    }
}

/// Best known bounds for the nonnegative rank of the standard (n, k)
/// realization, with a human-readable derivation trace. In combinatorial
/// mode the lower bound holds for every combinatorial realization.
#[derive(Clone, Debug)]
pub struct BoundLedger {
    pub n: usize,
    pub k: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub trace: Vec<String>,
}

pub fn bound_ledger(n: usize, k: usize, combinatorial: bool) -> Result<BoundLedger> {
    if k == 0 || k >= n {
        return Err(Error::BadSpec { n, k });
    }
    let mut trace = Vec::new();
    let vertices = binomial(n, k);
    let facets = if k == 1 || k == n - 1 { n } else { 2 * n };
    let mut upper = vertices.min(facets);
    trace.push(format!(
        "upper {upper}: min(vertices {vertices}, facets {facets})"
    ));
    let randomized = n + randomized_batch_size(n, k.min(n - k));
    if k >= 2 && k + 2 <= n && randomized < upper {
        upper = randomized;
        trace.push(format!(
            "upper {upper}: row cover of one pattern part (n) plus randomized cover bound"
        ));
    }

    let dim = n - 1;
    let mut lower = dim + 1;
    trace.push(format!("lower {lower}: rc >= dim + 1 on a {dim}-polytope"));

    let mut exact = None;
    if combinatorial {
        // bound valid for any combinatorial realization
        if n >= 6 && k >= 2 && k + 2 <= n {
            let kk = k.min(n - k);
            let bound = if 2 * kk >= n.saturating_sub(1) && 2 * kk <= n + 1 {
                2 * n
            } else {
                n + 2 * kk + 1
            };
            if bound > lower {
                lower = bound;
                trace.push(format!(
                    "lower {lower}: combinatorial bound via FG-generic middle cases and face monotonicity"
                ));
            }
        }
    } else {
        exact = match (n, k) {
            (_, 1) => Some(n),
            (_, k) if k == n - 1 => Some(n),
            (4, 2) => Some(6),
            (5, 2) | (5, 3) => Some(9),
            (n, k) if n >= 6 && k >= 2 && k + 2 <= n => Some(2 * n),
            _ => None,
        };
        if let Some(e) = exact {
            lower = e;
            upper = e;
            trace.push(format!(
                "exact {e}: known nonnegative rank of the standard realization"
            ));
        } else {
            // facet monotonicity: rkN >= rkN(F-facet) + 1, and the two
            // disjoint-facet strengthening via F_i, G_i
            if k >= 2 && k + 2 <= n {
                let f = bound_ledger(n - 1, k.min(n - 2), false)?;
                let g = bound_ledger(n - 1, k - 1, false)?;
                let strengthened = f.lower.min(g.lower) + 2;
                if strengthened > lower {
                    lower = strengthened;
                    trace.push(format!(
                        "lower {lower}: disjoint facets F_i, G_i give min + 2"
                    ));
                }
            }
        }
    }
    Ok(BoundLedger {
        n,
        k,
        lower,
        upper,
        exact,
        trace,
    })
}
