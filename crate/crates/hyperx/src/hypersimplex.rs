//! Hypersimplices, their F/G facet structure, and slack matrices of the
//! standard or of arbitrary labeled realizations.

use crate::error::{Error, Result};
use crate::num::{ExactMatrix, ExactScalar};
use crate::polytope::{hull, Polytope};

/// All k-subsets of {0,..,n-1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    if k == 0 {
        return vec![vec![]];
    }
    loop {
        out.push(cur.clone());
        // advance to the next subset in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// The pair (n, k) defining the hypersimplex conv{x in {0,1}^n : sum x = k}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HypersimplexSpec {
    pub n: usize,
    pub k: usize,
}

impl HypersimplexSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k == 0 || k >= n {
            return Err(Error::BadSpec { n, k });
        }
        Ok(HypersimplexSpec { n, k })
    }

    /// Proper hypersimplices have all 2n cube inequalities as facets.
    pub fn is_proper(&self) -> bool {
        self.k >= 2 && self.k + 2 <= self.n
    }

    pub fn dim(&self) -> usize {
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        binomial(self.n, self.k)
    }

    /// Characteristic vectors of k-subsets, lexicographic subset order.
    pub fn vertices(&self) -> Vec<Vec<ExactScalar>> {
        k_subsets(self.n, self.k)
            .into_iter()
            .map(|s| {
                let mut v = vec![ExactScalar::zero(); self.n];
                for i in s {
                    v[i] = ExactScalar::one();
                }
                v
            })
            .collect()
    }
}

/// Row label of a hypersimplex slack matrix: F_i is the facet x_i = 0,
/// G_i the facet x_i = 1. Indices are 0-based; display is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FacetLabel {
    F(usize),
    G(usize),
}

impl std::fmt::Display for FacetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FacetLabel::F(i) => write!(f, "F{}", i + 1),
            FacetLabel::G(i) => write!(f, "G{}", i + 1),
        }
    }
}

/// Correspondence between a polytope's facets/vertices and the reference
/// combinatorics of a hypersimplex: facet index -> label, vertex index ->
/// k-subset.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub facet_labels: Vec<FacetLabel>,
    pub vertex_subsets: Vec<Vec<usize>>,
}

/// Nonnegative exact matrix with labeled facet rows and vertex columns.
#[derive(Clone, Debug)]
pub struct SlackMatrix {
    pub id: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub matrix: ExactMatrix,
}

impl SlackMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_positive(&self, i: usize, j: usize) -> bool {
        self.matrix.get(i, j).is_positive()
    }

    /// Support cells in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if self.is_positive(i, j) {
                    cells.push((i, j));
                }
            }
        }
        cells
    }

    pub fn support_size(&self) -> usize {
        self.support().len()
    }

    /// Slack-matrix sanity: entries nonnegative, every row and every column
    /// has at least one zero (each facet misses a vertex and vice versa).
    pub fn validate(&self) -> Result<()> {
        let (r, c) = (self.rows(), self.cols());
        for i in 0..r {
            for j in 0..c {
                if self.matrix.get(i, j).is_negative() {
                    return Err(Error::VerificationFailed(format!(
                        "negative slack at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..r {
            if (0..c).all(|j| self.is_positive(i, j)) {
                return Err(Error::VerificationFailed(format!("row {i} has no zero")));
            }
        }
        for j in 0..c {
            if (0..r).all(|i| self.is_positive(i, j)) {
                return Err(Error::VerificationFailed(format!("column {j} has no zero")));
            }
        }
        Ok(())
    }
}

fn subset_label(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// The 0/1 slack matrix of the standard realization: rows F_1..F_n then
/// G_1..G_n, columns the k-subsets in lexicographic order. Entry (F_i, S) is
/// [i in S] and (G_i, S) is [i not in S].
pub fn slack_matrix_standard(spec: HypersimplexSpec) -> SlackMatrix {
    let n = spec.n;
    let subsets = k_subsets(n, spec.k);
    let cols = subsets.len();
    let matrix = ExactMatrix::from_fn(2 * n, cols, |i, j| {
        let s = &subsets[j];
        let member = if i < n { s.contains(&i) } else { !s.contains(&(i - n)) };
        if member {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    })
    .expect("0/1 entries");
    let mut row_labels: Vec<String> = (0..n).map(|i| format!("F{}", i + 1)).collect();
    row_labels.extend((0..n).map(|i| format!("G{}", i + 1)));
    SlackMatrix {
        id: format!("delta_{}_{}_standard", n, spec.k),
        row_labels,
        col_labels: subsets.iter().map(|s| subset_label(s)).collect(),
        matrix,
    }
}

/// The pattern matrix with rows [n] and columns the (n-k)-subsets; cell
/// (x, S) is positive iff x is in S. The G-facet rows of the standard slack
/// matrix form a copy of it.
pub fn g_pattern_matrix(n: usize, k: usize) -> SlackMatrix {
    let subsets = k_subsets(n, n - k);
    let matrix = ExactMatrix::from_fn(n, subsets.len(), |i, j| {
        if subsets[j].contains(&i) {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    })
    .expect("0/1 entries");
    SlackMatrix {
        id: format!("g_pattern_{n}_{k}"),
        row_labels: (0..n).map(|i| format!("x{}", i + 1)).collect(),
        col_labels: subsets.iter().map(|s| subset_label(s)).collect(),
        matrix,
    }
}

/// A facet of a hypersimplex, as a smaller spec plus the column subset of
/// the parent slack matrix selecting the facet's vertices. `simplex` flags
/// facets that degenerate to simplices (k = 1 or k = n-1 in the child).
#[derive(Clone, Debug)]
pub struct FacetSlice {
    pub spec: HypersimplexSpec,
    pub columns: Vec<usize>,
    pub simplex: bool,
}

/// F_i = {x_i = 0}, a copy of the (n-1, k)-hypersimplex.
pub fn f_facet(spec: HypersimplexSpec, i: usize) -> Result<FacetSlice> {
    let child = HypersimplexSpec::new(spec.n - 1, spec.k)?;
    let columns = k_subsets(spec.n, spec.k)
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.contains(&i))
        .map(|(j, _)| j)
        .collect();
    Ok(FacetSlice {
        spec: child,
        columns,
        simplex: !child.is_proper(),
    })
}

/// G_i = {x_i = 1}, a copy of the (n-1, k-1)-hypersimplex.
pub fn g_facet(spec: HypersimplexSpec, i: usize) -> Result<FacetSlice> {
    let child = HypersimplexSpec::new(spec.n - 1, spec.k - 1)?;
    let columns = k_subsets(spec.n, spec.k)
        .iter()
        .enumerate()
        .filter(|(_, s)| s.contains(&i))
        .map(|(j, _)| j)
        .collect();
    Ok(FacetSlice {
        spec: child,
        columns,
        simplex: !child.is_proper(),
    })
}

/// Full-dimensional coordinates for the standard realization: drop the last
/// coordinate (recoverable from the level constraint sum x = k).
pub fn standard_vertex_coords(spec: HypersimplexSpec) -> Vec<Vec<ExactScalar>> {
    spec.vertices()
        .into_iter()
        .map(|mut v| {
            v.pop();
            v
        })
        .collect()
}

/// The standard realization as an exact polytope in R^{n-1}, together with
/// the labeling tying its facets and vertices to the reference combinatorics.
pub fn standard_polytope(spec: HypersimplexSpec) -> Result<(Polytope, Labeling)> {
    let coords = standard_vertex_coords(spec);
    let p = hull(&coords)?;
    // hull keeps distinct input points in input order, and every
    // characteristic vector is a vertex
    if p.vertex_count() != coords.len() {
        return Err(Error::VerificationFailed(
            "standard hypersimplex lost vertices in hull".into(),
        ));
    }
    let vertex_subsets = k_subsets(spec.n, spec.k);
    let facet_labels = label_facets_by_incidence(&p, spec.n, &vertex_subsets)?;
    Ok((
        p,
        Labeling {
            facet_labels,
            vertex_subsets,
        },
    ))
}

/// Match each facet of `p` to an F- or G-label by comparing its tight vertex
/// set against the reference incidence (tight at G_i iff i in S, tight at
/// F_i iff i not in S).
pub fn label_facets_by_incidence(
    p: &Polytope,
    n: usize,
    vertex_subsets: &[Vec<usize>],
) -> Result<Vec<FacetLabel>> {
    if vertex_subsets.len() != p.vertex_count() {
        return Err(Error::LabelingMismatch(format!(
            "{} vertex subsets for {} vertices",
            vertex_subsets.len(),
            p.vertex_count()
        )));
    }
    let inc = p.vertex_facet_incidence();
    let mut labels = Vec::with_capacity(inc.len());
    let mut used: Vec<FacetLabel> = Vec::new();
    for (fi, row) in inc.iter().enumerate() {
        let mut found = None;
        for i in 0..n {
            let g_pattern: Vec<bool> = vertex_subsets.iter().map(|s| s.contains(&i)).collect();
            if *row == g_pattern {
                found = Some(FacetLabel::G(i));
                break;
            }
            let f_pattern: Vec<bool> = vertex_subsets.iter().map(|s| !s.contains(&i)).collect();
            if *row == f_pattern {
                found = Some(FacetLabel::F(i));
                break;
            }
        }
        let label = found.ok_or_else(|| {
            Error::LabelingMismatch(format!("facet {fi} matches no F/G incidence pattern"))
        })?;
        if used.contains(&label) {
            return Err(Error::LabelingMismatch(format!("label {label} used twice")));
        }
        used.push(label);
        labels.push(label);
    }
    Ok(labels)
}

/// True iff the labeled vertex-facet incidence of `p` matches the reference
/// incidence of the (n, k)-hypersimplex. Errors on wrong facet count.
pub fn is_combinatorial_hypersimplex(
    p: &Polytope,
    n: usize,
    k: usize,
    labeling: &Labeling,
) -> Result<bool> {
    if p.facet_count() != 2 * n {
        return Err(Error::NotHypersimplex {
            n,
            k,
            reason: format!("facet count {} != {}", p.facet_count(), 2 * n),
        });
    }
    if p.vertex_count() != binomial(n, k)
        || labeling.vertex_subsets.len() != p.vertex_count()
        || labeling.facet_labels.len() != p.facet_count()
    {
        return Ok(false);
    }
    // labels must be exactly F_1..F_n, G_1..G_n in some order, and the
    // subsets distinct k-subsets
    let mut seen_f = vec![false; n];
    let mut seen_g = vec![false; n];
    for l in &labeling.facet_labels {
        match *l {
            FacetLabel::F(i) if i < n && !seen_f[i] => seen_f[i] = true,
            FacetLabel::G(i) if i < n && !seen_g[i] => seen_g[i] = true,
            _ => return Ok(false),
        }
    }
    let mut sorted = labeling.vertex_subsets.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != labeling.vertex_subsets.len()
        || labeling
            .vertex_subsets
            .iter()
            .any(|s| s.len() != k || s.iter().any(|&i| i >= n))
    {
        return Ok(false);
    }
    let inc = p.vertex_facet_incidence();
    for (fi, label) in labeling.facet_labels.iter().enumerate() {
        for (vj, s) in labeling.vertex_subsets.iter().enumerate() {
            let expected = match *label {
                FacetLabel::F(i) => !s.contains(&i),
                FacetLabel::G(i) => s.contains(&i),
            };
            if inc[fi][vj] != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact slack values of a labeled realization, rows reordered to
/// F_1..F_n, G_1..G_n and columns to lexicographic k-subsets. The zero
/// pattern is checked against the reference incidence.
pub fn slack_matrix_of_realization(
    p: &Polytope,
    n: usize,
    k: usize,
    labeling: &Labeling,
    id: &str,
) -> Result<SlackMatrix> {
    if !is_combinatorial_hypersimplex(p, n, k, labeling)? {
        return Err(Error::LabelingMismatch(format!(
            "polytope is not a labeled combinatorial ({n},{k})-hypersimplex"
        )));
    }
    // facet row order F_1..F_n, G_1..G_n
    let mut facet_for_label = vec![usize::MAX; 2 * n];
    for (fi, label) in labeling.facet_labels.iter().enumerate() {
        let slot = match *label {
            FacetLabel::F(i) => i,
            FacetLabel::G(i) => n + i,
        };
        facet_for_label[slot] = fi;
    }
    // column order: lexicographic k-subsets
    let subsets = k_subsets(n, k);
    let mut vertex_for_subset = vec![usize::MAX; subsets.len()];
    for (vj, s) in labeling.vertex_subsets.iter().enumerate() {
        let rank = subsets.iter().position(|t| t == s).expect("valid subset");
        vertex_for_subset[rank] = vj;
    }
    let matrix = ExactMatrix::from_fn(2 * n, subsets.len(), |row, col| {
        let ineq = &p.inequalities()[facet_for_label[row]];
        ineq.eval(&p.vertices()[vertex_for_subset[col]])
    })?;
    let reference = slack_matrix_standard(HypersimplexSpec::new(n, k)?);
    for i in 0..2 * n {
        for j in 0..subsets.len() {
            if matrix.get(i, j).is_positive() != reference.is_positive(i, j) {
                return Err(Error::LabelingMismatch(format!(
                    "support pattern differs from reference at ({i},{j})"
                )));
            }
        }
    }
    let mut row_labels: Vec<String> = (0..n).map(|i| format!("F{}", i + 1)).collect();
    row_labels.extend((0..n).map(|i| format!("G{}", i + 1)));
    Ok(SlackMatrix {
        id: id.to_string(),
        row_labels,
        col_labels: subsets.iter().map(|s| subset_label(s)).collect(),
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(6, 3).len(), 20);
        assert_eq!(k_subsets(10, 2).len(), 45);
        assert_eq!(binomial(10, 2), 45);
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = k_subsets(4, 2);
        assert_eq!(
            s,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn spec_validation() {
        assert!(HypersimplexSpec::new(4, 0).is_err());
        assert!(HypersimplexSpec::new(4, 4).is_err());
        assert!(HypersimplexSpec::new(4, 1).unwrap().is_proper() == false);
        assert!(HypersimplexSpec::new(4, 2).unwrap().is_proper());
    }

    #[test]
    fn standard_slack_42_column() {
        let s = slack_matrix_standard(HypersimplexSpec::new(4, 2).unwrap());
        // column of vertex {1,2} (0-based {0,1}) is (1,1,0,0 | 0,0,1,1)
        let col = 0;
        let want = [1, 1, 0, 0, 0, 0, 1, 1];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(s.matrix.get(i, col), &ExactScalar::from_int(*w));
        }
        s.validate().unwrap();
    }

    #[test]
    fn standard_slack_support_counts() {
        for (n, k, want) in [(6usize, 3usize, 120usize), (5, 2, 50), (4, 2, 24)] {
            let s = slack_matrix_standard(HypersimplexSpec::new(n, k).unwrap());
            assert_eq!(s.support_size(), want);
            assert_eq!(s.support_size(), n * binomial(n, k));
        }
    }

    #[test]
    fn column_support_split_f_vs_g() {
        // every column: exactly k positive F-entries and n-k positive G-entries
        for n in 4..=8usize {
            for k in 2..=n - 2 {
                let s = slack_matrix_standard(HypersimplexSpec::new(n, k).unwrap());
                for j in 0..s.cols() {
                    let f = (0..n).filter(|&i| s.is_positive(i, j)).count();
                    let g = (n..2 * n).filter(|&i| s.is_positive(i, j)).count();
                    assert_eq!((f, g), (k, n - k));
                }
            }
        }
    }

    #[test]
    fn facet_specs() {
        let d63 = HypersimplexSpec::new(6, 3).unwrap();
        assert_eq!(f_facet(d63, 0).unwrap().spec, HypersimplexSpec::new(5, 3).unwrap());
        assert_eq!(g_facet(d63, 0).unwrap().spec, HypersimplexSpec::new(5, 2).unwrap());
        let dn2 = HypersimplexSpec::new(7, 2).unwrap();
        let g = g_facet(dn2, 3).unwrap();
        assert_eq!(g.spec, HypersimplexSpec::new(6, 1).unwrap());
        assert!(g.simplex);
    }

    #[test]
    fn facet_heredity_of_slack_support() {
        // G-rows restricted to an F-facet's columns reproduce the smaller
        // standard slack matrix's G-part (up to the label maps)
        let spec = HypersimplexSpec::new(6, 3).unwrap();
        let s = slack_matrix_standard(spec);
        let f0 = f_facet(spec, 0).unwrap();
        let child = slack_matrix_standard(f0.spec);
        // parent ground element i >= 1 maps to child element i-1
        for i in 1..6usize {
            for (cj, &pj) in f0.columns.iter().enumerate() {
                assert_eq!(
                    s.is_positive(6 + i, pj),
                    child.is_positive(5 + (i - 1), cj)
                );
                assert_eq!(s.is_positive(i, pj), child.is_positive(i - 1, cj));
            }
        }
    }

    #[test]
    fn fi_gi_share_no_zero_column() {
        // F_i and G_i are disjoint facets: no vertex is tight on both
        for (n, k) in [(5usize, 2usize), (6, 3), (7, 2)] {
            let s = slack_matrix_standard(HypersimplexSpec::new(n, k).unwrap());
            for i in 0..n {
                for j in 0..s.cols() {
                    assert!(s.is_positive(i, j) || s.is_positive(n + i, j));
                }
            }
        }
    }

    #[test]
    fn standard_polytope_52_counts() {
        let (p, labeling) = standard_polytope(HypersimplexSpec::new(5, 2).unwrap()).unwrap();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.facet_count(), 10);
        assert!(is_combinatorial_hypersimplex(&p, 5, 2, &labeling).unwrap());
    }

    #[test]
    fn standard_polytope_63_has_12_facets() {
        let (p, labeling) = standard_polytope(HypersimplexSpec::new(6, 3).unwrap()).unwrap();
        assert_eq!(p.facet_count(), 12);
        assert_eq!(p.vertex_count(), 20);
        assert!(is_combinatorial_hypersimplex(&p, 6, 3, &labeling).unwrap());
    }

    #[test]
    fn delta42_facets_have_three_vertices() {
        let (p, _) = standard_polytope(HypersimplexSpec::new(4, 2).unwrap()).unwrap();
        assert_eq!(p.facet_count(), 8);
        for row in p.vertex_facet_incidence() {
            assert_eq!(row.iter().filter(|&&b| b).count(), 3);
        }
    }

    #[test]
    fn delta62_facet_sizes() {
        let (p, labeling) = standard_polytope(HypersimplexSpec::new(6, 2).unwrap()).unwrap();
        let inc = p.vertex_facet_incidence();
        for (fi, label) in labeling.facet_labels.iter().enumerate() {
            let size = inc[fi].iter().filter(|&&b| b).count();
            match label {
                FacetLabel::F(_) => assert_eq!(size, 10), // C(5,2)
                FacetLabel::G(_) => assert_eq!(size, 5),
            }
        }
    }

    #[test]
    fn slack_of_standard_realization_matches_combinatorial() {
        let spec = HypersimplexSpec::new(5, 2).unwrap();
        let (p, labeling) = standard_polytope(spec).unwrap();
        let s = slack_matrix_of_realization(&p, 5, 2, &labeling, "r52").unwrap();
        let reference = slack_matrix_standard(spec);
        // facet inequalities are scaled copies of x_i >= 0 / 1 - x_i >= 0,
        // so slack values agree up to positive row scaling; the support and
        // in fact the values agree after ray normalization
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                assert_eq!(s.is_positive(i, j), reference.is_positive(i, j));
            }
        }
    }

    #[test]
    fn cube_is_not_a_hypersimplex() {
        let pts: Vec<Vec<ExactScalar>> = (0..8u32)
            .map(|m| (0..3).map(|i| ExactScalar::from_int(((m >> i) & 1) as i64)).collect())
            .collect();
        let p = hull(&pts).unwrap();
        // 6 facets vs expected 8 for (4,2): wrong facet count errors out
        assert!(is_combinatorial_hypersimplex(
            &p,
            4,
            2,
            &Labeling {
                facet_labels: vec![],
                vertex_subsets: vec![]
            }
        )
        .is_err());
    }
}
