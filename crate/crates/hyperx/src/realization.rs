//! Realization spaces of hypersimplices: G-matrices, ratio matrices for
//! the k = 2 family (truncation points on simplex edges), genericity
//! tests and a handful of distinguished realizations.

use crate::error::{Error, Result};
use crate::hypersimplex::{
    k_subsets, label_facets_by_incidence, FacetLabel, Labeling, SlackMatrix,
};
use crate::num::{ExactMatrix, ExactScalar};
use crate::polytope::{hull, Polytope};
use rand::Rng;

/// An n-by-n matrix with -1 on the diagonal and positive off-diagonal
/// entries rho_ij satisfying rho_ij * rho_ji = 1. Encodes a choice of an
/// interior point on every edge of the standard simplex: rho_ij is the
/// distance ratio |e_i - p_ij| / |e_j - p_ij|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioMatrix {
    pub matrix: ExactMatrix,
}

impl RatioMatrix {
    pub fn new(matrix: ExactMatrix) -> Result<RatioMatrix> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n = matrix.rows();
        let minus_one = ExactScalar::from_int(-1);
        let one = ExactScalar::from_int(1);
        for i in 0..n {
            if *matrix.get(i, i) != minus_one {
                return Err(Error::BadRatioMatrix(format!(
                    "diagonal entry ({i},{i}) is not -1"
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if !matrix.get(i, j).is_positive() {
                    return Err(Error::BadRatioMatrix(format!(
                        "off-diagonal entry ({i},{j}) is not positive"
                    )));
                }
                if &(matrix.get(i, j) * matrix.get(j, i)) != &one {
                    return Err(Error::BadRatioMatrix(format!(
                        "reciprocity fails: rho_{i}{j} * rho_{j}{i} != 1"
                    )));
                }
            }
        }
        Ok(RatioMatrix { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn from_fractions(entries: &[Vec<(i64, i64)>]) -> Result<RatioMatrix> {
        let n = entries.len();
        RatioMatrix::new(ExactMatrix::from_fn(n, n, |i, j| {
            let (p, q) = entries[i][j];
            ExactScalar::from_frac(p, q)
        })?)
    }

    /// Interior edge point p_ij = (e_i + rho_ij e_j) / (1 + rho_ij) in R^n.
    pub fn edge_point(&self, i: usize, j: usize) -> Vec<ExactScalar> {
        let rho = self.matrix.get(i, j).clone();
        let denom = (ExactScalar::from_int(1) + &rho).inverse();
        let mut p = vec![ExactScalar::from_int(0); self.n()];
        p[i] = denom.clone();
        p[j] = &denom * &rho;
        p
    }
}

/// The G-matrix of the standard realization of the (n, k)-hypersimplex:
/// 1 - k on the diagonal and 1 elsewhere.
pub fn standard_g_matrix(n: usize, k: usize) -> Result<ExactMatrix> {
    if k < 2 || 2 * k > n {
        return Err(Error::BadSpec { n, k });
    }
    ExactMatrix::from_fn(n, n, |i, j| {
        if i == j {
            ExactScalar::from_int(1 - k as i64)
        } else {
            ExactScalar::from_int(1)
        }
    })
}

/// A hypersimplex with k <= n/2 is G-generic iff its G-matrix is regular.
pub fn is_g_generic(g: &ExactMatrix) -> Result<bool> {
    Ok(!g.determinant()?.is_zero())
}

/// Ratio matrix of a non-G-generic combinatorial (6,2)-hypersimplex,
/// with entries in Q(sqrt 6).
pub fn singular_62_ratio_matrix() -> RatioMatrix {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let root = |c: i64| ExactScalar::sqrt_term(BigRational::from_integer(BigInt::from(c)), 6);
    let plus = ExactScalar::from_int(5) + root(2); // 5 + 2 sqrt(6)
    let minus = ExactScalar::from_int(5) + root(-2); // 5 - 2 sqrt(6)
    let one = ExactScalar::from_int(1);
    let m1 = ExactScalar::from_int(-1);
    let rows = vec![
        vec![m1.clone(), plus.clone(), minus.clone(), one.clone(), one.clone(), one.clone()],
        vec![minus.clone(), m1.clone(), plus.clone(), one.clone(), one.clone(), one.clone()],
        vec![plus.clone(), minus.clone(), m1.clone(), one.clone(), one.clone(), one.clone()],
        vec![one.clone(), one.clone(), one.clone(), m1.clone(), one.clone(), one.clone()],
        vec![one.clone(), one.clone(), one.clone(), one.clone(), m1.clone(), one.clone()],
        vec![one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), m1.clone()],
    ];
    RatioMatrix::new(ExactMatrix::from_rows(&rows).expect("fixed entries"))
        .expect("reciprocity holds: (5 + 2 sqrt 6)(5 - 2 sqrt 6) = 1")
}

/// Build the (n, 2)-hypersimplex realization determined by a ratio matrix:
/// the convex hull of the edge points p_ij of the standard simplex, taken
/// full-dimensional in R^{n-1} by dropping the last coordinate. Vertices
/// are ordered like the lexicographic 2-subsets.
pub fn sample_n2(ratios: &RatioMatrix) -> Result<(Polytope, Labeling)> {
    let n = ratios.n();
    if n < 4 {
        return Err(Error::BadSpec { n, k: 2 });
    }
    let subsets = k_subsets(n, 2);
    let coords: Vec<Vec<ExactScalar>> = subsets
        .iter()
        .map(|s| {
            let mut p = ratios.edge_point(s[0], s[1]);
            p.pop();
            p
        })
        .collect();
    let p = hull(&coords)?;
    if p.vertex_count() != coords.len() {
        return Err(Error::VerificationFailed(
            "an edge point failed to be a vertex".into(),
        ));
    }
    let facet_labels = label_facets_by_incidence(&p, n, &subsets)?;
    Ok((
        p,
        Labeling {
            facet_labels,
            vertex_subsets: subsets,
        },
    ))
}

/// Canonical projective representative of a ratio matrix: multiply column i
/// by rho_i1 and row i by rho_1i, leaving the first row and column at 1.
/// Idempotent.
pub fn projective_normalize(r: &RatioMatrix) -> RatioMatrix {
    let n = r.n();
    let m = ExactMatrix::from_fn(n, n, |i, j| {
        let mut e = r.matrix.get(i, j).clone();
        if j > 0 {
            e = &e * r.matrix.get(j, 0);
        }
        if i > 0 {
            e = &e * r.matrix.get(0, i);
        }
        e
    })
    .expect("same radicand");
    RatioMatrix::new(m).expect("positive scaling preserves ratio matrix structure")
}

fn homogenized_rows(p: &Polytope, labels: &[FacetLabel], want_g: bool, n: usize) -> Result<ExactMatrix> {
    let mut rows = vec![Vec::new(); n];
    for (fi, label) in labels.iter().enumerate() {
        let (idx, is_g) = match *label {
            FacetLabel::F(i) => (i, false),
            FacetLabel::G(i) => (i, true),
        };
        if is_g == want_g {
            rows[idx] = p.inequalities()[fi].homogenized();
        }
    }
    ExactMatrix::from_rows(&rows)
}

/// G-matrix of a labeled realization: express the homogenized G-facet
/// normals in the linear basis that turns the F-facet normals into the
/// standard basis. Columns are indexed by G_1..G_n. Well defined up to
/// positive row and column scaling.
pub fn g_matrix_from_realization(p: &Polytope, labeling: &Labeling, n: usize) -> Result<ExactMatrix> {
    if labeling.facet_labels.len() != p.facet_count() || p.facet_count() != 2 * n {
        return Err(Error::LabelingMismatch(format!(
            "{} facets labeled, polytope has {}",
            labeling.facet_labels.len(),
            p.facet_count()
        )));
    }
    let f_hat = homogenized_rows(p, &labeling.facet_labels, false, n)?;
    let g_hat = homogenized_rows(p, &labeling.facet_labels, true, n)?;
    let f_inv_t = f_hat.inverse()?.transpose();
    f_inv_t.matmul(&g_hat.transpose())
}

/// Scale the columns of a G-matrix so the diagonal becomes -1; for an
/// (n,2)-hypersimplex this recovers a ratio matrix representative.
pub fn ratio_matrix_from_g(g: &ExactMatrix) -> Result<RatioMatrix> {
    if g.rows() != g.cols() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let n = g.rows();
    let mut scales = Vec::with_capacity(n);
    for j in 0..n {
        let d = g.get(j, j);
        if !d.is_negative() {
            return Err(Error::BadRatioMatrix(format!(
                "diagonal entry ({j},{j}) is not negative"
            )));
        }
        scales.push((-d).inverse());
    }
    RatioMatrix::new(ExactMatrix::from_fn(n, n, |i, j| g.get(i, j) * &scales[j])?)
}

/// Do two matrices of the same shape differ by positive row and column
/// scalings? Assumes all entries nonzero (true for hypersimplex G-matrices).
pub fn positively_scaling_equivalent(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.rows() * a.cols(),
            got: b.rows() * b.cols(),
        });
    }
    let mut row_scale = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let (x, y) = (a.get(i, 0), b.get(i, 0));
        if x.is_zero() || y.is_zero() {
            return Err(Error::VerificationFailed("zero entry in scaling test".into()));
        }
        row_scale.push(y * &x.clone().inverse());
    }
    let mut col_scale = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let (x, y) = (a.get(0, j), b.get(0, j));
        if x.is_zero() || y.is_zero() {
            return Err(Error::VerificationFailed("zero entry in scaling test".into()));
        }
        let s = y * &x.clone().inverse();
        col_scale.push(&s * &row_scale[0].clone().inverse());
    }
    if row_scale.iter().any(|s| !s.is_positive()) || col_scale.iter().any(|s| !s.is_positive()) {
        return Ok(false);
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if &(&(a.get(i, j) * &row_scale[i]) * &col_scale[j]) != b.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A (5,2)-hypersimplex realization whose generically refined covering
/// number exceeds 9 (hence its nonnegative rank is 10). Vertex columns,
/// in lexicographic 2-subset order, of points summing to 70.
pub fn special_52_vertex_columns() -> Vec<Vec<i64>> {
    vec![
        vec![35, 35, 0, 0, 0],
        vec![35, 0, 35, 0, 0],
        vec![35, 0, 0, 35, 0],
        vec![35, 0, 0, 0, 35],
        vec![0, 50, 20, 0, 0],
        vec![0, 42, 0, 28, 0],
        vec![0, 20, 0, 0, 50],
        vec![0, 0, 56, 14, 0],
        vec![0, 0, 60, 0, 10],
        vec![0, 0, 0, 42, 28],
    ]
}

pub fn special_52_realization() -> Result<(Polytope, Labeling)> {
    let coords: Vec<Vec<ExactScalar>> = special_52_vertex_columns()
        .into_iter()
        .map(|v| v[..4].iter().map(|&x| ExactScalar::from_int(x)).collect())
        .collect();
    let p = hull(&coords)?;
    let subsets = k_subsets(5, 2);
    let facet_labels = label_facets_by_incidence(&p, 5, &subsets)?;
    Ok((
        p,
        Labeling {
            facet_labels,
            vertex_subsets: subsets,
        },
    ))
}

pub fn special_52_slack_matrix() -> Result<SlackMatrix> {
    let (p, labeling) = special_52_realization()?;
    crate::hypersimplex::slack_matrix_of_realization(&p, 5, 2, &labeling, "delta_5_2_special")
}

/// Log-uniform random ratio in [1/bound, bound] with a fixed denominator
/// grid, for fuzzing realizations.
pub fn random_ratio_matrix(n: usize, bound: u32, rng: &mut impl Rng) -> RatioMatrix {
    let n_i = n;
    let mut entries = vec![vec![ExactScalar::from_int(-1); n_i]; n_i];
    for i in 0..n_i {
        for j in i + 1..n_i {
            // numerator and denominator uniform in [1, bound]
            let p = rng.gen_range(1..=bound) as i64;
            let q = rng.gen_range(1..=bound) as i64;
            entries[i][j] = ExactScalar::from_frac(p, q);
            entries[j][i] = ExactScalar::from_frac(q, p);
        }
    }
    RatioMatrix::new(ExactMatrix::from_rows(&entries).expect("rational entries"))
        .expect("constructed to satisfy reciprocity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersimplex::{is_combinatorial_hypersimplex, standard_polytope, HypersimplexSpec};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_ones_ratio_matrix(n: usize) -> RatioMatrix {
        RatioMatrix::new(
            ExactMatrix::from_fn(n, n, |i, j| {
                ExactScalar::from_int(if i == j { -1 } else { 1 })
            })
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn ratio_matrix_rejects_bad_input() {
        let bad_diag = ExactMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert!(RatioMatrix::new(bad_diag).is_err());
        let bad_recip = RatioMatrix::from_fractions(&[
            vec![(-1, 1), (2, 1)],
            vec![(1, 3), (-1, 1)],
        ]);
        assert!(bad_recip.is_err());
        let negative = RatioMatrix::from_fractions(&[
            vec![(-1, 1), (-2, 1)],
            vec![(-1, 2), (-1, 1)],
        ]);
        assert!(negative.is_err());
    }

    #[test]
    fn standard_g_matrix_determinant() {
        for n in 4..=8usize {
            for k in 2..=n / 2 {
                let g = standard_g_matrix(n, k).unwrap();
                let det = g.determinant().unwrap();
                let mut expected = ExactScalar::from_int((n - k) as i64);
                for _ in 0..n - 1 {
                    expected = &expected * &ExactScalar::from_int(-(k as i64));
                }
                assert_eq!(det, expected, "det mismatch for ({n},{k})");
                assert!(is_g_generic(&g).unwrap());
            }
        }
    }

    #[test]
    fn standard_g_matrix_principal_minors_vanish() {
        for n in 4..=7usize {
            for k in 2..=n / 2 {
                let g = standard_g_matrix(n, k).unwrap();
                assert!(g.principal_minor_check(k).unwrap(), "({n},{k})");
            }
        }
    }

    #[test]
    fn singular_62_matrix_is_valid_and_singular() {
        let r = singular_62_ratio_matrix();
        assert_eq!(r.n(), 6);
        assert!(r.matrix.determinant().unwrap().is_zero());
        assert!(!is_g_generic(&r.matrix).unwrap());
        assert!(r.matrix.principal_minor_check(2).unwrap());
    }

    #[test]
    fn edge_point_realizes_the_ratio() {
        let r = RatioMatrix::from_fractions(&[
            vec![(-1, 1), (3, 1), (1, 2)],
            vec![(1, 3), (-1, 1), (4, 5)],
            vec![(2, 1), (5, 4), (-1, 1)],
        ])
        .unwrap();
        // p_ij - e_i = rho/(1+rho) (e_j - e_i): the i-th coordinate drops
        // from 1 by rho/(1+rho), the j-th rises by the same amount scaled
        let p = r.edge_point(0, 1);
        assert_eq!(p[0], ExactScalar::from_frac(1, 4));
        assert_eq!(p[1], ExactScalar::from_frac(3, 4));
        assert_eq!(p[2], ExactScalar::from_int(0));
        // |e_0 - p| / |e_1 - p| = (3/4) / (1/4) = 3 = rho_01
    }

    #[test]
    fn all_ones_ratios_give_standard_hypersimplex() {
        let (p, labeling) = sample_n2(&all_ones_ratio_matrix(5)).unwrap();
        assert!(is_combinatorial_hypersimplex(&p, 5, 2, &labeling).unwrap());
        // the G-matrix must match the standard one up to positive scaling
        let g = g_matrix_from_realization(&p, &labeling, 5).unwrap();
        let standard = standard_g_matrix(5, 2).unwrap();
        assert!(positively_scaling_equivalent(&g, &standard).unwrap());
    }

    #[test]
    fn sampled_realizations_are_hypersimplices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 4..=6usize {
            for _ in 0..5 {
                let r = random_ratio_matrix(n, 10, &mut rng);
                let (p, labeling) = sample_n2(&r).unwrap();
                assert!(is_combinatorial_hypersimplex(&p, n, 2, &labeling).unwrap());
                // recovered ratio matrix agrees projectively with the input
                let g = g_matrix_from_realization(&p, &labeling, n).unwrap();
                let recovered = ratio_matrix_from_g(&g).unwrap();
                assert_eq!(
                    projective_normalize(&recovered).matrix,
                    projective_normalize(&r).matrix
                );
            }
        }
    }

    #[test]
    fn normalize_matches_worked_example() {
        let first = RatioMatrix::from_fractions(&[
            vec![(-1, 1), (3, 1), (1, 1)],
            vec![(1, 3), (-1, 1), (3, 1)],
            vec![(1, 1), (1, 3), (-1, 1)],
        ])
        .unwrap();
        let expected = RatioMatrix::from_fractions(&[
            vec![(-1, 1), (1, 1), (1, 1)],
            vec![(1, 1), (-1, 1), (9, 1)],
            vec![(1, 1), (1, 9), (-1, 1)],
        ])
        .unwrap();
        let got = projective_normalize(&first);
        assert_eq!(got.matrix, expected.matrix);
        assert_eq!(projective_normalize(&got).matrix, expected.matrix);
    }

    #[test]
    fn projectively_equivalent_inputs_normalize_identically() {
        // second and third matrices of the same worked example
        let second = RatioMatrix::from_fractions(&[
            vec![(-1, 1), (3, 1), (1, 3)],
            vec![(1, 3), (-1, 1), (1, 1)],
            vec![(3, 1), (1, 1), (-1, 1)],
        ])
        .unwrap();
        let third = RatioMatrix::from_fractions(&[
            vec![(-1, 1), (3, 1), (3, 1)],
            vec![(1, 3), (-1, 1), (9, 1)],
            vec![(1, 3), (1, 9), (-1, 1)],
        ])
        .unwrap();
        assert_eq!(
            projective_normalize(&second).matrix,
            projective_normalize(&third).matrix
        );
    }

    #[test]
    fn g_matrix_is_basis_invariant() {
        // same polytope, same labeling: recompute after an affine change of
        // coordinates and compare up to positive scaling
        let (p, labeling) = sample_n2(&all_ones_ratio_matrix(4)).unwrap();
        let g1 = g_matrix_from_realization(&p, &labeling, 4).unwrap();
        let shear = crate::polytope::AffineMap::new(
            ExactMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 2, 1]]),
            vec![
                ExactScalar::from_int(3),
                ExactScalar::from_frac(1, 2),
                ExactScalar::from_int(-1),
            ],
        )
        .unwrap();
        let q = p.project(&shear).unwrap();
        let labeling2 = Labeling {
            facet_labels: label_facets_by_incidence(&q, 4, &labeling.vertex_subsets).unwrap(),
            vertex_subsets: labeling.vertex_subsets.clone(),
        };
        let g2 = g_matrix_from_realization(&q, &labeling2, 4).unwrap();
        assert!(positively_scaling_equivalent(&g1, &g2).unwrap());
    }

    #[test]
    fn standard_polytope_g_matrix_matches_formula() {
        for (n, k) in [(5usize, 2usize), (6, 2), (6, 3)] {
            let (p, labeling) = standard_polytope(HypersimplexSpec::new(n, k).unwrap()).unwrap();
            let g = g_matrix_from_realization(&p, &labeling, n).unwrap();
            let standard = standard_g_matrix(n, k).unwrap();
            assert!(
                positively_scaling_equivalent(&g, &standard).unwrap(),
                "({n},{k})"
            );
        }
    }

    #[test]
    fn special_52_realization_checks_out() {
        let (p, labeling) = special_52_realization().unwrap();
        assert!(is_combinatorial_hypersimplex(&p, 5, 2, &labeling).unwrap());
        let s = special_52_slack_matrix().unwrap();
        s.validate().unwrap();
        assert_eq!(s.support_size(), 50);
        // generic: its G-matrix is regular and some 2x2 minor of the slack
        // matrix has distinct diagonal products
        let g = g_matrix_from_realization(&p, &labeling, 5).unwrap();
        assert!(is_g_generic(&g).unwrap());
        assert!(g.principal_minor_check(2).unwrap());
    }

    #[test]
    fn perturbed_g_matrix_fails_principal_minors() {
        let mut g = standard_g_matrix(6, 2).unwrap();
        let bumped = g.get(0, 1) + &ExactScalar::from_frac(1, 7);
        g.set(0, 1, bumped);
        assert!(!g.principal_minor_check(2).unwrap());
    }
}
