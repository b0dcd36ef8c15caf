//! Extensions of polytopes: products, pyramids, the 9-facet extension of
//! the (5,2)-hypersimplex and the square/octagon projection example.

use crate::error::{Error, Result};
use crate::hypersimplex::{standard_polytope, HypersimplexSpec};
use crate::num::{ExactMatrix, ExactScalar};
use crate::polytope::{hull, AffineMap, Inequality, Polytope};

/// An extension `ext` of `target`: a higher-dimensional polytope together
/// with an affine map taking it onto the target.
#[derive(Clone, Debug)]
pub struct Extension {
    pub ext: Polytope,
    pub map: AffineMap,
    pub target: Polytope,
}

fn sorted_vertices(p: &Polytope) -> Vec<Vec<ExactScalar>> {
    let mut v = p.vertices().to_vec();
    v.sort();
    v
}

impl Extension {
    /// Re-derive the projection of `ext` and check it equals `target`
    /// vertex for vertex.
    pub fn verify(&self) -> Result<()> {
        let projected = self.ext.project(&self.map)?;
        if projected.dim() != self.target.dim()
            || sorted_vertices(&projected) != sorted_vertices(&self.target)
        {
            return Err(Error::VerificationFailed(
                "projection of the extension is not the target".into(),
            ));
        }
        self.ext.verify()?;
        self.target.verify()
    }

    pub fn facet_count(&self) -> usize {
        self.ext.facet_count()
    }
}

/// Cartesian product: facet counts add, vertex counts multiply.
pub fn product(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    let dim = p.dim() + q.dim();
    let mut vertices = Vec::with_capacity(p.vertex_count() * q.vertex_count());
    for vp in p.vertices() {
        for vq in q.vertices() {
            let mut v = vp.clone();
            v.extend(vq.iter().cloned());
            vertices.push(v);
        }
    }
    let mut inequalities = Vec::with_capacity(p.facet_count() + q.facet_count());
    for i in p.inequalities() {
        let mut coeffs = i.coeffs.clone();
        coeffs.extend(std::iter::repeat(ExactScalar::zero()).take(q.dim()));
        inequalities.push(Inequality {
            offset: i.offset.clone(),
            coeffs,
        });
    }
    for i in q.inequalities() {
        let mut coeffs = vec![ExactScalar::zero(); p.dim()];
        coeffs.extend(i.coeffs.iter().cloned());
        inequalities.push(Inequality {
            offset: i.offset.clone(),
            coeffs,
        });
    }
    Polytope::from_both(dim, vertices, inequalities)
}

/// Pyramid over `p` with the apex above the vertex barycenter at the given
/// height: one extra vertex, one extra facet.
pub fn pyramid(p: &Polytope, apex_height: &ExactScalar) -> Result<Polytope> {
    if !apex_height.is_positive() {
        return Err(Error::VerificationFailed("apex height must be positive".into()));
    }
    let d = p.dim();
    let count = ExactScalar::from_int(p.vertex_count() as i64);
    let barycenter: Vec<ExactScalar> = (0..d)
        .map(|j| {
            let mut acc = ExactScalar::zero();
            for v in p.vertices() {
                acc = &acc + &v[j];
            }
            &acc * &count.inverse()
        })
        .collect();
    let mut vertices: Vec<Vec<ExactScalar>> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(ExactScalar::zero());
            w
        })
        .collect();
    let mut apex = barycenter.clone();
    apex.push(apex_height.clone());
    vertices.push(apex);
    let mut inequalities = Vec::with_capacity(p.facet_count() + 1);
    for i in p.inequalities() {
        // lifted facet through the old facet and the apex:
        // l(x) - (l(barycenter) / h) t >= 0
        let tilt = &i.eval(&barycenter) * &apex_height.inverse();
        let mut coeffs = i.coeffs.clone();
        coeffs.push(-tilt);
        inequalities.push(Inequality {
            offset: i.offset.clone(),
            coeffs,
        });
    }
    let mut base = vec![ExactScalar::zero(); d];
    base.push(ExactScalar::one());
    inequalities.push(Inequality {
        offset: ExactScalar::zero(),
        coeffs: base,
    });
    Polytope::from_both(d + 1, vertices, inequalities)
}

/// A 9-facet extension of the (5,2)-hypersimplex: removing the two
/// non-adjacent vertices e1+e2 and e3+e4 leaves a 4-polytope Q with 8
/// vertices and 7 facets, and the 2-fold pyramid over Q with apexes lifted
/// over the removed vertices projects back onto the hypersimplex.
pub fn delta52_extension() -> Result<Extension> {
    let spec = HypersimplexSpec::new(5, 2)?;
    let (p, labeling) = standard_polytope(spec)?;
    let v12 = vec![0usize, 1];
    let v34 = vec![2usize, 3];
    let kept: Vec<Vec<ExactScalar>> = p
        .vertices()
        .iter()
        .zip(&labeling.vertex_subsets)
        .filter(|(_, s)| **s != v12 && **s != v34)
        .map(|(v, _)| v.clone())
        .collect();
    let q = hull(&kept)?;
    if q.vertex_count() != 8 || q.facet_count() != 7 {
        return Err(Error::VerificationFailed(format!(
            "vertex-removed polytope has {} vertices and {} facets, expected 8 and 7",
            q.vertex_count(),
            q.facet_count()
        )));
    }
    let coords_of = |s: &[usize]| -> Vec<ExactScalar> {
        (0..4)
            .map(|i| ExactScalar::from_int(s.contains(&i) as i64))
            .collect()
    };
    let mut ext_vertices: Vec<Vec<ExactScalar>> = q
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(ExactScalar::zero());
            w.push(ExactScalar::zero());
            w
        })
        .collect();
    let mut apex1 = coords_of(&v12);
    apex1.push(ExactScalar::one());
    apex1.push(ExactScalar::zero());
    let mut apex2 = coords_of(&v34);
    apex2.push(ExactScalar::zero());
    apex2.push(ExactScalar::one());
    ext_vertices.push(apex1);
    ext_vertices.push(apex2);
    let ext = hull(&ext_vertices)?;
    if ext.facet_count() != 9 {
        return Err(Error::VerificationFailed(format!(
            "2-fold pyramid has {} facets, expected 9",
            ext.facet_count()
        )));
    }
    let extension = Extension {
        ext,
        map: AffineMap::coordinate_projection(6, 4),
        target: p,
    };
    extension.verify()?;
    Ok(extension)
}

/// Vertex columns of a 4-polytope combinatorially equal to the product of
/// a triangle and a quadrilateral; projecting out the last coordinate gives
/// a 3-polytope with an octagon facet and a disjoint square facet.
pub fn sq_oct_columns() -> Vec<[i64; 4]> {
    vec![
        [1, 2, 1, 1],
        [-1, 2, 1, 1],
        [-1, -2, 1, 1],
        [1, -2, 1, 1],
        [2, 1, 1, -1],
        [2, -1, 1, -1],
        [-2, -1, 1, -1],
        [-2, 1, 1, -1],
        [1, 1, -1, -1],
        [-1, 1, -1, -1],
        [1, -1, -1, -1],
        [-1, -1, -1, -1],
    ]
}

/// The square/octagon example: an extension showing that the nonnegative
/// rank of a polytope can be smaller than max over disjoint facets plus two.
pub fn counterexample_sq_oct() -> Result<Extension> {
    let cols = sq_oct_columns();
    let points4: Vec<Vec<ExactScalar>> = cols
        .iter()
        .map(|c| c.iter().map(|&x| ExactScalar::from_int(x)).collect())
        .collect();
    let q = hull(&points4)?;
    if q.vertex_count() != 12 || q.facet_count() != 7 {
        return Err(Error::VerificationFailed(format!(
            "extension has {} vertices and {} facets, expected 12 and 7",
            q.vertex_count(),
            q.facet_count()
        )));
    }
    let points3: Vec<Vec<ExactScalar>> = points4
        .iter()
        .map(|v| v[..3].to_vec())
        .collect();
    let p = hull(&points3)?;
    let extension = Extension {
        ext: q,
        map: AffineMap::coordinate_projection(4, 3),
        target: p,
    };
    extension.verify()?;
    Ok(extension)
}

/// The octagon facet of the square/octagon target, as a 2-polytope.
pub fn sq_oct_octagon() -> Result<Polytope> {
    let points: Vec<Vec<ExactScalar>> = sq_oct_columns()
        .iter()
        .filter(|c| c[2] == 1)
        .map(|c| vec![ExactScalar::from_int(c[0]), ExactScalar::from_int(c[1])])
        .collect();
    hull(&points)
}

/// The square facet of the square/octagon target, as a 2-polytope.
pub fn sq_oct_square() -> Result<Polytope> {
    let points: Vec<Vec<ExactScalar>> = sq_oct_columns()
        .iter()
        .filter(|c| c[2] == -1)
        .map(|c| vec![ExactScalar::from_int(c[0]), ExactScalar::from_int(c[1])])
        .collect();
    hull(&points)
}

/// Slack matrix of an arbitrary polytope with generic row/column labels,
/// for feeding polytopes outside the hypersimplex family to the covering
/// machinery.
pub fn slack_matrix_of_polytope(p: &Polytope, id: &str) -> Result<crate::hypersimplex::SlackMatrix> {
    let matrix = ExactMatrix::from_fn(p.facet_count(), p.vertex_count(), |i, j| {
        p.inequalities()[i].eval(&p.vertices()[j])
    })?;
    let s = crate::hypersimplex::SlackMatrix {
        id: id.to_string(),
        row_labels: (0..p.facet_count()).map(|i| format!("f{}", i + 1)).collect(),
        col_labels: (0..p.vertex_count()).map(|j| format!("v{}", j + 1)).collect(),
        matrix,
    };
    s.validate()?;
    Ok(s)
}
