//! Small exact polyhedral computations: dual representation conversion,
//! projection and face incidence. Sized for desk-scale instances.

mod dd;

pub use dd::extreme_rays;

use crate::error::{Error, Result};
use crate::num::{ExactMatrix, ExactScalar};

/// Hard ambient-dimension cap; double description blowup beyond desk scale
/// is out of contract.
pub const DIMENSION_CAP: usize = 9;

/// Affine form `offset + coeffs . x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub offset: ExactScalar,
    pub coeffs: Vec<ExactScalar>,
}

impl Inequality {
    pub fn eval(&self, point: &[ExactScalar]) -> ExactScalar {
        let mut acc = self.offset.clone();
        for (c, x) in self.coeffs.iter().zip(point) {
            if !c.is_zero() && !x.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    pub fn homogenized(&self) -> Vec<ExactScalar> {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(self.offset.clone());
        v.extend(self.coeffs.iter().cloned());
        v
    }
}

/// A bounded polytope with both exact representations populated and
/// irredundant: every listed point is a vertex, every listed inequality a
/// facet. The cone flag marks homogenizations, where the offset coordinate
/// is absent and "vertices" are extreme rays.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<ExactScalar>>,
    inequalities: Vec<Inequality>,
    cone: bool,
}

/// `x -> matrix . x + offset`.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub matrix: ExactMatrix,
    pub offset: Vec<ExactScalar>,
}

impl AffineMap {
    pub fn new(matrix: ExactMatrix, offset: Vec<ExactScalar>) -> Result<Self> {
        if matrix.rows() != offset.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                got: offset.len(),
            });
        }
        Ok(AffineMap { matrix, offset })
    }

    /// Projection onto the first `out` coordinates of an `inp`-dimensional space.
    pub fn coordinate_projection(inp: usize, out: usize) -> Self {
        let matrix = ExactMatrix::from_fn(out, inp, |i, j| {
            if i == j {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        })
        .expect("integer entries");
        AffineMap {
            matrix,
            offset: vec![ExactScalar::zero(); out],
        }
    }

    pub fn apply(&self, point: &[ExactScalar]) -> Vec<ExactScalar> {
        (0..self.matrix.rows())
            .map(|i| {
                let mut acc = self.offset[i].clone();
                for j in 0..self.matrix.cols() {
                    let c = self.matrix.get(i, j);
                    if !c.is_zero() && !point[j].is_zero() {
                        acc += c * &point[j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Convex hull of exact points: both representations, irredundant.
pub fn hull(points: &[Vec<ExactScalar>]) -> Result<Polytope> {
    let dim = points.first().map_or(0, |p| p.len());
    if dim > DIMENSION_CAP {
        return Err(Error::DimensionCap(dim, DIMENSION_CAP));
    }
    let mut distinct: Vec<Vec<ExactScalar>> = Vec::new();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    if distinct.len() < dim + 1 {
        return Err(Error::DegenerateInput {
            affine_dim: distinct.len().saturating_sub(1),
            ambient: dim,
        });
    }
    // Homogenized points are the constraints of the polar cone; its extreme
    // rays are the facet normals (offset first).
    let homog: Vec<Vec<ExactScalar>> = distinct
        .iter()
        .map(|p| {
            let mut v = Vec::with_capacity(dim + 1);
            v.push(ExactScalar::one());
            v.extend(p.iter().cloned());
            v
        })
        .collect();
    let rank = ExactMatrix::from_rows(&homog)?.rank();
    if rank < dim + 1 {
        return Err(Error::DegenerateInput {
            affine_dim: rank - 1,
            ambient: dim,
        });
    }
    let facet_rays = extreme_rays(&homog, dim + 1)?;
    let inequalities: Vec<Inequality> = facet_rays
        .into_iter()
        .map(|r| Inequality {
            offset: r[0].clone(),
            coeffs: r[1..].to_vec(),
        })
        .collect();
    let vertices = irredundant_vertices(&distinct, &inequalities, dim);
    Ok(Polytope {
        dim,
        vertices,
        inequalities,
        cone: false,
    })
}

fn irredundant_vertices(
    points: &[Vec<ExactScalar>],
    inequalities: &[Inequality],
    dim: usize,
) -> Vec<Vec<ExactScalar>> {
    points
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<ExactScalar>> = inequalities
                .iter()
                .filter(|ineq| ineq.eval(p).is_zero())
                .map(|ineq| ineq.homogenized())
                .collect();
            tight.len() >= dim
                && ExactMatrix::from_rows(&tight).map(|m| m.rank()).unwrap_or(0) == dim
        })
        .cloned()
        .collect()
}

/// Vertex enumeration from an inequality description of a bounded polytope.
pub fn from_inequalities(dim: usize, inequalities: &[Inequality]) -> Result<Polytope> {
    if dim > DIMENSION_CAP {
        return Err(Error::DimensionCap(dim, DIMENSION_CAP));
    }
    let homog: Vec<Vec<ExactScalar>> = inequalities.iter().map(|i| i.homogenized()).collect();
    let rays = extreme_rays(&homog, dim + 1)?;
    let mut vertices = Vec::new();
    for r in rays {
        if !r[0].is_positive() {
            // offset coordinate 0 is a recession direction; negative offsets
            // also only occur when the polyhedron is unbounded
            let desc: Vec<String> = r[1..].iter().map(|x| x.to_string()).collect();
            return Err(Error::Unbounded(format!("[{}]", desc.join(", "))));
        }
        let inv = r[0].inverse();
        vertices.push(r[1..].iter().map(|x| x * &inv).collect::<Vec<_>>());
    }
    // Keep only facet-defining inequalities: tight vertex sets of full rank.
    let facets: Vec<Inequality> = inequalities
        .iter()
        .filter(|ineq| {
            let tight: Vec<Vec<ExactScalar>> = vertices
                .iter()
                .filter(|v| ineq.eval(v).is_zero())
                .map(|v| {
                    let mut h = Vec::with_capacity(dim + 1);
                    h.push(ExactScalar::one());
                    h.extend(v.iter().cloned());
                    h
                })
                .collect();
            tight.len() >= dim
                && ExactMatrix::from_rows(&tight).map(|m| m.rank()).unwrap_or(0) == dim
        })
        .cloned()
        .collect();
    Ok(Polytope {
        dim,
        vertices,
        inequalities: facets,
        cone: false,
    })
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_cone(&self) -> bool {
        self.cone
    }

    pub fn vertices(&self) -> &[Vec<ExactScalar>] {
        &self.vertices
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_count(&self) -> usize {
        self.inequalities.len()
    }

    /// The homogenization `cone({1} x P)`, kept as a flagged polytope whose
    /// "vertices" are extreme rays with the offset coordinate prepended.
    pub fn homogenize(&self) -> Polytope {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let mut r = Vec::with_capacity(self.dim + 1);
                r.push(ExactScalar::one());
                r.extend(v.iter().cloned());
                r
            })
            .collect();
        let inequalities = self
            .inequalities
            .iter()
            .map(|i| Inequality {
                offset: ExactScalar::zero(),
                coeffs: i.homogenized(),
            })
            .collect();
        Polytope {
            dim: self.dim + 1,
            vertices,
            inequalities,
            cone: true,
        }
    }

    /// Construct from both representations, validating the cross invariants.
    pub fn from_both(
        dim: usize,
        vertices: Vec<Vec<ExactScalar>>,
        inequalities: Vec<Inequality>,
    ) -> Result<Polytope> {
        let p = Polytope {
            dim,
            vertices,
            inequalities,
            cone: false,
        };
        p.verify()?;
        Ok(p)
    }

    /// Cross-check the representation invariants: every vertex satisfies
    /// every inequality, each inequality is tight on an affinely spanning
    /// vertex set, and each vertex is cut out by its tight set.
    pub fn verify(&self) -> Result<()> {
        for (j, v) in self.vertices.iter().enumerate() {
            for (i, ineq) in self.inequalities.iter().enumerate() {
                if ineq.eval(v).is_negative() {
                    return Err(Error::VerificationFailed(format!(
                        "vertex {j} violates inequality {i}"
                    )));
                }
            }
        }
        for (i, ineq) in self.inequalities.iter().enumerate() {
            let tight: Vec<Vec<ExactScalar>> = self
                .vertices
                .iter()
                .filter(|v| ineq.eval(v).is_zero())
                .map(|v| homog_point(v))
                .collect();
            let rk = if tight.is_empty() {
                0
            } else {
                ExactMatrix::from_rows(&tight)?.rank()
            };
            if rk != self.dim {
                return Err(Error::VerificationFailed(format!(
                    "inequality {i} is tight on a rank-{rk} vertex set, expected {}",
                    self.dim
                )));
            }
        }
        for (j, v) in self.vertices.iter().enumerate() {
            let tight: Vec<Vec<ExactScalar>> = self
                .inequalities
                .iter()
                .filter(|ineq| ineq.eval(v).is_zero())
                .map(|ineq| ineq.homogenized())
                .collect();
            let rk = if tight.is_empty() {
                0
            } else {
                ExactMatrix::from_rows(&tight)?.rank()
            };
            if rk != self.dim {
                return Err(Error::VerificationFailed(format!(
                    "point {j} is not a vertex (tight rank {rk})"
                )));
            }
        }
        Ok(())
    }

    /// Entry (i, j) is true iff inequality i is tight at vertex j.
    pub fn vertex_facet_incidence(&self) -> Vec<Vec<bool>> {
        self.inequalities
            .iter()
            .map(|ineq| self.vertices.iter().map(|v| ineq.eval(v).is_zero()).collect())
            .collect()
    }

    /// Image under an affine map, re-irredundantized.
    pub fn project(&self, map: &AffineMap) -> Result<Polytope> {
        if self.vertices.is_empty() {
            return Err(Error::MissingRepresentation("vertex"));
        }
        let images: Vec<Vec<ExactScalar>> =
            self.vertices.iter().map(|v| map.apply(v)).collect();
        hull(&images)
    }
}

fn homog_point(v: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut h = Vec::with_capacity(v.len() + 1);
    h.push(ExactScalar::one());
    h.extend(v.iter().cloned());
    h
}
