//! Incremental double description over exact scalars.
//!
//! The single primitive is extreme-ray enumeration for a pointed cone
//! `{y : A y >= 0}`. Both conversion directions (points to facets, facets
//! to vertices) reduce to it by homogenization.

use crate::error::{Error, Result};
use crate::num::{ExactMatrix, ExactScalar};

fn dot(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Scale a ray so its first nonzero coordinate has absolute value 1.
fn normalize_ray(ray: &mut [ExactScalar]) {
    if let Some(p) = ray.iter().position(|x| !x.is_zero()) {
        let scale = ray[p].abs().inverse();
        for x in ray.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &scale;
            }
        }
    }
}

/// Extreme rays of the pointed cone `{y in R^dim : a_i . y >= 0 for all i}`.
///
/// Requires the constraint matrix to have full column rank (otherwise the
/// cone has a lineality space and no extreme rays); callers translate this
/// into their own degeneracy errors.
pub fn extreme_rays(constraints: &[Vec<ExactScalar>], dim: usize) -> Result<Vec<Vec<ExactScalar>>> {
    let rows: Vec<Vec<ExactScalar>> = constraints
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let full = ExactMatrix::from_rows(&rows)?;
    if full.rank() < dim {
        return Err(Error::DegenerateInput {
            affine_dim: full.rank(),
            ambient: dim,
        });
    }

    // Greedily pick `dim` rows of full rank for the simplicial start cone.
    let mut chosen: Vec<usize> = Vec::with_capacity(dim);
    for i in 0..rows.len() {
        if chosen.len() == dim {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(i);
        let cols: Vec<usize> = (0..dim).collect();
        if full.submatrix(&trial, &cols).rank() == trial.len() {
            chosen.push(i);
        }
    }
    debug_assert_eq!(chosen.len(), dim);
    let cols: Vec<usize> = (0..dim).collect();
    let base = full.submatrix(&chosen, &cols);
    let inv = base.inverse()?;
    // Columns of base^{-1} satisfy a_i . r_j = delta_ij.
    let mut rays: Vec<Vec<ExactScalar>> = (0..dim)
        .map(|j| {
            let mut r: Vec<ExactScalar> = (0..dim).map(|i| inv.get(i, j).clone()).collect();
            normalize_ray(&mut r);
            r
        })
        .collect();

    let mut done: Vec<usize> = chosen.clone();
    for idx in 0..rows.len() {
        if chosen.contains(&idx) {
            continue;
        }
        let h = &rows[idx];
        let vals: Vec<ExactScalar> = rays.iter().map(|r| dot(h, r)).collect();
        let has_neg = vals.iter().any(|v| v.is_negative());
        if !has_neg {
            done.push(idx);
            continue;
        }
        let mut next: Vec<Vec<ExactScalar>> = Vec::new();
        let mut kept_pos: Vec<usize> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if !v.is_negative() {
                next.push(r.clone());
            }
            if v.is_positive() {
                kept_pos.push(next.len() - 1);
            }
        }
        for (pi, (p, vp)) in rays.iter().zip(&vals).enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (ni, (q, vq)) in rays.iter().zip(&vals).enumerate() {
                if !vq.is_negative() {
                    continue;
                }
                if !adjacent(&rows, &done, p, q, dim, pi, ni) {
                    continue;
                }
                let mut newray: Vec<ExactScalar> = (0..dim)
                    .map(|t| &(vp * &q[t]) - &(vq * &p[t]))
                    .collect();
                normalize_ray(&mut newray);
                next.push(newray);
            }
        }
        rays = next;
        done.push(idx);
    }
    Ok(rays)
}

/// Algebraic adjacency: two rays are adjacent iff the constraints tight at
/// both span a subspace of rank dim - 2.
fn adjacent(
    rows: &[Vec<ExactScalar>],
    done: &[usize],
    p: &[ExactScalar],
    q: &[ExactScalar],
    dim: usize,
    _pi: usize,
    _ni: usize,
) -> bool {
    let tight: Vec<Vec<ExactScalar>> = done
        .iter()
        .filter(|&&t| dot(&rows[t], p).is_zero() && dot(&rows[t], q).is_zero())
        .map(|&t| rows[t].clone())
        .collect();
    if tight.len() < dim.saturating_sub(2) {
        return false;
    }
    ExactMatrix::from_rows(&tight)
        .map(|m| m.rank() == dim - 2)
        .unwrap_or(dim == 2)
}
