//! JSON serialization of the certificate-bearing objects: exact matrices,
//! polytopes, slack matrices, coverings and ratio matrices.
//!
//! Scalars are encoded as `[a_num, a_den, b_num, b_den]` meaning
//! `a + b sqrt(d)` with the radicand `d` stored once per matrix or
//! polytope. Integers are JSON numbers when they fit in 64 bits and
//! decimal strings otherwise; both forms are accepted on input.

use crate::covering::{Covering, Rectangle};
use crate::error::{Error, Result};
use crate::hypersimplex::SlackMatrix;
use crate::num::{ExactMatrix, ExactScalar};
use crate::polytope::{Inequality, Polytope};
use crate::realization::RatioMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

fn bigint_to_value(x: &BigInt) -> Value {
    match i64::try_from(x.clone()) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn value_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::VerificationFailed(format!("non-integer number {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|e| Error::VerificationFailed(format!("bad integer string {s:?}: {e}"))),
        other => Err(Error::VerificationFailed(format!(
            "expected integer, got {other}"
        ))),
    }
}

fn scalar_to_value(x: &ExactScalar) -> Value {
    Value::Array(vec![
        bigint_to_value(x.rational_part().numer()),
        bigint_to_value(x.rational_part().denom()),
        bigint_to_value(x.sqrt_part().numer()),
        bigint_to_value(x.sqrt_part().denom()),
    ])
}

fn value_to_scalar(v: &Value, radicand: u64) -> Result<ExactScalar> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::VerificationFailed(format!("scalar is not an array: {v}")))?;
    if arr.len() != 4 {
        return Err(Error::VerificationFailed(format!(
            "scalar array has {} entries, expected 4",
            arr.len()
        )));
    }
    let nums: Vec<BigInt> = arr.iter().map(value_to_bigint).collect::<Result<_>>()?;
    if nums[1].sign() == num_bigint::Sign::NoSign || nums[3].sign() == num_bigint::Sign::NoSign {
        return Err(Error::VerificationFailed("zero denominator".into()));
    }
    Ok(ExactScalar::new(
        BigRational::new(nums[0].clone(), nums[1].clone()),
        BigRational::new(nums[2].clone(), nums[3].clone()),
        radicand,
    ))
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_value(m.get(i, j))).collect()))
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "radicand": m.radicand(),
        "entries": entries,
    })
}

pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix> {
    let rows = v["rows"]
        .as_u64()
        .ok_or_else(|| Error::VerificationFailed("missing rows".into()))? as usize;
    let cols = v["cols"]
        .as_u64()
        .ok_or_else(|| Error::VerificationFailed("missing cols".into()))? as usize;
    let radicand = v["radicand"]
        .as_u64()
        .ok_or_else(|| Error::VerificationFailed("missing radicand".into()))?;
    let entries = v["entries"]
        .as_array()
        .ok_or_else(|| Error::VerificationFailed("missing entries".into()))?;
    if entries.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            got: entries.len(),
        });
    }
    let mut scalars = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::VerificationFailed("row is not an array".into()))?;
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: row.len(),
            });
        }
        for e in row {
            scalars.push(value_to_scalar(e, radicand)?);
        }
    }
    ExactMatrix::new(rows, cols, scalars)
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    let radicand = p
        .vertices()
        .iter()
        .flatten()
        .chain(p.inequalities().iter().flat_map(|i| i.coeffs.iter()))
        .map(|s| s.radicand())
        .find(|&d| d != 0)
        .unwrap_or(0);
    json!({
        "dim": p.dim(),
        "radicand": radicand,
        "vertices": p
            .vertices()
            .iter()
            .map(|v| Value::Array(v.iter().map(scalar_to_value).collect()))
            .collect::<Vec<_>>(),
        "inequalities": p
            .inequalities()
            .iter()
            .map(|i| json!({
                "offset": scalar_to_value(&i.offset),
                "coeffs": i.coeffs.iter().map(scalar_to_value).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let dim = v["dim"]
        .as_u64()
        .ok_or_else(|| Error::VerificationFailed("missing dim".into()))? as usize;
    let radicand = v["radicand"]
        .as_u64()
        .ok_or_else(|| Error::VerificationFailed("missing radicand".into()))?;
    let verts = v["vertices"]
        .as_array()
        .ok_or_else(|| Error::VerificationFailed("missing vertices".into()))?;
    let vertices: Vec<Vec<ExactScalar>> = verts
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::VerificationFailed("vertex is not an array".into()))?
                .iter()
                .map(|e| value_to_scalar(e, radicand))
                .collect()
        })
        .collect::<Result<_>>()?;
    let ineqs = v["inequalities"]
        .as_array()
        .ok_or_else(|| Error::VerificationFailed("missing inequalities".into()))?;
    let inequalities: Vec<Inequality> = ineqs
        .iter()
        .map(|iv| {
            let offset = value_to_scalar(&iv["offset"], radicand)?;
            let coeffs: Vec<ExactScalar> = iv["coeffs"]
                .as_array()
                .ok_or_else(|| Error::VerificationFailed("coeffs is not an array".into()))?
                .iter()
                .map(|e| value_to_scalar(e, radicand))
                .collect::<Result<_>>()?;
            Ok(Inequality { offset, coeffs })
        })
        .collect::<Result<_>>()?;
    let p = Polytope::from_both(dim, vertices, inequalities)?;
    p.verify()?;
    Ok(p)
}

pub fn slack_to_json(s: &SlackMatrix) -> Value {
    json!({
        "id": s.id,
        "row_labels": s.row_labels,
        "col_labels": s.col_labels,
        "matrix": matrix_to_json(&s.matrix),
    })
}

pub fn slack_from_json(v: &Value) -> Result<SlackMatrix> {
    let id = v["id"]
        .as_str()
        .ok_or_else(|| Error::VerificationFailed("missing id".into()))?
        .to_string();
    let row_labels: Vec<String> = serde_json::from_value(v["row_labels"].clone())?;
    let col_labels: Vec<String> = serde_json::from_value(v["col_labels"].clone())?;
    let matrix = matrix_from_json(&v["matrix"])?;
    if row_labels.len() != matrix.rows() || col_labels.len() != matrix.cols() {
        return Err(Error::DimensionMismatch {
            expected: matrix.rows(),
            got: row_labels.len(),
        });
    }
    let s = SlackMatrix {
        id,
        row_labels,
        col_labels,
        matrix,
    };
    s.validate()?;
    Ok(s)
}

pub fn covering_to_json(c: &Covering) -> Value {
    json!({
        "matrix": c.matrix_ref,
        "rectangles": c
            .rectangles
            .iter()
            .map(|r| json!({"rows": r.row_set, "cols": r.col_set}))
            .collect::<Vec<_>>(),
    })
}

pub fn covering_from_json(v: &Value) -> Result<Covering> {
    let matrix_ref = v["matrix"]
        .as_str()
        .ok_or_else(|| Error::VerificationFailed("missing matrix reference".into()))?;
    let rect_values = v["rectangles"]
        .as_array()
        .ok_or_else(|| Error::VerificationFailed("missing rectangles".into()))?;
    let mut rectangles = Vec::with_capacity(rect_values.len());
    for rv in rect_values {
        let rows: Vec<usize> = serde_json::from_value(rv["rows"].clone())?;
        let cols: Vec<usize> = serde_json::from_value(rv["cols"].clone())?;
        rectangles.push(Rectangle::new(rows, cols));
    }
    Ok(Covering::new(matrix_ref, rectangles))
}

pub fn ratio_matrix_to_json(r: &RatioMatrix) -> Value {
    json!({ "ratios": matrix_to_json(&r.matrix) })
}

pub fn ratio_matrix_from_json(v: &Value) -> Result<RatioMatrix> {
    RatioMatrix::new(matrix_from_json(&v["ratios"])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersimplex::{slack_matrix_standard, standard_polytope, HypersimplexSpec};
    use crate::realization::singular_62_ratio_matrix;

    #[test]
    fn matrix_roundtrip_with_radicand() {
        let r = singular_62_ratio_matrix();
        let v = matrix_to_json(&r.matrix);
        let back = matrix_from_json(&v).unwrap();
        assert_eq!(back, r.matrix);
        assert_eq!(back.radicand(), 6);
    }

    #[test]
    fn big_integers_become_strings_and_parse_back() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let huge: BigInt = BigInt::from(1) << 100;
        let m = ExactMatrix::new(
            1,
            1,
            vec![ExactScalar::rational(BigRational::from_integer(huge.clone()))],
        )
        .unwrap();
        let v = matrix_to_json(&m);
        assert!(v["entries"][0][0][0].is_string());
        let back = matrix_from_json(&v).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn polytope_roundtrip() {
        let (p, _) = standard_polytope(HypersimplexSpec::new(4, 2).unwrap()).unwrap();
        let v = polytope_to_json(&p);
        let back = polytope_from_json(&v).unwrap();
        assert_eq!(back.vertex_count(), p.vertex_count());
        assert_eq!(back.facet_count(), p.facet_count());
    }

    #[test]
    fn corrupted_polytope_is_rejected() {
        let (p, _) = standard_polytope(HypersimplexSpec::new(4, 2).unwrap()).unwrap();
        let mut v = polytope_to_json(&p);
        v["vertices"][0][0] = json!([5, 1, 0, 1]);
        assert!(polytope_from_json(&v).is_err());
    }

    #[test]
    fn slack_and_covering_roundtrip() {
        let s = slack_matrix_standard(HypersimplexSpec::new(4, 2).unwrap());
        let sv = slack_to_json(&s);
        let s2 = slack_from_json(&sv).unwrap();
        assert_eq!(s2.id, s.id);
        assert_eq!(s2.matrix, s.matrix);

        let c = crate::covering::greedy_cover(&s);
        let cv = covering_to_json(&c);
        let c2 = covering_from_json(&cv).unwrap();
        assert_eq!(c2.rectangles, c.rectangles);
        assert_eq!(
            crate::covering::verify_cover(&s, &c2).unwrap(),
            crate::covering::CoverCheck::Valid
        );
    }

    #[test]
    fn ratio_matrix_roundtrip_rejects_tampering() {
        let r = singular_62_ratio_matrix();
        let v = ratio_matrix_to_json(&r);
        assert_eq!(ratio_matrix_from_json(&v).unwrap().matrix, r.matrix);
        let mut bad = v.clone();
        bad["ratios"]["entries"][0][1] = json!([7, 1, 0, 1]);
        assert!(ratio_matrix_from_json(&bad).is_err());
    }
}
