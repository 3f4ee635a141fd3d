//! JSON layouts for towers, elements, forms, matrices and curves.
//!
//! Tower elements serialize as nested arrays ordered by the power basis,
//! with exact rationals as numerator/denominator strings at the leaves:
//!
//! ```text
//! element  = rational | [element, ...]      (length = step degree)
//! rational = {"num": "-1", "den": "12"}
//! ```
//!
//! Documents embed the tower spec (generator labels plus minimal
//! polynomials) so they are self-describing; every document carries the
//! format version.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::curves::{HugginsParams, PlaneCurve, Provenance};
use crate::error::{Error, Result};
use crate::ternary::{Matrix3, TernaryForm};
use crate::tower::{Nested, TowerElement, TowerSpec};
use crate::FORMAT_VERSION;

fn rational_to_value(q: &BigRational) -> Value {
    json!({"num": q.numer().to_string(), "den": q.denom().to_string()})
}

fn rational_from_value(v: &Value) -> Result<BigRational> {
    let bad = || Error::Serialization("expected {num, den} rational".into());
    let obj = v.as_object().ok_or_else(bad)?;
    let num: BigInt = obj
        .get("num")
        .and_then(Value::as_str)
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    let den: BigInt = obj
        .get("den")
        .and_then(Value::as_str)
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn nested_to_value(rep: &Nested) -> Value {
    match rep {
        Nested::Base(q) => rational_to_value(q),
        Nested::Ext(coords) => Value::Array(coords.iter().map(nested_to_value).collect()),
    }
}

fn nested_from_value(spec: &TowerSpec, v: &Value, level: usize) -> Result<Nested> {
    match v {
        Value::Array(items) => {
            if level == 0 {
                return Err(Error::Serialization("nesting deeper than the tower".into()));
            }
            let expected = spec.steps()[level - 1].degree();
            if items.len() != expected {
                return Err(Error::Serialization(format!(
                    "coordinate vector of length {} where step degree is {expected}",
                    items.len()
                )));
            }
            let coords = items
                .iter()
                .map(|item| nested_from_value(spec, item, level - 1))
                .collect::<Result<Vec<_>>>()?;
            Ok(Nested::Ext(coords))
        }
        other => {
            let q = rational_from_value(other)?;
            // allow rationals at any level: lift as a constant
            Ok(lift_constant(spec, q, level))
        }
    }
}

fn lift_constant(spec: &TowerSpec, q: BigRational, level: usize) -> Nested {
    if level == 0 {
        Nested::Base(q)
    } else {
        let d = spec.steps()[level - 1].degree();
        let mut coords = Vec::with_capacity(d);
        coords.push(lift_constant(spec, q, level - 1));
        for _ in 1..d {
            coords.push(lift_constant(spec, BigRational::from_integer(BigInt::from(0)), level - 1));
        }
        Nested::Ext(coords)
    }
}

/// Bare coordinate serialization of an element (no tower attached).
pub fn element_to_value(e: &TowerElement) -> Value {
    nested_to_value(e.rep())
}

pub fn element_from_value(spec: &Arc<TowerSpec>, v: &Value) -> Result<TowerElement> {
    let rep = nested_from_value(spec, v, spec.num_steps())?;
    Ok(TowerElement::from_rep(Arc::clone(spec), rep))
}

/// The tower spec: ordered steps with labels and minimal polynomials
/// (coefficients ascending, leading 1 included, each an element of the
/// tower below).
pub fn spec_to_value(spec: &TowerSpec) -> Value {
    let steps: Vec<Value> = spec
        .steps()
        .iter()
        .map(|s| {
            json!({
                "label": s.label(),
                "min_poly": s
                    .min_poly_internal()
                    .iter()
                    .map(nested_to_value)
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"base": "Q", "steps": steps})
}

pub fn spec_from_value(v: &Value) -> Result<Arc<TowerSpec>> {
    let bad = |m: &str| Error::Serialization(m.to_string());
    let obj = v.as_object().ok_or_else(|| bad("tower must be an object"))?;
    let steps = obj
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("tower.steps missing"))?;
    let mut builder = TowerSpec::builder();
    for step in steps {
        let label = step
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("step.label missing"))?;
        let coeff_values = step
            .get("min_poly")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("step.min_poly missing"))?;
        // Only rational coefficients are accepted on input; every tower this
        // library produces satisfies that.
        let mut coeffs = Vec::with_capacity(coeff_values.len());
        for cv in coeff_values {
            let q = match cv {
                Value::Object(_) => rational_from_value(cv)?,
                Value::Array(_) => {
                    constant_of_nested(cv).ok_or_else(|| {
                        bad("non-rational minimal polynomial coefficients are not supported")
                    })?
                }
                _ => return Err(bad("malformed minimal polynomial coefficient")),
            };
            coeffs.push(q);
        }
        builder = builder.step_rational(label, &coeffs)?;
    }
    Ok(builder.build())
}

fn constant_of_nested(v: &Value) -> Option<BigRational> {
    match v {
        Value::Object(_) => rational_from_value(v).ok(),
        Value::Array(items) => {
            let first = constant_of_nested(items.first()?)?;
            for item in &items[1..] {
                let q = constant_of_nested(item)?;
                if q != BigRational::from_integer(BigInt::from(0)) {
                    return None;
                }
            }
            Some(first)
        }
        _ => None,
    }
}

/// Form document: version, embedded tower, degree, and the sparse term
/// list in deterministic exponent order.
pub fn form_to_value(form: &TernaryForm) -> Value {
    let terms: Vec<Value> = form
        .terms()
        .map(|(exp, coef)| {
            json!({
                "exp": [exp.0, exp.1, exp.2],
                "coef": nested_to_value(coef.rep()),
            })
        })
        .collect();
    json!({
        "version": FORMAT_VERSION,
        "tower": spec_to_value(form.spec()),
        "degree": form.degree(),
        "terms": terms,
    })
}

pub fn form_from_value(v: &Value) -> Result<TernaryForm> {
    let bad = |m: &str| Error::Serialization(m.to_string());
    let spec = spec_from_value(v.get("tower").ok_or_else(|| bad("tower missing"))?)?;
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("degree missing"))? as u32;
    let terms_v = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("terms missing"))?;
    let mut terms = Vec::with_capacity(terms_v.len());
    for t in terms_v {
        let exp = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term.exp missing"))?;
        if exp.len() != 3 {
            return Err(bad("term.exp must have three entries"));
        }
        let e: Vec<u32> = exp
            .iter()
            .map(|x| x.as_u64().map(|v| v as u32))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("term.exp entries must be integers"))?;
        let coef = element_from_value(&spec, t.get("coef").ok_or_else(|| bad("term.coef missing"))?)?;
        terms.push(((e[0], e[1], e[2]), coef));
    }
    TernaryForm::new(&spec, degree, terms)
}

/// Matrix document: 3x3 nested arrays of elements plus the embedded tower.
pub fn matrix_to_value(m: &Matrix3) -> Value {
    let rows: Vec<Value> = (0..3)
        .map(|i| {
            Value::Array(
                (0..3)
                    .map(|j| nested_to_value(m.entry(i, j).rep()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "version": FORMAT_VERSION,
        "tower": spec_to_value(m.spec()),
        "entries": rows,
    })
}

pub fn matrix_from_value(v: &Value) -> Result<Matrix3> {
    let bad = |m: &str| Error::Serialization(m.to_string());
    let spec = spec_from_value(v.get("tower").ok_or_else(|| bad("tower missing"))?)?;
    let rows_v = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("entries missing"))?;
    if rows_v.len() != 3 {
        return Err(bad("matrix needs three rows"));
    }
    let mut rows: Vec<[TowerElement; 3]> = Vec::with_capacity(3);
    for row_v in rows_v {
        let cells = row_v.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        if cells.len() != 3 {
            return Err(bad("matrix row needs three entries"));
        }
        let mut row = Vec::with_capacity(3);
        for c in cells {
            row.push(element_from_value(&spec, c)?);
        }
        rows.push([row[0].clone(), row[1].clone(), row[2].clone()]);
    }
    Matrix3::new(&spec, [rows[0].clone(), rows[1].clone(), rows[2].clone()])
}

fn params_to_value(params: Option<&HugginsParams>) -> Value {
    match params {
        None => Value::Null,
        Some(p) => json!({
            "u": crate::arith::format_rational(p.u()),
            "v": crate::arith::format_rational(p.v()),
            "p": p.p(),
        }),
    }
}

/// Curve document: the form document plus a metadata block.
pub fn curve_to_value(curve: &PlaneCurve) -> Value {
    let mut doc = form_to_value(curve.form());
    let meta = json!({
        "degree": curve.degree(),
        "genus": curve.genus(),
        "provenance": curve.provenance().as_str(),
        "params": params_to_value(curve.params()),
    });
    doc.as_object_mut()
        .expect("form document is an object")
        .insert("metadata".to_string(), meta);
    doc
}

pub fn curve_from_value(v: &Value) -> Result<PlaneCurve> {
    let form = form_from_value(v)?;
    // metadata is advisory on input; provenance defaults to custom
    let _ = v.get("metadata").and_then(Value::as_object).map(Map::len);
    let _ = Provenance::Custom;
    PlaneCurve::custom(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::huggins_form;
    use num_traits::FromPrimitive;

    fn qi(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn element_round_trip() {
        let spec = crate::tower::spec_l(&qi(2), &qi(13)).unwrap();
        let z = spec.generator("zeta3").unwrap();
        let su = spec.generator("sqrt_u").unwrap();
        let e = z.mul(&su).add(&spec.rational(BigRational::new(
            BigInt::from(-1),
            BigInt::from(12),
        )));
        let v = element_to_value(&e);
        let back = element_from_value(&spec, &v).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn curve_document_round_trip() {
        let curve = huggins_form(&qi(2), &qi(13)).unwrap();
        let doc = curve_to_value(&curve);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        let back = curve_from_value(&parsed).unwrap();
        assert_eq!(back.form(), curve.form());
        assert_eq!(back.degree(), 6);
        // metadata block is present
        assert_eq!(
            doc.get("metadata").and_then(|m| m.get("genus")).and_then(Value::as_u64),
            Some(10)
        );
    }

    #[test]
    fn matrix_round_trip() {
        let spec = crate::tower::spec_q_zeta3();
        let gens = crate::hessian::hessian_generators(&spec).unwrap();
        let v = matrix_to_value(&gens.scaling);
        let back = matrix_from_value(&v).unwrap();
        assert_eq!(back, gens.scaling);
    }

    #[test]
    fn deterministic_bytes() {
        let curve = huggins_form(&qi(2), &qi(13)).unwrap();
        let a = serde_json::to_vec(&curve_to_value(&curve)).unwrap();
        let b = serde_json::to_vec(&curve_to_value(&curve)).unwrap();
        assert_eq!(a, b);
    }
}
