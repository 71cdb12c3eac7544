// SPDX-License-Identifier: Apache-2.0

//! Reading field elements, forms and oriented ideals from JSON.
//!
//! Output uses the `Serialize` impls of the library types; input accepts
//! the same shapes, and additionally field elements written as text
//! (`"1/2+3w"`) or plain integers.

use serde::Deserialize;
use serde_json::Value;

use crate::base_field::{Field, KElement, SignVector};
use crate::error::{Error, Result};
use crate::extension::{Extension, LElement};
use crate::forms::QuadraticForm;
use crate::ideals::{IdealBasis, OrientedIdeal};
use crate::rational::parse_rational;

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KRepr {
    Coords {
        c0: Scalar,
        #[serde(default)]
        c1: Option<Scalar>,
    },
    Scalar(Scalar),
}

#[derive(Deserialize)]
struct LRepr {
    x: KRepr,
    y: KRepr,
}

#[derive(Deserialize)]
struct FormRepr {
    a: KRepr,
    b: KRepr,
    c: KRepr,
}

#[derive(Deserialize)]
struct IdealRepr {
    alpha: LRepr,
    beta: LRepr,
    #[serde(default)]
    eps: Option<Vec<i64>>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn k_from(f: Field, r: KRepr) -> Result<KElement> {
    match r {
        KRepr::Scalar(s) => KElement::parse(f, &s.text()),
        KRepr::Coords { c0, c1 } => {
            let c0 = parse_rational(&c0.text())?;
            let c1 = match c1 {
                Some(c) => parse_rational(&c.text())?,
                None => num_traits::Zero::zero(),
            };
            if f.is_rational() && !num_traits::Zero::is_zero(&c1) {
                return Err(Error::Parse("nonzero c1 over Q".into()));
            }
            Ok(KElement::new(f, c0, c1))
        }
    }
}

fn l_from(f: Field, r: LRepr) -> Result<LElement> {
    Ok(LElement::new(k_from(f, r.x)?, k_from(f, r.y)?))
}

pub fn k_element_from_json(f: Field, v: &Value) -> Result<KElement> {
    k_from(f, KRepr::deserialize(v).map_err(parse_err)?)
}

pub fn l_element_from_json(f: Field, v: &Value) -> Result<LElement> {
    l_from(f, LRepr::deserialize(v).map_err(parse_err)?)
}

pub fn form_from_json(f: Field, v: &Value) -> Result<QuadraticForm> {
    let r = FormRepr::deserialize(v).map_err(parse_err)?;
    Ok(QuadraticForm::new(k_from(f, r.a)?, k_from(f, r.b)?, k_from(f, r.c)?))
}

/// `{"alpha", "beta", "eps"}`; without `eps` the ideal is oriented by its
/// own basis.
pub fn ideal_from_json(ext: &Extension, v: &Value) -> Result<OrientedIdeal> {
    let f = ext.base();
    let r = IdealRepr::deserialize(v).map_err(parse_err)?;
    let basis = IdealBasis::new(l_from(f, r.alpha)?, l_from(f, r.beta)?);
    match r.eps {
        None => OrientedIdeal::from_basis(ext, basis),
        Some(e) => {
            let signs = e
                .into_iter()
                .map(|s| match s {
                    1 => Ok(1i8),
                    -1 => Ok(-1i8),
                    _ => Err(Error::Parse(format!("sign entry {s} is not ±1"))),
                })
                .collect::<Result<Vec<i8>>>()?;
            OrientedIdeal::new(ext, basis, SignVector::new(signs))
        }
    }
}

/// A form given either as JSON or as the text `a,b,c`.
pub fn parse_form(f: Field, s: &str) -> Result<QuadraticForm> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(parse_err)?;
        form_from_json(f, &v)
    } else {
        QuadraticForm::parse(f, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::make_extension;
    use crate::rational::frac;
    use serde_json::json;

    #[test]
    fn element_shapes() {
        let f = Field::QSqrt5;
        let want = KElement::new(f, frac(1, 2), frac(3, 1));
        for v in [
            json!({"c0": "1/2", "c1": "3/1"}),
            json!({"c0": "1/2", "c1": 3}),
            json!("1/2+3w"),
        ] {
            assert_eq!(k_element_from_json(f, &v).unwrap(), want);
        }
        assert_eq!(k_element_from_json(Field::Q, &json!(-23)).unwrap(), Field::Q.int(-23));
        assert!(k_element_from_json(Field::Q, &json!({"c0": "1", "c1": "1"})).is_err());
        assert!(k_element_from_json(f, &json!([1, 2])).is_err());
    }

    #[test]
    fn ideal_roundtrip() {
        let e = make_extension(Field::QSqrt5, Field::QSqrt5.ints(-2, -1)).unwrap();
        let o = OrientedIdeal::adjusted(&e, IdealBasis::unit(&e), SignVector::new(vec![1, -1])).unwrap();
        let v = serde_json::to_value(&o).unwrap();
        let back = ideal_from_json(&e, &v).unwrap();
        assert_eq!(back, o);
        assert_eq!(serde_json::to_value(&back).unwrap(), v);

        let mut bad = v.clone();
        bad["eps"] = json!([1, 1]);
        assert_eq!(ideal_from_json(&e, &bad), Err(Error::OrientationMismatch));
        bad["eps"] = json!([1, 2]);
        assert!(matches!(ideal_from_json(&e, &bad), Err(Error::Parse(_))));
        let mut no_eps = v;
        no_eps.as_object_mut().unwrap().remove("eps");
        assert_eq!(ideal_from_json(&e, &no_eps).unwrap(), o);
    }

    #[test]
    fn forms_text_and_json() {
        let q = QuadraticForm::from_ints(Field::Q, 2, 1, 3);
        assert_eq!(parse_form(Field::Q, "2,1,3").unwrap(), q);
        assert_eq!(
            parse_form(Field::Q, r#"{"a": 2, "b": "1", "c": {"c0": "3/1"}}"#).unwrap(),
            q
        );
        let v = serde_json::to_string(&q).unwrap();
        assert_eq!(parse_form(Field::Q, &v).unwrap(), q);
        assert!(matches!(parse_form(Field::Q, "{"), Err(Error::Parse(_))));
    }
}
