// SPDX-License-Identifier: Apache-2.0

//! The relative quadratic extension `L = K(√D)` for a fundamental `D`,
//! with `O_L = [1, Ω]` and `Ω = (−w + √D)/2`, `Ω² + wΩ + z = 0`.
//!
//! Elements of `L` are stored in `√D`-coordinates `x + y√D`, so
//! conjugation only negates `y`. Conversion to the `{1, Ω}` basis is an
//! explicit linear map ([`Extension::omega_coords`]).

use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::base_field::{is_fundamental, is_qr_mod4, Field, KElement};
use crate::error::{Error, Result};
use crate::rational::frac;

/// `x + y·√D` with `x, y ∈ K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LElement {
    pub x: KElement,
    pub y: KElement,
}

impl LElement {
    pub fn new(x: KElement, y: KElement) -> Self {
        assert_eq!(x.field(), y.field(), "{}", Error::FieldMismatch);
        LElement { x, y }
    }

    /// Embeds `k ∈ K` into `L`.
    pub fn from_k(k: KElement) -> Self {
        let f = k.field();
        LElement::new(k, f.zero())
    }

    pub fn field(&self) -> Field {
        self.x.field()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        LElement::new(self.x.clone(), -&self.y)
    }

    /// `Im(c1 + c2√D) = c2`.
    pub fn im_part(&self) -> KElement {
        self.y.clone()
    }

    pub fn scale(&self, k: &KElement) -> Self {
        LElement::new(&self.x * k, &self.y * k)
    }

    /// Relative trace `a + conj(a)`.
    pub fn rel_trace(&self) -> KElement {
        &self.x + &self.x
    }
}

impl Add for &LElement {
    type Output = LElement;
    fn add(self, rhs: &LElement) -> LElement {
        LElement::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &LElement {
    type Output = LElement;
    fn sub(self, rhs: &LElement) -> LElement {
        LElement::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &LElement {
    type Output = LElement;
    fn neg(self) -> LElement {
        LElement::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})·√D", self.x, self.y)
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub base: Field,
    /// `D = D_Ω = w² − 4z`.
    pub d: KElement,
    pub w: KElement,
    pub z: KElement,
}

/// A relative quadratic extension; cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension(Arc<ExtensionData>);

impl Deref for Extension {
    type Target = ExtensionData;
    fn deref(&self) -> &ExtensionData {
        &self.0
    }
}

/// Builds `L = K(√D)` with the smallest admissible `w` (by absolute norm,
/// then coordinates) among the residues of `O_K / 2O_K` with `w² ≡ D (4)`.
pub fn make_extension(base: Field, d: KElement) -> Result<Extension> {
    if d.field() != base {
        return Err(Error::FieldMismatch);
    }
    if !is_fundamental(&d)? {
        return Err(Error::NotFundamental(d.to_string()));
    }
    let mut candidates = base.residues(2);
    candidates.sort_by(|a, b| a.norm().abs().cmp(&b.norm().abs()).then_with(|| a.coord_cmp(b)));
    let four = base.int(4);
    for w in candidates {
        let diff = &(&w * &w) - &d;
        if let Some(z) = diff.exact_div(&four) {
            return Ok(Extension(Arc::new(ExtensionData { base, d, w, z })));
        }
    }
    // D is a square mod 4, and t² ≡ (t mod 2)² (mod 4)
    debug_assert!(!is_qr_mod4(&d).unwrap_or(false));
    Err(Error::NotFundamental(d.to_string()))
}

impl Extension {
    pub fn new(base: Field, d: KElement) -> Result<Self> {
        make_extension(base, d)
    }

    pub fn base(&self) -> Field {
        self.0.base
    }

    pub fn elem(&self, x: KElement, y: KElement) -> LElement {
        LElement::new(x, y)
    }

    pub fn from_k(&self, k: KElement) -> LElement {
        LElement::from_k(k)
    }

    pub fn zero(&self) -> LElement {
        LElement::from_k(self.base.zero())
    }

    pub fn one(&self) -> LElement {
        LElement::from_k(self.base.one())
    }

    pub fn sqrt_d(&self) -> LElement {
        LElement::new(self.base.zero(), self.base.one())
    }

    /// `Ω = (−w + √D)/2`.
    pub fn omega(&self) -> LElement {
        let half = frac(1, 2);
        LElement::new((-&self.w).scale(&half), self.base.one().scale(&half))
    }

    pub fn mul(&self, a: &LElement, b: &LElement) -> LElement {
        // (x1 + y1√D)(x2 + y2√D) = x1x2 + D·y1y2 + (x1y2 + x2y1)√D
        LElement::new(
            &(&a.x * &b.x) + &(&self.d * &(&a.y * &b.y)),
            &(&a.x * &b.y) + &(&a.y * &b.x),
        )
    }

    /// `N_{L/K}(a) = a·conj(a) = x² − D·y²`.
    pub fn rel_norm(&self, a: &LElement) -> KElement {
        &(&a.x * &a.x) - &(&self.d * &(&a.y * &a.y))
    }

    pub fn inv(&self, a: &LElement) -> Result<LElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.rel_norm(a).inv()?;
        Ok(a.conj().scale(&n))
    }

    pub fn div(&self, a: &LElement, b: &LElement) -> Result<LElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &LElement, e: u32) -> LElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `(s, t)` with `a = s + t·Ω`.
    pub fn omega_coords(&self, a: &LElement) -> (KElement, KElement) {
        // s + t(−w + √D)/2 = (s − tw/2) + (t/2)√D
        let t = &a.y + &a.y;
        let s = &a.x + &(&a.y * &self.w);
        (s, t)
    }

    pub fn from_omega_coords(&self, s: &KElement, t: &KElement) -> LElement {
        let half = frac(1, 2);
        LElement::new(s - &(t * &self.w).scale(&half), t.scale(&half))
    }

    /// Membership in `O_L = [1, Ω]_{O_K}`.
    pub fn is_integral(&self, a: &LElement) -> bool {
        let (s, t) = self.omega_coords(a);
        s.is_integral() && t.is_integral()
    }

    /// Units of `O_L`: integral with relative norm a unit of `O_K`.
    pub fn is_unit(&self, a: &LElement) -> bool {
        self.is_integral(a) && !a.is_zero() && self.rel_norm(a).is_unit()
    }
}

impl Serialize for Extension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Extension", 4)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("D", &self.d)?;
        st.serialize_field("w", &self.w)?;
        st.serialize_field("z", &self.z)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LOp {
    Add,
    Sub,
    Mul,
    Div,
    Conj,
}

pub fn l_arith(ext: &Extension, op: LOp, a: &LElement, b: Option<&LElement>) -> Result<LElement> {
    let rhs = || b.ok_or_else(|| Error::Parse(format!("{op:?} needs two operands")));
    Ok(match op {
        LOp::Add => a + rhs()?,
        LOp::Sub => a - rhs()?,
        LOp::Mul => ext.mul(a, rhs()?),
        LOp::Div => ext.div(a, rhs()?)?,
        LOp::Conj => a.conj(),
    })
}

pub fn rel_norm(ext: &Extension, a: &LElement) -> KElement {
    ext.rel_norm(a)
}

pub fn im_part(a: &LElement) -> KElement {
    a.im_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_ext(d: i64) -> Extension {
        make_extension(Field::Q, Field::Q.int(d)).unwrap()
    }

    #[test]
    fn extension_examples() {
        let e = q_ext(-4);
        assert_eq!((e.w.clone(), e.z.clone()), (Field::Q.int(0), Field::Q.int(1)));
        let e = q_ext(-23);
        assert_eq!((e.w.clone(), e.z.clone()), (Field::Q.int(1), Field::Q.int(6)));
        let e = q_ext(12);
        assert_eq!((e.w.clone(), e.z.clone()), (Field::Q.int(0), Field::Q.int(-3)));
        assert!(matches!(
            make_extension(Field::Q, Field::Q.int(-12)),
            Err(Error::NotFundamental(_))
        ));
        assert!(matches!(
            make_extension(Field::Q, Field::Q.int(4)),
            Err(Error::SquareInput(_))
        ));
    }

    #[test]
    fn omega_relations() {
        let q = Field::Q;
        let e = q_ext(-23);
        let om = e.omega();
        let omc = om.conj();
        assert_eq!(
            omc,
            LElement::new(q.int(-1).scale(&frac(1, 2)), q.int(-1).scale(&frac(1, 2)))
        );
        assert_eq!(e.mul(&om, &omc), e.from_k(q.int(6)));
        let a = LElement::new(q.one().scale(&frac(1, 2)), q.one().scale(&frac(1, 2)));
        assert_eq!(e.mul(&a, &a.conj()), e.from_k(q.int(6)));
        assert_eq!(e.rel_norm(&om), q.int(6));
        assert_eq!(e.rel_norm(&e.one()), q.one());
        assert_eq!(e.rel_norm(&e.sqrt_d()), q.int(23));
    }

    #[test]
    fn im_part_examples() {
        let q = Field::Q;
        let e = q_ext(-23);
        assert_eq!(e.omega().im_part(), q.one().scale(&frac(1, 2)));
        assert_eq!(e.from_k(q.int(5)).im_part(), q.zero());
        let alpha = e.from_k(q.int(2));
        let beta = e.omega();
        assert_eq!(e.div(&beta, &alpha).unwrap().im_part(), q.one().scale(&frac(1, 4)));
    }

    #[test]
    fn integrality_examples() {
        let q = Field::Q;
        let e = q_ext(-23);
        assert!(e.is_integral(&e.omega()));
        let a = LElement::new(q.one().scale(&frac(1, 2)), q.one().scale(&frac(1, 2)));
        assert!(e.is_integral(&a));
        assert_eq!(a, &e.one() + &e.omega());
        let b = LElement::new(q.zero(), q.one().scale(&frac(1, 2)));
        assert!(!e.is_integral(&b));
    }

    #[test]
    fn omega_coords_roundtrip() {
        let f = Field::QSqrt5;
        let e = make_extension(f, f.ints(-3, 0)).unwrap();
        let a = LElement::new(f.ints(2, -1), f.ints(1, 3));
        let (s, t) = e.omega_coords(&a);
        assert_eq!(e.from_omega_coords(&s, &t), a);
        let (s, t) = e.omega_coords(&e.omega());
        assert!(s.is_zero() && t.is_one());
    }

    #[test]
    fn division_by_zero() {
        let e = q_ext(-4);
        assert_eq!(e.inv(&e.zero()), Err(Error::DivisionByZero));
        assert_eq!(
            l_arith(&e, LOp::Div, &e.one(), Some(&e.zero())),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn json_shape() {
        let e = q_ext(-23);
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["base"], "q");
        assert_eq!(v["D"]["c0"], "-23/1");
        assert_eq!(v["w"]["c0"], "1/1");
        assert_eq!(v["z"]["c0"], "6/1");
        let l = serde_json::to_value(e.omega()).unwrap();
        assert_eq!(l["x"]["c0"], "-1/2");
        assert_eq!(l["y"]["c0"], "1/2");
    }
}
