// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Field, OmegaKind, SignVector};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, qi, to_pq, Q};

/// An element `c0 + c1·ω` of a registry field `K`.
///
/// Coordinates are reduced rationals, so equality is coordinatewise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElement {
    field: Field,
    c0: Q,
    c1: Q,
}

impl KElement {
    pub fn new(field: Field, c0: Q, c1: Q) -> Self {
        assert!(
            field != Field::Q || c1.is_zero(),
            "rational field element with nonzero ω-coordinate"
        );
        KElement { field, c0, c1 }
    }

    pub fn zero(field: Field) -> Self {
        Self::new(field, Q::zero(), Q::zero())
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Self {
        Self::from_bigint(field, BigInt::from(n))
    }

    pub fn from_bigint(field: Field, n: BigInt) -> Self {
        Self::new(field, qi(n), Q::zero())
    }

    pub fn from_rational(field: Field, x: Q) -> Self {
        Self::new(field, x, Q::zero())
    }

    pub fn from_ints(field: Field, c0: i64, c1: i64) -> Self {
        Self::new(field, qi(c0.into()), qi(c1.into()))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn c0(&self) -> &Q {
        &self.c0
    }

    pub fn c1(&self) -> &Q {
        &self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    /// Membership in `O_K = Z[ω]`.
    pub fn is_integral(&self) -> bool {
        self.c0.is_integer() && self.c1.is_integer()
    }

    pub(crate) fn require_integral(&self) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::NotIntegral(self.to_string()))
        }
    }

    /// Integer coordinates; `None` unless integral.
    pub fn int_coords(&self) -> Option<(BigInt, BigInt)> {
        self.is_integral().then(|| (self.c0.to_integer(), self.c1.to_integer()))
    }

    /// Coordinates `(a, b)` with `self = a + b·√m`.
    pub(crate) fn sqrt_coords(&self) -> (Q, Q) {
        match self.field.descriptor().omega_kind {
            OmegaKind::None | OmegaKind::Sqrt => (self.c0.clone(), self.c1.clone()),
            OmegaKind::Half => {
                let half = &self.c1 / qi(BigInt::from(2));
                (&self.c0 + &half, half)
            }
        }
    }

    /// Nontrivial automorphism of `K/Q` (identity on `Q`).
    pub fn conj(&self) -> Self {
        match self.field.descriptor().omega_kind {
            OmegaKind::None => self.clone(),
            OmegaKind::Sqrt => Self::new(self.field, self.c0.clone(), -&self.c1),
            // conj(ω) = 1 − ω
            OmegaKind::Half => Self::new(self.field, &self.c0 + &self.c1, -&self.c1),
        }
    }

    /// Absolute norm `N_{K/Q}`.
    pub fn norm(&self) -> Q {
        if self.field.is_rational() {
            return self.c0.clone();
        }
        let p = self * &self.conj();
        debug_assert!(p.c1.is_zero());
        p.c0
    }

    /// Absolute trace `Tr_{K/Q}`.
    pub fn trace(&self) -> Q {
        if self.field.is_rational() {
            return self.c0.clone();
        }
        (self + &self.conj()).c0
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        if self.field.is_rational() {
            return Ok(Self::from_rational(self.field, n.recip()));
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// `self / other` if it lies in `O_K`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let q = self.checked_div(other).ok()?;
        q.is_integral().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.field, &self.c0 * k, &self.c1 * k)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative exponents require `self ≠ 0`.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs() as u32))
        }
    }

    pub fn is_unit(&self) -> bool {
        self.is_integral() && !self.is_zero() && self.norm().abs().is_one()
    }

    /// Sign of `σ_i(self)` for the `i`-th real embedding, computed exactly.
    pub fn sign_at(&self, i: usize) -> Result<i8> {
        let r = self.field.r();
        if i >= r {
            return Err(Error::EmbeddingIndex { index: i, count: r });
        }
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if self.field.is_rational() {
            return Ok(sign_of(&self.c0));
        }
        // σ_1(√m) = +√m, σ_2(√m) = −√m
        let (a, b) = self.sqrt_coords();
        let b = if i == 0 { b } else { -b };
        Ok(sign_a_plus_b_sqrt_m(&a, &b, self.field.m()))
    }

    /// `(sgn σ_1(x), …, sgn σ_r(x))`.
    pub fn signs(&self) -> Result<SignVector> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        (0..self.field.r())
            .map(|i| self.sign_at(i))
            .collect::<Result<Vec<_>>>()
            .map(SignVector::new)
    }

    /// Nonzero and positive at every real embedding (vacuous when `r = 0`).
    pub fn is_totally_positive(&self) -> bool {
        !self.is_zero() && self.signs().is_ok_and(|s| s.all_positive())
    }

    pub fn is_totally_negative(&self) -> bool {
        !self.is_zero() && self.signs().is_ok_and(|s| s.iter().all(|&e| e < 0))
    }

    /// Total order on coordinates, used only to make outputs deterministic.
    pub fn coord_cmp(&self, other: &Self) -> Ordering {
        (&self.c0, &self.c1).cmp(&(&other.c0, &other.c1))
    }

    /// Parses the text syntax `c0+c1w`, e.g. `-23`, `1+w`, `1/2-3/2w`, `-w`.
    pub fn parse(field: Field, s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in src.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&src[start..i]);
                start = i;
            }
        }
        terms.push(&src[start..]);
        let mut c0 = Q::zero();
        let mut c1 = Q::zero();
        for t in terms {
            let (neg, body) = match t.as_bytes()[0] {
                b'+' => (false, &t[1..]),
                b'-' => (true, &t[1..]),
                _ => (false, t),
            };
            let (is_w, coeff) = match body.strip_suffix('w') {
                Some(c) => (true, c.strip_suffix('*').unwrap_or(c)),
                None => (false, body),
            };
            let mut v = if is_w && coeff.is_empty() {
                Q::one()
            } else {
                parse_rational(coeff)?
            };
            if neg {
                v = -v;
            }
            if is_w {
                c1 += v;
            } else {
                c0 += v;
            }
        }
        if field.is_rational() && !c1.is_zero() {
            return Err(Error::Parse(format!("`{s}` has an ω-part but K = Q")));
        }
        Ok(Self::new(field, c0, c1))
    }
}

fn sign_of(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact sign of `a + b√m` for square-free `m > 1`, `(a, b) ≠ (0, 0)`.
fn sign_a_plus_b_sqrt_m(a: &Q, b: &Q, m: i64) -> i8 {
    let (sa, sb) = (sign_of(a), sign_of(b));
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: the larger square wins
    let lhs = a * a;
    let rhs = b * b * qi(BigInt::from(m));
    if lhs > rhs {
        sa
    } else {
        sb
    }
}

fn same_field(a: &KElement, b: &KElement) {
    assert_eq!(a.field, b.field, "{}", Error::FieldMismatch);
}

impl Add for &KElement {
    type Output = KElement;
    fn add(self, rhs: &KElement) -> KElement {
        same_field(self, rhs);
        KElement::new(self.field, &self.c0 + &rhs.c0, &self.c1 + &rhs.c1)
    }
}

impl Sub for &KElement {
    type Output = KElement;
    fn sub(self, rhs: &KElement) -> KElement {
        same_field(self, rhs);
        KElement::new(self.field, &self.c0 - &rhs.c0, &self.c1 - &rhs.c1)
    }
}

impl Mul for &KElement {
    type Output = KElement;
    fn mul(self, rhs: &KElement) -> KElement {
        same_field(self, rhs);
        let d = self.field.descriptor();
        // ω² = tω − n
        let x1y1 = &self.c1 * &rhs.c1;
        let c0 = &self.c0 * &rhs.c0 - &x1y1 * qi(d.omega_norm.clone());
        let c1 = &self.c0 * &rhs.c1 + &self.c1 * &rhs.c0 + &x1y1 * qi(d.omega_trace.clone());
        KElement::new(self.field, c0, c1)
    }
}

/// Panics on a zero divisor; use [`KElement::checked_div`] for a `Result`.
impl Div for &KElement {
    type Output = KElement;
    fn div(self, rhs: &KElement) -> KElement {
        self.checked_div(rhs).expect("division by zero in K")
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        KElement::new(self.field, -&self.c0, -&self.c1)
    }
}

impl Neg for KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<KElement> for KElement {
            type Output = KElement;
            fn $m(self, rhs: KElement) -> KElement { (&self).$m(&rhs) }
        }
        impl $tr<&KElement> for KElement {
            type Output = KElement;
            fn $m(self, rhs: &KElement) -> KElement { (&self).$m(rhs) }
        }
        impl $tr<KElement> for &KElement {
            type Output = KElement;
            fn $m(self, rhs: KElement) -> KElement { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_c1 = |c: &BigRational| -> String {
            if c.is_one() {
                "w".into()
            } else if c == &-BigRational::one() {
                "-w".into()
            } else {
                format!("{c}w")
            }
        };
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (_, true) => write!(f, "{}", self.c0),
            (true, false) => f.write_str(&fmt_c1(&self.c1)),
            (false, false) => {
                let c1 = fmt_c1(&self.c1);
                if c1.starts_with('-') {
                    write!(f, "{}{}", self.c0, c1)
                } else {
                    write!(f, "{}+{}", self.c0, c1)
                }
            }
        }
    }
}

/// JSON form `{"c0": "p/q", "c1": "p/q"}`.
impl Serialize for KElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("KElement", 2)?;
        st.serialize_field("c0", &to_pq(&self.c0))?;
        st.serialize_field("c1", &to_pq(&self.c1))?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Conj,
}

/// Single entry point for field arithmetic; `y` is ignored by unary ops.
pub fn k_arith(op: KOp, x: &KElement, y: Option<&KElement>) -> Result<KElement> {
    let rhs = || y.ok_or_else(|| Error::Parse(format!("{op:?} needs two operands")));
    let y_field = y.map(|y| y.field);
    if matches!(op, KOp::Add | KOp::Sub | KOp::Mul | KOp::Div) && y_field != Some(x.field) && y.is_some() {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        KOp::Add => x + rhs()?,
        KOp::Sub => x - rhs()?,
        KOp::Mul => x * rhs()?,
        KOp::Div => x.checked_div(rhs()?)?,
        KOp::Neg => -x,
        KOp::Conj => x.conj(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn sqrt2_squared() {
        let f = Field::QSqrt2;
        assert_eq!(k_arith(KOp::Mul, &f.omega(), Some(&f.omega())).unwrap(), f.int(2));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let f = Field::QSqrt2;
        let x = k_arith(KOp::Div, &f.one(), Some(&f.ints(1, 1))).unwrap();
        assert_eq!(x, f.ints(-1, 1));
    }

    #[test]
    fn conjugate_sum_sqrt5() {
        // ω = (1+√5)/2, so 1/2 + 1/2·√5 = ω and 1/2 − 1/2·√5 = 1 − ω
        let f = Field::QSqrt5;
        let x = f.omega();
        let y = f.ints(1, -1);
        assert_eq!(x.sqrt_coords(), (frac(1, 2), frac(1, 2)));
        assert_eq!(y.sqrt_coords(), (frac(1, 2), frac(-1, 2)));
        assert_eq!(k_arith(KOp::Add, &x, Some(&y)).unwrap(), f.one());
        assert_eq!(x.conj(), y);
    }

    #[test]
    fn division_by_zero() {
        let f = Field::QI;
        assert_eq!(k_arith(KOp::Div, &f.one(), Some(&f.zero())), Err(Error::DivisionByZero));
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn embed_signs_examples() {
        let s = Field::QSqrt2.one().signs().unwrap();
        assert_eq!(s.as_slice(), &[1, 1]);
        let s = Field::QSqrt2.omega().signs().unwrap();
        assert_eq!(s.as_slice(), &[1, -1]);
        let s = Field::Q.int(-5).signs().unwrap();
        assert_eq!(s.as_slice(), &[-1]);
        assert_eq!(Field::Q.zero().signs(), Err(Error::ZeroArgument));
        assert!(Field::QI.ints(3, -7).signs().unwrap().is_empty());
    }

    #[test]
    fn total_positivity_examples() {
        // 3 − √5 = 4 − 2ω
        let x = Field::QSqrt5.ints(4, -2);
        assert_eq!(x.sqrt_coords(), (frac(3, 1), frac(-1, 1)));
        assert!(x.is_totally_positive());
        assert!(!Field::QSqrt2.omega().is_totally_positive());
        assert!(Field::QI.ints(-1, -1).is_totally_positive());
        assert!(!Field::QI.zero().is_totally_positive());
    }

    #[test]
    fn sign_case_analysis_near_boundary() {
        // 577² − 2·408² = 1, so 577 − 408√2 ≈ 0.0009 > 0
        let x = Field::QSqrt2.ints(577, -408);
        assert_eq!(x.signs().unwrap().as_slice(), &[1, 1]);
        assert_eq!((-x).signs().unwrap().as_slice(), &[-1, -1]);
        // 1393² − 2·985² = −1, so 1393 − 985√2 < 0 < 1393 + 985√2
        let z = Field::QSqrt2.ints(1393, -985);
        assert_eq!(z.signs().unwrap().as_slice(), &[-1, 1]);
    }

    #[test]
    fn parse_and_display() {
        let f = Field::QSqrt5;
        for (s, c0, c1) in [
            ("-23", (-23, 1), (0, 1)),
            ("1+w", (1, 1), (1, 1)),
            ("1/2-3/2w", (1, 2), (-3, 2)),
            ("-w", (0, 1), (-1, 1)),
            ("2*w - 1", (-1, 1), (2, 1)),
        ] {
            let x = KElement::parse(f, s).unwrap();
            assert_eq!(x.c0, frac(c0.0, c0.1));
            assert_eq!(x.c1, frac(c1.0, c1.1));
            assert_eq!(KElement::parse(f, &x.to_string()).unwrap(), x);
        }
        assert!(KElement::parse(Field::Q, "1+w").is_err());
        assert!(KElement::parse(f, "").is_err());
        assert!(KElement::parse(f, "1+x").is_err());
    }

    #[test]
    fn json_encoding() {
        let x = Field::QSqrt2.new_elem(frac(1, 2), frac(-3, 1));
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"c0":"1/2","c1":"-3/1"}"#);
    }

    impl Field {
        fn new_elem(self, c0: Q, c1: Q) -> KElement {
            KElement::new(self, c0, c1)
        }
    }
}
