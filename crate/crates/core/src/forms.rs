// SPDX-License-Identifier: Apache-2.0

//! Binary quadratic forms `ax² + bxy + cy²` over `O_K` and their
//! equivalence under `Q̃(x, y) = u·Q(px + qy, rx + sy)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::base_field::{gcd_all, is_fundamental, Field, KElement};
use crate::error::{Error, Result};
use crate::extension::{Extension, LElement};
use crate::rational::{isqrt, qi, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    pub a: KElement,
    pub b: KElement,
    pub c: KElement,
}

impl QuadraticForm {
    pub fn new(a: KElement, b: KElement, c: KElement) -> Self {
        assert!(
            a.field() == b.field() && b.field() == c.field(),
            "form coefficients from different fields"
        );
        Self { a, b, c }
    }

    pub fn from_ints(f: Field, a: i64, b: i64, c: i64) -> Self {
        Self::new(f.int(a), f.int(b), f.int(c))
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn disc(&self) -> KElement {
        disc(self)
    }

    pub fn eval(&self, x: &KElement, y: &KElement) -> KElement {
        &(&(&self.a * &(x * x)) + &(&self.b * &(x * y))) + &(&self.c * &(y * y))
    }

    pub fn scale(&self, u: &KElement) -> Self {
        Self::new(u * &self.a, u * &self.b, u * &self.c)
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integral() && self.b.is_integral() && self.c.is_integral()
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(self)
    }

    /// `Q(px + qy, rx + sy)`.
    pub fn substitute(&self, p: &KElement, q: &KElement, r: &KElement, s: &KElement) -> Self {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = self.field().int(2);
        Self::new(
            &(&(a * &(p * p)) + &(b * &(p * r))) + &(c * &(r * r)),
            &(&(&two * &(a * &(p * q))) + &(b * &(&(p * s) + &(q * r)))) + &(&two * &(c * &(r * s))),
            &(&(a * &(q * q)) + &(b * &(q * s))) + &(c * &(s * s)),
        )
    }

    /// Parses `a,b,c` with each coefficient in the `c0+c1w` syntax.
    pub fn parse(f: Field, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected `a,b,c`, got `{s}`")));
        }
        Ok(Self::new(
            KElement::parse(f, parts[0])?,
            KElement::parse(f, parts[1])?,
            KElement::parse(f, parts[2])?,
        ))
    }

    /// Human-readable polynomial, e.g. `2x^2 + xy + 3y^2`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (k, mono) in [(&self.a, "x^2"), (&self.b, "xy"), (&self.c, "y^2")] {
            if k.is_zero() {
                continue;
            }
            let txt = k.to_string();
            let compound = !k.c1().is_zero() && !k.c0().is_zero();
            let (neg, body) = match txt.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, txt),
            };
            let coeff = if compound {
                format!("({body})")
            } else if body == "1" {
                String::new()
            } else {
                body
            };
            match (out.is_empty(), neg) {
                (true, false) => {}
                (true, true) => out.push('-'),
                (false, false) => out.push_str(" + "),
                (false, true) => out.push_str(" - "),
            }
            out.push_str(&coeff);
            out.push_str(mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

/// Lexicographic on the coordinates of `(a, b, c)`.
impl Ord for QuadraticForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a
            .coord_cmp(&other.a)
            .then_with(|| self.b.coord_cmp(&other.b))
            .then_with(|| self.c.coord_cmp(&other.c))
    }
}

impl PartialOrd for QuadraticForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(p, q, r, s)` with `ps − qr` a totally positive unit, and a totally
/// positive unit `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormTransformation {
    pub p: KElement,
    pub q: KElement,
    pub r: KElement,
    pub s: KElement,
    pub u: KElement,
}

impl FormTransformation {
    pub fn new(p: KElement, q: KElement, r: KElement, s: KElement, u: KElement) -> Result<Self> {
        let f = p.field();
        if [&q, &r, &s, &u].iter().any(|x| x.field() != f) {
            return Err(Error::FieldMismatch);
        }
        if ![&p, &q, &r, &s].iter().all(|x| x.is_integral()) {
            return Err(Error::InvalidTransformation("entries must lie in O_K".into()));
        }
        let t = Self { p, q, r, s, u };
        if !is_totally_positive_unit(&t.det()) {
            return Err(Error::InvalidTransformation(format!(
                "ps - qr = {} is not a totally positive unit",
                t.det()
            )));
        }
        if !is_totally_positive_unit(&t.u) {
            return Err(Error::InvalidTransformation(format!(
                "u = {} is not a totally positive unit",
                t.u
            )));
        }
        Ok(t)
    }

    pub fn identity(f: Field) -> Self {
        Self::new(f.one(), f.zero(), f.zero(), f.one(), f.one()).expect("identity is valid")
    }

    pub fn det(&self) -> KElement {
        &(&self.p * &self.s) - &(&self.q * &self.r)
    }
}

fn is_totally_positive_unit(x: &KElement) -> bool {
    x.is_unit() && x.is_totally_positive()
}

pub fn disc(q: &QuadraticForm) -> KElement {
    &(&q.b * &q.b) - &(&q.a * &q.c).scale(&qi(BigInt::from(4)))
}

/// `u·Q(px + qy, rx + sy)`.
pub fn transform(q: &QuadraticForm, t: &FormTransformation) -> Result<QuadraticForm> {
    if t.p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(q.substitute(&t.p, &t.q, &t.r, &t.s).scale(&t.u))
}

/// Recovers `Q` from `Q̃ = transform(Q, T)`.
pub fn inverse_transform(qt: &QuadraticForm, t: &FormTransformation) -> Result<QuadraticForm> {
    if t.p.field() != qt.field() {
        return Err(Error::FieldMismatch);
    }
    let det = t.det();
    let k = (&t.u * &(&det * &det)).inv()?;
    let (p, q, r, s) = (&t.p, &t.q, &t.r, &t.s);
    let (a, b, c) = (&qt.a, &qt.b, &qt.c);
    let two = qt.field().int(2);
    let na = &(&(a * &(s * s)) - &(b * &(r * s))) + &(c * &(r * r));
    let nb = &(&(&-&two * &(a * &(q * s))) + &(b * &(&(p * s) + &(q * r)))) - &(&two * &(c * &(p * r)));
    let nc = &(&(a * &(q * q)) - &(b * &(p * q))) + &(c * &(p * p));
    Ok(QuadraticForm::new(&k * &na, &k * &nb, &k * &nc))
}

/// `gcd(a, b, c)` is a unit.
pub fn is_primitive(q: &QuadraticForm) -> bool {
    q.is_integral() && gcd_all([&q.a, &q.b, &q.c]).is_ok_and(|g| g.is_unit())
}

/// `(p₀, q₀, r₀, s₀)` with `p₀s₀ − q₀r₀ = N(μ)` and
/// `N(μ)·Q(x, y) = Q(p₀x + q₀y, r₀x + s₀y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Automorph {
    pub p: KElement,
    pub q: KElement,
    pub r: KElement,
    pub s: KElement,
}

impl Automorph {
    pub fn det(&self) -> KElement {
        &(&self.p * &self.s) - &(&self.q * &self.r)
    }

    /// `det·Q = Q(px + qy, rx + sy)` coefficientwise.
    pub fn fixes(&self, q: &QuadraticForm) -> bool {
        q.substitute(&self.p, &self.q, &self.r, &self.s) == q.scale(&self.det())
    }
}

/// For a unit `μ = u/2 + (v/2)√D` of `O_L` and `Disc(Q) = D`, the automorph
/// `((u − bv)/2, −cv, av, (u + bv)/2)`.
pub fn automorph_from_unit(q: &QuadraticForm, ext: &Extension, mu: &LElement) -> Result<Automorph> {
    if q.field() != ext.base() || mu.field() != ext.base() {
        return Err(Error::FieldMismatch);
    }
    let d = disc(q);
    if d != ext.d {
        return Err(Error::DiscriminantMismatch {
            expected: ext.d.to_string(),
            got: d.to_string(),
        });
    }
    if !ext.is_unit(mu) {
        return Err(Error::NotAUnit);
    }
    let two = qi(BigInt::from(2));
    let (u, v) = (mu.x.scale(&two), mu.y.scale(&two));
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let bv = &q.b * &v;
    let m = Automorph {
        p: (&u - &bv).scale(&half),
        q: -&(&q.c * &v),
        r: &q.a * &v,
        s: (&u + &bv).scale(&half),
    };
    debug_assert!([&m.p, &m.q, &m.r, &m.s].iter().all(|x| x.is_integral()));
    Ok(m)
}

/// `T` is valid and `u·Q₁(px + qy, rx + sy) = Q₂`.
pub fn verify_equivalence_witness(q1: &QuadraticForm, q2: &QuadraticForm, t: &FormTransformation) -> bool {
    if q1.field() != q2.field() {
        return false;
    }
    let Ok(valid) = FormTransformation::new(t.p.clone(), t.q.clone(), t.r.clone(), t.s.clone(), t.u.clone()) else {
        return false;
    };
    transform(q1, &valid).is_ok_and(|qt| qt == *q2)
}

/// Elements `x + y√D` of `K(√D)` for a non-square `D`.
#[derive(Clone)]
struct Adjoined<'a> {
    d: &'a KElement,
    x: KElement,
    y: KElement,
}

impl<'a> Adjoined<'a> {
    fn add(&self, o: &Self) -> Self {
        Self {
            d: self.d,
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            d: self.d,
            x: &(&self.x * &o.x) + &(self.d * &(&self.y * &o.y)),
            y: &(&self.x * &o.y) + &(&self.y * &o.x),
        }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        let n = &(&o.x * &o.x) - &(self.d * &(&o.y * &o.y));
        let ni = n.inv().ok()?;
        let conj = Self {
            d: self.d,
            x: o.x.clone(),
            y: -&o.y,
        };
        let p = self.mul(&conj);
        Some(Self {
            d: self.d,
            x: &p.x * &ni,
            y: &p.y * &ni,
        })
    }
}

/// Checks `(pθ̃ + q)/(rθ̃ + s) = θ` for the roots `θ = (−b + √D)/2a` and
/// `θ̃ = (−b̃ + √D̃)/2ã` of `Q̃ = Q(px + qy, rx + sy)`, with
/// `√D̃ = (ps − qr)·√D`.
pub fn root_transport_check(q: &QuadraticForm, qt: &QuadraticForm, t: &FormTransformation) -> bool {
    let f = q.field();
    if qt.field() != f || t.p.field() != f {
        return false;
    }
    let d = disc(q);
    if q.a.is_zero() || qt.a.is_zero() || crate::base_field::sqrt_k(&d).is_some() {
        return false;
    }
    let k = |x: KElement| Adjoined { d: &d, x, y: f.zero() };
    let two = f.int(2);
    let root = |b: &KElement, a: &KElement, sqrt_coeff: KElement| -> Option<Adjoined<'_>> {
        let num = Adjoined {
            d: &d,
            x: -b,
            y: sqrt_coeff,
        };
        num.div(&k(&two * a))
    };
    let (Some(theta), Some(theta_t)) = (root(&q.b, &q.a, f.one()), root(&qt.b, &qt.a, t.det())) else {
        return false;
    };
    let num = k(t.p.clone()).mul(&theta_t).add(&k(t.q.clone()));
    let den = k(t.r.clone()).mul(&theta_t).add(&k(t.s.clone()));
    match num.div(&den) {
        Some(lhs) => lhs.x == theta.x && lhs.y == theta.y,
        None => false,
    }
}

/// Totally positive definite: `a ≻ 0`, for totally negative discriminant.
pub fn is_tpd(q: &QuadraticForm) -> Result<bool> {
    if !disc(q).is_totally_negative() {
        return Err(Error::DiscriminantNotTotallyNegative);
    }
    Ok(q.a.is_totally_positive())
}

fn int_coeffs(q: &QuadraticForm) -> Result<(BigInt, BigInt, BigInt)> {
    if q.field() != Field::Q {
        return Err(Error::WrongBase);
    }
    let z = |k: &KElement| -> Result<BigInt> {
        if !k.is_integral() {
            return Err(Error::NotIntegral(k.to_string()));
        }
        Ok(k.c0().to_integer())
    };
    Ok((z(&q.a)?, z(&q.b)?, z(&q.c)?))
}

fn from_big(a: BigInt, b: BigInt, c: BigInt) -> QuadraticForm {
    let f = Field::Q;
    QuadraticForm::new(
        KElement::from_bigint(f, a),
        KElement::from_bigint(f, b),
        KElement::from_bigint(f, c),
    )
}

/// The reduced form properly equivalent to a positive definite form over
/// `Z`: `|b| ≤ a ≤ c`, and `b ≥ 0` if `|b| = a` or `a = c`.
pub fn reduce_form_q(q: &QuadraticForm) -> Result<QuadraticForm> {
    let (mut a, mut b, mut c) = int_coeffs(q)?;
    let d = &b * &b - BigInt::from(4) * &a * &c;
    if !d.is_negative() || !a.is_positive() {
        return Err(Error::IndefiniteForm);
    }
    loop {
        if c < a {
            std::mem::swap(&mut a, &mut c);
            b = -b;
        } else if b.abs() > a || -&b == a {
            // b ↦ b mod 2a in (−a, a]
            let two_a = BigInt::from(2) * &a;
            let mut nb = b.mod_floor(&two_a);
            if nb > a {
                nb -= &two_a;
            }
            c = (&nb * &nb - &d) / (BigInt::from(4) * &a);
            b = nb;
        } else {
            break;
        }
    }
    if a == c && b.is_negative() {
        b = -b;
    }
    Ok(from_big(a, b, c))
}

/// All reduced primitive positive definite forms of discriminant `d < 0`,
/// sorted.
pub fn enumerate_classes_q(d: &KElement) -> Result<Vec<QuadraticForm>> {
    if d.field() != Field::Q {
        return Err(Error::WrongBase);
    }
    if !is_fundamental(d)? {
        return Err(Error::NotFundamental(d.to_string()));
    }
    let dz = d.c0().to_integer();
    if !dz.is_negative() {
        return Err(Error::IndefiniteForm);
    }
    let amax = isqrt(&(-&dz / BigInt::from(3)));
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while a <= amax {
        let mut b: BigInt = -&a + 1;
        while b <= a {
            let num: BigInt = &b * &b - &dz;
            let four_a = BigInt::from(4) * &a;
            if num.is_multiple_of(&four_a) {
                let c = num / &four_a;
                let boundary = b.is_negative() && (b.abs() == a || a == c);
                let g = a.gcd(&b).gcd(&c);
                if c >= a && !boundary && g.is_one() {
                    out.push(from_big(a.clone(), b.clone(), c));
                }
            }
            b += 1;
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::make_extension;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn qf(a: i64, b: i64, c: i64) -> QuadraticForm {
        QuadraticForm::from_ints(Field::Q, a, b, c)
    }

    fn gi(a: i64, b: i64) -> KElement {
        Field::QI.ints(a, b)
    }

    /// `Q = x² + 4xy + 2y²` and `Q' = ix² + 4xy − 2iy²` over `Q(i)`.
    fn gaussian_pair() -> (QuadraticForm, QuadraticForm) {
        (
            QuadraticForm::new(gi(1, 0), gi(4, 0), gi(2, 0)),
            QuadraticForm::new(gi(0, 1), gi(4, 0), gi(0, -2)),
        )
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc(&qf(1, 0, 1)), Field::Q.int(-4));
        assert_eq!(disc(&qf(2, 1, 3)), Field::Q.int(-23));
        assert_eq!(disc(&gaussian_pair().0), gi(8, 0));
    }

    #[test]
    fn transform_examples() {
        let q = qf(2, 1, 3);
        assert_eq!(transform(&q, &FormTransformation::identity(Field::Q)).unwrap(), q);

        let (q, q2) = gaussian_pair();
        // −i·Q(ix, y)
        let t = FormTransformation::new(gi(0, 1), gi(0, 0), gi(0, 0), gi(1, 0), gi(0, -1)).unwrap();
        assert_eq!(transform(&q, &t).unwrap(), q2);
        assert_eq!(inverse_transform(&q2, &t).unwrap(), q);
    }

    #[test]
    fn invalid_transformations() {
        let f = Field::Q;
        let r = FormTransformation::new(f.int(2), f.zero(), f.zero(), f.one(), f.one());
        assert!(matches!(r, Err(Error::InvalidTransformation(_))));
        // det −1 is not totally positive over Q
        let r = FormTransformation::new(f.zero(), f.one(), f.one(), f.zero(), f.one());
        assert!(matches!(r, Err(Error::InvalidTransformation(_))));
        let r = FormTransformation::new(f.one(), f.zero(), f.zero(), f.one(), f.int(-1));
        assert!(matches!(r, Err(Error::InvalidTransformation(_))));
        let h = KElement::from_rational(f, frac(1, 2));
        let r = FormTransformation::new(h, f.zero(), f.zero(), f.int(2), f.one());
        assert!(matches!(r, Err(Error::InvalidTransformation(_))));
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&qf(2, 1, 3)));
        assert!(!is_primitive(&qf(2, 2, 2)));
        let f = Field::QSqrt2;
        let r2 = f.omega();
        assert!(!is_primitive(&QuadraticForm::new(r2.clone(), f.int(2), r2)));
        assert!(!is_primitive(&qf(0, 0, 0)));
    }

    #[test]
    fn automorph_examples() {
        let e4 = make_extension(Field::Q, Field::Q.int(-4)).unwrap();
        let q = qf(1, 0, 1);
        let i = e4.elem(Field::Q.zero(), KElement::from_rational(Field::Q, frac(1, 2)));
        let m = automorph_from_unit(&q, &e4, &i).unwrap();
        let z = |n| Field::Q.int(n);
        assert_eq!(
            (m.p.clone(), m.q.clone(), m.r.clone(), m.s.clone()),
            (z(0), z(-1), z(1), z(0))
        );
        assert!(m.fixes(&q));
        assert_eq!(q.substitute(&z(0), &z(-1), &z(1), &z(0)), q);

        let m = automorph_from_unit(&q, &e4, &e4.one()).unwrap();
        assert_eq!((m.p, m.q, m.r, m.s), (z(1), z(0), z(0), z(1)));

        let e23 = make_extension(Field::Q, Field::Q.int(-23)).unwrap();
        let q = qf(1, 1, 6);
        let m = automorph_from_unit(&q, &e23, &-&e23.one()).unwrap();
        assert_eq!(m.det(), z(1));
        assert_eq!(
            (m.p.clone(), m.q.clone(), m.r.clone(), m.s.clone()),
            (z(-1), z(0), z(0), z(-1))
        );
        assert!(m.fixes(&q));

        assert!(matches!(
            automorph_from_unit(&qf(1, 0, 1), &e23, &e23.one()),
            Err(Error::DiscriminantMismatch { .. })
        ));
        let two = e23.from_k(z(2));
        assert_eq!(automorph_from_unit(&q, &e23, &two), Err(Error::NotAUnit));
    }

    #[test]
    fn witness_examples() {
        let q = qf(2, 1, 3);
        assert!(verify_equivalence_witness(
            &q,
            &q,
            &FormTransformation::identity(Field::Q)
        ));
        let (a, b) = gaussian_pair();
        let t = FormTransformation {
            p: gi(0, 1),
            q: gi(0, 0),
            r: gi(0, 0),
            s: gi(1, 0),
            u: gi(0, -1),
        };
        assert!(verify_equivalence_witness(&a, &b, &t));
        assert!(!verify_equivalence_witness(
            &qf(1, 0, 1),
            &q,
            &FormTransformation::identity(Field::Q)
        ));
        // (p, q, r, s) = (0, 1, −1, 0) is a valid change over Q
        let rot = FormTransformation::new(
            Field::Q.zero(),
            Field::Q.one(),
            Field::Q.int(-1),
            Field::Q.zero(),
            Field::Q.one(),
        )
        .unwrap();
        assert!(!verify_equivalence_witness(&qf(1, 0, 1), &q, &rot));
    }

    #[test]
    fn root_transport_examples() {
        let q = qf(2, 1, 3);
        let id = FormTransformation::identity(Field::Q);
        assert!(root_transport_check(&q, &q, &id));
        // (2, 1, 3) ↦ (2, 5, 6) under x ↦ x + y
        let f = Field::Q;
        let t = FormTransformation::new(f.one(), f.one(), f.zero(), f.one(), f.one()).unwrap();
        let qt = transform(&q, &t).unwrap();
        assert_eq!(qt, qf(2, 5, 6));
        assert!(root_transport_check(&q, &qt, &t));
        assert!(!root_transport_check(&q, &qf(2, -1, 3), &t));
    }

    #[test]
    fn tpd_examples() {
        assert_eq!(is_tpd(&qf(1, 0, 1)), Ok(true));
        assert_eq!(is_tpd(&qf(-1, 0, -1)), Ok(false));
        assert_eq!(is_tpd(&qf(1, 0, -1)), Err(Error::DiscriminantNotTotallyNegative));
        // √2·x² + 0·xy + √2·y²: D = −8 ≺ 0, but σ₂(√2) < 0
        let f = Field::QSqrt2;
        let q = QuadraticForm::new(f.omega(), f.zero(), f.omega());
        assert_eq!(is_tpd(&q), Ok(false));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_form_q(&qf(2, 1, 3)).unwrap(), qf(2, 1, 3));
        assert_eq!(reduce_form_q(&qf(3, -1, 2)).unwrap(), qf(2, 1, 3));
        assert_eq!(reduce_form_q(&qf(1, 0, 1)).unwrap(), qf(1, 0, 1));
        assert_eq!(reduce_form_q(&qf(3, 1, 2)).unwrap(), qf(2, -1, 3));
        assert_eq!(reduce_form_q(&qf(2, -2, 3)).unwrap(), qf(2, 2, 3));
        assert_eq!(reduce_form_q(&qf(1, 0, -1)), Err(Error::IndefiniteForm));
        assert_eq!(reduce_form_q(&qf(-1, 0, -1)), Err(Error::IndefiniteForm));
        let f = Field::QI;
        assert_eq!(
            reduce_form_q(&QuadraticForm::from_ints(f, 1, 0, 1)),
            Err(Error::WrongBase)
        );
    }

    #[test]
    fn enumeration_examples() {
        let e = |d| enumerate_classes_q(&Field::Q.int(d)).unwrap();
        assert_eq!(e(-4), vec![qf(1, 0, 1)]);
        assert_eq!(e(-23), vec![qf(1, 1, 6), qf(2, -1, 3), qf(2, 1, 3)]);
        assert_eq!(e(-8), vec![qf(1, 0, 2)]);
        assert_eq!(e(-3), vec![qf(1, 1, 1)]);
        assert!(enumerate_classes_q(&Field::QI.int(-4)).is_err());
        assert!(matches!(
            enumerate_classes_q(&Field::Q.int(-12)),
            Err(Error::NotFundamental(_))
        ));
    }

    /// Class numbers of imaginary quadratic fields.
    #[test]
    fn class_numbers() {
        for (d, h) in [
            (-3, 1),
            (-4, 1),
            (-7, 1),
            (-15, 2),
            (-20, 2),
            (-23, 3),
            (-47, 5),
            (-71, 7),
            (-84, 4),
            (-163, 1),
        ] {
            assert_eq!(enumerate_classes_q(&Field::Q.int(d)).unwrap().len(), h, "D = {d}");
        }
    }

    #[test]
    fn parse_and_pretty() {
        let q = QuadraticForm::parse(Field::Q, "2,1,3").unwrap();
        assert_eq!(q, qf(2, 1, 3));
        assert_eq!(q.pretty(), "2x^2 + xy + 3y^2");
        assert_eq!(qf(2, -1, 3).pretty(), "2x^2 - xy + 3y^2");
        assert_eq!(qf(1, 0, -3).pretty(), "x^2 - 3y^2");
        let r = QuadraticForm::parse(Field::QSqrt5, "1+w, -w, 2").unwrap();
        assert_eq!(QuadraticForm::parse(Field::QSqrt5, &r.to_string()).unwrap(), r);
        assert_eq!(r.pretty(), "(1+w)x^2 - wxy + 2y^2");
        assert!(QuadraticForm::parse(Field::Q, "1,2").is_err());
        assert_eq!(
            serde_json::to_value(qf(2, 1, 3)).unwrap(),
            serde_json::json!({"a": {"c0": "2/1", "c1": "0/1"}, "b": {"c0": "1/1", "c1": "0/1"}, "c": {"c0": "3/1", "c1": "0/1"}})
        );
    }

    const FIELDS: [Field; 5] = [Field::Q, Field::QI, Field::QSqrt2, Field::QSqrt5, Field::QSqrt13];

    fn k_el(f: Field, (a, b): (i64, i64)) -> KElement {
        f.ints(a, if f.is_rational() { 0 } else { b })
    }

    /// A random valid transformation: product of elementary moves, scaled by
    /// totally positive units.
    fn random_transform(f: Field, moves: &[(u8, (i64, i64))], unit_exp: (i64, i64)) -> FormTransformation {
        let (mut p, mut q, mut r, mut s) = (f.one(), f.zero(), f.zero(), f.one());
        for (kind, t) in moves {
            let t = k_el(f, *t);
            match kind % 3 {
                // x ↦ x + t·y
                0 => {
                    q = &q + &(&p * &t);
                    s = &s + &(&r * &t);
                }
                // y ↦ y + t·x
                1 => {
                    p = &p + &(&q * &t);
                    r = &r + &(&s * &t);
                }
                // (x, y) ↦ (y, −x)
                _ => {
                    let (np, nq, nr, ns) = (q.clone(), -&p, s.clone(), -&r);
                    (p, q, r, s) = (np, nq, nr, ns);
                }
            }
        }
        let tp = |e: i64| -> KElement {
            match f {
                Field::Q => f.one(),
                Field::QI => f.omega().powi(e).unwrap(),
                _ => {
                    let eps = f.descriptor().fundamental_unit.clone().unwrap();
                    (&eps * &eps).powi(e).unwrap()
                }
            }
        };
        let w = tp(unit_exp.0);
        // scaling the first column by a totally positive unit keeps ps − qr in U⁺
        p = &p * &w;
        r = &r * &w;
        FormTransformation::new(p, q, r, s, tp(unit_exp.1)).unwrap()
    }

    type Case = (
        usize,
        (i64, i64),
        (i64, i64),
        (i64, i64),
        Vec<(u8, (i64, i64))>,
        (i64, i64),
    );

    fn strat() -> impl Strategy<Value = Case> {
        let c = || (-5i64..=5, -5i64..=5);
        (
            0usize..5,
            c(),
            c(),
            c(),
            proptest::collection::vec((0u8..3, (-3i64..=3, -3i64..=3)), 0..5),
            (-2i64..=2, -2i64..=2),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn disc_scales(x in strat()) {
            let (fi, a, b, c, moves, ue) = x;
            let f = FIELDS[fi];
            let q = QuadraticForm::new(k_el(f, a), k_el(f, b), k_el(f, c));
            let t = random_transform(f, &moves, ue);
            let qt = transform(&q, &t).unwrap();
            let k = &t.u * &t.det();
            prop_assert_eq!(disc(&qt), &(&k * &k) * &disc(&q));
            prop_assert_eq!(inverse_transform(&qt, &t).unwrap(), q.clone());
            prop_assert_eq!(is_primitive(&qt), is_primitive(&q));
            prop_assert!(verify_equivalence_witness(&q, &qt, &t));
            for (x0, y0) in [((1, 0), (0, 1)), ((2, -1), (3, 1)), ((-1, 2), (1, 1))] {
                let (x0, y0) = (k_el(f, x0), k_el(f, y0));
                let lhs = qt.eval(&x0, &y0);
                let rhs = &t.u * &q.eval(&(&(&t.p * &x0) + &(&t.q * &y0)), &(&(&t.r * &x0) + &(&t.s * &y0)));
                prop_assert_eq!(lhs, rhs);
            }
            if disc(&q).is_totally_negative() && f.r() > 0 && !disc(&q).is_zero() {
                prop_assert_eq!(is_tpd(&qt).unwrap(), is_tpd(&q).unwrap());
            }
        }

        #[test]
        fn roots_transport(x in strat()) {
            let (fi, a, b, c, moves, _) = x;
            let f = FIELDS[fi];
            let q = QuadraticForm::new(k_el(f, a), k_el(f, b), k_el(f, c));
            if q.a.is_zero() || crate::base_field::sqrt_k(&disc(&q)).is_some() {
                return Ok(());
            }
            let t = random_transform(f, &moves, (0, 0));
            let t = FormTransformation { u: f.one(), ..t };
            let qt = transform(&q, &t).unwrap();
            prop_assert!(root_transport_check(&q, &qt, &t));
        }

        #[test]
        fn reduction_is_class_invariant(a in 1i64..40, b in -40i64..40, moves in proptest::collection::vec((0u8..3, (-3i64..=3, 0i64..=0)), 0..6)) {
            let d = b * b - 4 * a * 50;
            prop_assume!(d < 0);
            let c = 50;
            let q = qf(a, b, c);
            let r = reduce_form_q(&q).unwrap();
            let t = random_transform(Field::Q, &moves, (0, 0));
            let qt = transform(&q, &t).unwrap();
            prop_assert_eq!(reduce_form_q(&qt).unwrap(), r.clone());
            prop_assert_eq!(disc(&r), disc(&q));
            let (ra, rb, rc) = int_coeffs(&r).unwrap();
            prop_assert!(rb.abs() <= ra && ra <= rc);
        }
    }
}
