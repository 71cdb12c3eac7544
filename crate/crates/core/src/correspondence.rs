// SPDX-License-Identifier: Apache-2.0

//! The maps between oriented ideals and quadratic forms of discriminant
//! `D`, and the group law they induce on forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::base_field::{sqrt_k, Field, KElement, SignVector};
use crate::error::{Error, Result};
use crate::extension::{im_part, make_extension, Extension, LElement};
use crate::forms::{disc, is_primitive, QuadraticForm};
use crate::ideals::{
    det_m, ideal_equivalent, ideal_mul, orientation, oriented_equivalent, Equivalence, IdealBasis, OrientedIdeal,
};
use crate::rational::{frac, isqrt};
use crate::units::fundamental_unit;

/// `Q(x, y) = N(αx − βy) / det M`.
pub fn phi(a: &OrientedIdeal) -> Result<QuadraticForm> {
    let b = a.basis();
    let ext = a.ext();
    let det = det_m(b)?;
    if orientation(b)? != *a.eps() {
        return Err(Error::OrientationMismatch);
    }
    let inv = det.inv()?;
    let (al, be) = (&b.alpha, &b.beta);
    let mixed = ext.mul(&al.conj(), be);
    // conj(α)β + α·conj(β) is the relative trace of conj(α)β
    let q = QuadraticForm::new(
        &ext.rel_norm(al) * &inv,
        -&(&mixed.rel_trace() * &inv),
        &ext.rel_norm(be) * &inv,
    );
    debug_assert!(q.is_integral() && disc(&q) == ext.d);
    Ok(q)
}

/// The totally positive `u` with `u² = Disc(Q)/D`.
fn disc_unit(q: &QuadraticForm, ext: &Extension) -> Result<KElement> {
    let d = disc(q);
    let not_in_class = || Error::DiscriminantNotInClass(d.to_string());
    let ratio = d.checked_div(&ext.d)?;
    if !ratio.is_unit() {
        return Err(not_in_class());
    }
    let root = sqrt_k(&ratio).ok_or_else(not_in_class)?;
    let f = ext.base();
    let u = match f {
        // no real embeddings: every unit counts as totally positive; pick
        // the root with c0 > 0, or c0 = 0 and c1 > 0
        Field::QI => {
            let pos = root.c0().is_positive() || (root.c0().is_zero() && root.c1().is_positive());
            if pos {
                root
            } else {
                -root
            }
        }
        _ => {
            if root.is_totally_positive() {
                root
            } else if (-&root).is_totally_positive() {
                -root
            } else {
                return Err(not_in_class());
            }
        }
    };
    Ok(u)
}

/// `([a, (−b + √Disc(Q))/2]; sgn a)`, where `√Disc(Q) = u√D`.
pub fn psi(q: &QuadraticForm, ext: &Extension) -> Result<OrientedIdeal> {
    if q.field() != ext.base() {
        return Err(Error::FieldMismatch);
    }
    if !is_primitive(q) {
        return Err(Error::NotPrimitive);
    }
    let u = disc_unit(q, ext)?;
    let half = frac(1, 2);
    let beta = LElement::new((-&q.b).scale(&half), u.scale(&half));
    let basis = IdealBasis::new(ext.from_k(q.a.clone()), beta);
    OrientedIdeal::new(ext, basis, q.a.signs()?)
}

/// Class of `Q₁·Q₂`, computed as `Φ(Ψ(Q₁)·Ψ(Q₂))`.
pub fn compose(q1: &QuadraticForm, q2: &QuadraticForm, ext: &Extension) -> Result<QuadraticForm> {
    phi(&ideal_mul(&psi(q1, ext)?, &psi(q2, ext)?)?)
}

/// `x² + wxy + zy²`, the image of `([1, Ω]; +…+)`.
pub fn identity_form(ext: &Extension) -> QuadraticForm {
    QuadraticForm::new(ext.base().one(), ext.w.clone(), ext.z.clone())
}

/// `(a, −b, c)`.
pub fn inverse_form(q: &QuadraticForm) -> Result<QuadraticForm> {
    if !is_primitive(q) {
        return Err(Error::NotPrimitive);
    }
    Ok(QuadraticForm::new(q.a.clone(), -&q.b, q.c.clone()))
}

/// `γ = det M / conj(α)`, which maps `Ψ(Φ(a))` onto `a`.
pub fn roundtrip_gamma(a: &OrientedIdeal) -> Result<LElement> {
    let b = a.basis();
    let det = det_m(b)?;
    let ext = a.ext();
    ext.div(&ext.from_k(det), &b.alpha.conj())
}

/// `γ·Ψ(Φ(a)) = a` as oriented ideals, with `γ` from [`roundtrip_gamma`].
pub fn verify_roundtrip(a: &OrientedIdeal) -> Result<bool> {
    let gamma = roundtrip_gamma(a)?;
    let back = psi(&phi(a)?, a.ext())?;
    Ok(back.scale(&gamma)?.same(a))
}

/// At the real embedding `i`: `σ_i(a) > 0` for the leading coefficient of
/// `Φ(a)`, `σ_i(det M) > 0`, and `σ_i(Im(β/α)) > 0`.
pub fn tpd_sign_check(a: &OrientedIdeal, i: usize) -> Result<(bool, bool, bool)> {
    let ext = a.ext();
    if !ext.d.is_totally_negative() {
        return Err(Error::DiscriminantNotTotallyNegative);
    }
    let r = ext.base().r();
    if i >= r {
        return Err(Error::EmbeddingIndex { index: i, count: r });
    }
    let b = a.basis();
    let form = phi(a)?;
    let ratio = ext.div(&b.beta, &b.alpha)?;
    Ok((
        form.a.sign_at(i)? > 0,
        det_m(b)?.sign_at(i)? > 0,
        im_part(&ratio).sign_at(i)? > 0,
    ))
}

/// Class of `Q₁` equals class of `Q₂`, decided through `Ψ`.
pub fn forms_equivalent(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    ext: &Extension,
    search_bound: u64,
) -> Result<Equivalence> {
    oriented_equivalent(&psi(q1, ext)?, &psi(q2, ext)?, search_bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OclReport {
    /// 1: `D < 0`; 2: `D > 0`, `N(η) = +1`; 3: `D > 0`, `N(η) = −1`.
    pub case: u8,
    /// Number of ideal classes.
    pub h: usize,
    /// Number of oriented ideal classes.
    pub ocl_order: usize,
    pub fundamental_unit: Option<LElement>,
    pub unit_norm: Option<i64>,
    /// Reduced bases of one ideal per class.
    pub class_reps: Vec<IdealBasis>,
}

impl OclReport {
    /// `2h` in cases 1 and 2, `h` in case 3.
    pub fn expected_order(&self) -> usize {
        if self.case == 3 {
            self.h
        } else {
            2 * self.h
        }
    }
}

/// Case, class number and oriented class number of `Q(√D)`.
///
/// Both counts come from classifying the primitive integral ideals
/// `[a, b + Ω]` of norm below the Minkowski-type bound with the complete
/// equivalence tests available over `Q`.
pub fn ocl_structure_q(d: &KElement) -> Result<OclReport> {
    if d.field() != Field::Q {
        return Err(Error::WrongBase);
    }
    let ext = make_extension(Field::Q, d.clone())?;
    let dz = d.c0().to_integer();
    let (case, unit, unit_norm) = if dz.is_negative() {
        (1, None, None)
    } else {
        let eta = fundamental_unit(&ext)?;
        let n: i64 = if ext.rel_norm(&eta).c0().is_positive() { 1 } else { -1 };
        (if n == 1 { 2 } else { 3 }, Some(eta), Some(n))
    };

    let ideals = small_ideals(&ext);
    let mut reps: Vec<IdealBasis> = Vec::new();
    for i in &ideals {
        if !contains_class(&reps, |r| ideal_equivalent(&ext, r, i, u64::MAX))? {
            reps.push(i.clone());
        }
    }
    let mut oriented: Vec<OrientedIdeal> = Vec::new();
    for i in &ideals {
        for eps in [SignVector::positive(1), SignVector::negative(1)] {
            let o = OrientedIdeal::adjusted(&ext, i.clone(), eps)?;
            if !contains_class(&oriented, |r| oriented_equivalent(r, &o, u64::MAX))? {
                oriented.push(o);
            }
        }
    }
    Ok(OclReport {
        case,
        h: reps.len(),
        ocl_order: oriented.len(),
        fundamental_unit: unit,
        unit_norm,
        class_reps: reps,
    })
}

fn contains_class<T>(reps: &[T], eq: impl Fn(&T) -> Result<Equivalence>) -> Result<bool> {
    for r in reps {
        match eq(r)? {
            Equivalence::Equivalent(_) => return Ok(true),
            Equivalence::NotEquivalent => {}
            Equivalence::Unknown => unreachable!("equivalence over Q is decided"),
        }
    }
    Ok(false)
}

/// Primitive integral ideals `[a, b + Ω]`, `0 ≤ b < a`, `a | N(b + Ω)`,
/// with `a` up to `√(|D|/3)` (`D < 0`) or `√D/2` (`D > 0`). Every ideal
/// class contains one of them.
fn small_ideals(ext: &Extension) -> Vec<IdealBasis> {
    let f = Field::Q;
    let dz = ext.d.c0().to_integer();
    let bound = if dz.is_negative() {
        isqrt(&(-&dz / BigInt::from(3)))
    } else {
        isqrt(&dz) / BigInt::from(2)
    }
    .max(BigInt::one());
    let (w, z) = (ext.w.c0().to_integer(), ext.z.c0().to_integer());
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while a <= bound {
        let mut b = BigInt::zero();
        while b < a {
            let n: BigInt = &b * &b - &w * &b + &z;
            if n.is_multiple_of(&a) {
                let beta = &ext.from_k(KElement::from_bigint(f, b.clone())) + &ext.omega();
                out.push(IdealBasis::new(ext.from_k(KElement::from_bigint(f, a.clone())), beta));
            }
            b += 1;
        }
        a += 1;
    }
    out
}
