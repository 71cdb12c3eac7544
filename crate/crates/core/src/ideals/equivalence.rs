// SPDX-License-Identifier: Apache-2.0

//! Deciding whether two (oriented) ideals lie in the same class by searching
//! for a generator of `J·conj_inverse(I)`.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{conj_inverse, det_m, reduce_generators, z_basis, IdealBasis, OrientedIdeal};
use crate::base_field::{KElement, SignVector};
use crate::error::{Error, Result};
use crate::extension::{Extension, LElement};
use crate::lattice::{enumerate, gram_from_form};
use crate::rational::{qi, Q};
use crate::units::{fundamental_unit, unit_upper_bound};

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Equivalence {
    /// `γ` with `γI = J` (and, for oriented ideals, `sgn N(γ) = εδ`).
    Equivalent(LElement),
    NotEquivalent,
    /// The bounded search found no witness and could not rule one out.
    Unknown,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

/// Is there `γ ∈ L` with `γI = J` and `sgn N(γ) = ε·δ`?
///
/// Complete for `K = Q` and for real quadratic `K` with `D` totally negative.
/// Otherwise the search examines at most `search_bound` lattice vectors and
/// may answer [`Equivalence::Unknown`].
pub fn oriented_equivalent(a: &OrientedIdeal, b: &OrientedIdeal, search_bound: u64) -> Result<Equivalence> {
    if a.ext != b.ext {
        return Err(Error::ExtensionMismatch);
    }
    let required = &a.eps * &b.eps;
    if a.same(b) {
        return Ok(Equivalence::Equivalent(a.ext.one()));
    }
    if a.ext.d.is_totally_negative() && !required.all_positive() {
        return Ok(Equivalence::NotEquivalent);
    }
    equivalent(&a.ext, &a.basis, &b.basis, Some(&required), search_bound)
}

/// Is there `γ ∈ L` with `γI = J`, ignoring orientations?
pub fn ideal_equivalent(ext: &Extension, a: &IdealBasis, b: &IdealBasis, search_bound: u64) -> Result<Equivalence> {
    if a.same_module(b) {
        return Ok(Equivalence::Equivalent(ext.one()));
    }
    equivalent(ext, a, b, None, search_bound)
}

fn equivalent(
    ext: &Extension,
    a: &IdealBasis,
    b: &IdealBasis,
    required: Option<&SignVector>,
    search_bound: u64,
) -> Result<Equivalence> {
    // J·[conj α, −conj β] = det M(I)·J·I⁻¹
    let inv = conj_inverse(&OrientedIdeal::from_basis(ext, a.clone())?);
    let p = inv.basis;
    let gens = [
        ext.mul(&b.alpha, &p.alpha),
        ext.mul(&b.alpha, &p.beta),
        ext.mul(&b.beta, &p.alpha),
        ext.mul(&b.beta, &p.beta),
    ];
    let prod = reduce_generators(&gens, ext)?;
    let d_i = det_m(a)?;
    Ok(match find_generator(ext, &prod, required, search_bound)? {
        Search::Found(g) => {
            let gamma = g.scale(&d_i.inv()?);
            debug_assert!(a.scale(ext, &gamma).same_module(b));
            Equivalence::Equivalent(gamma)
        }
        Search::Absent => Equivalence::NotEquivalent,
        Search::Exhausted => Equivalence::Unknown,
    })
}

#[allow(clippy::large_enum_variant)]
pub(crate) enum Search {
    Found(LElement),
    Absent,
    Exhausted,
}

/// Looks for `g` with `(g) = P` and, if given, `sgn N(g) = required`.
pub(crate) fn find_generator(
    ext: &Extension,
    p: &IdealBasis,
    required: Option<&SignVector>,
    search_bound: u64,
) -> Result<Search> {
    let f = ext.base();
    let det = det_m(p)?;
    let basis = z_basis(ext, p);
    let combine = |v: &[BigInt]| -> LElement {
        basis.iter().zip(v).fold(ext.zero(), |acc, (e, c)| {
            &acc + &e.scale(&KElement::from_bigint(f, c.clone()))
        })
    };
    let sign_ok = |n: &KElement| -> bool { required.is_none_or(|r| n.signs().is_ok_and(|s| s == *r)) };

    if f.is_rational() && ext.d.c0().is_negative() {
        // N(g) = x² + |D|y² is positive definite, and (g) = P iff N(g) = |det|
        let target = det.c0().abs();
        let q = |g: &LElement| ext.rel_norm(g).c0().clone();
        let found = search(&basis, &combine, q, &target, |g| *ext.rel_norm(g).c0() == target)?;
        return Ok(match found {
            Some(g) if sign_ok(&ext.rel_norm(&g)) => Search::Found(g),
            _ => Search::Absent,
        });
    }

    if f.is_rational() {
        // Some generator has σ₁/σ₂ ∈ [1/η, η], so x² + Dy² ≤ |det|(η + 1)/2.
        let eta = fundamental_unit(ext)?;
        let target = det.c0().abs();
        let bound = &target * (unit_upper_bound(ext, &eta) + qi(1.into())) / qi(2.into());
        let q = |g: &LElement| g.x.c0() * g.x.c0() + ext.d.c0() * g.y.c0() * g.y.c0();
        let found = search(&basis, &combine, q, &bound, |g| ext.rel_norm(g).c0().abs() == target)?;
        let Some(g) = found else {
            return Ok(Search::Absent);
        };
        if sign_ok(&ext.rel_norm(&g)) {
            return Ok(Search::Found(g));
        }
        if ext.rel_norm(&eta).c0().is_negative() {
            return Ok(Search::Found(ext.mul(&g, &eta)));
        }
        return Ok(Search::Absent);
    }

    if f.r() > 0 && ext.d.is_totally_negative() {
        // N(g) ≻ 0, so a generator may be taken with N(g) = det·v exactly,
        // v the unit making it totally positive.
        if required.is_some_and(|r| !r.all_positive()) {
            return Ok(Search::Absent);
        }
        let v = f.unit_with_signs(&det.signs()?)?;
        let target = &det * &v;
        let q = |g: &LElement| ext.rel_norm(g).trace();
        let found = search(&basis, &combine, q, &target.trace(), |g| ext.rel_norm(g) == target)?;
        return Ok(match found {
            Some(g) => Search::Found(g),
            None => Search::Absent,
        });
    }

    // Unit group of L unknown: search ellipsoids of doubling radius, giving
    // up once one of them holds more than `search_bound` vectors.
    let q = |g: &LElement| {
        let (s, t) = ext.omega_coords(g);
        [s.c0(), s.c1(), t.c0(), t.c1()]
            .iter()
            .map(|c| *c * *c)
            .fold(Q::zero(), |a, b| a + b)
    };
    let accept = |g: &LElement| {
        let n = ext.rel_norm(g);
        n.checked_div(&det).is_ok_and(|u| u.is_unit()) && sign_ok(&n)
    };
    let gram = gram_from_form(basis.len(), |i| q(&basis[i]), |i, j| q(&(&basis[i] + &basis[j])));
    let mut radius = (0..basis.len())
        .map(|i| gram[i][i].clone())
        .min()
        .expect("nonempty basis");
    loop {
        let mut seen: u64 = 0;
        let hit = enumerate(&gram, &radius, |v| {
            seen += 1;
            if seen > search_bound {
                return ControlFlow::Break(None);
            }
            let g = combine(v);
            if accept(&g) {
                ControlFlow::Break(Some(g))
            } else {
                ControlFlow::Continue(())
            }
        })?;
        match hit {
            Some(Some(g)) => return Ok(Search::Found(g)),
            Some(None) => return Ok(Search::Exhausted),
            None => {}
        }
        radius = &radius * qi(2.into());
    }
}

/// First `g` in the lattice with `q(g) ≤ bound` satisfying `accept`.
fn search(
    basis: &[LElement],
    combine: &impl Fn(&[BigInt]) -> LElement,
    q: impl Fn(&LElement) -> Q,
    bound: &Q,
    accept: impl Fn(&LElement) -> bool,
) -> Result<Option<LElement>> {
    let gram = gram_from_form(basis.len(), |i| q(&basis[i]), |i, j| q(&(&basis[i] + &basis[j])));
    enumerate(&gram, bound, |v| {
        let g = combine(v);
        if accept(&g) {
            ControlFlow::Break(g)
        } else {
            ControlFlow::Continue(())
        }
    })
}
