// SPDX-License-Identifier: Apache-2.0

//! Fractional `O_L`-ideals given by `O_K`-module bases `[α, β]`, their
//! orientation and the group law on oriented ideals.

mod equivalence;

use num_traits::Signed;
use serde::Serialize;

use crate::base_field::arith::{euclid_quotient, round_quotient};
use crate::base_field::{gcd_all, normalize_associate, Field, KElement, SignVector};
use crate::error::{Error, Result};
use crate::extension::{Extension, LElement};
use crate::rational::{lcm_denominators, qi, Q};

pub use equivalence::{ideal_equivalent, oriented_equivalent, Equivalence};

/// An `O_K`-module basis `[α, β]` of a fractional `O_L`-ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IdealBasis {
    pub alpha: LElement,
    pub beta: LElement,
}

impl IdealBasis {
    pub fn new(alpha: LElement, beta: LElement) -> Self {
        Self { alpha, beta }
    }

    /// `[1, Ω]`, the basis of `O_L`.
    pub fn unit(ext: &Extension) -> Self {
        Self::new(ext.one(), ext.omega())
    }

    /// `[γ, γΩ]`.
    pub fn principal(ext: &Extension, gamma: &LElement) -> Self {
        Self::new(gamma.clone(), ext.mul(gamma, &ext.omega()))
    }

    /// `[pα + rβ, qα + sβ]`.
    pub fn transform(&self, p: &KElement, q: &KElement, r: &KElement, s: &KElement) -> Self {
        Self::new(
            &self.alpha.scale(p) + &self.beta.scale(r),
            &self.alpha.scale(q) + &self.beta.scale(s),
        )
    }

    pub fn scale(&self, ext: &Extension, gamma: &LElement) -> Self {
        Self::new(ext.mul(gamma, &self.alpha), ext.mul(gamma, &self.beta))
    }

    /// `K`-coordinates `(x, y)` with `g = xα + yβ`.
    pub fn coords(&self, g: &LElement) -> Result<(KElement, KElement)> {
        let (a, b) = (&self.alpha, &self.beta);
        let det = &(&a.x * &b.y) - &(&b.x * &a.y);
        if det.is_zero() {
            return Err(Error::DegenerateBasis);
        }
        let x = (&(&g.x * &b.y) - &(&b.x * &g.y)).checked_div(&det)?;
        let y = (&(&a.x * &g.y) - &(&a.y * &g.x)).checked_div(&det)?;
        Ok((x, y))
    }

    /// Membership of `g` in the `O_K`-module `[α, β]`.
    pub fn contains(&self, g: &LElement) -> bool {
        matches!(self.coords(g), Ok((x, y)) if x.is_integral() && y.is_integral())
    }

    pub fn same_module(&self, other: &IdealBasis) -> bool {
        self.contains(&other.alpha)
            && self.contains(&other.beta)
            && other.contains(&self.alpha)
            && other.contains(&self.beta)
    }

    /// Nondegenerate and closed under multiplication by `Ω`.
    pub fn is_ideal(&self, ext: &Extension) -> bool {
        let om = ext.omega();
        det_m(self).is_ok() && self.contains(&ext.mul(&self.alpha, &om)) && self.contains(&ext.mul(&self.beta, &om))
    }

    pub fn is_integral(&self, ext: &Extension) -> bool {
        ext.is_integral(&self.alpha) && ext.is_integral(&self.beta)
    }
}

/// `det M = (conj(α)β − α·conj(β)) / (Ω − conj Ω)`.
///
/// With `α = a₁ + a₂√D`, `β = b₁ + b₂√D` this is `2(a₁b₂ − a₂b₁)`.
pub fn det_m(b: &IdealBasis) -> Result<KElement> {
    let (a, c) = (&b.alpha, &b.beta);
    let d = &(&a.x * &c.y) - &(&a.y * &c.x);
    if d.is_zero() {
        return Err(Error::DegenerateBasis);
    }
    Ok(&d + &d)
}

pub fn orientation(b: &IdealBasis) -> Result<SignVector> {
    det_m(b)?.signs()
}

/// The relative norm of the ideal is generated by `det M`.
pub fn rel_norm_ideal(b: &IdealBasis) -> Result<KElement> {
    det_m(b)
}

/// Two-element basis of the `O_K`-module spanned by `gens`.
///
/// Triangularises the `{1, Ω}` coordinates over `O_K`: the returned basis is
/// `[a, s + cΩ]` with `a, c` normalised associates and `s` reduced modulo
/// `a`, so equal modules give equal bases.
pub fn reduce_generators(gens: &[LElement], ext: &Extension) -> Result<IdealBasis> {
    let coords: Vec<(KElement, KElement)> = gens.iter().map(|g| ext.omega_coords(g)).collect();
    let k = lcm_denominators(coords.iter().flat_map(|(s, t)| [s.c0(), s.c1(), t.c0(), t.c1()]));
    let kq = qi(k);
    let mut rows: Vec<(KElement, KElement)> = coords.iter().map(|(s, t)| (s.scale(&kq), t.scale(&kq))).collect();

    loop {
        let live: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].1.is_zero()).collect();
        if live.len() <= 1 {
            break;
        }
        let p = *live
            .iter()
            .min_by(|&&i, &&j| rows[i].1.norm().abs().cmp(&rows[j].1.norm().abs()).then(i.cmp(&j)))
            .expect("nonempty");
        let (sp, tp) = rows[p].clone();
        for &j in &live {
            if j == p {
                continue;
            }
            let q = euclid_quotient(&rows[j].1, &tp)?;
            rows[j].0 = &rows[j].0 - &(&q * &sp);
            rows[j].1 = &rows[j].1 - &(&q * &tp);
        }
    }
    let Some(p) = rows.iter().position(|(_, t)| !t.is_zero()) else {
        return Err(Error::RankDeficient);
    };
    let (sp, tp) = rows[p].clone();
    let a = gcd_all(rows.iter().filter(|(_, t)| t.is_zero()).map(|(s, _)| s))?;
    if a.is_zero() {
        return Err(Error::RankDeficient);
    }
    let c = normalize_associate(&tp);
    let u = c.checked_div(&tp)?;
    let mut s = &sp * &u;
    s = &s - &(&round_quotient(&s, &a)? * &a);

    let inv = Q::new(1.into(), kq.to_integer());
    Ok(IdealBasis::new(
        ext.from_k(a.scale(&inv)),
        ext.from_omega_coords(&s.scale(&inv), &c.scale(&inv)),
    ))
}

/// An ideal together with a sign vector `ε ∈ {±1}^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedIdeal {
    ext: Extension,
    basis: IdealBasis,
    eps: SignVector,
}

impl OrientedIdeal {
    /// Checks that `basis` spans an ideal and that its orientation is `eps`.
    pub fn new(ext: &Extension, basis: IdealBasis, eps: SignVector) -> Result<Self> {
        let o = Self::unchecked(ext, basis, eps)?;
        if orientation(&o.basis)? != o.eps {
            return Err(Error::OrientationMismatch);
        }
        Ok(o)
    }

    /// Like [`OrientedIdeal::new`], but rescales `α` by a unit of `O_K` when
    /// the orientation of `basis` differs from `eps`.
    pub fn adjusted(ext: &Extension, basis: IdealBasis, eps: SignVector) -> Result<Self> {
        let mut o = Self::unchecked(ext, basis, eps)?;
        let have = orientation(&o.basis)?;
        if have != o.eps {
            let u = ext.base().unit_with_signs(&(&have * &o.eps))?;
            o.basis.alpha = o.basis.alpha.scale(&u);
        }
        Ok(o)
    }

    /// Oriented by the sign vector of its own `det M`.
    pub fn from_basis(ext: &Extension, basis: IdealBasis) -> Result<Self> {
        let eps = orientation(&basis)?;
        Self::new(ext, basis, eps)
    }

    fn unchecked(ext: &Extension, basis: IdealBasis, eps: SignVector) -> Result<Self> {
        let f = ext.base();
        for e in [&basis.alpha, &basis.beta] {
            if e.field() != f {
                return Err(Error::FieldMismatch);
            }
        }
        if eps.len() != f.r() {
            return Err(Error::SignLength {
                expected: f.r(),
                got: eps.len(),
            });
        }
        if !basis.is_ideal(ext) {
            return Err(if det_m(&basis).is_err() {
                Error::DegenerateBasis
            } else {
                Error::NotAnIdeal
            });
        }
        Ok(Self {
            ext: ext.clone(),
            basis,
            eps,
        })
    }

    /// `([1, Ω]; +1, …, +1)`, the neutral element.
    pub fn unit(ext: &Extension) -> Self {
        let eps = SignVector::positive(ext.base().r());
        Self::new(ext, IdealBasis::unit(ext), eps).expect("O_L is an ideal")
    }

    /// `((γ); sgn N(γ))` with basis `[γ, γΩ]`.
    pub fn principal(ext: &Extension, gamma: &LElement) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Self::from_basis(ext, IdealBasis::principal(ext, gamma))
    }

    pub fn ext(&self) -> &Extension {
        &self.ext
    }

    pub fn basis(&self) -> &IdealBasis {
        &self.basis
    }

    pub fn eps(&self) -> &SignVector {
        &self.eps
    }

    pub fn det_m(&self) -> KElement {
        det_m(&self.basis).expect("validated basis")
    }

    /// `γ·(I; ε) = (γI; ε·sgn N(γ))`.
    pub fn scale(&self, gamma: &LElement) -> Result<Self> {
        let s = self.ext.rel_norm(gamma).signs()?;
        Self::new(&self.ext, self.basis.scale(&self.ext, gamma), &self.eps * &s)
    }

    /// Same oriented ideal, compared as modules.
    pub fn same(&self, other: &OrientedIdeal) -> bool {
        self.ext == other.ext && self.eps == other.eps && self.basis.same_module(&other.basis)
    }

    /// Canonical representative: reduced basis, unit-adjusted to `eps`.
    pub fn normalized(&self) -> Self {
        let b = reduce_generators(&[self.basis.alpha.clone(), self.basis.beta.clone()], &self.ext)
            .expect("validated basis");
        Self::adjusted(&self.ext, b, self.eps.clone()).expect("validated basis")
    }
}

impl Serialize for OrientedIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrientedIdeal", 3)?;
        st.serialize_field("alpha", &self.basis.alpha)?;
        st.serialize_field("beta", &self.basis.beta)?;
        st.serialize_field("eps", &self.eps)?;
        st.end()
    }
}

/// Denotes `((γ); sgn N(γ))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalOrientedIdeal {
    pub gamma: LElement,
}

impl PrincipalOrientedIdeal {
    pub fn to_oriented(&self, ext: &Extension) -> Result<OrientedIdeal> {
        OrientedIdeal::principal(ext, &self.gamma)
    }
}

/// `(IJ; εδ)`, with a reduced basis whose orientation is `εδ`.
pub fn ideal_mul(a: &OrientedIdeal, b: &OrientedIdeal) -> Result<OrientedIdeal> {
    if a.ext != b.ext {
        return Err(Error::ExtensionMismatch);
    }
    let ext = &a.ext;
    let (x, y) = (&a.basis, &b.basis);
    let gens = [
        ext.mul(&x.alpha, &y.alpha),
        ext.mul(&x.alpha, &y.beta),
        ext.mul(&x.beta, &y.alpha),
        ext.mul(&x.beta, &y.beta),
    ];
    let basis = reduce_generators(&gens, ext)?;
    OrientedIdeal::adjusted(ext, basis, &a.eps * &b.eps)
}

/// `([conj α, −conj β]; ε)`, the inverse class.
pub fn conj_inverse(a: &OrientedIdeal) -> OrientedIdeal {
    let basis = IdealBasis::new(a.basis.alpha.conj(), -&a.basis.beta.conj());
    OrientedIdeal::new(&a.ext, basis, a.eps.clone()).expect("conjugate basis keeps det M")
}

/// Integral basis of `O_K` over `Z` applied to an `O_K`-basis: a `Z`-basis
/// of the same module.
pub(crate) fn z_basis(ext: &Extension, b: &IdealBasis) -> Vec<LElement> {
    let f: Field = ext.base();
    if f.is_rational() {
        return vec![b.alpha.clone(), b.beta.clone()];
    }
    let w = f.omega();
    vec![b.alpha.clone(), b.alpha.scale(&w), b.beta.clone(), b.beta.scale(&w)]
}
