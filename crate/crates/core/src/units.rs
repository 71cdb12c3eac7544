// SPDX-License-Identifier: Apache-2.0

//! Fundamental unit of a real quadratic field `Q(√D)` from the period of a
//! continued fraction expansion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::base_field::{Field, KElement};
use crate::error::{Error, Result};
use crate::extension::{Extension, LElement};
use crate::rational::{isqrt, qi, Q};

/// The fundamental unit `η > 1` of `O_L` for `L = Q(√D)`, `D > 0`.
///
/// Expands `ξ₀ = (w + √D)/2` with the `(P, Q)` recurrence until a state
/// repeats; the product of the complete quotients over the period is `η`.
pub fn fundamental_unit(ext: &Extension) -> Result<LElement> {
    if ext.base() != Field::Q {
        return Err(Error::WrongBase);
    }
    let d = ext.d.c0().to_integer();
    if !d.is_positive() {
        return Err(Error::WrongBase);
    }
    let s = isqrt(&d);
    let mut p = ext.w.c0().to_integer();
    let mut q = BigInt::from(2);
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut states: Vec<(BigInt, BigInt)> = Vec::new();
    let start = loop {
        if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
            break i;
        }
        seen.insert((p.clone(), q.clone()), states.len());
        states.push((p.clone(), q.clone()));
        // floor((P + √D)/Q), √D irrational
        let a = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            -((&p + &s).div_floor(&-&q)) - 1
        };
        let p_next = &a * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        debug_assert!(!q_next.is_zero());
        p = p_next;
        q = q_next;
    };
    let mut eta = ext.one();
    for (p, q) in &states[start..] {
        let xi = LElement::new(
            KElement::from_rational(Field::Q, Q::new(p.clone(), q.clone())),
            KElement::from_rational(Field::Q, Q::new(BigInt::from(1), q.clone())),
        );
        eta = ext.mul(&eta, &xi);
    }
    if !ext.is_unit(&eta) {
        return Err(Error::NotAUnit);
    }
    Ok(eta)
}

/// Rational upper bound for `η = e₀ + e₁√D` (with `e₀, e₁ > 0`), using
/// `√D < ⌊√D⌋ + 1`.
pub(crate) fn unit_upper_bound(ext: &Extension, eta: &LElement) -> Q {
    let s: BigInt = isqrt(&ext.d.c0().to_integer()) + 1;
    eta.x.c0() + eta.y.c0() * qi(s)
}
