// SPDX-License-Identifier: Apache-2.0

//! Euclidean arithmetic in `O_K`: division with remainder, gcds, associate
//! normalisation, square roots, factorisation and the fundamental test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Field, KElement, OmegaKind};
use crate::error::{Error, Result};
use crate::rational::{factor_int, qi, round_half_up, sqrt_rational, Q};

/// Quotient with coordinates rounded to the nearest integers. Deterministic
/// and invariant under shifting `x` by multiples of `y`.
pub(crate) fn round_quotient(x: &KElement, y: &KElement) -> Result<KElement> {
    let t = x.checked_div(y)?;
    Ok(KElement::new(
        x.field(),
        qi(round_half_up(t.c0())),
        qi(round_half_up(t.c1())),
    ))
}

/// Quotient `q` with `|N(x − q·y)| < |N(y)|`. Tries the rounded quotient and
/// its neighbours and keeps the smallest remainder.
pub(crate) fn euclid_quotient(x: &KElement, y: &KElement) -> Result<KElement> {
    let f = x.field();
    let base = round_quotient(x, y)?;
    let mut best = base.clone();
    let mut best_norm = (x - &(&base * y)).norm().abs();
    let shifts: &[(i64, i64)] = if f.is_rational() {
        &[(-1, 0), (1, 0)]
    } else {
        &[(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    };
    for &(a, b) in shifts {
        let cand = &base + &f.ints(a, b);
        let n = (x - &(&cand * y)).norm().abs();
        if n < best_norm {
            best = cand;
            best_norm = n;
        }
    }
    debug_assert!(best_norm < y.norm().abs(), "field is not norm-Euclidean");
    Ok(best)
}

fn coord_size(x: &KElement) -> Q {
    x.c0() * x.c0() + x.c1() * x.c1()
}

/// Canonical associate of `g` under multiplication by units.
///
/// * `Q`: the positive associate.
/// * `Q(i)`: the associate with `c0 > 0, c1 ≥ 0`.
/// * real quadratic: the associate `±ε^k·g` with the smallest coordinate
///   size `c0² + c1²` (ties broken by coordinates), signed so `σ_1 > 0`.
pub fn normalize_associate(g: &KElement) -> KElement {
    let f = g.field();
    if g.is_zero() {
        return g.clone();
    }
    match f {
        Field::Q => KElement::from_rational(f, g.c0().abs()),
        Field::QI => f
            .torsion_units()
            .iter()
            .map(|u| u * g)
            .find(|x| x.c0().is_positive() && !x.c1().is_negative())
            .expect("one associate lies in the first quadrant"),
        _ => {
            let eps = f.descriptor().fundamental_unit.clone().expect("unit");
            let eps_inv = eps.inv().expect("unit");
            let mut cur = g.clone();
            let mut size = coord_size(&cur);
            loop {
                let up = &cur * &eps;
                let down = &cur * &eps_inv;
                let (su, sd) = (coord_size(&up), coord_size(&down));
                if su < size && su <= sd {
                    cur = up;
                    size = su;
                } else if sd < size {
                    cur = down;
                    size = sd;
                } else {
                    break;
                }
            }
            // the size along the orbit is not convex; settle ties in a window
            let mut best: Option<(Q, KElement)> = None;
            let mut probe = cur.clone();
            for _ in 0..3 {
                probe = &probe * &eps_inv;
            }
            for _ in 0..7 {
                let signed = if probe.sign_at(0).expect("nonzero") > 0 {
                    probe.clone()
                } else {
                    -&probe
                };
                let s = coord_size(&signed);
                let better = match &best {
                    None => true,
                    Some((bs, bx)) => s < *bs || (s == *bs && signed.coord_cmp(bx).is_gt()),
                };
                if better {
                    best = Some((s, signed));
                }
                probe = &probe * &eps;
            }
            best.expect("window is nonempty").1
        }
    }
}

/// Greatest common divisor in `O_K` via the Euclidean algorithm, normalised
/// with [`normalize_associate`].
pub fn gcd(x: &KElement, y: &KElement) -> Result<KElement> {
    x.require_integral()?;
    y.require_integral()?;
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let q = euclid_quotient(&a, &b)?;
        let r = &a - &(&q * &b);
        a = b;
        b = r;
    }
    Ok(normalize_associate(&a))
}

/// gcd of a nonempty list, skipping zeros. All zero gives `ZeroArgument`.
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a KElement>) -> Result<KElement> {
    let mut acc: Option<KElement> = None;
    for x in xs {
        x.require_integral()?;
        if x.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => normalize_associate(x),
            Some(g) => gcd(&g, x)?,
        });
    }
    acc.ok_or(Error::ZeroArgument)
}

/// Whether `t² ≡ d (mod 4 O_K)` for some `t`, by exhausting `O_K / 4O_K`.
pub fn is_qr_mod4(d: &KElement) -> Result<bool> {
    d.require_integral()?;
    let four = BigInt::from(4);
    Ok(d.field().residues(4).iter().any(|t| {
        let (c0, c1) = (t * t - d).int_coords().expect("integral");
        c0.is_multiple_of(&four) && c1.is_multiple_of(&four)
    }))
}

fn sqrt_m_element(f: Field) -> KElement {
    match f.descriptor().omega_kind {
        OmegaKind::None => f.one(),
        OmegaKind::Sqrt => f.omega(),
        OmegaKind::Half => f.ints(-1, 2),
    }
}

/// A square root of `d` in `K`, if one exists.
pub fn sqrt_k(d: &KElement) -> Option<KElement> {
    let f = d.field();
    if d.is_zero() {
        return Some(d.clone());
    }
    if f.is_rational() {
        return sqrt_rational(d.c0()).map(|r| KElement::from_rational(f, r));
    }
    // x² = d  ⇒  N(x) = ±√N(d), Tr(x)² = Tr(d) + 2N(x), x = (d + N(x))/Tr(x)
    let s = sqrt_rational(&d.norm())?;
    for nx in [s.clone(), -s] {
        let t2 = d.trace() + &nx * qi(2.into());
        let Some(t) = sqrt_rational(&t2) else {
            continue;
        };
        if t.is_zero() {
            // x = c·√m with x² = c²·m rational
            if !d.is_rational() {
                continue;
            }
            let c2 = d.c0() / qi(f.m().into());
            if let Some(c) = sqrt_rational(&c2) {
                let x = sqrt_m_element(f).scale(&c);
                if &x * &x == *d {
                    return Some(x);
                }
            }
            continue;
        }
        let x = (d + &KElement::from_rational(f, nx)).scale(&t.recip());
        if &x * &x == *d {
            return Some(x);
        }
    }
    None
}

/// `x = unit · ∏ prime^exponent` with primes normalised.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: KElement,
    pub primes: Vec<(KElement, u32)>,
}

impl Factorization {
    pub fn product(&self) -> KElement {
        self.primes
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

/// Primes of `O_K` above the rational prime `q` (Dedekind–Kummer on the
/// minimal polynomial of `ω`, generators via [`gcd`]).
fn primes_above(f: Field, q: &BigInt) -> Result<Vec<KElement>> {
    let qk = KElement::from_bigint(f, q.clone());
    if f.is_rational() {
        return Ok(vec![qk]);
    }
    let d = f.descriptor();
    let mut roots = Vec::new();
    let mut rho = BigInt::zero();
    while &rho < q {
        let v = &rho * &rho - &d.omega_trace * &rho + &d.omega_norm;
        if v.mod_floor(q).is_zero() {
            roots.push(rho.clone());
        }
        rho += 1;
    }
    if roots.is_empty() {
        return Ok(vec![qk]);
    }
    roots
        .iter()
        .map(|rho| gcd(&qk, &(f.omega() - KElement::from_bigint(f, rho.clone()))))
        .collect()
}

/// Prime factorisation of a nonzero element of `O_K`.
pub fn factor(x: &KElement) -> Result<Factorization> {
    x.require_integral()?;
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let f = x.field();
    let n = x.norm().abs().to_integer();
    let mut rest = x.clone();
    let mut primes = Vec::new();
    for (q, _) in factor_int(&n) {
        for p in primes_above(f, &q)? {
            let mut e = 0;
            while let Some(y) = rest.exact_div(&p) {
                rest = y;
                e += 1;
            }
            if e > 0 {
                primes.push((p, e));
            }
        }
    }
    debug_assert!(rest.is_unit());
    Ok(Factorization { unit: rest, primes })
}

/// The fundamental-element predicate: `d` is a square mod 4 and every
/// non-unit `p` with `p² | d` divides 2 and leaves `d/p²` a non-square mod 4.
///
/// Squares in `K` are rejected with `SquareInput`.
pub fn is_fundamental(d: &KElement) -> Result<bool> {
    d.require_integral()?;
    if d.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if sqrt_k(d).is_some() {
        return Err(Error::SquareInput(d.to_string()));
    }
    if !is_qr_mod4(d)? {
        return Ok(false);
    }
    let f = d.field();
    let fac = factor(d)?;
    let squares: Vec<(KElement, u32)> = fac
        .primes
        .iter()
        .filter(|(_, e)| *e >= 2)
        .map(|(p, e)| (p.clone(), e / 2))
        .collect();
    // every non-unit p with p² | d is, up to a unit, a product of these
    let two = f.int(2);
    let mut exps = vec![0u32; squares.len()];
    loop {
        let mut i = 0;
        while i < exps.len() && exps[i] == squares[i].1 {
            exps[i] = 0;
            i += 1;
        }
        if i == exps.len() {
            return Ok(true);
        }
        exps[i] += 1;
        let p = squares
            .iter()
            .zip(&exps)
            .fold(f.one(), |acc, ((q, _), e)| &acc * &q.pow(*e));
        if !p.divides(&two) {
            return Ok(false);
        }
        let rest = d.exact_div(&(&p * &p)).expect("p² | d");
        if is_qr_mod4(&rest)? {
            return Ok(false);
        }
    }
}
