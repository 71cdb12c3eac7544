// SPDX-License-Identifier: Apache-2.0

//! Base fields `K` of narrow class number one: exact arithmetic in `K`,
//! real embeddings and signs, Euclidean division and gcds in `O_K`, and the
//! fundamental-element predicate.
//!
//! The supported fields come from the registry in `fields.toml`. Each entry
//! is norm-Euclidean, which is what makes [`gcd`] and the module reduction in
//! [`crate::ideals`] terminate.

pub(crate) mod arith;
mod element;
mod signs;

use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::parse_rational;

pub use arith::{factor, gcd, gcd_all, is_fundamental, is_qr_mod4, normalize_associate, sqrt_k, Factorization};
pub use element::{k_arith, KElement, KOp};
pub use signs::SignVector;

/// Handle to one entry of the field registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "qi")]
    QI,
    #[serde(rename = "qsqrt2")]
    QSqrt2,
    #[serde(rename = "qsqrt5")]
    QSqrt5,
    #[serde(rename = "qsqrt13")]
    QSqrt13,
}

/// How the integral generator `ω` of `O_K = Z[ω]` is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaKind {
    /// `K = Q`; there is no `ω`.
    None,
    /// `ω = √m`.
    Sqrt,
    /// `ω = (1 + √m)/2`, used when `m ≡ 1 (mod 4)`.
    Half,
}

#[derive(Debug, Deserialize)]
struct RegistryFile {
    field: Vec<RegistryEntry>,
}

#[derive(Debug, Deserialize)]
struct RegistryEntry {
    tag: Field,
    name: String,
    m: Option<i64>,
    omega: OmegaKind,
    real_embeddings: usize,
    fundamental_unit: Option<[String; 2]>,
    unit_norm_sign: i8,
}

/// Static description of a supported base field.
#[derive(Debug, Clone)]
pub struct FieldDescriptor {
    pub tag: Field,
    pub name: String,
    /// Square-free `m` with `K = Q(√m)`; `None` for `Q`.
    pub m: Option<i64>,
    pub omega_kind: OmegaKind,
    /// Number of real embeddings `r`.
    pub r: usize,
    pub fundamental_unit: Option<KElement>,
    pub unit_norm_sign: i8,
    /// `ω² = omega_trace·ω − omega_norm`.
    pub(crate) omega_trace: BigInt,
    pub(crate) omega_norm: BigInt,
}

pub const REGISTRY_TOML: &str = include_str!("fields.toml");

static REGISTRY: LazyLock<Vec<FieldDescriptor>> =
    LazyLock::new(|| load_registry(REGISTRY_TOML).expect("embedded field registry is valid"));

fn load_registry(src: &str) -> Result<Vec<FieldDescriptor>> {
    let file: RegistryFile = toml::from_str(src).map_err(|e| Error::Parse(format!("field registry: {e}")))?;
    let mut out = Vec::with_capacity(file.field.len());
    for e in file.field {
        let (omega_trace, omega_norm) = match (e.omega, e.m) {
            (OmegaKind::None, None) => (BigInt::from(0), BigInt::from(0)),
            (OmegaKind::Sqrt, Some(m)) => (BigInt::from(0), BigInt::from(-m)),
            (OmegaKind::Half, Some(m)) if m.rem_euclid(4) == 1 => (BigInt::from(1), BigInt::from((1 - m) / 4)),
            _ => {
                return Err(Error::Parse(format!(
                    "field registry: inconsistent omega/m for `{}`",
                    e.name
                )))
            }
        };
        let fundamental_unit = match &e.fundamental_unit {
            Some([c0, c1]) => Some(KElement::new(e.tag, parse_rational(c0)?, parse_rational(c1)?)),
            None => None,
        };
        out.push(FieldDescriptor {
            tag: e.tag,
            name: e.name,
            m: e.m,
            omega_kind: e.omega,
            r: e.real_embeddings,
            fundamental_unit,
            unit_norm_sign: e.unit_norm_sign,
            omega_trace,
            omega_norm,
        });
    }
    Ok(out)
}

impl Field {
    pub const ALL: [Field; 5] = [Field::Q, Field::QI, Field::QSqrt2, Field::QSqrt5, Field::QSqrt13];

    pub fn descriptor(self) -> &'static FieldDescriptor {
        REGISTRY
            .iter()
            .find(|d| d.tag == self)
            .unwrap_or_else(|| panic!("field {self:?} missing from registry"))
    }

    pub fn tag(self) -> &'static str {
        match self {
            Field::Q => "q",
            Field::QI => "qi",
            Field::QSqrt2 => "qsqrt2",
            Field::QSqrt5 => "qsqrt5",
            Field::QSqrt13 => "qsqrt13",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Field> {
        Field::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(tag.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown base field `{tag}`")))
    }

    /// Number of real embeddings.
    pub fn r(self) -> usize {
        self.descriptor().r
    }

    /// Degree of `K` over `Q`.
    pub fn degree(self) -> usize {
        if self == Field::Q {
            1
        } else {
            2
        }
    }

    pub fn is_rational(self) -> bool {
        self == Field::Q
    }

    pub(crate) fn m(self) -> i64 {
        self.descriptor().m.unwrap_or(1)
    }

    pub fn zero(self) -> KElement {
        KElement::zero(self)
    }

    pub fn one(self) -> KElement {
        KElement::one(self)
    }

    pub fn int(self, n: i64) -> KElement {
        KElement::from_int(self, n)
    }

    /// `c0 + c1·ω` with integer coordinates.
    pub fn ints(self, c0: i64, c1: i64) -> KElement {
        KElement::from_ints(self, c0, c1)
    }

    pub fn omega(self) -> KElement {
        self.ints(0, 1)
    }

    /// The integers `0..n` as coordinates of a box of residues `c0 + c1·ω`.
    pub(crate) fn residues(self, n: i64) -> Vec<KElement> {
        let mut out = Vec::new();
        for c0 in 0..n {
            if self.is_rational() {
                out.push(self.int(c0));
            } else {
                for c1 in 0..n {
                    out.push(self.ints(c0, c1));
                }
            }
        }
        out
    }

    /// Representatives of `U_K / U_K²`.
    pub fn units_mod_squares(self) -> Vec<KElement> {
        match self {
            Field::Q => vec![self.one(), self.int(-1)],
            Field::QI => vec![self.one(), self.omega()],
            _ => {
                let e = self.descriptor().fundamental_unit.clone().expect("real quadratic unit");
                vec![self.one(), self.int(-1), e.clone(), -e]
            }
        }
    }

    /// Roots of unity in `O_K`.
    pub fn torsion_units(self) -> Vec<KElement> {
        match self {
            Field::QI => vec![self.one(), self.omega(), self.int(-1), -self.omega()],
            _ => vec![self.one(), self.int(-1)],
        }
    }

    /// A unit whose sign vector is `signs`. Exists because the narrow class
    /// number is one.
    pub fn unit_with_signs(self, signs: &SignVector) -> Result<KElement> {
        if signs.len() != self.r() {
            return Err(Error::SignLength {
                expected: self.r(),
                got: signs.len(),
            });
        }
        for u in self.units_mod_squares() {
            if u.signs()? == *signs {
                return Ok(u);
            }
        }
        unreachable!("registry field without units of every sign")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor().name)
    }
}
