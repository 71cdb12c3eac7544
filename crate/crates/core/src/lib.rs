// SPDX-License-Identifier: Apache-2.0

//! Binary quadratic forms over the ring of integers of a base field `K` of
//! narrow class number one, and their correspondence with oriented ideal
//! classes of a quadratic extension `L = K(√D)`.

pub mod base_field;
pub mod cli;
pub mod correspondence;
pub mod error;
pub mod extension;
pub mod forms;
pub mod ideals;
pub mod json;
pub mod lattice;
pub mod rational;
pub mod units;

pub use base_field::{Field, KElement, SignVector};
pub use correspondence::{compose, identity_form, inverse_form, phi, psi, roundtrip_gamma};
pub use error::{Error, Result};
pub use extension::{make_extension, Extension, LElement};
pub use forms::{FormTransformation, QuadraticForm};
pub use ideals::{Equivalence, IdealBasis, OrientedIdeal};
