// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::{Deref, Mul};

use serde::{Deserialize, Serialize};

/// `(sgn σ_1(x), …, sgn σ_r(x))`, entries in `{+1, −1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "signs must be ±1");
        SignVector(signs)
    }

    pub fn positive(r: usize) -> Self {
        SignVector(vec![1; r])
    }

    pub fn negative(r: usize) -> Self {
        SignVector(vec![-1; r])
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&s| s == 1)
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }
}

impl Deref for SignVector {
    type Target = [i8];
    fn deref(&self) -> &[i8] {
        &self.0
    }
}

impl Mul for &SignVector {
    type Output = SignVector;
    fn mul(self, rhs: &SignVector) -> SignVector {
        assert_eq!(self.len(), rhs.len(), "sign vectors of different length");
        SignVector(self.iter().zip(rhs.iter()).map(|(a, b)| a * b).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *s > 0 { "+1" } else { "-1" })?;
        }
        f.write_str(")")
    }
}
