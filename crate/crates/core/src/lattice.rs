// SPDX-License-Identifier: Apache-2.0

//! Exact enumeration of integer vectors `v` with `vᵀGv ≤ C` for a positive
//! definite rational Gram matrix `G` (Fincke–Pohst with an exact rational
//! LDLᵀ decomposition, no floating point).

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{qi, round_half_up, Q};

/// Gram matrix of the quadratic form `q` on the basis vectors `0..n`, given
/// `q` evaluated on `e_i` and on `e_i + e_j`.
pub fn gram_from_form(n: usize, q_single: impl Fn(usize) -> Q, q_pair: impl Fn(usize, usize) -> Q) -> Vec<Vec<Q>> {
    let diag: Vec<Q> = (0..n).map(&q_single).collect();
    let mut g = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        g[i][i] = diag[i].clone();
        for j in i + 1..n {
            let b = (q_pair(i, j) - &diag[i] - &diag[j]) / qi(BigInt::from(2));
            g[i][j] = b.clone();
            g[j][i] = b;
        }
    }
    g
}

pub fn eval_form(g: &[Vec<Q>], v: &[BigInt]) -> Q {
    let mut acc = Q::zero();
    for (i, row) in g.iter().enumerate() {
        for (j, gij) in row.iter().enumerate() {
            acc += gij * qi(&v[i] * &v[j]);
        }
    }
    acc
}

/// `q(v) = Σ_i d_i (v_i + Σ_{j>i} μ_ij v_j)²`.
struct Decomposition {
    d: Vec<Q>,
    mu: Vec<Vec<Q>>,
}

fn decompose(g: &[Vec<Q>]) -> Result<Decomposition> {
    let n = g.len();
    let mut a: Vec<Vec<Q>> = g.to_vec();
    for i in 0..n {
        if !a[i][i].is_positive() {
            return Err(Error::IndefiniteForm);
        }
        for j in i + 1..n {
            let v = &a[i][j] / &a[i][i];
            a[j][i] = a[i][j].clone();
            a[i][j] = v;
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &a[k][i] * &a[i][l];
                a[k][l] -= t;
            }
        }
    }
    let d = (0..n).map(|i| a[i][i].clone()).collect();
    let mu = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j > i { a[i][j].clone() } else { Q::zero() })
                .collect()
        })
        .collect();
    Ok(Decomposition { d, mu })
}

/// Calls `visit` on every nonzero `v ∈ Zⁿ` with `vᵀGv ≤ bound`, stopping
/// early when `visit` breaks.
pub fn enumerate<T>(g: &[Vec<Q>], bound: &Q, mut visit: impl FnMut(&[BigInt]) -> ControlFlow<T>) -> Result<Option<T>> {
    let n = g.len();
    let dec = decompose(g)?;
    let mut v = vec![BigInt::zero(); n];
    match walk(&dec, bound, n, Q::zero(), &mut v, &mut visit) {
        ControlFlow::Break(t) => Ok(Some(t)),
        ControlFlow::Continue(()) => Ok(None),
    }
}

fn walk<T>(
    dec: &Decomposition,
    bound: &Q,
    level: usize,
    partial: Q,
    v: &mut Vec<BigInt>,
    visit: &mut impl FnMut(&[BigInt]) -> ControlFlow<T>,
) -> ControlFlow<T> {
    if level == 0 {
        if v.iter().any(|x| !x.is_zero()) {
            return visit(v);
        }
        return ControlFlow::Continue(());
    }
    let i = level - 1;
    let center: Q = (i + 1..v.len())
        .map(|j| &dec.mu[i][j] * qi(v[j].clone()))
        .fold(Q::zero(), |a, b| a + b);
    let room = bound - &partial;
    let fits = |k: &BigInt| -> Option<Q> {
        let t = qi(k.clone()) + &center;
        let c = &dec.d[i] * &t * &t;
        (c <= room).then(|| &partial + c)
    };
    // admissible integers form an interval containing round(−center) if nonempty
    let start = round_half_up(&-&center);
    let mut k = start.clone();
    while let Some(p) = fits(&k) {
        v[i] = k.clone();
        walk(dec, bound, i, p, v, visit)?;
        k += 1;
    }
    let mut k = start - 1;
    while let Some(p) = fits(&k) {
        v[i] = k.clone();
        walk(dec, bound, i, p, v, visit)?;
        k -= 1;
    }
    v[i] = BigInt::zero();
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn collect(g: &[Vec<Q>], bound: &Q) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        enumerate::<()>(g, bound, |v| {
            out.push(v.iter().map(|x| i64::try_from(x).unwrap()).collect());
            ControlFlow::Continue(())
        })
        .unwrap();
        out.sort();
        out
    }

    fn brute(g: &[Vec<Q>], bound: &Q, r: i64) -> Vec<Vec<i64>> {
        let n = g.len();
        let mut out = Vec::new();
        let total = (2 * r + 1).pow(n as u32);
        for idx in 0..total {
            let mut t = idx;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let x = t % (2 * r + 1) - r;
                    t /= 2 * r + 1;
                    x
                })
                .collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            if eval_form(g, &vb) <= *bound {
                out.push(v);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_2d() {
        // 2x² + xy + 3y²
        let g = vec![vec![q(2), frac(1, 2)], vec![frac(1, 2), q(3)]];
        for b in 0..30 {
            let got = collect(&g, &q(b));
            assert!(got.iter().flatten().all(|x| x.abs() < 5));
            assert_eq!(got, brute(&g, &q(b), 5), "bound {b}");
        }
    }

    #[test]
    fn matches_brute_force_skewed_4d() {
        let g = vec![
            vec![q(5), q(3), frac(1, 2), q(0)],
            vec![q(3), q(4), q(1), frac(-1, 3)],
            vec![frac(1, 2), q(1), q(2), q(1)],
            vec![q(0), frac(-1, 3), q(1), q(3)],
        ];
        let all = brute(&g, &q(9), 4);
        for b in [1, 2, 5, 9] {
            let got = collect(&g, &q(b));
            assert!(got.iter().flatten().all(|x| x.abs() < 4));
            let expect: Vec<_> = all
                .iter()
                .filter(|v| {
                    let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                    eval_form(&g, &vb) <= q(b)
                })
                .cloned()
                .collect();
            assert_eq!(got, expect, "bound {b}");
        }
    }

    #[test]
    fn rejects_indefinite() {
        let g = vec![vec![q(1), q(0)], vec![q(0), q(-3)]];
        assert_eq!(
            enumerate::<()>(&g, &q(10), |_| ControlFlow::Continue(())),
            Err(Error::IndefiniteForm)
        );
    }

    #[test]
    fn early_exit() {
        let g = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        let hit = enumerate(&g, &q(100), |v| {
            if v[0] == BigInt::from(3) && v[1] == BigInt::from(4) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(hit, Some(()));
    }
}
