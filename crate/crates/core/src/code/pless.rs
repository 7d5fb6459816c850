//! Power-moment identities linking a weight distribution to the low-weight
//! part of the dual distribution, solved exactly over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::WeightDistribution;
use crate::error::{Error, Result};

/// Stirling number of the second kind, by the alternating-sum formula.
pub fn stirling_s(t: u32, j: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let mut fact = BigInt::one();
    for i in 1..=j {
        fact *= i;
    }
    for i in 0..=j {
        let term = binom(j as u64, i as u64) * BigInt::from(i).pow(t);
        if (j - i) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / fact
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(j: u32) -> BigInt {
    (1..=j).fold(BigInt::one(), |a, i| a * i)
}

fn q_pow(q: u64, e: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(q)).pow(e as i32)
}

/// Coefficient of `A_i(dual)` in the `t`-th moment of a length-`n`,
/// dimension-`k` code over GF(q).
fn dual_coeff(n: usize, k: usize, q: u64, t: u32, i: usize) -> BigRational {
    let mut s = BigRational::zero();
    for j in i..=t as usize {
        let term = BigRational::from_integer(
            factorial(j as u32)
                * stirling_s(t, j as u32)
                * BigInt::from(q - 1).pow(j - i)
                * binom((n - i) as u64, (n - j) as u64),
        ) * q_pow(q, k as i64 - j as i64);
        s += term;
    }
    if i % 2 == 1 {
        -s
    } else {
        s
    }
}

fn primal_coeff(t: u32, i: usize) -> BigInt {
    BigInt::from(i).pow(t)
}

/// `sum_i i^t A_i - sum_i coeff * A_i(dual)` for each `t` in `0..=t_max`.
///
/// `dual_prefix[i]` is `A_i` of the dual code; entries past its end count as 0.
pub fn moment_residuals(
    wd: &WeightDistribution,
    k: usize,
    q: u64,
    dual_prefix: &[u128],
    t_max: u32,
) -> Vec<BigRational> {
    let n = wd.n();
    (0..=t_max)
        .map(|t| {
            let mut lhs = BigRational::zero();
            for (w, c) in wd.iter() {
                lhs += BigRational::from_integer(primal_coeff(t, w) * BigInt::from(c));
            }
            for (i, &a) in dual_prefix.iter().enumerate().take(t as usize + 1).filter(|(i, _)| *i <= n) {
                lhs -= dual_coeff(n, k, q, t, i) * BigRational::from_integer(BigInt::from(a));
            }
            lhs
        })
        .collect()
}

/// Checks the first `t_max + 1` moments.
pub fn pless_check(wd: &WeightDistribution, k: usize, q: u64, dual_prefix: &[u128], t_max: u32) -> Result<()> {
    for (t, r) in moment_residuals(wd, k, q, dual_prefix, t_max).into_iter().enumerate() {
        if !r.is_zero() {
            return Err(Error::InconsistentMoments(format!("moment {t} is off by {r}")));
        }
    }
    Ok(())
}

/// An unknown count in [`pless_solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unknown {
    Primal(usize),
    Dual(usize),
}

/// Solves the first `moments` identities for the listed unknown counts.
///
/// Primal weights not listed in `known_primal` or `unknowns` are taken as 0,
/// and likewise for dual weights. Surplus equations must be satisfied
/// exactly; the solution must be integral.
pub fn pless_solve(
    n: usize,
    k: usize,
    q: u64,
    known_primal: &[(usize, u128)],
    known_dual: &[(usize, u128)],
    unknowns: &[Unknown],
    moments: u32,
) -> Result<Vec<i128>> {
    let u = unknowns.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for t in 0..moments {
        let mut row = Vec::with_capacity(u + 1);
        for unk in unknowns {
            row.push(match *unk {
                Unknown::Primal(i) => BigRational::from_integer(primal_coeff(t, i)),
                Unknown::Dual(i) if i <= t as usize && i <= n => -dual_coeff(n, k, q, t, i),
                Unknown::Dual(_) => BigRational::zero(),
            });
        }
        let mut rhs = BigRational::zero();
        for &(i, a) in known_dual {
            if i <= t as usize && i <= n {
                rhs += dual_coeff(n, k, q, t, i) * BigRational::from_integer(BigInt::from(a));
            }
        }
        for &(i, a) in known_primal {
            rhs -= BigRational::from_integer(primal_coeff(t, i) * BigInt::from(a));
        }
        row.push(rhs);
        rows.push(row);
    }

    // Gauss-Jordan elimination.
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..u {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r2 in 0..rows.len() {
            if r2 != pivot_row && !rows[r2][col].is_zero() {
                let f = rows[r2][col].clone();
                for c in 0..=u {
                    let d = &f * &rows[pivot_row][c];
                    rows[r2][c] -= d;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < u {
        return Err(Error::SingularSystem(format!(
            "{} independent equations for {u} unknowns",
            pivots.len()
        )));
    }
    if let Some(r) = rows[u..].iter().find(|r| !r[u].is_zero()) {
        return Err(Error::InconsistentMoments(format!("surplus equation leaves residual {}", r[u])));
    }
    rows[..u]
        .iter()
        .zip(unknowns)
        .map(|(r, unk)| {
            let v = &r[u];
            if !v.is_integer() {
                return Err(Error::InconsistentMoments(format!("{unk:?} = {v} is not an integer")));
            }
            let i = v.to_integer();
            if i.is_negative() {
                return Err(Error::InconsistentMoments(format!("{unk:?} = {i} is negative")));
            }
            i.to_i128()
                .ok_or_else(|| Error::InconsistentMoments(format!("{unk:?} = {i} overflows")))
        })
        .collect()
}
