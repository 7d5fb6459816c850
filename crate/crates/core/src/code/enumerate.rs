use rayon::prelude::*;

use super::{LinearCode, Limits, WeightDistribution};
use crate::error::{Error, Result};

fn check_cap(code: &LinearCode, limits: &Limits) -> Result<()> {
    match code.size() {
        Some(s) if s <= limits.cap => Ok(()),
        s => Err(Error::CapExceeded {
            needed: s.unwrap_or(u128::MAX),
            cap: limits.cap,
        }),
    }
}

/// Exact weight distribution by visiting every codeword.
///
/// The message space is split on its top coordinates across worker threads;
/// each worker walks the rest with single-row updates, so the result does not
/// depend on the thread count.
pub fn weight_distribution(code: &LinearCode, limits: &Limits) -> Result<WeightDistribution> {
    check_cap(code, limits)?;
    let counts = if code.p() == 2 {
        binary_counts(code)
    } else {
        prime_counts(code)
    };
    WeightDistribution::new(code.n(), counts.into_iter().enumerate())
}

fn add_counts(mut a: Vec<u128>, b: Vec<u128>) -> Vec<u128> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn binary_counts(code: &LinearCode) -> Vec<u128> {
    let n = code.n();
    let k = code.k();
    let rows = code.generator().packed_rows();
    let words = n.div_ceil(64);
    let hi = k.min(10);
    let lo = k - hi;
    (0u64..1 << hi)
        .into_par_iter()
        .map(|prefix| {
            let mut cw = vec![0u64; words];
            for b in 0..hi {
                if prefix >> b & 1 == 1 {
                    for (x, y) in cw.iter_mut().zip(&rows[lo + b]) {
                        *x ^= y;
                    }
                }
            }
            let weight = |cw: &[u64]| cw.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            let mut local = vec![0u64; n + 1];
            local[weight(&cw)] += 1;
            for i in 1u64..1 << lo {
                let j = i.trailing_zeros() as usize;
                for (x, y) in cw.iter_mut().zip(&rows[j]) {
                    *x ^= y;
                }
                local[weight(&cw)] += 1;
            }
            local.into_iter().map(u128::from).collect::<Vec<_>>()
        })
        .reduce(|| vec![0; n + 1], add_counts)
}

fn prime_counts(code: &LinearCode) -> Vec<u128> {
    let n = code.n();
    let k = code.k();
    let p = code.p() as u64;
    let g = code.generator();
    let mut hi = 0;
    while hi < k && p.pow(hi as u32 + 1) <= 4096 {
        hi += 1;
    }
    let lo = k - hi;
    (0..p.pow(hi as u32))
        .into_par_iter()
        .map(|prefix| {
            let mut cw = vec![0u8; n];
            let mut v = prefix;
            for b in 0..hi {
                let d = (v % p) as u8;
                v /= p;
                for _ in 0..d {
                    add_row(&mut cw, g.row(lo + b), p as u8);
                }
            }
            let mut local = vec![0u64; n + 1];
            visit_counter(&mut cw, lo, |r| g.row(r), p as u8, |c| {
                local[c.iter().filter(|&&x| x != 0).count()] += 1;
            });
            local.into_iter().map(u128::from).collect::<Vec<_>>()
        })
        .reduce(|| vec![0; n + 1], add_counts)
}

#[inline]
fn add_row(cw: &mut [u8], row: &[u8], p: u8) {
    for (x, &y) in cw.iter_mut().zip(row) {
        let s = *x + y;
        *x = if s >= p { s - p } else { s };
    }
}

/// Visits `cw + sum c_i row(i)` for all `c` in GF(p)^len, starting from `cw`.
fn visit_counter<'a, R, F>(cw: &mut [u8], len: usize, row: R, p: u8, mut f: F)
where
    R: Fn(usize) -> &'a [u8],
    F: FnMut(&[u8]),
{
    let mut digits = vec![0u8; len];
    f(cw);
    loop {
        let mut j = 0;
        loop {
            if j == len {
                return;
            }
            add_row(cw, row(j), p);
            digits[j] += 1;
            if digits[j] == p {
                digits[j] = 0;
                j += 1;
            } else {
                break;
            }
        }
        f(cw);
    }
}

/// Calls `f` on every codeword (as unpacked digits), sequentially.
pub fn for_each_codeword<F: FnMut(&[u8])>(code: &LinearCode, limits: &Limits, f: F) -> Result<()> {
    check_cap(code, limits)?;
    let g = code.generator();
    let mut cw = vec![0u8; code.n()];
    visit_counter(&mut cw, code.k(), |r| g.row(r), code.p() as u8, f);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfmat::MatrixGFp;

    /// Independent oracle: encode every message from scratch.
    fn naive(code: &LinearCode) -> Vec<u128> {
        let p = code.p() as u64;
        let k = code.k();
        let n = code.n();
        let mut out = vec![0u128; n + 1];
        for msg in 0..p.pow(k as u32) {
            let mut c = vec![0u64; n];
            let mut v = msg;
            for r in 0..k {
                let d = v % p;
                v /= p;
                for (x, &y) in c.iter_mut().zip(code.generator().row(r)) {
                    *x += d * y as u64;
                }
            }
            out[c.iter().filter(|&&x| x % p != 0).count()] += 1;
        }
        out
    }

    fn code(p: u32, rows: &[&[u8]]) -> LinearCode {
        let n = rows[0].len();
        LinearCode::from_generator(
            &MatrixGFp::from_rows(p, n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap(),
        )
    }

    #[test]
    fn matches_naive_encoding() {
        let c2 = code(2, &[&[1, 0, 0, 1, 1, 0, 1], &[0, 1, 0, 1, 0, 1, 1], &[0, 0, 1, 0, 1, 1, 1]]);
        let c3 = code(3, &[&[1, 0, 2, 1, 1], &[0, 1, 1, 2, 0]]);
        let c5 = code(5, &[&[1, 2, 3, 4, 0, 1], &[0, 1, 4, 4, 2, 3], &[0, 0, 1, 2, 3, 4]]);
        for c in [c2, c3, c5] {
            let wd = weight_distribution(&c, &Limits::default()).unwrap();
            assert_eq!(wd.to_dense(), naive(&c));
            let mut seen = vec![0u128; c.n() + 1];
            for_each_codeword(&c, &Limits::default(), |cw| {
                seen[cw.iter().filter(|&&x| x != 0).count()] += 1;
            })
            .unwrap();
            assert_eq!(seen, naive(&c));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let c = code(2, &[&[1, 0, 1], &[0, 1, 1]]);
        let lim = Limits { cap: 3, budget: 10 };
        assert_eq!(
            weight_distribution(&c, &lim),
            Err(Error::CapExceeded { needed: 4, cap: 3 })
        );
    }
}
