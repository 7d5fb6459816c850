//! Supports of low-weight dual codewords and of codewords through a fixed set.
//!
//! A dual codeword of weight exactly `w` on support `S` is a linear relation
//! among the generator columns indexed by `S` in which every coefficient is
//! nonzero. Relations are found by choosing `w - 1` columns, forming a
//! combination `v` with leading coefficient 1, and looking up the columns
//! proportional to `v`; the largest position closes the support.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use super::{for_each_codeword, CoordSet, LinearCode, Limits};
use crate::arith::{binomial, for_each_combination, inverse_table};
use crate::error::{Error, Result};
use crate::gfmat::MatrixGFp;

struct Columns {
    p: u8,
    k: usize,
    cols: Vec<Vec<u8>>,
    inv: Vec<u8>,
}

impl Columns {
    fn new(g: &MatrixGFp) -> Self {
        Self {
            p: g.p() as u8,
            k: g.rows(),
            cols: (0..g.cols()).map(|c| g.column(c)).collect(),
            inv: inverse_table(g.p()),
        }
    }

    /// Scales so the first nonzero entry is 1; the zero vector is kept.
    fn normalize(&self, v: &mut [u8]) {
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            let s = self.inv[lead as usize] as u16;
            for x in v.iter_mut() {
                *x = (*x as u16 * s % self.p as u16) as u8;
            }
        }
    }
}

/// Supports of weight-`w` dual codewords containing `fixed`, with all other
/// support positions drawn from `free`.
fn search(
    g: &MatrixGFp,
    fixed: &[usize],
    free: &[usize],
    w: usize,
    budget: u128,
    first_only: bool,
) -> Result<Vec<Vec<usize>>> {
    if w == 0 || w < fixed.len() {
        return Ok(Vec::new());
    }
    let r = w - fixed.len();
    if r == 0 {
        return Ok(match g.full_support_dependency(fixed)? {
            Some(_) => vec![fixed.to_vec()],
            None => Vec::new(),
        });
    }
    let p = g.p() as u128;
    let coeff_choices = (p - 1).pow(w.saturating_sub(2) as u32);
    let needed = binomial(free.len() as u64, (r - 1) as u64).saturating_mul(coeff_choices);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let cols = Columns::new(g);
    let mut lookup: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for &j in free {
        let mut key = cols.cols[j].clone();
        cols.normalize(&mut key);
        lookup.entry(key).or_default().push(j);
    }
    let stop = AtomicBool::new(false);

    // Each task fixes the smallest free element of the chosen (r-1)-subset.
    let visit = |rest: &[usize]| -> HashSet<Vec<usize>> {
        let mut found = HashSet::new();
        let positions: Vec<usize> = fixed.iter().chain(rest).copied().collect();
        let floor = rest.last().copied();
        let np = positions.len();
        let mut coeffs = vec![1u8; np];
        let mut v = vec![0u8; cols.k];
        loop {
            v.iter_mut().for_each(|x| *x = 0);
            for (&pos, &c) in positions.iter().zip(&coeffs) {
                for (x, &y) in v.iter_mut().zip(&cols.cols[pos]) {
                    *x = ((*x as u16 + c as u16 * y as u16) % cols.p as u16) as u8;
                }
            }
            cols.normalize(&mut v);
            if let Some(cands) = lookup.get(&v) {
                for &j in cands {
                    if floor.map_or(true, |f| j > f) {
                        let mut s = positions.clone();
                        s.push(j);
                        s.sort_unstable();
                        found.insert(s);
                    }
                }
            }
            if first_only && !found.is_empty() {
                stop.store(true, Ordering::Relaxed);
                return found;
            }
            // Next coefficient vector with coeffs[0] pinned to 1.
            let mut i = 1;
            loop {
                if i >= np {
                    return found;
                }
                coeffs[i] += 1;
                if coeffs[i] == cols.p {
                    coeffs[i] = 1;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    };

    let merged: HashSet<Vec<usize>> = if r == 1 {
        visit(&[])
    } else {
        (0..free.len())
            .into_par_iter()
            .map(|first| {
                let mut acc = HashSet::new();
                if stop.load(Ordering::Relaxed) {
                    return acc;
                }
                let tail = &free[first + 1..];
                let mut rest = vec![free[first]];
                for_each_combination(tail, r - 2, |c| {
                    if first_only && stop.load(Ordering::Relaxed) {
                        return;
                    }
                    rest.truncate(1);
                    rest.extend_from_slice(c);
                    acc.extend(visit(&rest));
                });
                acc
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    };
    let mut out: Vec<Vec<usize>> = merged.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Supports of dual codewords of each weight `1..=wmax`.
pub fn dual_low_weight_supports(
    code: &LinearCode,
    wmax: usize,
    limits: &Limits,
) -> Result<Vec<(usize, Vec<Vec<usize>>)>> {
    let all: Vec<usize> = (0..code.n()).collect();
    (1..=wmax.min(code.n()))
        .map(|w| Ok((w, search(code.generator(), &[], &all, w, limits.budget, false)?)))
        .collect()
}

/// Smallest dual weight up to `wmax`, if any.
pub fn dual_min_distance(code: &LinearCode, wmax: usize, limits: &Limits) -> Result<Option<usize>> {
    let all: Vec<usize> = (0..code.n()).collect();
    for w in 1..=wmax.min(code.n()) {
        if !search(code.generator(), &[], &all, w, limits.budget, true)?.is_empty() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Number of distinct supports of weight-`w` codewords containing `t`, in the
/// code itself or in its dual.
pub fn lambda_t_w(code: &LinearCode, t: &CoordSet, w: usize, in_dual: bool, limits: &Limits) -> Result<u64> {
    if in_dual {
        let free = t.complement(code.n());
        let s = search(code.generator(), t.positions(), &free, w, limits.budget, false)?;
        return Ok(s.len() as u64);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for_each_codeword(code, limits, |cw| {
        if t.positions().iter().all(|&i| cw[i] != 0) {
            let supp: Vec<usize> = (0..cw.len()).filter(|&i| cw[i] != 0).collect();
            if supp.len() == w {
                seen.insert(supp);
            }
        }
    })?;
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: u32, rows: &[&[u8]]) -> LinearCode {
        let n = rows[0].len();
        LinearCode::from_generator(
            &MatrixGFp::from_rows(p, n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap(),
        )
    }

    /// Oracle: enumerate the dual code directly and collect supports.
    fn dual_supports_by_enumeration(c: &LinearCode, w: usize) -> Vec<Vec<usize>> {
        let mut set = HashSet::new();
        for_each_codeword(&c.dual(), &Limits::default(), |cw| {
            let s: Vec<usize> = (0..cw.len()).filter(|&i| cw[i] != 0).collect();
            if s.len() == w {
                set.insert(s);
            }
        })
        .unwrap();
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort();
        v
    }

    #[test]
    fn search_agrees_with_dual_enumeration() {
        let codes = [
            code(2, &[&[1, 0, 0, 1, 1, 0, 1, 1], &[0, 1, 0, 1, 0, 1, 1, 0], &[0, 0, 1, 0, 1, 1, 1, 1]]),
            code(3, &[&[1, 0, 2, 1, 1, 0, 2], &[0, 1, 1, 2, 0, 1, 1], &[0, 0, 0, 0, 1, 2, 2]]),
            code(5, &[&[1, 0, 3, 4, 0, 2], &[0, 1, 4, 4, 2, 3]]),
            code(2, &[&[1, 1, 0, 0, 0], &[0, 0, 1, 1, 0]]),
        ];
        for c in &codes {
            let found = dual_low_weight_supports(c, c.n(), &Limits::default()).unwrap();
            for (w, supports) in found {
                assert_eq!(supports, dual_supports_by_enumeration(c, w), "w = {w}");
            }
        }
    }

    #[test]
    fn min_distance_and_lambda() {
        // [7,4] Hamming code: the dual is the simplex code, its dual distance is 3.
        let h = code(
            2,
            &[&[1, 0, 0, 0, 1, 1, 0], &[0, 1, 0, 0, 1, 0, 1], &[0, 0, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1]],
        );
        let lim = Limits::default();
        assert_eq!(dual_min_distance(&h, 6, &lim).unwrap(), Some(4));
        assert_eq!(dual_min_distance(&h.dual(), 6, &lim).unwrap(), Some(3));
        let t = CoordSet::new(vec![0, 1], 7).unwrap();
        // Each pair of points lies on one line of the Fano plane.
        assert_eq!(lambda_t_w(&h.dual(), &t, 3, true, &lim).unwrap(), 1);
        assert_eq!(lambda_t_w(&h, &t, 3, false, &lim).unwrap(), 1);
        // Every pair is in exactly two of the seven weight-4 complements.
        assert_eq!(lambda_t_w(&h.dual(), &t, 4, false, &lim).unwrap(), 2);
        assert_eq!(lambda_t_w(&h, &t, 4, true, &lim).unwrap(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let c = code(2, &[&[1; 30]]);
        let lim = Limits { cap: 1 << 20, budget: 100 };
        assert!(matches!(
            dual_low_weight_supports(&c, 5, &lim),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
