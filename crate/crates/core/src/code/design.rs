use std::collections::HashSet;

use serde::Serialize;

use super::{for_each_codeword, LinearCode, Limits};
use crate::arith::{binomial, colex_rank, for_each_combination, pascal};
use crate::error::Result;

/// Parameters of a t-(v, k, lambda) design with `b` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Design {
    pub v: usize,
    pub k: usize,
    pub t: usize,
    pub lambda: u64,
    pub b: u64,
}

impl Design {
    /// Checks `lambda * C(v,t) = b * C(k,t)`.
    pub fn is_consistent(&self) -> bool {
        self.lambda as u128 * binomial(self.v as u64, self.t as u64)
            == self.b as u128 * binomial(self.k as u64, self.t as u64)
    }
}

/// Outcome of a design test on a family of supports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DesignCheck {
    Design(Design),
    /// Two t-subsets covered by different numbers of blocks.
    NotADesign {
        first: (Vec<usize>, u64),
        second: (Vec<usize>, u64),
    },
}

impl DesignCheck {
    pub fn is_design(&self) -> bool {
        matches!(self, Self::Design(_))
    }
}

/// Distinct supports of the weight-`w` codewords, sorted.
pub fn collect_supports(code: &LinearCode, w: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let mut set = HashSet::new();
    for_each_codeword(code, limits, |cw| {
        if cw.iter().filter(|&&x| x != 0).count() == w {
            set.insert((0..cw.len()).filter(|&i| cw[i] != 0).collect::<Vec<_>>());
        }
    })?;
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

/// Tests whether the supports of weight-`w` codewords form a t-design on the
/// coordinate set.
pub fn supports_design_check(code: &LinearCode, w: usize, t: usize, limits: &Limits) -> Result<DesignCheck> {
    let blocks = collect_supports(code, w, limits)?;
    Ok(check_blocks(code.n(), w, t, &blocks))
}

pub(crate) fn check_blocks(v: usize, k: usize, t: usize, blocks: &[Vec<usize>]) -> DesignCheck {
    let table = pascal(v.max(1));
    let total = binomial(v as u64, t as u64) as usize;
    let mut cover = vec![0u64; total];
    for b in blocks {
        for_each_combination(b, t, |s| cover[colex_rank(s, &table)] += 1);
    }
    let points: Vec<usize> = (0..v).collect();
    let mut first: Option<(Vec<usize>, u64)> = None;
    let mut witness = None;
    for_each_combination(&points, t, |s| {
        if witness.is_some() {
            return;
        }
        let c = cover[colex_rank(s, &table)];
        match &first {
            None => first = Some((s.to_vec(), c)),
            Some((_, c0)) if *c0 != c => witness = Some((s.to_vec(), c)),
            _ => {}
        }
    });
    match witness {
        Some(second) => DesignCheck::NotADesign {
            first: first.expect("witness implies a first subset"),
            second,
        },
        None => DesignCheck::Design(Design {
            v,
            k,
            t,
            lambda: first.map_or(0, |f| f.1),
            b: blocks.len() as u64,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane() {
        let lines: Vec<Vec<usize>> = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]
            .iter()
            .map(|l| l.to_vec())
            .collect();
        let d = check_blocks(7, 3, 2, &lines);
        assert_eq!(
            d,
            DesignCheck::Design(Design { v: 7, k: 3, t: 2, lambda: 1, b: 7 })
        );
        if let DesignCheck::Design(d) = d {
            assert!(d.is_consistent());
        }
        assert!(!check_blocks(7, 3, 3, &lines).is_design());
    }

    #[test]
    fn empty_block_set_is_trivial() {
        assert_eq!(
            check_blocks(5, 2, 1, &[]),
            DesignCheck::Design(Design { v: 5, k: 2, t: 1, lambda: 0, b: 0 })
        );
    }
}
