//! Linear codes over GF(p): construction from generators, shortening,
//! puncturing, duals, weight distributions and support statistics.

mod design;
mod enumerate;
mod pless;
mod supports;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::gfmat::MatrixGFp;

pub use design::{collect_supports, supports_design_check, Design, DesignCheck};
pub use enumerate::{for_each_codeword, weight_distribution};
pub use pless::{moment_residuals, pless_check, pless_solve, stirling_s, Unknown};
pub use supports::{dual_low_weight_supports, dual_min_distance, lambda_t_w};

/// Default limit on the number of codewords enumerated.
pub const DEFAULT_CAP: u128 = 1 << 24;
/// Default limit on column-subset tests in dual searches.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Enumeration cap and search budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub cap: u128,
    pub budget: u128,
}

impl Default for Limits {
    /// Reads `SHORTCODE_CAP` when set.
    fn default() -> Self {
        let cap = std::env::var("SHORTCODE_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<u128>().ok())
            .unwrap_or(DEFAULT_CAP);
        Self {
            cap,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A linear code given by a full-rank generator in reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: MatrixGFp,
    labels: Vec<u32>,
    field: Option<FieldSpec>,
}

impl LinearCode {
    /// Reduces `generator` to a basis; `labels` must have one entry per column.
    pub fn new(generator: &MatrixGFp, labels: Vec<u32>, field: Option<FieldSpec>) -> Result<Self> {
        if labels.len() != generator.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for length {}",
                labels.len(),
                generator.cols()
            )));
        }
        Ok(Self {
            generator: generator.row_basis(),
            labels,
            field,
        })
    }

    /// Code with labels `0..n` and no field attached.
    pub fn from_generator(generator: &MatrixGFp) -> Self {
        let labels = (0..generator.cols() as u32).collect();
        Self {
            generator: generator.row_basis(),
            labels,
            field: None,
        }
    }

    pub fn p(&self) -> u32 {
        self.generator.p()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &MatrixGFp {
        &self.generator
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn field_spec(&self) -> Option<&FieldSpec> {
        self.field.as_ref()
    }

    /// Number of codewords, or `None` past 128 bits.
    pub fn size(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.k() as u32)
    }

    /// Positions whose labels are in `labels`, in increasing order.
    pub fn positions_of_labels(&self, labels: &[u32]) -> Result<CoordSet> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let pos = self
                .labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Parse(format!("label {l} is not a coordinate of this code")))?;
            out.push(pos);
        }
        CoordSet::new(out, self.n())
    }

    /// True when `v` lies in the row space.
    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        let row = MatrixGFp::from_rows(self.p(), self.n(), &[v.to_vec()])?;
        let stacked = self.generator.vstack(&row)?;
        Ok(stacked.rank() == self.k())
    }

    /// Same set of codewords (labels ignored).
    pub fn same_code(&self, other: &Self) -> bool {
        self.generator == other.generator
    }

    /// Codewords vanishing on `t`, with the `t` coordinates removed.
    pub fn shorten(&self, t: &CoordSet) -> Result<Self> {
        t.check_len(self.n())?;
        if t.is_empty() {
            return Ok(self.clone());
        }
        // Messages y with y G[:, T] = 0 span the subcode.
        let gt = self.generator.select_columns(t.positions())?;
        let ys = gt.transpose().nullspace();
        let sub = ys.mul(&self.generator)?;
        let g = sub.delete_columns(t.positions())?;
        self.with_columns_removed(&g, t)
    }

    /// All codewords with the `t` coordinates removed.
    pub fn puncture(&self, t: &CoordSet) -> Result<Self> {
        t.check_len(self.n())?;
        let g = self.generator.delete_columns(t.positions())?;
        self.with_columns_removed(&g, t)
    }

    pub fn dual(&self) -> Self {
        Self {
            generator: self.generator.nullspace().row_basis(),
            labels: self.labels.clone(),
            field: self.field.clone(),
        }
    }

    fn with_columns_removed(&self, g: &MatrixGFp, t: &CoordSet) -> Result<Self> {
        let labels = (0..self.n())
            .filter(|i| !t.contains(*i))
            .map(|i| self.labels[i])
            .collect();
        Self::new(g, labels, self.field.clone())
    }
}

/// Counts of codewords by Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    n: usize,
    counts: BTreeMap<usize, u128>,
}

impl WeightDistribution {
    /// Zero counts are dropped.
    pub fn new(n: usize, counts: impl IntoIterator<Item = (usize, u128)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, c) in counts {
            if w > n {
                return Err(Error::IndexOutOfRange { index: w, len: n + 1 });
            }
            if c != 0 {
                *map.entry(w).or_insert(0) += c;
            }
        }
        Ok(Self { n, counts: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, w: usize) -> u128 {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// `(weight, count)` pairs with nonzero count, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u128)> + '_ {
        self.counts.iter().map(|(&w, &c)| (w, c))
    }

    /// Nonzero weights other than 0.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.nonzero_weights().first().copied()
    }

    /// Dense vector `A_0..A_n`.
    pub fn to_dense(&self) -> Vec<u128> {
        (0..=self.n).map(|w| self.get(w)).collect()
    }
}

/// Sorted distinct coordinate positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CoordSet(Vec<usize>);

impl CoordSet {
    pub fn new(mut positions: Vec<usize>, n: usize) -> Result<Self> {
        positions.sort_unstable();
        positions.dedup();
        let s = Self(positions);
        s.check_len(n)?;
        Ok(s)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&i) if i >= n => Err(Error::IndexOutOfRange { index: i, len: n }),
            _ => Ok(()),
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Positions in `0..n` not in the set.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| !self.contains(i)).collect()
    }
}

/// Shortened-code dimension law: `k - t` whenever `t < min(d, d_dual)`.
pub fn expected_shortened_dimension(k: usize, t: usize, d: usize, d_dual: usize) -> Option<usize> {
    (t < d.min(d_dual)).then(|| k - t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(n: usize) -> LinearCode {
        LinearCode::from_generator(&MatrixGFp::from_rows(2, n, &[vec![1; n]]).unwrap())
    }

    #[test]
    fn repetition_code_basics() {
        let c = rep(3);
        assert_eq!((c.n(), c.k()), (3, 1));
        let wd = weight_distribution(&c, &Limits::default()).unwrap();
        assert_eq!(wd.iter().collect::<Vec<_>>(), vec![(0, 1), (3, 1)]);
        let t = CoordSet::new(vec![2], 3).unwrap();
        let pc = c.puncture(&t).unwrap();
        assert!(pc.same_code(&rep(2)));
        assert_eq!(pc.labels(), &[0, 1]);
        let sc = c.shorten(&t).unwrap();
        assert_eq!((sc.n(), sc.k()), (2, 0));
        assert!(c.shorten(&CoordSet::empty()).unwrap().same_code(&c));
    }

    #[test]
    fn dual_of_dual() {
        let g = MatrixGFp::from_rows(3, 4, &[vec![1, 2, 0, 1], vec![0, 1, 1, 2]]).unwrap();
        let c = LinearCode::from_generator(&g);
        let d = c.dual();
        assert_eq!(d.k(), 2);
        assert!(c.generator().mul(&d.generator().transpose()).unwrap().is_zero());
        assert!(d.dual().same_code(&c));
    }

    #[test]
    fn coordset_validation() {
        assert!(matches!(
            CoordSet::new(vec![1, 9], 5),
            Err(Error::IndexOutOfRange { index: 9, len: 5 })
        ));
        let s = CoordSet::new(vec![3, 1, 3], 5).unwrap();
        assert_eq!(s.positions(), &[1, 3]);
        assert_eq!(s.complement(5), vec![0, 2, 4]);
    }
}
