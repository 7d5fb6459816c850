//! Dense matrices over a prime field GF(p), p < 256.

use crate::arith::{inverse_table, is_prime};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixGFp {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixGFp,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn check_p(p: u32) -> Result<()> {
    if !is_prime(p as u64) || p > 251 {
        return Err(Error::RejectsNonPrimeP(p as u64));
    }
    Ok(())
}

impl MatrixGFp {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        check_p(p)?;
        Ok(Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        check_p(p)?;
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v as u32 >= p) {
            return Err(Error::Parse(format!("entry {bad} is not reduced mod {p}")));
        }
        Ok(Self {
            p,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(p, rows.len(), cols, data)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!((v as u32) < self.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols)?;
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s: u64 = (0..self.cols)
                    .map(|i| self.get(r, i) as u64 * other.get(i, c) as u64)
                    .sum();
                out.data[r * other.cols + c] = (s % p) as u8;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form; zero rows are kept at the bottom.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let inv = inverse_table(p);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let s = inv[m.get(r, c) as usize];
            m.scale_row(r, s);
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        m.add_row_multiple(i, r, (p - f as u32) as u8);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Row-reduced copy with zero rows removed.
    pub fn row_basis(&self) -> Self {
        let r = self.rref();
        let mut m = r.matrix;
        m.data.truncate(r.rank * m.cols);
        m.rows = r.rank;
        m
    }

    /// Basis of `{v : M v^T = 0}` as rows.
    pub fn nullspace(&self) -> Self {
        let Rref {
            matrix,
            rank,
            pivots,
        } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self {
            p,
            rows: free.len(),
            cols: self.cols,
            data: vec![0; free.len() * self.cols],
        };
        for (i, &f) in free.iter().enumerate() {
            out.data[i * self.cols + f] = 1;
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                let v = matrix.get(r, f) as u32;
                out.data[i * self.cols + pc] = ((p - v) % p) as u8;
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        for &c in cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: self.cols,
                });
            }
        }
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c));
            }
        }
        Ok(Self {
            p: self.p,
            rows: self.rows,
            cols: cols.len(),
            data,
        })
    }

    pub fn delete_columns(&self, cols: &[usize]) -> Result<Self> {
        let mut drop = vec![false; self.cols];
        for &c in cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: self.cols,
                });
            }
            drop[c] = true;
        }
        let keep: Vec<usize> = (0..self.cols).filter(|&c| !drop[c]).collect();
        self.select_columns(&keep)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols || self.p != other.p {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// True when both matrices span the same row space.
    pub fn same_row_space(&self, other: &Self) -> bool {
        self.cols == other.cols && self.p == other.p && self.row_basis() == other.row_basis()
    }

    /// True iff the chosen columns are linearly dependent.
    pub fn columns_dependent(&self, cols: &[usize]) -> Result<bool> {
        let sub = self.select_columns(cols)?;
        Ok(sub.rank() < cols.len())
    }

    /// A vector in the kernel of the chosen columns with every entry nonzero.
    ///
    /// Such a vector exists exactly when the columns carry a dual codeword
    /// whose support is all of `cols`. Kernels larger than 20 dimensions are
    /// rejected rather than searched.
    pub fn full_support_dependency(&self, cols: &[usize]) -> Result<Option<Vec<u8>>> {
        let sub = self.select_columns(cols)?;
        let ns = sub.nullspace();
        let dim = ns.rows;
        if dim == 0 {
            return Ok(None);
        }
        let p = self.p as usize;
        if p == 2 {
            // Over GF(2) the only candidate is the all-ones vector.
            let ones = vec![1u8; cols.len()];
            let zero = (0..sub.rows).all(|r| sub.row(r).iter().fold(0u8, |a, &b| a ^ b) == 0);
            return Ok(zero.then_some(ones));
        }
        if dim > 20 {
            return Err(Error::BudgetExceeded {
                needed: (p as u128).pow(dim as u32),
                budget: (p as u128).pow(20),
            });
        }
        let mut coeffs = vec![0usize; dim];
        let mut v = vec![0u8; cols.len()];
        loop {
            let mut j = 0;
            loop {
                if j == dim {
                    return Ok(None);
                }
                coeffs[j] += 1;
                for (x, &y) in v.iter_mut().zip(ns.row(j)) {
                    *x = ((*x as usize + y as usize) % p) as u8;
                }
                if coeffs[j] == p {
                    coeffs[j] = 0;
                    j += 1;
                } else {
                    break;
                }
            }
            if v.iter().all(|&x| x != 0) {
                return Ok(Some(v));
            }
        }
    }

    /// GF(2) rows packed into 64-bit words, bit `j % 64` of word `j / 64`.
    pub fn packed_rows(&self) -> Vec<Vec<u64>> {
        let words = self.cols.div_ceil(64);
        (0..self.rows)
            .map(|r| {
                let mut w = vec![0u64; words];
                for (c, &v) in self.row(r).iter().enumerate() {
                    if v & 1 == 1 {
                        w[c / 64] |= 1 << (c % 64);
                    }
                }
                w
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        let p = self.p as u16;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = (*v as u16 * s as u16 % p) as u8;
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: u8) {
        let p = self.p as u16;
        let cols = self.cols;
        for c in 0..cols {
            let s = self.data[src * cols + c] as u16;
            if s != 0 {
                let d = &mut self.data[dst * cols + c];
                *d = ((*d as u16 + f as u16 * s) % p) as u8;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[u8]]) -> MatrixGFp {
        let cols = rows[0].len();
        MatrixGFp::from_rows(p, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_is_reduced() {
        let id = MatrixGFp::identity(2, 3).unwrap();
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(id.nullspace().rows(), 0);
    }

    #[test]
    fn zero_matrix() {
        let z = MatrixGFp::zeros(3, 1, 4).unwrap();
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().rows(), 4);
    }

    #[test]
    fn proportional_rows_over_gf3() {
        // (2,1) = 2 * (1,2) mod 3
        let a = m(3, &[&[1, 2], &[2, 1]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.rows(), 1);
        assert!(a.mul(&ns.transpose()).unwrap().is_zero());
    }

    #[test]
    fn dependency_tests() {
        let a = m(2, &[&[1, 1, 0], &[0, 0, 1]]);
        assert!(!a.columns_dependent(&[0]).unwrap());
        assert!(a.columns_dependent(&[0, 1]).unwrap());
        assert_eq!(a.full_support_dependency(&[0, 1]).unwrap(), Some(vec![1, 1]));
        assert_eq!(a.full_support_dependency(&[0, 2]).unwrap(), None);
        assert!(matches!(
            a.columns_dependent(&[5]),
            Err(Error::IndexOutOfRange { index: 5, len: 3 })
        ));
    }

    #[test]
    fn full_support_needs_every_coordinate() {
        // Columns e1, e1, e2: dependent, but no kernel vector touches column 2.
        let a = m(3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert!(a.columns_dependent(&[0, 1, 2]).unwrap());
        assert_eq!(a.full_support_dependency(&[0, 1, 2]).unwrap(), None);
        let v = a.full_support_dependency(&[0, 1]).unwrap().unwrap();
        assert_eq!((v[0] + v[1]) % 3, 0);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(
            MatrixGFp::zeros(4, 1, 1),
            Err(Error::RejectsNonPrimeP(4))
        );
    }

    #[test]
    fn packing_matches_entries() {
        let mut a = MatrixGFp::zeros(2, 1, 70).unwrap();
        a.set(0, 0, 1);
        a.set(0, 69, 1);
        let w = a.packed_rows();
        assert_eq!(w[0], vec![1, 1 << 5]);
    }
}
