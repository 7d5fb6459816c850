use super::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::gfmat::MatrixGFp;

/// Inverse of the GF(p)-linear map `x -> a^(p^e) x^(p^(2e)) + a x`.
///
/// Built once per `(a, e)` and reused for many right-hand sides.
#[derive(Debug, Clone)]
pub struct LinearizedSolver {
    e: u32,
    /// Column j holds the coordinates of the preimage of basis vector j.
    inverse: MatrixGFp,
}

impl LinearizedSolver {
    pub fn new(fld: &Field, a: FieldElement, e: u32) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::NonUniqueSolution("a = 0".into()));
        }
        let p = fld.p();
        let m = fld.m() as usize;
        let ape = fld.frobenius(a, e as i64);
        let map = |x: FieldElement| {
            fld.add(fld.mul(ape, fld.frobenius(x, 2 * e as i64)), fld.mul(a, x))
        };
        // Augmented system [L | I]; reducing it yields L^-1 on the right.
        let mut aug = MatrixGFp::zeros(p, m, 2 * m)?;
        for j in 0..m {
            let img = fld.digits(map(FieldElement(p.pow(j as u32))));
            for (i, &d) in img.iter().enumerate() {
                aug.set(i, j, d as u8);
            }
            aug.set(j, m + j, 1);
        }
        let r = aug.rref();
        if r.pivots.iter().take(m).copied().ne(0..m) || r.pivots.len() < m {
            return Err(Error::NonUniqueSolution(format!(
                "kernel of the map for a = {}, e = {e} is nontrivial",
                fld.label(a)
            )));
        }
        let cols: Vec<usize> = (m..2 * m).collect();
        Ok(Self {
            e,
            inverse: r.matrix.select_columns(&cols)?,
        })
    }

    /// Root `x` of `a^(p^e) x^(p^(2e)) + a x + b^(p^e) = 0`.
    pub fn solve(&self, fld: &Field, b: FieldElement) -> Result<FieldElement> {
        let p = fld.p();
        let rhs = fld.neg(fld.frobenius(b, self.e as i64));
        let d = fld.digits(rhs);
        let m = d.len();
        let x: Vec<u32> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| self.inverse.get(i, j) as u32 * d[j])
                    .sum::<u32>()
                    % p
            })
            .collect();
        fld.from_digits(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(f: &Field, a: FieldElement, e: u32, b: FieldElement, x: FieldElement) -> FieldElement {
        let ape = f.frobenius(a, e as i64);
        f.sum([
            f.mul(ape, f.frobenius(x, 2 * e as i64)),
            f.mul(a, x),
            f.frobenius(b, e as i64),
        ])
    }

    #[test]
    fn roots_substitute_back_and_are_unique() {
        for (p, m) in [(3, 1), (3, 3), (5, 1), (5, 3)] {
            let f = Field::with_default_modulus(p, m).unwrap();
            for a in f.elements().skip(1) {
                let s = LinearizedSolver::new(&f, a, 1).unwrap();
                for b in f.elements() {
                    let x = s.solve(&f, b).unwrap();
                    assert_eq!(residual(&f, a, 1, b, x), FieldElement::ZERO);
                    if p == 3 && m == 3 && a.0 < 4 {
                        let roots = f
                            .elements()
                            .filter(|&y| residual(&f, a, 1, b, y).is_zero())
                            .count();
                        assert_eq!(roots, 1);
                    }
                }
                assert_eq!(s.solve(&f, FieldElement::ZERO).unwrap(), FieldElement::ZERO);
            }
        }
    }

    #[test]
    fn one_is_the_root_for_the_special_right_hand_side() {
        let f = Field::with_default_modulus(3, 3).unwrap();
        for a in f.elements().skip(1) {
            // b = -a^(p^-e) - a makes x = 1 a root.
            let b = f.neg(f.add(f.frobenius(a, -1), a));
            assert_eq!(f.solve_linearized(a, 1, b).unwrap(), FieldElement::ONE);
        }
    }

    #[test]
    fn even_quotient_is_rejected() {
        // m/gcd(m,e) = 2 leaves a nontrivial kernel for some a.
        let f = Field::with_default_modulus(3, 2).unwrap();
        let bad = f
            .elements()
            .skip(1)
            .filter(|&a| LinearizedSolver::new(&f, a, 1).is_err())
            .count();
        assert!(bad > 0);
    }
}
