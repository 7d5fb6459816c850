//! Arithmetic in GF(p^m) through exp/log tables.
//!
//! Elements are indices: the polynomial-basis coordinates `c_0 + c_1 x + ...`
//! read as the base-p number `c_0 + c_1 p + ...`. Hence 0 and 1 have indices 0
//! and 1, and the prime subfield occupies indices `0..p`.

mod linearized;
mod moduli;
mod poly;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_pow, prime_factors};
use crate::error::{Error, Result};

pub use linearized::LinearizedSolver;
pub use moduli::default_modulus;

/// Field order limit for table construction.
pub const MAX_ORDER: u64 = 1 << 22;

/// Characteristic, degree, and defining polynomial of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Coefficients from degree m down to degree 0.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Self {
        Self { p, m, modulus }
    }

    /// Uses the built-in table, falling back to the first primitive
    /// polynomial in counting order.
    pub fn with_default_modulus(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::RejectsNonPrimeP(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidModulus("degree must be positive".into()));
        }
        if let Some(s) = default_modulus(p, m) {
            return Ok(Self::new(p, m, parse_digits(s, p)?));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidModulus(format!("GF({p}^{m}) is beyond table size"))
        })?;
        for low in 1..q {
            let mut coeffs = vec![1u32];
            let mut v = low;
            let mut lowfirst = Vec::new();
            for _ in 0..m {
                lowfirst.push((v % p as u64) as u32);
                v /= p as u64;
            }
            coeffs.extend(lowfirst.iter().rev());
            let spec = Self::new(p, m, coeffs);
            if let Ok(f) = Field::new(&spec) {
                if f.generator().index() == p || m == 1 {
                    return Ok(spec);
                }
            }
        }
        Err(Error::InvalidModulus(format!("no primitive modulus found for GF({p}^{m})")))
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    fn modulus_low_first(&self) -> Vec<u32> {
        self.modulus.iter().rev().copied().collect()
    }
}

fn parse_digits(s: &str, p: u32) -> Result<Vec<u32>> {
    let parts: Vec<u32> = if s.contains('.') {
        s.split('.')
            .map(|d| d.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{d}: {e}"))))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}"))))
            .collect::<Result<_>>()?
    };
    if let Some(&d) = parts.iter().find(|&&d| d >= p) {
        return Err(Error::InvalidModulus(format!("digit {d} is not below p = {p}")));
    }
    Ok(parts)
}

fn format_digits(d: &[u32], p: u32) -> String {
    if p <= 10 {
        d.iter().map(|x| char::from_digit(*x, 10).unwrap()).collect()
    } else {
        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={},m={},mod={}",
            self.p,
            self.m,
            format_digits(&self.modulus, self.p)
        )
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `p=3,m=4,mod=10012`; `mod` may be omitted.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut m = None;
        let mut modulus = None;
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let num = || {
                v.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("{k}={v}: {e}")))
            };
            match k.trim() {
                "p" => p = Some(num()?),
                "m" => m = Some(num()?),
                "mod" => modulus = Some(v.trim().to_string()),
                other => return Err(Error::Parse(format!("unknown field key {other:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("missing p".into()))?;
        let m = m.ok_or_else(|| Error::Parse("missing m".into()))?;
        match modulus {
            Some(s) => Ok(Self::new(p, m, parse_digits(&s, p)?)),
            None => Self::with_default_modulus(p, m),
        }
    }
}

/// A field element, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const NONE: u32 = u32::MAX;

/// GF(p^m) with precomputed exp, log, addition and trace tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    trace: Vec<u8>,
}

fn index_to_digits(mut idx: u32, p: u32, m: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(m as usize);
    for _ in 0..m {
        d.push(idx % p);
        idx /= p;
    }
    d
}

fn digits_to_index(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    /// Validates the spec and builds all tables.
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let p = spec.p;
        let m = spec.m;
        if !is_prime(p as u64) {
            return Err(Error::RejectsNonPrimeP(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidModulus("degree must be positive".into()));
        }
        if spec.modulus.len() != m as usize + 1 || spec.modulus[0] != 1 {
            return Err(Error::InvalidModulus(format!(
                "need a monic polynomial of degree {m}, got {}",
                format_digits(&spec.modulus, p)
            )));
        }
        if spec.modulus.iter().any(|&d| d >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficients of {} must be below {p}",
                format_digits(&spec.modulus, p)
            )));
        }
        let q64 = spec.order();
        if q64 > MAX_ORDER {
            return Err(Error::InvalidModulus(format!("field order {q64} exceeds {MAX_ORDER}")));
        }
        let q = q64 as u32;
        let f = spec.modulus_low_first();
        if !poly::is_irreducible(&f, p) {
            return Err(Error::RejectsReducibleModulus(
                format_digits(&spec.modulus, p),
                p,
            ));
        }

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let one = poly::rem(&[1], &f, p);
        let gen = (1..q)
            .find(|&g| {
                let gp = index_to_digits(g, p, m);
                factors
                    .iter()
                    .all(|&r| poly::pow_mod(&gp, order / r, &f, p) != one)
            })
            .expect("multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NONE; q as usize];
        let gdig = index_to_digits(gen, p, m);
        let mut cur = vec![1u32];
        for k in 0..n {
            let mut d = cur.clone();
            d.resize(m as usize, 0);
            let idx = digits_to_index(&d, p);
            exp[k] = idx;
            log[idx as usize] = k as u32;
            cur = poly::mul_mod(&cur, &gdig, &f, p);
        }
        for k in n..2 * n {
            exp[k] = exp[k - n];
        }

        let mut zech = Vec::new();
        if p != 2 {
            zech = vec![NONE; n];
            for (k, z) in zech.iter_mut().enumerate() {
                let idx = exp[k];
                let d0 = idx % p;
                let shifted = idx - d0 + (d0 + 1) % p;
                if shifted != 0 {
                    *z = log[shifted as usize];
                }
            }
        }

        let mut field = Self {
            spec: spec.clone(),
            q,
            generator: FieldElement(gen),
            exp,
            log,
            zech,
            trace: Vec::new(),
        };

        // Trace of each basis monomial x^i by the defining power sum, then
        // extended linearly.
        let basis_traces: Vec<u32> = (0..m)
            .map(|i| {
                let beta = FieldElement(p.pow(i));
                let t = field.trace_by_definition(beta);
                debug_assert!(t.0 < p);
                t.0
            })
            .collect();
        field.trace = (0..q)
            .map(|idx| {
                let d = index_to_digits(idx, p, m);
                (d.iter().zip(&basis_traces).map(|(a, b)| a * b).sum::<u32>() % p) as u8
            })
            .collect();
        Ok(field)
    }

    /// Field with the built-in default modulus.
    pub fn with_default_modulus(p: u32, m: u32) -> Result<Self> {
        Self::new(&FieldSpec::with_default_modulus(p, m)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The fixed primitive element alpha.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.q {
            return Err(Error::IndexOutOfRange {
                index: index as usize,
                len: self.q as usize,
            });
        }
        Ok(FieldElement(index))
    }

    /// Embeds `c mod p` from the prime subfield.
    pub fn from_prime(&self, c: u32) -> FieldElement {
        FieldElement(c % self.p())
    }

    /// alpha^k for any integer k.
    pub fn alpha_pow(&self, k: i64) -> FieldElement {
        let n = (self.q - 1) as i64;
        FieldElement(self.exp[k.rem_euclid(n) as usize])
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Coordinate order `[0, alpha^0, alpha^1, ..., alpha^(q-2)]`.
    pub fn coordinate_order(&self) -> Vec<FieldElement> {
        std::iter::once(FieldElement::ZERO)
            .chain((0..self.q - 1).map(|k| FieldElement(self.exp[k as usize])))
            .collect()
    }

    /// Position of `x` in [`Field::coordinate_order`].
    pub fn position(&self, x: FieldElement) -> usize {
        if x.is_zero() {
            0
        } else {
            self.log[x.0 as usize] as usize + 1
        }
    }

    pub fn digits(&self, x: FieldElement) -> Vec<u32> {
        index_to_digits(x.0, self.p(), self.m())
    }

    pub fn from_digits(&self, d: &[u32]) -> Result<FieldElement> {
        if d.len() != self.m() as usize || d.iter().any(|&c| c >= self.p()) {
            return Err(Error::DimensionMismatch(format!(
                "need {} digits below {}",
                self.m(),
                self.p()
            )));
        }
        Ok(FieldElement(digits_to_index(d, self.p())))
    }

    pub fn log(&self, x: FieldElement) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.log[x.0 as usize])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p() == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.q - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = (lb + n - la) % n;
        match self.zech[d as usize] {
            NONE => FieldElement::ZERO,
            z => FieldElement(self.exp[(la + z) as usize]),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p() == 2 || a.is_zero() {
            return a;
        }
        let half = (self.q - 1) / 2;
        FieldElement(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplies by an element of the prime subfield.
    pub fn scale(&self, c: u32, a: FieldElement) -> FieldElement {
        self.mul(self.from_prime(c), a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let n = self.q - 1;
        Ok(FieldElement(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.exp[k as usize])
    }

    /// `a^(p^e)`; negative `e` applies the inverse automorphism.
    pub fn frobenius(&self, a: FieldElement, e: i64) -> FieldElement {
        let m = self.m() as i64;
        let e = e.rem_euclid(m) as u64;
        let n = (self.q - 1) as u64;
        if n == 1 {
            return a;
        }
        self.pow(a, mod_pow(self.p() as u64, e, n))
    }

    /// Absolute trace into GF(p), as an integer in `0..p`.
    pub fn trace(&self, a: FieldElement) -> u32 {
        self.trace[a.0 as usize] as u32
    }

    fn trace_by_definition(&self, a: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut cur = a;
        for _ in 0..self.m() {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p() as u64);
        }
        acc
    }

    /// Quadratic character: 1 on nonzero squares, -1 on non-squares, 0 at 0.
    pub fn eta(&self, a: FieldElement) -> Result<i8> {
        if self.p() == 2 {
            return Err(Error::UndefinedForEvenCharacteristic);
        }
        Ok(if a.is_zero() {
            0
        } else if self.log[a.0 as usize] % 2 == 0 {
            1
        } else {
            -1
        })
    }

    pub fn is_cubic_residue(&self, a: FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if (self.q - 1) % 3 != 0 {
            return Err(Error::CubesAreAllOfGFq((self.q - 1) as u64));
        }
        Ok(self.log[a.0 as usize] % 3 == 0)
    }

    /// Sum of an iterator of elements.
    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(FieldElement::ZERO, |a, b| self.add(a, b))
    }

    /// Unique root of `a^(p^e) x^(p^(2e)) + a x + b^(p^e) = 0`.
    pub fn solve_linearized(&self, a: FieldElement, e: u32, b: FieldElement) -> Result<FieldElement> {
        LinearizedSolver::new(self, a, e)?.solve(self, b)
    }

    /// Human-readable label: `0`, `1`, or `alpha^k`.
    pub fn label(&self, a: FieldElement) -> String {
        match a.0 {
            0 => "0".into(),
            1 => "1".into(),
            _ => format!("alpha^{}", self.log[a.0 as usize]),
        }
    }

    /// Parses `0`, `1`, `alpha`, `alpha^k` (k may be negative), or `#idx`
    /// for a raw index.
    pub fn parse_label(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        match s {
            "0" => return Ok(FieldElement::ZERO),
            "1" => return Ok(FieldElement::ONE),
            "alpha" | "a" | "w" => return Ok(self.generator),
            _ => {}
        }
        if let Some(idx) = s.strip_prefix('#') {
            let i = idx
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{s}: {e}")))?;
            return self.element(i);
        }
        let exp = s
            .strip_prefix("alpha^")
            .or_else(|| s.strip_prefix("a^"))
            .ok_or_else(|| Error::Parse(format!("unrecognized element {s:?}")))?;
        let k = exp
            .trim_matches(|c| c == '{' || c == '}')
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        Ok(self.alpha_pow(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32, modulus: &str) -> Field {
        Field::new(&format!("p={p},m={m},mod={modulus}").parse().unwrap()).unwrap()
    }

    #[test]
    fn spec_round_trip() {
        let s: FieldSpec = "p=3,m=4,mod=10012".parse().unwrap();
        assert_eq!(s.modulus, vec![1, 0, 0, 1, 2]);
        assert_eq!(s.to_string(), "p=3,m=4,mod=10012");
        let d: FieldSpec = "p=2,m=5".parse().unwrap();
        assert_eq!(d.to_string(), "p=2,m=5,mod=100101");
        assert!("p=3,m=2,mod=1x1".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        let r = Field::new(&"p=2,m=2,mod=110".parse().unwrap());
        assert!(matches!(r, Err(Error::RejectsReducibleModulus(..))));
        let r = Field::new(&FieldSpec::new(4, 1, vec![1, 1]));
        assert_eq!(r.unwrap_err(), Error::RejectsNonPrimeP(4));
        let r = Field::new(&FieldSpec::new(2, 3, vec![1, 1]));
        assert!(matches!(r, Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn gf32_sums_from_worked_examples() {
        let f = gf(2, 5, "100101");
        let a = |k| f.alpha_pow(k);
        let s1 = f.sum([a(1), a(2), a(4), a(5)]);
        assert_eq!(s1, a(17));
        let s2 = f.sum([a(1), a(2), a(3), a(4)]);
        assert_eq!(s2, a(24));
        // alpha^5 + alpha^2 + 1 = 0
        assert_eq!(f.sum([a(5), a(2), FieldElement::ONE]), FieldElement::ZERO);
        let gamma = a(17);
        let gbar = f.sum([a(3), a(6), a(12), a(15)]);
        let x = f.div(gbar, f.pow(gamma, 3)).unwrap();
        assert_eq!(f.trace(x), 0);
    }

    #[test]
    fn default_table_moduli_are_primitive() {
        for p in [2, 3, 5, 7] {
            for m in 1..=10u32 {
                if (p as u64).pow(m) > 1 << 16 {
                    continue;
                }
                let f = Field::with_default_modulus(p, m).unwrap();
                if m > 1 {
                    assert_eq!(f.generator().index(), p, "p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn arithmetic_laws_small_fields() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = Field::with_default_modulus(p, m).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &x in &els {
                assert_eq!(f.add(x, f.neg(x)), FieldElement::ZERO);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
                }
                assert_eq!(f.position(f.coordinate_order()[f.position(x)]), f.position(x));
                for &y in &els {
                    // Digit-wise addition as an independent check.
                    let dx = f.digits(x);
                    let dy = f.digits(y);
                    let ds: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                    assert_eq!(f.add(x, y), f.from_digits(&ds).unwrap());
                    assert_eq!(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % p);
                }
                assert_eq!(f.trace(f.pow(x, p as u64)), f.trace(x));
                assert_eq!(f.trace(x), f.trace_by_definition(x).0);
            }
        }
    }

    #[test]
    fn trace_is_balanced() {
        let f = gf(2, 5, "100101");
        assert_eq!(f.elements().filter(|&x| f.trace(x) == 0).count(), 16);
        assert_eq!(f.trace(FieldElement::ZERO), 0);
        let g = Field::with_default_modulus(3, 3).unwrap();
        for v in 0..3 {
            assert_eq!(g.elements().filter(|&x| g.trace(x) == v).count(), 9);
        }
    }

    #[test]
    fn quadratic_character() {
        let f = Field::with_default_modulus(3, 3).unwrap();
        assert_eq!(f.eta(FieldElement::ONE), Ok(1));
        assert_eq!(f.eta(FieldElement::ZERO), Ok(0));
        assert_eq!(f.eta(f.generator()), Ok(-1));
        let squares: std::collections::HashSet<_> =
            f.elements().skip(1).map(|x| f.mul(x, x)).collect();
        assert_eq!(squares.len(), 13);
        for x in f.elements().skip(1) {
            assert_eq!(f.eta(x).unwrap() == 1, squares.contains(&x));
        }
        let e = Field::with_default_modulus(2, 3).unwrap();
        assert_eq!(e.eta(FieldElement::ONE), Err(Error::UndefinedForEvenCharacteristic));
    }

    #[test]
    fn cubic_residues_gf16() {
        let f = gf(2, 4, "10011");
        assert_eq!(f.is_cubic_residue(FieldElement::ONE), Ok(true));
        assert_eq!(f.is_cubic_residue(f.alpha_pow(11)), Ok(false));
        let count = f
            .elements()
            .skip(1)
            .filter(|&x| f.is_cubic_residue(x).unwrap())
            .count();
        assert_eq!(count, 5);
        assert_eq!(f.is_cubic_residue(FieldElement::ZERO), Err(Error::ZeroInput));
        let g = gf(2, 5, "100101");
        assert_eq!(g.is_cubic_residue(FieldElement::ONE), Err(Error::CubesAreAllOfGFq(31)));
    }

    #[test]
    fn pow_and_frobenius() {
        let f = Field::with_default_modulus(3, 4).unwrap();
        assert_eq!(f.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(f.pow(FieldElement::ZERO, 5), FieldElement::ZERO);
        for x in f.elements() {
            assert_eq!(f.pow(x, 81), x);
            let y = f.frobenius(x, 1);
            assert_eq!(y, f.pow(x, 3));
            assert_eq!(f.frobenius(y, -1), x);
            assert_eq!(f.frobenius(x, 0), x);
        }
    }

    #[test]
    fn labels_parse_back() {
        let f = gf(2, 4, "10011");
        for x in f.elements() {
            assert_eq!(f.parse_label(&f.label(x)).unwrap(), x);
        }
        assert_eq!(f.parse_label("alpha^-1").unwrap(), f.alpha_pow(14));
        assert!(f.parse_label("beta").is_err());
    }
}
