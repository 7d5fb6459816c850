//! Character sums and counting quantities over GF(p^m), each evaluated by
//! brute force next to its closed form.
//!
//! Brute sums first histogram the trace values `Tr(...) in GF(p)` and only
//! then combine them with powers of `zeta_p`, so for p = 2 every sum is an
//! exact integer and for odd p the only rounding is in the final
//! combination of p terms.

mod sweep;

pub use sweep::{run_all, LemmaReport};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{gcd, mod_pow};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, LinearizedSolver};

pub type ComplexVal = Complex64;

/// An integer quantity counted by brute force and by formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub brute: i128,
    pub closed: i128,
    pub agree: bool,
}

impl CountResult {
    pub fn new(brute: i128, closed: i128) -> Self {
        Self {
            brute,
            closed,
            agree: brute == closed,
        }
    }
}

/// A character sum evaluated by brute force and by formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumCheck {
    pub brute: ComplexVal,
    pub closed: ComplexVal,
    pub agree: bool,
}

impl SumCheck {
    fn within(brute: ComplexVal, closed: ComplexVal, q: u32) -> Self {
        Self {
            brute,
            closed,
            agree: (brute - closed).norm() <= tolerance(q),
        }
    }

    fn exact(brute: i128, closed: i128) -> Self {
        Self {
            brute: Complex64::new(brute as f64, 0.0),
            closed: Complex64::new(closed as f64, 0.0),
            agree: brute == closed,
        }
    }
}

/// Absolute tolerance for complex comparisons over GF(q).
pub fn tolerance(q: u32) -> f64 {
    1e-6 * (q as f64).sqrt()
}

/// `zeta_p^k`.
pub fn zeta(p: u32, k: i64) -> ComplexVal {
    let k = k.rem_euclid(p as i64);
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64)
}

/// `sqrt(-1)^k`, exact.
pub fn i_pow(k: i64) -> ComplexVal {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `sqrt(p*)` with `p* = (-1)^((p-1)/2) p`: `sqrt(p)` or `i sqrt(p)`.
pub fn sqrt_pstar(p: u32) -> ComplexVal {
    let r = (p as f64).sqrt();
    if p % 4 == 1 {
        Complex64::new(r, 0.0)
    } else {
        Complex64::new(0.0, r)
    }
}

fn sgn(k: i64) -> i128 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn ipow(b: u32, e: u32) -> i128 {
    (b as i128).pow(e)
}

/// Quadratic character of GF(p), as a value in {-1, 0, 1}.
pub fn eta_bar(p: u32, c: u32) -> i8 {
    let c = c % p;
    if c == 0 {
        0
    } else if mod_pow(c as u64, ((p - 1) / 2) as u64, p as u64) == 1 {
        1
    } else {
        -1
    }
}

fn odd_p(fld: &Field) -> Result<()> {
    if fld.p() == 2 {
        Err(Error::UndefinedForEvenCharacteristic)
    } else {
        Ok(())
    }
}

fn gate(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::GateUnsatisfied(what()))
    }
}

fn m_over_gcd_odd(fld: &Field, e: u32) -> Result<()> {
    let m = fld.m() as u64;
    gate(e >= 1 && (m / gcd(m, e as u64)) % 2 == 1, || {
        format!("m/gcd(m,e) must be odd (m = {m}, e = {e})")
    })
}

fn binary_even_coprime(fld: &Field, e: u32) -> Result<()> {
    let m = fld.m();
    gate(fld.p() == 2 && m % 2 == 0 && gcd(m as u64, e as u64) == 1, || {
        format!("needs p = 2, m even and gcd(m,e) = 1 (p = {}, m = {m}, e = {e})", fld.p())
    })
}

/// Histogram of `Tr(g(x))` over all x.
fn trace_histogram(fld: &Field, g: impl Fn(FieldElement) -> FieldElement) -> Vec<u64> {
    let mut h = vec![0u64; fld.p() as usize];
    for x in fld.elements() {
        h[fld.trace(g(x)) as usize] += 1;
    }
    h
}

/// `sum_j h[j] zeta_p^j`.
fn combine(p: u32, h: &[u64]) -> ComplexVal {
    h.iter()
        .enumerate()
        .map(|(j, &c)| zeta(p, j as i64) * c as f64)
        .sum()
}

/// `h[0] - h[1]` for p = 2.
fn combine_binary(h: &[u64]) -> i128 {
    h[0] as i128 - h[1] as i128
}

/// Rounds a complex value that should be an integer.
fn to_integer(z: ComplexVal, q: u32) -> Result<i128> {
    let r = z.re.round();
    if z.im.abs() > tolerance(q) || (z.re - r).abs() > tolerance(q) {
        return Err(Error::NonIntegralCount(format!("{z}")));
    }
    Ok(r as i128)
}

/// `p^e + 1` as an exponent.
fn s_exp(fld: &Field, e: u32) -> u64 {
    (fld.p() as u64).pow(e) + 1
}

// ---------------------------------------------------------------------------
// Gauss sums and quadratic sums
// ---------------------------------------------------------------------------

/// `(G(eta, chi_1), G(eta_bar, chi_bar_1))`, quadratic Gauss sums of GF(q)
/// and of GF(p).
pub fn gauss_sums(fld: &Field) -> Result<(SumCheck, SumCheck)> {
    odd_p(fld)?;
    let (p, m, q) = (fld.p(), fld.m() as i64, fld.q());
    let g: ComplexVal = fld
        .elements()
        .skip(1)
        .map(|x| zeta(p, fld.trace(x) as i64) * fld.eta(x).unwrap() as f64)
        .sum();
    let h = ((p as i64 - 1) / 2).pow(2) * m;
    let g_closed = i_pow(h) * (sgn(m - 1) as f64 * (q as f64).sqrt());
    let gb: ComplexVal = (1..p).map(|c| zeta(p, c as i64) * eta_bar(p, c) as f64).sum();
    Ok((
        SumCheck::within(g, g_closed, q),
        SumCheck::within(gb, sqrt_pstar(p), p),
    ))
}

/// The restriction of `eta` to GF(p)*: identically 1 for even m and equal
/// to `eta_bar` for odd m. One result per `c` in GF(p)*.
pub fn eta_on_prime_field(fld: &Field) -> Result<Vec<CountResult>> {
    odd_p(fld)?;
    let p = fld.p();
    Ok((1..p)
        .map(|c| {
            let brute = fld.eta(fld.from_prime(c)).unwrap() as i128;
            let closed = if fld.m() % 2 == 0 { 1 } else { eta_bar(p, c) as i128 };
            CountResult::new(brute, closed)
        })
        .collect())
}

/// `sum_x chi_b(a2 x^2 + a1 x + a0)` for `b != 0`.
///
/// For odd q the closed form is `chi_b(a0 - a1^2/(4 a2)) eta(a2) G(eta, chi_b)`
/// with `G(eta, chi_b) = eta(b) G(eta, chi_1)`. For even q it is
/// `chi_b(a0) q` when `a2 = b a1^2` and 0 otherwise.
pub fn quad_char_sum(
    fld: &Field,
    b: FieldElement,
    a2: FieldElement,
    a1: FieldElement,
    a0: FieldElement,
) -> Result<SumCheck> {
    gate(!b.is_zero(), || "character parameter b must be nonzero".into())?;
    let (p, q) = (fld.p(), fld.q());
    let poly = |x: FieldElement| {
        let v = fld.sum([fld.mul(a2, fld.mul(x, x)), fld.mul(a1, x), a0]);
        fld.mul(b, v)
    };
    let h = trace_histogram(fld, poly);
    if p == 2 {
        let closed = if a2 == fld.mul(b, fld.mul(a1, a1)) {
            q as i128 * sgn(fld.trace(fld.mul(b, a0)) as i64)
        } else {
            0
        };
        return Ok(SumCheck::exact(combine_binary(&h), closed));
    }
    gate(!a2.is_zero(), || "a2 must be nonzero".into())?;
    let four_a2 = fld.scale(4, a2);
    let shift = fld.sub(a0, fld.div(fld.mul(a1, a1), four_a2)?);
    let (g, _) = gauss_sums(fld)?;
    let closed = zeta(p, fld.trace(fld.mul(b, shift)) as i64)
        * (fld.eta(a2)? as f64 * fld.eta(b)? as f64)
        * g.closed;
    Ok(SumCheck::within(combine(p, &h), closed, q))
}

// ---------------------------------------------------------------------------
// S_e(a, b)
// ---------------------------------------------------------------------------

/// Brute `S_e(a,b) = sum_x chi_1(a x^(p^e+1) + b x)`.
pub fn exp_sum_se(fld: &Field, e: u32, a: FieldElement, b: FieldElement) -> ComplexVal {
    combine(fld.p(), &se_histogram(fld, e, a, b))
}

fn se_histogram(fld: &Field, e: u32, a: FieldElement, b: FieldElement) -> Vec<u64> {
    let s = s_exp(fld, e);
    trace_histogram(fld, |x| fld.add(fld.mul(a, fld.pow(x, s)), fld.mul(b, x)))
}

/// Closed form of `S_e(a,b)` where one is known: the trivial cases
/// `a = 0`, the binary case `b = 0` with m even and gcd(m,e) = 1, and the
/// odd case `a, b != 0` with m/gcd(m,e) odd.
pub fn exp_sum_se_closed(fld: &Field, e: u32, a: FieldElement, b: FieldElement) -> Result<ComplexVal> {
    let (p, m, q) = (fld.p(), fld.m() as i64, fld.q());
    if a.is_zero() {
        let v = if b.is_zero() { q as f64 } else { 0.0 };
        return Ok(Complex64::new(v, 0.0));
    }
    if p == 2 {
        binary_even_coprime(fld, e)?;
        gate(b.is_zero(), || "binary closed form needs b = 0".into())?;
        let half = 2f64.powi(m as i32 / 2);
        let s = sgn(m / 2) as f64;
        let v = if fld.is_cubic_residue(a)? { -s * 2.0 * half } else { s * half };
        return Ok(Complex64::new(v, 0.0));
    }
    m_over_gcd_odd(fld, e)?;
    gate(!b.is_zero(), || "odd closed form needs b != 0".into())?;
    let x = fld.solve_linearized(a, e, b)?;
    let inner = fld.neg(fld.mul(a, fld.pow(x, s_exp(fld, e))));
    let mut v = zeta(p, fld.trace(inner) as i64)
        * (sgn(m - 1) as f64 * (q as f64).sqrt() * fld.eta(fld.neg(a))? as f64);
    if p % 4 == 3 {
        v *= i_pow(3 * m);
    }
    Ok(v)
}

/// `S_e(a,b)` against its closed form; exact for p = 2.
pub fn se_check(fld: &Field, e: u32, a: FieldElement, b: FieldElement) -> Result<SumCheck> {
    let closed = exp_sum_se_closed(fld, e, a, b)?;
    let h = se_histogram(fld, e, a, b);
    if fld.p() == 2 {
        return Ok(SumCheck::exact(combine_binary(&h), closed.re as i128));
    }
    Ok(SumCheck::within(combine(fld.p(), &h), closed, fld.q()))
}

/// `sum_{b != 0} S_e(a,b)^h` for p = 2, m even, gcd(m,e) = 1, h even.
pub fn se_power_sum(fld: &Field, e: u32, a: FieldElement, h: u32) -> Result<CountResult> {
    binary_even_coprime(fld, e)?;
    gate(h >= 2 && h % 2 == 0, || format!("h = {h} must be positive and even"))?;
    gate(!a.is_zero(), || "a must be nonzero".into())?;
    let m = fld.m();
    let brute: i128 = fld
        .elements()
        .skip(1)
        .map(|b| combine_binary(&se_histogram(fld, e, a, b)).pow(h))
        .sum();
    let closed = if fld.is_cubic_residue(a)? {
        (ipow(2, m - 2) - 1) * ipow(2, (m / 2 + 1) * h)
    } else {
        (ipow(2, m) - 1) * ipow(2, m / 2 * h)
    };
    Ok(CountResult::new(brute, closed))
}

/// `Tr(a x_{a,b}^(p^e+1))` where `x_{a,b}` solves
/// `a^(p^e) x^(p^(2e)) + a x + b^(p^e) = 0`.
fn trace_at_root(fld: &Field, solver: &LinearizedSolver, e: u32, a: FieldElement, b: FieldElement) -> Result<u32> {
    let x = solver.solve(fld, b)?;
    Ok(fld.trace(fld.mul(a, fld.pow(x, s_exp(fld, e)))))
}

fn delta_closed(fld: &Field, e: u32, a: FieldElement, b: FieldElement) -> Result<ComplexVal> {
    let (p, m, q) = (fld.p(), fld.m() as i64, fld.q());
    let solver = LinearizedSolver::new(fld, a, e)?;
    let t = trace_at_root(fld, &solver, e, a, b)?;
    let rq = (q as f64).sqrt();
    let eta_a = fld.eta(a)? as f64;
    let v = if m % 2 == 1 {
        if t == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            let eta_t = fld.eta(fld.from_prime(t))? as f64;
            let mut v = sqrt_pstar(p) * (eta_a * eta_t * rq);
            if p % 4 == 3 {
                v *= i_pow(3 * m);
            }
            v
        }
    } else {
        let mut v = if t == 0 {
            Complex64::new(-((p - 1) as f64) * eta_a * rq, 0.0)
        } else {
            Complex64::new(eta_a * rq, 0.0)
        };
        if p % 4 == 3 {
            v *= i_pow(m);
        }
        v
    };
    Ok(v)
}

/// `Delta = sum_{c in GF(p)*} S_e(ac, bc)` for p odd, m/gcd(m,e) odd,
/// `a, b != 0`.
pub fn delta_sum(fld: &Field, e: u32, a: FieldElement, b: FieldElement) -> Result<SumCheck> {
    odd_p(fld)?;
    m_over_gcd_odd(fld, e)?;
    gate(!a.is_zero() && !b.is_zero(), || "a and b must be nonzero".into())?;
    let p = fld.p();
    let brute = (1..p)
        .map(|c| exp_sum_se(fld, e, fld.scale(c, a), fld.scale(c, b)))
        .sum();
    Ok(SumCheck::within(brute, delta_closed(fld, e, a, b)?, fld.q()))
}

/// `#{x : Tr(a x^(p^e+1) + b x) = 0}` for p odd, m/gcd(m,e) odd.
pub fn count_nhat0(fld: &Field, e: u32, a: FieldElement, b: FieldElement) -> Result<CountResult> {
    odd_p(fld)?;
    m_over_gcd_odd(fld, e)?;
    let (p, m, q) = (fld.p(), fld.m(), fld.q());
    let brute = se_histogram(fld, e, a, b)[0] as i128;
    let closed = match (a.is_zero(), b.is_zero()) {
        (true, true) => q as i128,
        (true, false) => ipow(p, m - 1),
        (false, true) if m % 2 == 1 => ipow(p, m - 1),
        (false, true) => {
            let mut t = Complex64::new((p - 1) as f64 * fld.eta(a)? as f64 * (q as f64).sqrt(), 0.0);
            if p % 4 == 3 {
                t *= i_pow(m as i64);
            }
            to_integer((Complex64::new(q as f64, 0.0) - t) / p as f64, q)?
        }
        (false, false) => {
            let d = delta_closed(fld, e, a, b)?;
            to_integer((Complex64::new(q as f64, 0.0) + d) / p as f64, q)?
        }
    };
    Ok(CountResult::new(brute, closed))
}

// ---------------------------------------------------------------------------
// Quadratic trace counts
// ---------------------------------------------------------------------------

/// Counts of squares and of non-squares in GF(q)* with trace zero.
pub fn count_quadchar_trace(fld: &Field) -> Result<(CountResult, CountResult)> {
    odd_p(fld)?;
    let (p, m) = (fld.p(), fld.m());
    let (mut sq, mut nsq) = (0i128, 0i128);
    for x in fld.elements().skip(1).filter(|&x| fld.trace(x) == 0) {
        if fld.eta(x)? == 1 {
            sq += 1;
        } else {
            nsq += 1;
        }
    }
    let base = ipow(p, m - 1) - 1;
    if m % 2 == 1 {
        return Ok((CountResult::new(sq, base / 2), CountResult::new(nsq, base / 2)));
    }
    // (p-1)m/2 is even here, so the power of sqrt(-1) is a sign.
    let corr = (p as i128 - 1) * ipow(p, (m - 2) / 2) * sgn((p as i64 - 1) * m as i64 / 4);
    Ok((
        CountResult::new(sq, (base - corr) / 2),
        CountResult::new(nsq, (base + corr) / 2),
    ))
}

/// `N_0(a,b) = #{x : Tr(a x^2 + b x) = 0}` for p odd.
pub fn count_n0_quadratic(fld: &Field, a: FieldElement, b: FieldElement) -> Result<CountResult> {
    odd_p(fld)?;
    let (p, m) = (fld.p(), fld.m());
    let brute = trace_histogram(fld, |x| fld.add(fld.mul(a, fld.mul(x, x)), fld.mul(b, x)))[0] as i128;
    let pm1 = ipow(p, m - 1);
    let pl = p as i64 - 1;
    let closed = if a.is_zero() {
        if b.is_zero() {
            ipow(p, m)
        } else {
            pm1
        }
    } else {
        let t = fld.trace(fld.div(fld.mul(b, b), fld.scale(4, a))?);
        let eta_a = fld.eta(a)?;
        if m % 2 == 1 {
            if t == 0 {
                pm1
            } else {
                let r = ipow(p, (m - 1) / 2);
                let k = pl * (m as i64 + 1);
                if eta_a * eta_bar(p, p - t) == 1 {
                    pm1 + r * sgn(k / 4)
                } else {
                    pm1 + r * sgn((k + 4) / 4)
                }
            }
        } else {
            let k = m as i64 * pl;
            let r = ipow(p, (m - 2) / 2);
            match (t == 0, eta_a == 1) {
                (true, true) => pm1 + (p as i128 - 1) * r * sgn((k + 4) / 4),
                (true, false) => pm1 + (p as i128 - 1) * r * sgn(k / 4),
                (false, true) => pm1 + r * sgn(k / 4),
                (false, false) => pm1 + r * sgn((k + 4) / 4),
            }
        }
    };
    Ok(CountResult::new(brute, closed))
}

// ---------------------------------------------------------------------------
// Cubic residues and trace in even characteristic
// ---------------------------------------------------------------------------

/// `[R(3,0), R(3,1), Rbar(3,0), Rbar(3,1)]`: nonzero elements split by cubic
/// residuosity and trace, for p = 2 and m even.
pub fn count_r3(fld: &Field) -> Result<[CountResult; 4]> {
    let m = fld.m();
    gate(fld.p() == 2 && m % 2 == 0 && m >= 2, || "needs p = 2 and m even".into())?;
    let mut c = [0i128; 4];
    for x in fld.elements().skip(1) {
        let idx = if fld.is_cubic_residue(x)? { 0 } else { 2 } + fld.trace(x) as usize;
        c[idx] += 1;
    }
    let q = ipow(2, m);
    let six_x = q - 2 + (-2i128).pow(m / 2 + 1);
    let closed = [
        six_x / 6,
        (q - 1) / 3 - six_x / 6,
        (q / 2 - 1) - six_x / 6,
        (q - (-2i128).pow(m / 2)) / 3,
    ];
    Ok(std::array::from_fn(|i| CountResult::new(c[i], closed[i])))
}

// ---------------------------------------------------------------------------
// Walsh transforms of bent functions
// ---------------------------------------------------------------------------

/// The two bent families with known duals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BentFunction {
    /// `f(x) = Tr(-x^2 / (4a))`.
    Quadratic { a: FieldElement },
    /// `f(x) = Tr(a x^(p^e+1))` with m/gcd(m,e) odd.
    Monomial { e: u32, a: FieldElement },
}

impl BentFunction {
    fn validate(&self, fld: &Field) -> Result<()> {
        odd_p(fld)?;
        match *self {
            Self::Quadratic { a } => gate(!a.is_zero(), || "a must be nonzero".into()),
            Self::Monomial { e, a } => {
                m_over_gcd_odd(fld, e)?;
                gate(!a.is_zero(), || "a must be nonzero".into())
            }
        }
    }

    /// Values `f(x)` indexed by element index.
    pub fn values(&self, fld: &Field) -> Result<Vec<u32>> {
        self.validate(fld)?;
        Ok(match *self {
            Self::Quadratic { a } => {
                let c = fld.neg(fld.inv(fld.scale(4, a))?);
                fld.elements().map(|x| fld.trace(fld.mul(c, fld.mul(x, x)))).collect()
            }
            Self::Monomial { e, a } => {
                let s = s_exp(fld, e);
                fld.elements().map(|x| fld.trace(fld.mul(a, fld.pow(x, s)))).collect()
            }
        })
    }

    /// Sign of the Walsh transform from the closed form.
    pub fn closed_sign(&self, fld: &Field) -> Result<i8> {
        self.validate(fld)?;
        let (p, m) = (fld.p() as i64, fld.m() as i64);
        let half = (fld.q() as i64 - 1) / 2;
        let (a, k) = match *self {
            Self::Quadratic { a } => (a, m - 1 + half),
            Self::Monomial { a, .. } if p % 4 == 1 => (a, m - 1 + half),
            Self::Monomial { a, .. } => (a, half + 1),
        };
        Ok(fld.eta(a)? * sgn(k) as i8)
    }

    /// Dual value `f*(beta)` from the closed form.
    pub fn closed_dual(&self, fld: &Field, beta: FieldElement) -> Result<u32> {
        self.validate(fld)?;
        Ok(match *self {
            Self::Quadratic { a } => fld.trace(fld.mul(a, fld.mul(beta, beta))),
            Self::Monomial { e, a } => {
                let x = fld.solve_linearized(a, e, fld.neg(beta))?;
                fld.trace(fld.neg(fld.mul(a, fld.pow(x, s_exp(fld, e)))))
            }
        })
    }
}

/// `W_f(beta) = sum_x zeta_p^(f(x) - Tr(beta x))` for `f` given by values.
pub fn walsh(fld: &Field, f: &[u32], beta: FieldElement) -> ComplexVal {
    combine(fld.p(), &walsh_histogram(fld, f, beta))
}

fn walsh_histogram(fld: &Field, f: &[u32], beta: FieldElement) -> Vec<u64> {
    let p = fld.p();
    let mut h = vec![0u64; p as usize];
    for x in fld.elements() {
        let v = (f[x.index() as usize] + p - fld.trace(fld.mul(beta, x))) % p;
        h[v as usize] += 1;
    }
    h
}

/// Sign and dual of a weakly regular bent function, read off its spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub sign: i8,
    /// `f*(beta)` indexed by element index.
    pub dual: Vec<u32>,
}

/// Writes every `W_f(beta)` as `eps sqrt(p*)^m zeta_p^(f*(beta))`.
///
/// Fails with `NotBent` when some value is not of that form or the sign
/// changes with beta.
pub fn walsh_spectrum(fld: &Field, f: &[u32]) -> Result<WalshSpectrum> {
    odd_p(fld)?;
    let (p, m, q) = (fld.p(), fld.m() as i32, fld.q());
    let scale = sqrt_pstar(p).powi(m);
    let tol = tolerance(q);
    let mut sign = 0i8;
    let mut dual = Vec::with_capacity(q as usize);
    for beta in fld.elements() {
        let w = walsh(fld, f, beta);
        let not_bent = || Error::NotBent {
            beta: beta.index(),
            magnitude: format!("{:.6}", w.norm()),
        };
        let u = w / scale;
        let (eps, j) = (0..p)
            .flat_map(|j| [(1i8, j), (-1i8, j)])
            .find(|&(s, j)| (u - zeta(p, j as i64) * s as f64).norm() * (q as f64).sqrt() <= tol)
            .ok_or_else(not_bent)?;
        if sign != 0 && sign != eps {
            return Err(not_bent());
        }
        sign = eps;
        dual.push(j);
    }
    Ok(WalshSpectrum { sign, dual })
}

/// Sign and dual of a bent function against the closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshCheck {
    pub sign: CountResult,
    /// Number of beta where the brute dual matches the closed dual,
    /// against q.
    pub dual: CountResult,
}

pub fn walsh_check(fld: &Field, fun: BentFunction) -> Result<WalshCheck> {
    let spec = walsh_spectrum(fld, &fun.values(fld)?)?;
    let mut matches = 0i128;
    for beta in fld.elements() {
        if spec.dual[beta.index() as usize] == fun.closed_dual(fld, beta)? {
            matches += 1;
        }
    }
    Ok(WalshCheck {
        sign: CountResult::new(spec.sign as i128, fun.closed_sign(fld)? as i128),
        dual: CountResult::new(matches, fld.q() as i128),
    })
}

/// `[N_{f,beta}, N_{sq,beta}, N_{nsq,beta}]`: points of the hyperplane
/// `Tr(beta x) = 0` where `f` is zero, a nonzero square, a non-square.
pub fn count_bent_zero_sets(fld: &Field, fun: BentFunction, beta: FieldElement) -> Result<[CountResult; 3]> {
    let f = fun.values(fld)?;
    let spec = walsh_spectrum(fld, &f)?;
    bent_zero_sets(fld, &f, &spec, beta)
}

fn bent_zero_sets(fld: &Field, f: &[u32], spec: &WalshSpectrum, beta: FieldElement) -> Result<[CountResult; 3]> {
    gate(!beta.is_zero(), || "beta must be nonzero".into())?;
    let d = spec.dual[beta.index() as usize];
    if d != 0 {
        return Err(Error::DualNonzero(d));
    }
    let p = fld.p();
    let mut c = [0i128; 3];
    for x in fld.elements().filter(|&x| fld.trace(fld.mul(beta, x)) == 0) {
        let v = f[x.index() as usize];
        c[match v {
            0 => 0,
            _ if eta_bar(p, v) == 1 => 1,
            _ => 2,
        }] += 1;
    }
    let closed = zero_set_closed(fld, spec.sign);
    Ok(std::array::from_fn(|i| CountResult::new(c[i], closed[i])))
}

/// Closed forms shared by the bent zero-set counts and by `N~_gamma`.
fn zero_set_closed(fld: &Field, eps: i8) -> [i128; 3] {
    let (p, m) = (fld.p(), fld.m());
    let half = (p as i128 - 1) / 2;
    let pm2 = ipow(p, m - 2);
    let eps = eps as i128;
    if m % 2 == 0 {
        let e = eps * (eta_bar(p, p - 1) as i128).pow(m / 2);
        let r = ipow(p, (m - 2) / 2);
        let n0 = pm2 + e * (p as i128 - 1) * r;
        let n = half * (pm2 - e * r);
        [n0, n, n]
    } else {
        // sqrt(p*)^(m-1) = (p*)^((m-1)/2), an integer.
        let pstar = if p % 4 == 1 { p as i128 } else { -(p as i128) };
        let r = pstar.pow((m - 1) / 2);
        [pm2, half * (pm2 + eps * r), half * (pm2 - eps * r)]
    }
}

/// Class of `gamma` in GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaClass {
    Zero,
    Square,
    NonSquare,
}

/// `N~` summed over a class of gamma: the number of trace-zero `b` with
/// `Tr(a x_{a,b}^(p^e+1))` in the class. Needs `Tr(a) = 0`, `a != 0`.
///
/// The square and non-square values are totals over the class.
pub fn count_ntilde(fld: &Field, e: u32, a: FieldElement, class: GammaClass) -> Result<CountResult> {
    let fun = BentFunction::Monomial { e, a };
    let eps = fun.closed_sign(fld)?;
    gate(fld.trace(a) == 0, || format!("Tr(a) = {} must be zero", fld.trace(a)))?;
    let p = fld.p();
    let solver = LinearizedSolver::new(fld, a, e)?;
    let mut brute = 0i128;
    for b in fld.elements().filter(|&b| fld.trace(b) == 0) {
        let g = trace_at_root(fld, &solver, e, a, b)?;
        let c = match g {
            0 => GammaClass::Zero,
            _ if eta_bar(p, g) == 1 => GammaClass::Square,
            _ => GammaClass::NonSquare,
        };
        if c == class {
            brute += 1;
        }
    }
    let closed = zero_set_closed(fld, eps);
    let i = match class {
        GammaClass::Zero => 0,
        GammaClass::Square => 1,
        GammaClass::NonSquare => 2,
    };
    Ok(CountResult::new(brute, closed[i]))
}

// ---------------------------------------------------------------------------
// Solution counts of power-sum systems in even characteristic
// ---------------------------------------------------------------------------

/// Polynomial systems over GF(2^m) with `s = 2^e + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionSystem {
    /// Pairs `(x,y)` with `x + y = S_1`, `x^s + y^s = S_s`, where `S_i` are
    /// the power sums of the given 4-set, and all six elements distinct.
    Pair { t: [FieldElement; 4] },
    /// Triples with `x1 + x2 + x3 = a`, `x1^s + x2^s + x3^s = b`, for
    /// `a^s != b`; m even.
    Triple { a: FieldElement, b: FieldElement },
    /// Distinct quadruples with `x + y + z + u = 0` and
    /// `x^s + y^s + z^s + u^s = 1`; m even.
    Quad01,
}

pub fn count_solution_systems(fld: &Field, e: u32, sys: SolutionSystem) -> Result<CountResult> {
    let m = fld.m();
    gate(fld.p() == 2 && m >= 4 && gcd(m as u64, e as u64) == 1, || {
        format!("needs p = 2, m >= 4, gcd(m,e) = 1 (p = {}, m = {m}, e = {e})", fld.p())
    })?;
    let s = s_exp(fld, e);
    let pw: Vec<FieldElement> = fld.elements().map(|x| fld.pow(x, s)).collect();
    let pw = |x: FieldElement| pw[x.index() as usize];
    let q = fld.q();
    match sys {
        SolutionSystem::Pair { t } => {
            let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
            gate(distinct, || "the four elements must be distinct".into())?;
            let s1 = fld.sum(t);
            let ss = fld.sum(t.map(pw));
            let brute = fld
                .elements()
                .filter(|&x| {
                    let y = fld.add(s1, x);
                    fld.add(pw(x), pw(y)) == ss && x != y && !t.contains(&x) && !t.contains(&y)
                })
                .count() as i128;
            let closed = if !s1.is_zero() && fld.trace(fld.add(fld.div(ss, pw(s1))?, FieldElement::ONE)) == 0 {
                2
            } else {
                0
            };
            Ok(CountResult::new(brute, closed))
        }
        SolutionSystem::Triple { a, b } => {
            gate(m % 2 == 0, || "m must be even".into())?;
            gate(pw(a) != b, || "a^s must differ from b".into())?;
            let mut brute = 0i128;
            for x1 in fld.elements() {
                for x2 in fld.elements() {
                    let x3 = fld.sum([a, x1, x2]);
                    if fld.sum([pw(x1), pw(x2), pw(x3)]) == b {
                        brute += 1;
                    }
                }
            }
            let qi = q as i128;
            let closed = if fld.is_cubic_residue(fld.add(pw(a), b))? {
                qi + (-2i128).pow(m / 2 + 1) - 2
            } else {
                qi + (-2i128).pow(m / 2) - 2
            };
            Ok(CountResult::new(brute, closed))
        }
        SolutionSystem::Quad01 => {
            gate(m % 2 == 0, || "m must be even".into())?;
            let mut brute = 0i128;
            for x in fld.elements() {
                for y in fld.elements().filter(|&y| y != x) {
                    for z in fld.elements().filter(|&z| z != x && z != y) {
                        let u = fld.sum([x, y, z]);
                        if u != x && u != y && u != z && fld.sum([pw(x), pw(y), pw(z), pw(u)]) == FieldElement::ONE {
                            brute += 1;
                        }
                    }
                }
            }
            let qi = q as i128;
            let closed = qi * (qi - 2 - sgn(m as i64 / 2) * ipow(2, m / 2 + 1));
            Ok(CountResult::new(brute, closed))
        }
    }
}
