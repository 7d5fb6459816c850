//! Closed-form predictions: weight-distribution tables, lambda predictors,
//! dual parameters, design transfer and the Assmus-Mattson range.

mod tables;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::gcd;
use crate::code::WeightDistribution;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

pub use crate::code::stirling_s;

/// Which closed-form table to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableTag {
    /// Full binary code, m odd.
    Tab1,
    /// Full binary code, m even (Gold exponents).
    Tab2,
    /// m odd, one coordinate shortened.
    Tab3,
    /// m odd, two coordinates shortened.
    Tab4,
    /// m odd, three coordinates shortened.
    Tab5,
    /// m even, one coordinate shortened.
    Tab6,
    /// m even, two coordinates shortened.
    Tab7,
    /// m odd, four coordinates, lambda = 0.
    Tab8,
    /// m odd, four coordinates, lambda = 1.
    Tab9,
    /// m even, three coordinates, parameterized by lambda.
    Tab10,
    /// m even, T = GF(4).
    Gf4,
    /// p odd, f = x^2, m odd, t = 1.
    Tab11,
    /// p odd, f = x^2, m odd, t = 2.
    Tab12,
    /// p odd, f = x^2, m even, t = 1.
    Tab13,
    /// p odd, f = x^2, m even, t = 2.
    Tab14,
    /// p odd, T = GF(p), m odd.
    Tab15,
    /// p odd, T = GF(p), m even.
    Tab16,
}

impl TableTag {
    pub const ALL: [TableTag; 17] = [
        TableTag::Tab1,
        TableTag::Tab2,
        TableTag::Tab3,
        TableTag::Tab4,
        TableTag::Tab5,
        TableTag::Tab6,
        TableTag::Tab7,
        TableTag::Tab8,
        TableTag::Tab9,
        TableTag::Tab10,
        TableTag::Gf4,
        TableTag::Tab11,
        TableTag::Tab12,
        TableTag::Tab13,
        TableTag::Tab14,
        TableTag::Tab15,
        TableTag::Tab16,
    ];

    pub fn as_str(self) -> &'static str {
        use TableTag::*;
        match self {
            Tab1 => "tab1",
            Tab2 => "tab2",
            Tab3 => "tab3",
            Tab4 => "tab4",
            Tab5 => "tab5",
            Tab6 => "tab6",
            Tab7 => "tab7",
            Tab8 => "tab8",
            Tab9 => "tab9",
            Tab10 => "tab10",
            Gf4 => "tab-gf4",
            Tab11 => "tab11",
            Tab12 => "tab12",
            Tab13 => "tab13",
            Tab14 => "tab14",
            Tab15 => "tab15",
            Tab16 => "tab16",
        }
    }

    /// Number of shortened coordinates.
    pub fn t(self, p: u32) -> usize {
        use TableTag::*;
        match self {
            Tab1 | Tab2 => 0,
            Tab3 | Tab6 | Tab11 | Tab13 => 1,
            Tab4 | Tab7 | Tab12 | Tab14 => 2,
            Tab5 | Tab10 => 3,
            Tab8 | Tab9 | Gf4 => 4,
            Tab15 | Tab16 => p as usize,
        }
    }

    pub fn needs_lambda(self) -> bool {
        self == TableTag::Tab10
    }
}

impl fmt::Display for TableTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableTag {
    type Err = Error;

    /// Accepts `tab1`..`tab16`, `tab-gf4` and `thm4.8`, case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "thm4.8" || t == "gf4" {
            return Ok(TableTag::Gf4);
        }
        TableTag::ALL
            .into_iter()
            .find(|tag| tag.as_str() == t)
            .ok_or_else(|| Error::Parse(format!("unknown table tag {s:?}")))
    }
}

/// An evaluated table: every row as exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedWD {
    pub tag: TableTag,
    pub p: u32,
    pub m: u32,
    pub lambda: Option<i64>,
    pub n: usize,
    pub k: usize,
    /// `(weight, count)` ascending by weight, zero counts dropped.
    pub counts: Vec<(usize, u128)>,
}

impl PredictedWD {
    pub fn to_weight_distribution(&self) -> WeightDistribution {
        WeightDistribution::new(self.n, self.counts.iter().copied())
            .expect("weights are validated against n")
    }
}

/// Evaluates a table at `(p, m)`; `lambda` is required by `tab10` only.
///
/// Every count must be a non-negative integer and the counts must sum to
/// `p^k`.
pub fn table_wd(tag: TableTag, p: u32, m: u32, lambda: Option<i64>) -> Result<PredictedWD> {
    let q = (p as u128).checked_pow(m).filter(|&q| q <= 1 << 32);
    if q.is_none() {
        return Err(Error::GateUnsatisfied(format!("{p}^{m} exceeds 2^32")));
    }
    let raw = tables::evaluate(tag, p, m, lambda)?;
    let mut counts: Vec<(usize, u128)> = Vec::new();
    let mut total: i128 = 0;
    for (w, c) in raw.rows {
        if !c.is_integer() {
            return Err(Error::NonIntegralCount(format!("{tag} at weight {w}: {c}")));
        }
        let c = c.to_integer();
        if c < 0 {
            return Err(Error::NegativeCount {
                table: tag.to_string(),
                weight: w,
                count: c,
            });
        }
        if w < 0 || w > raw.n {
            return Err(Error::GateUnsatisfied(format!("{tag}: weight {w} outside 0..={}", raw.n)));
        }
        total += c;
        if c > 0 {
            match counts.iter_mut().find(|(x, _)| *x as i128 == w) {
                Some(slot) => slot.1 += c as u128,
                None => counts.push((w as usize, c as u128)),
            }
        }
    }
    counts.sort_unstable();
    let expected = (p as i128).pow(raw.k);
    if total != expected {
        return Err(Error::MassMismatch {
            table: tag.to_string(),
            total,
            expected,
        });
    }
    Ok(PredictedWD {
        tag,
        p,
        m,
        lambda: if tag.needs_lambda() { lambda } else { None },
        n: raw.n as usize,
        k: raw.k as usize,
        counts,
    })
}

/// A predicted `lambda_{T,6}` of the dual code and the branch that fixed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaPrediction {
    pub lambda: u64,
    pub branch: String,
}

fn binary_gcd_gate(fld: &Field, e: u32) -> Result<()> {
    if fld.p() != 2 {
        return Err(Error::GateUnsatisfied(format!("binary field required, got p = {}", fld.p())));
    }
    if e == 0 || gcd(fld.m() as u64, e as u64) != 1 {
        return Err(Error::GateUnsatisfied(format!("gcd(m, e) = 1 required, got m = {}, e = {e}", fld.m())));
    }
    Ok(())
}

fn distinct(t: &[FieldElement]) -> Result<()> {
    let mut v: Vec<u32> = t.iter().map(|x| x.index()).collect();
    v.sort_unstable();
    v.dedup();
    if v.len() != t.len() {
        return Err(Error::DegenerateT("coordinates must be distinct".into()));
    }
    Ok(())
}

/// `lambda_{T,6}` for a 4-set T: 1 when `S_1 != 0` and
/// `Tr(S_{2^e+1} / S_1^{2^e+1} + 1) = 0`, otherwise 0.
pub fn predict_lambda_odd4(fld: &Field, e: u32, t: &[FieldElement; 4]) -> Result<LambdaPrediction> {
    binary_gcd_gate(fld, e)?;
    distinct(t)?;
    let s = (1u64 << e) + 1;
    let s1 = fld.sum(t.iter().copied());
    if s1.is_zero() {
        return Ok(LambdaPrediction {
            lambda: 0,
            branch: "sum of T is zero".into(),
        });
    }
    let ss = fld.sum(t.iter().map(|&x| fld.pow(x, s)));
    let ratio = fld.div(ss, fld.pow(s1, s))?;
    let tr = fld.trace(fld.add(ratio, FieldElement::ONE));
    Ok(if tr == 0 {
        LambdaPrediction {
            lambda: 1,
            branch: "Tr(S_s/S_1^s + 1) = 0".into(),
        }
    } else {
        LambdaPrediction {
            lambda: 0,
            branch: "Tr(S_s/S_1^s + 1) = 1".into(),
        }
    })
}

/// `lambda_{T,6}` for a 3-set T in GF(2^m), m even: determined by whether
/// `a^{2^e+1} + b` is a cubic residue, with `a`, `b` the power sums of T.
pub fn predict_lambda_even3(fld: &Field, e: u32, t: &[FieldElement; 3]) -> Result<LambdaPrediction> {
    binary_gcd_gate(fld, e)?;
    let m = fld.m();
    if m % 2 != 0 {
        return Err(Error::GateUnsatisfied(format!("m must be even, got {m}")));
    }
    distinct(t)?;
    let s = (1u64 << e) + 1;
    let a = fld.sum(t.iter().copied());
    let b = fld.sum(t.iter().map(|&x| fld.pow(x, s)));
    let c = fld.add(fld.pow(a, s), b);
    if c.is_zero() {
        return Err(Error::DegenerateT("a^(2^e+1) = b".into()));
    }
    let q = 1i64 << m;
    let sign = if (m / 2) % 2 == 0 { 1 } else { -1 };
    let half = 1i64 << (m / 2);
    let (num, branch) = if fld.is_cubic_residue(c)? {
        (q - 2 - sign * 2 * half, "a^s + b is a cubic residue")
    } else {
        (q - 2 + sign * half, "a^s + b is not a cubic residue")
    };
    Ok(LambdaPrediction {
        lambda: (num / 6 - 1) as u64,
        branch: branch.into(),
    })
}

/// Length, dimension and minimum distance of the dual of the full binary
/// code: `[2^m, 2^m - 2m - 1, 6]`.
pub fn dual_params(m: u32) -> Result<(u64, u64, u64)> {
    if !(4..=40).contains(&m) {
        return Err(Error::GateUnsatisfied(format!("m >= 4 required, got {m}")));
    }
    let n = 1u64 << m;
    Ok((n, n - 2 * m as u64 - 1, 6))
}

/// `A_6` of the dual for m even: `2^{m-4} (2^m - 4)^2 (2^m - 1) / 45`.
pub fn a6_dual(m: u32) -> Result<u128> {
    if m < 4 || m % 2 != 0 || m > 40 {
        return Err(Error::GateUnsatisfied(format!("m even and >= 4 required, got {m}")));
    }
    let q = 1u128 << m;
    let num = (1u128 << (m - 4)) * (q - 4) * (q - 4) * (q - 1);
    if num % 45 != 0 {
        return Err(Error::NonIntegralCount(format!("A6 numerator {num} / 45")));
    }
    Ok(num / 45)
}

/// Weight-3 and weight-4 counts of the dual punctured on T = GF(4), m even:
/// `A_3 = 4 lambda` and the closed form for `A_4`.
pub fn gf4_dual_counts(m: u32) -> Result<(i128, i128)> {
    if m < 4 || m % 2 != 0 || m > 40 {
        return Err(Error::GateUnsatisfied(format!("m even and >= 4 required, got {m}")));
    }
    let q = 1i128 << m;
    let s: i128 = if (m / 2) % 2 == 0 { 1 } else { -1 };
    let x = q - 2 - s * (1i128 << (m / 2 + 1));
    let lambda_hat = x / 6 - 1;
    let n01 = q * x;
    let inner = (1i128 << (m - 2)) - 1;
    let a4 = BigRational::from_integer(BigInt::from(4 * inner * inner))
        - BigRational::new(BigInt::from(8 * x), BigInt::from(3))
        + BigRational::new(BigInt::from(n01), BigInt::from(24))
        + BigRational::from_integer(BigInt::from(15));
    if !a4.is_integer() {
        return Err(Error::NonIntegralCount(format!("A4 = {a4}")));
    }
    Ok((4 * lambda_hat, a4.to_integer().to_i128().unwrap_or(i128::MAX)))
}

/// How the coordinates in T are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferMode {
    Shorten,
    Puncture,
}

fn big_binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Weight distribution of the code shortened or punctured on `t`
/// coordinates, assuming every weight class holds a `t`-design.
///
/// Shortening keeps `C(v-k, t) / C(v, t)` of the weight-k words, which equals
/// `C(k,t) C(v-t,k) / (C(v,t) C(v-t,k-t))` whenever `k >= t`. Puncturing sums
/// `C(t,i) C(v-t,k) / C(v,k+i) A_{k+i}` over `i = 0..=t`, the same as
/// `C(v-t,k) C(k+i,t) C(t,i) / (C(v-t,k-t+i) C(v,t))` when `k + i >= t`.
pub fn design_transfer(full: &WeightDistribution, t: usize, mode: TransferMode) -> Result<WeightDistribution> {
    let v = full.n();
    if t > v {
        return Err(Error::IndexOutOfRange { index: t, len: v + 1 });
    }
    let nt = v - t;
    let mut out = Vec::new();
    for k in 0..=nt {
        let val = match mode {
            TransferMode::Shorten => {
                BigRational::new(big_binom(v - k, t), big_binom(v, t)) * BigInt::from(full.get(k))
            }
            TransferMode::Puncture => (0..=t)
                .filter(|i| k + i <= v)
                .map(|i| {
                    BigRational::new(big_binom(t, i) * big_binom(nt, k), big_binom(v, k + i))
                        * BigInt::from(full.get(k + i))
                })
                .fold(BigRational::zero(), |a, b| a + b),
        };
        if !val.is_integer() {
            return Err(Error::NonIntegralCount(format!("weight {k}: {val}")));
        }
        let c = val
            .to_integer()
            .to_u128()
            .ok_or_else(|| Error::NonIntegralCount(format!("weight {k} overflows")))?;
        out.push((k, c));
    }
    WeightDistribution::new(nt, out)
}

/// Outcome of the Assmus-Mattson hypothesis check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmResult {
    /// `1 <= t < min(d, d_dual)` and at most `d_dual - t` weights in `1..=v-t`.
    pub holds: bool,
    /// Largest `w <= v` with `w - floor((w+q-2)/(q-1)) < d`.
    pub w: usize,
    /// Same bound for the dual with `d_dual`.
    pub w_dual: usize,
    /// Nonzero weights of the code in `1..=v-t`.
    pub weights_in_range: usize,
}

fn am_threshold(v: usize, q: u64, d: usize) -> usize {
    let q = q as usize;
    (0..=v)
        .rev()
        .find(|&w| w - (w + q - 2) / (q - 1) < d)
        .unwrap_or(0)
}

/// Checks the Assmus-Mattson hypothesis for a code over GF(q) with weight
/// distribution `wd` and dual minimum distance `dual_d`.
pub fn assmus_mattson(wd: &WeightDistribution, q: u64, dual_d: usize, t: usize) -> Result<AmResult> {
    if q < 2 {
        return Err(Error::GateUnsatisfied(format!("q = {q}")));
    }
    let v = wd.n();
    let d = wd.min_distance().unwrap_or(v + 1);
    let weights_in_range = wd.nonzero_weights().into_iter().filter(|&w| w <= v.saturating_sub(t)).count();
    let holds = t >= 1 && t < d.min(dual_d) && weights_in_range + t <= dual_d;
    Ok(AmResult {
        holds,
        w: am_threshold(v, q, d),
        w_dual: am_threshold(v, q, dual_d),
        weights_in_range,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(p: &PredictedWD) -> Vec<(usize, u128)> {
        p.counts.iter().copied().filter(|&(w, _)| w > 0).collect()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(
            pairs(&table_wd(TableTag::Tab3, 2, 5, None).unwrap()),
            vec![(12, 310), (16, 527), (20, 186)]
        );
        let t15 = table_wd(TableTag::Tab15, 3, 3, None).unwrap();
        assert_eq!((t15.n, t15.k), (24, 4));
        assert_eq!(pairs(&t15), vec![(15, 48), (18, 32)]);
        assert_eq!(
            pairs(&table_wd(TableTag::Tab16, 3, 4, None).unwrap()),
            vec![(48, 240), (51, 240), (54, 26), (57, 192), (60, 30)]
        );
        assert_eq!(
            pairs(&table_wd(TableTag::Gf4, 2, 4, None).unwrap()),
            vec![(4, 3), (6, 24), (8, 3), (12, 1)]
        );
    }

    #[test]
    fn gates() {
        assert!(matches!(table_wd(TableTag::Tab1, 2, 4, None), Err(Error::GateUnsatisfied(_))));
        assert!(matches!(table_wd(TableTag::Tab11, 2, 3, None), Err(Error::GateUnsatisfied(_))));
        assert!(matches!(table_wd(TableTag::Tab10, 2, 4, None), Err(Error::GateUnsatisfied(_))));
        assert!(matches!(table_wd(TableTag::Tab10, 2, 4, Some(8)), Err(Error::NegativeCount { .. })));
    }

    #[test]
    fn tags_round_trip() {
        for tag in TableTag::ALL {
            assert_eq!(tag.as_str().parse::<TableTag>().unwrap(), tag);
        }
        assert_eq!("thm4.8".parse::<TableTag>().unwrap(), TableTag::Gf4);
    }

    #[test]
    fn dual_quantities() {
        assert_eq!(dual_params(5).unwrap(), (32, 21, 6));
        assert_eq!(a6_dual(4).unwrap(), 48);
        assert_eq!(a6_dual(6).unwrap(), 20160);
        assert_eq!(gf4_dual_counts(4).unwrap(), (0, 39));
    }

    #[test]
    fn assmus_mattson_examples() {
        let t1 = table_wd(TableTag::Tab1, 2, 5, None).unwrap().to_weight_distribution();
        let r = assmus_mattson(&t1, 2, 6, 3).unwrap();
        assert!(r.holds);
        assert_eq!((r.w, r.w_dual), (32, 32));
        let t2 = table_wd(TableTag::Tab2, 2, 4, None).unwrap().to_weight_distribution();
        assert!(!assmus_mattson(&t2, 2, 6, 2).unwrap().holds);
    }

    #[test]
    fn transfer_identity_at_zero() {
        let t1 = table_wd(TableTag::Tab1, 2, 5, None).unwrap().to_weight_distribution();
        assert_eq!(design_transfer(&t1, 0, TransferMode::Shorten).unwrap(), t1);
        assert_eq!(design_transfer(&t1, 0, TransferMode::Puncture).unwrap(), t1);
    }
}
