//! Codes `{(Tr(a x^s + b x + c))_x : a, b in GF(q), c in GF(p)}` from monomials,
//! the exponent families that make `x^s` APN or planar, and named coordinate
//! sets.

use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd, is_prime};
use crate::code::{CoordSet, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, FieldSpec};
use crate::gfmat::MatrixGFp;

/// Field plus monomial exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCodeSpec {
    pub field: FieldSpec,
    pub s: u64,
}

impl MonomialCodeSpec {
    pub fn new(field: FieldSpec, s: u64) -> Result<Self> {
        let q = field.order();
        if s == 0 || s >= q {
            return Err(Error::Parse(format!("exponent {s} must lie in 1..{q}")));
        }
        Ok(Self { field, s })
    }
}

impl fmt::Display for MonomialCodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.field.p == 2 { "apn" } else { "pn" };
        write!(f, "{kind}:{},s={}", self.field, self.s)
    }
}

impl FromStr for MonomialCodeSpec {
    type Err = Error;

    /// Parses `apn:p=2,m=5,e=1`, `apn:p=2,m=5,s=3` or `pn:p=3,m=4,s=2`;
    /// `e` stands for `s = p^e + 1` and `mod=` pins the modulus.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected apn:... or pn:..., got {s:?}")))?;
        let mut field_parts = Vec::new();
        let mut exp_s = None;
        let mut exp_e = None;
        for part in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let num = || {
                v.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{k}={v}: {e}")))
            };
            match k.trim() {
                "s" => exp_s = Some(num()?),
                "e" => exp_e = Some(num()?),
                _ => field_parts.push(part),
            }
        }
        let field: FieldSpec = field_parts.join(",").parse()?;
        match kind.trim() {
            "apn" if field.p != 2 => {
                return Err(Error::Parse("apn codes are binary: use p=2".into()))
            }
            "pn" if field.p == 2 => return Err(Error::Parse("pn codes need odd p".into())),
            "apn" | "pn" => {}
            other => return Err(Error::Parse(format!("unknown code family {other:?}"))),
        }
        let s = match (exp_s, exp_e) {
            (Some(s), None) => s,
            (None, Some(e)) => {
                let pe = (field.p as u64)
                    .checked_pow(e as u32)
                    .ok_or_else(|| Error::Parse(format!("e = {e} is too large")))?;
                pe + 1
            }
            _ => return Err(Error::Parse("give exactly one of s= or e=".into())),
        };
        Self::new(field, s)
    }
}

/// Builds the code over the field named in the spec.
pub fn build_code(spec: &MonomialCodeSpec) -> Result<LinearCode> {
    let fld = Field::new(&spec.field)?;
    build_code_in(&fld, spec.s)
}

/// Rows `Tr(alpha^i x^s)`, `Tr(alpha^i x)` for `i < m`, and the all-ones row,
/// with coordinates `[0, alpha^0, ..., alpha^(q-2)]`.
pub fn build_code_in(fld: &Field, s: u64) -> Result<LinearCode> {
    let m = fld.m() as i64;
    let xs = fld.coordinate_order();
    let q = xs.len();
    let mut rows = Vec::with_capacity(2 * m as usize + 1);
    for i in 0..m {
        let a = fld.alpha_pow(i);
        rows.push(xs.iter().map(|&x| fld.trace(fld.mul(a, mono(fld, x, s))) as u8).collect());
    }
    for i in 0..m {
        let b = fld.alpha_pow(i);
        rows.push(xs.iter().map(|&x| fld.trace(fld.mul(b, x)) as u8).collect());
    }
    rows.push(vec![1u8; q]);
    let g = MatrixGFp::from_rows(fld.p(), q, &rows)?;
    LinearCode::new(&g, xs.iter().map(|x| x.index()).collect(), Some(fld.spec().clone()))
}

/// `x^s` with `f(0) = 0`.
fn mono(fld: &Field, x: FieldElement, s: u64) -> FieldElement {
    if x.is_zero() {
        FieldElement::ZERO
    } else {
        fld.pow(x, s)
    }
}

fn push_unique(v: &mut Vec<u64>, s: u64) {
    if !v.contains(&s) {
        v.push(s);
    }
}

/// APN exponents over GF(2^m): Gold, Kasami, and for odd `m >= 5` Welch and
/// Niho, reduced mod `2^m - 1`, deduplicated, ascending.
pub fn apn_exponents(m: u32) -> Vec<u64> {
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    let n = (1u64 << m) - 1;
    for e in 1..m {
        if gcd(e as u64, m as u64) == 1 {
            push_unique(&mut out, ((1u64 << e) + 1) % n);
            push_unique(&mut out, ((1u64 << (2 * e)) - (1u64 << e) + 1) % n);
        }
    }
    if m >= 5 && m % 2 == 1 {
        push_unique(&mut out, ((1u64 << ((m - 1) / 2)) + 3) % n);
        let niho = if m % 4 == 1 {
            (1u64 << ((m - 1) / 2)) + (1u64 << ((m - 1) / 4)) - 1
        } else {
            (1u64 << ((m - 1) / 2)) + (1u64 << ((3 * m - 1) / 4)) - 1
        };
        push_unique(&mut out, niho % n);
    }
    out.retain(|&s| s != 0);
    out.sort_unstable();
    out
}

/// Planar exponents over GF(p^m), p odd: 2, `p^e + 1` with `m/gcd(m,e)` odd,
/// and `(3^e + 1)/2` for p = 3 with e odd and `gcd(m,e) = 1`; `1 <= e < m`.
pub fn pn_exponents(p: u32, m: u32) -> Vec<u64> {
    let mut out = vec![2u64];
    if p == 2 || !is_prime(p as u64) {
        return Vec::new();
    }
    let n = (p as u64).pow(m) - 1;
    for e in 1..m {
        if (m as u64 / gcd(m as u64, e as u64)) % 2 == 1 {
            push_unique(&mut out, ((p as u64).pow(e) + 1) % n);
        }
        if p == 3 && e % 2 == 1 && gcd(m as u64, e as u64) == 1 {
            push_unique(&mut out, ((3u64.pow(e) + 1) / 2) % n);
        }
    }
    out.retain(|&s| s != 0);
    out.sort_unstable();
    out
}

/// `max_{a != 0, b} #{x : (x + a)^s - x^s = b}`.
pub fn differential_uniformity(fld: &Field, s: u64) -> u32 {
    let q = fld.q() as usize;
    let table: Vec<FieldElement> = fld.elements().map(|x| mono(fld, x, s)).collect();
    let mut best = 0;
    let mut counts = vec![0u32; q];
    for a in fld.elements().skip(1) {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in fld.elements() {
            let d = fld.sub(table[fld.add(x, a).index() as usize], table[x.index() as usize]);
            counts[d.index() as usize] += 1;
        }
        best = best.max(*counts.iter().max().unwrap_or(&0));
    }
    best
}

pub fn is_apn(fld: &Field, s: u64) -> bool {
    fld.p() == 2 && differential_uniformity(fld, s) == 2
}

pub fn is_pn(fld: &Field, s: u64) -> bool {
    fld.p() != 2 && differential_uniformity(fld, s) == 1
}

/// Named coordinate sets of the full code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialT {
    /// The prime subfield GF(p).
    SubfieldP,
    /// GF(4) inside GF(2^m), m even.
    Gf4,
    /// Explicit elements such as `0`, `1`, `alpha^k`.
    Labels(Vec<String>),
}

impl FromStr for SpecialT {
    type Err = Error;

    /// Parses `T=GF(p)`, `T=GF(4)`, or `T=0,1,alpha^3`; the `T=` prefix is optional.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("T=").unwrap_or(body).trim();
        if body.is_empty() {
            return Ok(Self::Labels(Vec::new()));
        }
        match body {
            "GF(p)" => return Ok(Self::SubfieldP),
            "GF(4)" => return Ok(Self::Gf4),
            _ => {}
        }
        if let Some(inner) = body.strip_prefix("GF(").and_then(|b| b.strip_suffix(')')) {
            let n: u32 = inner
                .parse()
                .map_err(|_| Error::Parse(format!("unrecognized subfield {body:?}")))?;
            if is_prime(n as u64) {
                return Ok(Self::Labels(vec![format!("GF({n})")]));
            }
            return Err(Error::Parse(format!("unsupported subfield {body:?}")));
        }
        Ok(Self::Labels(body.split(',').map(|x| x.trim().to_string()).collect()))
    }
}

/// Elements of the named set, ascending by index.
pub fn special_elements(fld: &Field, kind: &SpecialT) -> Result<Vec<FieldElement>> {
    let mut els = match kind {
        SpecialT::SubfieldP => (0..fld.p()).map(|c| fld.from_prime(c)).collect(),
        SpecialT::Gf4 => {
            if fld.p() != 2 || fld.m() % 2 != 0 {
                return Err(Error::SubfieldAbsent("GF(4)".into(), fld.p(), fld.m()));
            }
            let third = ((fld.q() - 1) / 3) as i64;
            vec![FieldElement::ZERO, FieldElement::ONE, fld.alpha_pow(third), fld.alpha_pow(2 * third)]
        }
        SpecialT::Labels(labels) => {
            if let [only] = labels.as_slice() {
                if let Some(p) = only.strip_prefix("GF(").and_then(|b| b.strip_suffix(')')) {
                    if p.parse::<u32>().ok() == Some(fld.p()) {
                        return special_elements(fld, &SpecialT::SubfieldP);
                    }
                    return Err(Error::SubfieldAbsent(only.clone(), fld.p(), fld.m()));
                }
            }
            labels
                .iter()
                .map(|l| fld.parse_label(l))
                .collect::<Result<Vec<_>>>()?
        }
    };
    els.sort_unstable();
    els.dedup();
    Ok(els)
}

/// Positions of the named set in the full code of length q.
pub fn special_t(fld: &Field, kind: &SpecialT) -> Result<CoordSet> {
    let els = special_elements(fld, kind)?;
    CoordSet::new(els.iter().map(|&x| fld.position(x)).collect(), fld.q() as usize)
}

/// Positions of `elements` in a code whose labels are field-element indices.
pub fn positions_in(code: &LinearCode, elements: &[FieldElement]) -> Result<CoordSet> {
    code.positions_of_labels(&elements.iter().map(|x| x.index()).collect::<Vec<_>>())
}
