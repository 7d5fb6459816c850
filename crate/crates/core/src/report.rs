//! JSON forms of codes and weight distributions. Counts travel as decimal
//! strings so that 128-bit values survive any JSON reader.

use serde::{Deserialize, Serialize};

use crate::code::{LinearCode, WeightDistribution};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::gfmat::MatrixGFp;
use crate::predict::PredictedWD;

/// A code as generator rows of digit strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    /// Field description such as `p=2,m=5,mod=100101`, when known.
    pub field: Option<String>,
    /// Coordinate labels as field-element indices.
    pub labels: Vec<u32>,
    /// One string per row; digits are `.`-separated when p > 10.
    pub generator: Vec<String>,
}

impl CodeJson {
    pub fn from_code(code: &LinearCode) -> Self {
        let p = code.p();
        let generator = code
            .generator()
            .row_vecs()
            .iter()
            .map(|r| {
                if p <= 10 {
                    r.iter().map(|&d| char::from(b'0' + d)).collect()
                } else {
                    r.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
                }
            })
            .collect();
        Self {
            p,
            n: code.n(),
            k: code.k(),
            field: code.field_spec().map(|f| f.to_string()),
            labels: code.labels().to_vec(),
            generator,
        }
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        let rows = self
            .generator
            .iter()
            .map(|s| parse_row(s, self.p, self.n))
            .collect::<Result<Vec<_>>>()?;
        let g = if rows.is_empty() {
            MatrixGFp::zeros(self.p, 0, self.n)?
        } else {
            MatrixGFp::from_rows(self.p, self.n, &rows)?
        };
        let field = self.field.as_deref().map(str::parse::<FieldSpec>).transpose()?;
        let code = LinearCode::new(&g, self.labels.clone(), field)?;
        if code.k() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "generator has rank {}, JSON says k = {}",
                code.k(),
                self.k
            )));
        }
        Ok(code)
    }
}

fn parse_row(s: &str, p: u32, n: usize) -> Result<Vec<u8>> {
    let digits: Vec<u32> = if p > 10 || s.contains('.') {
        s.split('.')
            .map(|d| d.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{d:?}: {e}"))))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
            .collect::<Result<_>>()?
    };
    if digits.len() != n {
        return Err(Error::DimensionMismatch(format!("row of length {} for n = {n}", digits.len())));
    }
    if let Some(d) = digits.iter().find(|&&d| d >= p) {
        return Err(Error::Parse(format!("digit {d} is not below p = {p}")));
    }
    Ok(digits.into_iter().map(|d| d as u8).collect())
}

/// A weight distribution with string counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdJson {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    /// `[weight, "count"]`, ascending, zero counts omitted.
    pub weights: Vec<(usize, String)>,
    /// Table tag when the distribution is a prediction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl WdJson {
    pub fn new(p: u32, k: usize, wd: &WeightDistribution) -> Self {
        Self {
            p,
            n: wd.n(),
            k,
            weights: wd.iter().map(|(w, c)| (w, c.to_string())).collect(),
            source: None,
        }
    }

    pub fn from_prediction(pred: &PredictedWD) -> Self {
        let mut j = Self::new(pred.p, pred.k, &pred.to_weight_distribution());
        j.source = Some(match pred.lambda {
            Some(l) => format!("{},lambda={l}", pred.tag),
            None => pred.tag.to_string(),
        });
        j
    }

    pub fn to_wd(&self) -> Result<WeightDistribution> {
        let pairs = self
            .weights
            .iter()
            .map(|(w, c)| {
                c.parse::<u128>()
                    .map(|c| (*w, c))
                    .map_err(|e| Error::Parse(format!("count {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightDistribution::new(self.n, pairs)
    }
}

/// Serializes with two-space indentation.
pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_code;

    #[test]
    fn code_round_trip() {
        let code = build_code(&"pn:p=3,m=2,s=2".parse().unwrap()).unwrap();
        let j = CodeJson::from_code(&code);
        let back: CodeJson = from_json(&to_json(&j)).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_code().unwrap(), code);
    }

    #[test]
    fn wd_round_trip() {
        let wd = WeightDistribution::new(8, [(0, 1), (4, 14), (8, 1)]).unwrap();
        let j = WdJson::new(2, 4, &wd);
        let s = to_json(&j);
        assert!(s.contains("\"14\""));
        assert_eq!(from_json::<WdJson>(&s).unwrap().to_wd().unwrap(), wd);
    }
}
