//! Named collections of scenarios and sweeps.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{sweep_subsets, verify_scenario, Classification, LambdaRule, Sampling, Scenario};
use crate::code::{weight_distribution, Limits};
use crate::construct::{apn_exponents, build_code_in, pn_exponents, special_t, SpecialT};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, FieldSpec};
use crate::predict::{gf4_dual_counts, predict_lambda_even3, predict_lambda_odd4, table_wd, TableTag};
use crate::sums;

/// A named verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    PaperExamples,
    Tables,
    LambdaSweeps,
    Sums,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::PaperExamples, Suite::Tables, Suite::LambdaSweeps, Suite::Sums];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::PaperExamples => "paper-examples",
            Suite::Tables => "tables",
            Suite::LambdaSweeps => "lambda-sweeps",
            Suite::Sums => "sums",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One line of a suite report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub cases: Vec<CaseReport>,
}

const M4: &str = "p=2,m=4,mod=10011";
const M5: &str = "p=2,m=5,mod=100101";

/// The worked examples with their printed parameters and enumerators.
fn paper_examples() -> Result<Vec<Scenario>> {
    let apn5 = format!("apn:{M5},e=1");
    let apn4 = format!("apn:{M4},e=1");
    Ok(vec![
        Scenario::new("ex3.2", &apn5, "alpha^1")?
            .table(TableTag::Tab3)
            .printed(31, 10, 12, &[(12, 310), (16, 527), (20, 186)]),
        Scenario::new("ex3.3", &apn5, "0,1")?
            .table(TableTag::Tab4)
            .printed(30, 9, 12, &[(12, 190), (16, 255), (20, 66)]),
        Scenario::new("ex3.4", &apn5, "0,1,alpha")?
            .table(TableTag::Tab5)
            .printed(29, 8, 12, &[(12, 114), (16, 119), (20, 22)]),
        Scenario::new("ex3.8", &apn4, "alpha^3")?
            .table(TableTag::Tab6)
            .printed(15, 8, 4, &[(4, 15), (6, 100), (8, 75), (10, 60), (12, 5)]),
        Scenario::new("ex3.9", &apn4, "0,alpha^7")?
            .table(TableTag::Tab7)
            .printed(14, 7, 4, &[(4, 11), (6, 60), (8, 35), (10, 20), (12, 1)]),
        Scenario::new("ex4.1", &apn5, "alpha^1,alpha^2,alpha^4,alpha^5")?
            .table(TableTag::Tab8)
            .lambda(LambdaRule::Odd4)
            .printed(28, 7, 12, &[(12, 66), (16, 55), (20, 6)]),
        Scenario::new("ex4.2", &apn5, "alpha^1,alpha^2,alpha^3,alpha^4")?
            .table(TableTag::Tab9)
            .lambda(LambdaRule::Odd4)
            .printed(28, 7, 12, &[(12, 68), (16, 51), (20, 8)]),
        Scenario::new("ex4.4", &apn4, "alpha^1,alpha^2,alpha^4")?
            .table(TableTag::Tab10)
            .lambda(LambdaRule::Even3)
            .printed(13, 6, 4, &[(4, 7), (6, 36), (8, 15), (10, 4), (12, 1)]),
        Scenario::new("ex4.6", &apn4, "alpha^2,alpha^5,alpha^7")?
            .table(TableTag::Tab10)
            .lambda(LambdaRule::Even3)
            .printed(13, 6, 4, &[(4, 8), (6, 34), (8, 15), (10, 6)]),
        Scenario::new("ex4.9", &apn4, "T=GF(4)")?
            .table(TableTag::Gf4)
            .printed(12, 5, 4, &[(4, 3), (6, 24), (8, 3), (12, 1)]),
        Scenario::new("ex5.2", "pn:p=3,m=3,s=2", "alpha^4")?
            .table(TableTag::Tab11)
            .printed(26, 6, 15, &[(15, 312), (18, 260), (21, 156)]),
        Scenario::new("ex5.3", "pn:p=3,m=4,s=2", "alpha^4")?
            .table(TableTag::Tab13)
            .printed(80, 8, 48, &[(48, 1320), (51, 2400), (54, 80), (57, 1920), (60, 840)]),
        Scenario::new("ex5.4", "pn:p=3,m=5,s=2", "0,1")?
            .table(TableTag::Tab12)
            .printed(241, 9, 153, &[(153, 8010), (162, 6560), (171, 5112)]),
        Scenario::new("ex5.5", "pn:p=3,m=4,s=2", "alpha,alpha^9")?
            .table(TableTag::Tab14)
            .printed(79, 7, 48, &[(48, 528), (51, 870), (54, 26), (57, 552), (60, 210)]),
        Scenario::new("ex5.10", "pn:p=3,m=3,s=2", "T=GF(p)")?
            .table(TableTag::Tab15)
            .printed(24, 4, 15, &[(15, 48), (18, 32)]),
        Scenario::new("ex5.11", "pn:p=3,m=4,s=2", "T=GF(p)")?
            .table(TableTag::Tab16)
            .printed(78, 6, 48, &[(48, 240), (51, 240), (54, 26), (57, 192), (60, 30)]),
    ])
}

/// Three distinct t-sets of field elements: the first t coordinates, the
/// last t, and a seeded random choice.
pub(crate) fn t_choices(fld: &Field, t: usize, seed: u64) -> Vec<String> {
    let xs = fld.coordinate_order();
    let q = xs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets: Vec<Vec<usize>> = vec![(0..t).collect(), (q - t..q).collect()];
    while sets.len() < 3 {
        let mut s = sample(&mut rng, q, t).into_vec();
        s.sort_unstable();
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    sets.into_iter()
        .map(|s| s.iter().map(|&i| fld.label(xs[i])).collect::<Vec<_>>().join(","))
        .collect()
}

/// Enumeration against Tables 1-7 and 11-16 over the admissible exponents.
fn table_scenarios() -> Result<Vec<Scenario>> {
    let mut out = Vec::new();
    for m in 4..=7u32 {
        let spec = FieldSpec::with_default_modulus(2, m)?;
        let fld = Field::new(&spec)?;
        let (full, shortened): (TableTag, &[(TableTag, usize)]) = if m % 2 == 1 {
            (TableTag::Tab1, &[(TableTag::Tab3, 1), (TableTag::Tab4, 2), (TableTag::Tab5, 3)])
        } else {
            (TableTag::Tab2, &[(TableTag::Tab6, 1), (TableTag::Tab7, 2)])
        };
        // The even-m table is the Gold distribution; odd m admits every APN exponent.
        let exps: Vec<u64> = if m % 2 == 1 {
            apn_exponents(m)
        } else {
            (1..m)
                .filter(|&e| crate::arith::gcd(e as u64, m as u64) == 1)
                .map(|e| (1u64 << e) + 1)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        for &s in &exps {
            let code = format!("apn:{spec},s={s}");
            out.push(Scenario::new(format!("{full}/m={m}/s={s}"), &code, "")?.table(full));
            for &(tag, t) in shortened {
                for (j, tset) in t_choices(&fld, t, m as u64 * 100 + s).into_iter().enumerate() {
                    out.push(
                        Scenario::new(format!("{tag}/m={m}/s={s}/T{j}"), &code, &tset)?.table(tag),
                    );
                }
            }
        }
    }
    for (p, m) in [(3u32, 3u32), (3, 4), (5, 3)] {
        let spec = FieldSpec::with_default_modulus(p, m)?;
        let fld = Field::new(&spec)?;
        let exps: Vec<u64> = pn_exponents(p, m)
            .into_iter()
            .filter(|&s| s == 2 || super::exponent_e(p, s).is_some())
            .collect();
        let (t1, t2, sub) = if m % 2 == 1 {
            (TableTag::Tab11, TableTag::Tab12, TableTag::Tab15)
        } else {
            (TableTag::Tab13, TableTag::Tab14, TableTag::Tab16)
        };
        for &s in &exps {
            let code = format!("pn:{spec},s={s}");
            for (tag, t) in [(t1, 1), (t2, 2)] {
                for (j, tset) in t_choices(&fld, t, (p * 100 + m) as u64 + s).into_iter().enumerate() {
                    out.push(
                        Scenario::new(format!("{tag}/p={p}/m={m}/s={s}/T{j}"), &code, &tset)?.table(tag),
                    );
                }
            }
            out.push(Scenario::new(format!("{sub}/p={p}/m={m}/s={s}"), &code, "T=GF(p)")?.table(sub));
        }
    }
    Ok(out)
}

/// Scenario lists of the scenario-based suites; sweeps have none.
pub fn suite_scenarios(suite: Suite) -> Result<Vec<Scenario>> {
    match suite {
        Suite::PaperExamples => paper_examples(),
        Suite::Tables => table_scenarios(),
        Suite::LambdaSweeps | Suite::Sums => Ok(Vec::new()),
    }
}

fn scenario_cases(scenarios: &[Scenario], limits: &Limits) -> Vec<CaseReport> {
    scenarios
        .par_iter()
        .map(|sc| match verify_scenario(sc, limits) {
            Ok(r) => CaseReport {
                id: r.id,
                pass: r.pass,
                detail: if r.notes.is_empty() {
                    format!("[{}, {}] matches", r.n, r.k)
                } else {
                    r.notes.join("; ")
                },
            },
            Err(e) => CaseReport {
                id: sc.id.clone(),
                pass: false,
                detail: e.to_string(),
            },
        })
        .collect()
}

fn elements_of(fld: &Field, positions: &[usize]) -> Vec<FieldElement> {
    let xs = fld.coordinate_order();
    positions.iter().map(|&i| xs[i]).collect()
}

/// All 4-subsets at m = 5: classified by the trace predictor into the two
/// four-coordinate tables, with brute-force lambda.
pub fn sweep_odd4(m: u32, e: u32, sampling: &Sampling, limits: &Limits) -> Result<super::SweepReport> {
    let fld = Field::with_default_modulus(2, m)?;
    let code = build_code_in(&fld, (1u64 << e) + 1)?;
    let t8 = table_wd(TableTag::Tab8, 2, m, None)?.to_weight_distribution();
    let t9 = table_wd(TableTag::Tab9, 2, m, None)?.to_weight_distribution();
    sweep_subsets(
        &code,
        4,
        |s| {
            let els = elements_of(&fld, s);
            let pred = predict_lambda_odd4(&fld, e, &[els[0], els[1], els[2], els[3]])?;
            Ok(Classification {
                class: format!("lambda={}", pred.lambda),
                predicted: Some(if pred.lambda == 0 { t8.clone() } else { t9.clone() }),
                lambda: Some(pred.lambda),
            })
        },
        6,
        sampling,
        limits,
    )
}

/// 3-subsets for m even: lambda from the cubic-residue rule, distribution
/// from the lambda-parameterized table.
pub fn sweep_even3(m: u32, e: u32, sampling: &Sampling, limits: &Limits) -> Result<super::SweepReport> {
    let fld = Field::with_default_modulus(2, m)?;
    let code = build_code_in(&fld, (1u64 << e) + 1)?;
    sweep_subsets(
        &code,
        3,
        |s| {
            let els = elements_of(&fld, s);
            let pred = predict_lambda_even3(&fld, e, &[els[0], els[1], els[2]])?;
            let wd = table_wd(TableTag::Tab10, 2, m, Some(pred.lambda as i64))?.to_weight_distribution();
            Ok(Classification {
                class: format!("lambda={}", pred.lambda),
                predicted: Some(wd),
                lambda: Some(pred.lambda),
            })
        },
        6,
        sampling,
        limits,
    )
}

/// Outcome of the T = GF(4) check at one m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gf4Check {
    pub m: u32,
    pub distribution_matches: bool,
    pub a3_predicted: i128,
    pub a3_brute: u64,
    pub a4_predicted: i128,
    pub a4_brute: u64,
}

impl Gf4Check {
    pub fn pass(&self) -> bool {
        self.distribution_matches
            && self.a3_predicted == self.a3_brute as i128
            && self.a4_predicted == self.a4_brute as i128
    }
}

/// Enumerates the code shortened on GF(4) and counts weight-3 and weight-4
/// words of the dual punctured there.
pub fn check_gf4(m: u32, e: u32, limits: &Limits) -> Result<Gf4Check> {
    let fld = Field::with_default_modulus(2, m)?;
    let code = build_code_in(&fld, (1u64 << e) + 1)?;
    let t = special_t(&fld, &SpecialT::Gf4)?;
    let short = code.shorten(&t)?;
    let wd = weight_distribution(&short, limits)?;
    let pred = table_wd(TableTag::Gf4, 2, m, None)?.to_weight_distribution();
    // The dual of the shortened code is the punctured dual; its low-weight
    // words are relations among the shortened generator's columns.
    let low = crate::code::dual_low_weight_supports(&short, 4, limits)?;
    let count = |w: usize| low.iter().find(|(x, _)| *x == w).map_or(0, |(_, s)| s.len() as u64);
    let (a3, a4) = gf4_dual_counts(m)?;
    Ok(Gf4Check {
        m,
        distribution_matches: wd == pred,
        a3_predicted: a3,
        a3_brute: count(3),
        a4_predicted: a4,
        a4_brute: count(4),
    })
}

fn sweep_case(id: &str, r: Result<super::SweepReport>) -> CaseReport {
    match r {
        Ok(r) => CaseReport {
            id: id.into(),
            pass: r.pass(),
            detail: format!(
                "{} subsets{}, classes {:?}{}",
                r.checked,
                if r.sampled { " (sampled)" } else { "" },
                r.classes.iter().map(|(k, v)| (k.clone(), v.subsets)).collect::<Vec<_>>(),
                if r.failures.is_empty() {
                    String::new()
                } else {
                    format!("; failures: {}", r.failures.join(", "))
                }
            ),
        },
        Err(e) => CaseReport {
            id: id.into(),
            pass: false,
            detail: e.to_string(),
        },
    }
}

/// Runs a suite; `sampling` governs the seeded subset sweeps.
pub fn run_suite(suite: Suite, limits: &Limits, sampling: &Sampling) -> Result<SuiteReport> {
    let cases = match suite {
        Suite::PaperExamples | Suite::Tables => scenario_cases(&suite_scenarios(suite)?, limits),
        Suite::LambdaSweeps => {
            let exhaustive = Sampling {
                max_exhaustive: u128::MAX,
                ..*sampling
            };
            let mut cases = vec![
                sweep_case("odd4/m=5/e=1", sweep_odd4(5, 1, &exhaustive, limits)),
                sweep_case("even3/m=4/e=1", sweep_even3(4, 1, &exhaustive, limits)),
                sweep_case(
                    "even3/m=6/e=1",
                    sweep_even3(
                        6,
                        1,
                        &Sampling {
                            max_exhaustive: 0,
                            ..*sampling
                        },
                        limits,
                    ),
                ),
            ];
            for m in [4, 6] {
                cases.push(match check_gf4(m, 1, limits) {
                    Ok(c) => CaseReport {
                        id: format!("gf4/m={m}"),
                        pass: c.pass(),
                        detail: format!(
                            "distribution {}; A3 {} vs {}; A4 {} vs {}",
                            if c.distribution_matches { "matches" } else { "differs" },
                            c.a3_predicted,
                            c.a3_brute,
                            c.a4_predicted,
                            c.a4_brute
                        ),
                    },
                    Err(e) => CaseReport {
                        id: format!("gf4/m={m}"),
                        pass: false,
                        detail: e.to_string(),
                    },
                });
            }
            cases
        }
        Suite::Sums => sums::run_all()
            .into_iter()
            .map(|r| CaseReport {
                id: format!("lemma {}", r.lemma),
                pass: r.failures.is_empty(),
                detail: if r.failures.is_empty() {
                    format!("{} cases", r.cases)
                } else {
                    format!("{} of {} cases fail: {}", r.failures.len(), r.cases, r.failures.join("; "))
                },
            })
            .collect(),
    };
    Ok(SuiteReport {
        suite: suite.to_string(),
        pass: cases.iter().all(|c| c.pass),
        cases,
    })
}
