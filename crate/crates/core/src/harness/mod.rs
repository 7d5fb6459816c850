//! End-to-end verification: build a code, shorten it, enumerate, and compare
//! with the closed-form tables; sweeps over coordinate subsets.

mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, for_each_combination};
use crate::code::{lambda_t_w, weight_distribution, CoordSet, LinearCode, Limits, WeightDistribution};
use crate::construct::{build_code_in, special_elements, MonomialCodeSpec, SpecialT};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::predict::{predict_lambda_even3, predict_lambda_odd4, table_wd, LambdaPrediction, TableTag};
use crate::report::WdJson;

pub use suites::{
    check_gf4, run_suite, suite_scenarios, sweep_even3, sweep_odd4, CaseReport, Gf4Check, Suite, SuiteReport,
};

/// How `lambda_{T,6}` of the dual is predicted for a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LambdaRule {
    /// Trace criterion for a 4-set.
    Odd4,
    /// Cubic-residue criterion for a 3-set, m even.
    Even3,
}

/// Parameters and weight enumerator printed for a worked example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Printed {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Nonzero weights with their counts.
    pub counts: Vec<(usize, u128)>,
}

/// One end-to-end check.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub code: MonomialCodeSpec,
    /// Coordinates to shorten; empty labels mean the full code.
    pub t: SpecialT,
    pub table: Option<TableTag>,
    pub lambda: Option<LambdaRule>,
    pub printed: Option<Printed>,
}

impl Scenario {
    pub fn new(id: impl Into<String>, code: &str, t: &str) -> Result<Self> {
        Ok(Self {
            id: id.into(),
            code: code.parse()?,
            t: t.parse()?,
            table: None,
            lambda: None,
            printed: None,
        })
    }

    pub fn table(mut self, tag: TableTag) -> Self {
        self.table = Some(tag);
        self
    }

    pub fn lambda(mut self, rule: LambdaRule) -> Self {
        self.lambda = Some(rule);
        self
    }

    pub fn printed(mut self, n: usize, k: usize, d: usize, counts: &[(usize, u128)]) -> Self {
        self.printed = Some(Printed {
            n,
            k,
            d,
            counts: counts.to_vec(),
        });
        self
    }
}

/// Outcome of [`verify_scenario`].
#[derive(Debug, Clone, Serialize)]
pub struct PredictionReport {
    pub id: String,
    pub code: String,
    pub t: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub predicted: Option<WdJson>,
    pub printed: Option<WdJson>,
    pub enumerated: WdJson,
    pub lambda_predicted: Option<u64>,
    pub lambda_brute: Option<u64>,
    pub lambda_branch: Option<String>,
    pub pass: bool,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// `e` with `s = p^e + 1`, when `s` has that form.
pub fn exponent_e(p: u32, s: u64) -> Option<u32> {
    let mut pe = p as u64;
    let mut e = 1;
    while pe < s {
        if pe + 1 == s {
            return Some(e);
        }
        pe = pe.checked_mul(p as u64)?;
        e += 1;
    }
    None
}

fn predict_lambda(fld: &Field, rule: LambdaRule, e: u32, els: &[FieldElement]) -> Result<LambdaPrediction> {
    match rule {
        LambdaRule::Odd4 => {
            let t: &[FieldElement; 4] = els
                .try_into()
                .map_err(|_| Error::DimensionMismatch(format!("{} elements, need 4", els.len())))?;
            predict_lambda_odd4(fld, e, t)
        }
        LambdaRule::Even3 => {
            let t: &[FieldElement; 3] = els
                .try_into()
                .map_err(|_| Error::DimensionMismatch(format!("{} elements, need 3", els.len())))?;
            predict_lambda_even3(fld, e, t)
        }
    }
}

/// Builds, shortens, enumerates and compares one scenario.
pub fn verify_scenario(sc: &Scenario, limits: &Limits) -> Result<PredictionReport> {
    let start = Instant::now();
    let fld = Field::new(&sc.code.field)?;
    let p = fld.p();
    let code = build_code_in(&fld, sc.code.s)?;
    let els = special_elements(&fld, &sc.t)?;
    let t = CoordSet::new(els.iter().map(|&x| fld.position(x)).collect(), code.n())?;
    let short = code.shorten(&t)?;
    let wd = weight_distribution(&short, limits)?;
    let mut notes = Vec::new();
    let mut pass = true;

    let (mut lambda_predicted, mut lambda_brute, mut lambda_branch) = (None, None, None);
    if let Some(rule) = sc.lambda {
        let brute = lambda_t_w(&code, &t, 6, true, limits)?;
        lambda_brute = Some(brute);
        match exponent_e(p, sc.code.s).map(|e| predict_lambda(&fld, rule, e, &els)) {
            Some(Ok(pred)) => {
                if pred.lambda != brute {
                    pass = false;
                    notes.push(format!("lambda predicted {} but brute force gives {brute}", pred.lambda));
                }
                lambda_predicted = Some(pred.lambda);
                lambda_branch = Some(pred.branch);
            }
            Some(Err(e)) => notes.push(format!("no lambda prediction: {e}")),
            None => notes.push(format!("s = {} is not of the form p^e + 1", sc.code.s)),
        }
    }

    let predicted = match sc.table {
        Some(tag) => {
            let tag = match (tag, lambda_predicted.or(lambda_brute)) {
                (TableTag::Tab8 | TableTag::Tab9, Some(l)) => {
                    if l == 0 {
                        TableTag::Tab8
                    } else {
                        TableTag::Tab9
                    }
                }
                _ => tag,
            };
            let lam = tag.needs_lambda().then(|| lambda_predicted.or(lambda_brute).map(|l| l as i64)).flatten();
            let pred = table_wd(tag, p, fld.m(), lam)?;
            if pred.n != short.n() || pred.k != short.k() {
                pass = false;
                notes.push(format!(
                    "{tag} predicts [{}, {}], code is [{}, {}]",
                    pred.n,
                    pred.k,
                    short.n(),
                    short.k()
                ));
            }
            if pred.to_weight_distribution() != wd {
                pass = false;
                notes.push(format!("enumerated distribution differs from {tag}"));
            }
            Some(WdJson::from_prediction(&pred))
        }
        None => None,
    };

    let printed = match &sc.printed {
        Some(pr) => {
            let mut counts = vec![(0usize, 1u128)];
            counts.extend(pr.counts.iter().copied());
            let pwd = WeightDistribution::new(pr.n, counts)?;
            if (pr.n, pr.k) != (short.n(), short.k()) || wd.min_distance() != Some(pr.d) || pwd != wd {
                pass = false;
                notes.push("enumerated code differs from the printed example".into());
            }
            Some(WdJson::new(p, pr.k, &pwd))
        }
        None => None,
    };

    Ok(PredictionReport {
        id: sc.id.clone(),
        code: sc.code.to_string(),
        t: els.iter().map(|&x| fld.label(x)).collect(),
        n: short.n(),
        k: short.k(),
        predicted,
        printed,
        enumerated: WdJson::new(p, short.k(), &wd),
        lambda_predicted,
        lambda_brute,
        lambda_branch,
        pass,
        notes,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// What a classifier says about one subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: String,
    pub predicted: Option<WeightDistribution>,
    /// Predicted `lambda_{T,w}` of the dual, checked against brute force.
    pub lambda: Option<u64>,
}

/// Sampling policy for [`sweep_subsets`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    /// Enumerate every subset when there are at most this many.
    pub max_exhaustive: u128,
    /// Number of sampled subsets otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            max_exhaustive: 100_000,
            samples: 500,
            seed: 0,
        }
    }
}

/// Per-class totals of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub subsets: usize,
    /// Distinct enumerated distributions seen in the class.
    pub distributions: usize,
    pub prediction_failures: usize,
    pub lambda_failures: usize,
}

/// Outcome of [`sweep_subsets`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub size: usize,
    pub total_subsets: String,
    pub checked: usize,
    pub sampled: bool,
    pub seed: u64,
    pub classes: BTreeMap<String, ClassSummary>,
    /// Distinct enumerated distributions over all subsets.
    pub distinct_distributions: usize,
    /// First few failing subsets with a reason.
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Outcome {
    class: String,
    wd: WeightDistribution,
    prediction_ok: bool,
    lambda_ok: bool,
    subset: Vec<usize>,
}

/// Shortens `code` on every `size`-subset (or a seeded sample), enumerates
/// each shortened code and checks it against the classifier. `lambda_w` is
/// the dual weight used for brute-force lambda checks.
pub fn sweep_subsets<F>(
    code: &LinearCode,
    size: usize,
    classifier: F,
    lambda_w: usize,
    sampling: &Sampling,
    limits: &Limits,
) -> Result<SweepReport>
where
    F: Fn(&[usize]) -> Result<Classification> + Sync,
{
    let n = code.n();
    let total = binomial(n as u64, size as u64);
    let sampled = total > sampling.max_exhaustive;
    let subsets: Vec<Vec<usize>> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        while out.len() < sampling.samples.min(total as usize) {
            let mut s = sample(&mut rng, n, size).into_vec();
            s.sort_unstable();
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
        out
    } else {
        let items: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(total as usize);
        for_each_combination(&items, size, |c| out.push(c.to_vec()));
        out
    };
    let outcomes = subsets
        .par_iter()
        .map(|s| {
            let t = CoordSet::new(s.clone(), n)?;
            let cls = classifier(s)?;
            let wd = weight_distribution(&code.shorten(&t)?, limits)?;
            let prediction_ok = cls.predicted.as_ref().is_none_or(|p| *p == wd);
            let lambda_ok = match cls.lambda {
                Some(l) => lambda_t_w(code, &t, lambda_w, true, limits)? == l,
                None => true,
            };
            Ok(Outcome {
                class: cls.class,
                wd,
                prediction_ok,
                lambda_ok,
                subset: s.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut classes: BTreeMap<String, (ClassSummary, Vec<WeightDistribution>)> = BTreeMap::new();
    let mut all_wds: Vec<WeightDistribution> = Vec::new();
    let mut failures = Vec::new();
    for o in &outcomes {
        let entry = classes.entry(o.class.clone()).or_insert_with(|| {
            (
                ClassSummary {
                    subsets: 0,
                    distributions: 0,
                    prediction_failures: 0,
                    lambda_failures: 0,
                },
                Vec::new(),
            )
        });
        entry.0.subsets += 1;
        if !entry.1.contains(&o.wd) {
            entry.1.push(o.wd.clone());
        }
        if !all_wds.contains(&o.wd) {
            all_wds.push(o.wd.clone());
        }
        if !o.prediction_ok {
            entry.0.prediction_failures += 1;
            if failures.len() < 10 {
                failures.push(format!("{:?}: distribution differs from prediction", o.subset));
            }
        }
        if !o.lambda_ok {
            entry.0.lambda_failures += 1;
            if failures.len() < 10 {
                failures.push(format!("{:?}: lambda differs from brute force", o.subset));
            }
        }
    }
    Ok(SweepReport {
        size,
        total_subsets: total.to_string(),
        checked: outcomes.len(),
        sampled,
        seed: sampling.seed,
        classes: classes
            .into_iter()
            .map(|(k, (mut s, wds))| {
                s.distributions = wds.len();
                (k, s)
            })
            .collect(),
        distinct_distributions: all_wds.len(),
        failures,
    })
}
