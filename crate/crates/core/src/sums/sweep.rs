//! Full sweeps of every lemma check over small fields.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::*;
use crate::arith::for_each_combination;

/// Outcome of one lemma over its sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.cases > 0 && self.failures.is_empty()
    }
}

const MAX_LISTED: usize = 50;

struct Acc {
    lemma: &'static str,
    cases: usize,
    failures: Vec<String>,
    extra: usize,
}

impl Acc {
    fn new(lemma: &'static str) -> Self {
        Self {
            lemma,
            cases: 0,
            failures: Vec::new(),
            extra: 0,
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        } else {
            self.extra += 1;
        }
    }

    fn count(&mut self, ctx: impl FnOnce() -> String, r: Result<CountResult>) {
        self.cases += 1;
        match r {
            Ok(c) if c.agree => {}
            Ok(c) => self.fail(format!("{}: brute {} closed {}", ctx(), c.brute, c.closed)),
            Err(e) => self.fail(format!("{}: {e}", ctx())),
        }
    }

    fn sum(&mut self, ctx: impl FnOnce() -> String, r: Result<SumCheck>) {
        self.cases += 1;
        match r {
            Ok(c) if c.agree => {}
            Ok(c) => self.fail(format!("{}: brute {:.6} closed {:.6}", ctx(), c.brute, c.closed)),
            Err(e) => self.fail(format!("{}: {e}", ctx())),
        }
    }

    fn merge(&mut self, o: Acc) {
        self.cases += o.cases;
        self.extra += o.extra;
        for f in o.failures {
            self.fail(f);
        }
    }

    fn finish(mut self) -> LemmaReport {
        if self.extra > 0 {
            self.failures.push(format!("... and {} more", self.extra));
        }
        LemmaReport {
            lemma: self.lemma.to_string(),
            cases: self.cases,
            failures: self.failures,
        }
    }
}

const BINARY: [(u32, u32); 3] = [(2, 4), (2, 5), (2, 6)];
const ODD: [(u32, u32); 3] = [(3, 3), (3, 4), (5, 3)];
/// Prime fields and quadratic extensions, used where the sums are cheap.
const SMALL_ODD: [(u32, u32); 4] = [(3, 1), (5, 1), (3, 2), (5, 2)];

fn field(p: u32, m: u32) -> Field {
    Field::with_default_modulus(p, m).expect("sweep fields have default moduli")
}

fn odd_fields(small: bool) -> Vec<Field> {
    let extra: &[(u32, u32)] = if small { &SMALL_ODD } else { &[] };
    extra.iter().chain(ODD.iter()).map(|&(p, m)| field(p, m)).collect()
}

fn binary_even() -> Vec<Field> {
    BINARY.iter().filter(|(_, m)| m % 2 == 0).map(|&(p, m)| field(p, m)).collect()
}

/// Exponents e in {1, 2} meeting the gate, plus e = m for even m so that
/// the even-m branches are exercised (m/gcd(m,m) = 1).
fn odd_exponents(fld: &Field) -> Vec<u32> {
    let m = fld.m();
    let mut es: Vec<u32> = vec![1, 2];
    if m % 2 == 0 {
        es.push(m);
    }
    es.retain(|&e| (m as u64 / gcd(m as u64, e as u64)) % 2 == 1);
    es
}

fn coprime_exponents(fld: &Field) -> Vec<u32> {
    [1u32, 2].into_iter().filter(|&e| gcd(fld.m() as u64, e as u64) == 1).collect()
}

fn tag(fld: &Field) -> String {
    format!("p={},m={}", fld.p(), fld.m())
}

fn lbl(fld: &Field, x: FieldElement) -> String {
    fld.label(x)
}

fn nonzero(fld: &Field) -> impl Iterator<Item = FieldElement> + '_ {
    fld.elements().skip(1)
}

fn lemma_gauss() -> LemmaReport {
    let mut acc = Acc::new("2.1");
    for f in odd_fields(true) {
        let r = gauss_sums(&f);
        acc.sum(|| format!("{} G(eta,chi1)", tag(&f)), r.clone().map(|x| x.0));
        acc.sum(|| format!("{} G(etabar,chibar1)", tag(&f)), r.map(|x| x.1));
    }
    acc.finish()
}

fn lemma_quad_odd() -> LemmaReport {
    let mut acc = Acc::new("2.2");
    for f in odd_fields(true) {
        let bs = [FieldElement::ONE, f.generator()];
        let parts: Vec<Acc> = nonzero(&f)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&a2| {
                let mut acc = Acc::new("2.2");
                for b in bs {
                    for a1 in f.elements() {
                        for a0 in [FieldElement::ZERO, FieldElement::ONE] {
                            acc.sum(
                                || format!("{} b={} a=({},{},{})", tag(&f), lbl(&f, b), lbl(&f, a2), lbl(&f, a1), lbl(&f, a0)),
                                quad_char_sum(&f, b, a2, a1, a0),
                            );
                        }
                    }
                }
                acc
            })
            .collect();
        parts.into_iter().for_each(|p| acc.merge(p));
    }
    acc.finish()
}

fn lemma_quad_even() -> LemmaReport {
    let mut acc = Acc::new("2.3");
    for &(p, m) in &BINARY {
        let f = field(p, m);
        for b in [FieldElement::ONE, f.generator()] {
            for a2 in f.elements() {
                for a1 in f.elements() {
                    for a0 in [FieldElement::ZERO, FieldElement::ONE] {
                        acc.sum(
                            || format!("{} b={} a=({},{},{})", tag(&f), lbl(&f, b), lbl(&f, a2), lbl(&f, a1), lbl(&f, a0)),
                            quad_char_sum(&f, b, a2, a1, a0),
                        );
                    }
                }
            }
        }
    }
    acc.finish()
}

fn lemma_eta_restriction() -> LemmaReport {
    let mut acc = Acc::new("2.4");
    for f in odd_fields(true) {
        match eta_on_prime_field(&f) {
            Ok(rs) => {
                for (c, r) in rs.into_iter().enumerate() {
                    acc.count(|| format!("{} c={}", tag(&f), c + 1), Ok(r));
                }
            }
            Err(e) => acc.count(|| tag(&f), Err(e)),
        }
    }
    acc.finish()
}

fn lemma_se_binary() -> LemmaReport {
    let mut acc = Acc::new("2.5");
    for f in binary_even() {
        for e in coprime_exponents(&f) {
            for a in nonzero(&f) {
                acc.sum(
                    || format!("{} e={e} a={}", tag(&f), lbl(&f, a)),
                    se_check(&f, e, a, FieldElement::ZERO),
                );
            }
        }
    }
    acc.finish()
}

fn lemma_se_power() -> LemmaReport {
    let mut acc = Acc::new("2.6");
    for f in binary_even() {
        for e in coprime_exponents(&f) {
            for a in nonzero(&f) {
                for h in [2, 4] {
                    acc.count(
                        || format!("{} e={e} a={} h={h}", tag(&f), lbl(&f, a)),
                        se_power_sum(&f, e, a, h),
                    );
                }
            }
        }
    }
    acc.finish()
}

/// Runs `check` on every `(a, b)` (both nonzero when `nonzero_only`) for
/// every gated odd field and exponent, in parallel over `a`.
fn odd_pairs(
    lemma: &'static str,
    nonzero_only: bool,
    check: impl Fn(&Field, u32, FieldElement, FieldElement, &mut Acc) + Sync,
) -> LemmaReport {
    let mut acc = Acc::new(lemma);
    for f in odd_fields(false) {
        for e in odd_exponents(&f) {
            let skip = usize::from(nonzero_only);
            let parts: Vec<Acc> = f
                .elements()
                .skip(skip)
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&a| {
                    let mut acc = Acc::new(lemma);
                    for b in f.elements().skip(skip) {
                        check(&f, e, a, b, &mut acc);
                    }
                    acc
                })
                .collect();
            parts.into_iter().for_each(|p| acc.merge(p));
        }
    }
    acc.finish()
}

fn ctx(f: &Field, e: u32, a: FieldElement, b: FieldElement) -> String {
    format!("{} e={e} a={} b={}", tag(f), lbl(f, a), lbl(f, b))
}

fn lemma_se_odd() -> LemmaReport {
    odd_pairs("2.7", true, |f, e, a, b, acc| {
        acc.sum(|| ctx(f, e, a, b), se_check(f, e, a, b))
    })
}

fn lemma_delta() -> LemmaReport {
    odd_pairs("2.7-delta", true, |f, e, a, b, acc| {
        acc.sum(|| ctx(f, e, a, b), delta_sum(f, e, a, b))
    })
}

fn lemma_nhat0() -> LemmaReport {
    odd_pairs("2.8", false, |f, e, a, b, acc| {
        acc.count(|| ctx(f, e, a, b), count_nhat0(f, e, a, b))
    })
}

fn lemma_n0() -> LemmaReport {
    let mut acc = Acc::new("5.3");
    for f in odd_fields(true) {
        let parts: Vec<Acc> = f
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&a| {
                let mut acc = Acc::new("5.3");
                for b in f.elements() {
                    acc.count(|| ctx(&f, 0, a, b), count_n0_quadratic(&f, a, b));
                }
                acc
            })
            .collect();
        parts.into_iter().for_each(|p| acc.merge(p));
    }
    acc.finish()
}

fn lemma_quadchar_trace() -> LemmaReport {
    let mut acc = Acc::new("5.2");
    for f in odd_fields(true) {
        let r = count_quadchar_trace(&f);
        acc.count(|| format!("{} squares", tag(&f)), r.clone().map(|x| x.0));
        acc.count(|| format!("{} non-squares", tag(&f)), r.map(|x| x.1));
    }
    acc.finish()
}

fn lemma_r3() -> LemmaReport {
    let mut acc = Acc::new("4.6");
    for f in binary_even() {
        match count_r3(&f) {
            Ok(rs) => {
                for (i, r) in rs.into_iter().enumerate() {
                    acc.count(|| format!("{} class {i}", tag(&f)), Ok(r));
                }
            }
            Err(e) => acc.count(|| tag(&f), Err(e)),
        }
    }
    acc.finish()
}

/// Every bent function of both families over the gated odd fields.
fn bent_functions(f: &Field) -> Vec<BentFunction> {
    let mut v: Vec<BentFunction> = nonzero(f).map(|a| BentFunction::Quadratic { a }).collect();
    for e in odd_exponents(f) {
        v.extend(nonzero(f).map(|a| BentFunction::Monomial { e, a }));
    }
    v
}

fn fun_ctx(f: &Field, fun: &BentFunction) -> String {
    match *fun {
        BentFunction::Quadratic { a } => format!("{} Tr(-x^2/4a) a={}", tag(f), lbl(f, a)),
        BentFunction::Monomial { e, a } => format!("{} Tr(a x^(p^e+1)) e={e} a={}", tag(f), lbl(f, a)),
    }
}

/// Walsh signs and duals (5.4 for the quadratic family, 5.5 for monomials)
/// together with the zero-set counts at every nonzero beta with a zero dual.
fn lemmas_bent() -> Vec<LemmaReport> {
    let mut accs = [
        Acc::new("5.4"),
        Acc::new("5.5"),
        Acc::new("2.12"),
        Acc::new("2.13"),
    ];
    for f in odd_fields(false) {
        let parts: Vec<[Acc; 4]> = bent_functions(&f)
            .par_iter()
            .map(|fun| {
                let mut a = [Acc::new("5.4"), Acc::new("5.5"), Acc::new("2.12"), Acc::new("2.13")];
                let which = usize::from(matches!(fun, BentFunction::Monomial { .. }));
                let c = || fun_ctx(&f, fun);
                let vals = match fun.values(&f) {
                    Ok(v) => v,
                    Err(e) => {
                        a[which].count(c, Err(e));
                        return a;
                    }
                };
                let spec = match walsh_spectrum(&f, &vals) {
                    Ok(s) => s,
                    Err(e) => {
                        a[which].count(c, Err(e));
                        return a;
                    }
                };
                a[which].count(
                    || format!("{} sign", c()),
                    fun.closed_sign(&f).map(|s| CountResult::new(spec.sign as i128, s as i128)),
                );
                for beta in f.elements() {
                    let d = fun.closed_dual(&f, beta).map(|d| CountResult::new(spec.dual[beta.index() as usize] as i128, d as i128));
                    a[which].count(|| format!("{} dual at {}", c(), lbl(&f, beta)), d);
                    if beta.is_zero() || spec.dual[beta.index() as usize] != 0 {
                        continue;
                    }
                    match bent_zero_sets(&f, &vals, &spec, beta) {
                        Ok([n0, nsq, nnsq]) => {
                            a[2].count(|| format!("{} beta={}", c(), lbl(&f, beta)), Ok(n0));
                            a[3].count(|| format!("{} beta={} sq", c(), lbl(&f, beta)), Ok(nsq));
                            a[3].count(|| format!("{} beta={} nsq", c(), lbl(&f, beta)), Ok(nnsq));
                        }
                        Err(e) => a[2].count(|| format!("{} beta={}", c(), lbl(&f, beta)), Err(e)),
                    }
                }
                a
            })
            .collect();
        for p in parts {
            for (acc, part) in accs.iter_mut().zip(p) {
                acc.merge(part);
            }
        }
    }
    accs.into_iter().map(Acc::finish).collect()
}

fn lemma_ntilde() -> LemmaReport {
    let mut acc = Acc::new("5.6");
    for f in odd_fields(false) {
        for e in odd_exponents(&f) {
            for a in nonzero(&f).filter(|&a| f.trace(a) == 0) {
                for class in [GammaClass::Zero, GammaClass::Square, GammaClass::NonSquare] {
                    acc.count(
                        || format!("{} e={e} a={} {class:?}", tag(&f), lbl(&f, a)),
                        count_ntilde(&f, e, a, class),
                    );
                }
            }
        }
    }
    acc.finish()
}

fn lemma_pairs() -> LemmaReport {
    let mut acc = Acc::new("4.1");
    for &(p, m) in &BINARY {
        let f = field(p, m);
        for e in coprime_exponents(&f) {
            // Split by the smallest element so the work parallelizes.
            let parts: Vec<Acc> = (0..f.q() as usize)
                .into_par_iter()
                .map(|x0| {
                    let mut acc = Acc::new("4.1");
                    let rest: Vec<usize> = (x0 + 1..f.q() as usize).collect();
                    for_each_combination(&rest, 3, |s| {
                        let t = [x0, s[0], s[1], s[2]].map(|i| FieldElement(i as u32));
                        acc.count(
                            || format!("{} e={e} T={:?}", tag(&f), t.map(|x| lbl(&f, x))),
                            count_solution_systems(&f, e, SolutionSystem::Pair { t }),
                        );
                    });
                    acc
                })
                .collect();
            parts.into_iter().for_each(|p| acc.merge(p));
        }
    }
    acc.finish()
}

fn lemma_triples() -> LemmaReport {
    let mut acc = Acc::new("4.4");
    for f in binary_even() {
        for e in coprime_exponents(&f) {
            let s = s_exp(&f, e);
            let parts: Vec<Acc> = f
                .elements()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&a| {
                    let mut acc = Acc::new("4.4");
                    for b in f.elements().filter(|&b| f.pow(a, s) != b) {
                        acc.count(|| ctx(&f, e, a, b), count_solution_systems(&f, e, SolutionSystem::Triple { a, b }));
                    }
                    acc
                })
                .collect();
            parts.into_iter().for_each(|p| acc.merge(p));
        }
    }
    acc.finish()
}

fn lemma_quad01() -> LemmaReport {
    let mut acc = Acc::new("4.7");
    for f in binary_even() {
        for e in coprime_exponents(&f) {
            acc.count(
                || format!("{} e={e}", tag(&f)),
                count_solution_systems(&f, e, SolutionSystem::Quad01),
            );
        }
    }
    acc.finish()
}

/// Every lemma check over its full sweep, in a fixed order.
pub fn run_all() -> Vec<LemmaReport> {
    let jobs: Vec<fn() -> Vec<LemmaReport>> = vec![
        || vec![lemma_gauss()],
        || vec![lemma_quad_odd()],
        || vec![lemma_quad_even()],
        || vec![lemma_eta_restriction()],
        || vec![lemma_se_binary()],
        || vec![lemma_se_power()],
        || vec![lemma_se_odd()],
        || vec![lemma_delta()],
        || vec![lemma_nhat0()],
        lemmas_bent,
        || vec![lemma_pairs()],
        || vec![lemma_triples()],
        || vec![lemma_r3()],
        || vec![lemma_quad01()],
        || vec![lemma_quadchar_trace()],
        || vec![lemma_n0()],
        || vec![lemma_ntilde()],
    ];
    let mut out: Vec<LemmaReport> = jobs.par_iter().flat_map(|j| j()).collect();
    let order = |l: &str| -> (u32, u32, String) {
        let mut it = l.split(['.', '-']);
        let a = it.next().and_then(|s| s.parse().ok()).unwrap_or(0);
        let b = it.next().and_then(|s| s.parse().ok()).unwrap_or(0);
        (a, b, l.to_string())
    };
    out.sort_by_key(|r| order(&r.lemma));
    out
}
