//! Closed-form tables against exhaustive enumeration, and the lambda sweeps.

use std::collections::{BTreeMap, BTreeSet};

use shortcode::code::Limits;
use shortcode::harness::{check_gf4, run_suite, suite_scenarios, sweep_even3, sweep_odd4, Sampling, Suite};
use shortcode::predict::TableTag;

#[test]
fn tables_match_enumeration() {
    let r = run_suite(Suite::Tables, &Limits::default(), &Sampling::default()).unwrap();
    let failed: Vec<_> = r.cases.iter().filter(|c| !c.pass).collect();
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn shortened_tables_use_three_t_choices() {
    let mut per: BTreeMap<String, usize> = BTreeMap::new();
    let mut tags = BTreeSet::new();
    for sc in suite_scenarios(Suite::Tables).unwrap() {
        tags.insert(sc.table.unwrap());
        if let Some((base, _)) = sc.id.rsplit_once("/T") {
            *per.entry(base.to_string()).or_default() += 1;
        }
    }
    assert!(!per.is_empty());
    for (key, n) in &per {
        assert_eq!(*n, 3, "{key}");
    }
    for tag in [1, 2, 3, 4, 5, 6, 7, 11, 12, 13, 14, 15, 16] {
        let t: TableTag = format!("tab{tag}").parse().unwrap();
        assert!(tags.contains(&t), "tab{tag} is not exercised");
    }
}

#[test]
fn odd_four_subsets_split_into_two_classes() {
    let exhaustive = Sampling {
        max_exhaustive: u128::MAX,
        ..Sampling::default()
    };
    let r = sweep_odd4(5, 1, &exhaustive, &Limits::default()).unwrap();
    assert!(r.pass(), "{:?}", r.failures);
    assert_eq!(r.checked, 35960);
    assert_eq!(r.classes.len(), 2);
    assert_eq!(r.distinct_distributions, 2);
}

#[test]
fn even_three_subsets_follow_the_lambda_formula() {
    let exhaustive = Sampling {
        max_exhaustive: u128::MAX,
        ..Sampling::default()
    };
    let r = sweep_even3(4, 1, &exhaustive, &Limits::default()).unwrap();
    assert!(r.pass(), "{:?}", r.failures);
    assert_eq!(r.checked, 560);
    let keys: Vec<_> = r.classes.keys().cloned().collect();
    assert_eq!(keys, ["lambda=0", "lambda=2"]);
    let m6 = sweep_even3(6, 1, &Sampling::default(), &Limits::default()).unwrap();
    assert!(m6.pass(), "{:?}", m6.failures);
    assert!(!m6.sampled);
    assert_eq!(m6.checked, 41664);
}

#[test]
fn sampled_sweeps_are_reproducible() {
    let s = Sampling {
        max_exhaustive: 0,
        samples: 40,
        seed: 7,
    };
    let a = sweep_even3(6, 1, &s, &Limits::default()).unwrap();
    let b = sweep_even3(6, 1, &s, &Limits::default()).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn gf4_table_and_dual_counts() {
    for m in [4, 6] {
        let c = check_gf4(m, 1, &Limits::default()).unwrap();
        assert!(c.pass(), "{c:?}");
    }
}
