//! Worked examples: each code is built, shortened and enumerated directly,
//! and compared with the printed parameters and weight enumerator.

use shortcode::code::{weight_distribution, Limits};
use shortcode::construct::{build_code, positions_in, special_elements, SpecialT};
use shortcode::gf::Field;
use shortcode::harness::{run_suite, Sampling, Suite};

const M4: &str = "apn:p=2,m=4,mod=10011,e=1";
const M5: &str = "apn:p=2,m=5,mod=100101,e=1";

/// (code, T, n, k, d, nonzero enumerator terms)
type Example = (&'static str, &'static str, usize, usize, usize, &'static [(usize, u128)]);

const EXAMPLES: &[(&str, Example)] = &[
    ("3.2", (M5, "alpha^1", 31, 10, 12, &[(12, 310), (16, 527), (20, 186)])),
    ("3.3", (M5, "0,1", 30, 9, 12, &[(12, 190), (16, 255), (20, 66)])),
    ("3.4", (M5, "0,1,alpha", 29, 8, 12, &[(12, 114), (16, 119), (20, 22)])),
    ("3.8", (M4, "alpha^3", 15, 8, 4, &[(4, 15), (6, 100), (8, 75), (10, 60), (12, 5)])),
    ("3.9", (M4, "0,alpha^7", 14, 7, 4, &[(4, 11), (6, 60), (8, 35), (10, 20), (12, 1)])),
    ("4.1", (M5, "alpha,alpha^2,alpha^4,alpha^5", 28, 7, 12, &[(12, 66), (16, 55), (20, 6)])),
    ("4.2", (M5, "alpha,alpha^2,alpha^3,alpha^4", 28, 7, 12, &[(12, 68), (16, 51), (20, 8)])),
    ("4.4", (M4, "alpha,alpha^2,alpha^4", 13, 6, 4, &[(4, 7), (6, 36), (8, 15), (10, 4), (12, 1)])),
    ("4.6", (M4, "alpha^2,alpha^5,alpha^7", 13, 6, 4, &[(4, 8), (6, 34), (8, 15), (10, 6)])),
    ("4.9", (M4, "T=GF(4)", 12, 5, 4, &[(4, 3), (6, 24), (8, 3), (12, 1)])),
    ("5.2", ("pn:p=3,m=3,s=2", "alpha^4", 26, 6, 15, &[(15, 312), (18, 260), (21, 156)])),
    ("5.3", ("pn:p=3,m=4,s=2", "alpha^4", 80, 8, 48, &[(48, 1320), (51, 2400), (54, 80), (57, 1920), (60, 840)])),
    ("5.4", ("pn:p=3,m=5,s=2", "0,1", 241, 9, 153, &[(153, 8010), (162, 6560), (171, 5112)])),
    ("5.5", ("pn:p=3,m=4,s=2", "alpha,alpha^9", 79, 7, 48, &[(48, 528), (51, 870), (54, 26), (57, 552), (60, 210)])),
    ("5.10", ("pn:p=3,m=3,s=2", "T=GF(p)", 24, 4, 15, &[(15, 48), (18, 32)])),
    ("5.11", ("pn:p=3,m=4,s=2", "T=GF(p)", 78, 6, 48, &[(48, 240), (51, 240), (54, 26), (57, 192), (60, 30)])),
];

fn check(id: &str) {
    let (_, (code, t, n, k, d, terms)) = EXAMPLES.iter().find(|(x, _)| *x == id).unwrap();
    let spec = code.parse().unwrap();
    let full = build_code(&spec).unwrap();
    let fld = Field::new(full.field_spec().unwrap()).unwrap();
    let kind: SpecialT = t.parse().unwrap();
    let set = positions_in(&full, &special_elements(&fld, &kind).unwrap()).unwrap();
    let short = full.shorten(&set).unwrap();
    assert_eq!((short.n(), short.k()), (*n, *k), "example {id} parameters");
    let wd = weight_distribution(&short, &Limits::default()).unwrap();
    assert_eq!(wd.min_distance(), Some(*d), "example {id} minimum distance");
    let got: Vec<(usize, u128)> = wd.iter().filter(|&(w, _)| w > 0).collect();
    assert_eq!(got, terms.to_vec(), "example {id} enumerator");
    assert_eq!(wd.total(), (short.p() as u128).pow(*k as u32));
}

macro_rules! examples {
    ($($name:ident => $id:literal),* $(,)?) => {
        $(#[test] fn $name() { check($id); })*
    };
}

examples! {
    example_3_2 => "3.2", example_3_3 => "3.3", example_3_4 => "3.4",
    example_3_8 => "3.8", example_3_9 => "3.9",
    example_4_1 => "4.1", example_4_2 => "4.2", example_4_4 => "4.4",
    example_4_6 => "4.6", example_4_9 => "4.9",
    example_5_2 => "5.2", example_5_3 => "5.3", example_5_4 => "5.4",
    example_5_5 => "5.5", example_5_10 => "5.10", example_5_11 => "5.11",
}

#[test]
fn harness_suite_agrees() {
    let r = run_suite(Suite::PaperExamples, &Limits::default(), &Sampling::default()).unwrap();
    assert_eq!(r.cases.len(), EXAMPLES.len());
    let failed: Vec<_> = r.cases.iter().filter(|c| !c.pass).collect();
    assert!(failed.is_empty(), "{failed:?}");
}
