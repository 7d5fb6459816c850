use shortcode::sums::run_all;

#[test]
fn every_lemma_sweep_passes() {
    let reports = run_all();
    for r in &reports {
        println!("{:<10} cases {:>8} failures {}", r.lemma, r.cases, r.failures.len());
        for f in r.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    assert!(reports.iter().all(|r| r.pass()));
}
