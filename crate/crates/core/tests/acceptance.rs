use stringdual::verify::{run_criterion, Profile, CRITERIA};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let o = run_criterion(id, Profile::Quick, false);
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] {:>2}. {} ({} comparisons, {:.2}s) {}", o.id, o.name, o.compared, o.seconds, o.detail);
        if !o.passed {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn seeded_fault_is_caught() {
    let o = run_criterion(2, Profile::Quick, true);
    assert!(!o.passed);
    assert!(o.detail.contains("seeded fault"));
}
