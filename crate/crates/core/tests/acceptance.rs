use std::io::Write;

use glt_core::acceptance::{run_criterion, SuiteConfig, CRITERIA};

#[test]
fn acceptance_suite() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let outcome = run_criterion(c.0, &cfg).expect("known criterion");
        let _ = writeln!(std::io::stderr(), "{}", outcome.line());
        if !outcome.passed {
            failed.push(outcome.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
