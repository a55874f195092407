//! One PASS/FAIL line per acceptance criterion, run in order so that the
//! boundary check sees every complex the earlier criteria built.

use loday_cli::suite::run_all;

#[test]
fn acceptance_suite() {
    let results = run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{}/{} criteria passed", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
