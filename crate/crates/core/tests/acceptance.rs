//! Runs the acceptance suite and prints one line per criterion.

use std::io::Write;

use flagcone::reproduce::{self, Settings, Status};

#[test]
fn acceptance_criteria() {
    let results = reproduce::run_all(&Settings::default());
    // write through the handle so the summary shows up even when the test passes
    let mut out = std::io::stderr().lock();
    writeln!(out).unwrap();
    let mut failed = Vec::new();
    for r in &results {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        writeln!(out, "criterion {}: {tag}  {} ({:.2?})", r.id, r.title, r.elapsed).unwrap();
        for line in &r.detail {
            writeln!(out, "    {line}").unwrap();
        }
        if r.status != Status::Pass {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "criteria not passing: {failed:?}");
}
