//! The acceptance suite: one pass/fail line per criterion, all asserted.
//!
//! Run with `cargo test -p scl-core --test acceptance -- --nocapture` to
//! see the per-criterion lines, or via the CLI as
//! `scl verify acceptance --level full`.

use scl_core::acceptance::{run_with, Level, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let mut failures: Vec<String> = Vec::new();
    let all_passed = run_with(Level::Full, DEFAULT_SEED, &mut |r| {
        println!(
            "[{:2}/10] {}  {:<58} ({:6.2}s)  {}",
            r.index,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.seconds,
            r.detail
        );
        if !r.passed {
            failures.push(format!("criterion {} ({}): {}", r.index, r.name, r.detail));
        }
    });
    assert!(all_passed, "failed acceptance criteria:\n{}", failures.join("\n"));
}
