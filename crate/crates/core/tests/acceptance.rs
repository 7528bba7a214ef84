//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! An optional argument selects criteria by number, e.g. `-- 1,4,9`.

use std::process::ExitCode;

use genproj_core::acceptance::CRITERIA;

fn main() -> ExitCode {
    let selected: Option<Vec<usize>> = std::env::args()
        .skip(1)
        .find(|a| !a.starts_with('-'))
        .map(|a| a.split(',').filter_map(|s| s.trim().parse().ok()).collect());
    let mut failed = 0;
    for (i, criterion) in CRITERIA.iter().enumerate() {
        if selected.as_ref().is_some_and(|s| !s.contains(&(i + 1))) {
            continue;
        }
        let report = criterion();
        println!("{report}");
        if !report.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        return ExitCode::FAILURE;
    }
    println!("all acceptance criteria passed");
    ExitCode::SUCCESS
}
