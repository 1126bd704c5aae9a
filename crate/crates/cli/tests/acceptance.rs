//! One PASS/FAIL line per acceptance criterion, tolerances as pinned in the
//! suite. Exits nonzero if any criterion fails.

use std::process::ExitCode;

use hilbert_coth::quad::QuadConfig;
use hilbert_coth::specfun::K1Convention;
use hilbert_coth_cli::report::{fmt_num, Status};
use hilbert_coth_cli::suite::{criterion_status, run_suite, SuiteOptions, CRITERIA};

fn main() -> ExitCode {
    let cfg = QuadConfig::default();
    let all: Vec<u32> = (1..=10).collect();
    let (outcomes, timing) = run_suite(&all, &cfg, &SuiteOptions::default());
    let mut failures = 0;
    for (c, title, budget) in CRITERIA {
        let status = criterion_status(c, &outcomes, &timing);
        let checks: Vec<String> = outcomes
            .iter()
            .filter(|o| o.criterion == c)
            .map(|o| format!("{} = {} ({})", o.check, fmt_num(o.measured), o.tolerance))
            .collect();
        let seconds = timing
            .iter()
            .find(|t| t.label.starts_with(&format!("{c}. ")))
            .map_or(f64::NAN, |t| t.seconds);
        if status != Status::Pass {
            failures += 1;
        }
        println!(
            "{} criterion {c:>2} {title}: {} [{seconds:.2} s of {budget} s]",
            if status == Status::Pass { "PASS" } else { "FAIL" },
            checks.join("; ")
        );
    }

    // The suite must notice the misprinted K₁.
    let opts = SuiteOptions {
        k1_convention: K1Convention::AsPrinted,
        ..SuiteOptions::default()
    };
    let (mutated, mutated_timing) = run_suite(&[3], &cfg, &opts);
    let caught = criterion_status(3, &mutated, &mutated_timing) == Status::Fail;
    if !caught {
        failures += 1;
    }
    println!(
        "{} mutation: misprinted K₁ {} by criterion 3",
        if caught { "PASS" } else { "FAIL" },
        if caught { "detected" } else { "not detected" }
    );

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance line(s) failed");
        ExitCode::FAILURE
    }
}
