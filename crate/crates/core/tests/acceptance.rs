//! Acceptance run: one status line per criterion, with the documented
//! deviations listed beneath. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zinbiel::catalog::{verify_all, Catalog, Check, SuiteConfig, SuiteReport};

const SERIES_PAIRS: usize = 1000;

struct Criterion {
    number: u32,
    title: &'static str,
    checks: &'static [Check],
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        number: 1,
        title: "identity suite",
        checks: &[Check::Identities],
    },
    Criterion {
        number: 2,
        title: "H2 regression",
        checks: &[Check::Cohomology],
    },
    Criterion {
        number: 3,
        title: "extension reconstruction",
        checks: &[Check::Extensions, Check::Annihilators],
    },
    Criterion {
        number: 4,
        title: "degeneration certificates",
        checks: &[Check::Certificates],
    },
    Criterion {
        number: 5,
        title: "monotonicity laws",
        checks: &[Check::Monotonicity],
    },
    Criterion {
        number: 6,
        title: "orbit-dimension table",
        checks: &[Check::OrbitDimensions],
    },
    Criterion {
        number: 7,
        title: "dim A^2 table",
        checks: &[Check::SquareDimensions],
    },
    Criterion {
        number: 8,
        title: "R-set evidence",
        checks: &[Check::Rsets],
    },
    Criterion {
        number: 9,
        title: "property suites",
        checks: &[Check::Fingerprints],
    },
];

/// Runs the series laws on seeded random expression pairs.
fn series_properties() -> (usize, usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut pairs, mut laws, mut failures) = (0, 0, Vec::new());
    for _ in 0..SERIES_PAIRS {
        let x = common::random_expr(&mut rng, 3);
        let y = common::random_expr(&mut rng, 3);
        match common::check_series_laws(&x, &y) {
            Ok(0) => {}
            Ok(k) => {
                pairs += 1;
                laws += k;
            }
            Err(e) => failures.push(e),
        }
    }
    (pairs, laws, failures)
}

fn status_of(report: &SuiteReport, checks: &[Check]) -> (&'static str, usize, usize) {
    let mut status = "PASS";
    let (mut ok, mut total) = (0, 0);
    for c in checks {
        let Some(r) = report.check(*c) else {
            return ("FAIL", 0, 0);
        };
        ok += r.items.iter().filter(|i| i.passed).count();
        total += r.items.len();
        match r.status() {
            "FAIL" => status = "FAIL",
            "DEVIATION" if status == "PASS" => status = "DEVIATION",
            _ => {}
        }
    }
    (status, ok, total)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let report = match verify_all(Catalog::shipped(), &SuiteConfig::default()) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: suite did not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failed = false;
    for c in &CRITERIA {
        let (mut status, ok, total) = status_of(&report, c.checks);
        let mut extra = String::new();
        let mut lines = Vec::new();
        if c.number == 9 {
            let (pairs, laws, failures) = series_properties();
            extra = format!(", series laws {laws} on {pairs} of {SERIES_PAIRS} expression pairs");
            // Most pairs must expand for the check to mean anything.
            if !failures.is_empty() || pairs * 10 < SERIES_PAIRS * 9 {
                status = "FAIL";
                lines.push(format!("{} expansions, {} violations", pairs, failures.len()));
                lines.extend(failures.into_iter().take(5));
            }
        }
        for r in c.checks.iter().filter_map(|k| report.check(*k)) {
            for i in r.failures() {
                lines.push(format!("{}: {}", i.subject, i.detail));
            }
            for i in r.deviations() {
                lines.push(format!(
                    "documented {}: {}",
                    i.subject,
                    i.documented.as_deref().unwrap_or_default()
                ));
            }
            lines.extend(r.notes.iter().map(|n| format!("note: {n}")));
        }
        failed |= status == "FAIL";
        println!(
            "criterion {} {status}: {} ({ok}/{total} items{extra})",
            c.number, c.title
        );
        for l in lines {
            println!("    {l}");
        }
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    if failed || !report.passed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
