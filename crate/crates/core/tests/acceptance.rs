//! The full acceptance run, one line per check, plus a mutation smoke test:
//! a corrupted composition must be caught.

use std::io::Write;

use num_traits::One;
use rittforge::acceptance::{Checks, CHECK_COUNT, DEFAULT_SEED};
use rittforge::poly::{GaussianRational, Poly};

/// Writes past the test harness's output capture so the report is always shown.
fn report(line: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

fn seed() -> u64 {
    std::env::var("RITTFORGE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

#[test]
fn all_checks_pass() {
    let checks = Checks { seed: seed(), ..Checks::default() };
    let reports = checks.run_all();
    assert_eq!(reports.len(), CHECK_COUNT);
    for r in &reports {
        report(&r.line());
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}

/// Off by `z` whenever the result has degree ≥ 2.
fn corrupted_compose(f: &Poly, g: &Poly) -> Poly {
    let p = f.compose(g);
    if p.degree() < 2 {
        return p;
    }
    let mut c = p.into_coeffs();
    c[1] = &c[1] + &GaussianRational::one();
    Poly::new(c)
}

#[test]
fn mutation_is_detected() {
    let checks = Checks { seed: seed(), compose: corrupted_compose, render_resolution: 64 };
    let caught: Vec<_> = [1, 2, 3, 5, 10].into_iter().map(|id| checks.run(id)).filter(|r| !r.pass).collect();
    for r in &caught {
        report(&format!("mutation caught: {}", r.line()));
    }
    report(&format!(
        "[{}] mutation smoke test: {} checks failed under corrupted composition",
        if caught.is_empty() { "FAIL" } else { "PASS" },
        caught.len()
    ));
    assert!(!caught.is_empty());
}
