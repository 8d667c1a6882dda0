//! Acceptance criteria 1-12, one line each.

use polyzeta::verify::{self, Entry, Status, VerifyConfig};

const CRITERIA: [(u8, &str); 12] = [
    (1, "exact even zeta rationals vs Bernoulli numbers, k = 1..12"),
    (2, "zeta(2,2), zeta(3,1), zeta(2,2,2) vs pi powers, relative 1e-8"),
    (3, "gamma on (-1,-1), (-2,-1), (-1,-2) = 11/24, -73/120, -67/120"),
    (4, "negative-index star combinations, coefficient for coefficient"),
    (5, "stuffle star identity to weight 8; Newton-Girard for r <= 3, N <= 20"),
    (6, "y_r* = exp_stuffle(...) to weight 8, r = 1, 2"),
    (7, "Euler complement and Gamma_{y2}(1 + iz) below 2^-200 at 256 bits"),
    (8, "Weierstrass product over roots for (r, q) = (1, 3), (2, 3) below 2^-200"),
    (9, "sum formula for k = 3, 4, 5 within the numeric bound"),
    (10, "Beta comparison: quadrature within 1e-8, gamma quotient within 1e-20"),
    (11, "property suites: algebra laws, rational expressions, characters, minimize, Lyndon, Radford"),
    (12, "discrepancy entries with both values; internal paths agree"),
];

fn config() -> VerifyConfig {
    VerifyConfig {
        prec_bits: 256,
        err: 1e-10,
        max_weight: 8,
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        filter: Vec::new(),
    }
}

#[test]
fn tolerances_are_pinned() {
    assert_eq!(verify::HIGH_PREC, 256);
    assert_eq!(verify::HIGH_PREC_TOL_LOG2, -200);
    assert_eq!(verify::MZV_REL_TOL, 1e-8);
    assert_eq!(verify::BETA_QUAD_TOL, 1e-8);
    assert_eq!(verify::BETA_GAMMA_TOL, 1e-20);
    assert_eq!(verify::SERIES_WEIGHT, 8);
    assert_eq!(verify::PROPERTY_SAMPLES, 200);
    assert_eq!(verify::PROPERTY_WEIGHT, 6);
    assert_eq!(verify::RATEXPR_SIZE, 6);
    assert_eq!(verify::RATEXPR_WEIGHT, 8);
}

fn criterion_passes(k: u8, entries: &[&Entry]) -> bool {
    if entries.is_empty() || entries.iter().any(|e| e.status == Status::Fail) {
        return false;
    }
    if k == 12 {
        let discrepancy = |id: &str| {
            entries
                .iter()
                .any(|e| e.identity_id == id && e.status == Status::Discrepancy)
        };
        return discrepancy("c12.zeta-shuffle(-2,-1)") && discrepancy("c12.stirling(-1,-1)");
    }
    entries.iter().all(|e| e.status == Status::Pass)
}

#[test]
fn acceptance_criteria() {
    let report = verify::run(&config()).expect("suite runs");
    let mut failed = Vec::new();
    for (k, label) in CRITERIA {
        let prefix = format!("c{k:02}.");
        let entries: Vec<&Entry> = report
            .iter()
            .filter(|e| e.identity_id.starts_with(&prefix))
            .collect();
        let ok = criterion_passes(k, &entries);
        println!(
            "criterion {k:>2}: {} ({} items) {label}",
            if ok { "PASS" } else { "FAIL" },
            entries.len()
        );
        for e in &entries {
            println!(
                "    [{}] {}: {} | {}",
                e.status, e.identity_id, e.lhs, e.rhs
            );
            if let Some(n) = &e.note {
                println!("        {n}");
            }
        }
        if !ok {
            failed.push(k);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
