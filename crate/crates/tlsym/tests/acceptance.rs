//! One line per acceptance criterion: `[PASS]` or `[FAIL]`, the criterion,
//! and its runtime against the budget.

use std::time::{Duration, Instant};

use tlsym::suites;
use tlsym::{OutputFormat, Report};

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Report,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "orthogonalization XY = YX = 1 and X intertwines (boundary ≤ 10, 200 pairs)",
        budget: Some(Duration::from_secs(60)),
        run: || suites::orthogonalization(10, 200, 0),
    },
    Criterion {
        id: 2,
        name: "meander identity for n = 1..6",
        budget: Some(Duration::from_secs(60)),
        run: || suites::meander_identity(6),
    },
    Criterion {
        id: 3,
        name: "associativity and trace properties (boundary ≤ 10)",
        budget: Some(Duration::from_secs(30)),
        run: || suites::algebra(10, 200, 0),
    },
    Criterion {
        id: 4,
        name: "Gram positivity at δ ∈ {2, 1.9, golden ratio} (≤ 8 points)",
        budget: Some(Duration::from_secs(30)),
        run: || suites::positivity(8, &suites::POSITIVITY_DELTAS),
    },
    Criterion {
        id: 5,
        name: "conditional expectation: routes agree, E² = E, capping identity",
        budget: None,
        run: || suites::expectation(2, 8),
    },
    Criterion {
        id: 6,
        name: "derivations: Leibniz, δ_ρ(R) = 0, reconstruction (≤ 8 points)",
        budget: Some(Duration::from_secs(120)),
        run: || suites::derivations(8, 3, 200, 0),
    },
    Criterion {
        id: 7,
        name: "conjugate variable pairing (Q ≤ 5 points, x ≤ 6 points)",
        budget: None,
        run: || suites::conjugate(5, 3),
    },
    Criterion {
        id: 8,
        name: "coassociativity of ∂_Q (degree ≤ 2)",
        budget: None,
        run: || suites::coassociativity(2),
    },
    Criterion {
        id: 9,
        name: "index arithmetic and PF residuals",
        budget: None,
        run: || suites::index_arithmetic(100, 0),
    },
    Criterion {
        id: 10,
        name: "serialization round trip (50 documents) and crossing rejection",
        budget: None,
        run: || suites::serialization(50, 0),
    },
];

fn main() {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let report = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.budget.is_none_or(|b| elapsed <= b);
        let ok = report.passed() && in_time;
        let budget = c.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        println!(
            "[{}] {:>2}. {} ({:.2}s{budget})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
        if !ok {
            print!("{}", report.render(OutputFormat::Text));
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
