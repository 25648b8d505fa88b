//! End-to-end acceptance run: twelve criteria, each checked exactly and
//! reported on one line. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use coalg_core::address::{word_distance, AddressWord};
use coalg_core::experiments::{f_reference, interval_fold_limit, IntervalE};
use coalg_core::morphisms::{branch_iterates, Algebra, DyadicAlg};
use coalg_core::space::UnitInterval;
use coalg_core::suites::{
    cauchy_rate, claims, commuting_squares, discontinuity, isometry_ck, lipschitz, metric_axioms,
    oracle_equivalence, tensor_maps, CheckResult,
};
use coalg_core::tensor::IteratedTensor;
use coalg_core::{Dyadic, PointedMetric};

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_checks(checks: Vec<CheckResult>) -> Outcome {
    let ok = checks.iter().all(|c| c.ok() && c.passed > 0);
    let total: u64 = checks.iter().map(|c| c.passed + c.failed).sum();
    let detail = match checks.iter().find(|c| !c.ok() || c.passed == 0) {
        None => format!("{total} instances"),
        Some(c) => c.to_string(),
    };
    Outcome { ok, detail }
}

fn word(text: &str) -> AddressWord {
    text.parse().expect("literal word")
}

fn gluing() -> Outcome {
    let zero = [
        ("l.T", "r.B"),
        ("a.L", "b.T"),
        ("a.R", "c.T"),
        ("c.L", "b.R"),
    ];
    let mut bad = Vec::new();
    for (a, b) in zero {
        let d = word_distance(&word(a), &word(b)).unwrap();
        if !d.is_zero() {
            bad.push(format!("d({a}, {b}) = {d}"));
        }
    }
    let d = word_distance(&word("l.B"), &word("r.T")).unwrap();
    if d != Dyadic::one() {
        bad.push(format!("d(l.B, r.T) = {d}"));
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            "5 distances".into()
        } else {
            bad.join("; ")
        },
    }
}

/// Every sequence of branch choices gives the same iterate `χ_p` in
/// `M^p ⊗ [0, 1]` (distance exactly 0) and the same limit.
fn branch_independence() -> Outcome {
    let mut overlaps = 0;
    let mut compared = 0u64;
    for p in 1..=15 {
        let space = IteratedTensor::new(UnitInterval, p);
        for k in 0..=256i64 {
            let x = Dyadic::new(k, 8);
            let chis = branch_iterates(&IntervalE, &x, p).unwrap();
            if p == 15 && chis.len() > 1 {
                overlaps += 1;
            }
            let expected = f_reference(&x).unwrap();
            for chi in &chis {
                compared += 1;
                let d = space.distance(&chis[0], chi);
                let limit = chi
                    .0
                    .iter()
                    .rev()
                    .fold(interval_fold_limit(&chi.1).unwrap(), |acc, &m| {
                        DyadicAlg.op(m, &acc)
                    });
                if !d.is_zero() || limit != expected {
                    return Outcome {
                        ok: false,
                        detail: format!("x={x} p={p}: {chi:?} at {d}, limit {limit}"),
                    };
                }
            }
        }
    }
    Outcome {
        ok: overlaps > 0,
        detail: format!("{overlaps} points with several branch iterates, {compared} iterates"),
    }
}

fn route_agreement() -> Outcome {
    for k in 0..=1024i64 {
        let x = Dyadic::new(k, 10);
        let a = f_reference(&x).unwrap();
        let b = interval_fold_limit(&x).unwrap();
        if a != b {
            return Outcome {
                ok: false,
                detail: format!("x={x}: reference {a}, fold {b}"),
            };
        }
    }
    Outcome {
        ok: true,
        detail: "1025 dyadics".into(),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 12] = [
    ("metric axioms (bi n<=8, tri n<=4)", || {
        from_checks(metric_axioms(8, 4).unwrap())
    }),
    ("oracle equivalence (bi n<=8, tri n<=4)", || {
        from_checks(oracle_equivalence(8, 4).unwrap())
    }),
    ("c_k isometry (k<=10)", || {
        from_checks(vec![isometry_ck(10).unwrap()])
    }),
    ("gluing distances", gluing),
    ("Cauchy rate (p<q<=20, 100 seeds)", || {
        from_checks(cauchy_rate(20, 100, SEED).unwrap())
    }),
    (
        "branch independence of unbarred iterates and limits (denominator<=2^8, depth<=15)",
        branch_independence,
    ),
    (
        "commuting squares (p<=12, 100 seeds; words depth<=6)",
        || from_checks(commuting_squares(12, 100, SEED, 6).unwrap()),
    ),
    (
        "interval value laws for f and g (n<=10, 8 interior samples)",
        || from_checks(claims(10, 8).unwrap()),
    ),
    ("Lipschitz ratios 2^(n+1), n=1..10", || {
        from_checks(lipschitz(10).unwrap())
    }),
    ("discontinuity witnesses (n<=10)", || {
        from_checks(discontinuity(10).unwrap())
    }),
    (
        "functor preserves short/Lipschitz/isometric (1000 trials)",
        || from_checks(tensor_maps(1000, SEED).unwrap()),
    ),
    ("route agreement (denominator<=2^10)", route_agreement),
];

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes: Vec<(Outcome, f64)> = thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|(_, run)| {
                scope.spawn(move || {
                    let t = Instant::now();
                    let outcome = run();
                    (outcome, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| {
                    (
                        Outcome {
                            ok: false,
                            detail: "panicked".into(),
                        },
                        0.0,
                    )
                })
            })
            .collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (outcome, secs))) in CRITERIA.iter().zip(&outcomes).enumerate() {
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}: {name} [{}] ({secs:.1}s)",
            i + 1,
            outcome.detail
        );
        failed += usize::from(!outcome.ok);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        CRITERIA.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
