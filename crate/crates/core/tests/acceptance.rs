//! Acceptance suite: one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use entropy_extremes::verify::{
    binary_collapse, divergence_sandwich, e0_attainment, e0_identity, e0_sandwich,
    entropy_sandwich, family_tightness, focusing_posteriors, inverse_entropy_roundtrip,
    inverse_norm_roundtrip, measure_transform, norm_sandwich, ratio_gap, region_containment,
    run_suite, standard_orders, table_specs, w_breakpoints, Exec, SuiteConfig, Tally, RHO_GRID,
};
use entropy_extremes::{MeasureSpec, Order};

const SEED: u64 = 20_240_601;
const EXEC: Exec = Exec::Parallel;

fn o(a: f64) -> Order {
    Order::from_real(a).unwrap()
}

fn sum(ts: impl IntoIterator<Item = Tally>) -> Tally {
    ts.into_iter().fold(Tally::default(), Tally::merge)
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn tallied(parts: &[(&str, Tally)]) -> Outcome {
    let ok = parts.iter().all(|(_, t)| t.passed());
    let detail = parts
        .iter()
        .map(|(name, t)| {
            format!(
                "{name}: {} checks, {} violations, max excess {:.2e}",
                t.checked, t.violations, t.max_excess
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok, detail }
}

fn criterion_1() -> Outcome {
    let ords = standard_orders();
    let t = sum((2..=8).map(|n| norm_sandwich(n, &ords, 100_000, SEED + n as u64, 1e-9, EXEC)));
    tallied(&[("norm sandwich", t)])
}

fn criterion_2() -> Outcome {
    let ords = standard_orders();
    let t = sum((2..=8).map(|n| family_tightness(n, &ords, 1_000, SEED + n as u64, 1e-9, EXEC)));
    let c = binary_collapse(&ords, 100_000, SEED, 1e-12, EXEC);
    tallied(&[("attainment", t), ("n = 2 collapse", c)])
}

fn criterion_3() -> Outcome {
    let below = sum((3..=6).map(|n| entropy_sandwich(n, &[o(0.5)], 10_000, SEED + n as u64, 1e-9, EXEC)));
    let above = sum((3..=6).map(|n| entropy_sandwich(n, &[o(2.0)], 10_000, SEED + n as u64, 1e-9, EXEC)));
    tallied(&[("order 0.5", below), ("order 2", above)])
}

fn criterion_4() -> Outcome {
    let a = region_containment(o(0.5), 1000, 65_536, 1e-6, EXEC);
    let b = region_containment(o(2.0), 1000, 65_536, 1e-6, EXEC);
    tallied(&[("order 0.5", a), ("order 2", b)])
}

fn criterion_5() -> Outcome {
    let ords = standard_orders();
    let h = sum((2..=8).map(|n| inverse_entropy_roundtrip(n, 10_000, 1e-10)));
    let x = sum((2..=8).map(|n| inverse_norm_roundtrip(n, &ords, 10_000, 1e-10)));
    let b = sum((2..=8).map(|n| w_breakpoints(n, 1e-12)));
    tallied(&[("inverse entropy", h), ("inverse norm", x), ("breakpoints", b)])
}

fn criterion_6() -> Outcome {
    tallied(&[("ratio gap", ratio_gap(100_000, SEED, 1e-12, EXEC))])
}

fn criterion_7() -> Outcome {
    let specs: Vec<MeasureSpec> = table_specs(0.5).into_iter().chain(table_specs(2.0)).collect();
    tallied(&[("transformed bounds", measure_transform(6, &specs, 10_000, SEED, 1e-9, EXEC))])
}

fn criterion_8() -> Outcome {
    let t = divergence_sandwich(6, &[o(0.5), o(2.0)], 10_000, SEED, 1e-9, EXEC);
    tallied(&[("divergence sandwich", t)])
}

fn criterion_9() -> Outcome {
    let mut identity_rhos = RHO_GRID.to_vec();
    identity_rhos.extend([0.25, 4.0]);
    let s = sum((3..=6).map(|n| e0_sandwich(n, &RHO_GRID, 1_000, SEED + n as u64, 1e-9, EXEC)));
    let a = sum((3..=6).map(|n| e0_attainment(n, &RHO_GRID, 1_000, SEED + n as u64, 1e-9, EXEC)));
    let i = sum((3..=6).map(|n| e0_identity(n, &identity_rhos, 1_000, SEED + n as u64, 1e-10, EXEC)));
    tallied(&[("sandwich", s), ("attainment", a), ("identity", i)])
}

fn criterion_10() -> Outcome {
    let ords = [o(0.5), o(1.0), o(2.0)];
    let t = sum((3..=6).map(|n| focusing_posteriors(n, &ords, 1_000, SEED + n as u64, 1e-12, EXEC)));
    tallied(&[("posterior entropies and uniform output", t)])
}

fn criterion_11() -> Outcome {
    let cfg = SuiteConfig { n: 5, samples: 20_000, seed: 1, ..Default::default() };
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let in_pool = |k: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .unwrap()
            .install(|| run_suite(&cfg).unwrap())
    };
    let first = run_suite(&cfg).unwrap();
    let second = run_suite(&cfg).unwrap();
    let one = in_pool(1);
    let many = in_pool(threads);
    let seq = run_suite(&SuiteConfig { exec: Exec::Sequential, ..cfg }).unwrap();
    let same = [&second, &one, &many, &seq].iter().all(|r| **r == first);
    Outcome {
        ok: same && first.passed(),
        detail: format!(
            "{} checks over {} families; repeat, 1-thread, {threads}-thread and sequential runs {}; {} violations",
            first.checks.iter().map(|c| c.tally.checked).sum::<u64>(),
            first.checks.len(),
            if same { "identical" } else { "DIFFER" },
            first.total_violations(),
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("norm sandwich at fixed entropy", criterion_1),
        ("tightness of the bounds", criterion_2),
        ("entropy sandwich with direction flip", criterion_3),
        ("brute-force region containment", criterion_4),
        ("inversion accuracy", criterion_5),
        ("alpha-log ratio inequality", criterion_6),
        ("transformed measures", criterion_7),
        ("Renyi divergence sandwich", criterion_8),
        ("E0 bounds", criterion_9),
        ("focusing channel posteriors", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {title} ({secs:.1} s): {}", i + 1, out.detail);
        if !out.ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
