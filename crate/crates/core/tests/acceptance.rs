//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use trace_moments::curves::{AbelianSpec, ShapeCensus};
use trace_moments::finitefield::FieldCtx;
use trace_moments::oracles::level1_trace;
use trace_moments::quadforms::hurwitz_h_int;
use trace_moments::traceformula::{t_trace, TraceParams};
use trace_moments::verify::{
    verify_integrality, verify_lemmas, verify_main, verify_prob_class, Check, MainFilter,
    PROB_FIELDS, PROB_MAX_M1,
};
use trace_moments::{ExactRat, Scalar};

fn workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .clamp(2, 8)
}

fn census(q: u64) -> Arc<ShapeCensus> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Arc<ShapeCensus>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&q) {
        return c.clone();
    }
    let ctx = FieldCtx::for_order(q).unwrap();
    let c = Arc::new(ShapeCensus::compute(&ctx, workers()).unwrap());
    cache.lock().unwrap().insert(q, c.clone());
    c
}

fn report(criterion: u32, label: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {criterion} ({label}): {status}");
    for f in failures.iter().take(20) {
        println!("  {f}");
    }
    assert!(
        failures.is_empty(),
        "criterion {criterion} failed with {} mismatches",
        failures.len()
    );
}

fn failed_checks(checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} {}: {} != {}", c.name, c.params, c.lhs, c.rhs))
        .collect()
}

/// Sum over every reduced form of discriminant `delta`, primitive or not,
/// weighting `(a, 0, a)` by 1/2 and `(a, a, a)` by 1/3.
fn hurwitz_by_forms(delta: i64) -> ExactRat {
    let mut total = ExactRat::from_int(0);
    let mut a = 1i64;
    while 3 * a * a <= -delta {
        for b in -a + 1..=a {
            let num = b * b - delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            total += if b == 0 && a == c {
                ExactRat::ratio(1, 2)
            } else if b == a && a == c {
                ExactRat::ratio(1, 3)
            } else {
                ExactRat::from_int(1)
            };
        }
        a += 1;
    }
    total
}

#[test]
fn criterion_1_hurwitz_table() {
    let table: [(i64, i64, i64); 11] = [
        (3, 1, 3),
        (4, 1, 2),
        (7, 1, 1),
        (8, 1, 1),
        (11, 1, 1),
        (12, 4, 3),
        (15, 2, 1),
        (16, 3, 2),
        (19, 1, 1),
        (20, 2, 1),
        (23, 3, 1),
    ];
    let mut failures = Vec::new();
    for (n, num, den) in table {
        let computed: ExactRat = hurwitz_h_int(-n);
        let oracle = hurwitz_by_forms(-n);
        let listed = ExactRat::ratio(num, den);
        if computed != oracle || computed != listed {
            failures.push(format!(
                "H(-{n}) = {computed}, forms give {oracle}, table {listed}"
            ));
        }
    }
    report(1, "Hurwitz class numbers", &failures);
}

#[test]
fn criterion_2_level_one_traces() {
    let mut failures = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        for k in [2u32, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 26] {
            let params = TraceParams::new(1, 1, q, 1, k, 0).unwrap();
            let trace: ExactRat = t_trace(&params).unwrap();
            let oracle = ExactRat::from_integer(level1_trace(k, q as usize).unwrap());
            if trace != oracle {
                failures.push(format!("q={q} k={k}: trace {trace}, q-expansion {oracle}"));
            }
        }
    }
    report(2, "level-one traces against q-expansions", &failures);
}

#[test]
fn criterion_3_mass_formula() {
    let mut failures = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let c = census(q);
        let mass = c.report(&AbelianSpec::trivial()).total_mass;
        if mass != ExactRat::from_integer(BigInt::from(q)) {
            failures.push(format!("q={q}: total mass {mass}"));
        }
        if c.nonsingular_count() != q.pow(4) * (q - 1) {
            failures.push(format!(
                "q={q}: {} nonsingular tuples",
                c.nonsingular_count()
            ));
        }
    }
    report(3, "mass formula", &failures);
}

#[test]
fn criterion_4_probability_theorem() {
    let mut failures = Vec::new();
    for q in PROB_FIELDS {
        let checks = verify_prob_class(&census(q), PROB_MAX_M1).unwrap();
        failures.extend(failed_checks(&checks));
    }
    report(4, "class probabilities from class-number sums", &failures);
}

#[test]
fn criterion_5_main_theorem() {
    let filter = MainFilter {
        workers: workers(),
        ..MainFilter::default()
    };
    let checks = verify_main(&filter).unwrap();
    assert!(checks.len() > 100);
    let vanishing = checks
        .iter()
        .filter(|c| c.name == "moment_vanishes")
        .count();
    assert!(vanishing > 0);
    report(
        5,
        "moments against the closed form",
        &failed_checks(&checks),
    );
}

#[test]
fn criterion_6_lemma_suite() {
    let checks = verify_lemmas().unwrap();
    for c in checks.iter().filter(|c| c.params.get("cases").is_some()) {
        println!("  {} cases of {}", c.params["cases"], c.name);
    }
    report(6, "lemma suite", &failed_checks(&checks));
}

#[test]
fn criterion_7_integrality() {
    let checks = verify_integrality().unwrap();
    report(7, "integral traces", &failed_checks(&checks));
}

#[test]
fn criterion_8_parallel_determinism() {
    let mut failures = Vec::new();
    let specs = [
        AbelianSpec::trivial(),
        AbelianSpec::new(2, 1).unwrap(),
        AbelianSpec::new(4, 2).unwrap(),
    ];
    for q in [5u64, 7] {
        let ctx = FieldCtx::for_order(q).unwrap();
        let serial = ShapeCensus::compute(&ctx, 1).unwrap();
        let parallel = ShapeCensus::compute(&ctx, workers().max(4)).unwrap();
        for spec in &specs {
            let a = serial.report(spec).to_json();
            let b = parallel.report(spec).to_json();
            if a != b {
                failures.push(format!("q={q} A={spec:?}: outputs differ"));
            }
        }
    }
    report(8, "census output independent of worker count", &failures);
}
