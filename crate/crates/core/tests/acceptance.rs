//! Acceptance suite: one test per criterion, each printing a PASS or FAIL line.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use kacdt_core::bps::{
    coha_pbw_series, dt_hodge, dt_refined, free_coha_series, moduli_cohomology_indivisible,
    stack_series_deformed,
};
use kacdt_core::charser::{TatePoly, TateRational};
use kacdt_core::kac::{HuaKac, IntPoly, KacSource, OracleKac};
use kacdt_core::ncpot::{check_conifold, check_gkw, Potential};
use kacdt_core::quiver::{DimVector, Quiver};
use kacdt_core::{parse_rational_list, Rational};
use proptest::strategy::{Just, Strategy};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

/// Wall-clock budget for the uncached oracle suite.
const KAC_SUITE_BUDGET: Duration = Duration::from_secs(120);
/// Wall-clock budget for the boson–fermion comparison.
const BOSON_FERMION_BUDGET: Duration = Duration::from_secs(10);
/// Cases per randomized property.
const PROPERTY_CASES: u32 = 64;
/// Randomized potentials fed to the necklace check.
const NECKLACE_POTENTIALS: usize = 100;

fn report(criterion: &str, label: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {criterion}: {label}");
    } else {
        println!("FAIL criterion {criterion}: {label}");
        for f in failures {
            println!("    {f}");
        }
        panic!("criterion {criterion} failed: {}", failures.join("; "));
    }
}

fn mu(s: &str) -> Vec<Rational> {
    parse_rational_list(s).expect("valid rational list")
}

fn check<T: PartialEq + std::fmt::Display>(
    failures: &mut Vec<String>,
    what: String,
    got: T,
    want: T,
) {
    if got != want {
        failures.push(format!("{what}: got {got}, expected {want}"));
    }
}

#[test]
fn criterion_1_kac_oracle_suite() {
    let start = Instant::now();
    let oracle = OracleKac::default();
    let point = Quiver::point();
    let jordan = Quiver::jordan();
    let aff = Quiver::affine_a1();
    let cases: [(&str, &Quiver, &[u32], IntPoly); 8] = [
        ("point", &point, &[1], IntPoly::from_coeffs(&[1])),
        ("point", &point, &[2], IntPoly::zero()),
        ("jordan", &jordan, &[1], IntPoly::from_coeffs(&[0, 1])),
        ("jordan", &jordan, &[2], IntPoly::from_coeffs(&[0, 1])),
        ("affA1", &aff, &[1, 0], IntPoly::from_coeffs(&[1])),
        ("affA1", &aff, &[1, 1], IntPoly::from_coeffs(&[1, 1])),
        ("affA1", &aff, &[2, 1], IntPoly::from_coeffs(&[1])),
        ("affA1", &aff, &[2, 2], IntPoly::from_coeffs(&[1, 1])),
    ];
    let mut failures = Vec::new();
    for (name, q, d, want) in cases {
        match oracle.kac_polynomial(q, &dv(d)) {
            Ok(got) => check(&mut failures, format!("a({name}, {})", dv(d)), got, want),
            Err(e) => failures.push(format!("a({name}, {}): {e}", dv(d))),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > KAC_SUITE_BUDGET {
        failures.push(format!("took {elapsed:?}, budget {KAC_SUITE_BUDGET:?}"));
    }
    report(
        "1",
        &format!("Kac oracle suite, uncached, {elapsed:.2?}"),
        &failures,
    );
}

/// The BPS tables on the affine A_1 quiver: `t^-3 + t^-1` on the diagonal,
/// one class next to it (degree −1 undeformed, degree 0 deformed), zero
/// elsewhere.
fn expected_affine_table(d: &DimVector, deformed: bool) -> TatePoly {
    let (m, n) = (d[0] as i64, d[1] as i64);
    if m == n {
        TatePoly::from_ints(&[(-3, 1), (-1, 1)])
    } else if (m - n).abs() == 1 {
        TatePoly::from_ints(&[(if deformed { 0 } else { -1 }, 1)])
    } else {
        TatePoly::zero()
    }
}

#[test]
fn criterion_2_bps_tables() {
    let oracle = OracleKac::default();
    let aff = Quiver::affine_a1();
    let mut failures = Vec::new();
    for (m, deformed) in [("0,0", false), ("1,-1", true)] {
        let mu = mu(m);
        for d in DimVector::all_nonzero_up_to(2, 4) {
            let want = expected_affine_table(&d, deformed);
            let refined = match dt_refined(&oracle, &aff, &mu, &d) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("refined μ=({m}) d={d}: {e}"));
                    continue;
                }
            };
            check(
                &mut failures,
                format!("refined μ=({m}) d={d}"),
                refined.clone(),
                want,
            );
            match dt_hodge(&oracle, &aff, &mu, &d) {
                Ok(h) => check(
                    &mut failures,
                    format!("hodge character μ=({m}) d={d}"),
                    h.character(),
                    refined.clone(),
                ),
                Err(e) => failures.push(format!("hodge μ=({m}) d={d}: {e}")),
            }
            let pairing = d[0] as i64 - d[1] as i64;
            let even = deformed && pairing != 0;
            if !refined.has_parity(!even) {
                failures.push(format!("parity μ=({m}) d={d}: {refined}"));
            }
        }
    }
    report(
        "2",
        "affine A_1 BPS tables for μ=0 and μ=(1,-1), Σd ≤ 4, parity flip off the diagonal",
        &failures,
    );
}

/// `t^{n²} / ∏_{k≤n}(1 − t^{2k})`, the `x^n` coefficient of `∏_{i≥0}(1 + t^{1+2i} x)`.
fn fermionic_coefficient(n: u32) -> TateRational {
    (1..=n as i64).fold(TateRational::t_pow((n * n) as i64), |acc, k| {
        acc.mul(&TateRational::geometric(2 * k))
    })
}

/// `1 / ∏_{k≤n}(1 − t^{2k})`, the `x^n` coefficient of `∏_{i≥0}(1 − t^{2i} x)^{-1}`.
fn bosonic_coefficient(n: u32) -> TateRational {
    (1..=n as i64).fold(TateRational::one(), |acc, k| {
        acc.mul(&TateRational::geometric(2 * k))
    })
}

#[test]
fn criterion_3_boson_fermion_pair() {
    const CUTOFF: u32 = 6;
    let start = Instant::now();
    let oracle = OracleKac::default();
    let point = Quiver::point();
    let mut failures = Vec::new();
    type Case = (&'static str, Quiver, fn(u32) -> TateRational);
    let cases: [Case; 2] = [
        ("1", Quiver::point(), fermionic_coefficient),
        ("0", Quiver::jordan(), bosonic_coefficient),
    ];
    for (m, free_quiver, closed_form) in cases {
        let coha = match coha_pbw_series(&oracle, &point, &mu(m), CUTOFF) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("coha μ={m}: {e}"));
                continue;
            }
        };
        let free = free_coha_series(&free_quiver, CUTOFF);
        for n in 1..=CUTOFF {
            let d = dv(&[n]);
            check(
                &mut failures,
                format!("coha vs free μ={m} x^{n}"),
                coha.coefficient(&d),
                free.coefficient(&d),
            );
            check(
                &mut failures,
                format!("coha vs product μ={m} x^{n}"),
                coha.coefficient(&d),
                closed_form(n),
            );
        }
    }
    let elapsed = start.elapsed();
    if elapsed > BOSON_FERMION_BUDGET {
        failures.push(format!("took {elapsed:?}, budget {BOSON_FERMION_BUDGET:?}"));
    }
    report(
        "3",
        &format!("boson-fermion pair to x^{CUTOFF}, {elapsed:.2?}"),
        &failures,
    );
}

#[test]
fn criterion_4a_jordan_stack_coefficient() {
    let oracle = OracleKac::default();
    let mut failures = Vec::new();
    match stack_series_deformed(&oracle, &Quiver::jordan(), &mu("0"), 1) {
        Ok(s) => check(
            &mut failures,
            "x^1".into(),
            s.coefficient(&dv(&[1])),
            TateRational::geometric(-2),
        ),
        Err(e) => failures.push(e.to_string()),
    }
    report(
        "4(a)",
        "Jordan quiver, μ=0: stack coefficient of x^1 is 1/(1 - t^-2)",
        &failures,
    );
}

#[test]
fn criterion_4b_point_stack_series() {
    let oracle = OracleKac::default();
    let mut failures = Vec::new();
    match stack_series_deformed(&oracle, &Quiver::point(), &mu("0"), 4) {
        Ok(s) => {
            let mut want = TateRational::one();
            for n in 1..=4u32 {
                want = want.mul(&TateRational::geometric(-2 * n as i64));
                check(
                    &mut failures,
                    format!("x^{n}"),
                    s.coefficient(&dv(&[n])),
                    want.clone(),
                );
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    report(
        "4(b)",
        "point quiver, μ=0: x^n coefficient is ∏(1 - t^-2k)^-1 for n ≤ 4",
        &failures,
    );
}

#[test]
fn criterion_4c_affine_stack_support() {
    // (4,4) has total 8, so the series is taken to total degree 8.
    const CUTOFF: u32 = 8;
    let kac = HuaKac::new();
    let mut failures = Vec::new();
    match stack_series_deformed(&kac, &Quiver::affine_a1(), &mu("1,-1"), CUTOFF) {
        Ok(s) => {
            let got: Vec<String> = s.support().iter().map(|d| d.to_string()).collect();
            let want: Vec<String> = (1..=4).map(|n| dv(&[n, n]).to_string()).collect();
            check(
                &mut failures,
                "support".into(),
                got.join(" "),
                want.join(" "),
            );
        }
        Err(e) => failures.push(e.to_string()),
    }
    report(
        "4(c)",
        "affine A_1, μ=(1,-1): stack support is {(n,n) : n ≤ 4}",
        &failures,
    );
}

#[test]
fn criterion_5_indivisible_moduli() {
    let oracle = OracleKac::default();
    let mut failures = Vec::new();
    let cases = [
        (Quiver::affine_a1(), "1,-1", dv(&[1, 1]), "{L^1, L^2}"),
        (Quiver::point(), "0", dv(&[1]), "{L^0}"),
    ];
    for (q, m, d, want) in cases {
        match moduli_cohomology_indivisible(&oracle, &q, &mu(m), &d) {
            Ok(h) => check(
                &mut failures,
                format!("μ=({m}) d={d}"),
                h.to_string(),
                want.to_string(),
            ),
            Err(e) => failures.push(format!("μ=({m}) d={d}: {e}")),
        }
    }
    report("5", "indivisible moduli cohomology", &failures);
}

/// Random potentials on quivers whose vertices all carry cycles.
fn necklace_quivers() -> Vec<Arc<Quiver>> {
    vec![
        Arc::new(Quiver::jordan()),
        Arc::new(Quiver::loops(2)),
        Arc::new(Quiver::affine_a1().triple().expect("tripled quiver")),
        Arc::new(Quiver::jordan().triple().expect("tripled quiver")),
    ]
}

fn random_closed_word(rng: &mut ChaCha8Rng, q: &Quiver) -> Option<Vec<usize>> {
    let start = rng.gen_range(0..q.arrow_count());
    let len = rng.gen_range(0..5);
    let choices: Vec<usize> = (0..len).map(|_| rng.gen_range(0..8)).collect();
    let word = walk(q, start, &choices);
    is_closed_walk(q, &word).then_some(word)
}

#[test]
fn criterion_6_symbolic_suite() {
    let mut failures = Vec::new();
    let gkw_cases = [
        ("point", Quiver::point(), "0"),
        ("point", Quiver::point(), "1"),
        ("jordan", Quiver::jordan(), "0"),
        ("jordan", Quiver::jordan(), "1"),
        ("affA1", Quiver::affine_a1(), "0,0"),
        ("affA1", Quiver::affine_a1(), "1,-1"),
    ];
    for (name, q, m) in &gkw_cases {
        match check_gkw(q, &mu(m)) {
            Ok(r) if r.passes => {}
            Ok(r) => failures.push(format!(
                "check-gkw {name} μ=({m}): {} mismatches",
                r.mismatches.len()
            )),
            Err(e) => failures.push(format!("check-gkw {name} μ=({m}): {e}")),
        }
    }
    match check_conifold() {
        Ok(r) if r.passes => {}
        Ok(r) => failures.push(format!(
            "check-conifold: residual {} (matches after a ↦ -a: {})",
            r.residual, r.matches_after_negating_a
        )),
        Err(e) => failures.push(format!("check-conifold: {e}")),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x6e65_636b);
    let quivers = necklace_quivers();
    let mut tested = 0;
    while tested < NECKLACE_POTENTIALS {
        let q = &quivers[tested % quivers.len()];
        let mut words = Vec::new();
        for _ in 0..rng.gen_range(1..5) {
            if let Some(w) = random_closed_word(&mut rng, q) {
                words.push((w, rng.gen_range(-3i64..=3)));
            }
        }
        let w: Potential = random_potential(q, &words);
        if w.is_zero() {
            continue;
        }
        if !necklace_is_zero(&w) {
            failures.push(format!("necklace check nonzero for {w}"));
        }
        tested += 1;
    }
    report(
        "6",
        "check-gkw on 3 quivers, check-conifold, necklace on 100 random potentials",
        &failures,
    );
}

fn run_property<S, F>(name: &str, strategy: S, test: F, failures: &mut Vec<String>)
where
    S: proptest::strategy::Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
{
    let config = Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    match runner.run(&strategy, test) {
        Ok(()) => println!("    ok {name} ({PROPERTY_CASES} cases)"),
        Err(e) => failures.push(format!("{name}: {e}")),
    }
}

#[test]
fn criterion_7_property_suites() {
    let mut failures = Vec::new();
    run_property(
        "super_exp/super_log roundtrip",
        series(2, 3),
        |f| check_exp_log_roundtrip(&f),
        &mut failures,
    );
    run_property(
        "exponential additivity",
        (series(2, 3), series(2, 3)),
        |(f, g)| check_exp_additive(&f, &g),
        &mut failures,
    );
    run_property(
        "product vs ψ",
        generators(2, 4),
        |gens| check_product_vs_psi(2, 4, &gens),
        &mut failures,
    );
    run_property(
        "orbit-stabilizer and total count",
        orbit_case(),
        |(q, d, p)| check_orbit_stabilizer(&q, &d, p),
        &mut failures,
    );
    run_property(
        "Kac orientation independence",
        kac_case(3, 3, 0)
            .prop_filter("has an arrow", |(q, _)| q.arrow_count() > 0)
            .prop_flat_map(|(q, d)| {
                let n = q.arrow_count();
                (Just(q), Just(d), 0..n)
            }),
        |(q, d, a)| check_orientation_independence(&q, &d, a),
        &mut failures,
    );
    run_property(
        "Kac coefficient non-negativity",
        kac_case(3, 3, 0),
        |(q, d)| check_kac_nonnegative(&q, &d),
        &mut failures,
    );
    run_property(
        "interpolation stability",
        kac_case(3, 3, 1),
        |(q, d)| check_interpolation_stable(&q, &d),
        &mut failures,
    );
    report("7", "randomized property suites", &failures);
}
