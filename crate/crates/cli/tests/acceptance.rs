//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//!
//! Every comparison is exact; the only pinned numbers are case counts and
//! search budgets below.

use std::cmp::Ordering;
use std::process::Command;
use std::time::Instant;

use shapiro_core::harness::{
    coverage_report, fixtures, random_polynomial, run_fuzz, FuzzConfig, Search, Strategy,
};
use shapiro_core::poly::{int, rat};
use shapiro_core::realroots::{compare_roots, isolate_real_roots, IsolatedRoot};
use shapiro_core::rootlocus::{
    breakaway_points, gain_at, gain_derivative_numerator, sample_between, AxisAnalysis, Extremum,
    Gain, Parity, RationalFunctionOnAxis,
};
use shapiro_core::shapiro::{
    actual_verdict, classify, delta_sign_shortcut, predict_verdict, AxisPoint, ClassLabel,
    ShapiroInstance, Verdict,
};
use shapiro_core::{Polynomial, Rational};

const UNIFORM_CASES: usize = 2000;
const UNIFORM_DEGREES: (usize, usize) = (2, 10);
const UNIFORM_BOUND: u32 = 20;
const POSITIVE_CASES: usize = 500;
const POSITIVE_DEGREES: (usize, usize) = (4, 8);
const POSITIVE_BOUND: u32 = 10;
const INVARIANT_FUZZ_CASES: usize = 200;
const SHORTCUT_POINTS_PER_SEGMENT: usize = 10;
const DETERMINISM_CASES: &str = "500";
const COVERAGE_BUDGET: usize = 250;
const COVERAGE_SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_i64(c)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theorem_agreement() -> Outcome {
    let (mut total, mut zero) = (0, 0);
    for (strategy, cases, degree_range, coeff_bound) in [
        (
            Strategy::Uniform,
            UNIFORM_CASES,
            UNIFORM_DEGREES,
            UNIFORM_BOUND,
        ),
        (
            Strategy::PositiveOnly,
            POSITIVE_CASES,
            POSITIVE_DEGREES,
            POSITIVE_BOUND,
        ),
    ] {
        let s = run_fuzz(&FuzzConfig {
            seed: 2024,
            cases,
            degree_range,
            coeff_bound,
            strategy,
        })
        .map_err(|e| e.to_string())?;
        check(s.disagreements.is_empty(), || {
            format!("{strategy:?}: disagreements {:?}", s.disagreements)
        })?;
        check(s.agreements + s.delta_zero_count == cases, || {
            format!("{strategy:?}: summary {s:?}")
        })?;
        total += s.agreements;
        zero += s.delta_zero_count;
    }
    Ok(format!(
        "{total} of {} cases agree, {zero} with Δ ≡ 0 skipped, 0 disagreements",
        UNIFORM_CASES + POSITIVE_CASES
    ))
}

fn fixture_classifications() -> Outcome {
    // Δ expanded by hand from (n-1)(p')^2 - n p p''.
    let expected = [
        (
            "x^2-1",
            p(&[-1, 0, 1]),
            ClassLabel::L1,
            Verdict::Holds,
            None,
            None,
        ),
        (
            "x^2+1",
            p(&[1, 0, 1]),
            ClassLabel::G11,
            Verdict::Fails,
            Some(p(&[-4])),
            None,
        ),
        (
            "(x^2+1)^2",
            p(&[1, 0, 2, 0, 1]),
            ClassLabel::G11,
            Verdict::Fails,
            Some(p(&[-16, 0, -32, 0, -16])),
            None,
        ),
        (
            "x^4+1",
            p(&[1, 0, 0, 0, 1]),
            ClassLabel::L22,
            Verdict::Holds,
            Some(p(&[0, 0, -48])),
            None,
        ),
        (
            "x^4-2x^2+2",
            p(&[2, 0, -2, 0, 1]),
            ClassLabel::L21,
            Verdict::Holds,
            None,
            Some(4),
        ),
    ];
    for (name, poly, label, verdict, delta, nr_delta) in &expected {
        let inst = ShapiroInstance::build(poly).map_err(|e| e.to_string())?;
        let got = classify(&inst).label;
        let actual = actual_verdict(&inst).map_err(|e| e.to_string())?;
        check(
            got == *label && predict_verdict(got) == *verdict && actual.verdict == *verdict,
            || {
                format!(
                    "{name}: {got} {:?} {:?}",
                    predict_verdict(got),
                    actual.verdict
                )
            },
        )?;
        if let Some(d) = delta {
            check(inst.delta == *d, || format!("{name}: Δ = {}", inst.delta))?;
        }
        if let Some(k) = nr_delta {
            check(actual.nr_delta.distinct == *k, || {
                format!("{name}: #Δ = {:?}", actual.nr_delta)
            })?;
        }
    }
    for f in fixtures() {
        let got =
            classify(&ShapiroInstance::build(&f.polynomial()).map_err(|e| e.to_string())?).label;
        check(got == f.label, || {
            format!("fixture file {}: {got} != {}", f.name, f.label)
        })?;
    }
    Ok(format!("{} fixtures", expected.len()))
}

fn worked_examples() -> Outcome {
    // 1/(x^4 - 1) and 1/(x^3 - 1)
    for (den, crit, mult, extremum) in [
        (p(&[-1, 0, 0, 0, 1]), p(&[0, 0, 0, -4]), 3, Extremum::Max),
        (p(&[-1, 0, 0, 1]), p(&[0, 0, -3]), 2, Extremum::None),
    ] {
        let rf = RationalFunctionOnAxis::normalize(&Polynomial::one(), &den)
            .map_err(|e| e.to_string())?;
        let n = gain_derivative_numerator(&rf);
        check(n == crit, || format!("numerator {n}"))?;
        let roots = isolate_real_roots(&n).map_err(|e| e.to_string())?;
        check(roots.len() == 1 && roots[0].multiplicity() == mult, || {
            format!("multiplicity {roots:?}")
        })?;
        let b = breakaway_points(&rf);
        check(
            b.len() == 1 && b[0].location.cmp_rational(&int(0)) == Ordering::Equal,
            || format!("{b:?}"),
        )?;
        check(
            b[0].extremum == extremum && b[0].standard == (extremum != Extremum::None),
            || format!("classified {:?}", b[0].extremum),
        )?;
    }
    Ok(
        "x^4-1: -4x^3, multiplicity 3, standard MAX; x^3-1: -3x^2, multiplicity 2, non-standard"
            .into(),
    )
}

fn finite(g: Gain) -> Result<Rational, String> {
    match g {
        Gain::Finite(k) => Ok(k),
        Gain::Infinite => Err("unexpected zero of PP at a sample point".into()),
    }
}

/// Distinct roots of `q` in the closed interval `[a, b]`.
fn roots_on_closed(q: &Polynomial, a: &Rational, b: &Rational) -> usize {
    isolate_real_roots(q)
        .expect("nonzero")
        .iter()
        .filter(|r| r.cmp_rational(a) != Ordering::Less && r.cmp_rational(b) != Ordering::Greater)
        .count()
}

/// Rationals `l2 < l1 <= b <= r1 < r2` around a breakaway `b` such that
/// `[l2, r2]` holds no other critical point and no zero or pole.
fn bracket(b: &IsolatedRoot, crit: &Polynomial, events: &Polynomial) -> [Rational; 4] {
    let mut r = b.clone();
    let mut w = int(1);
    loop {
        if !r.is_exact() {
            w = r.width();
        }
        let (l2, r2) = (r.lo() - &w, r.hi() + &w);
        if roots_on_closed(crit, &l2, &r2) == 1 && roots_on_closed(events, &l2, &r2) == 0 {
            return [l2, r.lo().clone(), r.hi().clone(), r2];
        }
        if r.is_exact() {
            w /= int(2);
        } else {
            r.bisect();
        }
    }
}

fn invariants_for(poly: &Polynomial) -> Result<(), String> {
    let inst = ShapiroInstance::build(poly).map_err(|e| e.to_string())?;
    let a = AxisAnalysis::new(inst.pp.clone());

    // parity and sign of PP agree on every segment
    for s in &a.segments {
        let want = if s.parity == Parity::Even {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        for x in s.sample_points(3) {
            check(inst.pp.sign_at(&x) == want, || {
                format!("{poly}: sign at {x} vs {:?}", s.parity)
            })?;
        }
    }

    // strict monotonicity of K between consecutive events/breakaways
    for (i, s) in a.segments.iter().enumerate() {
        let mut bounds = vec![s.left.clone()];
        bounds.extend(a.breakaways_in(i).map(|b| Some(b.location.clone())));
        bounds.push(s.right.clone());
        for w in bounds.windows(2) {
            let ks = sample_between(w[0].as_ref(), w[1].as_ref(), 5)
                .iter()
                .map(|x| finite(gain_at(&inst.pp, x)))
                .collect::<Result<Vec<_>, _>>()?;
            let dirs: Vec<Ordering> = ks.windows(2).map(|k| k[1].cmp(&k[0])).collect();
            check(
                dirs.iter().all(|&d| d != Ordering::Equal && d == dirs[0]),
                || format!("{poly}: gains {ks:?}"),
            )?;
        }
    }

    // standard breakaway <=> gain extremum, checked by gain values around b
    let crit = gain_derivative_numerator(&inst.pp);
    let events = inst.pp.numerator() * inst.pp.denominator();
    let crit_roots = isolate_real_roots(&crit).map_err(|e| e.to_string())?;
    for b in &a.breakaways {
        let [l2, l1, r1, r2] = bracket(&b.location, &crit, &events);
        let k = |x: &Rational| finite(gain_at(&inst.pp, x));
        let (up_left, up_right) = (k(&l1)? > k(&l2)?, k(&r2)? > k(&r1)?);
        let observed = match (up_left, up_right) {
            (true, false) => Extremum::Max,
            (false, true) => Extremum::Min,
            _ => Extremum::None,
        };
        check(
            observed == b.extremum && b.standard == (observed != Extremum::None),
            || {
                format!(
                    "{poly}: breakaway {:?} classified {:?}, gains say {observed:?}",
                    b.location, b.extremum
                )
            },
        )?;
        let m = crit_roots
            .iter()
            .find(|c| compare_roots(c, &b.location) == Ordering::Equal)
            .map(|c| c.multiplicity())
            .ok_or("breakaway is not a critical root")?;
        check(b.standard == (m % 2 == 1), || {
            format!("{poly}: multiplicity {m} vs standard {}", b.standard)
        })?;
    }

    // Δ drops two degrees; leading ratio is n/(n-1)
    let n = inst.n;
    check(inst.delta.coeff(2 * n - 2) == int(0), || {
        format!("{poly}: x^(2n-2) coefficient of Δ")
    })?;
    let ratio = inst.p1.pow(2).leading_coefficient().unwrap()
        / (&inst.p2 * poly).leading_coefficient().unwrap();
    check(ratio == rat(n as i64, n as i64 - 1), || {
        format!("{poly}: leading ratio {ratio}")
    })?;

    // scaling covariance
    let base = classify(&inst).label;
    for lambda in [int(2), int(-3), rat(1, 5)] {
        let scaled = ShapiroInstance::build(&poly.scale(&lambda)).map_err(|e| e.to_string())?;
        check(classify(&scaled).label == base, || {
            format!("{poly}: label changes under scaling by {lambda}")
        })?;
        let (v0, v1) = (
            actual_verdict(&inst).ok().map(|v| v.verdict),
            actual_verdict(&scaled).ok().map(|v| v.verdict),
        );
        check(v0 == v1, || {
            format!("{poly}: verdict changes under scaling by {lambda}")
        })?;
    }
    Ok(())
}

fn structural_invariants() -> Outcome {
    let mut polys: Vec<Polynomial> = fixtures().iter().map(|f| f.polynomial()).collect();
    let config = FuzzConfig {
        seed: 99,
        cases: INVARIANT_FUZZ_CASES,
        degree_range: (2, 8),
        coeff_bound: 10,
        strategy: Strategy::Uniform,
    };
    let positive = FuzzConfig {
        strategy: Strategy::PositiveOnly,
        ..config.clone()
    };
    // half uniform, half positive-only so the Γ branches are exercised
    polys.extend((0..INVARIANT_FUZZ_CASES as u64 / 2).map(|i| random_polynomial(&config, i)));
    polys.extend((0..INVARIANT_FUZZ_CASES as u64 / 2).map(|i| random_polynomial(&positive, i)));
    for q in &polys {
        invariants_for(q)?;
    }
    Ok(format!("{} polynomials", polys.len()))
}

fn shortcut_identity() -> Outcome {
    let mut points = 0;
    for f in fixtures() {
        let inst = ShapiroInstance::build(&f.polynomial()).map_err(|e| e.to_string())?;
        let a = AxisAnalysis::new(inst.pp.clone());
        for s in a.segments.iter().filter(|s| s.parity == Parity::Even) {
            for x in s.sample_points(SHORTCUT_POINTS_PER_SEGMENT) {
                let direct = finite(gain_at(&inst.pp, &x))?.cmp(&inst.k0);
                let by_delta = inst.delta.sign_at(&x);
                let shortcut = delta_sign_shortcut(&inst, AxisPoint::Rational(&x))
                    .map_err(|e| e.to_string())?;
                check(direct == by_delta && by_delta == shortcut, || {
                    format!("{}: at {x} K-K0 {direct:?}, Δ {by_delta:?}", f.name)
                })?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} points"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_shapiro"))
            .args(["fuzz", "--seed", "7", "--cases", DETERMINISM_CASES])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check(a.status.success() && b.status.success(), || {
        format!("exit {:?} {:?}", a.status, b.status)
    })?;
    check(a.stdout == b.stdout && !a.stdout.is_empty(), || {
        "outputs differ".into()
    })?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn coverage() -> Outcome {
    let report = coverage_report(COVERAGE_BUDGET, COVERAGE_SEED);
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for e in &report {
        match &e.search {
            Search::Found {
                polynomial, source, ..
            } => {
                // a found example must really classify to its label
                let q: Polynomial = polynomial
                    .parse()
                    .map_err(|e: shapiro_core::Error| e.to_string())?;
                let got = classify(&ShapiroInstance::build(&q).map_err(|e| e.to_string())?).label;
                check(got == e.label, || {
                    format!("{}: example {polynomial} classifies as {got}", e.label)
                })?;
                if [
                    ClassLabel::L1,
                    ClassLabel::L21,
                    ClassLabel::L22,
                    ClassLabel::G11,
                ]
                .contains(&e.label)
                {
                    check(source == "fixture", || {
                        format!("{} not from fixtures", e.label)
                    })?;
                }
                found.push(e.label.code());
            }
            Search::NotFound { .. } => missing.push(e.label.code()),
        }
    }
    check(report.len() == 13, || "13 leaves".into())?;
    for required in ["L1", "L21", "L22", "G11"] {
        check(found.contains(&required), || {
            format!("{required} not found")
        })?;
    }
    Ok(format!(
        "budget {COVERAGE_BUDGET}: found {} ; NOT_FOUND {}",
        found.join(" "),
        missing.join(" ")
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 theorem agreement", theorem_agreement),
        ("2 fixture classifications", fixture_classifications),
        ("3 worked breakaway examples", worked_examples),
        ("4 structural invariants", structural_invariants),
        ("5 shortcut identity", shortcut_identity),
        ("6 determinism", determinism),
        ("7 class coverage", coverage),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let result = run();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
