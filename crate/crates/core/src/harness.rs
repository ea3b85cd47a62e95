//! Seeded polynomial generation, bulk cross-checking and class coverage.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::shapiro::{
    actual_verdict, classify, predict_verdict, ClassLabel, ShapiroInstance, Verdict,
};

pub const MAX_DEGREE: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    /// Integer coefficients drawn uniformly from `[-bound, bound]`.
    Uniform,
    /// Products of quadratics with negative discriminant; never has a real zero.
    PositiveOnly,
    /// Generation tuned toward one leaf: Γ leaves draw from `PositiveOnly`,
    /// Λ leaves from `Uniform`.
    Targeted(ClassLabel),
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    /// `uniform`, `positive-only`, or `targeted:<label>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('_', "-");
        match t.as_str() {
            "uniform" => Ok(Strategy::Uniform),
            "positive-only" | "positive" => Ok(Strategy::PositiveOnly),
            _ => match t.strip_prefix("targeted:") {
                Some(label) => Ok(Strategy::Targeted(label.parse()?)),
                None => Err(Error::Config(format!("unknown strategy `{s}`"))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub cases: usize,
    /// Inclusive; only even degrees inside it are drawn.
    pub degree_range: (usize, usize),
    pub coeff_bound: u32,
    pub strategy: Strategy,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            cases: 100,
            degree_range: (2, 8),
            coeff_bound: 10,
            strategy: Strategy::Uniform,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.degree_range;
        if lo < 2 || hi > MAX_DEGREE || lo > hi {
            return Err(Error::Config(format!(
                "degree range {lo}:{hi} must lie within 2:{MAX_DEGREE} with lo <= hi"
            )));
        }
        if lo % 2 == 1 && lo == hi {
            return Err(Error::Config(format!(
                "degree range {lo}:{hi} contains no even degree"
            )));
        }
        if self.coeff_bound == 0 {
            return Err(Error::Config("coefficient bound must be positive".into()));
        }
        Ok(())
    }

    fn even_degrees(&self) -> Vec<usize> {
        let (lo, hi) = self.degree_range;
        (lo..=hi).filter(|d| d % 2 == 0).collect()
    }
}

fn uses_positive_only(strategy: Strategy) -> bool {
    match strategy {
        Strategy::Uniform => false,
        Strategy::PositiveOnly => true,
        Strategy::Targeted(label) => !label.code().starts_with('L'),
    }
}

/// The `case_index`-th polynomial of `config`'s sequence.
///
/// Each case reads its own ChaCha stream, so cases can be generated in any
/// order or in parallel with identical results.
pub fn random_polynomial(config: &FuzzConfig, case_index: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(case_index);
    let degrees = config.even_degrees();
    let n = degrees[rng.gen_range(0..degrees.len())];
    let b = config.coeff_bound as i64;
    if uses_positive_only(config.strategy) {
        (0..n / 2).fold(Polynomial::one(), |acc, _| {
            &acc * &irreducible_quadratic(&mut rng, b)
        })
    } else {
        let mut coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
        let lead = loop {
            let a = rng.gen_range(-b..=b);
            if a != 0 {
                break a;
            }
        };
        coeffs.push(lead);
        Polynomial::from_i64(&coeffs)
    }
}

/// `x^2 + bx + c` with `b^2 < 4c`, `|b| <= bound`, `1 <= c <= bound`.
fn irreducible_quadratic(rng: &mut ChaCha8Rng, bound: i64) -> Polynomial {
    let c = rng.gen_range(1..=bound);
    let mut reach = 0;
    while (reach + 1) * (reach + 1) < 4 * c && reach < bound {
        reach += 1;
    }
    let b = rng.gen_range(-reach..=reach);
    Polynomial::from_i64(&[c, b, 1])
}

/// Result of running one polynomial through classifier and direct count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub label: ClassLabel,
    pub predicted: Verdict,
    /// `None` when `Δ` vanishes identically.
    pub actual: Option<Verdict>,
}

pub fn check_polynomial(p: &Polynomial) -> Result<CaseResult> {
    let inst = ShapiroInstance::build(p)?;
    let label = classify(&inst).label;
    let actual = match actual_verdict(&inst) {
        Ok(a) => Some(a.verdict),
        Err(Error::DeltaIdenticallyZero) => None,
        Err(e) => return Err(e),
    };
    Ok(CaseResult {
        label,
        predicted: predict_verdict(label),
        actual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub case_index: u64,
    pub polynomial: String,
    pub label: ClassLabel,
    pub predicted: Verdict,
    pub actual: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub total: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    pub class_histogram: BTreeMap<ClassLabel, usize>,
    pub delta_zero_count: usize,
}

fn run_case(config: &FuzzConfig, i: u64) -> (Polynomial, CaseResult) {
    let p = random_polynomial(config, i);
    // generated degrees are even and >= 2, so this cannot fail
    let r = check_polynomial(&p).expect("generated polynomial is valid");
    (p, r)
}

pub fn run_fuzz(config: &FuzzConfig) -> Result<FuzzSummary> {
    config.validate()?;
    let indices = 0..config.cases as u64;
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        indices
            .into_par_iter()
            .map(|i| run_case(config, i))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = indices.map(|i| run_case(config, i)).collect();

    let mut summary = FuzzSummary {
        total: results.len(),
        ..FuzzSummary::default()
    };
    for (i, (p, r)) in results.into_iter().enumerate() {
        *summary.class_histogram.entry(r.label).or_default() += 1;
        match r.actual {
            None => summary.delta_zero_count += 1,
            Some(a) if a == r.predicted => summary.agreements += 1,
            Some(a) => summary.disagreements.push(Disagreement {
                case_index: i as u64,
                polynomial: p.to_string(),
                label: r.label,
                predicted: r.predicted,
                actual: a,
            }),
        }
    }
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub label: ClassLabel,
}

impl Fixture {
    pub fn polynomial(&self) -> Polynomial {
        self.text.parse().expect("fixture text parses")
    }
}

const FIXTURE_FILE: &str = include_str!("../data/fixtures.txt");

/// Hand-checked polynomials with known labels, in file order.
pub fn fixtures() -> Vec<Fixture> {
    FIXTURE_FILE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split(';').map(str::trim);
            let mut next = || parts.next().expect("fixture line has three fields");
            let (name, text, label) = (next(), next(), next());
            Fixture {
                name,
                text,
                label: label.parse().expect("fixture label is valid"),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Search {
    Found {
        polynomial: String,
        /// `fixture` or the generator configuration that produced it.
        source: String,
        attempts: usize,
    },
    NotFound {
        attempts: usize,
    },
}

/// Search stages for a label: degree and coefficient-bound escalation.
fn stages(label: ClassLabel, seed: u64) -> Vec<FuzzConfig> {
    let ladder = [
        ((2, 4), 3),
        ((4, 6), 5),
        ((4, 8), 8),
        ((6, 10), 12),
        ((8, 12), 20),
    ];
    ladder
        .iter()
        .enumerate()
        .map(|(k, &(degree_range, coeff_bound))| FuzzConfig {
            seed: seed.wrapping_add(k as u64),
            cases: 0,
            degree_range,
            coeff_bound,
            strategy: Strategy::Targeted(label),
        })
        .collect()
}

/// First polynomial classifying to `label`: fixtures first, then up to
/// `budget` generated candidates spread across escalating stages.
pub fn find_class_example(label: ClassLabel, budget: usize, seed: u64) -> Search {
    if let Some(f) = fixtures().into_iter().find(|f| f.label == label) {
        return Search::Found {
            polynomial: f.text.to_string(),
            source: "fixture".into(),
            attempts: 0,
        };
    }
    let plan = stages(label, seed);
    let per_stage = budget / plan.len();
    let mut attempts = 0;
    for (k, config) in plan.iter().enumerate() {
        let quota = if k + 1 == plan.len() {
            budget - attempts
        } else {
            per_stage
        };
        for i in 0..quota as u64 {
            attempts += 1;
            let p = random_polynomial(config, i);
            let inst = ShapiroInstance::build(&p).expect("generated polynomial is valid");
            if classify(&inst).label == label {
                return Search::Found {
                    polynomial: p.to_string(),
                    source: format!(
                        "seed={} degrees={}:{} bound={} case={}",
                        config.seed,
                        config.degree_range.0,
                        config.degree_range.1,
                        config.coeff_bound,
                        i
                    ),
                    attempts,
                };
            }
        }
    }
    Search::NotFound { attempts }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageEntry {
    pub label: ClassLabel,
    pub symbol: String,
    pub budget: usize,
    #[serde(flatten)]
    pub search: Search,
}

/// One search per leaf, in taxonomy order.
pub fn coverage_report(budget: usize, seed: u64) -> Vec<CoverageEntry> {
    let run = |label: ClassLabel| CoverageEntry {
        label,
        symbol: label.symbol(),
        budget,
        search: find_class_example(label, budget, seed),
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ClassLabel::ALL.into_par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ClassLabel::ALL.into_iter().map(run).collect()
    }
}
