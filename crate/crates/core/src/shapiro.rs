//! Classification of even-degree polynomials against Shapiro's Conjecture 12.
//!
//! For `p` of even degree `n` let `Δ = (n-1)(p')² - n p p''`. The conjecture
//! asks whether `Δ` and `p` together have a real zero. The classifier answers
//! through the root locus of `PP = p''p / (p')²`: on EVEN segments the points
//! with gain `K₀ = n/(n-1)` are exactly the real zeros of `Δ`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{int, Polynomial, Rational};
use crate::realroots::{
    compare_roots, count_real_roots, isolate_real_roots, sign_at_root, IsolatedRoot, RootCount,
};
use crate::rootlocus::{
    AxisAnalysis, EventKind, Extremum, GainThreshold, Parity, RationalFunctionOnAxis,
};

/// `p` together with everything derived from it.
#[derive(Clone, Debug)]
pub struct ShapiroInstance {
    pub p: Polynomial,
    pub n: usize,
    pub p1: Polynomial,
    pub p2: Polynomial,
    pub delta: Polynomial,
    pub k0: Rational,
    pub pp: RationalFunctionOnAxis,
}

impl ShapiroInstance {
    pub fn build(p: &Polynomial) -> Result<Self> {
        let n = match p.degree() {
            Some(n) if n >= 2 && n % 2 == 0 => n,
            Some(n) => return Err(Error::Degree(n.to_string())),
            None => return Err(Error::Degree("-inf".into())),
        };
        let p1 = p.derivative();
        let p2 = p1.derivative();
        let nn = int(n as i64);
        let n1 = int(n as i64 - 1);
        let delta = &p1.pow(2).scale(&n1) - &(p * &p2).scale(&nn);
        let pp = RationalFunctionOnAxis::normalize(&(&p2 * p), &p1.pow(2))?;
        Ok(Self {
            p: p.clone(),
            n,
            k0: nn / n1,
            p1,
            p2,
            delta,
            pp,
        })
    }
}

/// Leaf of the taxonomy. Codes spell the Greek subscripts in ASCII:
/// `L21` is Λ₂₁, `G2122` is Γ₂₁₂₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    L1,
    L21,
    L22,
    G11,
    G121,
    G122,
    G22,
    G211,
    G2121,
    G2122,
    G231,
    G2321,
    G2322,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 13] = [
        ClassLabel::L1,
        ClassLabel::L21,
        ClassLabel::L22,
        ClassLabel::G11,
        ClassLabel::G121,
        ClassLabel::G122,
        ClassLabel::G22,
        ClassLabel::G211,
        ClassLabel::G2121,
        ClassLabel::G2122,
        ClassLabel::G231,
        ClassLabel::G2321,
        ClassLabel::G2322,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ClassLabel::L1 => "L1",
            ClassLabel::L21 => "L21",
            ClassLabel::L22 => "L22",
            ClassLabel::G11 => "G11",
            ClassLabel::G121 => "G121",
            ClassLabel::G122 => "G122",
            ClassLabel::G22 => "G22",
            ClassLabel::G211 => "G211",
            ClassLabel::G2121 => "G2121",
            ClassLabel::G2122 => "G2122",
            ClassLabel::G231 => "G231",
            ClassLabel::G2321 => "G2321",
            ClassLabel::G2322 => "G2322",
        }
    }

    /// `Λ₂₁`, `Γ₁₂₂`, ...
    pub fn symbol(self) -> String {
        let code = self.code();
        let head = if code.starts_with('L') { 'Λ' } else { 'Γ' };
        let subscripts: String = code[1..]
            .chars()
            .map(|c| {
                char::from_u32('₀' as u32 + c.to_digit(10).expect("digit")).expect("subscript")
            })
            .collect();
        format!("{head}{subscripts}")
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    /// Accepts the ASCII code (any case) or the Greek symbol.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        ClassLabel::ALL
            .into_iter()
            .find(|l| l.code().eq_ignore_ascii_case(t) || l.symbol() == t)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    /// `#r Δ + #r p > 0`
    Holds,
    /// `#r Δ + #r p = 0`
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
        })
    }
}

/// Verdict implied by the class label alone.
pub fn predict_verdict(label: ClassLabel) -> Verdict {
    use ClassLabel::*;
    match label {
        L1 | L21 | L22 | G122 | G22 | G2122 | G211 | G231 | G2322 => Verdict::Holds,
        G11 | G121 | G2121 | G2321 => Verdict::Fails,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ActualVerdict {
    pub verdict: Verdict,
    pub nr_delta: RootCount,
    pub nr_p: RootCount,
}

/// Verdict from direct real-root counting of `Δ` and `p`.
///
/// `Δ ≡ 0` (exactly the powers of a linear form) has no meaningful count and
/// is reported as [`Error::DeltaIdenticallyZero`].
pub fn actual_verdict(inst: &ShapiroInstance) -> Result<ActualVerdict> {
    if inst.delta.is_zero() {
        return Err(Error::DeltaIdenticallyZero);
    }
    let nr_delta = count_real_roots(&inst.delta)?;
    let nr_p = count_real_roots(&inst.p)?;
    let verdict = if nr_delta.distinct + nr_p.distinct > 0 {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    Ok(ActualVerdict {
        verdict,
        nr_delta,
        nr_p,
    })
}

/// `LT`/`EQ`/`GT` in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison(pub Ordering);

impl Serialize for Comparison {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self.0 {
            Ordering::Less => "LT",
            Ordering::Equal => "EQ",
            Ordering::Greater => "GT",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IntervalKind {
    /// `(z_m, +inf)`, right of the largest zero of p''.
    RightInfinite,
    /// `(-inf, z_s)`, left of the smallest zero of p''.
    LeftInfinite,
    /// Between two adjacent zeros of p'' on one side of p₀.
    Finite,
    /// Between p₀ and an adjacent zero of p''.
    PoleToZero,
    /// Between p₀ and an infinite end, when p'' has no zero on that side.
    PoleToInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, Serialize)]
pub struct BreakawaySummary {
    pub location: IsolatedRoot,
    pub standard: bool,
    pub extremum: Extremum,
    pub vs_k0: Comparison,
}

/// One segment of PP's real axis, as seen by the classifier.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalFinding {
    pub kind: IntervalKind,
    pub side: Side,
    pub parity: Parity,
    pub left: Option<IsolatedRoot>,
    pub right: Option<IsolatedRoot>,
    pub breakaways: Vec<BreakawaySummary>,
}

impl IntervalFinding {
    fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    fn extrema(&self, which: Extremum) -> impl Iterator<Item = &BreakawaySummary> {
        self.breakaways.iter().filter(move |b| b.extremum == which)
    }
}

/// A comparison that fed the final branch decision.
#[derive(Clone, Debug, Serialize)]
pub struct DecisiveComparison {
    /// Index into [`Evidence::intervals`].
    pub interval: usize,
    pub breakaway: BreakawaySummary,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Evidence {
    pub p_real_roots: usize,
    pub p1_real_roots: Vec<IsolatedRoot>,
    /// The simple real zero of p' (Γ branch only).
    pub p0: Option<IsolatedRoot>,
    /// Zeros of p'' left/right of p₀, with multiplicity.
    pub p2_roots_left: usize,
    pub p2_roots_right: usize,
    pub intervals: Vec<IntervalFinding>,
    pub decisive: Vec<DecisiveComparison>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub label: ClassLabel,
    pub evidence: Evidence,
}

pub fn classify(inst: &ShapiroInstance) -> Classification {
    let mut evidence = Evidence {
        p_real_roots: count_real_roots(&inst.p).expect("p is nonzero").distinct,
        ..Evidence::default()
    };
    if evidence.p_real_roots > 0 {
        return Classification {
            label: ClassLabel::L1,
            evidence,
        };
    }
    evidence.p1_real_roots = isolate_real_roots(&inst.p1).expect("p' is nonzero");
    // p' has odd degree, so at least one real root.
    match evidence.p1_real_roots.as_slice() {
        [_, _, ..] => {
            return Classification {
                label: ClassLabel::L21,
                evidence,
            }
        }
        [r] if r.multiplicity() > 1 => {
            return Classification {
                label: ClassLabel::L22,
                evidence,
            }
        }
        _ => {}
    }
    let p0 = evidence.p1_real_roots[0].clone();
    let p2_roots = if inst.p2.is_constant() {
        Vec::new()
    } else {
        isolate_real_roots(&inst.p2).expect("p'' is nonzero")
    };
    for r in &p2_roots {
        match compare_roots(r, &p0) {
            Ordering::Less => evidence.p2_roots_left += r.multiplicity(),
            Ordering::Greater => evidence.p2_roots_right += r.multiplicity(),
            Ordering::Equal => unreachable!("p'' vanishes at the simple zero of p'"),
        }
    }
    evidence.intervals = interval_findings(inst, &p0);
    evidence.p0 = Some(p0);
    let (label, decisive) = decide_gamma(
        evidence.p2_roots_left,
        evidence.p2_roots_right,
        &evidence.intervals,
    );
    evidence.decisive = decisive;
    Classification { label, evidence }
}

fn interval_findings(inst: &ShapiroInstance, p0: &IsolatedRoot) -> Vec<IntervalFinding> {
    let analysis = AxisAnalysis::new(inst.pp.clone());
    let threshold = GainThreshold::new(&analysis.rf, &inst.k0);
    let kind_of = |i: usize| analysis.events.get(i).map(|e| e.kind);
    analysis
        .segments
        .iter()
        .enumerate()
        .map(|(i, seg)| {
            // segment i sits between events i-1 and i
            let left_kind = i.checked_sub(1).and_then(kind_of);
            let right_kind = kind_of(i);
            let kind = match (left_kind, right_kind) {
                (Some(EventKind::Pole), None) | (None, Some(EventKind::Pole)) => {
                    IntervalKind::PoleToInfinity
                }
                (Some(EventKind::Zero), None) => IntervalKind::RightInfinite,
                (None, Some(EventKind::Zero)) => IntervalKind::LeftInfinite,
                (Some(EventKind::Zero), Some(EventKind::Zero)) => IntervalKind::Finite,
                (Some(_), Some(_)) => IntervalKind::PoleToZero,
                (None, None) => unreachable!("p0 is a pole of PP"),
            };
            let side = match &seg.left {
                Some(l) if compare_roots(l, p0) != Ordering::Less => Side::Right,
                _ => Side::Left,
            };
            let breakaways = analysis
                .breakaways_in(i)
                .map(|b| BreakawaySummary {
                    location: b.location.clone(),
                    standard: b.standard,
                    extremum: b.extremum,
                    vs_k0: Comparison(threshold.compare(b)),
                })
                .collect();
            IntervalFinding {
                kind,
                side,
                parity: seg.parity,
                left: seg.left.clone(),
                right: seg.right.clone(),
                breakaways,
            }
        })
        .collect()
}

/// Leaf decision for the Γ branch from p'' zero counts around p₀ and the
/// interval inventory of PP.
///
/// Every leaf is returned from exactly one arm; boundary ties (`K = K₀`)
/// fall on the side where the conjecture holds.
pub(crate) fn decide_gamma(
    left: usize,
    right: usize,
    intervals: &[IntervalFinding],
) -> (ClassLabel, Vec<DecisiveComparison>) {
    let cite =
        |pred: &dyn Fn(&IntervalFinding) -> bool, which: Extremum| -> Vec<DecisiveComparison> {
            intervals
                .iter()
                .enumerate()
                .filter(|(_, f)| pred(f))
                .flat_map(|(i, f)| {
                    f.extrema(which).map(move |b| DecisiveComparison {
                        interval: i,
                        breakaway: b.clone(),
                    })
                })
                .collect()
        };
    let at_most_k0 = |d: &DecisiveComparison| d.breakaway.vs_k0.0 != Ordering::Greater;

    match (left > 0, right > 0) {
        (false, false) => {
            let standard = intervals
                .iter()
                .any(|f| f.breakaways.iter().any(|b| b.standard));
            if !standard {
                return (ClassLabel::G11, Vec::new());
            }
            let maxima = cite(&|_| true, Extremum::Max);
            if maxima.iter().all(|d| d.breakaway.vs_k0.0 == Ordering::Less) {
                (ClassLabel::G121, maxima)
            } else {
                (ClassLabel::G122, maxima)
            }
        }
        (true, false) => (ClassLabel::G22, Vec::new()),
        (false, true) if right.is_multiple_of(2) => (ClassLabel::G211, Vec::new()),
        (true, true) if right.is_multiple_of(2) => (ClassLabel::G231, Vec::new()),
        (false, true) => {
            debug_assert!(intervals
                .iter()
                .filter(|f| f.kind == IntervalKind::RightInfinite)
                .all(IntervalFinding::is_even));
            let minima = cite(
                &|f| {
                    f.side == Side::Right
                        && (f.kind == IntervalKind::RightInfinite
                            || (f.kind == IntervalKind::Finite && f.is_even()))
                },
                Extremum::Min,
            );
            if minima.iter().any(at_most_k0) {
                (ClassLabel::G2122, minima)
            } else {
                (ClassLabel::G2121, minima)
            }
        }
        (true, true) => {
            let minima = cite(
                &|f| match f.kind {
                    IntervalKind::RightInfinite => true,
                    IntervalKind::Finite | IntervalKind::LeftInfinite => f.is_even(),
                    IntervalKind::PoleToZero | IntervalKind::PoleToInfinity => false,
                },
                Extremum::Min,
            );
            if minima.iter().any(at_most_k0) {
                (ClassLabel::G2322, minima)
            } else {
                (ClassLabel::G2321, minima)
            }
        }
    }
}

/// A real point given either exactly or as an isolated algebraic number.
#[derive(Clone, Copy, Debug)]
pub enum AxisPoint<'a> {
    Rational(&'a Rational),
    Root(&'a IsolatedRoot),
}

impl AxisPoint<'_> {
    fn sign_of(&self, q: &Polynomial) -> Ordering {
        match self {
            AxisPoint::Rational(x) => q.sign_at(x),
            AxisPoint::Root(r) => sign_at_root(q, r),
        }
    }
}

/// `K(x)` against `K₀` from the sign of `Δ(x)` alone.
///
/// `K - K₀ = Δ / ((n-1) p'' p)` and `p'' p > 0` on EVEN segments of PP, so
/// the signs agree there. Points on ODD segments, zeros and poles are rejected.
pub fn delta_sign_shortcut(inst: &ShapiroInstance, x: AxisPoint<'_>) -> Result<Ordering> {
    let rf_num_den = inst.pp.numerator() * inst.pp.denominator();
    if x.sign_of(&rf_num_den) != inst.pp.leading_sign() {
        return Err(Error::NotOnEvenSegment);
    }
    Ok(x.sign_of(&inst.delta))
}
