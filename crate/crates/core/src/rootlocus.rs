//! Real-axis root-locus analysis of `K * RF(x) = ±1`.
//!
//! The gain is `K(x) = |den(x) / num(x)|`: zero at poles, unbounded at zeros.
//! A real interval between consecutive real zeros/poles is an EVEN (`2qπ`)
//! locus when the zeros and poles to its right, counted with multiplicity,
//! are even in number, and an ODD (`2qπ + π`) locus otherwise. Breakaway
//! points are real critical points of the gain away from multiple zeros and
//! poles; they are standard exactly when the gain has a local extremum there.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{int, Polynomial, Rational};
use crate::realroots::{
    compare_roots, isolate_real_roots, isolate_with_chain, order_roots, IsolatedRoot, RootSigns,
    SturmChain,
};

/// A real rational function with no common factor between its parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionOnAxis {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunctionOnAxis {
    /// Cancels the monic gcd of `numerator` and `denominator`.
    ///
    /// Constant factors are kept as given, so gains are those of the
    /// function as written rather than of a monic rescaling.
    pub fn normalize(numerator: &Polynomial, denominator: &Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if numerator.is_zero() {
            return Err(Error::ZeroNumerator);
        }
        let g = numerator.gcd(denominator)?;
        Ok(Self {
            numerator: numerator.exact_div(&g)?,
            denominator: denominator.exact_div(&g)?,
        })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Sign of the ratio of leading coefficients, i.e. of RF near `+inf`.
    pub fn leading_sign(&self) -> Ordering {
        let a = self.numerator.sign_at_pos_infinity();
        let b = self.denominator.sign_at_pos_infinity();
        if a == b {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// `RF(x)`, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(x);
        (!d.is_zero()).then(|| self.numerator.eval(x) / d)
    }

    /// Sign of `RF(x)`; `Equal` at zeros and poles.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let n = self.numerator.sign_at(x);
        let d = self.denominator.sign_at(x);
        if n == Ordering::Equal || d == Ordering::Equal {
            Ordering::Equal
        } else if n == d {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EventKind {
    Zero,
    Pole,
}

/// A real zero or pole of the rational function.
#[derive(Clone, Debug)]
pub struct AxisEvent {
    pub root: IsolatedRoot,
    pub kind: EventKind,
}

impl AxisEvent {
    pub fn multiplicity(&self) -> usize {
        self.root.multiplicity()
    }
}

/// Real zeros and poles, sorted along the axis.
pub fn axis_events(rf: &RationalFunctionOnAxis) -> Vec<AxisEvent> {
    let zeros = isolate_real_roots(rf.numerator()).expect("numerator is nonzero");
    let poles = isolate_real_roots(rf.denominator()).expect("denominator is nonzero");
    order_roots(
        zeros
            .into_iter()
            .map(|r| (EventKind::Zero, r))
            .chain(poles.into_iter().map(|r| (EventKind::Pole, r))),
    )
    .into_iter()
    .map(|m| {
        debug_assert_eq!(m.tags.len(), 1, "zero and pole coincide after cancellation");
        AxisEvent {
            root: m.root,
            kind: m.tags[0],
        }
    })
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Parity {
    /// `2qπ` locus.
    Even,
    /// `2qπ + π` locus.
    Odd,
}

impl Parity {
    fn of_count(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Maximal open real interval free of zeros and poles. `None` ends are infinite.
#[derive(Clone, Debug)]
pub struct AxisSegment {
    pub left: Option<IsolatedRoot>,
    pub right: Option<IsolatedRoot>,
    pub parity: Parity,
    /// Real zeros plus poles, with multiplicity, right of the segment.
    pub right_count: usize,
}

impl AxisSegment {
    /// Whether the rational `x` lies strictly inside.
    pub fn contains(&self, x: &Rational) -> bool {
        self.left
            .as_ref()
            .is_none_or(|l| l.cmp_rational(x) == Ordering::Less)
            && self
                .right
                .as_ref()
                .is_none_or(|r| r.cmp_rational(x) == Ordering::Greater)
    }

    /// Whether the algebraic number `root` lies strictly inside.
    pub fn contains_root(&self, root: &IsolatedRoot) -> bool {
        self.left
            .as_ref()
            .is_none_or(|l| compare_roots(l, root) == Ordering::Less)
            && self
                .right
                .as_ref()
                .is_none_or(|r| compare_roots(r, root) == Ordering::Greater)
    }

    /// Sign RF takes on this segment: the parity sign, flipped when the
    /// leading coefficients of RF have opposite signs.
    pub fn rf_sign(&self, rf: &RationalFunctionOnAxis) -> Ordering {
        let parity_sign = match self.parity {
            Parity::Even => Ordering::Greater,
            Parity::Odd => Ordering::Less,
        };
        if rf.leading_sign() == Ordering::Greater {
            parity_sign
        } else {
            parity_sign.reverse()
        }
    }

    /// `k` increasing rational points strictly inside the segment.
    pub fn sample_points(&self, k: usize) -> Vec<Rational> {
        sample_between(self.left.as_ref(), self.right.as_ref(), k)
    }
}

/// `k` increasing rational points strictly between two algebraic numbers
/// (either may be absent, meaning an infinite end).
pub fn sample_between(
    left: Option<&IsolatedRoot>,
    right: Option<&IsolatedRoot>,
    k: usize,
) -> Vec<Rational> {
    let step = |j: usize| Rational::from_integer((j as i64).into());
    match (left, right) {
        (None, None) => (0..k).map(|j| step(j) - step(k / 2)).collect(),
        (Some(l), None) => (1..=k).map(|j| l.hi() + step(j)).collect(),
        (None, Some(r)) => (1..=k).rev().map(|j| r.lo() - step(j)).collect(),
        (Some(l), Some(r)) => {
            let (mut l, mut r) = (l.clone(), r.clone());
            while l.hi() >= r.lo() {
                l.bisect();
                r.bisect();
            }
            let gap = r.lo() - l.hi();
            let parts = step(k + 1);
            (1..=k).map(|j| l.hi() + &gap * step(j) / &parts).collect()
        }
    }
}

/// Segments between consecutive events, left to right, with both unbounded ends.
pub fn axis_segments(rf: &RationalFunctionOnAxis) -> Vec<AxisSegment> {
    segments_from_events(&axis_events(rf))
}

fn segments_from_events(events: &[AxisEvent]) -> Vec<AxisSegment> {
    let total: usize = events.iter().map(AxisEvent::multiplicity).sum();
    let mut right_count = total;
    let mut out = Vec::with_capacity(events.len() + 1);
    let mut left = None;
    for ev in events {
        out.push(AxisSegment {
            left: left.take(),
            right: Some(ev.root.clone()),
            parity: Parity::of_count(right_count),
            right_count,
        });
        right_count -= ev.multiplicity();
        left = Some(ev.root.clone());
    }
    out.push(AxisSegment {
        left,
        right: None,
        parity: Parity::of_count(right_count),
        right_count,
    });
    out
}

/// Gain at a real point; unbounded at zeros of the numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gain {
    Finite(Rational),
    Infinite,
}

impl std::fmt::Display for Gain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gain::Finite(k) => write!(f, "{k}"),
            Gain::Infinite => f.write_str("inf"),
        }
    }
}

/// `|den(x) / num(x)|`
pub fn gain_at(rf: &RationalFunctionOnAxis, x: &Rational) -> Gain {
    let n = rf.numerator().eval(x);
    if n.is_zero() {
        return Gain::Infinite;
    }
    Gain::Finite((rf.denominator().eval(x) / n).abs())
}

/// `num' * den - num * den'`, the numerator of RF'.
pub fn gain_derivative_numerator(rf: &RationalFunctionOnAxis) -> Polynomial {
    let (n, d) = (rf.numerator(), rf.denominator());
    &(&n.derivative() * d) - &(n * &d.derivative())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Extremum {
    Max,
    Min,
    None,
}

#[derive(Clone, Debug)]
pub struct BreakawayPoint {
    pub location: IsolatedRoot,
    pub standard: bool,
    pub extremum: Extremum,
    /// Index into the segments returned by [`axis_segments`].
    pub segment: usize,
}

/// Real breakaway points, sorted, with standard/extremum classification.
pub fn breakaway_points(rf: &RationalFunctionOnAxis) -> Vec<BreakawayPoint> {
    breakaways_on(rf, &axis_segments(rf))
}

fn breakaways_on(rf: &RationalFunctionOnAxis, segments: &[AxisSegment]) -> Vec<BreakawayPoint> {
    let crit = gain_derivative_numerator(rf);
    if crit.is_zero() {
        return Vec::new();
    }
    // A zero or pole of multiplicity m is a root of crit of multiplicity
    // m - 1; dividing those out leaves a much smaller polynomial to isolate.
    let (n, d) = (rf.numerator(), rf.denominator());
    let repeated =
        &n.gcd(&n.derivative()).expect("nonzero") * &d.gcd(&d.derivative()).expect("nonzero");
    let reduced = crit.exact_div(&repeated).expect("nonzero");
    let events_poly = n * d;
    let events_chain = SturmChain::new(&events_poly).expect("nonzero");
    let shared = reduced.gcd(&events_poly).expect("nonzero");
    let (roots, crit_chain) = isolate_with_chain(&reduced).expect("nonzero");
    let Some(crit_chain) = crit_chain else {
        return Vec::new();
    };

    roots
        .into_iter()
        // critical points at multiple zeros/poles are not breakaway points
        .filter(|r| !r.is_root_of(&shared))
        .map(|location| {
            let segment = segments
                .iter()
                .position(|s| s.contains_root(&location))
                .expect("segments cover every non-event point");
            let (left, right) = side_points(&location, &crit_chain, &events_chain);
            let rf_sign = segments[segment].rf_sign(rf);
            // K = ±1/RF on the segment, so sign K' = -sign(RF) * sign(num' den - num den').
            let gain_slope = |x: &Rational| {
                let s = crit.sign_at(x);
                if rf_sign == Ordering::Greater {
                    s.reverse()
                } else {
                    s
                }
            };
            let extremum = match (gain_slope(&left), gain_slope(&right)) {
                (Ordering::Greater, Ordering::Less) => Extremum::Max,
                (Ordering::Less, Ordering::Greater) => Extremum::Min,
                _ => Extremum::None,
            };
            BreakawayPoint {
                location,
                standard: extremum != Extremum::None,
                extremum,
                segment,
            }
        })
        .collect()
}

/// Rational points left and right of `root` with no other critical point and
/// no zero or pole between them and the root.
fn side_points(
    root: &IsolatedRoot,
    crit: &SturmChain,
    events: &SturmChain,
) -> (Rational, Rational) {
    let mut root = root.clone();
    let mut delta = Rational::one();
    loop {
        let (xl, xr) = match root.as_rational() {
            Some(m) => (m - &delta, m + &delta),
            None => {
                let w = root.width();
                (root.lo() - &w, root.hi() + &w)
            }
        };
        let clean = |c: &SturmChain| {
            [&xl, &xr]
                .iter()
                .all(|x| c.base().sign_at(x) != Ordering::Equal)
        };
        if clean(crit)
            && clean(events)
            && crit.count(&xl.clone().into(), &xr.clone().into()) == Ok(1)
            && events.count(&xl.clone().into(), &xr.clone().into()) == Ok(0)
        {
            return (xl, xr);
        }
        if root.is_exact() {
            delta /= int(2);
        } else {
            root.bisect();
        }
    }
}

/// Exact comparison of the gain at a breakaway point with `threshold`.
pub fn gain_vs_threshold(
    rf: &RationalFunctionOnAxis,
    b: &BreakawayPoint,
    threshold: &Rational,
) -> Ordering {
    GainThreshold::new(rf, threshold).compare(b)
}

/// Compares gains at many breakaway points against one threshold.
///
/// Both sides are non-negative, so `K(b) ? t` is decided by the sign of
/// `den^2 - t^2 num^2 = (den - t num)(den + t num)` at `b`.
#[derive(Clone, Debug)]
pub struct GainThreshold {
    minus: RootSigns,
    plus: RootSigns,
}

impl GainThreshold {
    pub fn new(rf: &RationalFunctionOnAxis, threshold: &Rational) -> Self {
        let tn = rf.numerator().scale(threshold);
        Self {
            minus: RootSigns::new(rf.denominator() - &tn),
            plus: RootSigns::new(rf.denominator() + &tn),
        }
    }

    pub fn compare(&self, b: &BreakawayPoint) -> Ordering {
        let m = self.minus.at(&b.location);
        match self.plus.at(&b.location) {
            Ordering::Greater => m,
            Ordering::Less => m.reverse(),
            Ordering::Equal => Ordering::Equal,
        }
    }
}

/// Everything the classifier needs about one rational function.
#[derive(Clone, Debug)]
pub struct AxisAnalysis {
    pub rf: RationalFunctionOnAxis,
    pub events: Vec<AxisEvent>,
    pub segments: Vec<AxisSegment>,
    pub breakaways: Vec<BreakawayPoint>,
}

impl AxisAnalysis {
    pub fn new(rf: RationalFunctionOnAxis) -> Self {
        let events = axis_events(&rf);
        let segments = segments_from_events(&events);
        let breakaways = breakaways_on(&rf, &segments);
        Self {
            rf,
            events,
            segments,
            breakaways,
        }
    }

    /// Breakaway points lying in segment `index`, in order.
    pub fn breakaways_in(&self, index: usize) -> impl Iterator<Item = &BreakawayPoint> {
        self.breakaways.iter().filter(move |b| b.segment == index)
    }
}
