//! Sampled `K(x)` and `Δ(x)` along the real axis, for plotting.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, Rational};
use crate::realroots::IsolatedRoot;
use crate::rootlocus::{gain_at, AxisAnalysis, EventKind, Gain, Parity};
use crate::shapiro::ShapiroInstance;

pub const CSV_HEADER: &str = "x,K,delta,parity,is_event";
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    Zero,
    Pole,
    Breakaway,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotRow {
    /// Exact for grid rows and rational events; otherwise a rational within
    /// `1e-30` relative of the algebraic event location.
    pub x: Rational,
    pub gain: Gain,
    pub delta: Rational,
    /// `None` exactly at zeros and poles.
    pub parity: Option<Parity>,
    pub marker: Option<Marker>,
}

impl PlotRow {
    pub fn is_event(&self) -> bool {
        self.marker.is_some()
    }
}

fn locate(root: &IsolatedRoot, scale: &Rational) -> Rational {
    match root.as_rational() {
        Some(x) => x.clone(),
        None => root
            .refine(&(scale * Rational::new(BigInt::one(), BigInt::from(10).pow(30))))
            .midpoint(),
    }
}

/// `samples` evenly spaced grid rows on `[lo, hi]`, plus one row per zero,
/// pole and breakaway point of PP inside the range, sorted by `x`.
///
/// A grid point that coincides with an event is flagged instead of doubled.
pub fn plot_rows(
    inst: &ShapiroInstance,
    lo: &Rational,
    hi: &Rational,
    samples: usize,
) -> Result<Vec<PlotRow>> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    if samples < 2 {
        return Err(Error::Config(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let analysis = AxisAnalysis::new(inst.pp.clone());
    let in_range = |r: &IsolatedRoot| {
        r.cmp_rational(lo) != Ordering::Less && r.cmp_rational(hi) != Ordering::Greater
    };
    let scale = (hi - lo).max(lo.abs().max(hi.abs()));

    let mut marked: Vec<(&IsolatedRoot, Marker, Option<Parity>)> = analysis
        .events
        .iter()
        .filter(|e| in_range(&e.root))
        .map(|e| {
            let m = match e.kind {
                EventKind::Zero => Marker::Zero,
                EventKind::Pole => Marker::Pole,
            };
            (&e.root, m, None)
        })
        .chain(
            analysis
                .breakaways
                .iter()
                .filter(|b| in_range(&b.location))
                .map(|b| {
                    (
                        &b.location,
                        Marker::Breakaway,
                        Some(analysis.segments[b.segment].parity),
                    )
                }),
        )
        .collect();

    let parity_at = |x: &Rational| {
        analysis
            .segments
            .iter()
            .find(|s| s.contains(x))
            .map(|s| s.parity)
    };
    let step = (hi - lo) / int(samples as i64 - 1);
    let mut rows: Vec<PlotRow> = (0..samples)
        .map(|i| {
            let x = if i + 1 == samples {
                hi.clone()
            } else {
                lo + &step * int(i as i64)
            };
            let hit = marked
                .iter()
                .position(|(root, _, _)| root.cmp_rational(&x) == Ordering::Equal);
            let (marker, parity) = match hit {
                Some(k) => {
                    let (_, m, p) = marked.swap_remove(k);
                    (Some(m), p)
                }
                None => (None, parity_at(&x)),
            };
            PlotRow {
                gain: gain_at(&inst.pp, &x),
                delta: inst.delta.eval(&x),
                parity,
                marker,
                x,
            }
        })
        .collect();
    rows.extend(marked.into_iter().map(|(root, m, parity)| {
        let x = locate(root, &scale);
        PlotRow {
            gain: gain_at(&inst.pp, &x),
            delta: inst.delta.eval(&x),
            parity,
            marker: Some(m),
            x,
        }
    }));
    rows.sort_by(|a, b| a.x.cmp(&b.x));
    Ok(rows)
}

/// CSV with [`CSV_HEADER`]; `K` is blank where the gain is unbounded.
pub fn to_csv(rows: &[PlotRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let k = match &r.gain {
            Gain::Finite(k) => format_decimal(k, SIGNIFICANT_DIGITS),
            Gain::Infinite => String::new(),
        };
        let parity = match r.parity {
            Some(Parity::Even) => "EVEN",
            Some(Parity::Odd) => "ODD",
            None => "",
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_decimal(&r.x, SIGNIFICANT_DIGITS),
            k,
            format_decimal(&r.delta, SIGNIFICANT_DIGITS),
            parity,
            r.is_event()
        ));
    }
    out
}

/// Correctly rounded (half away from zero) decimal with `sig` significant
/// digits. Plain notation for exponents in `-5..sig`, scientific otherwise.
pub fn format_decimal(r: &Rational, sig: usize) -> String {
    assert!(sig > 0, "at least one significant digit");
    if r.is_zero() {
        return "0".into();
    }
    let (a, b) = (r.numer().abs(), r.denom().clone());
    let ten = BigInt::from(10);
    // e = floor(log10(a / b))
    let mut e = a.to_string().len() as i64 - b.to_string().len() as i64;
    let scaled_cmp = |e: i64, num: &BigInt| -> Ordering {
        if e >= 0 {
            num.cmp(&(&b * ten.pow(e as u32)))
        } else {
            (num * ten.pow((-e) as u32)).cmp(&b)
        }
    };
    while scaled_cmp(e, &a) == Ordering::Less {
        e -= 1;
    }
    while scaled_cmp(e + 1, &a) != Ordering::Less {
        e += 1;
    }
    // digits = round(a / b * 10^(sig - 1 - e))
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&a * ten.pow(shift as u32), b.clone())
    } else {
        (a.clone(), &b * ten.pow((-shift) as u32))
    };
    let two = BigInt::from(2);
    let mut digits = (num * &two + &den).div_floor(&(den * &two));
    if digits == ten.pow(sig as u32) {
        digits /= &ten;
        e += 1;
    }
    let d = digits.to_string();
    let sign = if r.is_negative() { "-" } else { "" };
    let trim = |s: &str| s.trim_end_matches('0').to_string();
    if (-5..sig as i64).contains(&e) {
        let (int_part, frac) = if e >= 0 {
            let k = e as usize + 1;
            (d[..k].to_string(), trim(&d[k..]))
        } else {
            (
                "0".to_string(),
                trim(&format!("{}{}", "0".repeat((-e - 1) as usize), d)),
            )
        };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    } else {
        let frac = trim(&d[1..]);
        let mantissa = if frac.is_empty() {
            d[..1].to_string()
        } else {
            format!("{}.{frac}", &d[..1])
        };
        format!("{sign}{mantissa}e{e}")
    }
}
