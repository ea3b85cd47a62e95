//! Browser bindings for the static demo in `www/`.
//!
//! Each export returns a JSON string or throws a string error. The inner
//! functions return `Result<String, String>` so they can be tested natively.

use serde::Serialize;
use shapiro_core::harness::{find_class_example, Search};
use shapiro_core::plot::{format_decimal, plot_rows, Marker};
use shapiro_core::poly::parse_coefficients;
use shapiro_core::report::Report;
use shapiro_core::rootlocus::{Gain, Parity};
use shapiro_core::shapiro::{ClassLabel, ShapiroInstance};
use shapiro_core::{Polynomial, Rational};
use wasm_bindgen::prelude::*;

fn polynomial(coefficients: &str, descending: bool) -> Result<Polynomial, String> {
    let mut c = parse_coefficients(coefficients).map_err(|e| e.to_string())?;
    if descending {
        c.reverse();
    }
    Ok(Polynomial::from_coefficients(c))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

pub fn classify_inner(coefficients: &str, descending: bool) -> Result<String, String> {
    let p = polynomial(coefficients, descending)?;
    Report::new(&p)
        .map(|r| to_json(&r))
        .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Point {
    x: f64,
    /// `None` where the gain is unbounded.
    k: Option<f64>,
    delta: f64,
    parity: Option<Parity>,
    marker: Option<&'static str>,
}

#[derive(Serialize)]
struct Series {
    label: ClassLabel,
    symbol: String,
    k0: f64,
    points: Vec<Point>,
}

// Going through the correctly rounded decimal keeps huge rationals finite.
fn float(r: &Rational) -> f64 {
    format_decimal(r, 17).parse().expect("decimal text")
}

pub fn plot_inner(
    coefficients: &str,
    descending: bool,
    lo: &str,
    hi: &str,
    samples: usize,
) -> Result<String, String> {
    let p = polynomial(coefficients, descending)?;
    let bound = |s: &str| {
        s.trim()
            .parse::<Rational>()
            .map_err(|e| format!("range endpoint `{s}`: {e}"))
    };
    let (lo, hi) = (bound(lo)?, bound(hi)?);
    let inst = ShapiroInstance::build(&p).map_err(|e| e.to_string())?;
    let rows = plot_rows(&inst, &lo, &hi, samples).map_err(|e| e.to_string())?;
    let label = shapiro_core::shapiro::classify(&inst).label;
    let points = rows
        .iter()
        .map(|r| Point {
            x: float(&r.x),
            k: match &r.gain {
                Gain::Finite(k) => Some(float(k)),
                Gain::Infinite => None,
            },
            delta: float(&r.delta),
            parity: r.parity,
            marker: r.marker.map(|m| match m {
                Marker::Zero => "zero",
                Marker::Pole => "pole",
                Marker::Breakaway => "breakaway",
            }),
        })
        .collect();
    Ok(to_json(&Series {
        label,
        symbol: label.symbol(),
        k0: float(&inst.k0),
        points,
    }))
}

#[derive(Serialize)]
struct Example {
    label: ClassLabel,
    symbol: String,
    #[serde(flatten)]
    search: Search,
}

pub fn example_inner(label: &str, budget: usize, seed: u64) -> Result<String, String> {
    let label: ClassLabel = label
        .parse()
        .map_err(|e: shapiro_core::Error| e.to_string())?;
    Ok(to_json(&Example {
        label,
        symbol: label.symbol(),
        search: find_class_example(label, budget, seed),
    }))
}

/// Full report for comma-separated coefficients.
#[wasm_bindgen]
pub fn classify(coefficients: &str, descending: bool) -> Result<String, JsValue> {
    classify_inner(coefficients, descending).map_err(|e| JsValue::from_str(&e))
}

/// Sampled `K(x)` and `Δ(x)` on `[lo, hi]` plus the zeros, poles and breakaways inside it.
#[wasm_bindgen]
pub fn plot(
    coefficients: &str,
    descending: bool,
    lo: &str,
    hi: &str,
    samples: usize,
) -> Result<String, JsValue> {
    plot_inner(coefficients, descending, lo, hi, samples).map_err(|e| JsValue::from_str(&e))
}

/// A polynomial with the given class label, searched with at most `budget` candidates.
#[wasm_bindgen]
pub fn example(label: &str, budget: usize, seed: u32) -> Result<String, JsValue> {
    example_inner(label, budget, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}
