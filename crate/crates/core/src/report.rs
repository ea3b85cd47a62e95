//! Full analysis of one polynomial in a serializable form.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::realroots::{count_real_roots, RootCount};
use crate::shapiro::{
    actual_verdict, classify, predict_verdict, ClassLabel, Evidence, ShapiroInstance, Verdict,
};

/// Direct-count outcome; `DeltaZero` when `Δ` vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verdict(Verdict),
    DeltaZero,
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Outcome::Verdict(v) => v.serialize(s),
            Outcome::DeltaZero => s.serialize_str("DELTA_ZERO"),
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Verdict(v) => v.fmt(f),
            Outcome::DeltaZero => f.write_str("DELTA_ZERO"),
        }
    }
}

/// Wall-clock microseconds; always zero on `wasm32`, which has no clock in std.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub classify_us: u64,
    pub count_us: u64,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    #[cfg(not(target_arch = "wasm32"))]
    {
        let t = std::time::Instant::now();
        let out = f();
        (out, t.elapsed().as_micros() as u64)
    }
    #[cfg(target_arch = "wasm32")]
    {
        (f(), 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// Ascending comma-separated coefficients; reparses to the same polynomial.
    pub input: String,
    pub degree: usize,
    pub label: ClassLabel,
    pub symbol: String,
    pub predicted: Verdict,
    pub actual: Outcome,
    pub agree: bool,
    /// Absent when `Δ ≡ 0`.
    pub nr_delta: Option<RootCount>,
    pub nr_p: RootCount,
    pub delta: String,
    pub k0: String,
    pub evidence: Evidence,
    pub timings: Timings,
}

impl Report {
    pub fn new(p: &Polynomial) -> Result<Self> {
        let inst = ShapiroInstance::build(p)?;
        let (classification, classify_us) = timed(|| classify(&inst));
        let (counted, count_us) = timed(|| actual_verdict(&inst));
        let (actual, nr_delta, nr_p) = match counted {
            Ok(a) => (Outcome::Verdict(a.verdict), Some(a.nr_delta), a.nr_p),
            Err(Error::DeltaIdenticallyZero) => (Outcome::DeltaZero, None, count_real_roots(p)?),
            Err(e) => return Err(e),
        };
        let predicted = predict_verdict(classification.label);
        Ok(Self {
            input: p.to_string(),
            degree: inst.n,
            label: classification.label,
            symbol: classification.label.symbol(),
            predicted,
            actual,
            agree: actual == Outcome::Verdict(predicted),
            nr_delta,
            nr_p,
            delta: inst.delta.to_string(),
            k0: inst.k0.to_string(),
            evidence: classification.evidence,
            timings: Timings {
                classify_us,
                count_us,
            },
        })
    }
}
