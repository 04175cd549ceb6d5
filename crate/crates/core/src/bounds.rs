//! Numeric checks of the probabilistic inequalities behind the pipelines:
//! the symmetric local lemma condition, the event bounds of the regular
//! bipartition step, Chernoff tails, and the edge-subset bound.
//!
//! Quantities that under- or overflow at large degrees are evaluated in
//! log space; each report carries the natural log next to the value.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2};
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::decompose::{PAPER_M, PAPER_T};

/// Relative tolerance for comparisons against published constants.
pub const PUBLISHED_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("{0}")]
    Domain(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
    #[serde(rename = ">")]
    Greater,
    /// Within [`PUBLISHED_TOLERANCE`] relative.
    #[serde(rename = "~")]
    Approx,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
            Relation::Greater => ">",
            Relation::Approx => "~",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    /// Natural log of `value`; exact even when `value` underflows.
    pub log_value: f64,
    pub threshold: f64,
    pub log_threshold: f64,
    pub relation: Relation,
    pub satisfied: bool,
    pub extras: BTreeMap<String, f64>,
}

impl BoundReport {
    /// Compares in log space when both sides are positive.
    fn from_logs(name: impl Into<String>, log_value: f64, log_threshold: f64, relation: Relation) -> Self {
        let satisfied = match relation {
            Relation::Less => log_value < log_threshold,
            // Allow rounding at the boundary.
            Relation::LessEq => log_value <= log_threshold + 1e-12,
            Relation::Greater => log_value > log_threshold,
            Relation::Approx => ((log_value.exp() - log_threshold.exp()) / log_threshold.exp()).abs() <= PUBLISHED_TOLERANCE,
        };
        BoundReport {
            name: name.into(),
            value: log_value.exp(),
            log_value,
            threshold: log_threshold.exp(),
            log_threshold,
            relation,
            satisfied,
            extras: BTreeMap::new(),
        }
    }

    /// Direct comparison for quantities that may be negative.
    fn from_values(name: impl Into<String>, value: f64, threshold: f64, relation: Relation) -> Self {
        let satisfied = match relation {
            Relation::Less => value < threshold,
            Relation::LessEq => value <= threshold,
            Relation::Greater => value > threshold,
            Relation::Approx => ((value - threshold) / threshold).abs() <= PUBLISHED_TOLERANCE,
        };
        BoundReport {
            name: name.into(),
            value,
            log_value: value.ln(),
            threshold,
            log_threshold: threshold.ln(),
            relation,
            satisfied,
            extras: BTreeMap::new(),
        }
    }

    fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }
}

fn domain(msg: String) -> BoundsError {
    BoundsError::Domain(msg)
}

/// `e · p · (D + 1) <= 1`.
pub fn lll_symmetric_check(p: f64, dependency: u64) -> Result<BoundReport, BoundsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("probability {p} outside [0, 1]")));
    }
    let log_value = 1.0 + p.ln() + ((dependency + 1) as f64).ln();
    Ok(BoundReport::from_logs(format!("lll symmetric p={p:e} D={dependency}"), log_value, 0.0, Relation::LessEq))
}

/// `2^(d/3) - (2e)^(1/3) (d + 1)`; positive exactly where the even-case
/// condition holds for large `d`.
pub fn even_margin(d: f64) -> f64 {
    (d / 3.0).exp2() - (2.0 * E).cbrt() * (d + 1.0)
}

/// `2^((d+1)/4) - e^(1/4) (d + 2)`; the odd-case counterpart.
pub fn odd_margin(d: f64) -> f64 {
    ((d + 1.0) / 4.0).exp2() - E.powf(0.25) * (d + 2.0)
}

fn even_event_log_probability(d: u64) -> f64 {
    ((1 + d) as f64).ln() - (d + 1) as f64 * LN_2
}

fn odd_event_log_probability(d: u64) -> f64 {
    2.0 * ((d + 2) as f64).ln() - (d + 1) as f64 * LN_2
}

/// Even degrees: each vertex's bad event has probability at most
/// `(1 + d) 2^-(d+1)` and depends on at most `4d² + 3` others, so the local
/// lemma needs `e (1 + d) 2^-(d+1) (4d² + 4) < 1`.
pub fn regular_even_lhs(d: u64) -> Result<BoundReport, BoundsError> {
    if d % 2 != 0 || d < 14 {
        return Err(domain(format!("even case needs an even d >= 14, got {d}")));
    }
    let dependency = 4 * d * d + 3;
    let log_p = even_event_log_probability(d);
    let log_value = 1.0 + log_p + ((dependency + 1) as f64).ln();
    Ok(
        BoundReport::from_logs(format!("even lhs d={d}"), log_value, 0.0, Relation::Less)
            .with_extra("event_probability", log_p.exp())
            .with_extra("dependency", dependency as f64)
            .with_extra("margin", even_margin(d as f64)),
    )
}

/// Odd degrees: probability at most `(d + 2)² 2^-(d+1)`, at most
/// `(d + 2)² - 1` dependencies; the condition is
/// `e (d + 2)² 2^-(d+1) (d + 2)² < 1`.
pub fn regular_odd_lhs(d: u64) -> Result<BoundReport, BoundsError> {
    if d % 2 != 1 || d < 19 {
        return Err(domain(format!("odd case needs an odd d >= 19, got {d}")));
    }
    let dependency = (d + 2) * (d + 2) - 1;
    let log_p = odd_event_log_probability(d);
    let log_value = 1.0 + log_p + ((dependency + 1) as f64).ln();
    Ok(
        BoundReport::from_logs(format!("odd lhs d={d}"), log_value, 0.0, Relation::Less)
            .with_extra("event_probability", log_p.exp())
            .with_extra("dependency", dependency as f64)
            .with_extra("margin", odd_margin(d as f64)),
    )
}

/// Chernoff tails for `BIN(n, p)`: `value` is the upper-tail bound
/// `exp(-t² / 3np)` on `Pr(X > np + t)`; `extras["lower_tail"]` is
/// `exp(-t² / 2np)` on `Pr(X < np - t)`.
pub fn chernoff_upper(n: u64, p: f64, t: f64) -> Result<BoundReport, BoundsError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(domain(format!("probability {p} outside (0, 1]")));
    }
    let mean = n as f64 * p;
    if !(0.0..=mean).contains(&t) {
        return Err(domain(format!("deviation {t} outside [0, np = {mean}]")));
    }
    let upper = -t * t / (3.0 * mean);
    let lower = -t * t / (2.0 * mean);
    Ok(
        BoundReport::from_logs(format!("chernoff n={n} p={p} t={t}"), upper, 0.0, Relation::LessEq)
            .with_extra("lower_tail", lower.exp())
            .with_extra("log_lower_tail", lower),
    )
}

/// Chernoff bound on the edge-subset bad event at a vertex of degree `d`:
/// `Pr(BIN(d, (δ-1)/δ) < t + 1)`. The bound is reported as 1 when
/// `t + 1` is not below the mean.
pub fn subset_event_bound(d: u64, delta: u64, t: u64) -> Result<BoundReport, BoundsError> {
    if delta < 2 {
        return Err(domain(format!("delta {delta} must be at least 2")));
    }
    if t + 1 > d {
        return Err(domain(format!("t + 1 = {} exceeds d = {d}", t + 1)));
    }
    let mean = d as f64 * (delta - 1) as f64 / delta as f64;
    let gap = mean - (t + 1) as f64;
    let log_value = if gap > 0.0 { -gap * gap / (2.0 * mean) } else { 0.0 };
    Ok(
        BoundReport::from_logs(format!("subset event d={d} delta={delta} t={t}"), log_value, 0.0, Relation::Less)
            .with_extra("mean", mean)
            .with_extra("vacuous", f64::from(u8::from(gap <= 0.0))),
    )
}

/// The subset event bound at the full-scale constants
/// (`d = δ = t + m`, `t = 10^10`, `m = 10^8`) against `exp(-2·10^-7 d)`.
pub fn full_scale_subset_check() -> BoundReport {
    let d = PAPER_T + PAPER_M;
    let bound = subset_event_bound(d, d, PAPER_T).expect("constants are in range");
    let mean = bound.extras["mean"];
    // Intermediate step: t + 1 <= (1 - 10^-3) · mean.
    let relaxed = -(mean * 1e-3).powi(2) / (2.0 * mean);
    BoundReport::from_logs("subset event at full scale", bound.log_value, -2e-7 * d as f64, Relation::Less)
        .with_extra("log_relaxed", relaxed)
        .with_extra("relaxed_applies", f64::from(u8::from((PAPER_T + 1) as f64 <= (1.0 - 1e-3) * mean)))
}

/// General local lemma condition at the full-scale constants with
/// `x_v = exp(-10^-7 d)` and at most `δ d` dependencies per event:
/// `x_v (1 - exp(-10^-7 δ))^(δ d) > exp(-2·10^-7 d)`, for a vertex of degree
/// `d >= δ`.
pub fn general_lll_check(d: u64, delta: u64) -> Result<BoundReport, BoundsError> {
    if d < delta || delta == 0 {
        return Err(domain(format!("need d >= delta >= 1, got d = {d}, delta = {delta}")));
    }
    let (d, delta) = (d as f64, delta as f64);
    let log_factor = (-(-1e-7 * delta).exp()).ln_1p();
    let log_value = -1e-7 * d + delta * d * log_factor;
    let log_event = full_scale_event_log(d, delta);
    Ok(
        BoundReport::from_logs(format!("general lll d={d:e} delta={delta:e}"), log_value, -2e-7 * d, Relation::Greater)
            .with_extra("log_event_bound", log_event)
            .with_extra("event_below_lhs", f64::from(u8::from(log_event < log_value))),
    )
}

fn full_scale_event_log(d: f64, delta: f64) -> f64 {
    let mean = d * (delta - 1.0) / delta;
    let gap = mean - (PAPER_T + 1) as f64;
    if gap > 0.0 {
        -gap * gap / (2.0 * mean)
    } else {
        0.0
    }
}

/// Published values reproduced by the checks above.
pub fn published_value_checks() -> Vec<BoundReport> {
    let even14 = regular_even_lhs(14).expect("in range");
    vec![
        BoundReport::from_values("even lhs d=14 vs published", even14.value, 0.9805, Relation::Approx),
        BoundReport::from_values("margin f(16) vs published", even_margin(16.0), 10.4253, Relation::Approx),
        BoundReport::from_values("margin g(19) vs published", odd_margin(19.0), 5.0355, Relation::Approx),
    ]
}

/// The default certificate set.
pub fn default_certificates() -> Vec<BoundReport> {
    let mut reports = published_value_checks();
    reports.push(regular_even_lhs(14).expect("in range"));
    reports.push(regular_even_lhs(16).expect("in range"));
    reports.push(BoundReport::from_values("margin f(16) > 0", even_margin(16.0), 0.0, Relation::Greater));
    reports.push(regular_odd_lhs(19).expect("in range"));
    reports.push(regular_odd_lhs(21).expect("in range"));
    reports.push(BoundReport::from_values("margin g(19) > 0", odd_margin(19.0), 0.0, Relation::Greater));
    reports.push(BoundReport::from_values(
        "margin g(21) > g(19)",
        odd_margin(21.0),
        odd_margin(19.0),
        Relation::Greater,
    ));
    for d in [14u64, 16] {
        let p = even_event_log_probability(d).exp();
        reports.push(lll_symmetric_check(p, 4 * d * d + 3).expect("in range"));
    }
    reports.push(chernoff_upper(100, 0.5, 10.0).expect("in range"));
    reports.push(subset_event_bound(30, 12, 3).expect("in range"));
    reports.push(full_scale_subset_check());
    let full = PAPER_T + PAPER_M;
    reports.push(general_lll_check(full, full).expect("in range"));
    reports
}

/// Even-case rows for every even `d` in `from..=to` (clamped to `d >= 14`).
pub fn even_range(from: u64, to: u64) -> Vec<BoundReport> {
    (from.max(14)..=to)
        .filter(|d| d % 2 == 0)
        .map(|d| regular_even_lhs(d).expect("in range"))
        .collect()
}

/// Odd-case rows for every odd `d` in `from..=to` (clamped to `d >= 19`).
pub fn odd_range(from: u64, to: u64) -> Vec<BoundReport> {
    (from.max(19)..=to)
        .filter(|d| d % 2 == 1)
        .map(|d| regular_odd_lhs(d).expect("in range"))
        .collect()
}

pub fn format_table(reports: &[BoundReport]) -> String {
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        let value = if r.value == 0.0 || !r.value.is_finite() {
            format!("exp({:.6e})", r.log_value)
        } else if r.value.abs() < 1e-3 {
            format!("{:.6e}", r.value)
        } else {
            format!("{:.6}", r.value)
        };
        let threshold = if r.threshold == 0.0 && r.log_threshold.is_finite() {
            format!("exp({:.6e})", r.log_threshold)
        } else {
            format!("{:.6}", r.threshold)
        };
        writeln!(
            out,
            "{:<width$}  {:>18} {} {:<18} {}",
            r.name,
            value,
            r.relation,
            threshold,
            if r.satisfied { "ok" } else { "FAIL" }
        )
        .unwrap();
    }
    out
}
