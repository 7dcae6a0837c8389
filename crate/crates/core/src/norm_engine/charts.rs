//! The bilinear seed's norm as a one-dimensional problem, and its
//! certified enclosure.
//!
//! Dualizing one slot shows that the seed's norm on ℓ_p² × ℓ_p² is
//!
//! ```text
//! sup { ‖(x₁+x₂, x₁−x₂)‖_{p*} : ‖(x₁, x₂)‖_p = 1 },   p* = p/(p−1),
//! ```
//!
//! and sign flips of either coordinate only permute/flip the two
//! components, so the supremum lives on the nonnegative quarter of the
//! sphere. That quarter is covered by two charts split at the symmetric
//! point 2^{−1/p}, each parameterized by the smaller coordinate
//! t ∈ [0, 2^{−1/p}]; there the implicit coordinate (1−t^p)^{1/p} has
//! derivative of magnitude at most 1 (its derivative blows up only past
//! the split, which is why a single chart over [0, 1] would not admit a
//! Lipschitz margin). Swapping the two coordinates leaves the objective
//! unchanged, so the two charts trace the same values and one sweep of
//! the shared chart function covers both.
//!
//! The enclosure is a uniform grid over the chart with the crude margin
//! L·2h, L = 4: the objective z ↦ ‖Mz‖_{p*} with rows (1,1), (1,−1)
//! satisfies ‖Mz‖_{p*} ≤ ‖Mz‖₁ ≤ 2‖z‖₁ ≤ 4‖z‖_p, and a chart step of h
//! moves z by at most h in each coordinate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::format_sig15;
use crate::norm_engine::{Method, NormEstimate};

/// Crude Lipschitz constant of the chart objective.
const CHART_LIPSCHITZ: f64 = 4.0;

/// Most grid points a single enclosure sweep may use.
const CHART_POINT_CAP: usize = 1 << 26;

fn check_unit_interval(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} outside [0, 1]")));
    }
    Ok(())
}

fn check_chart_p(p: f64) -> Result<f64> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::domain(format!(
            "chart functions need a finite p > 1, got {p}"
        )));
    }
    Ok(p / (p - 1.0))
}

fn combine(a: f64, b: f64, pstar: f64) -> f64 {
    (a.abs().powf(pstar) + b.abs().powf(pstar)).powf(1.0 / pstar)
}

/// First chart restriction at p = 4:
/// ((x+(1−x⁴)^{1/4})^{4/3} + ((1−x⁴)^{1/4}−x)^{4/3})^{3/4}.
///
/// Natural domain [0, 2^{−1/4}]; on the rest of [0, 1] the second base
/// goes negative and is read through the absolute value the supremum
/// formula carries.
pub fn eval_f(x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    let y = (1.0 - x.powf(4.0)).powf(0.25);
    Ok(combine(x + y, y - x, 4.0 / 3.0))
}

/// Second chart restriction at p = 4: same expression with the
/// difference oriented as x − (1−x⁴)^{1/4}. Natural domain
/// [2^{−1/4}, 1]; the absolute value makes it agree with [`eval_f`]
/// everywhere on [0, 1].
pub fn eval_g(x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    let y = (1.0 - x.powf(4.0)).powf(0.25);
    Ok(combine(x + y, x - y, 4.0 / 3.0))
}

/// The chart objective for the general seed family:
/// ‖(x+y, x−y)‖_{p*} with y = (1−x^p)^{1/p}, for x ∈ [0, 1].
pub fn eval_fg_p(x: f64, p: f64) -> Result<f64> {
    check_unit_interval(x)?;
    let pstar = check_chart_p(p)?;
    let y = (1.0 - x.powf(p)).powf(1.0 / p);
    Ok(combine(x + y, x - y, pstar))
}

/// Certified bracket for the bilinear seed's norm at finite p ≥ 4.
///
/// Sweeps the chart grid with step h chosen so the margin L·2h stays
/// within `target_gap`; returns lower = best grid value and
/// upper = lower + margin. The bracket contains the true norm and its
/// width never exceeds `target_gap`.
pub fn certified_bilinear_upper(p: f64, target_gap: f64) -> Result<NormEstimate> {
    if !p.is_finite() || p < 4.0 {
        return Err(Error::domain(format!(
            "certified enclosure covers finite p >= 4, got {p}"
        )));
    }
    if !(target_gap > 0.0) || !target_gap.is_finite() {
        return Err(Error::domain(format!("target gap must be positive, got {target_gap}")));
    }
    let pstar = p / (p - 1.0);
    let split = 2f64.powf(-1.0 / p);
    let h = target_gap / (2.0 * CHART_LIPSCHITZ);
    let n = (split / h).ceil() as usize;
    if n > CHART_POINT_CAP {
        return Err(Error::CertificationFailed(format!(
            "gap {target_gap} needs {n} grid points per chart, cap is {CHART_POINT_CAP}"
        )));
    }
    let n = n.max(1);
    let mut best = 0.0f64;
    for i in 0..=n {
        let t = split * (i as f64) / (n as f64);
        let y = (1.0 - t.powf(p)).powf(1.0 / p);
        let v = combine(t + y, y - t, pstar);
        if v > best {
            best = v;
        }
    }
    let margin = 2.0 * CHART_LIPSCHITZ * (split / n as f64);
    Ok(NormEstimate::new(
        best,
        best + margin,
        Method::GridEnclosure,
        Method::GridEnclosure,
        true,
        false,
    ))
}

/// One sampled row of the chart functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub x: f64,
    pub f: f64,
    pub g: f64,
}

/// Sampled chart functions over [0, 1], with the split point 2^{−1/p}
/// always included as a row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSeries {
    pub p: f64,
    pub split: f64,
    pub rows: Vec<PlotRow>,
}

/// Sample the chart functions at `samples`+1 equispaced points of
/// [0, 1] plus the split point.
pub fn sample_plot_series(p: f64, samples: usize) -> Result<PlotSeries> {
    check_chart_p(p)?;
    if samples == 0 {
        return Err(Error::domain("need at least one sample interval"));
    }
    let split = 2f64.powf(-1.0 / p);
    let mut xs: Vec<f64> = (0..=samples).map(|i| i as f64 / samples as f64).collect();
    if !xs.contains(&split) {
        xs.push(split);
        xs.sort_by(|a, b| a.partial_cmp(b).expect("grid values are finite"));
    }
    let pstar = p / (p - 1.0);
    let rows = xs
        .into_iter()
        .map(|x| {
            let y = (1.0 - x.powf(p)).powf(1.0 / p);
            PlotRow {
                x,
                f: combine(x + y, y - x, pstar),
                g: combine(x + y, x - y, pstar),
            }
        })
        .collect();
    Ok(PlotSeries { p, split, rows })
}

impl PlotSeries {
    /// CSV with header `x,f,g,domain`; the domain column says which
    /// chart owns the row (`f` below the split, `g` above, `split` at
    /// the split point itself).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,f,g,domain\n");
        for row in &self.rows {
            let domain = if row.x < self.split {
                "f"
            } else if row.x > self.split {
                "g"
            } else {
                "split"
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                format_sig15(row.x),
                format_sig15(row.f),
                format_sig15(row.g),
                domain
            ));
        }
        out
    }
}
