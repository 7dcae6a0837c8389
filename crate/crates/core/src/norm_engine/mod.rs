//! Operator-norm brackets for multilinear forms on products of p-spheres.
//!
//! Four routes produce estimates, each tagged with how it was obtained:
//!
//! * a certified grid-plus-Lipschitz enclosure for the bilinear seed at
//!   finite p ≥ 4 ([`certified_bilinear_upper`]);
//! * exact extreme-point enumeration at p = ∞ ([`norm_exact_linf`]);
//! * an alternating-ascent lower bound for any form and p
//!   ([`norm_lower_alternating`]);
//! * two combiners: the arity-recursion bound ‖T_m‖ ≤ 2^{m−2}·‖T₂‖
//!   ([`lift_bilinear_upper`]) and two-endpoint interpolation
//!   ([`norm_upper_interpolation`]). The interpolation route assumes an
//!   interpolation theorem for real scalars with constant 1 — an open
//!   hypothesis, and demonstrably false for this operator family at
//!   p = 6 — so its estimates carry `conditional = true` and are never
//!   marked certified.

mod ascent;
mod charts;
mod extreme;

pub use ascent::{
    ascent_run, norm_lower_alternating, AscentRun, DEFAULT_ASCENT_MAX_ITERS,
    DEFAULT_ASCENT_RESTARTS, DEFAULT_ASCENT_TOL,
};
pub use charts::{
    certified_bilinear_upper, eval_f, eval_fg_p, eval_g, sample_plot_series, PlotRow, PlotSeries,
};
pub use extreme::norm_exact_linf;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::closed_forms::BILINEAR_NORM_BOUND;
use crate::error::{Error, Result};

/// How a bound was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Sphere-chart grid sweep with a Lipschitz margin.
    GridEnclosure,
    /// Exact enumeration of ±1 extreme points (p = ∞).
    ExtremePoints,
    /// Multistart alternating ascent (lower bounds only).
    AlternatingAscent,
    /// Two-endpoint interpolation (conditional).
    Interpolation,
    /// Recursion combiner applied to a grid enclosure.
    RecursionGridEnclosure,
    /// Recursion combiner applied to an extreme-point value.
    RecursionExtremePoints,
    /// Recursion combiner applied to an interpolation bound.
    RecursionInterpolation,
    /// A proven closed-form expression.
    ClosedForm,
    /// The vacuous bound (0 from below).
    Trivial,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::GridEnclosure => "grid_enclosure",
            Method::ExtremePoints => "extreme_points",
            Method::AlternatingAscent => "alternating_ascent",
            Method::Interpolation => "interpolation",
            Method::RecursionGridEnclosure => "recursion(grid_enclosure)",
            Method::RecursionExtremePoints => "recursion(extreme_points)",
            Method::RecursionInterpolation => "recursion(interpolation)",
            Method::ClosedForm => "closed_form",
            Method::Trivial => "trivial",
        }
    }

    fn lifted(self) -> Method {
        match self {
            Method::GridEnclosure => Method::RecursionGridEnclosure,
            Method::ExtremePoints => Method::RecursionExtremePoints,
            Method::Interpolation => Method::RecursionInterpolation,
            other => other,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "grid_enclosure" => Method::GridEnclosure,
            "extreme_points" => Method::ExtremePoints,
            "alternating_ascent" => Method::AlternatingAscent,
            "interpolation" => Method::Interpolation,
            "recursion(grid_enclosure)" => Method::RecursionGridEnclosure,
            "recursion(extreme_points)" => Method::RecursionExtremePoints,
            "recursion(interpolation)" => Method::RecursionInterpolation,
            "closed_form" => Method::ClosedForm,
            "trivial" => Method::Trivial,
            other => return Err(Error::parse(format!("unknown method tag {other:?}"))),
        })
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A bracket around an operator norm.
///
/// `certified_upper` marks uppers produced by an enclosure, exact
/// enumeration, or a proven combiner applied to certified inputs.
/// `conditional` marks estimates that rest on the unproven constant-1
/// real-scalar interpolation hypothesis; such estimates are reported but
/// never treated as certified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub lower: f64,
    pub upper: f64,
    pub method_lower: Method,
    pub method_upper: Method,
    pub certified_upper: bool,
    pub conditional: bool,
}

impl NormEstimate {
    pub(crate) fn new(
        lower: f64,
        upper: f64,
        method_lower: Method,
        method_upper: Method,
        certified_upper: bool,
        conditional: bool,
    ) -> Self {
        debug_assert!(lower <= upper, "inverted bracket [{lower}, {upper}]");
        NormEstimate {
            lower,
            upper,
            method_lower,
            method_upper,
            certified_upper,
            conditional,
        }
    }

    /// An exact value (width-zero bracket) from extreme-point
    /// enumeration.
    pub fn exact(value: f64) -> Self {
        NormEstimate::new(
            value,
            value,
            Method::ExtremePoints,
            Method::ExtremePoints,
            true,
            false,
        )
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Lift a bilinear-seed estimate to the arity-m member of the family:
/// ‖T_m‖ ≤ 2^{m−2}·‖T₂‖.
///
/// The upper bound scales by 2^{m−2}; the lower bound carries over
/// unscaled, because pinning the last m−2 slots to e₁ and restricting
/// the first two slots to the leading block reproduces the seed inside
/// the arity-m member. Certification and conditionality are inherited.
pub fn lift_bilinear_upper(m: u32, seed: &NormEstimate) -> Result<NormEstimate> {
    if m < 2 {
        return Err(Error::domain(format!("lift needs arity >= 2, got {m}")));
    }
    if m == 2 {
        return Ok(seed.clone());
    }
    let scale = 2f64.powi(m as i32 - 2);
    Ok(NormEstimate::new(
        seed.lower,
        scale * seed.upper,
        seed.method_lower,
        seed.method_upper.lifted(),
        seed.certified_upper,
        seed.conditional,
    ))
}

/// Interpolated upper bound 1.74^{4/p} · 2^{(p−4)/p} for the bilinear
/// seed at finite p > 4, with θ = (p−4)/p.
///
/// Conditional: it presumes interpolation between the p = 4 and p = ∞
/// endpoints with constant 1 over real scalars, which is unproven (and
/// this crate's own ascent bounds exceed the formula at p = 6). The
/// estimate is therefore flagged `conditional` and not certified.
pub fn norm_upper_interpolation(p: f64) -> Result<NormEstimate> {
    if !p.is_finite() || p <= 4.0 {
        return Err(Error::domain(format!(
            "interpolation bound is defined for finite p > 4, got {p}"
        )));
    }
    let theta = (p - 4.0) / p;
    let upper = BILINEAR_NORM_BOUND.powf(4.0 / p) * 2f64.powf(theta);
    Ok(NormEstimate::new(
        0.0,
        upper,
        Method::Trivial,
        Method::Interpolation,
        false,
        true,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::PExponent;
    use crate::forms::{bilinear_seed, extremal_form};
    use approx::assert_relative_eq;

    #[test]
    fn method_tags_roundtrip() {
        for m in [
            Method::GridEnclosure,
            Method::ExtremePoints,
            Method::AlternatingAscent,
            Method::Interpolation,
            Method::RecursionGridEnclosure,
            Method::RecursionExtremePoints,
            Method::RecursionInterpolation,
            Method::ClosedForm,
            Method::Trivial,
        ] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }

    #[test]
    fn interpolation_values() {
        // θ = 1/2 gives the geometric mean √(1.74·2).
        assert_relative_eq!(
            norm_upper_interpolation(8.0).unwrap().upper,
            1.8654758106177630091,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            norm_upper_interpolation(6.0).unwrap().upper,
            1.8226760937855343516,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            norm_upper_interpolation(16.0).unwrap().upper,
            1.9315671412704053395,
            max_relative = 1e-15
        );
        // Endpoints: θ → 1 approaches 2, θ → 0 approaches 1.74.
        assert_relative_eq!(
            norm_upper_interpolation(1e9).unwrap().upper,
            2.0,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            norm_upper_interpolation(4.0 + 1e-9).unwrap().upper,
            BILINEAR_NORM_BOUND,
            max_relative = 1e-7
        );
        assert!(norm_upper_interpolation(4.0).is_err());
        assert!(norm_upper_interpolation(f64::INFINITY).is_err());
    }

    #[test]
    fn interpolation_is_conditional_and_uncertified() {
        let est = norm_upper_interpolation(6.0).unwrap();
        assert!(est.conditional);
        assert!(!est.certified_upper);
    }

    // The constant-1 hypothesis fails for this family: the ascent lower
    // bound at p = 6 exceeds the interpolated "upper" bound. This is the
    // reason conditional estimates never enter certified best bounds.
    #[test]
    fn ascent_exceeds_conditional_interpolation_at_p6() {
        let t2 = bilinear_seed();
        let ascent =
            norm_lower_alternating(&t2, PExponent::Finite(6.0), 16, 1e-12, 7).unwrap();
        let interp = norm_upper_interpolation(6.0).unwrap();
        assert!(
            ascent > interp.upper + 1e-2,
            "ascent {ascent} vs conditional upper {}",
            interp.upper
        );
        // ...while the unconditional enclosure does contain it.
        let certified = certified_bilinear_upper(6.0, 1e-6).unwrap();
        assert!(ascent <= certified.upper);
    }

    #[test]
    fn lift_scales_upper_and_keeps_flags() {
        let seed = NormEstimate::new(
            1.7,
            1.7331,
            Method::GridEnclosure,
            Method::GridEnclosure,
            true,
            false,
        );
        let same = lift_bilinear_upper(2, &seed).unwrap();
        assert_eq!(same, seed);
        let m3 = lift_bilinear_upper(3, &seed).unwrap();
        assert_relative_eq!(m3.upper, 3.4662, max_relative = 1e-15);
        assert_eq!(m3.lower, 1.7);
        assert_eq!(m3.method_upper, Method::RecursionGridEnclosure);
        assert!(m3.certified_upper);
        let m4 = lift_bilinear_upper(4, &NormEstimate::exact(2.0)).unwrap();
        assert_eq!(m4.upper, 8.0);
        assert_eq!(m4.method_upper, Method::RecursionExtremePoints);
        assert!(lift_bilinear_upper(1, &seed).is_err());

        let cond = lift_bilinear_upper(3, &norm_upper_interpolation(8.0).unwrap()).unwrap();
        assert!(cond.conditional);
        assert!(!cond.certified_upper);
        assert_eq!(cond.method_upper, Method::RecursionInterpolation);
    }

    // Cross-method ordering on the seed: ascent stays inside every
    // certified bracket.
    #[test]
    fn ascent_within_certified_brackets() {
        let t2 = bilinear_seed();
        for p in [4.0, 6.0, 10.0] {
            let enc = certified_bilinear_upper(p, 1e-5).unwrap();
            let low = norm_lower_alternating(&t2, PExponent::Finite(p), 8, 1e-11, 3).unwrap();
            assert!(low <= enc.upper, "p={p}: {low} > {}", enc.upper);
            assert!(enc.lower <= low + 1e-7, "p={p}: grid {} above ascent {low}", enc.lower);
        }
        let exact = norm_exact_linf(&t2).unwrap();
        let low = norm_lower_alternating(&t2, PExponent::Infinity, 8, 1e-11, 3).unwrap();
        assert!(low <= exact + 1e-12);
        assert!(exact - low <= 1e-9);
    }

    // Arity-3 member at p = ∞: the recursion combiner is tight there.
    #[test]
    fn recursion_bound_at_infinity_is_attained() {
        let t3 = extremal_form(3).unwrap();
        let exact3 = norm_exact_linf(&t3).unwrap();
        let exact2 = norm_exact_linf(&bilinear_seed()).unwrap();
        assert_eq!(exact3, 4.0);
        assert!(exact3 <= 2.0 * exact2 + 1e-12);
    }
}
