//! Certified lower bounds for the constants of the Hardy–Littlewood
//! inequalities for real scalars.
//!
//! For m ≥ 2 and 2m ≤ p ≤ ∞ there is a smallest constant C_{m,p} ≥ 1
//! such that every continuous m-linear form A on ℓ_p^N × ⋯ × ℓ_p^N
//! satisfies
//!
//! ```text
//! (Σ |A(e_{j₁}, …, e_{j_m})|^ρ)^{1/ρ} ≤ C_{m,p} · ‖A‖,   ρ = 2mp/(mp+p−2m).
//! ```
//!
//! This crate constructs an explicit recursive family of extremal forms,
//! brackets their operator norms on products of p-spheres with certified
//! enclosures, and turns the quotient (mixed coefficient sum) / (norm
//! upper bound) into certified lower bounds for C_{m,p} — strict ones
//! even at the extreme point p = 2m, where the classical closed-form
//! bound degenerates to 1.
//!
//! Module map:
//!
//! * [`closed_forms`] — exponents, the two closed-form lower bounds, the
//!   known upper bounds, and the Gamma function they need.
//! * [`forms`] — sparse multilinear forms and the extremal family.
//! * [`norm_engine`] — certified norm brackets: chart enclosures for the
//!   bilinear family, exact extreme-point enumeration at p = ∞,
//!   alternating-ascent lower bounds, and the combiners.
//! * [`certify`] — the bound reports and the end-to-end verification
//!   that C_{m,p} > 1.
//! * [`oracle`] — independent brute-force checks used by the test suite.

// Validation guards are written `!(x > 0.0)` on purpose: the negation
// rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Frozen reference values keep every digit of the high-precision
// computation they came from; the compiler rounds them once.
#![allow(clippy::excessive_precision)]

pub mod certify;
pub mod closed_forms;
pub mod error;
pub mod fmt;
pub mod forms;
pub mod norm_engine;
pub mod oracle;

pub use certify::{build_report, quotient_lower_bound, verify_nontrivial_constant, BoundReport, ReportOptions};
pub use closed_forms::{
    dual_exponent, gamma, hl_exponent, known_upper_bound, lower_bound_base, lower_bound_refined,
    Exponent, HlParams, PExponent, ScalarField, BILINEAR_NORM_BOUND,
};
pub use error::{Error, Result};
pub use forms::{
    bilinear_seed, extremal_form, extremal_form_with_cap, extremal_hl_sum, lp_norm,
    SparseMultilinearForm, VectorP,
};
pub use norm_engine::{
    certified_bilinear_upper, eval_f, eval_fg_p, eval_g, lift_bilinear_upper,
    norm_exact_linf, norm_lower_alternating, norm_upper_interpolation, sample_plot_series,
    Method, NormEstimate, PlotSeries,
};
