//! Closed-form expressions for the mixed-sum exponent and for the known
//! bounds on the inequality constants C_{m,p} of real m-linear forms on
//! ℓ_p^N.
//!
//! Everything here is a pure formula:
//!
//! * `hl_exponent` — ρ = 2mp/(mp+p−2m), with ρ = 2m/(m+1) at p = ∞;
//! * `lower_bound_base` — C_{m,p} ≥ 2^{(mp+2m−2m²−p)/(mp)}, trivial (= 1)
//!   exactly at p = 2m, and 2^{1−1/m} at p = ∞;
//! * `lower_bound_refined` — the sharper closed form
//!   2^{(mp+(6−4·log₂ 1.74)m−2m²−p)/(mp)}, which folds the certified
//!   bilinear norm bound 1.74 into the exponent. It strictly exceeds the
//!   base bound for every finite p but inherits the interpolation
//!   hypothesis, so reports flag it as conditional;
//! * `known_upper_bound` — the literature upper bounds with their Gamma
//!   products, branching at m = 13/14 for real scalars.

mod gamma;
mod types;

pub use gamma::gamma;
pub use types::{Exponent, HlParams, PExponent};

use crate::error::{Error, Result};

/// The certified bilinear norm bound at p = 4, stored as the exact
/// rational 174/100: the closed forms use the literal constant, not an
/// approximation of anything.
pub const BILINEAR_NORM_BOUND: f64 = 174.0 / 100.0;

/// Scalar field a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarField {
    Real,
    Complex,
}

/// Mixed-sum exponent ρ = 2mp/(mp+p−2m) and its conjugate ρ/(ρ−1).
///
/// At p = 2m this is exactly 2; as p → ∞ it decreases to 2m/(m+1).
pub fn hl_exponent(params: HlParams) -> Exponent {
    let m = f64::from(params.m());
    let rho = match params.p() {
        PExponent::Finite(p) => 2.0 * m * p / (m * p + p - 2.0 * m),
        PExponent::Infinity => 2.0 * m / (m + 1.0),
    };
    Exponent::from_rho(rho)
}

/// Conjugate exponent q/(q−1) for q ∈ (1, ∞]; the conjugate of ∞ is 1.
pub fn dual_exponent(q: f64) -> Result<f64> {
    if q.is_nan() {
        return Err(Error::domain("dual exponent undefined for NaN"));
    }
    if q.is_infinite() && q > 0.0 {
        return Ok(1.0);
    }
    if q <= 1.0 {
        return Err(Error::domain(format!(
            "dual exponent undefined for q = {q} (need q > 1)"
        )));
    }
    Ok(q / (q - 1.0))
}

/// Baseline closed-form lower bound 2^{(mp+2m−2m²−p)/(mp)} on C_{m,p}.
///
/// Equals 1 exactly at p = 2m (no information there) and 2^{1−1/m} at
/// p = ∞. The exponent is assembled from exactly representable integers,
/// so the p = 2m case really returns 1.0.
pub fn lower_bound_base(params: HlParams) -> f64 {
    let m = f64::from(params.m());
    let e = match params.p() {
        PExponent::Finite(p) => (m * p + 2.0 * m - 2.0 * m * m - p) / (m * p),
        PExponent::Infinity => (m - 1.0) / m,
    };
    2f64.powf(e)
}

/// Refined closed-form lower bound 2^{(mp+(6−4·log₂ 1.74)m−2m²−p)/(mp)}.
///
/// Defined for finite p only. Strictly larger than `lower_bound_base`
/// for every admissible finite p (because 6 − 4·log₂ 1.74 > 2), and it
/// increases monotonically to 2^{1−1/m} from below as p → ∞.
pub fn lower_bound_refined(params: HlParams) -> Result<f64> {
    let PExponent::Finite(p) = params.p() else {
        return Err(Error::domain(
            "refined lower bound is a finite-p formula; use lower_bound_base at p = inf",
        ));
    };
    if p < 4.0 {
        return Err(Error::domain(format!(
            "refined lower bound requires p >= 4, got {p}"
        )));
    }
    let m = f64::from(params.m());
    let c = 6.0 - 4.0 * BILINEAR_NORM_BOUND.log2();
    let e = (m * p + c * m - 2.0 * m * m - p) / (m * p);
    Ok(2f64.powf(e))
}

/// Known closed-form upper bound for C_{m,p} in the chosen scalar field.
///
/// The real-scalar formula branches: 2 ≤ m ≤ 13 uses the product of
/// 2^{1/(2j−2)}, m ≥ 14 the Gamma-quotient product. Finite p ≥ 2m is the
/// native regime; p = ∞ is served by the limit, where the first factor
/// collapses to 1 and the product keeps full weight.
pub fn known_upper_bound(params: HlParams, field: ScalarField) -> Result<f64> {
    let m = params.m();
    let mf = f64::from(m);
    // Exponents of the two factors: 2m(m−1)/p and (p−2m)/p.
    let (e1, e2) = match params.p() {
        PExponent::Finite(p) => (2.0 * mf * (mf - 1.0) / p, (p - 2.0 * mf) / p),
        PExponent::Infinity => (0.0, 1.0),
    };
    let (base, product) = match field {
        ScalarField::Complex => {
            let mut prod = 1.0;
            for j in 2..=m {
                let jf = f64::from(j);
                prod *= gamma(2.0 - 1.0 / jf)?.powf(jf / (2.0 - 2.0 * jf));
            }
            (2.0 / std::f64::consts::PI.sqrt(), prod)
        }
        ScalarField::Real if m <= 13 => {
            let mut prod = 1.0;
            for j in 2..=m {
                let jf = f64::from(j);
                prod *= 2f64.powf(1.0 / (2.0 * jf - 2.0));
            }
            (std::f64::consts::SQRT_2, prod)
        }
        ScalarField::Real => {
            let mut prod = 2f64.powf(446381.0 / 55440.0 - mf / 2.0);
            let sqrt_pi = std::f64::consts::PI.sqrt();
            for j in 14..=m {
                let jf = f64::from(j);
                prod *= (gamma(1.5 - 1.0 / jf)? / sqrt_pi).powf(jf / (2.0 - 2.0 * jf));
            }
            (std::f64::consts::SQRT_2, prod)
        }
    };
    Ok(base.powf(e1) * product.powf(e2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(m: u32, p: PExponent) -> HlParams {
        HlParams::new(m, p).unwrap()
    }

    #[test]
    fn exponent_examples() {
        // p = 2m forces ρ = 2 exactly.
        assert_eq!(hl_exponent(params(2, PExponent::Finite(4.0))).rho, 2.0);
        for m in 2..=10 {
            let e = hl_exponent(params(m, PExponent::Finite(2.0 * f64::from(m))));
            assert_eq!(e.rho, 2.0);
            assert_eq!(e.dual_rho, 2.0);
        }
        // Limiting exponent 2m/(m+1).
        assert_relative_eq!(
            hl_exponent(params(2, PExponent::Infinity)).rho,
            4.0 / 3.0,
            max_relative = 1e-15
        );
        // 2·2·8/(16+8−4) = 32/20.
        assert_relative_eq!(
            hl_exponent(params(2, PExponent::Finite(8.0))).rho,
            1.6,
            max_relative = 1e-15
        );
    }

    #[test]
    fn exponent_strictly_decreasing_in_p() {
        for m in 2..=10u32 {
            let mf = f64::from(m);
            let mut prev = hl_exponent(params(m, PExponent::Finite(2.0 * mf))).rho;
            assert_eq!(prev, 2.0);
            for p in [2.0 * mf + 0.5, 3.0 * mf, 4.0 * mf, 100.0 * mf, 1e6 * mf] {
                let rho = hl_exponent(params(m, PExponent::Finite(p))).rho;
                assert!(rho < prev, "rho not decreasing at m={m}, p={p}");
                prev = rho;
            }
            let limit = hl_exponent(params(m, PExponent::Infinity)).rho;
            assert!(limit < prev);
            assert_relative_eq!(limit, 2.0 * mf / (mf + 1.0), max_relative = 1e-15);
        }
    }

    #[test]
    fn dual_exponent_examples() {
        assert_relative_eq!(dual_exponent(4.0).unwrap(), 4.0 / 3.0, max_relative = 1e-15);
        assert_eq!(dual_exponent(f64::INFINITY).unwrap(), 1.0);
        assert_eq!(dual_exponent(2.0).unwrap(), 2.0);
        assert!(dual_exponent(1.0).is_err());
        assert!(dual_exponent(0.3).is_err());
    }

    #[test]
    fn base_bound_examples() {
        // Exactly 1 at p = 2m.
        assert_eq!(lower_bound_base(params(2, PExponent::Finite(4.0))), 1.0);
        // 2^{1−1/m} at p = ∞.
        assert_relative_eq!(
            lower_bound_base(params(3, PExponent::Infinity)),
            1.5874010519681994748,
            max_relative = 1e-14
        );
        // Exponent (16+4−8−8)/16 = 1/4.
        assert_relative_eq!(
            lower_bound_base(params(2, PExponent::Finite(8.0))),
            1.1892071150027210667,
            max_relative = 1e-14
        );
    }

    #[test]
    fn base_bound_trivial_only_at_extreme_point() {
        for m in 2..=10u32 {
            let mf = f64::from(m);
            assert_eq!(lower_bound_base(params(m, PExponent::Finite(2.0 * mf))), 1.0);
            for p in [2.0 * mf + 1.0, 4.0 * mf, 100.0] {
                if p < 2.0 * mf {
                    continue;
                }
                let v = lower_bound_base(params(m, PExponent::Finite(p)));
                assert!(v > 1.0, "base bound not > 1 at m={m}, p={p}");
            }
        }
    }

    #[test]
    fn refined_bound_examples() {
        // At p = 2m the formula collapses to (2/1.74)^{2/m}; for m = 2
        // that is 2/1.74.
        assert_relative_eq!(
            lower_bound_refined(params(2, PExponent::Finite(4.0))).unwrap(),
            2.0 / BILINEAR_NORM_BOUND,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            lower_bound_refined(params(3, PExponent::Finite(6.0))).unwrap(),
            1.0972876677425333649,
            max_relative = 1e-14
        );
        assert!(lower_bound_refined(params(3, PExponent::Finite(6.0))).unwrap() > 1.0);
        assert!(lower_bound_refined(params(2, PExponent::Infinity)).is_err());
    }

    #[test]
    fn refined_exceeds_base_and_converges_from_below() {
        for m in 2..=10u32 {
            let mf = f64::from(m);
            for p in [2.0 * mf, 2.0 * mf + 2.0, 4.0 * mf, 100.0 * mf] {
                let pr = params(m, PExponent::Finite(p));
                let refined = lower_bound_refined(pr).unwrap();
                assert!(refined > lower_bound_base(pr));
            }
            // 6 − 4·log₂ 1.74 < 2m, so the exponent increases with p and
            // the bound approaches 2^{1−1/m} from below.
            let limit = lower_bound_base(params(m, PExponent::Infinity));
            let mut prev = 0.0;
            for p in [2.0 * mf, 4.0 * mf, 16.0 * mf, 256.0 * mf, 65536.0 * mf] {
                let v = lower_bound_refined(params(m, PExponent::Finite(p))).unwrap();
                assert!(v > prev, "not increasing in p at m={m}, p={p}");
                assert!(v < limit, "not below the p=inf limit at m={m}, p={p}");
                prev = v;
            }
            assert!(limit - prev < 1e-4);
        }
    }

    #[test]
    fn known_upper_examples() {
        // m = 2, p = 4: the product factor has exponent 0, leaving √2.
        assert_relative_eq!(
            known_upper_bound(params(2, PExponent::Finite(4.0)), ScalarField::Real).unwrap(),
            std::f64::consts::SQRT_2,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            known_upper_bound(params(2, PExponent::Finite(4.0)), ScalarField::Complex).unwrap(),
            std::f64::consts::FRAC_2_SQRT_PI,
            max_relative = 1e-13
        );
        // Small-m real branch away from the collapse point.
        assert_relative_eq!(
            known_upper_bound(params(3, PExponent::Finite(8.0)), ScalarField::Real).unwrap(),
            1.9152065613971472939,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            known_upper_bound(params(3, PExponent::Finite(8.0)), ScalarField::Complex).unwrap(),
            1.2592961415259935469,
            max_relative = 1e-13
        );
        // At p = 2m only the first factor survives: (√2)^{m−1}.
        assert_relative_eq!(
            known_upper_bound(params(13, PExponent::Finite(26.0)), ScalarField::Real).unwrap(),
            64.0,
            max_relative = 1e-13
        );
        // Large-m real branch with its Gamma product.
        let v = known_upper_bound(params(14, PExponent::Finite(392.0)), ScalarField::Real)
            .unwrap();
        assert_relative_eq!(v, 3.8394479059396709352, max_relative = 1e-12);
        assert!(v > 1.0 && v.is_finite());
        let v16 = known_upper_bound(params(16, PExponent::Finite(512.0)), ScalarField::Real)
            .unwrap();
        assert_relative_eq!(v16, 4.0694210017246780852, max_relative = 1e-12);
    }

    #[test]
    fn lower_bounds_stay_below_known_upper() {
        for m in 2..=10u32 {
            let mf = f64::from(m);
            for p in [2.0 * mf, 2.0 * mf + 1.0, 4.0 * mf, 100.0] {
                if p < 2.0 * mf {
                    continue;
                }
                let pr = params(m, PExponent::Finite(p));
                let upper = known_upper_bound(pr, ScalarField::Real).unwrap();
                assert!(lower_bound_base(pr) <= upper);
                assert!(lower_bound_refined(pr).unwrap() <= upper);
            }
        }
    }
}
