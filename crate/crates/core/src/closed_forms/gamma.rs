//! Gamma function on the positive reals.
//!
//! Lanczos approximation with g = 7 and the nine coefficients published in
//! the GNU Scientific Library. On [0.5, 50] the relative error of the
//! double-precision evaluation is below 1e−13, comfortably inside the
//! 1e−12 budget the closed-form upper bounds need.

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

// GSL's nine-term coefficient set for g = 7.
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("gamma requires x > 0, got {x}")));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection keeps the series argument at 0.5 or above.
        return std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}
