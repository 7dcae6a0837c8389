//! Numeric output at a fixed 15 significant digits.
//!
//! All emitted values are first rounded to 15 significant decimal
//! digits and then printed in the shortest form that parses back to the
//! same float. Rounding to 15 digits is idempotent and survives a
//! parse/emit cycle byte for byte, which is what makes report files
//! reproducible.

/// Round to 15 significant decimal digits.
pub fn round_sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("scientific notation parses")
}

/// Shortest representation of the 15-digit rounding of `x`.
pub fn format_sig15(x: f64) -> String {
    format!("{}", round_sig15(x))
}
