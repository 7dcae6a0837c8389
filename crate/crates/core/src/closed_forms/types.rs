//! Parameter types shared by every module: the extended exponent `p`,
//! the pair `(m, p)`, and the mixed-sum exponent derived from them.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The exponent of an ℓ_p norm: a finite real or the symbolic value ∞.
///
/// Infinity is first-class rather than a large float so that the limiting
/// formulas (max norm, Bohnenblust–Hille exponent, exact extreme-point
/// norms) are evaluated exactly instead of through a precision cliff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn is_infinite(self) -> bool {
        matches!(self, PExponent::Infinity)
    }

    /// The value as an `f64`, mapping ∞ to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            PExponent::Finite(p) => p,
            PExponent::Infinity => f64::INFINITY,
        }
    }

    /// Conjugate exponent p/(p−1), with ∞ ↦ 1 and 1 ↦ ∞.
    pub fn dual(self) -> Result<PExponent> {
        match self {
            PExponent::Infinity => Ok(PExponent::Finite(1.0)),
            PExponent::Finite(p) => {
                if p == 1.0 {
                    Ok(PExponent::Infinity)
                } else if p > 1.0 {
                    Ok(PExponent::Finite(p / (p - 1.0)))
                } else {
                    Err(Error::domain(format!(
                        "dual exponent undefined for p = {p} (need p >= 1)"
                    )))
                }
            }
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(PExponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::parse(format!("invalid exponent {t:?}")))?;
        if !p.is_finite() {
            return Ok(PExponent::Infinity);
        }
        Ok(PExponent::Finite(p))
    }
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PExponent::Finite(p) => ser.serialize_f64(*p),
            PExponent::Infinity => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct PVisitor;

        impl Visitor<'_> for PVisitor {
            type Value = PExponent;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<PExponent, E> {
                if v.is_finite() {
                    Ok(PExponent::Finite(v))
                } else {
                    Ok(PExponent::Infinity)
                }
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<PExponent, E> {
                Ok(PExponent::Finite(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<PExponent, E> {
                Ok(PExponent::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<PExponent, E> {
                v.parse().map_err(|e| E::custom(format!("{e}")))
            }
        }

        de.deserialize_any(PVisitor)
    }
}

/// The admissible pair (m, p): arity m ≥ 2 and exponent p ≥ 2m (or ∞).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HlParams {
    m: u32,
    p: PExponent,
}

impl HlParams {
    pub fn new(m: u32, p: PExponent) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain(format!("arity m = {m} must be at least 2")));
        }
        if let PExponent::Finite(pf) = p {
            if !pf.is_finite() || pf.is_nan() {
                return Err(Error::domain("p must be a finite number or inf"));
            }
            let min = 2.0 * f64::from(m);
            if pf < min {
                return Err(Error::domain(format!(
                    "p = {pf} must be at least 2m = {min} for m = {m}"
                )));
            }
        }
        Ok(HlParams { m, p })
    }

    pub fn m(self) -> u32 {
        self.m
    }

    pub fn p(self) -> PExponent {
        self.p
    }
}

/// The mixed-sum exponent ρ = 2mp/(mp+p−2m) together with its conjugate.
///
/// ρ ∈ (1, 2]: it equals 2 exactly at p = 2m and decreases to 2m/(m+1)
/// as p → ∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponent {
    pub rho: f64,
    pub dual_rho: f64,
}

impl Exponent {
    pub(crate) fn from_rho(rho: f64) -> Self {
        Exponent {
            rho,
            dual_rho: rho / (rho - 1.0),
        }
    }
}
