//! Grid specifications like `m=2..10,p=2m,4m,inf`.
//!
//! The arity range is literal; the p entries are expressions evaluated
//! per m: a number, `inf`, or `[coef]m[^pow]` (`2m`, `m^2`, `10m^2`).
//! Pairs with finite p < 2m are dropped — the admissible regime is tied
//! to m — and duplicates collapse.

use hlbounds::{Error, HlParams, PExponent, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExpr {
    Infinity,
    Constant(f64),
    /// coef · m^pow
    Monomial { coef: f64, pow: u32 },
}

impl PExpr {
    fn parse(s: &str) -> Result<PExpr> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty p expression".into()));
        }
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(PExpr::Infinity);
        }
        if let Some((pre, post)) = s.split_once('m') {
            let coef: f64 = if pre.is_empty() {
                1.0
            } else {
                pre.parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?
            };
            let pow: u32 = if post.is_empty() {
                1
            } else if let Some(exp) = post.strip_prefix('^') {
                exp.parse()
                    .map_err(|_| Error::Parse(format!("bad power in {s:?}")))?
            } else {
                return Err(Error::Parse(format!("bad p expression {s:?}")));
            };
            if coef.is_nan() || coef <= 0.0 || pow == 0 {
                return Err(Error::Parse(format!("p expression {s:?} is not positive")));
            }
            return Ok(PExpr::Monomial { coef, pow });
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad p expression {s:?}")))?;
        Ok(PExpr::Constant(v))
    }

    fn eval(self, m: u32) -> PExponent {
        match self {
            PExpr::Infinity => PExponent::Infinity,
            PExpr::Constant(v) => PExponent::Finite(v),
            PExpr::Monomial { coef, pow } => {
                PExponent::Finite(coef * f64::from(m).powi(pow as i32))
            }
        }
    }
}

/// Parse a grid spec into the admissible (m, p) pairs, ordered by m and
/// then by p with ∞ last.
pub fn parse_grid(spec: &str) -> Result<Vec<HlParams>> {
    let mut m_range: Option<(u32, u32)> = None;
    let mut exprs: Vec<PExpr> = Vec::new();
    let mut in_p = false;
    for segment in spec.split(',') {
        let segment = segment.trim();
        if let Some(rest) = segment.strip_prefix("m=") {
            if m_range.is_some() {
                return Err(Error::Parse("duplicate m range".into()));
            }
            let (lo, hi) = rest
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("m range {rest:?} needs the form a..b")))?;
            let lo: u32 = lo
                .parse()
                .map_err(|_| Error::Parse(format!("bad m start {lo:?}")))?;
            let hi: u32 = hi
                .parse()
                .map_err(|_| Error::Parse(format!("bad m end {hi:?}")))?;
            if lo < 2 || hi < lo {
                return Err(Error::Parse(format!("m range {lo}..{hi} is not valid")));
            }
            m_range = Some((lo, hi));
        } else if let Some(rest) = segment.strip_prefix("p=") {
            in_p = true;
            exprs.push(PExpr::parse(rest)?);
        } else if in_p {
            exprs.push(PExpr::parse(segment)?);
        } else {
            return Err(Error::Parse(format!(
                "unexpected segment {segment:?} before m=..,p=.."
            )));
        }
    }
    let (lo, hi) = m_range.ok_or_else(|| Error::Parse("grid needs an m=a..b range".into()))?;
    if exprs.is_empty() {
        return Err(Error::Parse("grid needs at least one p expression".into()));
    }

    let mut pairs = Vec::new();
    for m in lo..=hi {
        let mut ps: Vec<PExponent> = Vec::new();
        for e in &exprs {
            let p = e.eval(m);
            if let PExponent::Finite(v) = p {
                if v < 2.0 * f64::from(m) {
                    continue;
                }
            }
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
        ps.sort_by(|a, b| a.as_f64().partial_cmp(&b.as_f64()).expect("no NaN here"));
        for p in ps {
            pairs.push(HlParams::new(m, p)?);
        }
    }
    if pairs.is_empty() {
        return Err(Error::Parse(
            "grid is empty after filtering p < 2m".into(),
        ));
    }
    Ok(pairs)
}
