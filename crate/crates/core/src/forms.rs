//! Sparse m-linear forms on products of finite-dimensional ℓ_p spaces,
//! and the recursive extremal family used to drive the lower bounds.
//!
//! The family is seeded by the bilinear form
//!
//! ```text
//! (x, y) ↦ x₁y₁ + x₁y₂ + x₂y₁ − x₂y₂
//! ```
//!
//! and lifted one arity at a time: the arity-m member acts on m copies of
//! ℝ^{2^{m−1}}, combining the previous member on the first half of the
//! coordinates (weighted by x₁⁽ᵐ⁾ + x₂⁽ᵐ⁾) with a disjoint copy shifted
//! by 2^{m−2} (weighted by x₁⁽ᵐ⁾ − x₂⁽ᵐ⁾). The two copies never share an
//! index tuple, so the arity-m member has exactly 4^{m−1} coefficients,
//! all ±1 — which is what makes its mixed ρ-sum computable in closed form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::closed_forms::PExponent;
use crate::error::{Error, Result};

/// Largest arity `extremal_form` accepts by default; the member for
/// arity m stores 4^{m−1} coefficients.
pub const DEFAULT_ARITY_CAP: u32 = 12;

/// ℓ_p norm of a coordinate slice.
pub fn lp_norm(xs: &[f64], p: PExponent) -> f64 {
    match p {
        PExponent::Infinity => xs.iter().fold(0.0, |acc, x| acc.max(x.abs())),
        PExponent::Finite(pf) => xs
            .iter()
            .map(|x| x.abs().powf(pf))
            .sum::<f64>()
            .powf(1.0 / pf),
    }
}

/// A vector carrying the exponent of the norm it is measured in.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorP {
    coords: Vec<f64>,
    p: PExponent,
}

impl VectorP {
    pub fn new(coords: Vec<f64>, p: PExponent) -> Result<Self> {
        if let PExponent::Finite(pf) = p {
            if !(pf >= 1.0) {
                return Err(Error::domain(format!("vector norm needs p >= 1, got {pf}")));
            }
        }
        Ok(VectorP { coords, p })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn p(&self) -> PExponent {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn norm(&self) -> f64 {
        lp_norm(&self.coords, self.p)
    }

    /// Backward shift by k positions: (v_{k+1}, …, v_N, 0, …, 0).
    ///
    /// Shifting by the full length (or more) yields the zero vector.
    pub fn backward_shift(&self, k: usize) -> VectorP {
        let n = self.coords.len();
        let mut out = vec![0.0; n];
        if k < n {
            out[..n - k].copy_from_slice(&self.coords[k..]);
        }
        VectorP {
            coords: out,
            p: self.p,
        }
    }
}

/// An m-linear form stored as a sorted map from 1-based index tuples to
/// nonzero real coefficients.
///
/// Iteration order is the lexicographic order of the index tuples, so
/// every derived artifact (sums, dumps, serialized reports) is
/// deterministic. Dense tensors are never materialized: the extremal
/// family has 4^{m−1} entries inside a (2^{m−1})^m-sized index space.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMultilinearForm {
    dims: Vec<usize>,
    coeffs: BTreeMap<Vec<usize>, f64>,
}

impl SparseMultilinearForm {
    /// Empty form on the given slot dimensions.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::domain("a form needs at least one slot"));
        }
        if dims.contains(&0) {
            return Err(Error::domain("slot dimensions must be positive"));
        }
        Ok(SparseMultilinearForm {
            dims,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn from_entries<I>(dims: Vec<usize>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut form = SparseMultilinearForm::new(dims)?;
        for (idx, c) in entries {
            form.insert(idx, c)?;
        }
        Ok(form)
    }

    /// Store a coefficient. Zero coefficients, duplicate tuples and
    /// out-of-range indices are rejected.
    pub fn insert(&mut self, idx: Vec<usize>, coeff: f64) -> Result<()> {
        if idx.len() != self.arity() {
            return Err(Error::DimensionMismatch(format!(
                "index tuple {:?} has length {}, arity is {}",
                idx,
                idx.len(),
                self.arity()
            )));
        }
        for (k, (&j, &d)) in idx.iter().zip(&self.dims).enumerate() {
            if j == 0 || j > d {
                return Err(Error::DimensionMismatch(format!(
                    "index {j} out of range 1..={d} in slot {k}"
                )));
            }
        }
        if coeff == 0.0 {
            return Err(Error::domain("zero coefficients are not stored"));
        }
        if self.coeffs.contains_key(&idx) {
            return Err(Error::domain(format!("duplicate index tuple {idx:?}")));
        }
        self.coeffs.insert(idx, coeff);
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at an index tuple, zero when absent.
    pub fn coeff(&self, idx: &[usize]) -> f64 {
        self.coeffs.get(idx).copied().unwrap_or(0.0)
    }

    /// Entries in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.coeffs.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Evaluate at one vector per slot.
    ///
    /// Vectors shorter than their slot dimension are read as zero-padded
    /// (the natural embedding of ℓ_p^n into ℓ_p^N); longer ones are a
    /// dimension mismatch.
    pub fn evaluate(&self, args: &[VectorP]) -> Result<f64> {
        if args.len() != self.arity() {
            return Err(Error::DimensionMismatch(format!(
                "{} arguments for an arity-{} form",
                args.len(),
                self.arity()
            )));
        }
        for (k, (a, &d)) in args.iter().zip(&self.dims).enumerate() {
            if a.len() > d {
                return Err(Error::DimensionMismatch(format!(
                    "argument {k} has length {}, slot dimension is {d}",
                    a.len()
                )));
            }
        }
        let mut total = 0.0;
        'entries: for (idx, c) in self.iter() {
            let mut term = c;
            for (k, &j) in idx.iter().enumerate() {
                match args[k].coords().get(j - 1) {
                    Some(&x) => term *= x,
                    None => continue 'entries,
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Mixed coefficient sum (Σ |c|^ρ)^{1/ρ} over the stored entries.
    pub fn hl_sum(&self, rho: f64) -> f64 {
        debug_assert!(rho >= 1.0, "mixed sum exponent must be >= 1");
        let sum: f64 = self.coeffs.values().map(|c| c.abs().powf(rho)).sum();
        sum.powf(1.0 / rho)
    }

    /// Canonical text form: one `j_1 j_2 … j_m coefficient` line per
    /// entry, sorted by index tuple. Coefficients are printed in the
    /// shortest representation that parses back to the same float.
    pub fn to_canonical_text(&self) -> String {
        let mut out = String::new();
        for (idx, c) in self.iter() {
            for j in idx {
                let _ = write!(out, "{j} ");
            }
            let _ = writeln!(out, "{c}");
        }
        out
    }

    /// Parse the canonical text form. Blank lines and `#` comments are
    /// ignored; slot dimensions are inferred as the largest index seen
    /// per slot.
    pub fn parse_canonical_text(text: &str) -> Result<Self> {
        let mut entries: Vec<(Vec<usize>, f64)> = Vec::new();
        let mut arity = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 2 {
                return Err(Error::parse(format!(
                    "line {}: need indices and a coefficient",
                    lineno + 1
                )));
            }
            let m = tokens.len() - 1;
            match arity {
                None => arity = Some(m),
                Some(a) if a != m => {
                    return Err(Error::parse(format!(
                        "line {}: {} indices, earlier lines had {}",
                        lineno + 1,
                        m,
                        a
                    )))
                }
                _ => {}
            }
            let mut idx = Vec::with_capacity(m);
            for t in &tokens[..m] {
                let j: usize = t
                    .parse()
                    .map_err(|_| Error::parse(format!("line {}: bad index {t:?}", lineno + 1)))?;
                if j == 0 {
                    return Err(Error::parse(format!(
                        "line {}: indices are 1-based",
                        lineno + 1
                    )));
                }
                idx.push(j);
            }
            let c: f64 = tokens[m]
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad coefficient", lineno + 1)))?;
            entries.push((idx, c));
        }
        let arity = arity.ok_or_else(|| Error::parse("no entries"))?;
        let mut dims = vec![1usize; arity];
        for (idx, _) in &entries {
            for (k, &j) in idx.iter().enumerate() {
                dims[k] = dims[k].max(j);
            }
        }
        SparseMultilinearForm::from_entries(dims, entries)
    }
}

/// The bilinear seed of the extremal family: coefficients
/// {(1,1): +1, (1,2): +1, (2,1): +1, (2,2): −1} on ℝ² × ℝ².
pub fn bilinear_seed() -> SparseMultilinearForm {
    SparseMultilinearForm::from_entries(
        vec![2, 2],
        [
            (vec![1, 1], 1.0),
            (vec![1, 2], 1.0),
            (vec![2, 1], 1.0),
            (vec![2, 2], -1.0),
        ],
    )
    .expect("seed entries are valid")
}

/// Arity-m member of the extremal family, on m copies of ℝ^{2^{m−1}}.
pub fn extremal_form(m: u32) -> Result<SparseMultilinearForm> {
    extremal_form_with_cap(m, DEFAULT_ARITY_CAP)
}

/// Same as [`extremal_form`] with an explicit arity cap. The member for
/// arity m has 4^{m−1} entries, so the cap bounds memory.
pub fn extremal_form_with_cap(m: u32, cap: u32) -> Result<SparseMultilinearForm> {
    if m < 2 {
        return Err(Error::domain(format!("extremal family starts at arity 2, got {m}")));
    }
    if m > cap {
        return Err(Error::CapExceeded(format!(
            "arity {m} exceeds the cap {cap} (4^{} coefficients)",
            m - 1
        )));
    }
    let mut form = bilinear_seed();
    for k in 3..=m {
        form = lift_once(&form, k)?;
    }
    Ok(form)
}

/// One recursion step: lift the arity-(k−1) member to arity k.
///
/// Every slot dimension doubles to 2^{k−1}. The first copy keeps its
/// index tuples and is tagged with last-slot index 1 and 2 (both with
/// the parent coefficient); the second copy translates every index by
/// s = 2^{k−2} and is tagged with +c at last index 1 and −c at last
/// index 2. The translated copy occupies index tuples the first copy
/// cannot reach, so the insert-time duplicate check doubles as a proof
/// that the supports are disjoint.
fn lift_once(prev: &SparseMultilinearForm, k: u32) -> Result<SparseMultilinearForm> {
    let half = 1usize << (k - 2);
    let dim = half * 2;
    let mut next = SparseMultilinearForm::new(vec![dim; k as usize])?;
    for (idx, c) in prev.iter() {
        let mut plain = idx.to_vec();
        plain.push(0);
        let mut shifted: Vec<usize> = idx.iter().map(|&j| j + half).collect();
        shifted.push(0);
        for (tuple, signs) in [(&mut plain, [c, c]), (&mut shifted, [c, -c])] {
            for (last, coeff) in [(1usize, signs[0]), (2usize, signs[1])] {
                *tuple.last_mut().expect("tuple is nonempty") = last;
                next.insert(tuple.clone(), coeff)?;
            }
        }
    }
    Ok(next)
}

/// Closed form for the mixed ρ-sum of the arity-m member:
/// (4^{m−1})^{1/ρ}, since every coefficient has unit magnitude.
///
/// Matches `extremal_form(m)?.hl_sum(rho)` bit for bit while the entry
/// count is exactly representable, but needs no materialized form, so
/// report pipelines can reach arities past the construction cap.
pub fn extremal_hl_sum(m: u32, rho: f64) -> f64 {
    let count = 4f64.powi(m as i32 - 1);
    count.powf(1.0 / rho)
}
