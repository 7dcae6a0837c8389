//! Exact operator norms on products of ∞-spheres.
//!
//! A multilinear form attains its supremum over products of unit ∞-balls
//! at extreme points, i.e. at ±1 sign vectors. One slot never needs to
//! be enumerated: with all other slots fixed the form is linear there,
//! and the best sign vector gives exactly the ℓ₁ norm of the restricted
//! coefficient vector. The remaining slots are enumerated exhaustively.

use crate::error::{Error, Result};
use crate::forms::SparseMultilinearForm;

/// Sign patterns enumerated at most (2^24).
const SIGN_ENUMERATION_CAP_BITS: usize = 24;

/// Exact norm of `form` on the product of unit ∞-spheres.
///
/// The slot with the largest dimension is resolved through the ℓ₁-norm
/// reduction; every other slot contributes its dimension in bits to the
/// enumeration, which is capped at 2^24 patterns.
pub fn norm_exact_linf(form: &SparseMultilinearForm) -> Result<f64> {
    let dims = form.dims();
    let reduced = dims
        .iter()
        .enumerate()
        .max_by_key(|(_, &d)| d)
        .map(|(k, _)| k)
        .expect("forms have at least one slot");
    let bits: usize = dims
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != reduced)
        .map(|(_, &d)| d)
        .sum();
    if bits > SIGN_ENUMERATION_CAP_BITS {
        return Err(Error::CapExceeded(format!(
            "{bits} sign bits to enumerate, cap is {SIGN_ENUMERATION_CAP_BITS}"
        )));
    }

    // Bit offset of each enumerated slot inside the pattern word.
    let mut offsets = vec![0usize; dims.len()];
    let mut acc = 0usize;
    for (k, &d) in dims.iter().enumerate() {
        if k != reduced {
            offsets[k] = acc;
            acc += d;
        }
    }

    let entries: Vec<(&[usize], f64)> = form.iter().collect();
    let mut restricted = vec![0.0f64; dims[reduced]];
    let mut best = 0.0f64;
    for pattern in 0u64..(1u64 << bits) {
        restricted.iter_mut().for_each(|c| *c = 0.0);
        for (idx, coeff) in &entries {
            let mut term = *coeff;
            for (k, &j) in idx.iter().enumerate() {
                if k != reduced && (pattern >> (offsets[k] + j - 1)) & 1 == 1 {
                    term = -term;
                }
            }
            restricted[idx[reduced] - 1] += term;
        }
        let value: f64 = restricted.iter().map(|c| c.abs()).sum();
        if value > best {
            best = value;
        }
    }
    Ok(best)
}
