//! Independent brute-force checks.
//!
//! Nothing here is on the user-facing path: the grid search and the
//! symbolic expansion exist so the test suite can validate the norm
//! engine and the form constructors against implementations that share
//! no code with them.

use std::collections::BTreeMap;

use crate::closed_forms::PExponent;
use crate::error::{Error, Result};
use crate::forms::{lp_norm, SparseMultilinearForm};

/// Default budget for grid-point combinations.
pub const DEFAULT_GRID_CAP: usize = 100_000_000;

/// Largest arity the symbolic expansion accepts.
pub const EXPANSION_ARITY_CAP: u32 = 6;

/// Lower bound on ‖form‖ by maximizing |form| over a product of
/// spherical grids, one per slot.
///
/// Each slot grid is the cube grid {i/N : −N ≤ i ≤ N}^d, N = ⌈1/resolution⌉,
/// projected onto the unit p-sphere. Halving the resolution doubles N,
/// and since (2i)/(2N) rounds to the same float as i/N, refined grids
/// contain coarser ones exactly — the returned value is monotone under
/// dyadic refinement, not just statistically.
pub fn brute_norm_grid(
    form: &SparseMultilinearForm,
    p: PExponent,
    resolution: f64,
) -> Result<f64> {
    brute_norm_grid_with_cap(form, p, resolution, DEFAULT_GRID_CAP)
}

/// [`brute_norm_grid`] with an explicit budget on grid combinations.
pub fn brute_norm_grid_with_cap(
    form: &SparseMultilinearForm,
    p: PExponent,
    resolution: f64,
    cap: usize,
) -> Result<f64> {
    if !(resolution > 0.0) || resolution > 1.0 {
        return Err(Error::domain(format!(
            "resolution must lie in (0, 1], got {resolution}"
        )));
    }
    if let PExponent::Finite(pf) = p {
        if !(pf >= 1.0) {
            return Err(Error::domain(format!("grid oracle needs p >= 1 or inf, got {pf}")));
        }
    }
    let n = (1.0 / resolution).ceil() as i64;
    let grids: Vec<Vec<Vec<f64>>> = form
        .dims()
        .iter()
        .map(|&d| sphere_grid(d, n, p, cap))
        .collect::<Result<_>>()?;
    let mut combinations: usize = 1;
    for g in &grids {
        combinations = combinations
            .checked_mul(g.len())
            .filter(|&c| c <= cap)
            .ok_or_else(|| {
                Error::CapExceeded(format!(
                    "grid combinations exceed the cap {cap} at resolution {resolution}"
                ))
            })?;
    }

    let entries: Vec<(Vec<usize>, f64)> =
        form.iter().map(|(i, c)| (i.to_vec(), c)).collect();
    let mut best = 0.0;
    max_over_grids(&entries, &grids, &mut best);
    Ok(best)
}

/// Cube grid of step 1/n in [−1, 1]^dim, projected to the unit
/// p-sphere, duplicates removed bit-exactly.
fn sphere_grid(dim: usize, n: i64, p: PExponent, cap: usize) -> Result<Vec<Vec<f64>>> {
    let side = (2 * n + 1) as usize;
    let raw = side
        .checked_pow(dim as u32)
        .filter(|&r| r <= cap.saturating_mul(8))
        .ok_or_else(|| {
            Error::CapExceeded(format!("cube grid {side}^{dim} is beyond any useful budget"))
        })?;
    let mut points = Vec::with_capacity(raw / 2);
    let mut idx = vec![-n; dim];
    'outer: loop {
        if idx.iter().any(|&i| i != 0) {
            let coords: Vec<f64> = idx.iter().map(|&i| i as f64 / n as f64).collect();
            let norm = lp_norm(&coords, p);
            points.push(coords.iter().map(|x| x / norm).collect::<Vec<f64>>());
        }
        let mut k = dim;
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            if idx[k] < n {
                idx[k] += 1;
                continue 'outer;
            }
            idx[k] = -n;
        }
    }
    points.sort_by(|a, b| {
        a.iter()
            .map(|x| x.to_bits())
            .cmp(b.iter().map(|x| x.to_bits()))
    });
    points.dedup_by(|a, b| a.iter().map(|x| x.to_bits()).eq(b.iter().map(|x| x.to_bits())));
    Ok(points)
}

/// Recursively contract the leading slot against each of its grid
/// points; at the last slot the restriction is linear and a dense dot
/// product finishes the job.
fn max_over_grids(entries: &[(Vec<usize>, f64)], grids: &[Vec<Vec<f64>>], best: &mut f64) {
    if grids.len() == 1 {
        let dim = entries
            .iter()
            .map(|(idx, _)| idx[0])
            .max()
            .unwrap_or(0);
        let mut c = vec![0.0f64; dim];
        for (idx, coeff) in entries {
            c[idx[0] - 1] += coeff;
        }
        for point in &grids[0] {
            let value: f64 = c.iter().zip(point).map(|(cj, xj)| cj * xj).sum();
            let value = value.abs();
            if value > *best {
                *best = value;
            }
        }
        return;
    }
    for point in &grids[0] {
        let mut contracted: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (idx, coeff) in entries {
            let weight = coeff * point[idx[0] - 1];
            if weight != 0.0 {
                *contracted.entry(idx[1..].to_vec()).or_insert(0.0) += weight;
            }
        }
        let next: Vec<(Vec<usize>, f64)> = contracted.into_iter().collect();
        if !next.is_empty() {
            max_over_grids(&next, &grids[1..], best);
        }
    }
}

// ---------------------------------------------------------------------
// Symbolic expansion of the extremal recursion.
// ---------------------------------------------------------------------

/// A variable x^{(slot)}_index of the expansion.
type Var = (usize, usize);

/// Multivariate polynomial with monomials stored as sorted variable
/// lists. Only what the expansion needs: add, subtract, multiply,
/// collect, with exact cancellation of integer coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
struct Poly {
    terms: BTreeMap<Vec<Var>, f64>,
}

impl Poly {
    fn zero() -> Poly {
        Poly::default()
    }

    fn var(slot: usize, index: usize) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(slot, index)], 1.0);
        Poly { terms }
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (mono, c) in &other.terms {
            let entry = terms.entry(mono.clone()).or_insert(0.0);
            *entry += c;
            if *entry == 0.0 {
                terms.remove(mono);
            }
        }
        Poly { terms }
    }

    fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.mul_scalar(-1.0))
    }

    fn mul_scalar(&self, s: f64) -> Poly {
        if s == 0.0 {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut terms: BTreeMap<Vec<Var>, f64> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut mono = ma.clone();
                mono.extend_from_slice(mb);
                mono.sort_unstable();
                *terms.entry(mono).or_insert(0.0) += ca * cb;
            }
        }
        terms.retain(|_, c| *c != 0.0);
        Poly { terms }
    }
}

/// Backward shift of a symbolic coordinate sequence: drop the first
/// `s` polynomials, pad with zeros.
fn shift_seq(seq: &[Poly], s: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = seq.iter().skip(s).cloned().collect();
    out.resize(seq.len(), Poly::zero());
    out
}

/// Literal multiply-and-collect expansion of the recursion defining the
/// extremal family: the base bilinear form on symbolic coordinates,
/// then, per arity step, (last₁+last₂)·T(head) plus
/// (last₁−last₂)·T(head shifted by 2^{arity−2}).
///
/// Shares no code with the index-translation constructor in
/// [`crate::forms`]; agreement of the two coefficient maps is the test.
pub fn extremal_form_expanded(m: u32) -> Result<SparseMultilinearForm> {
    if m < 2 {
        return Err(Error::domain(format!("expansion starts at arity 2, got {m}")));
    }
    if m > EXPANSION_ARITY_CAP {
        return Err(Error::CapExceeded(format!(
            "expansion arity {m} exceeds the cap {EXPANSION_ARITY_CAP}"
        )));
    }
    let dim = 1usize << (m - 1);
    let args: Vec<Vec<Poly>> = (0..m as usize)
        .map(|k| (1..=dim).map(|j| Poly::var(k, j)).collect())
        .collect();
    let poly = expand_recursive(&args);

    let mut form = SparseMultilinearForm::new(vec![dim; m as usize])?;
    for (mono, c) in &poly.terms {
        if mono.len() != m as usize {
            return Err(Error::domain(format!(
                "expansion produced a non-multilinear monomial {mono:?}"
            )));
        }
        let mut idx = vec![0usize; m as usize];
        for (pos, &(slot, index)) in mono.iter().enumerate() {
            if slot != pos {
                return Err(Error::domain(format!(
                    "expansion monomial {mono:?} misses slot {pos}"
                )));
            }
            idx[slot] = index;
        }
        form.insert(idx, *c)?;
    }
    Ok(form)
}

fn expand_recursive(args: &[Vec<Poly>]) -> Poly {
    let m = args.len();
    if m == 2 {
        let (x, y) = (&args[0], &args[1]);
        return x[0]
            .mul(&y[0])
            .add(&x[0].mul(&y[1]))
            .add(&x[1].mul(&y[0]))
            .sub(&x[1].mul(&y[1]));
    }
    let shift = 1usize << (m - 2);
    let last = &args[m - 1];
    let head = &args[..m - 1];
    let plain = last[0].add(&last[1]).mul(&expand_recursive(head));
    let shifted_head: Vec<Vec<Poly>> = head.iter().map(|seq| shift_seq(seq, shift)).collect();
    let alternating = last[0].sub(&last[1]).mul(&expand_recursive(&shifted_head));
    plain.add(&alternating)
}
