//! Alternating-ascent lower bounds for operator norms.
//!
//! With every slot but one frozen, a multilinear form restricts to a
//! linear functional; its maximizer over the unit p-ball is the norming
//! vector of the coefficient vector c, and the value it attains is the
//! dual norm ‖c‖_{p*}. Cycling through the slots therefore never
//! decreases the objective, and every intermediate value is the form
//! evaluated at a feasible point — a true lower bound on the norm.
//! Multistart over seeded random initial points guards against poor
//! basins; the whole procedure is deterministic given the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::PExponent;
use crate::error::{Error, Result};
use crate::forms::{lp_norm, SparseMultilinearForm, VectorP};

pub const DEFAULT_ASCENT_RESTARTS: usize = 32;
pub const DEFAULT_ASCENT_TOL: f64 = 1e-10;
pub const DEFAULT_ASCENT_MAX_ITERS: usize = 1000;

/// Output of one ascent run from a fixed starting point.
#[derive(Debug, Clone)]
pub struct AscentRun {
    /// Final objective — the form's value at `args`.
    pub value: f64,
    /// Full sweeps performed.
    pub sweeps: usize,
    /// Objective after every slot update, in order.
    pub trace: Vec<f64>,
    /// The feasible point attaining `value`.
    pub args: Vec<VectorP>,
}

fn check_p(p: PExponent) -> Result<()> {
    if let PExponent::Finite(pf) = p {
        if !(pf >= 1.0) || !pf.is_finite() {
            return Err(Error::domain(format!("ascent needs p >= 1 or inf, got {pf}")));
        }
    }
    Ok(())
}

/// Maximizer of c·x over the unit p-ball together with the attained
/// value ‖c‖_{p*}. A zero c yields the first basis vector and value 0.
fn norming_vector(c: &[f64], p: PExponent) -> (Vec<f64>, f64) {
    let basis_fallback = |n: usize| {
        let mut e = vec![0.0; n];
        e[0] = 1.0;
        e
    };
    match p {
        PExponent::Infinity => {
            let x: Vec<f64> = c.iter().map(|&cj| if cj < 0.0 { -1.0 } else { 1.0 }).collect();
            let value = c.iter().map(|cj| cj.abs()).sum();
            (x, value)
        }
        PExponent::Finite(pf) => {
            if pf == 1.0 {
                let (jmax, cmax) = c
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite"))
                    .expect("nonempty coefficient vector");
                if *cmax == 0.0 {
                    return (basis_fallback(c.len()), 0.0);
                }
                let mut x = vec![0.0; c.len()];
                x[jmax] = cmax.signum();
                return (x, cmax.abs());
            }
            let q = pf / (pf - 1.0);
            let value = lp_norm(c, PExponent::Finite(q));
            if value == 0.0 {
                return (basis_fallback(c.len()), 0.0);
            }
            // x_j ∝ sign(c_j)·|c_j|^{q−1} has ‖x‖_p = 1 and c·x = ‖c‖_q.
            let w: Vec<f64> = c
                .iter()
                .map(|&cj| cj.signum() * cj.abs().powf(q - 1.0))
                .collect();
            let scale = lp_norm(&w, PExponent::Finite(pf));
            (w.iter().map(|wj| wj / scale).collect(), value)
        }
    }
}

/// Run the ascent from an explicit starting point.
///
/// Starting vectors are zero-padded to the slot dimensions and
/// normalized; a run stops when a full sweep improves the objective by
/// less than `tol` relatively, or after `max_sweeps` sweeps.
pub fn ascent_run(
    form: &SparseMultilinearForm,
    p: PExponent,
    start: &[VectorP],
    tol: f64,
    max_sweeps: usize,
) -> Result<AscentRun> {
    check_p(p)?;
    if start.len() != form.arity() {
        return Err(Error::DimensionMismatch(format!(
            "{} starting vectors for an arity-{} form",
            start.len(),
            form.arity()
        )));
    }
    let mut slots: Vec<Vec<f64>> = Vec::with_capacity(form.arity());
    for (k, (s, &d)) in start.iter().zip(form.dims()).enumerate() {
        if s.len() > d {
            return Err(Error::DimensionMismatch(format!(
                "starting vector {k} has length {}, slot dimension is {d}",
                s.len()
            )));
        }
        let mut coords = s.coords().to_vec();
        coords.resize(d, 0.0);
        let norm = lp_norm(&coords, p);
        if norm == 0.0 {
            return Err(Error::domain(format!("starting vector {k} is zero")));
        }
        coords.iter_mut().for_each(|x| *x /= norm);
        slots.push(coords);
    }

    let entries: Vec<(&[usize], f64)> = form.iter().collect();
    let mut trace = Vec::new();
    let mut current = 0.0f64;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        let before = current;
        for k in 0..form.arity() {
            // Coefficient vector of the slot-k restriction.
            let mut c = vec![0.0f64; form.dims()[k]];
            for (idx, coeff) in &entries {
                let mut term = *coeff;
                for (kk, &j) in idx.iter().enumerate() {
                    if kk != k {
                        term *= slots[kk][j - 1];
                    }
                }
                c[idx[k] - 1] += term;
            }
            let (x, value) = norming_vector(&c, p);
            slots[k] = x;
            current = value;
            trace.push(value);
        }
        sweeps += 1;
        if current - before <= tol * current.abs().max(1.0) {
            break;
        }
    }
    let args = slots
        .into_iter()
        .map(|coords| VectorP::new(coords, p).expect("p was validated"))
        .collect();
    Ok(AscentRun {
        value: current,
        sweeps,
        trace,
        args,
    })
}

/// Best ascent value over `restarts` seeded random starting points.
///
/// Starting coordinates are drawn uniformly from [−1, 1] with a
/// ChaCha8 stream seeded by `seed`, so repeated calls reproduce the
/// same value bit for bit. The result is the form's value at a feasible
/// point: a valid lower bound on the norm.
pub fn norm_lower_alternating(
    form: &SparseMultilinearForm,
    p: PExponent,
    restarts: usize,
    tol: f64,
    seed: u64,
) -> Result<f64> {
    check_p(p)?;
    if restarts == 0 {
        return Err(Error::domain("need at least one restart"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    for _ in 0..restarts {
        let start: Vec<VectorP> = form
            .dims()
            .iter()
            .map(|&d| {
                let mut coords: Vec<f64>;
                loop {
                    coords = (0..d).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                    if coords.iter().any(|x| x.abs() > 1e-9) {
                        break;
                    }
                }
                VectorP::new(coords, p).expect("p was validated")
            })
            .collect();
        let run = ascent_run(form, p, &start, tol, DEFAULT_ASCENT_MAX_ITERS)?;
        if run.value > best {
            best = run.value;
        }
    }
    Ok(best)
}
