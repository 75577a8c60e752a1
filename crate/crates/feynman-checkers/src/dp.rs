//! Floating-point dynamic programming for amplitudes on the `(m, eps)`
//! lattice, with optional absorption.
//!
//! One evolution step (the lattice Dirac equation):
//!
//! ```text
//! a1(x, t+eps) = (a1(x+eps, t) + mu * a2(x+eps, t)) / sqrt(1 + mu^2)
//! a2(x, t+eps) = (a2(x-eps, t) - mu * a1(x-eps, t)) / sqrt(1 + mu^2)
//! ```
//!
//! with base `a2(eps, eps) = 1` and `mu = m * eps`. The sweep keeps a
//! sliding window of two rows (O(t/eps) memory); [`DpGrid`] retains all
//! rows for exports and row scans.

use crate::error::{Error, Result};
use crate::params::{AbsorptionSet, AmplitudePair, LatticeParams};

/// One amplitude row at fixed time `it`, sites `ix = -it, -it+2, ..., it`.
#[derive(Debug, Clone)]
pub struct Row {
    pub it: i64,
    vals: Vec<AmplitudePair>,
}

impl Row {
    fn base() -> Self {
        Row {
            it: 1,
            vals: vec![AmplitudePair::ZERO, AmplitudePair::new(0.0, 1.0)],
        }
    }

    pub fn get(&self, ix: i64) -> AmplitudePair {
        if ix.abs() > self.it || (ix + self.it) & 1 != 0 {
            return AmplitudePair::ZERO;
        }
        self.vals[((ix + self.it) / 2) as usize]
    }

    /// Iterate over `(ix, amplitude)` pairs of the row.
    pub fn iter(&self) -> impl Iterator<Item = (i64, AmplitudePair)> + '_ {
        let it = self.it;
        self.vals
            .iter()
            .enumerate()
            .map(move |(k, &v)| (2 * k as i64 - it, v))
    }

    pub fn prob_sum(&self) -> f64 {
        self.vals.iter().map(|v| v.prob()).sum()
    }

    fn step(&self, inv_norm: f64, mu: f64) -> Row {
        let it = self.it + 1;
        let mut vals = vec![AmplitudePair::ZERO; (it + 1) as usize];
        for (k, out) in vals.iter_mut().enumerate() {
            let ix = 2 * k as i64 - it;
            let right = self.get(ix + 1);
            let left = self.get(ix - 1);
            out.a1 = inv_norm * (right.a1 + mu * right.a2);
            out.a2 = inv_norm * (left.a2 - mu * left.a1);
        }
        Row { it, vals }
    }

    fn absorb(&mut self, barrier: &AbsorptionSet) {
        for (k, v) in self.vals.iter_mut().enumerate() {
            let ix = 2 * k as i64 - self.it;
            if barrier.contains(ix, self.it) {
                *v = AmplitudePair::ZERO;
            }
        }
    }
}

/// Runs the sweep up to `t_max`, calling `on_row` for every row *before*
/// absorption is applied to it, then zeroing barrier sites. With the
/// endpoint row left intact this realizes the bypass semantics: the value
/// of row `it` seen by `on_row` is the bypass amplitude with barrier
/// applied strictly before time `it`.
fn sweep<F: FnMut(&Row)>(
    t_max: i64,
    params: LatticeParams,
    barrier: &AbsorptionSet,
    mut on_row: F,
) {
    let mu = params.mu();
    let inv_norm = 1.0 / (1.0 + mu * mu).sqrt();
    let mut row = Row::base();
    for _ in 1..=t_max {
        on_row(&row);
        if !barrier.is_empty() {
            row.absorb(barrier);
        }
        if row.it < t_max {
            row = row.step(inv_norm, mu);
        }
    }
}

/// Amplitude at a single site, `it >= 1`; zeros outside the cone.
pub fn amplitude_dp(ix: i64, it: i64, params: LatticeParams) -> Result<AmplitudePair> {
    if it < 1 {
        return Err(Error::InvalidParams(format!("it must be >= 1, got {it}")));
    }
    let mut out = AmplitudePair::ZERO;
    sweep(it, params, &AbsorptionSet::empty(), |row| {
        if row.it == it {
            out = row.get(ix);
        }
    });
    Ok(out)
}

/// Detection probability `P(x, t, m, eps)`.
pub fn probability(ix: i64, it: i64, params: LatticeParams) -> Result<f64> {
    Ok(amplitude_dp(ix, it, params)?.prob())
}

/// Amplitude with absorption: paths avoid `barrier` at all intermediate
/// rows `1 <= it' < it`; the endpoint may lie in the barrier.
pub fn amplitude_bypass(
    ix: i64,
    it: i64,
    params: LatticeParams,
    barrier: &AbsorptionSet,
) -> Result<AmplitudePair> {
    if it < 1 {
        return Err(Error::InvalidParams(format!("it must be >= 1, got {it}")));
    }
    let mut out = AmplitudePair::ZERO;
    sweep(it, params, barrier, |row| {
        if row.it == it {
            out = row.get(ix);
        }
    });
    Ok(out)
}

/// Bypass probability.
pub fn probability_bypass(
    ix: i64,
    it: i64,
    params: LatticeParams,
    barrier: &AbsorptionSet,
) -> Result<f64> {
    Ok(amplitude_bypass(ix, it, params, barrier)?.prob())
}

/// Partial sum `sum_{t=1}^{T} P(0, t bypass barrier)` for the unit lattice.
/// A single sweep suffices: the value read at `x = 0` on row `t`, before
/// that row is absorbed, is exactly the bypass amplitude for endpoint
/// `(0, t)`.
pub fn absorption_partial_sum(t_max: i64, barrier: &AbsorptionSet) -> f64 {
    assert!(t_max >= 1, "t_max must be >= 1");
    let mut total = 0.0;
    sweep(t_max, LatticeParams::unit(), barrier, |row| {
        total += row.get(0).prob();
    });
    total
}

/// The per-`t` series of `P(0, t bypass barrier)`, `t = 1..=t_max`.
pub fn absorption_series(t_max: i64, barrier: &AbsorptionSet) -> Vec<f64> {
    assert!(t_max >= 1);
    let mut out = Vec::with_capacity(t_max as usize);
    sweep(t_max, LatticeParams::unit(), barrier, |row| {
        out.push(row.get(0).prob());
    });
    out
}

/// Single amplitude row at time `it` without retaining the full grid
/// (O(it) memory).
pub fn dp_row(it: i64, params: LatticeParams) -> Row {
    assert!(it >= 1, "it must be >= 1");
    let mut out = Row::base();
    sweep(it, params, &AbsorptionSet::empty(), |row| {
        if row.it == it {
            out = row.clone();
        }
    });
    out
}

/// Full amplitude grid, rows `1..=t_max`.
pub struct DpGrid {
    rows: Vec<Row>,
    params: LatticeParams,
}

impl DpGrid {
    pub fn new(t_max: i64, params: LatticeParams) -> Self {
        Self::with_absorption(t_max, params, &AbsorptionSet::empty())
    }

    pub fn with_absorption(t_max: i64, params: LatticeParams, barrier: &AbsorptionSet) -> Self {
        assert!(t_max >= 1, "t_max must be >= 1");
        let mut rows = Vec::with_capacity(t_max as usize);
        sweep(t_max, params, barrier, |row| rows.push(row.clone()));
        Self { rows, params }
    }

    pub fn params(&self) -> LatticeParams {
        self.params
    }

    pub fn t_max(&self) -> i64 {
        self.rows.len() as i64
    }

    pub fn row(&self, it: i64) -> &Row {
        &self.rows[(it - 1) as usize]
    }

    pub fn get(&self, ix: i64, it: i64) -> AmplitudePair {
        if it < 1 || it > self.t_max() {
            return AmplitudePair::ZERO;
        }
        self.row(it).get(ix)
    }
}

/// Which direction the last move of a path points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndDirection {
    Left,
    Right,
}

/// Sum over paths that start with an upwards-right move (the global
/// convention) and end with a move in the given direction. The last move
/// is upwards-right iff the number of turns is even, so these sums are
/// `a2` (right) and `a1` (left) up to the phase factor carried by the
/// turn weights.
pub fn restricted_amplitude(
    dx: i64,
    dt: i64,
    end_dir: EndDirection,
    params: LatticeParams,
) -> Result<f64> {
    let a = amplitude_dp(dx, dt, params)?;
    Ok(match end_dir {
        EndDirection::Right => a.a2,
        EndDirection::Left => a.a1,
    })
}

/// `S1(t) = sum_x a1(x,t)^2` on the unit lattice: the probability that the
/// final move direction differs from the initial one (chirality flip).
pub fn chirality_flip_sum(t: i64) -> f64 {
    assert!(t >= 1);
    *chirality_flip_series(t).last().unwrap()
}

/// `S1(t)` for all `t = 1..=t_max` from one sweep.
pub fn chirality_flip_series(t_max: i64) -> Vec<f64> {
    assert!(t_max >= 1);
    let mut out = Vec::with_capacity(t_max as usize);
    sweep(t_max, LatticeParams::unit(), &AbsorptionSet::empty(), |row| {
        out.push(row.iter().map(|(_, a)| a.a1 * a.a1).sum());
    });
    out
}

/// Closed-form evaluation of `S1(t)` used as a cross-check:
/// `S1(t) = (1/2) * sum_{k=0}^{floor(t/2)-1} (-1/4)^k C(2k,k)`.
pub fn chirality_flip_closed(t: i64) -> f64 {
    assert!(t >= 1);
    let mut term = 1.0; // (-1/4)^k C(2k,k)
    let mut sum = 0.0;
    for k in 0..(t / 2) {
        if k > 0 {
            let kf = k as f64;
            term *= -0.25 * (2.0 * kf - 1.0) * 2.0 / kf;
        }
        sum += term;
    }
    0.5 * sum
}
