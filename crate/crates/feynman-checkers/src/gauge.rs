//! Amplitudes in an external field: edge weights on the auxiliary grid.
//!
//! A field assigns a weight of modulus 1 (typically +-1) to each auxiliary
//! edge, addressed by its midpoint. Midpoints have half-integer
//! coordinates, so keys store doubled coordinates: the edge with midpoint
//! `(x + 1/2, t + 1/2)` has key `(2x+1, 2t+1)`, both components odd.
//! Unlisted edges carry weight +1.
//!
//! The model is the unit lattice (`m = eps = 1`); the step picks up the
//! weight of the edge the path crosses:
//!
//! ```text
//! a1(x, t+1) = u(x+1/2, t+1/2) (a1(x+1, t) + a2(x+1, t)) / sqrt2
//! a2(x, t+1) = u(x-1/2, t+1/2) (a2(x-1, t) - a1(x-1, t)) / sqrt2
//! ```

use std::collections::HashMap;

use num::complex::Complex64;

use crate::error::{Error, Result};

/// Sparse field of unit-modulus edge weights keyed by doubled midpoints.
#[derive(Debug, Clone, Default)]
pub struct GaugeField {
    weights: HashMap<(i64, i64), Complex64>,
}

impl GaugeField {
    /// The trivial field `u = +1`.
    pub fn identity() -> Self {
        Self::default()
    }

    /// Inserts a weight at the doubled midpoint `(x2, t2)`; both
    /// coordinates must be odd and the weight unit-modulus.
    pub fn insert(&mut self, x2: i64, t2: i64, weight: Complex64) -> Result<()> {
        if x2 & 1 == 0 || t2 & 1 == 0 {
            return Err(Error::InvalidParams(format!(
                "edge midpoint keys must have both doubled coordinates odd, got ({x2},{t2})"
            )));
        }
        if (weight.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "edge weights must have modulus 1, got |{weight}|"
            )));
        }
        self.weights.insert((x2, t2), weight);
        Ok(())
    }

    /// Builds a field from `((x2, t2), weight)` pairs.
    pub fn from_pairs<I: IntoIterator<Item = ((i64, i64), Complex64)>>(pairs: I) -> Result<Self> {
        let mut f = Self::identity();
        for ((x2, t2), w) in pairs {
            f.insert(x2, t2, w)?;
        }
        Ok(f)
    }

    /// The homogeneous-field example: `u(x+1/2, t+1/2) = -1` iff both `x`
    /// and `t` are even, populated for `|x| <= span`, `0 <= t <= span`.
    pub fn homogeneous(span: i64) -> Self {
        let mut f = Self::identity();
        let minus = Complex64::new(-1.0, 0.0);
        for t in (0..=span).step_by(2) {
            let mut x = -span - (span & 1);
            while x <= span {
                f.weights.insert((2 * x + 1, 2 * t + 1), minus);
                x += 2;
            }
        }
        f
    }

    /// Weight at the doubled midpoint `(x2, t2)`; +1 when unlisted.
    pub fn weight(&self, x2: i64, t2: i64) -> Complex64 {
        self.weights
            .get(&(x2, t2))
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0))
    }
}

/// Amplitude components under a field; complex in general.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldAmplitude {
    pub a1: Complex64,
    pub a2: Complex64,
}

impl FieldAmplitude {
    pub const ZERO: Self = Self {
        a1: Complex64::new(0.0, 0.0),
        a2: Complex64::new(0.0, 0.0),
    };

    /// `P = |a1|^2 + |a2|^2` (the components are defined separately here,
    /// so the probability is the sum of squared moduli).
    pub fn prob(&self) -> f64 {
        self.a1.norm_sqr() + self.a2.norm_sqr()
    }
}

struct FieldRow {
    it: i64,
    vals: Vec<FieldAmplitude>,
}

impl FieldRow {
    fn get(&self, ix: i64) -> FieldAmplitude {
        if ix.abs() > self.it || (ix + self.it) & 1 != 0 {
            return FieldAmplitude::ZERO;
        }
        self.vals[((ix + self.it) / 2) as usize]
    }
}

fn field_sweep<F: FnMut(&FieldRow)>(t_max: i64, u: &GaugeField, mut on_row: F) {
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    // the first move crosses the edge with midpoint (1/2, 1/2)
    let mut row = FieldRow {
        it: 1,
        vals: vec![
            FieldAmplitude::ZERO,
            FieldAmplitude {
                a1: Complex64::new(0.0, 0.0),
                a2: u.weight(1, 1),
            },
        ],
    };
    on_row(&row);
    for it in 2..=t_max {
        let mut vals = vec![FieldAmplitude::ZERO; (it + 1) as usize];
        for (k, out) in vals.iter_mut().enumerate() {
            let ix = 2 * k as i64 - it;
            let right = row.get(ix + 1);
            let left = row.get(ix - 1);
            // the step from t-1 to t crosses midpoints (x +- 1/2, t - 1/2)
            out.a1 = u.weight(2 * ix + 1, 2 * it - 1) * (right.a1 + right.a2) * inv;
            out.a2 = u.weight(2 * ix - 1, 2 * it - 1) * (left.a2 - left.a1) * inv;
        }
        row = FieldRow { it, vals };
        on_row(&row);
    }
}

/// Amplitude at `(ix, it)` in the field `u` (unit lattice).
pub fn amplitude_field(ix: i64, it: i64, u: &GaugeField) -> Result<FieldAmplitude> {
    if it < 1 {
        return Err(Error::InvalidParams(format!("it must be >= 1, got {it}")));
    }
    let mut out = FieldAmplitude::ZERO;
    field_sweep(it, u, |row| {
        if row.it == it {
            out = row.get(ix);
        }
    });
    Ok(out)
}

/// Row sums `sum_x P(x, t, u)` for `t = 1..=t_max` (charge conservation
/// holds for any field).
pub fn probability_rows_field(t_max: i64, u: &GaugeField) -> Vec<f64> {
    let mut out = Vec::with_capacity(t_max as usize);
    field_sweep(t_max, u, |row| {
        out.push(row.vals.iter().map(|v| v.prob()).sum());
    });
    out
}

/// Chirality-flip series `P(t, u) = sum_x |a1(x, t, u)|^2`, `t = 1..=t_max`.
pub fn chirality_flip_series_field(t_max: i64, u: &GaugeField) -> Vec<f64> {
    let mut out = Vec::with_capacity(t_max as usize);
    field_sweep(t_max, u, |row| {
        out.push(row.vals.iter().map(|v| v.a1.norm_sqr()).sum());
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::{amplitude_dp, chirality_flip_series};
    use crate::params::LatticeParams;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_field_reduces_to_basic_model() {
        let u = GaugeField::identity();
        let p = LatticeParams::unit();
        for &(ix, it) in &[(1_i64, 3_i64), (0, 4), (-2, 6), (3, 9)] {
            let f = amplitude_field(ix, it, &u).unwrap();
            let d = amplitude_dp(ix, it, p).unwrap();
            assert_abs_diff_eq!(f.a1.re, d.a1, epsilon = 1e-14);
            assert_abs_diff_eq!(f.a2.re, d.a2, epsilon = 1e-14);
            assert_abs_diff_eq!(f.a1.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn key_and_weight_validation() {
        let mut u = GaugeField::identity();
        assert!(u.insert(2, 1, Complex64::new(1.0, 0.0)).is_err());
        assert!(u.insert(1, 1, Complex64::new(0.5, 0.0)).is_err());
        assert!(u
            .insert(1, 1, Complex64::from_polar(1.0, 0.37))
            .is_ok());
    }

    #[test]
    fn homogeneous_field_conserves_probability() {
        let t_max = 200;
        let u = GaugeField::homogeneous(t_max + 2);
        for (i, s) in probability_rows_field(t_max, &u).iter().enumerate() {
            assert!((s - 1.0).abs() < 1e-12, "row {} sum {s}", i + 1);
        }
    }

    #[test]
    fn field_changes_chirality_series() {
        let t_max = 60;
        let u = GaugeField::homogeneous(t_max + 2);
        let with_field = chirality_flip_series_field(t_max, &u);
        let free = chirality_flip_series(t_max);
        // the field makes the flip probability oscillate persistently
        // instead of settling near 1/(2 sqrt 2)
        let diff: f64 = with_field
            .iter()
            .zip(&free)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff > 0.05, "field had no visible effect: {diff}");
    }

    #[test]
    fn unit_complex_weights_preserve_norm() {
        let mut u = GaugeField::identity();
        u.insert(1, 1, Complex64::from_polar(1.0, 1.2)).unwrap();
        u.insert(-1, 3, Complex64::from_polar(1.0, -0.8)).unwrap();
        u.insert(3, 5, Complex64::from_polar(1.0, 2.9)).unwrap();
        for s in probability_rows_field(30, &u) {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
