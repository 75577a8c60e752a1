//! Exact integer dynamic programming for the unit lattice `m = eps = 1`.
//!
//! With the normalization factored out, the amplitude components at time
//! `it` are integers: `a_k(ix, it) = A_k(ix, it) * 2^{-(it-1)/2}`. The
//! integer pair satisfies
//!
//! ```text
//! A1(x, t+1) = A2(x+1, t) + A1(x+1, t)
//! A2(x, t+1) = A2(x-1, t) - A1(x-1, t)
//! ```
//!
//! with base `A2(1,1) = 1`. Values reach `2^{t-1}`, hence big integers.
//! This module is the ground-truth oracle for every floating-point engine
//! in the crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::params::AbsorptionSet;

/// Integer-scaled amplitude at a site of the unit lattice:
/// `a_k = A_k * 2^{-(it-1)/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactAmplitude {
    pub a1: BigInt,
    pub a2: BigInt,
    /// Time coordinate; fixes the scale exponent `(it-1)/2`.
    pub it: i64,
}

impl ExactAmplitude {
    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    /// Floating-point value of `(a1, a2)`, i.e. `A_k / 2^{(it-1)/2}`.
    pub fn to_floats(&self) -> (f64, f64) {
        (
            big_scaled_to_f64(&self.a1, self.it - 1),
            big_scaled_to_f64(&self.a2, self.it - 1),
        )
    }

    /// Exact probability `P = (A1^2 + A2^2) / 2^{it-1}` as a rational.
    pub fn prob_exact(&self) -> BigRational {
        let num = &self.a1 * &self.a1 + &self.a2 * &self.a2;
        BigRational::new(num, BigInt::one() << (self.it - 1) as usize)
    }
}

/// `A / 2^{e/2}` as f64, valid far beyond the range where `A.to_f64()`
/// alone would overflow.
pub(crate) fn big_scaled_to_f64(a: &BigInt, half_exp: i64) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let bits = a.bits() as i64;
    // Keep ~63 significant bits, track the shifted-out exponent.
    let shift = (bits - 63).max(0);
    let reduced: BigInt = a >> shift as usize;
    let mantissa = num::ToPrimitive::to_f64(&reduced).expect("reduced BigInt fits in f64");
    let exp2 = shift as f64 - half_exp as f64 / 2.0;
    mantissa * exp2_f64(exp2)
}

fn exp2_f64(e: f64) -> f64 {
    // Split to stay within powi's exact range for huge exponents.
    if e.abs() <= 1000.0 {
        e.exp2()
    } else {
        let half = e / 2.0;
        half.exp2() * (e - half).exp2()
    }
}

/// All integer amplitude rows `it = 1..=t_max`, optionally with absorption.
///
/// Row `it` stores sites `ix = -it, -it+2, ..., it`. Absorption zeroes the
/// pair at barrier sites after each row is produced, so the stored final
/// row of a bypass computation must be read *before* time `t_max` when the
/// endpoint itself lies in the barrier; use [`amplitude_bypass_exact`] for
/// per-endpoint queries.
pub struct ExactGrid {
    rows: Vec<Vec<(BigInt, BigInt)>>,
}

impl ExactGrid {
    /// Plain grid without absorption.
    pub fn new(t_max: i64) -> Self {
        Self::with_absorption(t_max, &AbsorptionSet::empty())
    }

    /// Grid in which barrier sites are zeroed on every row `it < t_max`;
    /// the last row is left intact (endpoints in the barrier are allowed).
    pub fn with_absorption(t_max: i64, barrier: &AbsorptionSet) -> Self {
        assert!(t_max >= 1, "t_max must be >= 1");
        let mut rows: Vec<Vec<(BigInt, BigInt)>> = Vec::with_capacity(t_max as usize);
        let mut row = vec![(BigInt::zero(), BigInt::zero()); 2]; // it = 1: ix in {-1, 1}
        row[1].1 = BigInt::one(); // A2(1,1) = 1
        for it in 1..=t_max {
            if it < t_max && !barrier.is_empty() {
                for (k, v) in row.iter_mut().enumerate() {
                    let ix = 2 * k as i64 - it;
                    if barrier.contains(ix, it) {
                        *v = (BigInt::zero(), BigInt::zero());
                    }
                }
            }
            rows.push(row.clone());
            if it < t_max {
                let mut next = vec![(BigInt::zero(), BigInt::zero()); (it + 2) as usize];
                for (k, pair) in next.iter_mut().enumerate() {
                    let ix = 2 * k as i64 - (it + 1);
                    // neighbor indices in row `it`: (ix±1 + it)/2
                    let right = (ix + 1 + it) / 2;
                    if right >= 0 && right <= it {
                        let (a1, a2) = &row[right as usize];
                        pair.0 = a2 + a1;
                    }
                    let left = (ix - 1 + it) / 2;
                    if left >= 0 && left <= it {
                        let (a1, a2) = &row[left as usize];
                        pair.1 = a2 - a1;
                    }
                }
                row = next;
            }
        }
        Self { rows }
    }

    pub fn t_max(&self) -> i64 {
        self.rows.len() as i64
    }

    /// Integer pair at `(ix, it)`; zeros outside the stored cone.
    pub fn get(&self, ix: i64, it: i64) -> ExactAmplitude {
        let zero = || ExactAmplitude {
            a1: BigInt::zero(),
            a2: BigInt::zero(),
            it,
        };
        if it < 1 || it > self.t_max() || ix.abs() > it || (ix + it) & 1 != 0 {
            return zero();
        }
        let (a1, a2) = &self.rows[(it - 1) as usize][((ix + it) / 2) as usize];
        ExactAmplitude {
            a1: a1.clone(),
            a2: a2.clone(),
            it,
        }
    }

    /// Sum of `A1^2 + A2^2` over a row; equals `2^{it-1}` exactly when no
    /// absorption has occurred (probability conservation).
    pub fn row_norm(&self, it: i64) -> BigInt {
        self.rows[(it - 1) as usize]
            .iter()
            .map(|(a1, a2)| a1 * a1 + a2 * a2)
            .sum()
    }
}

/// Integer amplitude at one site of the unit lattice (`it >= 1`);
/// out-of-cone sites give zeros.
pub fn amplitude_exact(ix: i64, it: i64) -> ExactAmplitude {
    assert!(it >= 1, "amplitude_exact requires it >= 1");
    ExactGrid::new(it).get(ix, it)
}

/// Integer amplitude at `(ix, it)` with paths avoiding `barrier` at all
/// intermediate rows `1 <= it' < it` (the endpoint may lie in the barrier).
pub fn amplitude_bypass_exact(ix: i64, it: i64, barrier: &AbsorptionSet) -> ExactAmplitude {
    assert!(it >= 1, "amplitude_bypass_exact requires it >= 1");
    ExactGrid::with_absorption(it, barrier).get(ix, it)
}

/// Exact bypass probability as a rational number.
pub fn probability_bypass_exact(ix: i64, it: i64, barrier: &AbsorptionSet) -> BigRational {
    amplitude_bypass_exact(ix, it, barrier).prob_exact()
}

/// `|A_k| <= 2^{it-1}` componentwise (amplitudes stay normalized).
pub fn within_norm_bound(a: &ExactAmplitude) -> bool {
    let bound = BigInt::one() << (a.it - 1) as usize;
    a.a1.abs() <= bound && a.a2.abs() <= bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::ToPrimitive;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn arrow_table_small_times() {
        // a(1,3) = (1-i)/2, scale 2^{(3-1)/2} = 2
        let a = amplitude_exact(1, 3);
        assert_eq!((a.a1.clone(), a.a2.clone()), (int(1), int(-1)));
        // boundary column a(3,3) = i/2
        let a = amplitude_exact(3, 3);
        assert_eq!((a.a1.clone(), a.a2.clone()), (int(0), int(1)));
        // outside the light cone
        let a = amplitude_exact(5, 3);
        assert!(a.is_zero());
        // a(0,4) = -i/(2*sqrt2): A = (0,-1)
        let a = amplitude_exact(0, 4);
        assert_eq!((a.a1.clone(), a.a2.clone()), (int(0), int(-1)));
        // a(2,4) = (1-2i)/(2*sqrt2)
        let a = amplitude_exact(2, 4);
        assert_eq!((a.a1.clone(), a.a2.clone()), (int(1), int(-2)));
    }

    #[test]
    fn row_norm_is_power_of_two() {
        let grid = ExactGrid::new(40);
        for it in 1..=40 {
            assert_eq!(grid.row_norm(it), BigInt::one() << (it - 1) as usize);
        }
    }

    #[test]
    fn double_slit_probabilities() {
        // P(0,4) = 1/8 exactly
        let p = amplitude_exact(0, 4).prob_exact();
        assert_eq!(p, BigRational::new(int(1), int(8)));
        // P(0,4 bypass {(2,2)}) = 1/4 exactly
        let b = AbsorptionSet::from_sites([(2, 2)]).unwrap();
        let p22 = probability_bypass_exact(0, 4, &b);
        assert_eq!(p22, BigRational::new(int(1), int(4)));
        // P(0,4 bypass {(0,2)}) = 1/8; the two bypasses do not add up to P(0,4)
        let b = AbsorptionSet::from_sites([(0, 2)]).unwrap();
        let p02 = probability_bypass_exact(0, 4, &b);
        assert_eq!(p02, BigRational::new(int(1), int(8)));
        let total = amplitude_exact(0, 4).prob_exact();
        assert_ne!(p22 + p02, total);
    }

    #[test]
    fn empty_barrier_is_plain_dp() {
        let b = AbsorptionSet::empty();
        for &(ix, it) in &[(1, 3), (0, 4), (-2, 6), (5, 9)] {
            assert_eq!(amplitude_bypass_exact(ix, it, &b), amplitude_exact(ix, it));
        }
    }

    #[test]
    fn scaled_float_conversion() {
        let a = amplitude_exact(1, 3);
        let (a1, a2) = a.to_floats();
        assert!((a1 - 0.5).abs() < 1e-15);
        assert!((a2 + 0.5).abs() < 1e-15);
        // large-t conversion stays finite and sane
        let grid = ExactGrid::new(301);
        let a = grid.get(1, 301);
        let (a1, _) = a.to_floats();
        assert!(a1.is_finite());
        assert!(a1.abs() < 1.0);
    }

    #[test]
    fn norm_bound_holds() {
        let grid = ExactGrid::new(30);
        for it in 1..=30 {
            for ix in (-it..=it).step_by(2) {
                let a = grid.get(ix, it);
                assert!(within_norm_bound(&a));
            }
        }
    }

    #[test]
    fn prob_exact_matches_float() {
        let a = amplitude_exact(2, 4);
        let p = a.prob_exact();
        let pf = p.numer().to_f64().unwrap() / p.denom().to_f64().unwrap();
        assert!((pf - 5.0 / 8.0).abs() < 1e-15);
    }
}
