//! Antisymmetrized two-particle amplitudes.
//!
//! Both particles start with an upwards-right move, from `(0, 0)` and
//! `(x0, 0)` with `x0 != 0`. For final data `(Fx, dir)` and `(F'x, dir')`
//! at time `t` the pair amplitude is the direct product of single-particle
//! path sums minus the exchanged product:
//!
//! ```text
//! a = r(Fx, dir) r(F'x - x0, dir') - r(F'x, dir') r(Fx - x0, dir)
//! ```
//!
//! where `r(dx, Right) = i a2(dx, t)` and `r(dx, Left) = a1(dx, t)` are
//! the direction-restricted path sums (the factor `i` is the phase carried
//! by paths with an even number of turns). Exchanging the final data flips
//! the sign; coinciding final data give zero (exclusion principle).

use num::complex::Complex64;

use crate::dp::EndDirection;
use crate::error::{Error, Result};
use crate::params::LatticeParams;

/// Direction-restricted single-particle path sum as a complex number.
fn restricted_complex(dx: i64, dt: i64, dir: EndDirection, params: LatticeParams) -> Complex64 {
    let a = crate::dp::amplitude_dp(dx, dt, params).expect("dt >= 1 checked by caller");
    match dir {
        EndDirection::Right => Complex64::new(0.0, a.a2),
        EndDirection::Left => Complex64::new(a.a1, 0.0),
    }
}

/// Pair amplitude for sources `(0,0)` and `(x0, 0)`, detectors at
/// `(fx, t)` and `(fx2, t)` with end directions `dirs`. Rejects `x0 = 0`.
pub fn pair_amplitude(
    x0: i64,
    fx: i64,
    fx2: i64,
    t: i64,
    dirs: (EndDirection, EndDirection),
    params: LatticeParams,
) -> Result<Complex64> {
    if x0 == 0 {
        return Err(Error::InvalidParams(
            "the two sources must be distinct (x0 != 0)".into(),
        ));
    }
    if t < 1 {
        return Err(Error::InvalidParams(format!("t must be >= 1, got {t}")));
    }
    let direct = restricted_complex(fx, t, dirs.0, params)
        * restricted_complex(fx2 - x0, t, dirs.1, params);
    let exchanged = restricted_complex(fx2, t, dirs.1, params)
        * restricted_complex(fx - x0, t, dirs.0, params);
    Ok(direct - exchanged)
}

/// `|pair_amplitude|^2`, reported unnormalized.
pub fn pair_probability(
    x0: i64,
    fx: i64,
    fx2: i64,
    t: i64,
    dirs: (EndDirection, EndDirection),
    params: LatticeParams,
) -> Result<f64> {
    Ok(pair_amplitude(x0, fx, fx2, t, dirs, params)?.norm_sqr())
}
