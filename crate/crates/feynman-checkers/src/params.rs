//! Lattice parameters and basic amplitude types.
//!
//! Conventions used throughout the crate:
//!
//! * Sites are addressed by integer coordinates `(ix, it)` with physical
//!   position `x = ix * eps` and time `t = it * eps`.
//! * Amplitudes live on *black* sites, i.e. `ix + it` even; the amplitude
//!   is zero on white sites and outside the light cone (`ix > it` or
//!   `ix <= -it`).
//! * `a = a1 + i*a2`, `P = a1^2 + a2^2`.

use num::complex::Complex64;

use crate::error::{Error, Result};

/// Particle mass `m >= 0` and lattice step `eps > 0` in natural units
/// (`hbar = c = 1`). The combination `mu = m * eps` is dimensionless and is
/// the only parameter the dynamics depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    m: f64,
    eps: f64,
}

impl LatticeParams {
    pub fn new(m: f64, eps: f64) -> Result<Self> {
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::InvalidParams(format!("mass must be >= 0, got {m}")));
        }
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidParams(format!(
                "lattice step must be > 0, got {eps}"
            )));
        }
        Ok(Self { m, eps })
    }

    /// The unit lattice `m = eps = 1` (the basic model).
    pub fn unit() -> Self {
        Self { m: 1.0, eps: 1.0 }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Dimensionless mass `mu = m * eps`.
    pub fn mu(&self) -> f64 {
        self.m * self.eps
    }

    /// `1 / sqrt(1 + mu^2)`, the normalization of one evolution step and
    /// the speed of the distribution peaks.
    pub fn peak_velocity(&self) -> f64 {
        1.0 / (1.0 + self.mu() * self.mu()).sqrt()
    }
}

/// The two real amplitude components at a site: `a = a1 + i*a2`.
///
/// `a1` is the left-ending (chirality "left") component and `a2` the
/// right-ending one.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AmplitudePair {
    pub a1: f64,
    pub a2: f64,
}

impl AmplitudePair {
    pub const ZERO: Self = Self { a1: 0.0, a2: 0.0 };

    pub fn new(a1: f64, a2: f64) -> Self {
        Self { a1, a2 }
    }

    /// `a = a1 + i*a2`.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.a1, self.a2)
    }

    /// Detection probability `P = a1^2 + a2^2`.
    pub fn prob(&self) -> f64 {
        self.a1 * self.a1 + self.a2 * self.a2
    }
}

/// A lattice site in integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub ix: i64,
    pub it: i64,
}

impl Site {
    pub fn new(ix: i64, it: i64) -> Self {
        Self { ix, it }
    }

    /// Black sites (`ix + it` even) carry the amplitude.
    pub fn is_black(&self) -> bool {
        (self.ix + self.it) & 1 == 0
    }
}

/// `true` iff `ix + it` is even.
pub fn is_black(ix: i64, it: i64) -> bool {
    (ix + it) & 1 == 0
}

/// `true` iff the amplitude at `(ix, it)` can be nonzero: black site inside
/// the (half-open) light cone `2 - it <= ix <= it`, `it >= 1`.
pub fn in_cone(ix: i64, it: i64) -> bool {
    it >= 1 && is_black(ix, it) && ix <= it && ix > -it
}

/// Sites at which paths are absorbed. Either a finite set of sites or a
/// union of vertical lines `{x = n}` (the only infinite barriers
/// supported). The source `(0,0)` is never absorbed: the dynamic
/// programming only queries membership for `it >= 1`.
#[derive(Debug, Clone, Default)]
pub struct AbsorptionSet {
    sites: std::collections::BTreeSet<(i64, i64)>,
    lines: std::collections::BTreeSet<i64>,
}

impl AbsorptionSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Finite set of sites `(ix, it)`. Rejects the source `(0,0)`.
    pub fn from_sites<I: IntoIterator<Item = (i64, i64)>>(sites: I) -> Result<Self> {
        let sites: std::collections::BTreeSet<_> = sites.into_iter().collect();
        if sites.contains(&(0, 0)) {
            return Err(Error::InvalidParams(
                "absorption set must not contain the source (0,0)".into(),
            ));
        }
        Ok(Self {
            sites,
            lines: Default::default(),
        })
    }

    /// Union of vertical lines `{ix = n}` for the given `n`s. The source is
    /// exempt by the bypass definition even when it lies on a line.
    pub fn from_lines<I: IntoIterator<Item = i64>>(lines: I) -> Self {
        Self {
            sites: Default::default(),
            lines: lines.into_iter().collect(),
        }
    }

    /// Adds a vertical line to an existing set.
    pub fn with_line(mut self, n: i64) -> Self {
        self.lines.insert(n);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty() && self.lines.is_empty()
    }

    /// Membership test; only called for `it >= 1`.
    pub fn contains(&self, ix: i64, it: i64) -> bool {
        self.lines.contains(&ix) || self.sites.contains(&(ix, it))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(LatticeParams::new(1.0, 1.0).is_ok());
        assert!(LatticeParams::new(0.0, 0.5).is_ok());
        assert!(LatticeParams::new(-1.0, 1.0).is_err());
        assert!(LatticeParams::new(1.0, 0.0).is_err());
        assert!(LatticeParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn absorption_rejects_source() {
        assert!(AbsorptionSet::from_sites([(0, 0)]).is_err());
        assert!(AbsorptionSet::from_sites([(2, 2)]).is_ok());
    }

    #[test]
    fn cone_membership() {
        assert!(in_cone(1, 1));
        assert!(in_cone(-1, 3));
        assert!(!in_cone(5, 3));
        assert!(!in_cone(-3, 3)); // a(-t, t) = 0
        assert!(!in_cone(0, 3)); // white site
    }
}
