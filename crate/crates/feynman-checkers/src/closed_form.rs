//! Closed-form binomial evaluations of the amplitudes and the
//! Young-diagram parity counts.
//!
//! The in-cone amplitude has the alternating-sum form
//!
//! ```text
//! a1 = (1+mu^2)^{(1-it)/2} * sum_r (-1)^r C(p-1, r)   C(q-1, r)   mu^{2r+1}
//! a2 = (1+mu^2)^{(1-it)/2} * sum_r (-1)^r C(p-1, r)   C(q-1, r-1) mu^{2r}
//! ```
//!
//! with `p = (ix+it)/2`, `q = (it-ix)/2`. The inner sums suffer severe
//! cancellation in floating point, so they are evaluated exactly in big
//! rationals whenever `mu` is rational and only the single normalization
//! multiply is inexact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{amplitude_exact, big_scaled_to_f64};
use crate::params::AmplitudePair;

/// The dimensionless mass `mu = m*eps`, either exactly rational or a float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mu {
    Rational(i64, i64),
    Real(f64),
}

impl Mu {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Mu::Rational(n, d) => n as f64 / d as f64,
            Mu::Real(v) => v,
        }
    }
}

/// Generalized binomial coefficient `C(n, k)` for integer `n` and `k >= 0`
/// via the falling factorial; zero for `k < 0`. Matches the standard
/// convention `C(n,k) = 0` for `0 <= n < k`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

fn check_in_cone_strict(ix: i64, it: i64) -> Result<()> {
    if ix.abs() >= it {
        return Err(Error::OutsideDomain(format!(
            "explicit formula needs |ix| < it, got ({ix},{it})"
        )));
    }
    if (ix + it) & 1 != 0 {
        return Err(Error::OutsideDomain(format!(
            "({ix},{it}) is not a black site"
        )));
    }
    Ok(())
}

/// Exact inner sums of the explicit formula for rational `mu = num/den`:
/// returns `(S1, S2)` with `a_k = (1+mu^2)^{(1-it)/2} * S_k`.
pub fn explicit_sums_rational(
    ix: i64,
    it: i64,
    mu_num: i64,
    mu_den: i64,
) -> Result<(BigRational, BigRational)> {
    check_in_cone_strict(ix, it)?;
    if mu_den == 0 {
        return Err(Error::InvalidParams("mu denominator is zero".into()));
    }
    let p = (ix + it) / 2 - 1;
    let q = (it - ix) / 2 - 1;
    let mu = BigRational::new(BigInt::from(mu_num), BigInt::from(mu_den));
    let mu2 = &mu * &mu;
    let mut s1 = BigRational::zero();
    let mut s2 = BigRational::zero();
    let mut sign = BigInt::one();
    // mu^{2r+1} and mu^{2r} running powers
    let mut pow_odd = mu.clone();
    let mut pow_even = BigRational::one();
    for r in 0..=(it - ix.abs()) / 2 {
        let c_p = binomial(p, r);
        s1 += BigRational::from(&sign * &c_p * binomial(q, r)) * &pow_odd;
        s2 += BigRational::from(&sign * &c_p * binomial(q, r - 1)) * &pow_even;
        sign = -sign;
        pow_odd *= &mu2;
        pow_even *= &mu2;
    }
    Ok((s1, s2))
}

/// Explicit formula with the big-rational inner sum and a single float
/// normalization multiply. For `Mu::Real` the sum falls back to f64 and is
/// subject to cancellation at large `it`.
pub fn explicit_amplitude(ix: i64, it: i64, mu: Mu) -> Result<AmplitudePair> {
    match mu {
        Mu::Rational(n, d) => {
            let (s1, s2) = explicit_sums_rational(ix, it, n, d)?;
            let muf = n as f64 / d as f64;
            let norm = (1.0 + muf * muf).powf((1 - it) as f64 / 2.0);
            Ok(AmplitudePair::new(
                norm * rational_to_f64(&s1),
                norm * rational_to_f64(&s2),
            ))
        }
        Mu::Real(muf) => {
            check_in_cone_strict(ix, it)?;
            let p = (ix + it) / 2 - 1;
            let q = (it - ix) / 2 - 1;
            let mu2 = muf * muf;
            let (mut s1, mut s2) = (0.0_f64, 0.0_f64);
            let (mut sign, mut pow_odd, mut pow_even) = (1.0_f64, muf, 1.0_f64);
            for r in 0..=(it - ix.abs()) / 2 {
                let c_p = binomial(p, r).to_f64().unwrap();
                s1 += sign * c_p * binomial(q, r).to_f64().unwrap() * pow_odd;
                s2 += sign * c_p * binomial(q, r - 1).to_f64().unwrap() * pow_even;
                sign = -sign;
                pow_odd *= mu2;
                pow_even *= mu2;
            }
            let norm = (1.0 + mu2).powf((1 - it) as f64 / 2.0);
            Ok(AmplitudePair::new(norm * s1, norm * s2))
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Scale-aware conversion: numerator and denominator may individually
    // overflow f64 while the quotient is moderate.
    let (n, d) = (r.numer(), r.denom());
    if n.is_zero() {
        return 0.0;
    }
    let down = (n.bits().max(d.bits()) as i64 - 800).max(0) as usize;
    let nr: BigInt = n >> down;
    let dr: BigInt = d >> down;
    nr.to_f64().unwrap_or(f64::INFINITY) / dr.to_f64().unwrap_or(f64::INFINITY)
}

/// Integer sums of the unit-lattice explicit formula: equals the integer
/// DP pair `(A1, A2)` exactly.
pub fn basic_sums(ix: i64, it: i64) -> Result<(BigInt, BigInt)> {
    check_in_cone_strict(ix, it)?;
    let p = (ix + it) / 2 - 1;
    let q = (it - ix) / 2 - 1;
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    let mut sign = BigInt::one();
    for r in 0..=(it - ix.abs()) / 2 {
        let c_p = binomial(p, r);
        s1 += &sign * &c_p * binomial(q, r);
        s2 += &sign * &c_p * binomial(q, r - 1);
        sign = -sign;
    }
    Ok((s1, s2))
}

/// The two alternative unit-lattice formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltVariant {
    A,
    B,
}

/// Integer sums of the alternative explicit formulas (unit lattice only);
/// both variants equal [`basic_sums`] and the integer DP bit for bit.
pub fn alt_basic_sums(ix: i64, it: i64, variant: AltVariant) -> Result<(BigInt, BigInt)> {
    check_in_cone_strict(ix, it)?;
    let r_max = (it - ix.abs()) / 2;
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    match variant {
        AltVariant::A => {
            let c = (ix + it - 2) / 2;
            let mut pow = BigInt::one(); // (-2)^r
            for r in 0..=r_max {
                let c_r = binomial(c, r);
                s1 += &pow * &c_r * binomial(it - r - 2, c);
                s2 += &pow * &c_r * binomial(it - r - 2, c - 1);
                pow *= BigInt::from(-2);
            }
        }
        AltVariant::B => {
            let theta = i64::from(ix >= 0);
            let half = (it - ix.abs() - 2) / 2;
            let mut sign = BigInt::one();
            for r in 0..=r_max {
                s1 += &sign
                    * binomial(half, r)
                    * binomial(ix.abs(), (it + ix.abs() - 4 * r - 2) / 2);
                s2 += &sign
                    * binomial(half, r - theta)
                    * binomial(ix.abs(), (it + ix.abs() - 4 * r) / 2);
                sign = -sign;
            }
        }
    }
    Ok((s1, s2))
}

/// Alternative formulas as floats (scale `2^{-(it-1)/2}` applied).
pub fn alt_explicit_basic(ix: i64, it: i64, variant: AltVariant) -> Result<AmplitudePair> {
    let (s1, s2) = alt_basic_sums(ix, it, variant)?;
    Ok(AmplitudePair::new(
        big_scaled_to_f64(&s1, it - 1),
        big_scaled_to_f64(&s2, it - 1),
    ))
}

/// Coefficients at `z^{t-k-1}` and `z^{t-k}` in `(1+z)^{t-k-1} (1-z)^{k-1}`,
/// which equal the integer pair `(A1, A2)` at the site `(-t+2k, t)` of the
/// unit lattice. Requires `1 <= k <= t-1`.
pub fn particular_values_poly(k: i64, t: i64) -> Result<(BigInt, BigInt)> {
    if k < 1 || k > t - 1 {
        return Err(Error::OutsideDomain(format!(
            "particular values need 1 <= k <= t-1, got k={k}, t={t}"
        )));
    }
    let deg_plus = t - k - 1;
    let deg_minus = k - 1;
    // poly = (1+z)^{deg_plus} * (1-z)^{deg_minus}, coefficient c_j
    let mut coeffs = vec![BigInt::zero(); (deg_plus + deg_minus + 1) as usize];
    for i in 0..=deg_plus {
        let b = binomial(deg_plus, i);
        for j in 0..=deg_minus {
            let sign = if j & 1 == 0 { 1 } else { -1 };
            coeffs[(i + j) as usize] += &b * binomial(deg_minus, j) * BigInt::from(sign);
        }
    }
    let pick = |d: i64| -> BigInt {
        coeffs
            .get(d as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    };
    Ok((pick(t - k - 1), pick(t - k)))
}

/// Young-diagram census for exactly `h` rows and `w` columns, counted by
/// the parity of the number of steps (distinct column heights).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YoungCount {
    pub h: i64,
    pub w: i64,
    pub n_even: u64,
    pub n_odd: u64,
}

const YOUNG_MAX: i64 = 10;

/// Brute-force enumeration of weakly decreasing column-height sequences
/// `h = c_1 >= c_2 >= ... >= c_w >= 1` with the step count read off as the
/// number of distinct heights. Bounded to `h, w <= 10`.
pub fn young_counts(h: i64, w: i64) -> Result<YoungCount> {
    if !(1..=YOUNG_MAX).contains(&h) || !(1..=YOUNG_MAX).contains(&w) {
        return Err(Error::SizeLimit(format!(
            "young enumeration supports 1 <= h,w <= {YOUNG_MAX}, got ({h},{w})"
        )));
    }
    let mut counts = YoungCount {
        h,
        w,
        n_even: 0,
        n_odd: 0,
    };
    // columns filled left to right; `steps` counts distinct heights
    fn rec(prev: i64, cols_left: i64, steps: u32, counts: &mut YoungCount) {
        if cols_left == 0 {
            if steps % 2 == 0 {
                counts.n_even += 1;
            } else {
                counts.n_odd += 1;
            }
            return;
        }
        for c in 1..=prev {
            rec(c, cols_left - 1, steps + u32::from(c != prev), counts);
        }
    }
    // the first column has height exactly h and contributes one step
    rec(h, w - 1, 1, &mut counts);
    Ok(counts)
}

/// `n_odd - n_even` from the amplitude identity: equals the integer
/// component `A1(h-w, h+w)` of the unit lattice, i.e.
/// `2^{(h+w-1)/2} a1(h-w, h+w)`.
pub fn young_delta(h: i64, w: i64) -> Result<BigInt> {
    if h < 1 || w < 1 {
        return Err(Error::InvalidParams(format!(
            "young_delta needs h,w >= 1, got ({h},{w})"
        )));
    }
    Ok(amplitude_exact(h - w, h + w).a1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::amplitude_dp;
    use crate::exact::ExactGrid;
    use crate::params::LatticeParams;
    use approx::assert_abs_diff_eq;

    #[test]
    fn table_entries_symbolic_mu() {
        // a(eps, 3eps): a1 = mu/(1+mu^2), a2 = -mu^2/(1+mu^2)
        for mu in [0.5_f64, 1.0, 2.0] {
            let a = explicit_amplitude(1, 3, Mu::Real(mu)).unwrap();
            assert_abs_diff_eq!(a.a1, mu / (1.0 + mu * mu), epsilon = 1e-15);
            assert_abs_diff_eq!(a.a2, -mu * mu / (1.0 + mu * mu), epsilon = 1e-15);
        }
    }

    #[test]
    fn central_coefficients() {
        // a1(0, 4n+2) = (-1)^n C(2n,n) / 2^{(4n+1)/2}; at n=1: -2 * 2^{-5/2}
        let a = explicit_amplitude(0, 6, Mu::Rational(1, 1)).unwrap();
        let expected = -2.0 / 2.0_f64.powf(2.5);
        assert_abs_diff_eq!(a.a1, expected, epsilon = 1e-15);
        // a1(0, 4n) = 0
        let a = explicit_amplitude(0, 4, Mu::Rational(1, 1)).unwrap();
        assert_abs_diff_eq!(a.a1, 0.0, epsilon = 1e-16);
    }

    #[test]
    fn rejects_outside_cone() {
        assert!(explicit_amplitude(3, 3, Mu::Rational(1, 1)).is_err());
        assert!(explicit_amplitude(5, 3, Mu::Rational(1, 1)).is_err());
        assert!(explicit_amplitude(1, 4, Mu::Rational(1, 1)).is_err());
        assert!(alt_basic_sums(3, 3, AltVariant::A).is_err());
        assert!(particular_values_poly(0, 4).is_err());
        assert!(particular_values_poly(4, 4).is_err());
    }

    #[test]
    fn three_way_equality_t_up_to_30() {
        let grid = ExactGrid::new(30);
        for it in 2..=30_i64 {
            for ix in ((2 - it)..it).step_by(2) {
                let e = grid.get(ix, it);
                let b = basic_sums(ix, it).unwrap();
                let va = alt_basic_sums(ix, it, AltVariant::A).unwrap();
                let vb = alt_basic_sums(ix, it, AltVariant::B).unwrap();
                assert_eq!((e.a1.clone(), e.a2.clone()), b, "basic at ({ix},{it})");
                assert_eq!(b, va, "variant A at ({ix},{it})");
                assert_eq!(b, vb, "variant B at ({ix},{it})");
            }
        }
    }

    #[test]
    fn explicit_matches_dp_various_mu() {
        for &(n, d) in &[(1_i64, 4_i64), (1, 2), (1, 1), (2, 1)] {
            let p = LatticeParams::new(n as f64 / d as f64, 1.0).unwrap();
            for it in 2..=30_i64 {
                for ix in ((2 - it)..it).step_by(4) {
                    let cf = explicit_amplitude(ix, it, Mu::Rational(n, d)).unwrap();
                    let dp = amplitude_dp(ix, it, p).unwrap();
                    let scale = dp.a1.abs().max(dp.a2.abs()).max(1e-30);
                    assert!(
                        (cf.a1 - dp.a1).abs() / scale < 1e-10
                            && (cf.a2 - dp.a2).abs() / scale < 1e-10,
                        "mu={n}/{d} site ({ix},{it})"
                    );
                }
            }
        }
    }

    #[test]
    fn particular_values_match_dp() {
        // k=2, t=4 -> site (0,4), table value -i/(2 sqrt 2)
        let (c1, c2) = particular_values_poly(2, 4).unwrap();
        assert_eq!(c1, BigInt::from(0));
        assert_eq!(c2, BigInt::from(-1));
        // k=1 -> a2 vanishes ((1-z)^0 expansion)
        let (c1, c2) = particular_values_poly(1, 9).unwrap();
        assert_eq!(c1, BigInt::from(1));
        assert_eq!(c2, BigInt::from(0));
        // full sweep against the integer DP
        let grid = ExactGrid::new(16);
        for t in 2..=16_i64 {
            for k in 1..t {
                let (c1, c2) = particular_values_poly(k, t).unwrap();
                let e = grid.get(-t + 2 * k, t);
                assert_eq!((c1, c2), (e.a1, e.a2), "k={k}, t={t}");
            }
        }
    }

    #[test]
    fn young_small_cases() {
        // h=w=3: diagrams 333 (1 step), 332, 331, 322, 311 (2 steps), 321 (3)
        let c = young_counts(3, 3).unwrap();
        assert_eq!((c.n_odd, c.n_even), (2, 4));
        assert_eq!(young_delta(3, 3).unwrap(), BigInt::from(-2));
        // h=w=2: 22 odd, 21 even -> difference 0
        assert_eq!(young_delta(2, 2).unwrap(), BigInt::from(0));
        // h=3, w=2 matches 2^2 a1(1,5) = -1
        let c = young_counts(3, 2).unwrap();
        assert_eq!(c.n_odd as i64 - c.n_even as i64, -1);
        assert_eq!(young_delta(3, 2).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn young_identity_exact_up_to_8() {
        for h in 1..=8_i64 {
            for w in 1..=8_i64 {
                let c = young_counts(h, w).unwrap();
                let delta = BigInt::from(c.n_odd as i64) - BigInt::from(c.n_even as i64);
                assert_eq!(delta, young_delta(h, w).unwrap(), "h={h}, w={w}");
            }
        }
    }

    #[test]
    fn young_bound_enforced() {
        assert!(young_counts(11, 3).is_err());
        assert!(young_counts(3, 0).is_err());
    }

    #[test]
    fn rational_sums_match_float_fallback() {
        for it in [4_i64, 10, 20] {
            for ix in ((2 - it)..it).step_by(2) {
                let exact = explicit_amplitude(ix, it, Mu::Rational(1, 2)).unwrap();
                let float = explicit_amplitude(ix, it, Mu::Real(0.5)).unwrap();
                assert_abs_diff_eq!(exact.a1, float.a1, epsilon = 1e-12);
                assert_abs_diff_eq!(exact.a2, float.a2, epsilon = 1e-12);
            }
        }
    }
}
