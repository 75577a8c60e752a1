//! Self-contained special functions: Airy Ai, Bessel J0/J1/Y0/Y1/K0/K1 and
//! the complete elliptic integrals K, E (used for the Gauss and inverse
//! lemniscate constants).
//!
//! Everything is series for small arguments plus standard asymptotic
//! expansions for large ones; no external special-function dependency.
//! Accuracy target is 1e-10 absolute over the supported ranges, which the
//! tests cross-validate against independent quadrature oracles.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A special-function value together with a crude error estimate
/// (truncation term plus an allowance for cancellation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecfunResult {
    pub value: f64,
    pub est_error: f64,
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// ---------------------------------------------------------------------
// Airy Ai
// ---------------------------------------------------------------------

const AIRY_MAX: f64 = 40.0;
const AIRY_SERIES_CUT: f64 = 7.0;
/// Ai(0) = 3^{-2/3} / Gamma(2/3)
const AI0: f64 = 0.355_028_053_887_817_24;
/// -Ai'(0) = 3^{-1/3} / Gamma(1/3)
const AIP0: f64 = 0.258_819_403_792_806_8;

/// Airy function of the first kind, `|lambda| <= 40`.
pub fn airy(lambda: f64) -> Result<SpecfunResult> {
    if !lambda.is_finite() || lambda.abs() > AIRY_MAX {
        return Err(Error::OutsideDomain(format!(
            "airy supports |lambda| <= {AIRY_MAX}, got {lambda}"
        )));
    }
    if lambda.abs() <= AIRY_SERIES_CUT {
        Ok(airy_maclaurin(lambda))
    } else if lambda > 0.0 {
        Ok(airy_asymptotic_pos(lambda))
    } else {
        Ok(airy_asymptotic_neg(-lambda))
    }
}

/// Maclaurin pair-series: Ai = Ai(0) f(x) + Ai'(0) g(x) where f, g solve
/// y'' = x y with (1,0) and (0,1) initial data.
fn airy_maclaurin(x: f64) -> SpecfunResult {
    let mut f_term = 1.0;
    let mut g_term = x;
    let mut f = f_term;
    let mut g = g_term;
    let mut max_term: f64 = 1.0;
    let x3 = x * x * x;
    let mut n = 0.0;
    loop {
        f_term *= x3 / ((n + 3.0) * (n + 2.0));
        g_term *= x3 / ((n + 4.0) * (n + 3.0));
        f += f_term;
        g += g_term;
        max_term = max_term.max(f_term.abs()).max(g_term.abs());
        n += 3.0;
        if f_term.abs() < 1e-18 && g_term.abs() < 1e-18 || n > 400.0 {
            break;
        }
    }
    SpecfunResult {
        value: AI0 * f - AIP0 * g,
        est_error: max_term * 1e-15 + 1e-16,
    }
}

/// u_k coefficients of the Airy asymptotic series:
/// u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!).
fn airy_u_next(u: f64, k: f64) -> f64 {
    u * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k)
}

fn airy_asymptotic_pos(x: f64) -> SpecfunResult {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let mut u = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    let mut last = 1.0_f64;
    loop {
        u = airy_u_next(u, k);
        let mag = u / zeta.powf(k);
        if mag > last {
            break; // divergent tail reached
        }
        sum += if (k as u64) % 2 == 1 { -mag } else { mag };
        last = mag;
        k += 1.0;
        if last < 1e-18 || k > 60.0 {
            break;
        }
    }
    let pre = (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25));
    SpecfunResult {
        value: pre * sum,
        est_error: pre * last + 1e-300,
    }
}

fn airy_asymptotic_neg(y: f64) -> SpecfunResult {
    let zeta = 2.0 / 3.0 * y.powf(1.5);
    // even and odd u_k sums with alternating signs
    let mut even = 1.0;
    let mut odd = 0.0;
    let mut u = 1.0;
    let mut k = 1.0;
    let mut last = 1.0_f64;
    loop {
        u = airy_u_next(u, k);
        let term = u / zeta.powi(k as i32);
        if term > last {
            break;
        }
        let signed = if ((k as u64) / 2) % 2 == 1 { -term } else { term };
        if (k as u64) % 2 == 1 {
            odd += signed;
        } else {
            even += signed;
        }
        last = term;
        k += 1.0;
        if last < 1e-18 || k > 60.0 {
            break;
        }
    }
    let pre = 1.0 / (PI.sqrt() * y.powf(0.25));
    let phase = zeta + PI / 4.0;
    SpecfunResult {
        value: pre * (phase.sin() * even - phase.cos() * odd),
        est_error: pre * last + 1e-16,
    }
}

// ---------------------------------------------------------------------
// Bessel J0, J1, Y0, Y1, K0, K1
// ---------------------------------------------------------------------

const BESSEL_MAX: f64 = 60.0;
const BESSEL_SERIES_CUT: f64 = 12.0;
const K_SERIES_CUT: f64 = 10.0;

fn check_order(n: u8) -> Result<()> {
    if n > 1 {
        return Err(Error::OutsideDomain(format!(
            "bessel functions implemented for orders 0 and 1, got {n}"
        )));
    }
    Ok(())
}

/// Bessel function of the first kind, order 0 or 1, `0 <= z <= 60`.
pub fn bessel_j(n: u8, z: f64) -> Result<SpecfunResult> {
    check_order(n)?;
    if !(0.0..=BESSEL_MAX).contains(&z) {
        return Err(Error::OutsideDomain(format!(
            "bessel_j supports 0 <= z <= {BESSEL_MAX}, got {z}"
        )));
    }
    if z <= BESSEL_SERIES_CUT {
        Ok(bessel_j_series(n, z))
    } else {
        let (p, q, err) = hankel_pq(n, z);
        let chi = z - (0.5 * n as f64 + 0.25) * PI;
        let pre = (2.0 / (PI * z)).sqrt();
        Ok(SpecfunResult {
            value: pre * (p * chi.cos() - q * chi.sin()),
            est_error: pre * err + 1e-16,
        })
    }
}

/// Bessel function of the second kind, order 0 or 1, `0 < z <= 60`.
pub fn bessel_y(n: u8, z: f64) -> Result<SpecfunResult> {
    check_order(n)?;
    if !(z > 0.0 && z <= BESSEL_MAX) {
        return Err(Error::OutsideDomain(format!(
            "bessel_y supports 0 < z <= {BESSEL_MAX}, got {z}"
        )));
    }
    if z <= BESSEL_SERIES_CUT {
        Ok(bessel_y_series(n, z))
    } else {
        let (p, q, err) = hankel_pq(n, z);
        let chi = z - (0.5 * n as f64 + 0.25) * PI;
        let pre = (2.0 / (PI * z)).sqrt();
        Ok(SpecfunResult {
            value: pre * (p * chi.sin() + q * chi.cos()),
            est_error: pre * err + 1e-16,
        })
    }
}

/// Modified Bessel function of the second kind, order 0 or 1, `0 < z <= 60`.
pub fn bessel_k(n: u8, z: f64) -> Result<SpecfunResult> {
    check_order(n)?;
    if !(z > 0.0 && z <= BESSEL_MAX) {
        return Err(Error::OutsideDomain(format!(
            "bessel_k supports 0 < z <= {BESSEL_MAX}, got {z}"
        )));
    }
    if z <= K_SERIES_CUT {
        Ok(bessel_k_series(n, z))
    } else {
        Ok(bessel_k_asymptotic(n, z))
    }
}

fn bessel_j_series(n: u8, z: f64) -> SpecfunResult {
    let q = 0.25 * z * z;
    let mut term = if n == 0 { 1.0 } else { 0.5 * z };
    let mut sum = term;
    let mut max_term = term.abs();
    let mut k = 1.0;
    while term.abs() > 1e-18 && k < 200.0 {
        term *= -q / (k * (k + n as f64));
        sum += term;
        max_term = max_term.max(term.abs());
        k += 1.0;
    }
    SpecfunResult {
        value: sum,
        est_error: max_term * 1e-15 + 1e-16,
    }
}

/// Ascending series for Y0/Y1 built on the J series and harmonic numbers.
fn bessel_y_series(n: u8, z: f64) -> SpecfunResult {
    let j = bessel_j_series(n, z);
    let log_term = (z / 2.0).ln() + EULER_GAMMA;
    let q = 0.25 * z * z;
    let mut max_term: f64 = 0.0;
    let value = if n == 0 {
        // (2/pi)[ (ln(z/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2 ]
        let mut sum = 0.0;
        let mut h = 0.0;
        let mut pow = 1.0; // q^k / (k!)^2
        for k in 1..200 {
            let kf = k as f64;
            h += 1.0 / kf;
            pow *= q / (kf * kf);
            let term = if k % 2 == 1 { h * pow } else { -h * pow };
            sum += term;
            max_term = max_term.max(term.abs());
            if pow * h < 1e-18 {
                break;
            }
        }
        2.0 / PI * (log_term * j.value + sum)
    } else {
        // (2/pi)(ln(z/2)+gamma) J1 - 2/(pi z)
        //   - (1/pi) sum_{k>=0} (-1)^k (H_k + H_{k+1}) (z/2)^{2k+1}/(k!(k+1)!)
        let mut sum = 0.0;
        let mut h_k = 0.0;
        let mut h_k1 = 1.0;
        let mut pow = 0.5 * z; // (z/2)^{2k+1}/(k!(k+1)!)
        for k in 0..200 {
            let term = if k % 2 == 0 {
                (h_k + h_k1) * pow
            } else {
                -(h_k + h_k1) * pow
            };
            sum += term;
            max_term = max_term.max(term.abs());
            let kf = (k + 1) as f64;
            pow *= q / (kf * (kf + 1.0));
            h_k += 1.0 / kf;
            h_k1 += 1.0 / (kf + 1.0);
            if pow * (h_k + h_k1) < 1e-18 {
                break;
            }
        }
        2.0 / PI * log_term * j.value - 2.0 / (PI * z) - sum / PI
    };
    SpecfunResult {
        value,
        est_error: (max_term + 1.0) * 1e-15,
    }
}

/// P and Q sums of the Hankel asymptotic expansion, with the magnitude of
/// the first omitted term as the error estimate.
fn hankel_pq(n: u8, z: f64) -> (f64, f64, f64) {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0; // a_k = prod (mu - (2j-1)^2) / (k! (8z)^k)
    let mut last = 1.0_f64;
    for k in 1..40 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0) * (2.0 * kf - 1.0)) / (kf * 8.0 * z);
        let term = a;
        if term.abs() > last {
            break;
        }
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        last = term.abs();
        if last < 1e-18 {
            break;
        }
    }
    (p, q, last)
}

fn bessel_i_series(n: u8, z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = if n == 0 { 1.0 } else { 0.5 * z };
    let mut sum = term;
    let mut k = 1.0;
    while term > 1e-18 * sum && k < 300.0 {
        term *= q / (k * (k + n as f64));
        sum += term;
        k += 1.0;
    }
    sum
}

fn bessel_k_series(n: u8, z: f64) -> SpecfunResult {
    let log_term = (z / 2.0).ln() + EULER_GAMMA;
    let q = 0.25 * z * z;
    let i = bessel_i_series(n, z);
    let value = if n == 0 {
        // -(ln(z/2)+gamma) I0 + sum_{k>=1} H_k q^k/(k!)^2
        let mut sum = 0.0;
        let mut h = 0.0;
        let mut pow = 1.0;
        for k in 1..300 {
            let kf = k as f64;
            h += 1.0 / kf;
            pow *= q / (kf * kf);
            sum += h * pow;
            if h * pow < 1e-18 * sum.max(1.0) {
                break;
            }
        }
        -log_term * i + sum
    } else {
        // 1/z + (ln(z/2)+gamma) I1 - (z/4) sum (H_k + H_{k+1}) q^k/(k!(k+1)!)
        let mut sum = 0.0;
        let mut h_k = 0.0;
        let mut h_k1 = 1.0;
        let mut pow = 1.0; // q^k/(k!(k+1)!)
        for k in 0..300 {
            sum += (h_k + h_k1) * pow;
            let kf = (k + 1) as f64;
            pow *= q / (kf * (kf + 1.0));
            h_k += 1.0 / kf;
            h_k1 += 1.0 / (kf + 1.0);
            if pow * (h_k + h_k1) < 1e-18 * sum.max(1.0) {
                break;
            }
        }
        1.0 / z + log_term * i - 0.25 * z * sum
    };
    SpecfunResult {
        value,
        est_error: i * 1e-15 + 1e-16,
    }
}

fn bessel_k_asymptotic(n: u8, z: f64) -> SpecfunResult {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut sum = 1.0;
    let mut a = 1.0;
    let mut last = 1.0_f64;
    for k in 1..60 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0) * (2.0 * kf - 1.0)) / (kf * 8.0 * z);
        if a.abs() > last {
            break;
        }
        sum += a;
        last = a.abs();
        if last < 1e-18 {
            break;
        }
    }
    let pre = (PI / (2.0 * z)).sqrt() * (-z).exp();
    SpecfunResult {
        value: pre * sum,
        est_error: pre * last + 1e-300,
    }
}

// ---------------------------------------------------------------------
// Complete elliptic integrals and the lemniscatic constants
// ---------------------------------------------------------------------

/// Complete elliptic integrals `(K(k), E(k))` of modulus `k in [0, 1)`,
/// by the arithmetic-geometric mean.
pub fn elliptic_ke(k: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::OutsideDomain(format!(
            "elliptic_ke needs modulus in [0,1), got {k}"
        )));
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - k * k).sqrt();
    let mut c = k;
    let mut c_sum = 0.5 * c * c; // sum of 2^{n-1} c_n^2 starting at n = 0
    let mut pow = 0.5;
    for _ in 0..60 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow *= 2.0;
        c_sum += pow * c * c;
        if c.abs() < 1e-17 {
            break;
        }
    }
    let big_k = PI / (2.0 * a);
    let big_e = big_k * (1.0 - c_sum);
    Ok((big_k, big_e))
}

/// The Gauss constant `G = (2/pi) K(i)` and the inverse lemniscate
/// constant `L' = (2/pi)(E(i) - K(i))`, computed once from the real-modulus
/// integrals via the imaginary-modulus transformation
/// `K(i) = K(1/sqrt2)/sqrt2`, `E(i) = sqrt2 E(1/sqrt2)`.
pub fn gauss_constants() -> (f64, f64) {
    static CACHE: OnceLock<(f64, f64)> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let (k, e) = elliptic_ke(inv_sqrt2).expect("modulus in range");
        let k_i = k * inv_sqrt2;
        let e_i = e * std::f64::consts::SQRT_2;
        (2.0 / PI * k_i, 2.0 / PI * (e_i - k_i))
    })
}
