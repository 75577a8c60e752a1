//! Large-time and small-step asymptotics: the oscillatory main terms
//! between the distribution peaks, the Airy regime around them, the
//! exponential decay outside, the limiting distribution, continuum-limit
//! propagators and the lattice-step prescription algorithm.
//!
//! Conventions: approximation operations take the *query* site `(ix, it)`
//! and apply the internal shifts of the source formulas themselves, which
//! address `a1(x, t+eps)` and `a2(x+eps, t+eps)`. Inverse-trigonometric
//! arguments are clamped to their domains with 1e-12 slack.

use num::complex::Complex64;

use crate::dp::{amplitude_dp, dp_row};
use crate::error::{Error, Result};
use crate::params::{AmplitudePair, LatticeParams};
use crate::specfun::{airy, bessel_j, bessel_k, bessel_y};

const CLAMP_SLACK: f64 = 1e-12;
/// Half-width multiplier of the accepted Airy window around the peak.
const AIRY_WINDOW: f64 = 2.0;

fn clamped_asin(v: f64) -> Result<f64> {
    if v.abs() > 1.0 + CLAMP_SLACK {
        return Err(Error::OutsideDomain(format!("arcsin argument {v}")));
    }
    Ok(v.clamp(-1.0, 1.0).asin())
}

fn clamped_acosh(v: f64) -> Result<f64> {
    if v < 1.0 - CLAMP_SLACK {
        return Err(Error::OutsideDomain(format!("arcosh argument {v}")));
    }
    Ok(v.max(1.0).acosh())
}

/// The stationary-phase angle controlling the oscillations between the
/// peaks:
///
/// ```text
/// theta = (t/eps) arcsin( mu t / sqrt((1+mu^2)(t^2-x^2)) )
///       - (x/eps) arcsin( mu x / sqrt(t^2-x^2) ) + pi/4
/// ```
///
/// Defined for `|x|/t < 1/sqrt(1+mu^2)`.
pub fn theta_phase(x: f64, t: f64, params: LatticeParams) -> Result<f64> {
    let eps = params.eps();
    let mu = params.mu();
    if !(t > 0.0) || x.abs() / t >= params.peak_velocity() {
        return Err(Error::OutsideDomain(format!(
            "theta needs |x|/t < {}, got x={x}, t={t}",
            params.peak_velocity()
        )));
    }
    let s2 = t * t - x * x;
    let first = clamped_asin(mu * t / ((1.0 + mu * mu) * s2).sqrt())?;
    let second = clamped_asin(mu * x / s2.sqrt())?;
    Ok(t / eps * first - x / eps * second + std::f64::consts::FRAC_PI_4)
}

fn check_between_peaks(x: f64, t: f64, params: LatticeParams) -> Result<()> {
    if !(t > 0.0) || x.abs() / t >= params.peak_velocity() {
        return Err(Error::OutsideDomain(format!(
            "site outside the oscillatory region: x/t = {}, peak at {}",
            x / t.max(f64::MIN_POSITIVE),
            params.peak_velocity()
        )));
    }
    Ok(())
}

/// Main terms of the oscillatory large-time approximation at the black
/// query site `(ix, it)`. The `a1` term uses the internal point
/// `(ix, it-1)`, the `a2` term `(ix-1, it-1)`:
///
/// ```text
/// a1 = eps sqrt(2m/pi) (t^2-(1+mu^2)x^2)^{-1/4}                    sin(theta)
/// a2 = eps sqrt(2m/pi) (t^2-(1+mu^2)x^2)^{-1/4} sqrt((t+x)/(t-x))  cos(theta)
/// ```
///
/// Requires `eps <= 1/m` and both internal points strictly between the
/// peaks.
pub fn approx_between_peaks(ix: i64, it: i64, params: LatticeParams) -> Result<AmplitudePair> {
    if params.mu() > 1.0 {
        return Err(Error::OutsideDomain(
            "the oscillatory approximation requires eps <= 1/m".into(),
        ));
    }
    if (ix + it) & 1 != 0 {
        return Err(Error::OutsideDomain(format!(
            "({ix},{it}) is not a black site"
        )));
    }
    let eps = params.eps();
    let m = params.m();
    let mu = params.mu();
    let pre = eps * (2.0 * m / std::f64::consts::PI).sqrt();

    let x1 = ix as f64 * eps;
    let t1 = (it - 1) as f64 * eps;
    check_between_peaks(x1, t1, params)?;
    let amp1 = (t1 * t1 - (1.0 + mu * mu) * x1 * x1).powf(-0.25);
    let a1 = pre * amp1 * theta_phase(x1, t1, params)?.sin();

    let x2 = (ix - 1) as f64 * eps;
    let t2 = t1;
    check_between_peaks(x2, t2, params)?;
    let amp2 = (t2 * t2 - (1.0 + mu * mu) * x2 * x2).powf(-0.25);
    let a2 = pre
        * amp2
        * ((t2 + x2) / (t2 - x2)).sqrt()
        * theta_phase(x2, t2, params)?.cos();

    Ok(AmplitudePair::new(a1, a2))
}

/// The scaled distance-to-peak argument of the Airy regime:
/// `Delta = (2/(m^2 eps t))^{1/3} (sqrt(1+mu^2) x - t)/eps`.
pub fn airy_argument(x: f64, t: f64, params: LatticeParams) -> f64 {
    let eps = params.eps();
    let m = params.m();
    let mu = params.mu();
    (2.0 / (m * m * eps * t)).powf(1.0 / 3.0) * ((1.0 + mu * mu).sqrt() * x - t) / eps
}

/// Airy-function main terms around the peaks at the black query site.
/// Accepted when the internal points lie within `2 t^{-2/3}` of the peak
/// velocity.
pub fn approx_airy(ix: i64, it: i64, params: LatticeParams) -> Result<AmplitudePair> {
    if (ix + it) & 1 != 0 {
        return Err(Error::OutsideDomain(format!(
            "({ix},{it}) is not a black site"
        )));
    }
    let eps = params.eps();
    let m = params.m();
    let mu = params.mu();
    let vp = params.peak_velocity();
    let window = |x: f64, t: f64| -> Result<()> {
        if !(t > 0.0) || (x / t - vp).abs() >= AIRY_WINDOW * t.powf(-2.0 / 3.0) {
            return Err(Error::OutsideDomain(format!(
                "site outside the Airy window: |x/t - {vp}| = {}",
                (x / t.max(f64::MIN_POSITIVE) - vp).abs()
            )));
        }
        Ok(())
    };
    let tn = (it - 1) as f64 * eps;
    let scale = (2.0 / (m * m * eps * tn.max(f64::MIN_POSITIVE))).powf(1.0 / 3.0);

    // a1 at (+-x_n, t_n + eps): depends on |x| only
    let x1 = (ix.abs()) as f64 * eps;
    window(x1, tn)?;
    let sign1 = if ((it - ix.abs()) / 2 - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let a1 = sign1 * m * eps * scale * airy(airy_argument(x1, tn, params))?.value;

    // a2 at (+-x_n + eps, t_n + eps): the sign of x_n couples to the
    // (sqrt(1+mu^2) +- 1) factor
    let shifted = ix - 1;
    let s = if shifted >= 0 { 1.0 } else { -1.0 };
    let x2 = shifted.abs() as f64 * eps;
    window(x2, tn)?;
    let exp2 = (it - 1 - shifted.abs()) / 2;
    let sign2 = if exp2 % 2 == 0 { 1.0 } else { -1.0 };
    let a2 = sign2
        * ((1.0 + mu * mu).sqrt() + s)
        * scale
        * airy(airy_argument(x2, tn, params))?.value;

    Ok(AmplitudePair::new(a1, a2))
}

/// Exponential decay rate outside the peaks:
///
/// ```text
/// H(v) = -2 arcosh( mu / sqrt((1+mu^2)(1-v^2)) )
///        + 2|v| arcosh( mu |v| / sqrt(1-v^2) )
/// ```
///
/// for `1/sqrt(1+mu^2) < |v| < 1`; positive there and vanishing at the
/// peak velocity.
pub fn rate_h(v: f64, params: LatticeParams) -> Result<f64> {
    let mu = params.mu();
    if !(v.abs() < 1.0) || v.abs() < params.peak_velocity() - CLAMP_SLACK {
        return Err(Error::OutsideDomain(format!(
            "H is defined for {} < |v| < 1, got {v}",
            params.peak_velocity()
        )));
    }
    let one_minus = 1.0 - v * v;
    let first = clamped_acosh(mu / ((1.0 + mu * mu) * one_minus).sqrt())?;
    let second = clamped_acosh(mu * v.abs() / one_minus.sqrt())?;
    Ok(-2.0 * first + 2.0 * v.abs() * second)
}

/// Exponentially small main terms outside the peaks at the black query
/// site (same internal shifts as [`approx_between_peaks`]).
pub fn approx_outside(ix: i64, it: i64, params: LatticeParams) -> Result<AmplitudePair> {
    if (ix + it) & 1 != 0 {
        return Err(Error::OutsideDomain(format!(
            "({ix},{it}) is not a black site"
        )));
    }
    let eps = params.eps();
    let m = params.m();
    let mu = params.mu();
    let tn = (it - 1) as f64 * eps;
    if !(tn > 0.0) {
        return Err(Error::OutsideDomain("needs it >= 2".into()));
    }
    let pre = eps * (m / (2.0 * std::f64::consts::PI * tn)).sqrt();

    let x1 = ix as f64 * eps;
    let v1 = x1 / tn;
    let h1 = rate_h(v1, params)?;
    let sign1 = if ((it - ix.abs()) / 2 - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let a1 = pre * sign1 / ((1.0 + mu * mu) * v1 * v1 - 1.0).powf(0.25)
        * (-tn / (2.0 * eps) * h1).exp();

    let shifted = ix - 1;
    let x2 = shifted as f64 * eps;
    let v2 = x2 / tn;
    let h2 = rate_h(v2, params)?;
    let exp2 = (it - 1 - shifted.abs()) / 2;
    let sign2 = if exp2 % 2 == 0 { 1.0 } else { -1.0 };
    let a2 = pre * sign2 / ((1.0 + mu * mu) * v2 * v2 - 1.0).powf(0.25)
        * ((1.0 + v2) / (1.0 - v2)).sqrt()
        * (-tn / (2.0 * eps) * h2).exp();

    Ok(AmplitudePair::new(a1, a2))
}

/// `(1/t) log P` at the rounded site `2 eps ceil(v t / 2 eps)`; the log is
/// taken of the amplitude components directly so that the squared modulus
/// never underflows. Requires `t in 2 eps Z`, `t > 0`.
pub fn free_energy(v: f64, t: f64, params: LatticeParams) -> Result<f64> {
    let eps = params.eps();
    let steps = t / (2.0 * eps);
    if !(t > 0.0) || (steps - steps.round()).abs() > 1e-9 {
        return Err(Error::InvalidParams(format!(
            "free_energy needs t in 2 eps Z, got t={t}, eps={eps}"
        )));
    }
    let it = (2.0 * steps.round()) as i64;
    let ix = 2 * ((v * it as f64) / 2.0).ceil() as i64;
    let a = amplitude_dp(ix, it, params)?;
    let modulus = a.a1.hypot(a.a2);
    if modulus == 0.0 {
        return Err(Error::OutsideDomain(format!(
            "zero amplitude at ({ix},{it}); log P undefined"
        )));
    }
    Ok(2.0 * modulus.ln() / t)
}

/// Closed-form limiting distribution function of the scaled position
/// `v = x/t`:
///
/// ```text
/// F(v) = (1/pi) arccos( (1-(1+mu^2)v) / (sqrt(1+mu^2)(1-v)) )
/// ```
///
/// inside `|v| < 1/sqrt(1+mu^2)`, with 0 and 1 outside.
pub fn limiting_f(v: f64, params: LatticeParams) -> f64 {
    let mu2 = params.mu() * params.mu();
    let vp = params.peak_velocity();
    if v <= -vp {
        0.0
    } else if v >= vp {
        1.0
    } else {
        let arg = (1.0 - (1.0 + mu2) * v) / ((1.0 + mu2).sqrt() * (1.0 - v));
        arg.clamp(-1.0, 1.0).acos() / std::f64::consts::PI
    }
}

/// Empirical distribution function `sum_{x <= v t} P(x, t)` from the
/// amplitude row at time `it`.
pub fn empirical_cdf(v: f64, it: i64, params: LatticeParams) -> Result<f64> {
    if it < 1 {
        return Err(Error::InvalidParams(format!("it must be >= 1, got {it}")));
    }
    let row = dp_row(it, params);
    let bound = v * it as f64;
    Ok(row
        .iter()
        .filter(|(ix, _)| (*ix as f64) <= bound)
        .map(|(_, a)| a.prob())
        .sum())
}

/// Kolmogorov-Smirnov distance `sup_v |F_t(v) - F(v)|` between the
/// empirical and limiting distributions at time `it`.
pub fn cdf_sup_distance(it: i64, params: LatticeParams) -> Result<f64> {
    if it < 1 {
        return Err(Error::InvalidParams(format!("it must be >= 1, got {it}")));
    }
    let row = dp_row(it, params);
    let t = it as f64;
    let mut cum = 0.0;
    let mut sup: f64 = 0.0;
    for (ix, a) in row.iter() {
        let f = limiting_f(ix as f64 / t, params);
        sup = sup.max((cum - f).abs()); // just below the jump
        cum += a.prob();
        sup = sup.max((cum - f).abs()); // just above
    }
    Ok(sup)
}

/// Moment `sum_x (x/t)^r P(x, t)` of the unit-lattice walk.
pub fn moment(r: u32, it: i64) -> f64 {
    let row = dp_row(it, LatticeParams::unit());
    row.iter()
        .map(|(ix, a)| (ix as f64 / it as f64).powi(r as i32) * a.prob())
        .sum()
}

/// Limit of the moments: `Int v^r F'(v) dv` for the unit lattice, by
/// Simpson quadrature after the substitution `v = sin(u)/sqrt2` that
/// removes the inverse-square-root endpoint singularity.
pub fn moment_limit(r: u32) -> f64 {
    let n = 20_000;
    let a = -std::f64::consts::FRAC_PI_2;
    let b = std::f64::consts::FRAC_PI_2;
    let h = (b - a) / n as f64;
    let g = |u: f64| -> f64 {
        let v = u.sin() * std::f64::consts::FRAC_1_SQRT_2;
        v.powi(r as i32) / (1.0 - v)
    };
    let mut s = g(a) + g(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(a + i as f64 * h);
    }
    s * h / 3.0 / (std::f64::consts::PI * 2.0_f64.sqrt())
}

/// 2x2 propagator matrix at a spacetime point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorMatrix {
    pub entries: [[Complex64; 2]; 2],
}

impl PropagatorMatrix {
    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); 2]; 2],
        }
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.entries[k - 1][l - 1]
    }
}

/// Main term of the continuum approximation of the lattice amplitude:
/// `a(x,t) ~ m eps (J0(ms) - i (t+x)/s J1(ms))`, `s = sqrt(t^2-x^2)`.
pub fn continuum_approx(x: f64, t: f64, params: LatticeParams) -> Result<Complex64> {
    if !(x.abs() < t) {
        return Err(Error::OutsideDomain(format!(
            "continuum approximation needs |x| < t, got ({x},{t})"
        )));
    }
    let s = (t * t - x * x).sqrt();
    let m = params.m();
    let j0 = bessel_j(0, m * s)?.value;
    let j1 = bessel_j(1, m * s)?.value;
    Ok(params.mu() * Complex64::new(j0, -(t + x) / s * j1))
}

/// Retarded propagator of the continuum Dirac equation: vanishes for
/// `t < |x|`, Bessel-J form inside the light cone, light-cone points
/// rejected.
pub fn retarded_propagator(x: f64, t: f64, m: f64) -> Result<PropagatorMatrix> {
    if x.abs() == t.abs() {
        return Err(Error::OutsideDomain(
            "propagator entries are singular on the light cone".into(),
        ));
    }
    if t < x.abs() {
        return Ok(PropagatorMatrix::zero());
    }
    let s = (t * t - x * x).sqrt();
    let j0 = bessel_j(0, m * s)?.value;
    let j1 = bessel_j(1, m * s)?.value;
    let half_m = Complex64::new(0.5 * m, 0.0);
    Ok(PropagatorMatrix {
        entries: [
            [
                half_m * j0,
                -half_m * ((t + x) / (t - x)).sqrt() * j1,
            ],
            [
                half_m * ((t - x) / (t + x)).sqrt() * j1,
                half_m * j0,
            ],
        ],
    })
}

/// Feynman propagator: Bessel J - iY inside the light cone, modified
/// Bessel K outside (nonzero there, unlike the retarded one).
pub fn feynman_propagator(x: f64, t: f64, m: f64) -> Result<PropagatorMatrix> {
    if x.abs() == t.abs() {
        return Err(Error::OutsideDomain(
            "propagator entries are singular on the light cone".into(),
        ));
    }
    let s = (t * t - x * x).abs().sqrt();
    if x.abs() < t.abs() {
        let j0 = bessel_j(0, m * s)?.value;
        let j1 = bessel_j(1, m * s)?.value;
        let y0 = bessel_y(0, m * s)?.value;
        let y1 = bessel_y(1, m * s)?.value;
        let q = Complex64::new(0.25 * m, 0.0);
        let h0 = Complex64::new(j0, -y0);
        let h1 = Complex64::new(j1, -y1);
        Ok(PropagatorMatrix {
            entries: [
                [q * h0, -q * ((t + x) / s) * h1],
                [q * ((t - x) / s) * h1, q * h0],
            ],
        })
    } else {
        let k0 = bessel_k(0, m * s)?.value;
        let k1 = bessel_k(1, m * s)?.value;
        let q = Complex64::new(0.0, m / (2.0 * std::f64::consts::PI));
        Ok(PropagatorMatrix {
            entries: [
                [q * k0, q * ((t + x) / s) * k1],
                [q * ((x - t) / s) * k1, q * k0],
            ],
        })
    }
}

/// Free-particle kernel `K(x,t) = sqrt(m/(2 pi t)) e^{i(m x^2/(2t) - pi/4)}`.
pub fn feynman_kernel(x: f64, t: f64, m: f64) -> Complex64 {
    let modulus = (m / (2.0 * std::f64::consts::PI * t)).sqrt();
    Complex64::from_polar(
        modulus,
        m * x * x / (2.0 * t) - std::f64::consts::FRAC_PI_4,
    )
}

/// Feasibility threshold for the prescribed lattice step: DP sweeps with
/// more rows than this are refused without an override.
pub const MAX_FEASIBLE_STEPS: f64 = 1e7;

/// Result of the lattice-step prescription.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPrescription {
    /// `eps = (t-|x|) min(branch_coarse, branch_accuracy)`.
    pub eps: f64,
    /// `1/(16 e^{3mt})`.
    pub branch_coarse: f64,
    /// `(Delta / (900 m e^{m^2 t^2}))^3`.
    pub branch_accuracy: f64,
    /// Whether `t/eps <= 1e7` so a direct sweep is possible.
    pub feasible: bool,
}

/// Prescribed lattice step guaranteeing propagator accuracy `delta`:
///
/// ```text
/// eps = (t - |x|) min( 1/(16 e^{3mt}), (Delta/(9 C m e^{m^2 t^2}))^3 ),  C = 100
/// ```
pub fn algorithm1_eps(m: f64, x: f64, t: f64, delta: f64) -> Result<StepPrescription> {
    if !(m > 0.0) || !(x.abs() < t) || !(delta > 0.0) {
        return Err(Error::InvalidParams(format!(
            "prescription needs m > 0, |x| < t, delta > 0; got m={m}, x={x}, t={t}, delta={delta}"
        )));
    }
    let branch_coarse = 1.0 / (16.0 * (3.0 * m * t).exp());
    let branch_accuracy = (delta / (9.0 * 100.0 * m * (m * m * t * t).exp())).powi(3);
    let eps = (t - x.abs()) * branch_coarse.min(branch_accuracy);
    Ok(StepPrescription {
        eps,
        branch_coarse,
        branch_accuracy,
        feasible: t / eps <= MAX_FEASIBLE_STEPS,
    })
}

/// Outcome of running the propagator approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorRun {
    pub prescription: StepPrescription,
    /// Step actually used (the override, if given).
    pub eps_used: f64,
    /// The four approximated entries `G_kl`.
    pub entries: [[f64; 2]; 2],
    /// Max entry-wise distance to the Bessel form of the retarded
    /// propagator.
    pub achieved_error: f64,
}

/// Runs the propagator approximation: each entry is a rescaled amplitude
/// at a rounded lattice site,
/// `G_kl = (-1)^{(k-1)l}/(2 eps) a_{(k+l) mod 2 + 1}(2 eps ceil((-1)^{(k-1)l} x / 2 eps), 2 eps ceil(t / 2 eps))`.
/// Refuses infeasible prescriptions unless `eps_override` is given.
pub fn algorithm1_run(
    m: f64,
    x: f64,
    t: f64,
    delta: f64,
    eps_override: Option<f64>,
) -> Result<PropagatorRun> {
    let prescription = algorithm1_eps(m, x, t, delta)?;
    let eps_used = match eps_override {
        Some(e) if e > 0.0 => e,
        Some(e) => {
            return Err(Error::InvalidParams(format!(
                "override step must be > 0, got {e}"
            )))
        }
        None if prescription.feasible => prescription.eps,
        None => {
            return Err(Error::SizeLimit(format!(
                "prescribed eps = {:.3e} needs t/eps = {:.3e} rows; pass an override",
                prescription.eps,
                t / prescription.eps
            )))
        }
    };
    let params = LatticeParams::new(m, eps_used)?;
    let it = 2 * (t / (2.0 * eps_used)).ceil() as i64;
    let ix_pos = 2 * (x / (2.0 * eps_used)).ceil() as i64;
    let ix_neg = 2 * (-x / (2.0 * eps_used)).ceil() as i64;
    let row = dp_row(it, params);
    let at = |ix: i64| row.get(ix);
    let mut entries = [[0.0_f64; 2]; 2];
    for k in 1..=2usize {
        for l in 1..=2usize {
            let flip = ((k - 1) * l) % 2 == 1;
            let site = if flip { ix_neg } else { ix_pos };
            let comp = (k + l) % 2 + 1;
            let a = at(site);
            let val = if comp == 1 { a.a1 } else { a.a2 };
            entries[k - 1][l - 1] = (if flip { -1.0 } else { 1.0 }) * val / (2.0 * eps_used);
        }
    }
    let reference = retarded_propagator(x, t, m)?;
    let mut achieved_error: f64 = 0.0;
    for k in 1..=2usize {
        for l in 1..=2usize {
            achieved_error = achieved_error
                .max((entries[k - 1][l - 1] - reference.get(k, l).re).abs());
        }
    }
    Ok(PropagatorRun {
        prescription,
        eps_used,
        entries,
        achieved_error,
    })
}

/// A point of a scaling sequence: lattice coordinates plus its own step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSite {
    pub ix: i64,
    pub it: i64,
    pub eps: f64,
}

/// Ratio of the rescaled lattice amplitude to the free-particle limit
/// form along a scaling sequence:
///
/// ```text
/// r_n = [ a(x_n, t_n) / (2 i eps_n) ] / [ sqrt(m/(2 pi t_n)) e^{i(-m t_n - pi/4 + m x_n^2/(2 t_n))} ]
/// ```
pub fn triple_limit_check(seq: &[ScaledSite], m: f64) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(seq.len());
    for site in seq {
        let params = LatticeParams::new(m, site.eps)?;
        let a = amplitude_dp(site.ix, site.it, params)?;
        let x = site.ix as f64 * site.eps;
        let t = site.it as f64 * site.eps;
        let lhs = a.to_complex() / Complex64::new(0.0, 2.0 * site.eps);
        let rhs = Complex64::from_polar(
            (m / (2.0 * std::f64::consts::PI * t)).sqrt(),
            -m * t - std::f64::consts::FRAC_PI_4 + m * x * x / (2.0 * t),
        );
        out.push(lhs / rhs);
    }
    Ok(out)
}

/// Rough single-term form of the oscillatory approximation:
/// `a ~ eps sqrt(2m/(pi t)) e^{i(-m sqrt(t^2-x^2) + pi/4)}`.
pub fn simple_asymptotic(x: f64, t: f64, params: LatticeParams) -> Result<Complex64> {
    check_between_peaks(x, t, params)?;
    let s = (t * t - x * x).sqrt();
    Ok(Complex64::from_polar(
        params.eps() * (2.0 * params.m() / (std::f64::consts::PI * t)).sqrt(),
        -params.m() * s + std::f64::consts::FRAC_PI_4,
    ))
}

/// Oscillatory main terms for the antiparticle values at the white query
/// site: cosine for `b1`, negative sine for `b2`, sharing [`theta_phase`].
pub fn anti_asymptotic(ix: i64, it: i64, params: LatticeParams) -> Result<(f64, f64)> {
    if (ix + it) & 1 == 0 {
        return Err(Error::OutsideDomain(format!(
            "({ix},{it}) is not a white site"
        )));
    }
    if params.mu() > 1.0 {
        return Err(Error::OutsideDomain(
            "the oscillatory approximation requires eps <= 1/m".into(),
        ));
    }
    let eps = params.eps();
    let m = params.m();
    let mu = params.mu();
    let pre = eps * (2.0 * m / std::f64::consts::PI).sqrt();

    let x1 = ix as f64 * eps;
    let t1 = (it - 1) as f64 * eps;
    check_between_peaks(x1, t1, params)?;
    let amp1 = (t1 * t1 - (1.0 + mu * mu) * x1 * x1).powf(-0.25);
    let b1 = pre * amp1 * theta_phase(x1, t1, params)?.cos();

    let x2 = (ix - 1) as f64 * eps;
    check_between_peaks(x2, t1, params)?;
    let amp2 = (t1 * t1 - (1.0 + mu * mu) * x2 * x2).powf(-0.25);
    let b2 = -pre
        * amp2
        * ((t1 + x2) / (t1 - x2)).sqrt()
        * theta_phase(x2, t1, params)?.sin();

    Ok((b1, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactGrid;
    use crate::spectral::b_pair;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn theta_closed_form_on_axis() {
        let p = LatticeParams::unit();
        for t in [4.0, 10.0, 100.0] {
            assert_abs_diff_eq!(
                theta_phase(0.0, t, p).unwrap(),
                t * PI / 4.0 + PI / 4.0,
                epsilon = 1e-10
            );
        }
        // outside the oscillatory region
        assert!(theta_phase(0.8, 1.0, p).is_err());
    }

    #[test]
    fn between_peaks_accuracy_and_decay() {
        let p = LatticeParams::unit();
        let grid = ExactGrid::new(802);
        // internal point (0, t) with even t lies on the a2 parity branch,
        // so the estimate is read at the query site (1, t+1)
        let mut errs = Vec::new();
        for t in [100_i64, 200, 400, 800] {
            let (_, e2) = grid.get(1, t + 1).to_floats();
            let a = approx_between_peaks(1, t + 1, p).unwrap();
            errs.push(((t as f64).ln(), (a.a2 - e2).abs()));
        }
        assert!(errs[0].1 < 5e-4, "error at t=100: {}", errs[0].1);
        assert!(errs[3].1 <= 2e-4, "error at t=800: {}", errs[3].1);
        // log-log slope of the error in [-1.9, -1.1] (the t^{-3/2} law)
        let slope = (errs[3].1.ln() - errs[0].1.ln()) / (errs[3].0 - errs[0].0);
        assert!(
            (-1.9..=-1.1).contains(&slope),
            "error decay slope {slope} outside [-1.9, -1.1]"
        );
        // at the symmetric point x = 0 itself (odd internal t, a1 branch)
        // the correction cancels and the error decays even faster
        let (e1, _) = grid.get(0, 102).to_floats();
        let a = approx_between_peaks(0, 102, p).unwrap();
        assert!((a.a1 - e1).abs() < 5e-4);
    }

    #[test]
    fn between_peaks_region_check() {
        let p = LatticeParams::unit();
        // x/t = 0.8 > 1/sqrt2
        assert!(approx_between_peaks(80, 101, p).is_err());
        // eps > 1/m rejected
        let heavy = LatticeParams::new(2.0, 1.0).unwrap();
        assert!(approx_between_peaks(0, 101, heavy).is_err());
    }

    #[test]
    fn airy_argument_peak_and_expansion() {
        let p = LatticeParams::unit();
        // Delta = 0 exactly on the peak line x = t/sqrt(1+mu^2)
        let t = 123.0;
        assert_abs_diff_eq!(airy_argument(t / 2.0_f64.sqrt(), t, p), 0.0, epsilon = 1e-12);
        // hand-expanded value at (x,t,m,eps) = (5,8,1,1)
        let want = (2.0_f64 / 8.0).powf(1.0 / 3.0) * (2.0_f64.sqrt() * 5.0 - 8.0);
        assert_abs_diff_eq!(airy_argument(5.0, 8.0, p), want, epsilon = 1e-14);
    }

    #[test]
    fn airy_zone_envelope_at_t400() {
        let p = LatticeParams::unit();
        let t = 400_i64;
        // nearest black site to the peak 400/sqrt2 = 282.8: x odd
        let x = 283_i64;
        let grid = ExactGrid::new(t + 1);
        let (e1, _) = grid.get(x, t + 1).to_floats();
        let a = approx_airy(x, t + 1, p).unwrap();
        assert!(e1 != 0.0 && a.a1 != 0.0);
        assert_eq!(a.a1.signum(), e1.signum(), "sign mismatch at the peak");
        let ratio = (a.a1 / e1).abs();
        assert!(
            (1.0 / 3.0..=3.0).contains(&ratio),
            "main term off by more than 3x: {ratio}"
        );
        // far outside the window the operation refuses
        assert!(approx_airy(1, t + 1, p).is_err());
    }

    #[test]
    fn rate_function_shape() {
        let p = LatticeParams::unit();
        assert_abs_diff_eq!(
            rate_h(0.9, p).unwrap(),
            0.307_289_907_783_133_2,
            epsilon = 1e-12
        );
        // H -> 0 at the peak velocity
        let h_edge = rate_h(1.0 / 2.0_f64.sqrt() + 1e-9, p).unwrap();
        assert!(h_edge.abs() < 1e-3);
        // positive and convex on a sample grid
        let vs: Vec<f64> = (0..40).map(|i| 0.7072 + i as f64 * 0.007).collect();
        let hs: Vec<f64> = vs.iter().map(|&v| rate_h(v, p).unwrap()).collect();
        for h in &hs {
            assert!(*h >= 0.0);
        }
        for w in hs.windows(3) {
            assert!(w[0] + w[2] - 2.0 * w[1] >= -1e-8, "convexity violated");
        }
        assert!(rate_h(0.5, p).is_err());
        assert!(rate_h(1.1, p).is_err());
    }

    #[test]
    fn free_energy_matches_rate() {
        let p = LatticeParams::unit();
        let h = rate_h(0.9, p).unwrap();
        let fe = free_energy(0.9, 200.0, p).unwrap();
        assert!(
            (fe + h).abs() <= 0.15 * h,
            "free energy {fe} vs -H = {}",
            -h
        );
        assert!(free_energy(0.9, 201.0, p).is_err()); // t not in 2 eps Z
    }

    #[test]
    fn outside_approx_tracks_dp() {
        let p = LatticeParams::unit();
        // v = 0.9 at t = 199: compare to the exact amplitude in log scale
        let grid = ExactGrid::new(200);
        let (e1, _) = grid.get(180, 200).to_floats();
        let a = approx_outside(180, 200, p).unwrap();
        assert_eq!(a.a1.signum(), e1.signum());
        let log_ratio = (a.a1.abs().ln() - e1.abs().ln()).abs();
        assert!(log_ratio < 0.2 * e1.abs().ln().abs(), "log ratio {log_ratio}");
        // inside the peaks the rate function (hence the form) is undefined
        assert!(approx_outside(50, 200, p).is_err());
    }

    #[test]
    fn limiting_distribution_values() {
        let p = LatticeParams::unit();
        assert_abs_diff_eq!(limiting_f(0.0, p), 0.25, epsilon = 1e-14);
        assert_eq!(limiting_f(-0.8, p), 0.0);
        assert_eq!(limiting_f(0.8, p), 1.0);
        assert_abs_diff_eq!(
            limiting_f(1.0 / 2.0_f64.sqrt() - 1e-12, p),
            1.0,
            epsilon = 1e-5
        );
        // valid CDF: nondecreasing, and continuous in the sense that the
        // largest grid increment keeps shrinking under refinement (the
        // density has integrable square-root singularities at the peaks,
        // so the increment cannot be compared to a fixed tiny bound)
        let max_jump = |n: usize| -> f64 {
            let mut prev = 0.0;
            let mut worst: f64 = 0.0;
            for i in 0..=n {
                let v = -1.0 + 2.0 * i as f64 / n as f64;
                let f = limiting_f(v, p);
                assert!(f >= prev - 1e-15, "not monotone at v={v}");
                worst = worst.max(f - prev);
                prev = f;
            }
            worst
        };
        let coarse = max_jump(10_000);
        let fine = max_jump(1_000_000);
        assert!(coarse < 2e-2, "jump {coarse}");
        assert!(fine < 0.15 * coarse, "refinement does not shrink the jump");
    }

    #[test]
    fn empirical_cdf_converges() {
        let p = LatticeParams::unit();
        let d = cdf_sup_distance(500, p).unwrap();
        assert!(d <= 0.06, "KS distance {d} at t=500");
        // and it shrinks with t
        let d_small = cdf_sup_distance(100, p).unwrap();
        assert!(d < d_small);
    }

    #[test]
    fn moments_match_limit_integrals() {
        for r in [1u32, 2, 3] {
            let lattice = moment(r, 400);
            let limit = moment_limit(r);
            assert!(
                (lattice - limit).abs() < 2e-2,
                "moment r={r}: {lattice} vs {limit}"
            );
        }
        // sanity: the known mean 1 - 1/sqrt2
        assert_abs_diff_eq!(
            moment_limit(1),
            1.0 - std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-6
        );
    }

    #[test]
    fn propagator_structure() {
        let g = retarded_propagator(0.3, 1.0, 10.0).unwrap();
        assert_eq!(g.get(1, 1), g.get(2, 2));
        assert!(retarded_propagator(1.2, 1.0, 10.0).unwrap().get(1, 1).norm() == 0.0);
        assert!(retarded_propagator(1.0, 1.0, 10.0).is_err());
        // Feynman form is nonzero outside the cone
        let f = feynman_propagator(2.0, 1.0, 1.0).unwrap();
        assert!(f.get(1, 1).norm() > 0.0);
        assert_eq!(f.get(1, 1), f.get(2, 2));
    }

    #[test]
    fn green_function_residual() {
        // plugging the Bessel form into the continuum Dirac operator via
        // central differences: residual < 1e-4 at step 1e-3 off the cone
        let m = 1.0;
        let h = 1e-3;
        for &(x, t) in &[(0.3, 1.0), (-0.5, 2.0), (0.0, 1.5)] {
            let g = |xx: f64, tt: f64, k: usize, l: usize| {
                retarded_propagator(xx, tt, m).unwrap().get(k, l).re
            };
            for l in 1..=2usize {
                let dx_g2 = (g(x + h, t, 2, l) - g(x - h, t, 2, l)) / (2.0 * h);
                let dt_g2 = (g(x, t + h, 2, l) - g(x, t - h, 2, l)) / (2.0 * h);
                let r_top = m * g(x, t, 1, l) + dx_g2 - dt_g2;
                let dx_g1 = (g(x + h, t, 1, l) - g(x - h, t, 1, l)) / (2.0 * h);
                let dt_g1 = (g(x, t + h, 1, l) - g(x, t - h, 1, l)) / (2.0 * h);
                let r_bot = dx_g1 + dt_g1 + m * g(x, t, 2, l);
                assert!(r_top.abs() < 1e-4 && r_bot.abs() < 1e-4);
            }
        }
    }

    #[test]
    fn continuum_approx_matches_rescaled_amplitude() {
        // pointwise continuum limit at (x,t) = (0.25, 1): n a -> m J0 - ...
        let m = 1.0;
        let x = 0.25;
        let t = 1.0;
        let mut prev_err = f64::INFINITY;
        for n in [20_i64, 40, 80] {
            let eps = 1.0 / n as f64;
            let params = LatticeParams::new(m, eps).unwrap();
            let ix = 2 * ((n as f64 * x) / 2.0).floor() as i64;
            let it = 2 * ((n as f64 * t) / 2.0).floor() as i64;
            let a = amplitude_dp(ix, it, params).unwrap();
            let approx = continuum_approx(ix as f64 * eps, it as f64 * eps, params).unwrap();
            let err = (a.to_complex() - approx).norm() / eps;
            assert!(err < prev_err, "continuum error not shrinking: {err}");
            prev_err = err;
        }
    }

    #[test]
    fn kernel_phase() {
        let k = feynman_kernel(0.0, 2.0, 1.0);
        assert_abs_diff_eq!(k.arg(), -PI / 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(k.norm(), (1.0 / (4.0 * PI)).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn prescription_worked_example() {
        let p = algorithm1_eps(1.0, 0.0, 1.0, 0.1).unwrap();
        assert_abs_diff_eq!(p.branch_coarse, 3.111_691_772_991_496e-3, epsilon = 1e-12);
        assert_abs_diff_eq!(p.eps, 6.829_501_833_726_19e-14, epsilon = 1e-22);
        assert!(!p.feasible);
        // Delta -> infinity saturates the coarse branch
        let p = algorithm1_eps(1.0, 0.0, 1.0, 1e30).unwrap();
        assert_abs_diff_eq!(p.eps, p.branch_coarse, epsilon = 1e-18);
        assert!(algorithm1_run(1.0, 0.0, 1.0, 0.1, None).is_err());
    }

    #[test]
    fn propagator_run_with_override() {
        let run = algorithm1_run(10.0, 0.3, 1.0, 0.2, Some(0.002)).unwrap();
        assert!(run.achieved_error <= 0.1, "error {}", run.achieved_error);
    }

    #[test]
    fn triple_limit_counterexample_phase() {
        // sequence (0, 4n^2, 1/2n): the phase of the ratio drifts toward
        // m^3/3 = 1/3 instead of 0, monotonically over n = 3..8
        let seq: Vec<ScaledSite> = (3..=8)
            .map(|n| ScaledSite {
                ix: 0,
                it: 8 * n * n * n,
                eps: 1.0 / (2 * n) as f64,
            })
            .collect();
        let ratios = triple_limit_check(&seq, 1.0).unwrap();
        let gaps: Vec<f64> = ratios.iter().map(|r| (r.arg() - 1.0 / 3.0).abs()).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "gaps {gaps:?}");
        assert!(*gaps.last().unwrap() < 0.1, "gap {} at n=8", gaps.last().unwrap());
        // moduli stay near 1
        assert!((ratios.last().unwrap().norm() - 1.0).abs() < 0.01);
    }

    #[test]
    fn simple_asymptotic_between_peaks() {
        let p = LatticeParams::unit();
        // phase at x = 0 is -mt + pi/4
        let s = simple_asymptotic(0.0, 200.0, p).unwrap();
        let want = (-200.0_f64 + PI / 4.0).rem_euclid(2.0 * PI);
        assert_abs_diff_eq!(s.arg().rem_euclid(2.0 * PI), want, epsilon = 1e-10);
        // the form is first order in m eps, so at mu = 1 only the modulus
        // is meaningful: relative modulus error vs the exact amplitude
        let grid = ExactGrid::new(200);
        let (e1, e2) = grid.get(0, 200).to_floats();
        let exact = Complex64::new(e1, e2);
        assert!((s.norm() - exact.norm()).abs() / exact.norm() < 0.05);
        // modulus equals the oscillatory envelope at x = 0
        let env = (2.0 / (PI * 200.0)).sqrt();
        assert!((s.norm() - env).abs() < 1e-12);
        // in its actual validity regime (m^3 eps^2 t small) the full
        // complex error is controlled as well
        let fine = LatticeParams::new(1.0, 0.025).unwrap();
        let a = amplitude_dp(40, 1600, fine).unwrap(); // (x,t) = (1, 40)
        let s = simple_asymptotic(1.0, 40.0, fine).unwrap();
        assert!(
            (s - a.to_complex()).norm() / a.to_complex().norm() < 0.1,
            "relative error {}",
            (s - a.to_complex()).norm() / a.to_complex().norm()
        );
    }

    #[test]
    fn anti_asymptotic_matches_quadrature() {
        let p = LatticeParams::unit();
        let (b1_q, _) = b_pair(0, 101, p).unwrap();
        let (b1_a, _) = anti_asymptotic(0, 101, p).unwrap();
        assert!((b1_a - b1_q).abs() <= 5e-3, "b1: {b1_a} vs {b1_q}");
        // b2 sign matches the negative-sine branch at sampled sites
        for &(ix, it) in &[(2_i64, 101_i64), (4, 101), (-2, 101)] {
            let (_, b2_q) = b_pair(ix, it, p).unwrap();
            let (_, b2_a) = anti_asymptotic(ix, it, p).unwrap();
            assert_eq!(b2_a.signum(), b2_q.signum(), "site ({ix},{it})");
            assert!((b2_a - b2_q).abs() < 5e-3);
        }
    }

    #[test]
    fn concentration_of_measure() {
        // mass within |x| >= t - delta grows toward 1 as eps -> 0 along
        // t/(2 eps) integer
        let t = 2.0;
        let delta = 0.1;
        let mut prev = 0.0;
        for n in [5_i64, 10, 20, 40] {
            let eps = t / (2.0 * n as f64);
            let params = LatticeParams::new(1.0, eps).unwrap();
            let it = 2 * n;
            let row = dp_row(it, params);
            let mass: f64 = row
                .iter()
                .filter(|(ix, _)| (ix.abs() as f64 * eps) >= t - delta)
                .map(|(_, a)| a.prob())
                .sum();
            assert!(mass >= prev - 1e-9, "mass not increasing: {mass} < {prev}");
            prev = mass;
        }
        assert!(prev > 0.9, "mass {prev} at the finest step");
    }
}
