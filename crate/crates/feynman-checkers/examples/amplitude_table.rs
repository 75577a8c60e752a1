//! Computes the small-time amplitude table by four independent routes
//! (integer DP, float DP, binomial closed form, momentum integral) and
//! prints them side by side.

use feynman_checkers::closed_form::{explicit_amplitude, Mu};
use feynman_checkers::dp::amplitude_dp;
use feynman_checkers::exact::amplitude_exact;
use feynman_checkers::params::LatticeParams;
use feynman_checkers::spectral::fourier_amplitude;

fn main() {
    let p = LatticeParams::unit();
    println!("site      integer-DP            float-DP              closed-form           fourier");
    for it in 1..=4_i64 {
        for ix in (-it..=it).step_by(2) {
            let e = amplitude_exact(ix, it);
            if e.is_zero() {
                continue;
            }
            let (e1, e2) = e.to_floats();
            let d = amplitude_dp(ix, it, p).unwrap();
            let c = explicit_amplitude(ix, it, Mu::Rational(1, 1))
                .map(|a| format!("{:+.4}{:+.4}i", a.a1, a.a2))
                .unwrap_or_else(|_| "  (boundary)    ".into());
            let f = fourier_amplitude(ix, it, p).unwrap();
            println!(
                "({ix:+},{it})   {e1:+.4}{e2:+.4}i     {:+.4}{:+.4}i     {c}     {:+.4}{:+.4}i",
                d.a1, d.a2, f.a1, f.a2
            );
        }
    }

    // the same closed form symbolically: a(eps, 3eps) = (mu - mu^2 i)/(1 + mu^2)
    println!("\nclosed form at (1,3) across masses:");
    for (n, d) in [(1_i64, 2_i64), (1, 1), (2, 1)] {
        let mu = n as f64 / d as f64;
        let a = explicit_amplitude(1, 3, Mu::Rational(n, d)).unwrap();
        println!(
            "mu={n}/{d}: a = {:+.6}{:+.6}i   (expected {:+.6}{:+.6}i)",
            a.a1,
            a.a2,
            mu / (1.0 + mu * mu),
            -mu * mu / (1.0 + mu * mu)
        );
    }
}
