//! Absorption probabilities: the two-slit inequality and the return
//! probability accumulated against an absorbing line.

use feynman_checkers::dp::{absorption_partial_sum, probability, probability_bypass};
use feynman_checkers::params::{AbsorptionSet, LatticeParams};

fn main() {
    let p = LatticeParams::unit();
    let plain = probability(0, 4, p).unwrap();
    let slit_a = AbsorptionSet::from_sites([(2, 2)]).unwrap();
    let slit_b = AbsorptionSet::from_sites([(0, 2)]).unwrap();
    let p_a = probability_bypass(0, 4, p, &slit_a).unwrap();
    let p_b = probability_bypass(0, 4, p, &slit_b).unwrap();
    println!("P(0,4)                    = {plain:.6}");
    println!("P(0,4 bypass {{(2,2)}})     = {p_a:.6}   (absorption raised the probability)");
    println!("P(0,4 bypass {{(0,2)}})     = {p_b:.6}");
    println!(
        "sum of the bypasses       = {:.6}  !=  P(0,4): paths are not mutually exclusive\n",
        p_a + p_b
    );

    // accumulated probability of being caught at x = 0 by an absorbing line
    let line = AbsorptionSet::from_lines([0]);
    for t_max in [10_i64, 100, 1000] {
        let s = absorption_partial_sum(t_max, &line);
        println!(
            "sum_{{t<={t_max:4}}} P(0,t bypass {{x=0}}) = {s:.6}   (2/pi = {:.6})",
            2.0 / std::f64::consts::PI
        );
    }

    // a second wall at x = n pushes the total toward 1/sqrt2
    println!();
    for n in [4_i64, 8, 16] {
        let both = AbsorptionSet::from_lines([0, n]);
        let s = absorption_partial_sum(2000, &both);
        println!(
            "walls at x=0 and x={n:2}: total = {s:.6}   (1/sqrt2 = {:.6})",
            std::f64::consts::FRAC_1_SQRT_2
        );
    }
}
