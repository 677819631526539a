//! Tails of Σ (k2 n² + k1 n + k0)^(-t): exact enclosure against the integral estimate.

use packdim::scalar::{Interval, Scalar};
use packdim::zeta::{hurwitz_zeta, integral_tail_bound, quadratic_tail};

fn main() {
    println!("ζ(2) = {:.15}  (π²/6 = {:.15})", hurwitz_zeta(2.0, 1.0), std::f64::consts::PI.powi(2) / 6.0);
    let k = [3.0, 2.0, 1.0];
    for t in [0.8, 1.0, 1.33, 2.0] {
        let exact = quadratic_tail(k, t, 10);
        let iv = quadratic_tail(k.map(Interval::point), Interval::point(t), 10);
        println!(
            "t = {t:<5} tail from n = 10: {exact:.12}  enclosure [{:.12}, {:.12}]  integral bound {:.12}",
            iv.lo(),
            iv.hi(),
            integral_tail_bound(1.0, t, 10)
        );
    }
}
