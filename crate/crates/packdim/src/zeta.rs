//! Hurwitz zeta values and tails of quadratic power series.
//!
//! `quadratic_tail` sums `Σ_{n≥N} (k₂n² + k₁n + k₀)^{-t}` to full precision.
//! After completing the square the summand is
//! `k₂^{-t} ((n+β)² + w)^{-t}`; once `(n+β)² ≥ 64|w|` the binomial series in
//! `w/(n+β)²` converges geometrically and each of its terms is a Hurwitz
//! zeta value, evaluated by Euler–Maclaurin summation. Both truncations carry
//! explicit remainder bounds, which interval arithmetic folds into the result.

use crate::scalar::Real;

/// `B_{2i} / (2i)!` for `i = 1..=12`.
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
];

/// Euler–Maclaurin correction terms kept.
const EM_TERMS: usize = 10;
/// Explicit terms are added until the zeta base point reaches this value.
const EM_BASE: f64 = 10.0;
/// Binomial terms kept beyond the leading one.
const BINOMIAL_TERMS: usize = 10;
/// Required ratio `(n+β)² / |w|` before switching to the binomial series.
const BINOMIAL_RATIO: f64 = 64.0;

fn coeff<R: Real>(i: usize) -> R {
    let c = BERNOULLI_OVER_FACTORIAL[i];
    R::from_f64(c) + R::pm(c.abs() * 4.0 * f64::EPSILON)
}

/// `ζ(s₀ + 2j, q)` for `j = 0..=jmax`, with `s₀ > 1` and `q > 0`.
pub fn hurwitz_zeta_ladder<R: Real>(s0: R, q: R, jmax: usize) -> Vec<R> {
    assert!(q.lo() > 0.0, "Hurwitz zeta needs q > 0");
    assert!(s0.lo() > 1.0, "Hurwitz zeta needs s > 1");
    let extra = (EM_BASE - q.lo()).ceil().max(0.0) as u64;
    let two = R::from_i64(2);
    let mut out = vec![R::zero(); jmax + 1];

    // Explicit head Σ_{k<extra} (q+k)^{-s0-2j}.
    for k in 0..extra {
        let u = q + R::from_i64(k as i64);
        let inv2 = R::one() / (u * u);
        let mut p = u.powf(-s0);
        for o in out.iter_mut() {
            *o = *o + p;
            p = p * inv2;
        }
    }

    let x = q + R::from_i64(extra as i64);
    let inv_x = R::one() / x;
    let inv_x2 = inv_x * inv_x;
    let mut xs = x.powf(-s0);
    for (j, o) in out.iter_mut().enumerate() {
        let s = s0 + R::from_i64(2 * j as i64);
        // x^{1-s}/(s-1) + x^{-s}/2
        let mut acc = xs * x / (s - R::one()) + xs / two;
        // Σ B_{2i}/(2i)! (s)_{2i-1} x^{-s-2i+1}
        let mut poch = s;
        let mut pw = xs * inv_x;
        for i in 0..EM_TERMS {
            acc = acc + coeff::<R>(i) * poch * pw;
            let a = s + R::from_i64(2 * i as i64 + 1);
            let b = s + R::from_i64(2 * i as i64 + 2);
            poch = poch * a * b;
            pw = pw * inv_x2;
        }
        // The remainder is bounded by the first omitted term; keep a factor 2.
        let omitted = (coeff::<R>(EM_TERMS) * poch * pw).mag();
        *o = *o + acc + R::pm(2.0 * omitted);
        xs = xs * inv_x2;
    }
    out
}

/// `ζ(s, q)`.
pub fn hurwitz_zeta<R: Real>(s: R, q: R) -> R {
    hurwitz_zeta_ladder(s, q, 0)[0]
}

/// `Σ_{n≥n0} (k[2] n² + k[1] n + k[0])^{-t}` for `k[2] > 0`, `t > 1/2`,
/// and a quadratic that is positive for all `n ≥ n0`.
pub fn quadratic_tail<R: Real>(k: [R; 3], t: R, n0: u64) -> R {
    let [k0, k1, k2] = k;
    assert!(k2.lo() > 0.0, "leading coefficient must be positive");
    let two = R::from_i64(2);
    let beta = k1 / (two * k2);
    let w = k0 / k2 - beta * beta;
    let wmag = w.mag();
    let term = |n: u64| {
        let nn = R::from_i64(n as i64);
        (k2 * nn * nn + k1 * nn + k0).powf(-t)
    };

    // Explicit terms until the binomial series converges fast enough.
    let mut n1 = n0;
    let need = (BINOMIAL_RATIO * wmag).sqrt();
    let start = (need - beta.lo()).ceil();
    if start.is_finite() && start > n1 as f64 {
        n1 = start as u64;
    }
    loop {
        let u = R::from_i64(n1 as i64) + beta;
        if u.lo() > 0.0 && u.lo() * u.lo() >= BINOMIAL_RATIO * wmag {
            break;
        }
        n1 += 1;
    }
    let mut head = R::zero();
    for n in n0..n1 {
        head = head + term(n);
    }

    let u0 = R::from_i64(n1 as i64) + beta;
    let z = hurwitz_zeta_ladder(two * t, u0, BINOMIAL_TERMS + 1);
    let mut binom = R::one();
    let mut wj = R::one();
    let mut series = R::zero();
    for (j, zj) in z.iter().enumerate().take(BINOMIAL_TERMS + 1) {
        series = series + binom * wj * *zj;
        binom = binom * (-t - R::from_i64(j as i64)) / R::from_i64(j as i64 + 1);
        wj = wj * w;
    }
    // Remaining binomial terms: ratio of consecutive terms ≤ ρ |w| / u0².
    let jn = (BINOMIAL_TERMS + 1) as f64;
    let rho = ((t.hi() + jn) / (jn + 1.0)).max(1.0);
    let ratio = rho * wmag / (u0.lo() * u0.lo());
    let tail = binom.mag() * wj.mag() * z[BINOMIAL_TERMS + 1].mag() / (1.0 - ratio);
    let series = series + R::pm(tail * (1.0 + 1e-9));
    head + k2.powf(-t) * series
}

/// Upper bound on `Σ_{n>N} (k₂n² + k₁n + k₀)^{-t}` by comparison with
/// `∫_N^∞ (k₂x²)^{-t} dx`, valid when `k₁, k₀ ≥ 0`.
pub fn integral_tail_bound(k2: f64, t: f64, n: u64) -> f64 {
    k2.powf(-t) * (n as f64).powf(1.0 - 2.0 * t) / (2.0 * t - 1.0)
}
