//! The bounding series `f, g, f̃, g̃` over a triple set, and the necklace
//! sums `h₀`, `h_m`.

use rayon::prelude::*;

use super::{s_iterate, BuildOptions, Depth, Form, Necklace, Packing, Triple, TripleSet};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::zeta::{integral_tail_bound, quadratic_tail};

/// Which bounding series to sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SeriesKind {
    /// `½((x+y)^{-t} + z^{-t})`, improved upper.
    F,
    /// `(x + (y+z)/2)^{-t}`, improved lower.
    G,
    /// `y^{-t}`, basic upper.
    FTilde,
    /// `(x+z)^{-t}`, basic lower.
    GTilde,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 4] = [SeriesKind::F, SeriesKind::G, SeriesKind::FTilde, SeriesKind::GTilde];

    /// `(weight, [cx, cy, cz])` per power term.
    fn terms(self) -> &'static [(f64, [f64; 3])] {
        match self {
            SeriesKind::F => &[(0.5, [1.0, 1.0, 0.0]), (0.5, [0.0, 0.0, 1.0])],
            SeriesKind::G => &[(1.0, [1.0, 0.5, 0.5])],
            SeriesKind::FTilde => &[(1.0, [0.0, 1.0, 0.0])],
            SeriesKind::GTilde => &[(1.0, [1.0, 0.0, 1.0])],
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, SeriesKind::F | SeriesKind::FTilde)
    }
}

/// How the result is meant to be used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesMode {
    #[default]
    Fast,
    RigorousUpper,
    RigorousLower,
}

/// Treatment of the infinite family tails.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailMethod {
    /// Closed-form Hurwitz zeta expansion with explicit remainder bounds.
    #[default]
    Enclosure,
    /// Partial sum to an adaptive `N` plus the integral bound on the rest.
    Integral,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesParams {
    pub t: f64,
    /// Per-family tail budget for [`TailMethod::Integral`].
    pub eps_tail: f64,
    pub mode: SeriesMode,
    pub tail: TailMethod,
}

impl SeriesParams {
    pub fn new(t: f64) -> Self {
        SeriesParams { t, eps_tail: 1e-10, mode: SeriesMode::Fast, tail: TailMethod::Enclosure }
    }

    pub fn with_t(self, t: f64) -> Self {
        SeriesParams { t, ..self }
    }
}

/// Items per parallel work unit. Fixed so sums do not depend on the thread count.
const CHUNK: usize = 1024;

/// Upper limit on explicit terms per family for the integral tail.
const INTEGRAL_MAX_TERMS: u64 = 50_000_000;

fn check_t(t: f64) -> Result<()> {
    if t.is_nan() || t <= 0.5 {
        return Err(Error::DivergentTail(t));
    }
    Ok(())
}

fn combine<R: Real>(c: &[f64; 3], v: &[R; 4]) -> R {
    let mut acc = R::zero();
    for i in 0..3 {
        if c[i] != 0.0 {
            acc = acc + R::from_f64(c[i]) * v[i];
        }
    }
    acc
}

fn eval_triple<R: Real>(kind: SeriesKind, v: &[R; 4], t: R) -> R {
    kind.terms()
        .iter()
        .fold(R::zero(), |acc, (w, c)| acc + R::from_f64(*w) * combine(c, v).powf(-t))
}

/// `Σ_{n≥n0} q(n)^{-t}` with `q = k0 + k1 n + k2 n²`.
fn tail_sum<R: Real>(k: [R; 3], t: R, n0: u32, p: &SeriesParams) -> R {
    match p.tail {
        TailMethod::Enclosure => quadratic_tail(k, t, n0 as u64),
        TailMethod::Integral => {
            let k2 = k[2].lo();
            let tf = p.t;
            // Smallest N with the bound on Σ_{n>N} below eps_tail.
            let want = (p.eps_tail * (2.0 * tf - 1.0) * k2.powf(tf)).powf(1.0 / (1.0 - 2.0 * tf));
            let last = (want.ceil() as u64).clamp(n0 as u64, n0 as u64 + INTEGRAL_MAX_TERMS);
            let mut s = R::zero();
            for n in n0 as u64..=last {
                let x = R::from_i64(n as i64);
                s = s + (k[2] * x * x + k[1] * x + k[0]).powf(-t);
            }
            let bound = integral_tail_bound(k2, t.lo().min(tf), last) * (1.0 + 1e-12);
            match p.mode {
                SeriesMode::RigorousUpper => s + R::from_f64(bound),
                SeriesMode::RigorousLower => s,
                SeriesMode::Fast => s + R::from_f64(bound / 2.0) + R::pm(bound / 2.0),
            }
        }
    }
}

fn quadratic_of<R: Real>(forms: &[Form; 4], c: &[f64; 3], parent: &[R; 4]) -> [R; 3] {
    let mut k = [R::zero(); 3];
    for i in 0..3 {
        if c[i] != 0.0 {
            let q = forms[i].quadratic(parent);
            for j in 0..3 {
                k[j] = k[j] + R::from_f64(c[i]) * q[j];
            }
        }
    }
    k
}

fn eval_necklace<R: Real>(packing: Packing, kind: SeriesKind, nk: &Necklace<R>, t: R, p: &SeriesParams) -> R {
    let scheme = packing.scheme();
    let mut acc = R::zero();
    for (f, &n0) in scheme.families.iter().zip(&nk.n_start) {
        for (w, c) in kind.terms() {
            let k = quadratic_of(f, c, &nk.parent);
            acc = acc + R::from_f64(*w) * tail_sum(k, t, n0, p);
        }
    }
    acc
}

fn chunked_sum<T: Sync, R: Real>(items: &[T], f: impl Fn(&T) -> R + Sync) -> R {
    let parts: Vec<R> = items
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().fold(R::zero(), |acc, it| acc + f(it)))
        .collect();
    parts.into_iter().fold(R::zero(), |acc, x| acc + x)
}

/// Sum of the chosen series over every concrete triple and family tail.
pub fn eval_series<R: Real>(set: &TripleSet<R>, kind: SeriesKind, p: &SeriesParams) -> Result<R> {
    check_t(p.t)?;
    let t = R::from_f64(p.t);
    let conc = chunked_sum(&set.concrete, |v| eval_triple(kind, v, t));
    let fam = chunked_sum(&set.necklaces, |nk| eval_necklace(set.packing, kind, nk, t, p));
    Ok(conc + fam)
}

/// `h₀(a,b,c;t)`: the disks of one subdivision, `Σ_seq Σ_{n≥1} q(n)^{-t}`.
pub fn eval_h0<R: Real>(packing: Packing, parent: &[R; 4], p: &SeriesParams) -> Result<R> {
    check_t(p.t)?;
    let t = R::from_f64(p.t);
    Ok(h0(packing, parent, t, p))
}

fn h0<R: Real>(packing: Packing, parent: &[R; 4], t: R, p: &SeriesParams) -> R {
    packing
        .scheme()
        .sequences
        .iter()
        .fold(R::zero(), |acc, s| acc + tail_sum(s.quadratic(parent), t, 1, p))
}

/// `h_m`: `h₀` summed over every triangle expanded while building the set.
pub fn eval_h_set<R: Real>(set: &TripleSet<R>, p: &SeriesParams) -> Result<R> {
    check_t(p.t)?;
    let t = R::from_f64(p.t);
    Ok(chunked_sum(&set.necklaces, |nk| h0(set.packing, &nk.parent, t, p)))
}

/// `h_m(κ; a,b,c; t)` for the separation-3 packing.
pub fn eval_h<R: Real>(m: usize, kappa: R, root: &Triple<R>, p: &SeriesParams) -> Result<R> {
    check_t(p.t)?;
    let set = s_iterate(Packing::BoydMallows, &kappa, root, Depth::Levels(m), BuildOptions::default())?;
    eval_h_set(&set, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::tau;
    use crate::scalar::Interval;
    use proptest::prelude::*;

    fn t011() -> Triple<f64> {
        Triple::from_ints(0, 1, 1).unwrap()
    }

    fn set(m: usize, kappa: f64) -> TripleSet<f64> {
        s_iterate(Packing::BoydMallows, &kappa, &t011(), Depth::Levels(m), BuildOptions::default()).unwrap()
    }

    fn ev(s: &TripleSet<f64>, k: SeriesKind, t: f64) -> f64 {
        eval_series(s, k, &SeriesParams::new(t)).unwrap()
    }

    /// Direct summation of the first `terms` members of each family, plus the
    /// integral bound on what is left.
    fn brute(s: &TripleSet<f64>, kind: SeriesKind, t: f64, terms: u32) -> (f64, f64) {
        let mut lo = s.concrete.iter().map(|v| eval_triple(kind, v, t)).sum::<f64>();
        let mut slack = 0.0;
        for f in s.families() {
            let form = &s.packing.scheme().families[f.family_id];
            for n in f.n_start..f.n_start + terms {
                lo += eval_triple(kind, &f.member(s.packing, n), t);
            }
            for (w, c) in kind.terms() {
                let k = quadratic_of(form, c, f.parent);
                slack += w * integral_tail_bound(k[2], t, (f.n_start + terms - 1) as u64);
            }
        }
        (lo, lo + slack)
    }

    #[test]
    fn closed_form_tails_match_direct_summation() {
        let s = set(1, 16.0);
        for kind in SeriesKind::ALL {
            let got = ev(&s, kind, 1.3);
            let (lo, hi) = brute(&s, kind, 1.3, 20_000);
            assert!(lo <= got && got <= hi, "{kind:?}: {lo} <= {got} <= {hi}");
        }
    }

    #[test]
    fn integral_tail_brackets_enclosure() {
        let s = set(1, 16.0);
        for kind in SeriesKind::ALL {
            let base = SeriesParams { tail: TailMethod::Integral, eps_tail: 1e-9, ..SeriesParams::new(1.4) };
            let up = eval_series(&s, kind, &SeriesParams { mode: SeriesMode::RigorousUpper, ..base }).unwrap();
            let lo = eval_series(&s, kind, &SeriesParams { mode: SeriesMode::RigorousLower, ..base }).unwrap();
            let enc = ev(&s, kind, 1.4);
            assert!(lo <= enc * (1.0 + 1e-12) && enc <= up * (1.0 + 1e-12));
            assert!(up - lo < 2.0 * base.eps_tail * (s.family_count() * kind.terms().len()) as f64);
        }
    }

    #[test]
    fn sandwich_on_first_level() {
        let s = tau(&t011());
        let t = 1.35;
        assert!(ev(&s, SeriesKind::F, t) <= ev(&s, SeriesKind::FTilde, t));
        assert!(ev(&s, SeriesKind::GTilde, t) <= ev(&s, SeriesKind::G, t));
    }

    #[test]
    fn comparison_constant() {
        for (m, k) in [(0, 5.0), (1, 16.0), (2, 197.0)] {
            let s = set(m, k);
            let t = 1.3;
            assert!(ev(&s, SeriesKind::GTilde, t) >= 5.5f64.powf(-t) * ev(&s, SeriesKind::FTilde, t));
        }
    }

    #[test]
    fn series_decrease_in_t() {
        let s = set(1, 33.0);
        for kind in SeriesKind::ALL {
            let v: Vec<f64> = [1.0, 1.2, 1.4].iter().map(|&t| ev(&s, kind, t)).collect();
            assert!(v[0] > v[1] && v[1] > v[2], "{kind:?}: {v:?}");
        }
    }

    #[test]
    fn divergent_exponent_is_rejected() {
        let s = tau(&t011());
        assert!(matches!(eval_series(&s, SeriesKind::F, &SeriesParams::new(0.5)), Err(Error::DivergentTail(_))));
        assert!(eval_h0(Packing::BoydMallows, &t011().values(), &SeriesParams::new(0.4)).is_err());
    }

    #[test]
    fn h0_matches_direct_summation() {
        let t = 2.0;
        let root = t011().values();
        let got = eval_h0(Packing::BoydMallows, &root, &SeriesParams::new(t)).unwrap();
        let mut direct = 0.0;
        let mut slack = 0.0;
        let nmax = 1_000_000u32;
        for s in &Packing::BoydMallows.scheme().sequences {
            // Smallest terms first keeps the rounding error near one ulp.
            let mut sub = 0.0;
            for n in (1..=nmax).rev() {
                sub += s.eval(&root, n as i64).powf(-t);
            }
            direct += sub;
            slack += integral_tail_bound(s.quadratic(&root)[2], t, nmax as u64);
        }
        let tol = 1e-14 * direct;
        assert!(direct - tol <= got && got <= direct + slack + tol, "{direct} {got} {slack}");
    }

    #[test]
    fn h_grows_with_m_and_stalls_below_threshold() {
        let p = SeriesParams::new(1.4);
        let h = |m, k: f64| eval_h(m, k, &t011(), &p).unwrap();
        let h0 = h(0, 197.0);
        let h1 = h(1, 197.0);
        let h2 = h(2, 197.0);
        assert!(0.0 < h0 && h0 < h1 && h1 < h2);
        assert_eq!(h(1, 5.0), h(0, 5.0));
        assert_eq!(h(3, 5.0), h(0, 5.0));
    }

    #[test]
    fn interval_series_enclose_float_series() {
        let ti = Triple::<Interval>::from_ints(0, 1, 1).unwrap();
        let si = s_iterate(Packing::BoydMallows, &Interval::point(33.0), &ti, Depth::Levels(1), BuildOptions::default()).unwrap();
        let sf = set(1, 33.0);
        for kind in SeriesKind::ALL {
            let i = eval_series(&si, kind, &SeriesParams::new(1.33)).unwrap();
            let f = ev(&sf, kind, 1.33);
            assert!(i.contains(f), "{kind:?}: {i} vs {f}");
            assert!(i.width() < 1e-10);
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let s = set(2, 197.0);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| ev(&s, SeriesKind::G, 1.31));
        let b = four.install(|| ev(&s, SeriesKind::G, 1.31));
        assert_eq!(a.to_bits(), b.to_bits());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn sandwich_holds_for_any_t(t in 0.8f64..2.5, m in 0usize..=2) {
            let s = set(m, [5.0, 33.0, 197.0][m]);
            prop_assert!(ev(&s, SeriesKind::F, t) <= ev(&s, SeriesKind::FTilde, t));
            prop_assert!(ev(&s, SeriesKind::GTilde, t) <= ev(&s, SeriesKind::G, t));
        }

        #[test]
        fn series_are_homogeneous(alpha in prop::sample::select(vec![2.0f64, 3.0, 10.0]), t in 0.8f64..2.0) {
            let base = tau(&t011());
            let scaled = tau(&t011().scaled(&alpha));
            for kind in SeriesKind::ALL {
                let a = ev(&base, kind, t);
                let b = ev(&scaled, kind, t);
                prop_assert!((b - alpha.powf(-t) * a).abs() <= 1e-11 * a);
            }
        }
    }
}
