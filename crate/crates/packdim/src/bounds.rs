//! Roots of the bounding series: `λ_m(κ)`, `μ_m(κ)` and their basic variants.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::curvature::{
    eval_series, s_iterate, BuildOptions, Depth, Packing, SeriesKind, SeriesMode, SeriesParams, TailMethod, Triple,
    TripleSet, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::scalar::{Interval, QuadSurd, Real, Scalar};

/// `β₀ = 3 + 2√2`.
pub fn beta0() -> QuadSurd {
    QuadSurd::from_ints(3, 2)
}

/// `β_m = β₀^{m+1}`.
pub fn beta(m: u32) -> QuadSurd {
    beta0().pow(m + 1)
}

/// An exactly represented cutoff, parsed from a decimal (`"197"`, `"12.5"`)
/// or a power of `β₀` (`"b0^3"`).
#[derive(Clone, Debug, PartialEq)]
pub struct Kappa {
    text: String,
    value: QuadSurd,
}

impl Kappa {
    pub fn value(&self) -> &QuadSurd {
        &self.value
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn to_scalar<S: Scalar>(&self) -> S {
        S::from_surd(&self.value.p, &self.value.q)
    }

    pub fn from_int(k: i64) -> Kappa {
        Kappa { text: k.to_string(), value: QuadSurd::from_ints(k, 0) }
    }

    /// `β₀^k`.
    pub fn beta_power(k: u32) -> Kappa {
        Kappa { text: format!("b0^{k}"), value: beta0().pow(k) }
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let r = BigRational::new(digits, den);
    Some(if neg { -r } else { r })
}

impl FromStr for Kappa {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kappa> {
        let t = s.trim();
        let bad = || Error::Config(format!("cannot parse kappa '{s}': use a decimal or b0^k"));
        let value = if let Some(k) = t.strip_prefix("b0^") {
            beta0().pow(k.parse::<u32>().map_err(|_| bad())?)
        } else if t == "b0" {
            beta0()
        } else {
            QuadSurd::rational(parse_decimal(t).ok_or_else(bad)?)
        };
        Ok(Kappa { text: t.to_string(), value })
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Kappa {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for Kappa {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Kappa, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which pair of inequalities to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `g` for `λ`, `f` for `μ`.
    Improved,
    /// `g̃` for `λ̃`, `f̃` for `μ̃`.
    Basic,
}

impl Variant {
    pub fn kinds(self) -> (SeriesKind, SeriesKind) {
        match self {
            Variant::Improved => (SeriesKind::G, SeriesKind::F),
            Variant::Basic => (SeriesKind::GTilde, SeriesKind::FTilde),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "improved" => Ok(Variant::Improved),
            "basic" => Ok(Variant::Basic),
            _ => Err(Error::Config(format!("unknown variant '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Binary64 arithmetic throughout.
    #[default]
    Fast,
    /// Outward-rounded intervals; `λ` and `μ` are certified endpoints.
    Rigorous,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "fast" => Ok(Mode::Fast),
            "rigorous" => Ok(Mode::Rigorous),
            _ => Err(Error::Config(format!("unknown mode '{s}'"))),
        }
    }
}

/// Iteration used inside the bracket.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootMethod {
    /// Safeguarded secant steps with bisection fallback.
    Secant,
    /// `x ← x − (A / ln κ)(1 − F(x))`, kept inside the bracket.
    ConstantSlope { a: f64, ln_kappa: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootOptions {
    pub method: RootMethod,
    pub t0: f64,
    /// Stop once `|F(t) − 1|` drops below this.
    pub residual_tol: f64,
    /// Or once the bracket is narrower than this.
    pub x_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { method: RootMethod::Secant, t0: 1.33, residual_tol: 1e-14, x_tol: 1e-13, max_iter: 200 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub t: f64,
    pub residual: f64,
    pub iterations: usize,
}

const T_MIN: f64 = 0.5;
const T_MAX: f64 = 4.0;

/// Solves `F(t) = 1` for a decreasing `F` on `(1/2, 4)`.
pub fn find_root(mut f: impl FnMut(f64) -> Result<f64>, opts: &RootOptions) -> Result<Root> {
    let mut evals = 0usize;
    let mut g = |t: f64| -> Result<f64> {
        evals += 1;
        Ok(f(t)? - 1.0)
    };
    // Bracket: lo with F > 1, hi with F < 1.
    let t0 = opts.t0.clamp(T_MIN + 1e-3, T_MAX - 1e-3);
    let g0 = g(t0)?;
    if g0 == 0.0 {
        return Ok(Root { t: t0, residual: 0.0, iterations: 1 });
    }
    let (mut lo, mut glo, mut hi, mut ghi);
    let mut step = 0.02;
    if g0 > 0.0 {
        (lo, glo) = (t0, g0);
        loop {
            let t = (lo + step).min(T_MAX);
            let v = g(t)?;
            if v <= 0.0 {
                (hi, ghi) = (t, v);
                break;
            }
            (lo, glo) = (t, v);
            if t >= T_MAX {
                return Err(Error::NoBracket);
            }
            step *= 2.0;
        }
    } else {
        (hi, ghi) = (t0, g0);
        loop {
            let t = (hi - step).max(T_MIN + 1e-9);
            let v = g(t)?;
            if v >= 0.0 {
                (lo, glo) = (t, v);
                break;
            }
            (hi, ghi) = (t, v);
            if t <= T_MIN + 1e-9 {
                return Err(Error::NoBracket);
            }
            step *= 2.0;
        }
    }
    if ghi == 0.0 {
        return Ok(Root { t: hi, residual: 0.0, iterations: evals });
    }
    // Current iterate for the constant-slope map.
    let mut x = if glo.abs() < ghi.abs() { lo } else { hi };
    let mut gx = if glo.abs() < ghi.abs() { glo } else { ghi };
    // Which endpoint moved last: +1 for lo, -1 for hi.
    let mut side = 0i8;
    for _ in 0..opts.max_iter {
        if gx.abs() < opts.residual_tol || hi - lo < opts.x_tol {
            return Ok(Root { t: x, residual: gx.abs(), iterations: evals });
        }
        let mut cand = match opts.method {
            RootMethod::Secant => (lo * ghi - hi * glo) / (ghi - glo),
            RootMethod::ConstantSlope { a, ln_kappa } => x + (a / ln_kappa) * gx,
        };
        if !(cand > lo && cand < hi) {
            cand = 0.5 * (lo + hi);
        }
        let v = g(cand)?;
        if v == 0.0 {
            return Ok(Root { t: cand, residual: 0.0, iterations: evals });
        }
        // Illinois rule: halve the weight of an endpoint that keeps surviving.
        if v > 0.0 {
            (lo, glo) = (cand, v);
            if side == 1 {
                ghi *= 0.5;
            }
            side = 1;
        } else {
            (hi, ghi) = (cand, v);
            if side == -1 {
                glo *= 0.5;
            }
            side = -1;
        }
        (x, gx) = (cand, v);
    }
    Err(Error::Stagnation(opts.max_iter))
}

/// Truncates toward zero at six decimals.
pub fn truncate6(x: f64) -> f64 {
    // The tiny offset absorbs representation error in values like 1.3 = 1.29999…
    (x * 1e6 + 1e-7).trunc() / 1e6
}

fn floor6(x: f64) -> f64 {
    (x * 1e6).floor() / 1e6
}

fn ceil6(x: f64) -> f64 {
    (x * 1e6).ceil() / 1e6
}

/// Outcome of one bound computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub packing: Packing,
    pub m: usize,
    pub kappa: Kappa,
    pub variant: Variant,
    pub mode: Mode,
    /// Reported lower bound: truncated (fast) or floored certified endpoint (rigorous).
    pub lambda: f64,
    /// Reported upper bound: truncated (fast) or ceiled certified endpoint (rigorous).
    pub mu: f64,
    pub lambda_raw: f64,
    pub mu_raw: f64,
    pub residual_lambda: f64,
    pub residual_mu: f64,
    pub iterations: usize,
    /// `2.3 / ln κ`.
    pub gap_bound: f64,
    pub set_size: usize,
    pub wall_time_s: f64,
}

/// Knobs shared by every bound computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundsConfig {
    pub mode: Mode,
    pub tail: TailMethod,
    pub eps_tail: f64,
    pub root: RootOptions,
    pub budget: usize,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            mode: Mode::Fast,
            tail: TailMethod::Enclosure,
            eps_tail: 1e-10,
            root: RootOptions::default(),
            budget: DEFAULT_BUDGET,
        }
    }
}

fn params(cfg: &BoundsConfig, t: f64, mode: SeriesMode) -> SeriesParams {
    SeriesParams { t, eps_tail: cfg.eps_tail, mode, tail: cfg.tail }
}

fn solve<R: Real>(set: &TripleSet<R>, kind: SeriesKind, cfg: &BoundsConfig) -> Result<Root> {
    let mode = if kind.is_upper() { SeriesMode::RigorousUpper } else { SeriesMode::RigorousLower };
    find_root(|t| Ok(eval_series(set, kind, &params(cfg, t, mode))?.to_f64()), &cfg.root)
}

/// Moves `t` outward from the float root until interval arithmetic proves
/// the root lies on the inner side: `F(t).lo ≥ 1` below a decreasing `F`'s
/// root, `F(t).hi ≤ 1` above it.
fn certify(set: &TripleSet<Interval>, kind: SeriesKind, t_fast: f64, cfg: &BoundsConfig) -> Result<f64> {
    let upper = kind.is_upper();
    let mode = if upper { SeriesMode::RigorousUpper } else { SeriesMode::RigorousLower };
    let mut delta = 1e-10;
    for _ in 0..40 {
        let t = if upper { t_fast + delta } else { t_fast - delta };
        let v = eval_series(set, kind, &params(cfg, t, mode))?;
        let ok = if upper { v.hi() <= 1.0 } else { v.lo() >= 1.0 };
        if ok {
            return Ok(t);
        }
        delta *= 4.0;
    }
    Err(Error::Stagnation(40))
}

/// The κ-cutoff set `𝒮^m(κ; τ(0,1,1))` in the requested arithmetic.
pub fn build_set<S: Scalar>(packing: Packing, kappa: &Kappa, depth: Depth, budget: usize) -> Result<TripleSet<S>> {
    let root = Triple::<S>::from_ints(0, 1, 1)?;
    let opts = BuildOptions { budget, track_weights: false };
    s_iterate(packing, &kappa.to_scalar::<S>(), &root, depth, opts)
}

fn check_kappa(kappa: &Kappa) -> Result<()> {
    if kappa.value() <= &QuadSurd::from_ints(1, 0) {
        return Err(Error::KappaTooSmall);
    }
    Ok(())
}

/// Roots for several variants over one built set.
pub fn bounds_with(
    packing: Packing,
    depth: Depth,
    kappa: &Kappa,
    variants: &[Variant],
    cfg: &BoundsConfig,
) -> Result<Vec<BoundResult>> {
    check_kappa(kappa)?;
    let start = Instant::now();
    let set = build_set::<f64>(packing, kappa, depth, cfg.budget)?;
    let iset = match cfg.mode {
        Mode::Rigorous => Some(build_set::<Interval>(packing, kappa, depth, cfg.budget)?),
        Mode::Fast => None,
    };
    bounds_timed(&set, iset.as_ref(), kappa, variants, cfg, start)
}

/// Roots over sets built elsewhere; `iset` is required in rigorous mode.
pub fn bounds_on(
    set: &TripleSet<f64>,
    iset: Option<&TripleSet<Interval>>,
    kappa: &Kappa,
    variants: &[Variant],
    cfg: &BoundsConfig,
) -> Result<Vec<BoundResult>> {
    check_kappa(kappa)?;
    if cfg.mode == Mode::Rigorous && iset.is_none() {
        return Err(Error::Config("rigorous mode needs an interval set".into()));
    }
    bounds_timed(set, iset, kappa, variants, cfg, Instant::now())
}

fn bounds_timed(
    set: &TripleSet<f64>,
    iset: Option<&TripleSet<Interval>>,
    kappa: &Kappa,
    variants: &[Variant],
    cfg: &BoundsConfig,
    start: Instant,
) -> Result<Vec<BoundResult>> {
    let packing = set.packing;
    let m = set.level;
    let lnk = kappa.to_f64().ln();
    let mut out = Vec::new();
    for &variant in variants {
        let t_variant = Instant::now();
        let (gk, fk) = variant.kinds();
        let rl = solve(set, gk, cfg)?;
        let rm = solve(set, fk, cfg)?;
        let (lambda, mu, lraw, mraw) = match iset {
            None => (truncate6(rl.t), truncate6(rm.t), rl.t, rm.t),
            Some(is) => {
                let l = certify(is, gk, rl.t, cfg)?;
                let u = certify(is, fk, rm.t, cfg)?;
                (floor6(l), ceil6(u), l, u)
            }
        };
        let build_share = if out.is_empty() { t_variant.duration_since(start).as_secs_f64() } else { 0.0 };
        out.push(BoundResult {
            packing,
            m,
            kappa: kappa.clone(),
            variant,
            mode: cfg.mode,
            lambda,
            mu,
            lambda_raw: lraw,
            mu_raw: mraw,
            residual_lambda: rl.residual,
            residual_mu: rm.residual,
            iterations: rl.iterations + rm.iterations,
            gap_bound: 2.3 / lnk,
            set_size: set.size(),
            wall_time_s: build_share + t_variant.elapsed().as_secs_f64(),
        });
    }
    Ok(out)
}

/// `λ_m(κ)` and `μ_m(κ)` (or their basic variants) from `T(0,1,1)`.
pub fn bounds(packing: Packing, m: usize, kappa: &Kappa, variant: Variant, mode: Mode) -> Result<BoundResult> {
    let cfg = BoundsConfig { mode, ..Default::default() };
    Ok(bounds_with(packing, Depth::Levels(m), kappa, &[variant], &cfg)?.remove(0))
}

/// `0 < μ − λ < 2.3 / ln κ`. Meaningful for `1 < κ ≤ β_m`.
pub fn gap_check(r: &BoundResult) -> Result<bool> {
    if r.kappa.value() <= &QuadSurd::from_ints(1, 0) {
        return Err(Error::KappaTooSmall);
    }
    let gap = r.mu - r.lambda;
    Ok(gap > 0.0 && gap < 2.3 / r.kappa.to_f64().ln())
}

/// Whether the gap theorem covers `(m, κ)`, i.e. `1 < κ ≤ β_m`.
pub fn gap_applies(m: usize, kappa: &Kappa) -> bool {
    let k = kappa.value();
    k > &QuadSurd::from_ints(1, 0) && k <= &beta(m as u32)
}

/// One line of the bounds table; `None` where a variant was not computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: usize,
    pub kappa: Kappa,
    pub lambda_tilde: Option<f64>,
    pub lambda: f64,
    pub mu: f64,
    pub mu_tilde: Option<f64>,
    pub results: Vec<BoundResult>,
}

/// The published rows as `(m, κ, with basic variant)`.
pub fn table1_rows() -> Vec<(usize, Kappa, bool)> {
    let mut rows = vec![(0, Kappa::beta_power(1), true)];
    for (m, k) in [(1, 16), (1, 33), (2, 100), (2, 197), (3, 1153)] {
        rows.push((m, Kappa::from_int(k), true));
    }
    rows.push((4, Kappa::from_int(6725), false));
    rows.push((5, Kappa::from_int(39201), false));
    rows
}

/// Computes the given rows of the table.
pub fn table1(rows: &[(usize, Kappa, bool)], cfg: &BoundsConfig) -> Result<Vec<TableRow>> {
    let mut out = Vec::new();
    for (m, kappa, basic) in rows {
        let variants: &[Variant] = if *basic { &[Variant::Improved, Variant::Basic] } else { &[Variant::Improved] };
        let res = bounds_with(Packing::BoydMallows, Depth::Levels(*m), kappa, variants, cfg)?;
        let b = res.get(1);
        out.push(TableRow {
            m: *m,
            kappa: kappa.clone(),
            lambda_tilde: b.map(|r| r.lambda),
            lambda: res[0].lambda,
            mu: res[0].mu,
            mu_tilde: b.map(|r| r.mu),
            results: res,
        });
    }
    Ok(out)
}

/// The table in its printed column order.
pub fn table_csv(rows: &[TableRow], w: impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["m", "kappa", "lambda_tilde", "lambda", "mu", "mu_tilde"])?;
    let cell = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.kappa.to_string(),
            cell(r.lambda_tilde),
            cell(Some(r.lambda)),
            cell(Some(r.mu)),
            cell(r.mu_tilde),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_parsing_is_exact() {
        let k: Kappa = "b0^2".parse().unwrap();
        assert_eq!(k.value(), &QuadSurd::from_ints(17, 12));
        let k: Kappa = "12.25".parse().unwrap();
        assert_eq!(k.value(), &QuadSurd::rational(BigRational::new(49.into(), 4.into())));
        assert_eq!("39201".parse::<Kappa>().unwrap().to_f64(), 39201.0);
        assert!("abc".parse::<Kappa>().is_err());
        assert!("1.2.3".parse::<Kappa>().is_err());
        let j = serde_json::to_string(&k).unwrap();
        assert_eq!(serde_json::from_str::<Kappa>(&j).unwrap(), k);
    }

    #[test]
    fn cutoffs_are_floors_of_beta_powers() {
        let floors: Vec<i64> = (1..=5).map(|m| beta(m).to_f64().floor() as i64).collect();
        assert_eq!(floors, vec![33, 197, 1153, 6725, 39201]);
        // Exact comparison at the boundary.
        assert!(QuadSurd::from_ints(39201, 0) < beta(5));
        assert!(QuadSurd::from_ints(39202, 0) > beta(5));
    }

    #[test]
    fn synthetic_root() {
        let r = find_root(|t| Ok(2f64.powf(1.0 - t)), &RootOptions::default()).unwrap();
        assert_eq!(truncate6(r.t), 1.0);
        assert!(r.residual < 1e-7);
        let opts = RootOptions {
            method: RootMethod::ConstantSlope { a: 1.5, ln_kappa: 2f64.ln() },
            t0: 1.8,
            ..Default::default()
        };
        let r = find_root(|t| Ok(2f64.powf(1.0 - t)), &opts).unwrap();
        assert!((r.t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn root_finder_reports_missing_bracket() {
        assert!(matches!(find_root(|_| Ok(2.0), &RootOptions::default()), Err(Error::NoBracket)));
        assert!(matches!(find_root(|_| Ok(0.5), &RootOptions::default()), Err(Error::NoBracket)));
    }

    #[test]
    fn truncation_is_not_rounding() {
        assert_eq!(truncate6(1.3914069), 1.391406);
        assert_eq!(truncate6(1.3), 1.3);
        assert_eq!(floor6(1.2999999), 1.299999);
        assert_eq!(ceil6(1.2000001), 1.200001);
    }

    #[test]
    fn basic_row_zero() {
        let r = bounds(Packing::BoydMallows, 0, &Kappa::beta_power(1), Variant::Basic, Mode::Fast).unwrap();
        assert!((r.lambda - 1.238656).abs() <= 2e-6, "{}", r.lambda);
        assert!((r.mu - 1.549702).abs() <= 2e-6, "{}", r.mu);
        assert!(r.residual_lambda < 1e-7 && r.residual_mu < 1e-7);
        assert!(gap_check(&r).unwrap());
    }

    #[test]
    fn gap_check_needs_kappa_above_one() {
        let mut r = bounds(Packing::BoydMallows, 0, &Kappa::from_int(5), Variant::Improved, Mode::Fast).unwrap();
        r.kappa = Kappa::from_int(1);
        assert!(matches!(gap_check(&r), Err(Error::KappaTooSmall)));
        assert!(gap_applies(3, &Kappa::from_int(1153)));
        assert!(!gap_applies(1, &Kappa::from_int(34)));
    }

    #[test]
    fn rigorous_bounds_contain_fast_bounds() {
        let k = Kappa::from_int(16);
        let fast = bounds(Packing::BoydMallows, 1, &k, Variant::Improved, Mode::Fast).unwrap();
        let rig = bounds(Packing::BoydMallows, 1, &k, Variant::Improved, Mode::Rigorous).unwrap();
        assert!(rig.lambda <= fast.lambda && fast.mu <= rig.mu);
        assert!(rig.lambda_raw <= fast.lambda_raw && fast.mu_raw <= rig.mu_raw);
        assert!(fast.lambda_raw - rig.lambda_raw < 1e-8);
    }

    #[test]
    fn csv_layout() {
        let rows = table1(&[(0, Kappa::beta_power(1), true)], &BoundsConfig::default()).unwrap();
        let mut buf = Vec::new();
        table_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("m,kappa,lambda_tilde,lambda,mu,mu_tilde"));
        assert!(lines.next().unwrap().starts_with("0,b0^1,1.238656,"));
    }
}
