//! Property checks shared by the test suites and the acceptance report.
#![allow(dead_code)]

use packdim::bounds::{bounds, Kappa, Mode, Variant};
use packdim::curvature::{
    child_curvatures, eval_series, s_iterate, tau, BuildOptions, Depth, Packing, SeriesKind, SeriesMode, SeriesParams,
    Triple,
};
use packdim::lorentz::{
    basis, from_ints, identity, mat_mul, mat_vec, product, reflection_matrix, transpose, SeparationForm,
    GENERATOR_NORMALS,
};
use packdim::scalar::{Interval, QuadSurd, Scalar};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn beta0() -> f64 {
    3.0 + 2.0 * 2f64.sqrt()
}

/// Every generator is an integral involution preserving the form, checked exactly.
pub fn reflections() -> Check {
    let f = SeparationForm::<QuadSurd>::boyd_mallows();
    let mut rng = StdRng::seed_from_u64(7);
    for n in GENERATOR_NORMALS {
        let t = reflection_matrix(&from_ints::<QuadSurd>(n), &f).map_err(|e| e.to_string())?;
        ensure(mat_mul(&t, &t) == identity(), || format!("R({n:?})² ≠ I"))?;
        ensure(mat_mul(&mat_mul(&transpose(&t), f.j()), &t) == *f.j(), || format!("R({n:?}) is not an isometry"))?;
        for _ in 0..50 {
            let x = from_ints::<QuadSurd>(std::array::from_fn(|_| rng.random_range(-20i64..=20)));
            let y = from_ints::<QuadSurd>(std::array::from_fn(|_| rng.random_range(-20i64..=20)));
            let (tx, ty) = (mat_vec(&t, &x), mat_vec(&t, &y));
            ensure(product(&tx, &ty, &f) == product(&x, &y, &f), || format!("R({n:?}) moves a product"))?;
        }
    }
    Ok(())
}

/// `Pⁿ e₁ = (1−n, n, 2n(n−1), 2n(n−1))` for `P = R(n₁) R(1,−1,0,0)`.
pub fn parabolic_powers() -> Check {
    let f = SeparationForm::<QuadSurd>::boyd_mallows();
    let r1 = reflection_matrix(&from_ints(GENERATOR_NORMALS[0]), &f).map_err(|e| e.to_string())?;
    let swap = reflection_matrix(&from_ints([1, -1, 0, 0]), &f).map_err(|e| e.to_string())?;
    let p = mat_mul(&r1, &swap);
    let mut v = basis::<QuadSurd>(0);
    for n in 1..=10i64 {
        v = mat_vec(&p, &v);
        let want = from_ints([1 - n, n, 2 * n * (n - 1), 2 * n * (n - 1)]);
        ensure(v == want, || format!("P^{n} e1 = {v:?}"))?;
    }
    Ok(())
}

/// `c₁ > 5b` on random sorted triples.
pub fn first_child_exceeds_five_b(samples: usize) -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..samples {
        let a = rng.random_range(0.0..100.0);
        let b = a + rng.random_range(1e-3..100.0);
        let c = b + rng.random_range(0.0..100.0);
        let t = Triple::<f64>::new(a, b, c).map_err(|e| e.to_string())?;
        let (_, _, c1) = child_curvatures(&t);
        ensure(c1 > 5.0 * b, || format!("c1 = {c1} for ({a}, {b}, {c})"))?;
    }
    Ok(())
}

/// At `κ = ⌊β_m⌋` the expansion stops after at most `m` productive levels.
pub fn stabilization() -> Check {
    let root = Triple::<f64>::from_ints(0, 1, 1).map_err(|e| e.to_string())?;
    for m in 0..=3usize {
        let kappa = beta0().powi(m as i32 + 1).floor();
        let s = s_iterate(Packing::BoydMallows, &kappa, &root, Depth::Fixpoint(m + 2), BuildOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(s.level <= m, || format!("κ = {kappa}: {} levels", s.level))?;
        let next = s_iterate(Packing::BoydMallows, &kappa, &root, Depth::Levels(m + 1), BuildOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(next.size() == s.size(), || format!("κ = {kappa}: one more level changed the set"))?;
    }
    Ok(())
}

fn small_sets() -> Vec<(usize, f64)> {
    vec![(0, beta0()), (1, 16.0), (1, 33.0), (2, 100.0), (2, 197.0)]
}

/// `f ≤ f̃` and `g̃ ≤ g` on built sets over a grid of exponents.
pub fn sandwich() -> Check {
    let root = Triple::<f64>::from_ints(0, 1, 1).map_err(|e| e.to_string())?;
    for (m, k) in small_sets() {
        let s = s_iterate(Packing::BoydMallows, &k, &root, Depth::Levels(m), BuildOptions::default())
            .map_err(|e| e.to_string())?;
        for i in 0..=20 {
            let p = SeriesParams::new(0.9 + 0.05 * i as f64);
            let ev = |kind| eval_series(&s, kind, &p).map_err(|e| e.to_string());
            let (f, ft, g, gt) = (ev(SeriesKind::F)?, ev(SeriesKind::FTilde)?, ev(SeriesKind::G)?, ev(SeriesKind::GTilde)?);
            ensure(f <= ft && gt <= g && g <= f, || format!("m={m} κ={k} t={}: f={f} f̃={ft} g={g} g̃={gt}", p.t))?;
        }
    }
    Ok(())
}

/// `x + z ≤ 5.5 y` on realized members.
pub fn comparison_constant() -> Check {
    let root = Triple::<f64>::from_ints(0, 1, 1).map_err(|e| e.to_string())?;
    for (m, k) in small_sets() {
        let s = s_iterate(Packing::BoydMallows, &k, &root, Depth::Levels(m), BuildOptions::default())
            .map_err(|e| e.to_string())?;
        for v in s.realized(8) {
            ensure(v[0] + v[2] <= 5.5 * v[1] * (1.0 + 1e-12), || format!("m={m} κ={k}: {v:?}"))?;
        }
    }
    Ok(())
}

/// Scaling the root and κ by α scales every series by `α^{-t}`.
pub fn homogeneity() -> Check {
    let root = Triple::<f64>::from_ints(0, 1, 1).map_err(|e| e.to_string())?;
    let base = s_iterate(Packing::BoydMallows, &100.0, &root, Depth::Levels(2), BuildOptions::default())
        .map_err(|e| e.to_string())?;
    for alpha in [2.0f64, 3.0, 10.0] {
        let s = s_iterate(Packing::BoydMallows, &(100.0 * alpha), &root.scaled(&alpha), Depth::Levels(2), BuildOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(s.size() == base.size(), || format!("α={alpha}: {} vs {} triples", s.size(), base.size()))?;
        for t in [1.1, 1.33, 1.6] {
            let p = SeriesParams::new(t);
            for kind in SeriesKind::ALL {
                let a = eval_series(&s, kind, &p).map_err(|e| e.to_string())?;
                let b = eval_series(&base, kind, &p).map_err(|e| e.to_string())? * alpha.powf(-t);
                ensure((a - b).abs() <= 1e-12 * b, || format!("α={alpha} t={t} {kind:?}: {a} vs {b}"))?;
            }
        }
    }
    Ok(())
}

/// Certified endpoints bracket the float roots and pass an interval re-check.
pub fn rigor_contains_fast(rows: &[(usize, Kappa)]) -> Check {
    let root = Triple::<Interval>::from_ints(0, 1, 1).map_err(|e| e.to_string())?;
    for (m, kappa) in rows {
        for variant in [Variant::Improved, Variant::Basic] {
            let fast = bounds(Packing::BoydMallows, *m, kappa, variant, Mode::Fast).map_err(|e| e.to_string())?;
            let rig = bounds(Packing::BoydMallows, *m, kappa, variant, Mode::Rigorous).map_err(|e| e.to_string())?;
            ensure(rig.lambda <= fast.lambda_raw && fast.mu_raw <= rig.mu, || {
                format!("({m}, {kappa}) {variant:?}: rigorous [{}, {}] vs fast [{}, {}]", rig.lambda, rig.mu, fast.lambda_raw, fast.mu_raw)
            })?;
            let set = s_iterate(Packing::BoydMallows, &kappa.to_scalar::<Interval>(), &root, Depth::Levels(*m), BuildOptions::default())
                .map_err(|e| e.to_string())?;
            let (gk, fk) = variant.kinds();
            let lo = SeriesParams { mode: SeriesMode::RigorousLower, ..SeriesParams::new(rig.lambda) };
            let hi = SeriesParams { mode: SeriesMode::RigorousUpper, ..SeriesParams::new(rig.mu) };
            let g = eval_series(&set, gk, &lo).map_err(|e| e.to_string())?;
            let f = eval_series(&set, fk, &hi).map_err(|e| e.to_string())?;
            ensure(g.lo() >= 1.0 && f.hi() <= 1.0, || {
                format!("({m}, {kappa}) {variant:?}: g(λ) = [{}, {}], f(μ) = [{}, {}]", g.lo(), g.hi(), f.lo(), f.hi())
            })?;
        }
    }
    Ok(())
}

/// `τ` of a scaled triple is the scaled `τ`.
pub fn tau_homogeneity() -> Check {
    let t = Triple::<f64>::from_ints(1, 2, 3).map_err(|e| e.to_string())?;
    let base = tau(&t).realized(4);
    for alpha in [2.0f64, 3.0, 10.0] {
        let s = tau(&t.scaled(&alpha)).realized(4);
        for (u, v) in s.iter().zip(&base) {
            for i in 0..4 {
                ensure((u[i] - alpha * v[i]).abs() <= 1e-12 * u[i].abs().max(1.0), || format!("α={alpha}: {u:?} vs {v:?}"))?;
            }
        }
    }
    Ok(())
}

/// All of the always-runnable property checks, by name.
pub fn property_suite() -> Vec<(&'static str, Check)> {
    let rows = [(0, Kappa::beta_power(1)), (1, Kappa::from_int(16))];
    vec![
        ("reflections", reflections()),
        ("parabolic powers", parabolic_powers()),
        ("c1 > 5b", first_child_exceeds_five_b(1000)),
        ("stabilization", stabilization()),
        ("sandwich", sandwich()),
        ("x+z <= 5.5y", comparison_constant()),
        ("homogeneity", homogeneity().and_then(|_| tau_homogeneity())),
        ("rigorous contains fast", rigor_contains_fast(&rows)),
    ]
}
