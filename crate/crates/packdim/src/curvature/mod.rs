//! Necklace subdivision of curvilinear triangles and the κ-cutoff expansion.

mod cache;
mod enumerate;
mod forms;
mod series;

pub use cache::{read_cache, write_cache, write_csv, CacheHeader, CACHE_VERSION};
pub use enumerate::{enumerate_curvatures, power_sum, Curvature};
pub use forms::{ChildForm, Form, Packing, Scheme, Z2};
pub use series::{eval_h, eval_h0, eval_h_set, eval_series, SeriesKind, SeriesMode, SeriesParams, TailMethod};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lorentz::Mat4;
use crate::scalar::Scalar;

/// Sorted curvature triple `a ≤ b ≤ c` of a curvilinear triangle, with
/// `d = √(ab + ac + bc)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Triple<S> {
    pub fn new(a: S, b: S, c: S) -> Result<Self> {
        let bad = |why: &str| Error::InvalidTriple(format!("{a:?}, {b:?}, {c:?}: {why}"));
        let lt = |x: &S, y: &S| x.compare(y) == Some(Ordering::Less);
        if lt(&a, &S::zero()) || lt(&b, &a) || lt(&c, &b) {
            return Err(bad("not sorted"));
        }
        if b.compare(&S::zero()).is_some_and(|o| o != Ordering::Greater) {
            return Err(bad("b must be positive"));
        }
        let dd = a.clone() * b.clone() + a.clone() * c.clone() + b.clone() * c.clone();
        let d = dd.sqrt()?;
        Ok(Triple { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(S::from_i64(a), S::from_i64(b), S::from_i64(c))
    }

    /// Takes `d` on trust; used for children whose `d` is a known linear form.
    pub fn with_d(v: [S; 4]) -> Self {
        let [a, b, c, d] = v;
        Triple { a, b, c, d }
    }

    pub fn values(&self) -> [S; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn scaled(&self, k: &S) -> Self {
        Triple::with_d(self.values().map(|v| k.clone() * v))
    }
}

/// `(a₁, b₁, c₁)`: the first center disks of the three necklaces, with
/// `c₁ ≤ b₁ ≤ a₁`.
pub fn child_curvatures<S: Scalar>(t: &Triple<S>) -> (S, S, S) {
    let s = Packing::BoydMallows.scheme();
    let v = t.values();
    let c1 = s.central[3][0].eval(&v, 0);
    let b1 = s.central[3][1].eval(&v, 0);
    let a1 = s.central[3][2].eval(&v, 0);
    (a1, b1, c1)
}

/// Center disk `c_n = c + 2n²(a+b) + n√8 d` of the necklace opposite `C`.
pub fn necklace_center<S: Scalar>(t: &Triple<S>, n: u32) -> S {
    Packing::BoydMallows.scheme().sequences[6].eval(&t.values(), n as i64)
}

/// Side disks `(c_{n,l}, c_{n,r})` of the necklace opposite `C`; `c_{n,l}`
/// touches `A`.
pub fn necklace_sides<S: Scalar>(t: &Triple<S>, n: u32) -> (S, S) {
    let s = Packing::BoydMallows.scheme();
    let v = t.values();
    (s.sequences[7].eval(&v, n as i64), s.sequences[8].eval(&v, n as i64))
}

/// An expanded triangle whose families have not been materialized past
/// `n_start`.
#[derive(Clone, Debug, PartialEq)]
pub struct Necklace<S> {
    pub parent: [S; 4],
    pub n_start: Vec<u32>,
}

/// Borrowed view of one infinite family tail.
#[derive(Clone, Copy, Debug)]
pub struct NecklaceFamily<'a, S> {
    pub parent: &'a [S; 4],
    pub family_id: usize,
    pub n_start: u32,
}

impl<S: Scalar> NecklaceFamily<'_, S> {
    pub fn member(&self, packing: Packing, n: u32) -> [S; 4] {
        realize(&packing.scheme().families[self.family_id], self.parent, n)
    }
}

/// Weights over the root `(a, b, c, d)`: row `i` expresses quantity `i` of a triple.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights<S> {
    pub concrete: Vec<Mat4<S>>,
    pub necklaces: Vec<Mat4<S>>,
}

impl<S> Default for Weights<S> {
    fn default() -> Self {
        Weights { concrete: Vec::new(), necklaces: Vec::new() }
    }
}

/// Sub-triangles of `𝒮^m(κ; τ(T))`: retained concrete triples plus family tails.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleSet<S> {
    pub packing: Packing,
    pub root: Triple<S>,
    /// Cutoff used by the last expansion step (`None` for a bare τ).
    pub kappa: Option<S>,
    pub level: usize,
    /// Rows `(x, y, z, d)`.
    pub concrete: Vec<[S; 4]>,
    pub necklaces: Vec<Necklace<S>>,
    pub weights: Option<Weights<S>>,
}

/// Default cap on concrete triples plus family tails.
pub const DEFAULT_BUDGET: usize = 60_000_000;

fn realize<S: Scalar>(f: &ChildForm, parent: &[S; 4], n: u32) -> [S; 4] {
    std::array::from_fn(|i| f[i].eval(parent, n as i64))
}

fn child_weights<S: Scalar>(f: &ChildForm, w: &Mat4<S>, n: u32) -> Mat4<S> {
    std::array::from_fn(|i| {
        let c = f[i].at(n as i64);
        std::array::from_fn(|k| {
            (0..4)
                .filter(|&v| !c[v].is_zero())
                .fold(S::zero(), |acc, v| acc + c[v].to::<S>() * w[v][k].clone())
        })
    })
}

fn identity_weights<S: Scalar>() -> Mat4<S> {
    crate::lorentz::identity()
}

impl<S: Scalar> TripleSet<S> {
    /// `τ(T)` for the given packing.
    pub fn tau(packing: Packing, root: &Triple<S>, track_weights: bool) -> Self {
        let mut set = TripleSet {
            packing,
            root: root.clone(),
            kappa: None,
            level: 0,
            concrete: Vec::new(),
            necklaces: Vec::new(),
            weights: track_weights.then(Weights::default),
        };
        let w0 = track_weights.then(identity_weights::<S>);
        set.push_tau(root.values(), w0);
        set
    }

    fn push_tau(&mut self, v: [S; 4], w: Option<Mat4<S>>) {
        let s = self.packing.scheme();
        for f in &s.central {
            self.concrete.push(realize(f, &v, 0));
            if let (Some(ws), Some(w)) = (self.weights.as_mut(), w.as_ref()) {
                ws.concrete.push(child_weights(f, w, 0));
            }
        }
        self.necklaces.push(Necklace { parent: v, n_start: vec![1; s.families.len()] });
        if let (Some(ws), Some(w)) = (self.weights.as_mut(), w) {
            ws.necklaces.push(w);
        }
    }

    pub fn families(&self) -> impl Iterator<Item = NecklaceFamily<'_, S>> {
        self.necklaces.iter().flat_map(|nk| {
            nk.n_start.iter().enumerate().map(move |(i, &n)| NecklaceFamily {
                parent: &nk.parent,
                family_id: i,
                n_start: n,
            })
        })
    }

    pub fn family_count(&self) -> usize {
        self.necklaces.len() * self.packing.scheme().families.len()
    }

    pub fn size(&self) -> usize {
        self.concrete.len() + self.family_count()
    }

    /// Concrete triples followed by the first `per_family` members of every tail.
    pub fn realized(&self, per_family: u32) -> Vec<[S; 4]> {
        let mut out = self.concrete.clone();
        for f in self.families() {
            for n in f.n_start..f.n_start + per_family {
                out.push(f.member(self.packing, n));
            }
        }
        out
    }

    /// Smallest middle curvature over the set.
    pub fn min_middle(&self) -> f64 {
        let conc = self.concrete.iter().map(|t| t[1].to_f64());
        let fam = self.families().map(|f| f.member(self.packing, f.n_start)[1].to_f64());
        conc.chain(fam).fold(f64::INFINITY, f64::min)
    }

    /// One application of `𝒮(κ; ·)` in place. Returns whether anything was expanded.
    pub fn step(&mut self, kappa: &S, budget: usize) -> Result<bool> {
        let scheme = self.packing.scheme();
        let mut fresh = TripleSet {
            packing: self.packing,
            root: self.root.clone(),
            kappa: None,
            level: 0,
            concrete: Vec::new(),
            necklaces: Vec::new(),
            weights: self.weights.as_ref().map(|_| Weights::default()),
        };
        let mut changed = false;
        let old = std::mem::take(&mut self.concrete);
        let old_w = self.weights.as_mut().map(|w| std::mem::take(&mut w.concrete));
        let mut old_w = old_w.map(|v| v.into_iter());
        for t in old {
            let w = old_w.as_mut().and_then(|it| it.next());
            if t[1].lt_decide(kappa) {
                changed = true;
                fresh.push_tau(t, w);
            } else {
                self.concrete.push(t);
                if let (Some(ws), Some(w)) = (self.weights.as_mut(), w) {
                    ws.concrete.push(w);
                }
            }
        }
        for (k, nk) in self.necklaces.iter_mut().enumerate() {
            for (fid, f) in scheme.families.iter().enumerate() {
                loop {
                    let n = nk.n_start[fid];
                    let y = f[1].eval(&nk.parent, n as i64);
                    if !y.lt_decide(kappa) {
                        break;
                    }
                    changed = true;
                    let member = realize(f, &nk.parent, n);
                    let w = self.weights.as_ref().map(|ws| child_weights(f, &ws.necklaces[k], n));
                    fresh.push_tau(member, w);
                    nk.n_start[fid] = n + 1;
                }
            }
            if fresh.size() + self.concrete.len() > budget {
                return Err(Error::BudgetExceeded(budget));
            }
        }
        self.concrete.append(&mut fresh.concrete);
        self.necklaces.append(&mut fresh.necklaces);
        if let (Some(ws), Some(fw)) = (self.weights.as_mut(), fresh.weights.as_mut()) {
            ws.concrete.append(&mut fw.concrete);
            ws.necklaces.append(&mut fw.necklaces);
        }
        self.kappa = Some(kappa.clone());
        self.level += 1;
        if self.size() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        Ok(changed)
    }
}

/// `𝒮(κ; S)`.
pub fn s_step<S: Scalar>(kappa: &S, set: &TripleSet<S>) -> Result<TripleSet<S>> {
    let mut out = set.clone();
    out.step(kappa, DEFAULT_BUDGET)?;
    Ok(out)
}

/// How many times to apply `𝒮`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Levels(usize),
    /// Until nothing expands, giving up after the given number of levels.
    Fixpoint(usize),
}

/// Options for building `𝒮^m(κ; τ(T))`.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub budget: usize,
    pub track_weights: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { budget: DEFAULT_BUDGET, track_weights: false }
    }
}

/// `𝒮^m(κ; τ(T))`. With [`Depth::Fixpoint`] the returned `level` counts the
/// steps that expanded something.
pub fn s_iterate<S: Scalar>(
    packing: Packing,
    kappa: &S,
    root: &Triple<S>,
    depth: Depth,
    opts: BuildOptions,
) -> Result<TripleSet<S>> {
    let mut set = TripleSet::tau(packing, root, opts.track_weights);
    set.kappa = Some(kappa.clone());
    match depth {
        Depth::Levels(m) => {
            for _ in 0..m {
                set.step(kappa, opts.budget)?;
            }
        }
        Depth::Fixpoint(cap) => {
            let mut productive = 0;
            loop {
                let changed = set.step(kappa, opts.budget)?;
                if !changed {
                    set.level = productive;
                    break;
                }
                productive += 1;
                if productive > cap {
                    return Err(Error::NonTermination(cap));
                }
            }
        }
    }
    Ok(set)
}

/// `τ(T)` of the separation-3 packing.
pub fn tau<S: Scalar>(t: &Triple<S>) -> TripleSet<S> {
    TripleSet::tau(Packing::BoydMallows, t, false)
}
