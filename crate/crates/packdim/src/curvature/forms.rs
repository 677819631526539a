//! Subdivision schemes as tables of linear forms.
//!
//! Every curvature created when a triangle `T(a,b,c)` is subdivided, and the
//! `d` of every sub-triangle, is a linear combination of the parent's
//! `(a, b, c, d)` whose coefficients are polynomials of degree ≤ 2 in the
//! necklace index `n` with values in Z[√2]. A [`Form`] stores those
//! coefficients, so realizing a child never takes a square root.

use std::sync::OnceLock;

use crate::scalar::Scalar;

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

/// `r + s√2` with integer parts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Z2 {
    pub r: i64,
    pub s: i64,
}

impl Z2 {
    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s == 0
    }

    pub fn to<S: Scalar>(self) -> S {
        S::from_z2(self.r, self.s)
    }
}

/// Linear form in the parent `(a, b, c, d)`; `c[var][k]` multiplies `n^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form {
    c: [[Z2; 3]; 4],
}

impl Form {
    fn t(mut self, var: usize, pow: usize, r: i64, s: i64) -> Self {
        self.c[var][pow].r += r;
        self.c[var][pow].s += s;
        self
    }

    /// Coefficient of each parent variable at index `n`.
    pub fn at(&self, n: i64) -> [Z2; 4] {
        self.c.map(|p| Z2 {
            r: p[0].r + n * p[1].r + n * n * p[2].r,
            s: p[0].s + n * p[1].s + n * n * p[2].s,
        })
    }

    pub fn eval<S: Scalar>(&self, v: &[S; 4], n: i64) -> S {
        let w = self.at(n);
        let mut acc = S::zero();
        for (wi, vi) in w.iter().zip(v) {
            if !wi.is_zero() {
                acc = acc + wi.to::<S>() * vi.clone();
            }
        }
        acc
    }

    /// `[k0, k1, k2]` with value `k0 + k1 n + k2 n²`.
    pub fn quadratic<S: Scalar>(&self, v: &[S; 4]) -> [S; 3] {
        std::array::from_fn(|pow| {
            let mut acc = S::zero();
            for var in 0..4 {
                let z = self.c[var][pow];
                if !z.is_zero() {
                    acc = acc + z.to::<S>() * v[var].clone();
                }
            }
            acc
        })
    }

    pub fn is_constant(&self) -> bool {
        self.c.iter().all(|p| p[1].is_zero() && p[2].is_zero())
    }
}

/// Child triangle `(x, y, z, d)` as four forms.
pub type ChildForm = [Form; 4];

/// How one triangle is cut into disks and sub-triangles.
#[derive(Debug)]
pub struct Scheme {
    /// Sub-triangles that do not depend on `n`.
    pub central: Vec<ChildForm>,
    /// Sub-triangle families indexed by `n ≥ 1`.
    pub families: Vec<ChildForm>,
    /// Disk curvature sequences indexed by `n ≥ 1`.
    pub sequences: Vec<Form>,
    /// Smallest curvature of a disk placed inside the triangle.
    pub first_disk: Form,
}

/// Roles of the parent's curvatures in one necklace: the necklace runs from
/// circle `x` toward the tangency of `p` and `q`; `s_P` is the side disk
/// touching `p`.
#[derive(Clone, Copy)]
struct Roles {
    x: usize,
    p: usize,
    q: usize,
}

fn constant(var: usize) -> Form {
    Form::default().t(var, 0, 1, 0)
}

/// Center disk `X_{n+k} = x + 2(n+k)²(p+q) + √8 (n+k) d`.
fn center(r: Roles, k: i64) -> Form {
    let mut f = Form::default().t(r.x, 0, 1, 0).t(D, 1, 0, 2).t(D, 0, 0, 2 * k);
    for v in [r.p, r.q] {
        f = f.t(v, 2, 2, 0).t(v, 1, 4 * k, 0).t(v, 0, 2 * k * k, 0);
    }
    f
}

/// Side disk touching `near`: `far + 2 near + 2x + 4(n²+n)(p+q) + (2n+1)√8 d`.
fn side(r: Roles, near: usize, far: usize) -> Form {
    let mut f = Form::default()
        .t(r.x, 0, 2, 0)
        .t(near, 0, 2, 0)
        .t(far, 0, 1, 0)
        .t(D, 1, 0, 4)
        .t(D, 0, 0, 2);
    for v in [r.p, r.q] {
        f = f.t(v, 2, 4, 0).t(v, 1, 4, 0);
    }
    f
}

/// `d` of `(near, X_{n+k}, s_near)`.
fn d_edge(r: Roles, near: usize, far: usize, k: i64) -> Form {
    let (n2, n1, n0) = if k == 0 { (2, 1, 1) } else { (2, 3, 2) };
    let (f2, f1, f0) = if k == 0 { (2, 1, 0) } else { (2, 3, 1) };
    Form::default()
        .t(near, 2, 0, n2)
        .t(near, 1, 0, n1)
        .t(near, 0, 0, n0)
        .t(far, 2, 0, f2)
        .t(far, 1, 0, f1)
        .t(far, 0, 0, f0)
        .t(r.x, 0, 0, 1)
        .t(D, 1, 4, 0)
        .t(D, 0, 1 + 2 * k, 0)
}

/// `d` of `(X_{n+k}, s_P, s_Q)`.
fn d_inner(r: Roles, k: i64) -> Form {
    let (c1, c0) = if k == 0 { (3, 1) } else { (5, 2) };
    let mut f = Form::default().t(r.x, 0, 0, 2).t(D, 1, 8, 0).t(D, 0, 3 + 2 * k, 0);
    for v in [r.p, r.q] {
        f = f.t(v, 2, 0, 4).t(v, 1, 0, c1).t(v, 0, 0, c0);
    }
    f
}

/// The six families of one necklace, each written in increasing curvature
/// order given `a ≤ b ≤ c`.
fn necklace_families(r: Roles, p_le_q: bool) -> Vec<ChildForm> {
    let (xn, xn1) = (center(r, 0), center(r, 1));
    let (sp, sq) = (side(r, r.p, r.q), side(r, r.q, r.p));
    let (lo, hi) = if p_le_q { (sp.clone(), sq.clone()) } else { (sq.clone(), sp.clone()) };
    vec![
        [constant(r.p), xn.clone(), sp.clone(), d_edge(r, r.p, r.q, 0)],
        [constant(r.p), xn1.clone(), sp, d_edge(r, r.p, r.q, 1)],
        [xn.clone(), lo.clone(), hi.clone(), d_inner(r, 0)],
        [xn1.clone(), lo, hi, d_inner(r, 1)],
        [constant(r.q), xn, sq.clone(), d_edge(r, r.q, r.p, 0)],
        [constant(r.q), xn1, sq, d_edge(r, r.q, r.p, 1)],
    ]
}

const NECKLACES: [(Roles, bool); 3] = [
    (Roles { x: A, p: B, q: C }, true),
    (Roles { x: B, p: C, q: A }, false),
    (Roles { x: C, p: A, q: B }, true),
];

/// First center disk opposite `x`: `x + 2(p+q) + √8 d`.
fn first_child(x: usize) -> Form {
    let r = NECKLACES.iter().find(|(r, _)| r.x == x).expect("role").0;
    let f = center(r, 0);
    Form { c: f.at(1).map(|z| [z, Z2::default(), Z2::default()]) }
}

/// `d = √2 (wa a + wb b + wc c) + wd d`.
fn d_central(wa: i64, wb: i64, wc: i64, wd: i64) -> Form {
    Form::default().t(A, 0, 0, wa).t(B, 0, 0, wb).t(C, 0, 0, wc).t(D, 0, wd, 0)
}

fn separation3() -> Scheme {
    let (a1, b1, c1) = (first_child(A), first_child(B), first_child(C));
    let central = vec![
        [constant(A), c1.clone(), b1.clone(), d_central(2, 1, 1, 3)],
        [constant(B), c1.clone(), a1.clone(), d_central(1, 2, 1, 3)],
        [constant(C), b1.clone(), a1.clone(), d_central(1, 1, 2, 3)],
        [c1.clone(), b1, a1, d_central(2, 2, 2, 5)],
    ];
    let mut families = Vec::new();
    let mut sequences = Vec::new();
    for (r, ord) in NECKLACES {
        families.extend(necklace_families(r, ord));
        sequences.extend([center(r, 0), side(r, r.p, r.q), side(r, r.q, r.p)]);
    }
    Scheme { central, families, sequences, first_disk: c1 }
}

/// Tangent chain `C_{n+k} = c + (n+k)²(a+b) + 2(n+k)d` between `a` and `b`.
fn chain(k: i64) -> Form {
    let mut f = Form::default().t(C, 0, 1, 0).t(D, 1, 2, 0).t(D, 0, 2 * k, 0);
    for v in [A, B] {
        f = f.t(v, 2, 1, 0).t(v, 1, 2 * k, 0).t(v, 0, k * k, 0);
    }
    f
}

/// `d` of `(near, C_{n−1}, C_n)`.
fn d_chain(near: usize, far: usize) -> Form {
    Form::default()
        .t(near, 2, 1, 0)
        .t(near, 1, -1, 0)
        .t(near, 0, 1, 0)
        .t(far, 2, 1, 0)
        .t(far, 1, -1, 0)
        .t(C, 0, 1, 0)
        .t(D, 1, 2, 0)
        .t(D, 0, -1, 0)
}

fn tangency() -> Scheme {
    let families = vec![
        [constant(A), chain(-1), chain(0), d_chain(A, B)],
        [constant(B), chain(-1), chain(0), d_chain(B, A)],
    ];
    let first = Form { c: chain(0).at(1).map(|z| [z, Z2::default(), Z2::default()]) };
    Scheme { central: Vec::new(), families, sequences: vec![chain(0)], first_disk: first }
}

/// The two packings with an implemented subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Packing {
    /// Separation-3 packing: necklaces with 4 central and 18 family sub-triangles.
    #[serde(rename = "bm")]
    BoydMallows,
    /// Apollonian packing: one tangent chain and two sub-triangle families.
    Apollonian,
}

impl Packing {
    pub fn scheme(self) -> &'static Scheme {
        static SEP3: OnceLock<Scheme> = OnceLock::new();
        static TAN: OnceLock<Scheme> = OnceLock::new();
        match self {
            Packing::BoydMallows => SEP3.get_or_init(separation3),
            Packing::Apollonian => TAN.get_or_init(tangency),
        }
    }

    pub fn id(self) -> u8 {
        match self {
            Packing::BoydMallows => 1,
            Packing::Apollonian => 2,
        }
    }

    pub fn from_id(id: u8) -> Option<Packing> {
        match id {
            1 => Some(Packing::BoydMallows),
            2 => Some(Packing::Apollonian),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Packing::BoydMallows => "bm",
            Packing::Apollonian => "apollonian",
        }
    }
}

impl std::str::FromStr for Packing {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bm" | "boyd-mallows" => Ok(Packing::BoydMallows),
            "apollonian" | "ap" => Ok(Packing::Apollonian),
            other => Err(format!("unknown packing '{other}'")),
        }
    }
}
