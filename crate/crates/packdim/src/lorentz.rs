//! Lorentz products, reflections and the curvature quadruple relation.
//!
//! Vectors are coordinates relative to the face basis `e1..e4`. A separation
//! form is a symmetric 4×4 matrix `J` of signature (3,1); the product of `x`
//! and `y` is `xᵗ J y`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vec4<S> = [S; 4];
pub type Mat4<S> = [[S; 4]; 4];

/// Symmetric separation matrix with its precomputed inverse.
#[derive(Clone, Debug)]
pub struct SeparationForm<S> {
    j: Mat4<S>,
    jinv: Mat4<S>,
}

pub fn basis<S: Scalar>(i: usize) -> Vec4<S> {
    std::array::from_fn(|k| if k == i { S::one() } else { S::zero() })
}

pub fn from_ints<S: Scalar>(v: [i64; 4]) -> Vec4<S> {
    v.map(S::from_i64)
}

pub fn add<S: Scalar>(x: &Vec4<S>, y: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| x[i].clone() + y[i].clone())
}

pub fn sub<S: Scalar>(x: &Vec4<S>, y: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| x[i].clone() - y[i].clone())
}

pub fn scale<S: Scalar>(s: &S, x: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| s.clone() * x[i].clone())
}

pub fn mat_vec<S: Scalar>(m: &Mat4<S>, x: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| dot(&m[i], x))
}

pub fn mat_mul<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            (0..4).fold(S::zero(), |acc, j| acc + a[i][j].clone() * b[j][k].clone())
        })
    })
}

pub fn transpose<S: Scalar>(a: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|k| a[k][i].clone()))
}

pub fn identity<S: Scalar>() -> Mat4<S> {
    std::array::from_fn(basis)
}

fn dot<S: Scalar>(x: &Vec4<S>, y: &Vec4<S>) -> S {
    (0..4).fold(S::zero(), |acc, i| acc + x[i].clone() * y[i].clone())
}

fn bilinear<S: Scalar>(m: &Mat4<S>, x: &Vec4<S>, y: &Vec4<S>) -> S {
    dot(x, &mat_vec(m, y))
}

fn is_zero<S: Scalar>(x: &S) -> bool {
    x.compare(&S::zero()) == Some(Ordering::Equal)
}

/// Gauss–Jordan inverse with partial pivoting on magnitude.
fn invert<S: Scalar>(m: &Mat4<S>) -> Option<Mat4<S>> {
    let mut a = m.clone();
    let mut inv: Mat4<S> = identity();
    for col in 0..4 {
        let piv = (col..4)
            .filter(|&r| !is_zero(&a[r][col]))
            .max_by(|&r, &s| a[r][col].to_f64().abs().total_cmp(&a[s][col].to_f64().abs()))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for k in 0..4 {
            a[col][k] = a[col][k].clone() / p.clone();
            inv[col][k] = inv[col][k].clone() / p.clone();
        }
        for r in 0..4 {
            if r == col || is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..4 {
                a[r][k] = a[r][k].clone() - f.clone() * a[col][k].clone();
                inv[r][k] = inv[r][k].clone() - f.clone() * inv[col][k].clone();
            }
        }
    }
    Some(inv)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
fn symmetric_eigenvalues(m: [[f64; 4]; 4]) -> [f64; 4] {
    let mut a = m;
    for _sweep in 0..64 {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).filter(move |&k| k != i).map(move |k| (i, k)))
            .map(|(i, k)| a[i][k] * a[i][k])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..4 {
            for q in p + 1..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    [a[0][0], a[1][1], a[2][2], a[3][3]]
}

impl<S: Scalar> SeparationForm<S> {
    /// Validates symmetry and signature (3,1), then inverts.
    pub fn new(j: Mat4<S>) -> Result<Self> {
        for i in 0..4 {
            for k in i + 1..4 {
                match j[i][k].compare(&j[k][i]) {
                    Some(Ordering::Equal) => {}
                    None if (j[i][k].to_f64() - j[k][i].to_f64()).abs() < 1e-12 => {}
                    _ => return Err(Error::BadForm("is not symmetric".into())),
                }
            }
        }
        let ev = symmetric_eigenvalues(std::array::from_fn(|i| std::array::from_fn(|k| j[i][k].to_f64())));
        let pos = ev.iter().filter(|&&e| e > 1e-9).count();
        let neg = ev.iter().filter(|&&e| e < -1e-9).count();
        if (pos, neg) != (3, 1) {
            return Err(Error::BadForm(format!("has signature ({pos},{neg}), need (3,1)")));
        }
        let jinv = invert(&j).ok_or_else(|| Error::BadForm("is singular".into()))?;
        Ok(SeparationForm { j, jinv })
    }

    /// Separation-3 configuration: faces 1 and 2 at separation 3, all others tangent.
    pub fn boyd_mallows() -> Self {
        let j = [[1, -3, -1, -1], [-3, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1]];
        Self::new(j.map(|r| r.map(S::from_i64))).expect("separation-3 matrix is valid")
    }

    /// Four mutually tangent faces.
    pub fn apollonian() -> Self {
        let j = [[1, -1, -1, -1], [-1, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1]];
        Self::new(j.map(|r| r.map(S::from_i64))).expect("tangency matrix is valid")
    }

    pub fn j(&self) -> &Mat4<S> {
        &self.j
    }

    pub fn jinv(&self) -> &Mat4<S> {
        &self.jinv
    }
}

/// `xᵗ J y`.
pub fn product<S: Scalar>(x: &Vec4<S>, y: &Vec4<S>, form: &SeparationForm<S>) -> S {
    bilinear(&form.j, x, y)
}

/// `x − 2 (x∘n)/(n∘n) n`.
pub fn reflect<S: Scalar>(n: &Vec4<S>, x: &Vec4<S>, form: &SeparationForm<S>) -> Result<Vec4<S>> {
    let nn = product(n, n, form);
    if is_zero(&nn) {
        return Err(Error::NullNormal);
    }
    let c = S::from_i64(2) * product(x, n, form) / nn;
    Ok(sub(x, &scale(&c, n)))
}

/// Matrix `T` with `T x = reflect(n, x)`.
pub fn reflection_matrix<S: Scalar>(n: &Vec4<S>, form: &SeparationForm<S>) -> Result<Mat4<S>> {
    let nn = product(n, n, form);
    if is_zero(&nn) {
        return Err(Error::NullNormal);
    }
    let jn = mat_vec(&form.j, n);
    let two = S::from_i64(2);
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let delta = if i == k { S::one() } else { S::zero() };
            delta - two.clone() * n[i].clone() * jn[k].clone() / nn.clone()
        })
    }))
}

/// `K(k) = kᵗ J⁻¹ k`.
pub fn quadruple_form<S: Scalar>(k: &Vec4<S>, form: &SeparationForm<S>) -> S {
    bilinear(&form.jinv, k, k)
}

/// Expanded separation-3 quadruple polynomial at `k = (a, b, c, d)`:
/// `−(a²+b²)/8 − (c²+d²)/2 + ab/4 + (a+b)(c+d)/2`.
///
/// Its zero set is the same as that of [`quadruple_form`] for the
/// separation-3 matrix; the two differ by an overall sign.
pub fn quadruple_polynomial<S: Scalar>(k: &Vec4<S>) -> S {
    let [a, b, c, d] = k.clone();
    let r = |n: i64, m: i64| S::from_i64(n) / S::from_i64(m);
    -(r(1, 8) * (a.clone() * a.clone() + b.clone() * b.clone()))
        - r(1, 2) * (c.clone() * c.clone() + d.clone() * d.clone())
        + r(1, 4) * a.clone() * b.clone()
        + r(1, 2) * (a + b) * (c + d)
}

/// Both roots of `K = 0` in slot `slot`, with the other three entries of
/// `fixed` held. Returned as (smaller, larger). The entry of `fixed` at
/// `slot` is ignored.
pub fn solve_fourth<S: Scalar>(fixed: &Vec4<S>, slot: usize, form: &SeparationForm<S>) -> Result<(S, S)> {
    assert!(slot < 4, "slot index out of range");
    let m = &form.jinv;
    let alpha = m[slot][slot].clone();
    let mut beta = S::zero();
    let mut gamma = S::zero();
    for i in (0..4).filter(|&i| i != slot) {
        beta = beta + S::from_i64(2) * m[slot][i].clone() * fixed[i].clone();
        for j in (0..4).filter(|&j| j != slot) {
            gamma = gamma + m[i][j].clone() * fixed[i].clone() * fixed[j].clone();
        }
    }
    let disc = beta.clone() * beta.clone() - S::from_i64(4) * alpha.clone() * gamma;
    if disc.compare(&S::zero()) == Some(Ordering::Less) {
        return Err(Error::NegativeDiscriminant);
    }
    let root = disc.sqrt()?;
    let two_a = S::from_i64(2) * alpha.clone();
    let r1 = (-beta.clone() - root.clone()) / two_a.clone();
    let r2 = (-beta + root) / two_a;
    if alpha.is_pos() {
        Ok((r1, r2))
    } else {
        Ok((r2, r1))
    }
}

/// Normalized inversive distance `(s² − r1² − r2²)/(2 r1 r2)` of two circles
/// with radii `r1`, `r2` and centers `s` apart.
pub fn separation<S: Scalar>(r1: &S, r2: &S, s: &S) -> Result<S> {
    if !r1.is_pos() || !r2.is_pos() {
        return Err(Error::ZeroRadius);
    }
    let num = s.clone() * s.clone() - r1.clone() * r1.clone() - r2.clone() * r2.clone();
    Ok(num / (S::from_i64(2) * r1.clone() * r2.clone()))
}

/// Mirror normals of the five generating reflections of the separation-3 packing.
pub const GENERATOR_NORMALS: [[i64; 4]; 5] =
    [[-1, 1, 2, 2], [1, -1, 2, 2], [1, 1, -2, 0], [3, 1, 2, -2], [1, 3, 2, -2]];
