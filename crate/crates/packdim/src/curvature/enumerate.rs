//! Explicit enumeration of disk curvatures inside a triangle.

use super::{child_weights, identity_weights, realize, Packing, Triple};
use crate::error::{Error, Result};
use crate::lorentz::Mat4;
use crate::scalar::Scalar;

/// A disk curvature `q = w·(a, b, c, d)` of the root triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature<S> {
    pub q: S,
    pub w: [S; 4],
}

fn row_weight<S: Scalar>(form: &super::Form, w: &Mat4<S>, n: u32) -> [S; 4] {
    let c = form.at(n as i64);
    std::array::from_fn(|k| {
        (0..4)
            .filter(|&v| !c[v].is_zero())
            .fold(S::zero(), |acc, v| acc + c[v].to::<S>() * w[v][k].clone())
    })
}

/// Every disk curvature `≤ qmax` inside `T`, with multiplicity, sorted.
pub fn enumerate_curvatures<S: Scalar>(
    packing: Packing,
    root: &Triple<S>,
    qmax: &S,
    budget: usize,
) -> Result<Vec<Curvature<S>>> {
    let scheme = packing.scheme();
    let above = |x: &S| qmax.lt_decide(x);
    let mut out = Vec::new();
    let mut stack = vec![(root.values(), identity_weights::<S>())];
    while let Some((v, w)) = stack.pop() {
        if above(&scheme.first_disk.eval(&v, 0)) {
            continue;
        }
        for seq in &scheme.sequences {
            for n in 1.. {
                let q = seq.eval(&v, n as i64);
                if above(&q) {
                    break;
                }
                out.push(Curvature { q, w: row_weight(seq, &w, n) });
            }
        }
        for f in &scheme.central {
            stack.push((realize(f, &v, 0), child_weights(f, &w, 0)));
        }
        for f in &scheme.families {
            for n in 1.. {
                let child = realize(f, &v, n);
                // Every disk inside the child is larger than its z, which grows with n.
                if above(&child[2]) {
                    break;
                }
                stack.push((child, child_weights(f, &w, n)));
            }
        }
        if out.len() + stack.len() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
    }
    out.sort_by(|a, b| a.q.to_f64().total_cmp(&b.q.to_f64()));
    Ok(out)
}

/// `Σ q^{-t}` over an enumeration.
pub fn power_sum(list: &[Curvature<f64>], t: f64) -> f64 {
    list.iter().map(|c| c.q.powf(-t)).sum()
}
