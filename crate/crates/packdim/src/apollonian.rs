//! The same bounds for the Apollonian packing.
//!
//! A triangle `T(a,b,c)` bounded by mutually tangent circles holds one chain
//! of circles tangent to `A` and `B`, starting next to `C` and running into
//! the cusp where `A` meets `B`:
//! `c_n = c + n²(a+b) + 2n d`. Consecutive chain circles cut the triangle into
//! the sub-triangles `(a, c_{n−1}, c_n)` and `(b, c_{n−1}, c_n)`, `n ≥ 1`.

use crate::bounds::{bounds_with, BoundResult, BoundsConfig, Kappa, Variant};
use crate::curvature::{Depth, Packing, Triple, TripleSet};
use crate::error::Result;
use crate::lorentz::{quadruple_form, SeparationForm};
use crate::scalar::Scalar;

/// Cutoff used for the published Apollonian bounds.
pub const AP_KAPPA: i64 = 166_464;

/// Levels allowed before giving up on reaching a fixpoint.
pub const AP_LEVEL_CAP: usize = 64;

/// `n`-th chain curvature; `n = 0` gives `c`.
pub fn ap_chain<S: Scalar>(t: &Triple<S>, n: u32) -> S {
    Packing::Apollonian.scheme().sequences[0].eval(&t.values(), n as i64)
}

/// The two sub-triangle families of `T`.
pub fn ap_tau<S: Scalar>(t: &Triple<S>) -> TripleSet<S> {
    TripleSet::tau(Packing::Apollonian, t, false)
}

/// Descartes form `kᵗJ⁻¹k` of four curvatures; zero for mutually tangent circles.
pub fn descartes_form<S: Scalar>(k: &[S; 4]) -> S {
    quadruple_form(k, &SeparationForm::apollonian())
}

/// `λ_𝒜` and `μ_𝒜` at cutoff `κ`, expanding to a fixpoint.
pub fn ap_bounds_with(kappa: &Kappa, variants: &[Variant], cfg: &BoundsConfig) -> Result<Vec<BoundResult>> {
    bounds_with(Packing::Apollonian, Depth::Fixpoint(AP_LEVEL_CAP), kappa, variants, cfg)
}

/// Improved-variant Apollonian bounds.
pub fn ap_bounds(kappa: &Kappa) -> Result<BoundResult> {
    Ok(ap_bounds_with(kappa, &[Variant::Improved], &BoundsConfig::default())?.remove(0))
}
