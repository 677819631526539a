//! Apollonian chain curvatures and bounds at a moderate cutoff.
//!
//! Pass `166464` for the full run (several minutes).

use packdim::apollonian::{ap_bounds_with, ap_chain, descartes_form};
use packdim::bounds::{BoundsConfig, Kappa, Variant};
use packdim::curvature::Triple;

fn main() -> packdim::Result<()> {
    let t = Triple::<f64>::from_ints(1, 1, 1)?;
    for n in 1..6 {
        let k = [t.a, t.b, ap_chain(&t, n - 1), ap_chain(&t, n)];
        println!("c_{n} = {:.6}, Descartes form {:.1e}", k[3], descartes_form(&k));
    }

    let kappa: Kappa = std::env::args().nth(1).unwrap_or_else(|| "10000".into()).parse()?;
    for r in ap_bounds_with(&kappa, &[Variant::Improved, Variant::Basic], &BoundsConfig::default())? {
        println!(
            "{:?}: {:.6} < δ < {:.6}  ({} levels, {} triples, {:.1}s)",
            r.variant, r.lambda, r.mu, r.m, r.set_size, r.wall_time_s
        );
    }
    Ok(())
}
