//! Lower and upper bounds for one (m, κ), in float and certified interval mode.
//!
//! Usage: `cargo run --release --example bounds -- [m] [kappa]`

use packdim::bounds::{bounds, gap_check, Kappa, Mode, Variant};
use packdim::curvature::Packing;

fn main() -> packdim::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let kappa: Kappa = args.next().unwrap_or_else(|| "16".into()).parse()?;
    for variant in [Variant::Improved, Variant::Basic] {
        for mode in [Mode::Fast, Mode::Rigorous] {
            let r = bounds(Packing::BoydMallows, m, &kappa, variant, mode)?;
            println!(
                "{variant:?} {mode:?}: {:.6} < δ < {:.6}  (raw {:.9}, {:.9}; {} triples; gap ok: {})",
                r.lambda,
                r.mu,
                r.lambda_raw,
                r.mu_raw,
                r.set_size,
                gap_check(&r)?
            );
        }
    }
    Ok(())
}
