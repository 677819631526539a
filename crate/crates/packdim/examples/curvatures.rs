//! Lists the small disk curvatures inside the triangle T(0,1,2).

use packdim::curvature::{enumerate_curvatures, power_sum, Packing, Triple};
use packdim::scalar::QuadSurd;

fn main() -> packdim::Result<()> {
    let qmax: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(60);
    let t = Triple::<QuadSurd>::from_ints(0, 1, 2)?;
    let list = enumerate_curvatures(Packing::BoydMallows, &t, &QuadSurd::from_ints(qmax, 0), 1 << 22)?;
    for c in &list {
        println!("{:>10}  weights {:?}", c.q.to_string(), c.w.iter().map(|w| w.to_string()).collect::<Vec<_>>());
    }

    let tf = Triple::<f64>::from_ints(0, 1, 2)?;
    for q in [1e2, 1e3, 1e4] {
        let l = enumerate_curvatures(Packing::BoydMallows, &tf, &q, 1 << 24)?;
        println!("q ≤ {q:>6}: {:>6} disks, Σ q^-1.33 = {:.6}", l.len(), power_sum(&l, 1.33));
    }
    Ok(())
}
