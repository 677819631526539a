//! Counts the reflection-group orbit below a height cutoff and fits the growth exponent.

use packdim::orbit::{fit_exponent, orbit_bfs, FitTarget};

fn main() -> packdim::Result<()> {
    let hmax: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1 << 19);
    let start = std::time::Instant::now();
    let orbit = orbit_bfs(hmax)?;
    let heights = orbit.heights();
    println!("{} vectors below {hmax} in {:.1}s", orbit.count(), start.elapsed().as_secs_f64());
    for target in [FitTarget::Cumulative, FitTarget::Rank] {
        let f = fit_exponent(&heights, target)?;
        println!("{target:?}: N(h) ≈ {:.5} h^{:.6}", f.a, f.b);
    }
    Ok(())
}
