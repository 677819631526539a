//! Builds the κ-cutoff triple sets level by level and round-trips one through the cache format.

use packdim::curvature::{read_cache, s_iterate, write_cache, BuildOptions, Depth, Packing, Triple};

fn main() -> packdim::Result<()> {
    let root = Triple::<f64>::from_ints(0, 1, 1)?;
    let kappa = 197.0;
    for m in 0..=3 {
        let set = s_iterate(Packing::BoydMallows, &kappa, &root, Depth::Levels(m), BuildOptions::default())?;
        println!(
            "m = {m}: {:>6} concrete, {:>5} necklaces, smallest unexpanded middle {:.3}",
            set.concrete.len(),
            set.necklaces.len(),
            set.min_middle()
        );
    }

    let opts = BuildOptions { track_weights: true, ..Default::default() };
    let set = s_iterate(Packing::BoydMallows, &kappa, &root, Depth::Levels(2), opts)?;
    let path = std::env::temp_dir().join("packdim-example-set.bin");
    write_cache(&path, &set, "197")?;
    let (header, back) = read_cache(&path)?;
    println!("cache {}: {:?}, {} entries", path.display(), header, back.size());
    std::fs::remove_file(&path)?;
    Ok(())
}
