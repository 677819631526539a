//! Writes an SVG of the packing with the generating mirrors dotted.

use packdim::render::{base_circles, orbit_shapes, render_svg, RenderOptions};

fn main() -> packdim::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "packing.svg".into());
    let shapes = orbit_shapes(1 << 12, &base_circles(), true)?;
    let svg = render_svg(&shapes, &RenderOptions { labels: true, ..Default::default() });
    std::fs::write(&out, svg)?;
    println!("wrote {} shapes to {out}", shapes.len());
    Ok(())
}
