//! Prints the bounds table as CSV, by default up to m = 3.

use packdim::bounds::{table1, table1_rows, table_csv, BoundsConfig};

fn main() -> packdim::Result<()> {
    let max_m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let rows: Vec<_> = table1_rows().into_iter().filter(|r| r.0 <= max_m).collect();
    let table = table1(&rows, &BoundsConfig::default())?;
    table_csv(&table, std::io::stdout())?;
    Ok(())
}
