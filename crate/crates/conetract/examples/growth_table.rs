//! Norm growth of the blocked projection operator outside its bounded range.
//!
//! ```bash
//! cargo run --example growth_table
//! ```

use conetract::extensions::PExponent;
use conetract::numerics::{tn_growth_table, tn_frequency_set};

fn main() -> conetract::Result<()> {
    let n = 1;
    let p = PExponent::parse("6")?;
    println!("block set at n = {n}: {}", tn_frequency_set(n));
    let table = tn_growth_table(n, &p, 30)?;
    println!("measured defect delta_p = {:.6e} at p = {p}", table.delta_p);
    println!("lower bounds (1 + delta)^m / m^2:");
    for (m, value) in table.rows.iter().filter(|(m, _)| m % 5 == 0) {
        println!("  m = {m:>3}: {value:.6e}");
    }

    // The first block count at which the lower bound clears 10.
    let mut m = 1u64;
    let delta = table.delta_p;
    while (1.0 + delta).powi(m as i32) / (m as f64 * m as f64) <= 10.0 {
        m += 1;
    }
    println!("lower bound exceeds 10 from m = {m} blocks");

    // Inside the bounded range the table is refused.
    match tn_growth_table(2, &PExponent::parse("4")?, 10) {
        Err(e) => println!("\nn = 2, p = 4 refused: {e}"),
        Ok(_) => unreachable!("bounded range must refuse"),
    }
    Ok(())
}
