//! Distance-map data for plotting: coset points in a box with their
//! distances from the generating set.
//!
//! ```bash
//! cargo run --example figure_data
//! ```

use conetract::extensions::distance;
use conetract::lattice::{affine_lattice, coordinates, enumerate_box};
use conetract::FreqSet;
use num_traits::ToPrimitive;

fn main() -> conetract::Result<()> {
    let gamma = FreqSet::from_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![1, 1, 1]])?;
    let lat = affine_lattice(&gamma);
    println!("set {gamma}, rank {}", lat.rank());
    println!("lambda            d   plane coordinates");

    let box_radius = 7i64;
    let lo = vec![-box_radius; gamma.dim()];
    let hi = vec![box_radius; gamma.dim()];
    let mut rows = Vec::new();
    for lam in enumerate_box(&lat, &lo, &hi)? {
        if let Some(d) = distance(&gamma, &lam)? {
            if d <= 2 {
                let plane = coordinates(&lat, &lam)?
                    .map(|c| c.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>());
                rows.push((d, lam, plane));
            }
        }
    }
    rows.sort();
    for (d, lam, plane) in rows {
        println!("{:<16} {d}   {plane:?}", lam.to_string());
    }
    Ok(())
}
