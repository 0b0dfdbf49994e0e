//! Decide contractivity of frequency-set projections across exponents.
//!
//! ```bash
//! cargo run --example classify
//! ```

use conetract::extensions::{is_contractive_projection_set, restriction_property, PExponent};
use conetract::FreqSet;

fn main() -> conetract::Result<()> {
    let sets = [
        (
            "corner trio",
            FreqSet::from_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![1, 1, 1]])?,
        ),
        (
            "symmetric quad",
            FreqSet::from_rows(&[vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4], vec![1, 1, 1]])?,
        ),
        (
            "skew quad (n = 2)",
            FreqSet::from_rows(&[
                vec![2, 1, 0, 1],
                vec![3, 0, 1, 0],
                vec![0, 0, 3, 0],
                vec![0, 0, 0, 3],
            ])?,
        ),
        ("singleton", FreqSet::from_rows(&[vec![5, 2]])?),
    ];
    let exponents = ["2", "4", "6", "8", "3", "inf"];

    for (name, gamma) in &sets {
        println!("{name}: {gamma}");
        for p in exponents {
            let p = PExponent::parse(p)?;
            let verdict = is_contractive_projection_set(gamma, &p)?;
            print!(
                "  p = {:>3}  {}",
                p.to_string(),
                if verdict.contractive {
                    "contractive    "
                } else {
                    "NOT contractive"
                }
            );
            match &verdict.evidence {
                Some(evidence) => println!("  (reason {:?}, evidence {evidence})", verdict.reason),
                None => println!("  (reason {:?})", verdict.reason),
            }
        }
        println!();
    }

    println!("restriction property on a small grid (d, k, p) -> every contractive");
    println!("projection set of dimension k is a coset restriction:");
    for (d, k) in [(2, 1), (3, 2), (3, 3), (4, 3)] {
        for p in ["2", "4", "6", "3", "inf"] {
            let holds = restriction_property(d, k, &PExponent::parse(p)?)?;
            print!("  ({d},{k},{p:>3}) {}", if holds { "yes" } else { "no " });
        }
        println!();
    }
    Ok(())
}
