//! Run n-completions and inspect their certificates.
//!
//! ```bash
//! cargo run --example closure
//! ```

use conetract::extensions::{complete, extend, find_positive_direction, Budget, ClosureTag};
use conetract::{FreqSet, MultiIndex};

fn main() -> conetract::Result<()> {
    let budget = Budget::default();

    // A two-dimensional set whose completion is a finite fixed point.
    let trio = FreqSet::from_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![1, 1, 1]])?;
    println!("set {trio}");
    for n in [1, 2] {
        println!("  E_{n} = {}", extend(&trio, n)?);
    }
    let closure = complete(&trio, 2, &budget)?;
    println!(
        "  2-completion: {:?} after {} rounds -> {}\n",
        closure.tag, closure.rounds, closure.set
    );

    // A full-dimensional set whose completion certifies the whole coset.
    let quad = FreqSet::from_rows(&[vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4], vec![1, 1, 1]])?;
    println!("set {quad}");
    let closure = complete(&quad, 2, &budget)?;
    println!("  2-completion: {:?} after {} rounds", closure.tag, closure.rounds);
    if let Some((a, b)) = &closure.pair {
        println!("  certificate pair {a} -> {b}, difference {}", b.sub(a)?);
    }
    let alpha = MultiIndex::new(vec![1, 1, 1])?;
    if let Some(beta) = find_positive_direction(&quad, &alpha, 2, &budget)? {
        println!("  first point strictly above {alpha}: {beta}\n");
    }

    // A five-point set in four variables; the certificate appears in round 2.
    let quint = FreqSet::from_rows(&[
        vec![3, 1, 0, 1],
        vec![4, 0, 1, 0],
        vec![0, 0, 4, 0],
        vec![0, 0, 0, 4],
        vec![0, 4, 0, 0],
    ])?;
    println!("set {quint}");
    let closure = complete(&quint, 4, &budget)?;
    println!(
        "  4-completion: {:?} after {} rounds, {} points collected",
        closure.tag,
        closure.rounds,
        closure.set.len()
    );
    if let Some((a, b)) = &closure.pair {
        println!("  certificate pair {a} -> {b}, difference {}", b.sub(a)?);
    }

    // An axis-parallel progression can never be pair-certified: the run
    // exhausts its budget honestly.
    let line = FreqSet::from_rows(&[vec![0, 0], vec![2, 0]])?;
    let closure = complete(&line, 1, &Budget { max_rounds: 6, max_coord: 64 })?;
    println!("\nset {line}");
    println!(
        "  1-completion: {:?} after {} rounds ({} points so far)",
        closure.tag,
        closure.rounds,
        closure.set.len()
    );
    assert_eq!(closure.tag, ClosureTag::Exhausted);
    Ok(())
}
