//! Affine cosets: canonical bases, orthant enumeration, annihilator
//! averaging, and the reflection gcd.
//!
//! ```bash
//! cargo run --example coset_lattice
//! ```

use conetract::lattice::{
    affine_lattice, annihilator, annihilator_average, contains, enumerate_orthant,
    reflection_gcd, AffineLattice, EnumerationTag,
};
use conetract::polyoracle::LaurentPoly;
use conetract::{FreqSet, MultiIndex};
use num_rational::BigRational;
use num_traits::One;

fn main() -> conetract::Result<()> {
    let gamma = FreqSet::from_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![1, 1, 1]])?;
    let lat = affine_lattice(&gamma);
    println!("set {gamma}");
    println!("  base {}; rank {}", lat.base(), lat.rank());
    for b in lat.basis() {
        println!("  basis column {b}");
    }
    for probe in [vec![0, 0, 3], vec![2, 2, -1], vec![1, 0, 0]] {
        let lam = MultiIndex::new(probe)?;
        println!("  contains {lam}: {}", contains(&lat, &lam)?);
    }
    let enumeration = enumerate_orthant(&lat, None)?;
    println!("  orthant intersection ({:?}):", enumeration.tag);
    for p in &enumeration.points {
        println!("    {p}");
    }

    // An infinite intersection comes with a witness direction.
    let ray = FreqSet::from_rows(&[vec![0, 0], vec![1, 2]])?;
    let enumeration = enumerate_orthant(&affine_lattice(&ray), Some(6))?;
    assert_eq!(enumeration.tag, EnumerationTag::Infinite);
    println!(
        "\nset {ray}: infinite orthant intersection, witness {}, {} samples under cap 6",
        enumeration.witness.as_ref().unwrap(),
        enumeration.points.len()
    );

    // Averaging over the annihilator of 2Z filters to even frequencies.
    let progression = AffineLattice::from_generators(MultiIndex::zero(1)?, &[MultiIndex::new(vec![2])?])?;
    let dec = annihilator(&progression);
    let f = LaurentPoly::from_terms(
        1,
        (0..=4).map(|k| (MultiIndex::new(vec![k]).unwrap(), BigRational::one())),
    )?;
    let kept = annihilator_average(&dec, &MultiIndex::zero(1)?, &f)?;
    println!("\naveraging 1+z+z^2+z^3+z^4 over the order-2 annihilator: {kept}");

    // The diagonal subtorus picks out a homogeneity degree.
    let diagonal = AffineLattice::from_generators(
        MultiIndex::zero(2)?,
        &[MultiIndex::new(vec![1, -1])?],
    )?;
    let dec = annihilator(&diagonal);
    println!(
        "diagonal annihilator: {} finite factors, torus rank {}",
        dec.finite_part().len(),
        dec.torus_rank()
    );
    let f = LaurentPoly::from_terms(
        2,
        [
            (MultiIndex::new(vec![0, 0])?, BigRational::one()),
            (MultiIndex::new(vec![1, 0])?, BigRational::one()),
            (MultiIndex::new(vec![1, 1])?, BigRational::one()),
        ],
    )?;
    let kept = annihilator_average(&dec, &MultiIndex::new(vec![1, 0])?, &f)?;
    println!("degree-1 slice of 1+z1+z1z2: {kept}");

    // The reflection gcd and its trace.
    for (a, b) in [(4u64, 6u64), (3, 5), (7, 7), (12, 57)] {
        let (g, trace) = reflection_gcd(a, b)?;
        println!("reflection gcd({a}, {b}) = {g}, trace {trace:?}");
    }
    Ok(())
}
