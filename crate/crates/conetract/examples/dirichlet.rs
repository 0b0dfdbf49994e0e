//! Dirichlet polynomials through the prime-exponent lift.
//!
//! ```bash
//! cargo run --example dirichlet
//! ```

use conetract::bohr::{
    bohr_lift, classify_dirichlet_set, omega, omega_projection, DirichletPoly,
};
use conetract::extensions::PExponent;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

fn main() -> conetract::Result<()> {
    for q in ["12", "1", "10/3", "720"] {
        let q = BigRational::from_str(q).unwrap();
        println!("lift({q}) = {}", bohr_lift(&q)?);
    }
    for n in [12u64, 1, 97, 1024] {
        println!("Omega({n}) = {}", omega(n)?);
    }

    // Keep the terms with exactly m prime factors.
    let f = DirichletPoly::from_terms([
        (1, BigRational::from(BigInt::from(1))),
        (2, BigRational::from(BigInt::from(2))),
        (6, BigRational::from(BigInt::from(3))),
        (8, BigRational::new(BigInt::from(1), BigInt::from(2))),
        (30, BigRational::from(BigInt::from(-1))),
    ])?;
    for m in 0..=3 {
        let slice = omega_projection(&f, m)?;
        let terms: Vec<String> = slice
            .terms()
            .map(|(n, c)| format!("{c} * {n}^-s"))
            .collect();
        println!("Omega = {m} slice: {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    }

    // {8, 27, 30} lifts onto the corner trio, so its contractivity pattern
    // matches the three-variable answer; the evidence maps back to 125.
    let gamma = [8u64, 27, 30];
    println!("\nclassifying {{8, 27, 30}}:");
    for p in ["2", "4", "6", "3", "inf"] {
        let verdict = classify_dirichlet_set(&gamma, &PExponent::parse(p)?)?;
        print!(
            "  p = {p:>3}: {}",
            if verdict.contractive { "contractive" } else { "NOT contractive" }
        );
        match verdict.evidence {
            Some(evidence) => println!(" (evidence {evidence})"),
            None => println!(),
        }
    }
    Ok(())
}
