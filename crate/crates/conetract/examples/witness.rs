//! Exact non-contractivity witnesses at even exponents, cross-checked by
//! quadrature.
//!
//! ```bash
//! cargo run --example witness
//! ```

use conetract::extensions::PExponent;
use conetract::numerics::{lp_norm_estimate, GridSpec};
use conetract::polyoracle::{witness_search_even, LaurentPoly, WitnessGrid};
use conetract::{FreqSet, MultiIndex};
use num_traits::ToPrimitive;

fn main() -> conetract::Result<()> {
    let cases = [
        (
            FreqSet::from_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![1, 1, 1]])?,
            2u32,
            MultiIndex::new(vec![0, 0, 3])?,
        ),
        (
            FreqSet::from_rows(&[
                vec![2, 1, 0, 1],
                vec![3, 0, 1, 0],
                vec![0, 0, 3, 0],
                vec![0, 0, 0, 3],
            ])?,
            3u32,
            MultiIndex::new(vec![0, 3, 1, 0])?,
        ),
    ];

    for (gamma, n, lam) in &cases {
        let p = 2 * (n + 1);
        println!("set {gamma}, p = {p}, direction {lam}");
        let report = witness_search_even(gamma, *n, lam, &WitnessGrid::default())?
            .expect("a witness exists whenever the extension grows");
        println!("  test function {}", report.f);
        println!("  perturbation coefficient c = {}", report.c);
        println!(
            "  ||P h||_p^p / ||h||_p^p = {} (= {:.9})",
            report.ratio_p,
            report.ratio_p.to_f64().unwrap()
        );

        // Independent check: quadrature norms of the same two functions.
        let spec = GridSpec::new(if gamma.dim() <= 3 { 64 } else { 32 }, gamma.dim())?;
        let h = report.f.add(&LaurentPoly::monomial(lam.clone(), report.c.clone()))?;
        let exponent = PExponent::even(n + 1)?;
        let nf = lp_norm_estimate(&report.f, &exponent, &spec)?;
        let nh = lp_norm_estimate(&h, &exponent, &spec)?;
        let quadrature = (nf.refined / nh.refined).powi(p as i32);
        println!(
            "  quadrature cross-check {quadrature:.12} vs exact {:.12}\n",
            report.ratio_p.to_f64().unwrap()
        );
    }
    Ok(())
}
