//! Numeric verifiers for the perturbation inequalities.
//!
//! ```bash
//! cargo run --example lemma_checks
//! ```

use conetract::extensions::PExponent;
use conetract::numerics::{
    quadratic_coefficient_check, shapiro_leading_coefficient, verify_inf_lemma,
    verify_line_lemma, verify_plane_lemma,
};
use conetract::MultiIndex;

fn main() -> conetract::Result<()> {
    let eps = 1e-2;
    println!("line inequality ||(2/p-1) eps conj(z) + 1 + eps z||_p < ||1 + eps z||_p:");
    for p in ["1", "3/2", "2", "3", "4", "5", "inf"] {
        let holds = verify_line_lemma(&PExponent::parse(p)?, eps)?;
        println!("  p = {p:>3}: {}", if holds { "holds" } else { "fails (equality at p = 2)" });
    }

    println!("\nplane inequality with cross term (1 - p/2) eps^2 z1 z2:");
    for p in ["1", "3/2", "2", "3", "4", "5"] {
        let holds = verify_plane_lemma(&PExponent::parse(p)?, eps)?;
        println!("  p = {p:>3}: {}", if holds { "holds" } else { "fails (equality at p = 2)" });
    }

    println!("\nsup-norm inequality ||d + sum z_j - eps z^alpha|| < 2d:");
    for alpha in [vec![2, -1], vec![1, 0], vec![3, -2, 1]] {
        let alpha = MultiIndex::new(alpha)?;
        let holds = verify_inf_lemma(&alpha, eps)?;
        println!("  alpha = {alpha}: {}", if holds { "holds" } else { "fails" });
    }

    println!("\nsecond-order coefficient of the line expansion:");
    for (p, c) in [(4.0, 0.0), (4.0, -0.5), (3.0, 0.0), (1.5, -1.0 / 3.0)] {
        let (fitted, predicted) = quadratic_coefficient_check(p, c)?;
        println!("  p = {p}, c = {c:+.4}: fitted {fitted:.6}, predicted {predicted:.6}");
    }

    println!("\nleading pairing coefficients at non-even exponents:");
    for (p, m) in [(3.0, vec![1]), (5.0, vec![2, -1]), (4.5, vec![1, 1, -2])] {
        let c = shapiro_leading_coefficient(p, &m)?;
        println!("  p = {p}, m = {m:?}: c = {c:.6}");
    }
    Ok(())
}
