//! A gcd computed purely through linear reflections.
//!
//! Each step replaces the pair `(a, b)`, `a < b`, by `(a, |2a - b|)`.  The
//! move `2a - b` is a reflection of `b` through `a`, it preserves the gcd,
//! and it strictly decreases the maximum, so the iteration reaches a pair in
//! which one value divides the other.

use crate::error::{Error, Result};

/// Returns `gcd(a, b)` together with the trace of intermediate pairs.
///
/// The trace is empty when one input already divides the other.
pub fn reflection_gcd(a: u64, b: u64) -> Result<(u64, Vec<(u64, u64)>)> {
    if a == 0 || b == 0 {
        return Err(Error::input("reflection gcd needs positive integers"));
    }
    let mut trace = Vec::new();
    let (mut a, mut b) = (a, b);
    loop {
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if b % a == 0 {
            return Ok((a, trace));
        }
        let c = (2 * a as i128 - b as i128).unsigned_abs() as u64;
        b = c;
        trace.push((a, b));
    }
}
