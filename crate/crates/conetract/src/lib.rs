#![forbid(unsafe_code)]

//! Exact tools for deciding when an idempotent Fourier multiplier given by a
//! frequency set acts contractively on Hardy spaces of the polytorus.
//!
//! The crate is organized around the pipeline:
//!
//! - [`lattice`]: the affine coset generated by a frequency set, membership,
//!   orthant enumeration, annihilator averaging, all in exact arithmetic;
//! - [`extensions`]: the n-extension calculus, completions with full-coset
//!   certificates, and the contractivity decisions;
//! - [`polyoracle`]: sparse rational Laurent polynomials, exact even-exponent
//!   norms, the duality pairing, and exact non-contractivity witnesses;
//! - [`numerics`]: floating-point verifiers for the perturbation
//!   inequalities, quadrature norms, and operator-norm growth tables;
//! - [`bohr`]: the prime-exponent correspondence for Dirichlet polynomials;
//! - [`cli`]: request/response plumbing shared by the `conetract` binary and
//!   the fixture regression corpus.
//!
//! The `examples/` directory carries one runnable example per capability;
//! `cargo run --example classify` is a good starting point.

pub mod bohr;
pub mod cli;
pub mod error;
pub mod extensions;
pub mod index;
pub mod lattice;
pub mod numerics;
pub mod polyoracle;

pub use error::{Error, Result};
pub use index::{FreqSet, MultiIndex};
