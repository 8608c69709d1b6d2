//! Exact-arithmetic verification and search for certificate-based proofs
//! that, for `n <= 9`, at least half of all sign combinations `ε` satisfy
//! `|εa| <= ‖a‖`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rational scalars and fixed-length rational vectors.
//! * [`signspace`]: sign vectors, their indexing and group structure.
//! * [`cone`]: the sorted cone `Q`, its dual `Q*` and the cumulative-sum lattice.
//! * [`certify`]: certificate and witness data plus their exact checks.
//! * [`solve`]: exact LP / QP search that produces certificates.
//! * [`oracle`]: brute-force counting over all sign vectors.
//! * [`scheme`]: proof schemes, pair classification and end-to-end verification.
//! * [`cli`]: the command-line front end used by the `signcert` binary.
//!
//! Every comparison against `‖a‖` is done on squared norms, so no irrational
//! quantity ever appears.

pub mod certify;
pub mod cli;
pub mod cone;
pub mod data;
mod error;
pub mod exactnum;
pub mod library;
pub mod oracle;
pub mod scheme;
pub mod signspace;
pub mod solve;

pub use error::{Error, Result};
pub use exactnum::{Rational, RowVector};
pub use signspace::SignVector;
