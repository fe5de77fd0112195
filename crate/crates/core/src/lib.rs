//! Census of Weil polynomials over finite fields.
//!
//! A point of the census is an integer vector `a = (a_1, …, a_g)` encoding
//! the `q`-symmetric polynomial
//!
//! ```text
//! f_a = (X^{2g} + q^g) + a_1 (X^{2g-1} + q^{g-1} X) + … + a_g X^g.
//! ```
//!
//! For each point the crate decides exactly whether `f_a` is a Weil
//! polynomial (all roots of absolute value `√q`), whether it is ordinary,
//! and whether its Galois group is certified to be the full hyperoctahedral
//! group `W_{2g}`. Points passing all three have the property that the only
//! `q`-Weil numbers in the multiplicative group generated by the roots are
//! the roots themselves; [`weilgroup`] machine-checks the integer
//! constraint system behind that statement.
//!
//! Module map:
//!
//! - [`intpoly`]: integer and `F_p` polynomials, distinct-degree patterns,
//!   Sturm counting in `Z[√d]`.
//! - [`weilpoly`]: coefficient boxes, expansion, trace polynomial, Weil
//!   status, ordinarity, Newton slopes.
//! - [`galois`]: cycle-type witnesses and `W_{2g}` combinatorics.
//! - [`weilgroup`]: the exponent constraint solver and the decision
//!   procedure built on it.
//! - [`sieve`]: `Ω(p)`, `P(y)`, `P(a, y)`, large-sieve variance and
//!   Chebotarev density reports.
//! - [`hassewitt`]: Cartier–Manin matrices of hyperelliptic curves and
//!   family scans.
//! - [`census`]: deterministic parallel sweeps and trend fits.
//! - [`report`]: manifests and CSV/JSON output.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod census;
pub mod error;
pub mod galois;
pub mod hassewitt;
pub mod intpoly;
pub mod primes;
pub mod report;
pub mod roots;
pub mod sieve;
pub mod weilgroup;
pub mod weilpoly;

pub use error::{Error, Result};

/// Default refusal threshold for box enumerations.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000_000;

/// Environment variable overriding [`DEFAULT_ENUMERATION_LIMIT`].
pub const ENUMERATION_LIMIT_ENV: &str = "WEILCENSUS_ENUMERATION_LIMIT";

/// The enumeration limit, honouring [`ENUMERATION_LIMIT_ENV`].
pub fn enumeration_limit() -> u128 {
    std::env::var(ENUMERATION_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_LIMIT)
}
