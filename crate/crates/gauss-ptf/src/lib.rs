//! Hermite-basis calculus and moment-matched pseudorandom sampling for
//! polynomial threshold functions over gaussian space.
//!
//! A threshold function `f(x) = sign(p(x))` of a degree-d polynomial looks
//! random until you fix most of its variance: restricting `p` at a typical
//! gaussian center freezes the sign, because derivative norms grow slowly at
//! random points. This crate implements the whole toolchain needed to study
//! that phenomenon numerically:
//!
//! - [`poly`] - sparse multivariate polynomials in the orthonormal Hermite
//!   and standard bases: evaluation, mixed derivatives, basis conversion,
//!   the noise operator, gaussian norms, and a strict JSON file format.
//! - [`analysis`] - gaussian restrictions `p(sqrt(1-l) x + sqrt(l) y)` with
//!   exact Hermite expansions, the smoothed companion polynomial, normalized
//!   hypervariance, sign-concentration bounds, deviation moment bounds, and
//!   the mollifier that softly tests well-behavedness of derivative growth.
//! - [`prg`] - Gauss-Hermite node laws matching k gaussian moments exactly,
//!   fully independent or k-wise independent coordinates over a prime field,
//!   the bucketed generator `Z = (1/sqrt(L)) sum Y_i`, and seed accounting.
//! - [`experiment`] - deterministic, trial-parallel Monte Carlo experiments
//!   with confidence radii and bit-exact CSV reports.
//! - [`cli`] - the `gauss-ptf` binary: one subcommand per experiment plus
//!   polynomial utilities.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! examples/
//! ├── hermite_calculus.rs     # polynomials, derivatives, norms, conversion
//! ├── polynomial_files.rs     # the JSON interchange format
//! ├── gaussian_restriction.rs # restrictions and hypervariance decay
//! ├── derivative_growth.rs    # slow growth of ||grad^k p|| at random points
//! ├── mollifier_cases.rs      # well-/poorly-behaved centers, hybrid step
//! ├── sampler_audit.rs        # node laws, k-wise mode, seed accounting
//! ├── restriction_fixing.rs   # sign freezing as lambda shrinks
//! └── prg_fooling.rs          # fooling error of the bucketed generator
//! ```
//!
//! ```bash
//! cargo run -p gauss-ptf --example hermite_calculus
//! cargo run --release -p gauss-ptf --example prg_fooling
//! ```
//!
//! ## Reproducibility
//!
//! All randomness is counter-based (ChaCha streams keyed by a master seed and
//! a stream index), so every draw is a pure function of its coordinates:
//! trials parallelize freely and reruns - at any `--jobs` value - produce
//! byte-identical output.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod poly;
pub mod prg;

pub use error::{Error, Result};
