//! Exact-arithmetic rank certificates for the elliptic curve family
//!
//! ```text
//!     E_p : y^2 = x (x - 1) (x + p^2),      p^2 + 1 = 2q,   p, q prime,
//! ```
//!
//! together with the Diophantine side of the same story: for an odd prime
//! `p`, solutions of `(x^2 + y^2)^2 + (2pxy)^2 = z^2` with `gcd(x, y) = 1`
//! correspond one-to-one with Heron triangles of area `p` having an angle
//! `theta` between two sides with `tan(theta/2) = 1/p`.
//!
//! The rank machinery is a full explicit 2-descent over the square-class
//! group supported on `{2, p, q, infinity}`:
//!
//! * [`pairs`] locates and classifies the prime pairs `(p, q)`,
//! * [`curve`] builds the integral model, counts points modulo small primes
//!   and certifies that the torsion subgroup is Klein-four,
//! * [`descent`] enumerates the sixteen candidate square-class pairs,
//!   obstructs them by quadratic-residue and divisibility arguments (with a
//!   generic modular-solvability fallback), searches for explicit witness
//!   solutions, and turns the outcome into certified rank bounds,
//! * [`heron`] realizes the triangle/Diophantine correspondence,
//! * [`report`] serializes everything into machine-readable documents.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! everywhere, deterministic primality testing, no floating point.

#![forbid(unsafe_code)]

pub mod arith;
pub mod curve;
pub mod descent;
pub mod heron;
pub mod pairs;
pub mod report;

pub use arith::Rational;
pub use curve::{CurveParams, RationalPoint, TorsionOutcome, TorsionVerdict};
pub use descent::{
    DescentOutcome, DescentPair, DescentVerdict, ObstructionReason, RankResult, SquareClass,
    Witness,
};
pub use heron::{DiophSolution, HeronTriangle, VerificationReport};
pub use pairs::PrimePair;
pub use report::TableRow;

/// Default cap on the coordinates searched for descent witnesses.
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000;

/// Default cap on the reduction primes scanned while certifying torsion.
pub const DEFAULT_TORSION_ELL_MAX: u64 = 50;

/// Default cap on `x` in the quartic Diophantine search.
pub const DEFAULT_QUARTIC_BOUND: u64 = 100;
