//! The integral model `y^2 = x^3 + (p^2 - 1) x^2 - p^2 x` (equivalently
//! `y^2 = x (x - 1) (x + p^2)`), membership tests, point counts over small
//! prime fields and the Klein-four torsion certificate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{is_prime_u64, jacobi_u64, Rational};
use crate::pairs::PrimePair;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("ell = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("ell = {0} divides the discriminant 64 p^4 q^2: bad reduction")]
    BadReduction(u64),
}

/// Parameters of one member of the curve family. The general family is
/// `y^2 = x (x - n tau) (x + n tau^{-1})`; this artifact fixes `n = p` and
/// `tau = 1/p`, which collapses the model to `y^2 = x (x - 1) (x + p^2)`.
/// `n` and `tau` are retained for provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveParams {
    pair: PrimePair,
    p_squared: BigUint,
}

impl CurveParams {
    pub fn pair(&self) -> &PrimePair {
        &self.pair
    }

    pub fn p(&self) -> &BigUint {
        self.pair.p()
    }

    pub fn q(&self) -> &BigUint {
        self.pair.q()
    }

    pub fn p_squared(&self) -> &BigUint {
        &self.p_squared
    }

    /// Coefficient of `x^2` in the integral model: `p^2 - 1`.
    pub fn a2(&self) -> BigInt {
        BigInt::from(self.p_squared.clone()) - 1
    }

    /// Coefficient of `x` in the integral model: `-p^2`.
    pub fn a4(&self) -> BigInt {
        -BigInt::from(self.p_squared.clone())
    }

    /// Roots of the cubic: `{0, 1, -p^2}`.
    pub fn roots(&self) -> [BigInt; 3] {
        [
            BigInt::zero(),
            BigInt::one(),
            -BigInt::from(self.p_squared.clone()),
        ]
    }

    /// The family parameter `n` (equal to `p` here).
    pub fn n(&self) -> &BigUint {
        self.pair.p()
    }

    /// The tan-half-angle parameter `tau` (equal to `1/p` here).
    pub fn tau(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.pair.p().clone()))
    }

    /// Right-hand side `x (x - 1) (x + p^2)` evaluated exactly.
    pub fn rhs(&self, x: &Rational) -> Rational {
        let one = Rational::one();
        let psq = Rational::from_integer(BigInt::from(self.p_squared.clone()));
        x * (x - one) * (x + psq)
    }
}

/// Exact rational point: either the point at infinity or an affine pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalPoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl RationalPoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        RationalPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, RationalPoint::Infinity)
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RationalPoint::Infinity => write!(f, "O"),
            RationalPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// The integral model attached to a prime pair.
pub fn curve_from_pair(pair: &PrimePair) -> CurveParams {
    let p_squared = pair.p() * pair.p();
    CurveParams {
        pair: pair.clone(),
        p_squared,
    }
}

/// Exact membership test.
pub fn is_on_curve(pt: &RationalPoint, curve: &CurveParams) -> bool {
    match pt {
        RationalPoint::Infinity => true,
        RationalPoint::Affine { x, y } => y * y == curve.rhs(x),
    }
}

/// The four rational 2-torsion points `{O, (0,0), (1,0), (-p^2, 0)}`.
pub fn two_torsion(curve: &CurveParams) -> Vec<RationalPoint> {
    let zero = Rational::zero();
    vec![
        RationalPoint::Infinity,
        RationalPoint::affine(Rational::zero(), zero.clone()),
        RationalPoint::affine(Rational::one(), zero.clone()),
        RationalPoint::affine(
            Rational::from_integer(-BigInt::from(curve.p_squared.clone())),
            zero,
        ),
    ]
}

/// Number of points of the reduction modulo `ell` (including the point at
/// infinity), by direct enumeration of `x` with quadratic-character
/// evaluation: each `x` contributes `1 + chi(f(x))` points.
///
/// `ell` must be an odd prime of good reduction, i.e. `ell` must not divide
/// `2 p q` (the prime support of the discriminant `64 p^4 q^2`).
pub fn count_points_mod(curve: &CurveParams, ell: u64) -> Result<u64, CurveError> {
    if ell < 3 || !is_prime_u64(ell) {
        return Err(CurveError::NotOddPrime(ell));
    }
    let p_mod = (curve.p() % ell).to_u64().expect("residue < ell");
    let q_mod = (curve.q() % ell).to_u64().expect("residue < ell");
    if p_mod == 0 || q_mod == 0 {
        return Err(CurveError::BadReduction(ell));
    }
    let ell_wide = ell as u128;
    let psq = (p_mod as u128 * p_mod as u128) % ell_wide;
    let mut count: u64 = 1; // point at infinity
    for x in 0..ell {
        let x_wide = x as u128;
        let x_minus_1 = (x_wide + ell_wide - 1) % ell_wide;
        let x_plus_psq = (x_wide + psq) % ell_wide;
        let f = ((x_wide * x_minus_1) % ell_wide * x_plus_psq % ell_wide) as u64;
        if f == 0 {
            count += 1;
        } else if jacobi_u64(f, ell) == 1 {
            count += 2;
        }
    }
    Ok(count)
}

/// Result of the torsion certification scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionVerdict {
    pub outcome: TorsionOutcome,
    /// The `(ell, count)` observations the scan made, in order.
    pub observed: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionOutcome {
    /// Torsion is exactly `Z/2 x Z/2`, witnessed by the listed reduction
    /// primes (the gcd of their point counts is 4).
    KleinFour { witness_ells: Vec<u64> },
    /// The scan bound was exhausted with the gcd of observed counts still
    /// above 4 (or no good primes found at all, reported as gcd 0).
    Inconclusive { count_gcd: u64 },
}

impl TorsionVerdict {
    pub fn is_klein_four(&self) -> bool {
        matches!(self.outcome, TorsionOutcome::KleinFour { .. })
    }
}

/// Certifies `E(Q)_tors = Z/2 x Z/2` by reduction modulo good primes.
///
/// The torsion subgroup injects into `E(F_ell)` for every odd prime `ell` of
/// good reduction, so its order divides every observed point count; the four
/// rational 2-torsion points force the order to be at least 4. The scan
/// therefore walks good primes `ell <= ell_max`, keeps the running gcd of
/// the counts and declares Klein-four as soon as that gcd reaches 4.
///
/// A single reduction usually suffices: for every `p != 3` the count at
/// `ell = 3` is exactly 4. For `p = 3` the first good prime is 7 and no
/// single count equals 4 (the Hasse interval around `ell + 1` excludes 4
/// for every good `ell > 7`), so the gcd of several counts is what
/// certifies; `ell = 7, 11, 13` yield `12, 12, 16` with gcd 4.
pub fn certify_torsion(curve: &CurveParams, ell_max: u64) -> TorsionVerdict {
    let mut observed = Vec::new();
    let mut gcd_so_far: u64 = 0;
    for ell in crate::pairs::sieve_primes(ell_max) {
        if ell < 3 {
            continue;
        }
        let count = match count_points_mod(curve, ell) {
            Ok(c) => c,
            Err(_) => continue, // bad reduction: skip
        };
        gcd_so_far = gcd_so_far.gcd(&count);
        observed.push((ell, count));
        if gcd_so_far == 4 {
            let witness_ells = observed.iter().map(|&(l, _)| l).collect();
            return TorsionVerdict {
                outcome: TorsionOutcome::KleinFour { witness_ells },
                observed,
            };
        }
    }
    TorsionVerdict {
        outcome: TorsionOutcome::Inconclusive {
            count_gcd: gcd_so_far,
        },
        observed,
    }
}
