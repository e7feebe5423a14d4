//! Explicit 2-descent for `y^2 = x (x - 1) (x + p^2)` with `p^2 + 1 = 2q`.
//!
//! The descent map sends a rational point to the square classes of `x` and
//! `x - 1` inside `Q(S, 2)`, the 16-element group of square classes with
//! even valuation outside `S = {2, p, q, infinity}`. A candidate pair
//! `(b1, b2)` lies in the image iff the pair of norm equations
//!
//! ```text
//!     E1:  b1 r1^2 - b2 r2^2      =  s^2
//!     E2:  b1 r1^2 - b1 b2 r3^2   = -p^2 s^2
//! ```
//!
//! has a solution in nonzero integers with `gcd(r1, s) = gcd(r2, s) =
//! gcd(r3, s) = 1` (obtained from the rational equations by clearing the
//! three coordinates to one common denominator `s`; the coprimality of each
//! numerator with `s` comes along because the `b`'s are square-free).
//!
//! The certifier obstructs candidates with the divisibility and
//! quadratic-residue arguments proved for this family, falls back to a
//! generic modular-solvability sieve, and searches for explicit witnesses.
//! Since the image of the descent map is a subgroup containing the torsion
//! image `A = {(1,1), (-1,-1), (1,2q), (-1,-2q)}` and `#Im = 2^(rank + 2)`
//! once torsion is Klein-four, obstruction counts give an upper rank bound
//! and independent witnesses give a lower one.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{int_sqrt_exact, int_sqrt_exact_u128, jacobi_u64, legendre, Rational};
use crate::curve::{
    certify_torsion, curve_from_pair, is_on_curve, CurveParams, RationalPoint, TorsionOutcome,
    TorsionVerdict,
};
use crate::pairs::PrimePair;
use crate::DEFAULT_TORSION_ELL_MAX;

/// Full four-variable residue enumeration is used for a modulus `m` only
/// while `m^4` stays below ~2^26.
const FULL_ENUM_MODULUS_CAP: u64 = 90;
/// Structured per-prime enumeration (quadratic characters over `(r1, s)`)
/// is exact up to this modulus; past it only solvability probes run and no
/// obstruction is claimed.
const PRIME_ENUM_CAP: u64 = 4_500;
/// Window of `(r1, s)` residues sampled when probing large prime moduli.
const PROBE_WINDOW: u64 = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescentError {
    #[error("p has residue class {class} mod 8: outside the certified theorem scope")]
    OutOfTheoremScope { class: u8 },
    #[error("torsion subgroup not certified Klein-four within the scan bound (count gcd {count_gcd})")]
    TorsionNotCertified { count_gcd: u64 },
    #[error("pair {0} is outside the 16-candidate set {{1, p, q, pq}}^2")]
    NotACandidatePair(String),
    #[error("solution fails the descent equations for this pair")]
    InvalidWitness,
    #[error("reconstructed point fails the curve equation")]
    ReconstructionOffCurve,
    #[error("{0} has a prime factor of odd multiplicity outside {{2, p, q}}")]
    NotInSquareClassGroup(Rational),
    #[error("point is not on the curve")]
    PointNotOnCurve,
}

/// An element of `Q(S, 2)` for `S = {2, p, q, infinity}`: a sign together
/// with the exponent parities of 2, `p` and `q`. Sixteen elements in all,
/// each its own inverse under componentwise multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareClass {
    pub negative: bool,
    pub e2: bool,
    pub ep: bool,
    pub eq: bool,
}

impl SquareClass {
    pub const ONE: SquareClass = SquareClass::new(false, false, false, false);
    pub const MINUS_ONE: SquareClass = SquareClass::new(true, false, false, false);
    pub const P: SquareClass = SquareClass::new(false, false, true, false);
    pub const Q: SquareClass = SquareClass::new(false, false, false, true);
    pub const PQ: SquareClass = SquareClass::new(false, false, true, true);
    pub const TWO_Q: SquareClass = SquareClass::new(false, true, false, true);

    pub const fn new(negative: bool, e2: bool, ep: bool, eq: bool) -> Self {
        SquareClass {
            negative,
            e2,
            ep,
            eq,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == SquareClass::ONE
    }

    /// Componentwise group law (XOR on exponent bits, sign multiplication).
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass {
            negative: self.negative ^ other.negative,
            e2: self.e2 ^ other.e2,
            ep: self.ep ^ other.ep,
            eq: self.eq ^ other.eq,
        }
    }

    /// The square-free integer representative for a concrete prime pair.
    pub fn value(&self, pair: &PrimePair) -> BigInt {
        let mut v = BigInt::one();
        if self.e2 {
            v *= 2;
        }
        if self.ep {
            v *= BigInt::from(pair.p().clone());
        }
        if self.eq {
            v *= BigInt::from(pair.q().clone());
        }
        if self.negative {
            v = -v;
        }
        v
    }

    /// Symbolic name, e.g. `q` or `-2pq`.
    pub fn symbol(&self) -> String {
        let mut s = String::new();
        if self.negative {
            s.push('-');
        }
        if self.e2 {
            s.push('2');
        }
        if self.ep {
            s.push('p');
        }
        if self.eq {
            s.push('q');
        }
        if !self.e2 && !self.ep && !self.eq {
            s.push('1');
        }
        s
    }

    /// Square class of a nonzero rational supported on `{2, p, q}` after
    /// removing squares; `None` when a residual factor of odd multiplicity
    /// survives outside the support.
    pub fn from_rational(r: &Rational, pair: &PrimePair) -> Option<SquareClass> {
        let n = r.numer() * r.denom();
        if n.is_zero() {
            return None;
        }
        let negative = n.is_negative();
        let mut m = n.magnitude().clone();
        let mut strip = |f: &BigUint| -> bool {
            let mut odd = false;
            while (&m % f).is_zero() {
                m /= f;
                odd = !odd;
            }
            odd
        };
        let e2 = strip(&BigUint::from(2u32));
        let ep = strip(pair.p());
        let eq = strip(pair.q());
        int_sqrt_exact(&m).map(|_| SquareClass {
            negative,
            e2,
            ep,
            eq,
        })
    }
}

impl std::fmt::Display for SquareClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A pair of square classes, the target of the descent map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DescentPair {
    pub b1: SquareClass,
    pub b2: SquareClass,
}

impl DescentPair {
    pub const fn new(b1: SquareClass, b2: SquareClass) -> Self {
        DescentPair { b1, b2 }
    }

    pub fn mul(&self, other: &DescentPair) -> DescentPair {
        DescentPair {
            b1: self.b1.mul(&other.b1),
            b2: self.b2.mul(&other.b2),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.b1.is_one() && self.b2.is_one()
    }

    /// The four elements of this pair's coset modulo the torsion image `A`.
    pub fn a_coset(&self) -> [DescentPair; 4] {
        TORSION_IMAGE_CLASSES.map(|a| self.mul(&a))
    }

    /// Reduces modulo `A` to the canonical representative with components
    /// in `{1, p, q, pq}`. `None` when the pair violates the positivity or
    /// parity constraints every image point satisfies (mixed signs, or an
    /// even first component).
    pub fn canonical_rep(&self) -> Option<DescentPair> {
        let mut rep = *self;
        if rep.b1.negative != rep.b2.negative {
            return None;
        }
        if rep.b1.negative {
            rep = rep.mul(&DescentPair::new(
                SquareClass::MINUS_ONE,
                SquareClass::MINUS_ONE,
            ));
        }
        if rep.b1.e2 {
            return None;
        }
        if rep.b2.e2 {
            rep = rep.mul(&DescentPair::new(SquareClass::ONE, SquareClass::TWO_Q));
        }
        Some(rep)
    }
}

impl std::fmt::Display for DescentPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.b1, self.b2)
    }
}

const TORSION_IMAGE_CLASSES: [DescentPair; 4] = [
    DescentPair::new(SquareClass::ONE, SquareClass::ONE),
    DescentPair::new(SquareClass::MINUS_ONE, SquareClass::MINUS_ONE),
    DescentPair::new(SquareClass::ONE, SquareClass::TWO_Q),
    DescentPair::new(
        SquareClass::MINUS_ONE,
        SquareClass::new(true, true, false, true),
    ),
];

/// The image `A` of the torsion subgroup under the descent map:
/// `O -> (1, 1)`, `(0, 0) -> (-1, -1)`, `(1, 0) -> (1, 2q)` and
/// `(-p^2, 0) -> (-1, -2q)`. Valid once torsion is certified Klein-four.
pub fn torsion_image(_curve: &CurveParams) -> [DescentPair; 4] {
    TORSION_IMAGE_CLASSES
}

/// The sixteen candidate pairs `{1, p, q, pq}^2`: all 256 pairs filtered by
/// the sign and parity constraints and reduced modulo `A`. Conclusions about
/// a candidate transfer to its whole coset ([`DescentPair::a_coset`]) since
/// the descent map is a homomorphism and `A` lies in its image.
pub fn candidate_pairs(_curve: &CurveParams) -> Vec<DescentPair> {
    const REPS: [SquareClass; 4] = [
        SquareClass::ONE,
        SquareClass::P,
        SquareClass::Q,
        SquareClass::PQ,
    ];
    let mut out = Vec::with_capacity(16);
    for b1 in REPS {
        for b2 in REPS {
            out.push(DescentPair::new(b1, b2));
        }
    }
    out
}

/// The descent map itself: `P = (x, y) -> (x, x - 1)` as square classes,
/// with the torsion special cases at `x = 0`, `x = 1` and infinity.
pub fn descent_map(pt: &RationalPoint, curve: &CurveParams) -> Result<DescentPair, DescentError> {
    if !is_on_curve(pt, curve) {
        return Err(DescentError::PointNotOnCurve);
    }
    let pair = curve.pair();
    match pt {
        RationalPoint::Infinity => Ok(TORSION_IMAGE_CLASSES[0]),
        RationalPoint::Affine { x, .. } => {
            if x.is_zero() {
                return Ok(TORSION_IMAGE_CLASSES[1]);
            }
            if x.is_one() {
                return Ok(TORSION_IMAGE_CLASSES[2]);
            }
            let b1 = SquareClass::from_rational(x, pair)
                .ok_or_else(|| DescentError::NotInSquareClassGroup(x.clone()))?;
            let shifted = x - Rational::one();
            let b2 = SquareClass::from_rational(&shifted, pair)
                .ok_or(DescentError::NotInSquareClassGroup(shifted))?;
            Ok(DescentPair::new(b1, b2))
        }
    }
}

/// Why a candidate pair cannot lie in the image of the descent map. Every
/// reason names the modulus it argues at and the contradiction found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionReason {
    /// `gcd(b1, b2)` is divisible by `p`, `q` or `pq`: E1 forces the shared
    /// prime into `s`, then E2 taken modulo its square forces it into `r1`.
    SharedFactor { divisor: String, modulus: BigUint },
    /// A two-step divisibility cascade through E1 and E2 pushes one prime
    /// into both `s` and one of the `r_i`.
    DivisibilityCascade { modulus: BigUint, chain: String },
    /// One or more quadratic characters evaluate to `-1` where solvability
    /// would require `+1`.
    NonResidue {
        modulus: BigUint,
        conditions: Vec<(String, i8)>,
    },
    /// The generic fallback: exhaustive residue enumeration modulo `modulus`
    /// found no tuple compatible with the equations and the coprimality
    /// side-conditions.
    LocalSieve { modulus: BigUint },
}

impl ObstructionReason {
    pub fn modulus(&self) -> &BigUint {
        match self {
            ObstructionReason::SharedFactor { modulus, .. }
            | ObstructionReason::DivisibilityCascade { modulus, .. }
            | ObstructionReason::NonResidue { modulus, .. }
            | ObstructionReason::LocalSieve { modulus } => modulus,
        }
    }
}

impl std::fmt::Display for ObstructionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObstructionReason::SharedFactor { divisor, modulus } => write!(
                f,
                "shared factor {divisor}: E1 mod {modulus} forces {modulus} | s, \
                 then E2 mod {modulus}^2 forces {modulus} | r1, contradicting gcd(r1, s) = 1"
            ),
            ObstructionReason::DivisibilityCascade { chain, .. } => write!(f, "{chain}"),
            ObstructionReason::NonResidue {
                modulus,
                conditions,
            } => {
                write!(f, "quadratic obstruction mod {modulus}: ")?;
                for (i, (symbol, value)) in conditions.iter().enumerate() {
                    if i > 0 {
                        write!(f, " and ")?;
                    }
                    write!(f, "{symbol} = {value}")?;
                }
                Ok(())
            }
            ObstructionReason::LocalSieve { modulus } => write!(
                f,
                "no residue tuple modulo {modulus} satisfies E1 and E2 under the \
                 coprimality side-conditions"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    One,
    P,
    Q,
    Pq,
}

fn class_symbol(c: &SquareClass) -> Option<Sym> {
    if c.negative || c.e2 {
        return None;
    }
    Some(match (c.ep, c.eq) {
        (false, false) => Sym::One,
        (true, false) => Sym::P,
        (false, true) => Sym::Q,
        (true, true) => Sym::Pq,
    })
}

/// Attempts to prove that the descent equations for `pair` have no
/// admissible integer solution. Returns the obstruction found, or `None`
/// when every implemented test passes (which certifies nothing by itself).
///
/// Layering: the family-specific divisibility and quadratic-residue
/// arguments run first and produce citable reasons; the generic modular
/// sieve (moduli 8, `p`, `q`, `p^2`) runs second.
pub fn obstruct(
    pair: &DescentPair,
    pair_data: &PrimePair,
) -> Result<Option<ObstructionReason>, DescentError> {
    let s1 = class_symbol(&pair.b1);
    let s2 = class_symbol(&pair.b2);
    let (s1, s2) = match (s1, s2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(DescentError::NotACandidatePair(pair.to_string())),
    };
    if pair.is_identity() {
        // image of the trivial coset; nothing to obstruct
        return Ok(None);
    }
    let p = pair_data.p().clone();
    let q = pair_data.q().clone();
    let class = pair_data.residue_class();

    // Shared-factor tests: gcd(b1, b2) divisible by p, q or pq.
    let shared_p = pair.b1.ep && pair.b2.ep;
    let shared_q = pair.b1.eq && pair.b2.eq;
    if shared_p || shared_q {
        let divisor = match (shared_p, shared_q) {
            (true, true) => "pq",
            (true, false) => "p",
            _ => "q",
        };
        let modulus = if shared_p { p } else { q };
        return Ok(Some(ObstructionReason::SharedFactor {
            divisor: divisor.to_string(),
            modulus,
        }));
    }

    // Pair-specific divisibility cascades (valid for every p).
    let cascade_mod_p: &str = "E2 mod p forces p | r1, then E1 mod p forces p | s, \
                               contradicting gcd(r1, s) = 1";
    let cascade_mod_q: &str = "E2 mod q forces q | s, then E1 mod q forces q | r2, \
                               contradicting gcd(r2, s) = 1";
    match (s1, s2) {
        (Sym::One, Sym::Pq) | (Sym::One, Sym::P) | (Sym::Q, Sym::P) => {
            return Ok(Some(ObstructionReason::DivisibilityCascade {
                modulus: p,
                chain: cascade_mod_p.to_string(),
            }));
        }
        (Sym::Pq, Sym::One) | (Sym::Q, Sym::One) => {
            return Ok(Some(ObstructionReason::DivisibilityCascade {
                modulus: q,
                chain: cascade_mod_q.to_string(),
            }));
        }
        _ => {}
    }

    // Quadratic-residue tests keyed to the residue class of p mod 8.
    let sym = |a: &BigInt, m: &BigUint| legendre(a, m).expect("modulus is prime by construction");
    let p_int = BigInt::from(p.clone());
    let q_int = BigInt::from(q.clone());
    match (s1, s2) {
        (Sym::P, Sym::Q) => {
            // E2 / p mod p gives 2 r1^2 = r3^2, using 2q = 1 mod p.
            if class == 3 || class == 5 {
                let v = sym(&BigInt::from(2), &p);
                if v == -1 {
                    return Ok(Some(ObstructionReason::NonResidue {
                        modulus: p,
                        conditions: vec![("(2/p)".to_string(), v)],
                    }));
                }
            } else if class == 7 {
                // E1 mod p gives r2^2 = -2 s^2.
                let v = sym(&BigInt::from(-2), &p);
                if v == -1 {
                    return Ok(Some(ObstructionReason::NonResidue {
                        modulus: p,
                        conditions: vec![("(-2/p)".to_string(), v)],
                    }));
                }
            }
        }
        (Sym::P, Sym::One) => {
            if class == 3 || class == 7 {
                // E1 mod p gives r2^2 = -s^2.
                let v = sym(&BigInt::from(-1), &p);
                if v == -1 {
                    return Ok(Some(ObstructionReason::NonResidue {
                        modulus: p,
                        conditions: vec![("(-1/p)".to_string(), v)],
                    }));
                }
            } else if class == 5 {
                // E1 - E2 mod q gives p r3^2 = r2^2; (p/q) = (2/p) = -1 by
                // reciprocity and 2q = 1 mod p.
                let v = sym(&p_int, &q);
                if v == -1 {
                    return Ok(Some(ObstructionReason::NonResidue {
                        modulus: q,
                        conditions: vec![("(p/q)".to_string(), v)],
                    }));
                }
            }
        }
        (Sym::One, Sym::Q) => {
            if class == 5 {
                // E2 mod p gives r1^2 = q r3^2, so (q/p) must be +1 or
                // p | r1, r3; then E1 mod p needs (-q/p) = +1 or p | s.
                let vq = sym(&q_int, &p);
                let vnq = sym(&(-&q_int), &p);
                if vq == -1 && vnq == -1 {
                    return Ok(Some(ObstructionReason::NonResidue {
                        modulus: p,
                        conditions: vec![
                            ("(q/p)".to_string(), vq),
                            ("(-q/p)".to_string(), vnq),
                        ],
                    }));
                }
            }
        }
        _ => {}
    }

    // Generic fallback: residue sieves modulo 8, p, q and p^2.
    Ok(fallback_sieve(pair, pair_data))
}

/// Runs the modular solvability sieve and reports the first modulus with a
/// provably empty residue set, if any. Obstructions are claimed only on
/// exhaustively enumerated moduli; past the enumeration caps the sieve can
/// still *confirm* solvability via probes but never claims emptiness.
fn fallback_sieve(pair: &DescentPair, pair_data: &PrimePair) -> Option<ObstructionReason> {
    let b1 = pair.b1.value(pair_data);
    let b2 = pair.b2.value(pair_data);
    let p = pair_data.p();
    let q = pair_data.q();
    let psq = p * p;

    // modulus 8 (base prime 2)
    if !solvable_full_enum(8, 2, &b1, &b2, &psq) {
        return Some(ObstructionReason::LocalSieve {
            modulus: BigUint::from(8u32),
        });
    }
    // modulus p, then q
    for ell in [p, q] {
        if let Some(ell64) = ell.to_u64() {
            if let Some(false) = solvable_mod_prime(ell64, &b1, &b2, &psq) {
                return Some(ObstructionReason::LocalSieve {
                    modulus: ell.clone(),
                });
            }
        }
    }
    // modulus p^2 (base prime p), full enumeration only for tiny p
    if let Some(m) = psq.to_u64() {
        if m <= FULL_ENUM_MODULUS_CAP {
            let base = p.to_u64().expect("p fits if p^2 does");
            if !solvable_full_enum(m, base, &b1, &b2, &psq) {
                return Some(ObstructionReason::LocalSieve { modulus: psq });
            }
        }
    }
    None
}

/// Exhaustive solvability of E1, E2 modulo `m` over all residue tuples,
/// with the coprimality conditions relaxed to their mod-`base` shadow:
/// `r_i` and `s` must not both vanish mod `base`. An empty set here proves
/// there is no integer solution. Only called with `m <= FULL_ENUM_MODULUS_CAP`
/// or `m = 8`.
fn solvable_full_enum(m: u64, base: u64, b1: &BigInt, b2: &BigInt, psq: &BigUint) -> bool {
    let m_i = m as i128;
    let red = |v: &BigInt| -> i128 {
        let r = v.mod_floor(&BigInt::from(m)).to_i128().expect("residue fits");
        r
    };
    let b1m = red(b1);
    let b2m = red(b2);
    let b12m = (b1m * b2m).rem_euclid(m_i);
    let psqm = (psq % m).to_i128().expect("residue fits");
    let base = base as i128;
    let squares: Vec<i128> = (0..m_i).map(|v| (v * v).rem_euclid(m_i)).collect();
    for r1 in 0..m_i {
        let lhs = (b1m * squares[r1 as usize]).rem_euclid(m_i);
        for s in 0..m_i {
            let ssq = squares[s as usize];
            if r1 % base == 0 && s % base == 0 {
                continue;
            }
            let rhs2 = (lhs + psqm * ssq).rem_euclid(m_i);
            for r2 in 0..m_i {
                if r2 % base == 0 && s % base == 0 {
                    continue;
                }
                if (lhs - b2m * squares[r2 as usize] - ssq).rem_euclid(m_i) != 0 {
                    continue;
                }
                for r3 in 0..m_i {
                    if r3 % base == 0 && s % base == 0 {
                        continue;
                    }
                    if (b12m * squares[r3 as usize]).rem_euclid(m_i) == rhs2 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Solvability of E1, E2 modulo an odd prime `ell`.
///
/// For each `(r1, s)` residue pair the existence of matching `r2`, `r3` is
/// a quadratic-character condition, so the scan is O(ell^2) with early
/// exit. Returns `Some(answer)` when the scan was exhaustive
/// (`ell <= PRIME_ENUM_CAP`), or `Some(true)` / `None` ("unknown") when
/// only the probe window was sampled.
fn solvable_mod_prime(ell: u64, b1: &BigInt, b2: &BigInt, psq: &BigUint) -> Option<bool> {
    if ell < 3 {
        return None;
    }
    let red = |v: &BigInt| (v.mod_floor(&BigInt::from(ell))).to_u64().expect("fits");
    let b1m = red(b1);
    let b2m = red(b2);
    let b12m = ((b1m as u128 * b2m as u128) % ell as u128) as u64;
    let psqm = (psq % ell).to_u64().expect("fits");
    let exhaustive = ell <= PRIME_ENUM_CAP;
    let window = if exhaustive { ell } else { PROBE_WINDOW.min(ell) };

    let inv = |v: u64| -> u64 {
        // v^(ell - 2) mod ell for v != 0
        let mut acc: u128 = 1;
        let mut base = v as u128 % ell as u128;
        let mut e = ell - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % ell as u128;
            }
            base = base * base % ell as u128;
            e >>= 1;
        }
        acc as u64
    };
    let b2_inv = if b2m != 0 { inv(b2m) } else { 0 };
    let b12_inv = if b12m != 0 { inv(b12m) } else { 0 };

    for r1 in 0..window {
        let r1sq = (r1 as u128 * r1 as u128 % ell as u128) as u64;
        let lhs = (b1m as u128 * r1sq as u128 % ell as u128) as u64;
        for s in 0..window {
            let s_zero = s == 0;
            if r1 == 0 && s_zero {
                continue;
            }
            let ssq = (s as u128 * s as u128 % ell as u128) as u64;
            // E1: b2 r2^2 = lhs - s^2
            let a = ((lhs as u128 + ell as u128 - ssq as u128) % ell as u128) as u64;
            let r2_forced_zero;
            if b2m == 0 {
                if a != 0 {
                    continue;
                }
                r2_forced_zero = false; // r2 is unconstrained, pick a unit
            } else {
                let t2 = (a as u128 * b2_inv as u128 % ell as u128) as u64;
                if t2 == 0 {
                    r2_forced_zero = true;
                } else if jacobi_u64(t2, ell) == 1 {
                    r2_forced_zero = false;
                } else {
                    continue;
                }
            }
            if s_zero && r2_forced_zero {
                continue;
            }
            // E2: b1 b2 r3^2 = lhs + p^2 s^2
            let b = ((lhs as u128 + psqm as u128 * ssq as u128) % ell as u128) as u64;
            let r3_forced_zero;
            if b12m == 0 {
                if b != 0 {
                    continue;
                }
                r3_forced_zero = false;
            } else {
                let t3 = (b as u128 * b12_inv as u128 % ell as u128) as u64;
                if t3 == 0 {
                    r3_forced_zero = true;
                } else if jacobi_u64(t3, ell) == 1 {
                    r3_forced_zero = false;
                } else {
                    continue;
                }
            }
            if s_zero && r3_forced_zero {
                continue;
            }
            return Some(true);
        }
    }
    if exhaustive {
        Some(false)
    } else {
        None
    }
}

/// An explicit integer solution of the descent equations, stored with
/// positive entries (the equations only see squares, and the reconstructed
/// point's sign convention follows the positive representative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub r1: BigUint,
    pub r2: BigUint,
    pub r3: BigUint,
    pub s: BigUint,
}

impl Witness {
    fn from_u64(r1: u64, r2: u64, r3: u64, s: u64) -> Self {
        Witness {
            r1: BigUint::from(r1),
            r2: BigUint::from(r2),
            r3: BigUint::from(r3),
            s: BigUint::from(s),
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(r1, r2, r3, s) = ({}, {}, {}, {})", self.r1, self.r2, self.r3, self.s)
    }
}

/// Searches for the smallest witness solution of E1, E2 with all
/// coordinates in `[1, bound]`: smallest by maximum coordinate, ties broken
/// by lexicographic `(s, r1, r2, r3)`.
///
/// The scan iterates `s` ascending then `r1`; for each pair the equations
/// determine `r2^2` and `r3^2`, so candidates survive a divisibility check,
/// a perfect-square check and the coprimality conditions. Branches with
/// `max(s, r1)` at or above the best max-coordinate found so far are
/// pruned.
pub fn witness_search(pair: &DescentPair, pair_data: &PrimePair, bound: u64) -> Option<Witness> {
    let b1 = pair.b1.value(pair_data);
    let b2 = pair.b2.value(pair_data);
    let psq = BigInt::from(pair_data.p() * pair_data.p());

    // fast path when every intermediate fits comfortably in i128
    let fits = || -> Option<(i128, i128, i128)> {
        let b1s = b1.to_i128()?;
        let b2s = b2.to_i128()?;
        let psqs = psq.to_i128()?;
        let bound_sq = (bound as u128).checked_mul(bound as u128)?;
        let scale = b1s
            .unsigned_abs()
            .max(b2s.unsigned_abs())
            .max(b1s.checked_mul(b2s)?.unsigned_abs())
            .max(psqs.unsigned_abs())
            .checked_add(1)?;
        scale.checked_mul(bound_sq)?.checked_mul(4)?;
        Some((b1s, b2s, psqs))
    };
    if let Some((b1s, b2s, psqs)) = fits() {
        return witness_search_i128(b1s, b2s, psqs, bound);
    }
    witness_search_big(&b1, &b2, &psq, bound)
}

type Candidate = (u64, u64, u64, u64, u64); // (max, s, r1, r2, r3)

fn witness_search_i128(b1: i128, b2: i128, psq: i128, bound: u64) -> Option<Witness> {
    let b12 = b1 * b2;
    let mut best: Option<Candidate> = None;
    let cap = |best: &Option<Candidate>| best.map_or(u64::MAX, |c| c.0);
    for s in 1..=bound {
        if s >= cap(&best) {
            break;
        }
        let ssq = (s as i128) * (s as i128);
        for r1 in 1..=bound {
            if s.max(r1) >= cap(&best) {
                break;
            }
            if r1.gcd(&s) != 1 {
                continue;
            }
            let lhs = b1 * (r1 as i128) * (r1 as i128);
            let a = lhs - ssq;
            if a == 0 || a.signum() != b2.signum() || a % b2 != 0 {
                continue;
            }
            let t2 = a / b2;
            let r2 = match int_sqrt_exact_u128(t2 as u128) {
                Some(r) => r as u64,
                None => continue,
            };
            if r2 == 0 || r2 > bound || r2.gcd(&s) != 1 {
                continue;
            }
            let c = lhs + psq * ssq;
            if c == 0 || c.signum() != b12.signum() || c % b12 != 0 {
                continue;
            }
            let t3 = c / b12;
            let r3 = match int_sqrt_exact_u128(t3 as u128) {
                Some(r) => r as u64,
                None => continue,
            };
            if r3 == 0 || r3 > bound || r3.gcd(&s) != 1 {
                continue;
            }
            let cand: Candidate = (s.max(r1).max(r2).max(r3), s, r1, r2, r3);
            if best.map_or(true, |b| cand < b) {
                best = Some(cand);
            }
        }
    }
    best.map(|(_, s, r1, r2, r3)| Witness::from_u64(r1, r2, r3, s))
}

fn witness_search_big(b1: &BigInt, b2: &BigInt, psq: &BigInt, bound: u64) -> Option<Witness> {
    let b12 = b1 * b2;
    let mut best: Option<(u64, Witness)> = None;
    let cap = |best: &Option<(u64, Witness)>| best.as_ref().map_or(u64::MAX, |c| c.0);
    for s in 1..=bound {
        if s >= cap(&best) {
            break;
        }
        let ssq = BigInt::from(s) * BigInt::from(s);
        for r1 in 1..=bound {
            if s.max(r1) >= cap(&best) {
                break;
            }
            if r1.gcd(&s) != 1 {
                continue;
            }
            let lhs = b1 * BigInt::from(r1) * BigInt::from(r1);
            let a = &lhs - &ssq;
            if a.is_zero() || a.sign() != b2.sign() || !(&a % b2).is_zero() {
                continue;
            }
            let r2 = match int_sqrt_exact(&(&a / b2).magnitude().clone()) {
                Some(r) => match r.to_u64() {
                    Some(r) => r,
                    None => continue,
                },
                None => continue,
            };
            if r2 == 0 || r2 > bound || r2.gcd(&s) != 1 {
                continue;
            }
            let c = &lhs + psq * &ssq;
            if c.is_zero() || c.sign() != b12.sign() || !(&c % &b12).is_zero() {
                continue;
            }
            let r3 = match int_sqrt_exact(&(&c / &b12).magnitude().clone()) {
                Some(r) => match r.to_u64() {
                    Some(r) => r,
                    None => continue,
                },
                None => continue,
            };
            if r3 == 0 || r3 > bound || r3.gcd(&s) != 1 {
                continue;
            }
            let max = s.max(r1).max(r2).max(r3);
            let wit = Witness::from_u64(r1, r2, r3, s);
            let better = match &best {
                None => true,
                Some((bm, bw)) => {
                    (max, s, r1, r2, r3)
                        < (
                            *bm,
                            bw.s.to_u64().unwrap(),
                            bw.r1.to_u64().unwrap(),
                            bw.r2.to_u64().unwrap(),
                            bw.r3.to_u64().unwrap(),
                        )
                }
            };
            if better {
                best = Some((max, wit));
            }
        }
    }
    best.map(|(_, w)| w)
}

/// Rebuilds the rational point from a witness:
/// `x = b1 (r1/s)^2`, `y = b1 b2 (r1/s)(r2/s)(r3/s)`. The witness is
/// re-verified against the descent equations before anything is built, and
/// the result is checked against the curve equation.
pub fn reconstruct_point(
    pair: &DescentPair,
    sol: &Witness,
    curve: &CurveParams,
) -> Result<RationalPoint, DescentError> {
    let pair_data = curve.pair();
    let b1 = pair.b1.value(pair_data);
    let b2 = pair.b2.value(pair_data);
    let r1 = BigInt::from(sol.r1.clone());
    let r2 = BigInt::from(sol.r2.clone());
    let r3 = BigInt::from(sol.r3.clone());
    let s = BigInt::from(sol.s.clone());
    if r1.is_zero() || r2.is_zero() || r3.is_zero() || s.is_zero() {
        return Err(DescentError::InvalidWitness);
    }
    if !r1.gcd(&s).is_one() || !r2.gcd(&s).is_one() || !r3.gcd(&s).is_one() {
        return Err(DescentError::InvalidWitness);
    }
    let psq = BigInt::from(pair_data.p() * pair_data.p());
    let ssq = &s * &s;
    if &b1 * &r1 * &r1 - &b2 * &r2 * &r2 != ssq {
        return Err(DescentError::InvalidWitness);
    }
    if &b1 * &r1 * &r1 - &b1 * &b2 * &r3 * &r3 != -&psq * &ssq {
        return Err(DescentError::InvalidWitness);
    }
    let x = Rational::new(&b1 * &r1 * &r1, &s * &s);
    let y = Rational::new(&b1 * &b2 * &r1 * &r2 * &r3, &s * &s * &s);
    let pt = RationalPoint::affine(x, y);
    if !is_on_curve(&pt, curve) {
        return Err(DescentError::ReconstructionOffCurve);
    }
    Ok(pt)
}

/// Verdict for one candidate coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentVerdict {
    /// The identity coset: image of the torsion subgroup.
    InTorsionImage,
    /// Proven absent from the image.
    Obstructed(ObstructionReason),
    /// Proven present, with an explicit solution.
    Witnessed(Witness),
    /// Neither obstructed nor witnessed within the search bound.
    Unresolved { search_bound: u64 },
}

/// One candidate coset with its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentOutcome {
    pub pair: DescentPair,
    pub verdict: DescentVerdict,
}

/// Certified rank bounds assembled from the sixteen coset verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub lower: u32,
    pub upper: u32,
    pub certified: bool,
    /// Power of two bounding `#Im(b)` from above; rank upper bound is
    /// `log2(image_size_bound) - 2`.
    pub image_size_bound: u64,
    pub outcomes: Vec<DescentOutcome>,
    pub torsion: TorsionVerdict,
}

/// Runs the full descent for a prime pair with the default torsion scan.
pub fn rank_bounds(pair_data: &PrimePair, search_bound: u64) -> Result<RankResult, DescentError> {
    rank_bounds_with(pair_data, search_bound, DEFAULT_TORSION_ELL_MAX)
}

/// Runs the full descent: torsion certification, the sixteen coset
/// verdicts, and the rank bounds.
///
/// The upper bound counts survivors: with `u` non-identity cosets left
/// unobstructed, the image modulo `A` is a subgroup of order at most the
/// smallest power of two `2^k >= 1 + u`, so `#Im(b) <= 4 * 2^k` and
/// `rank <= k`. The lower bound is the F2-rank of the witnessed cosets.
/// Pairs with `p = 1 mod 8` are refused: the certification theorems do not
/// cover them.
pub fn rank_bounds_with(
    pair_data: &PrimePair,
    search_bound: u64,
    torsion_ell_max: u64,
) -> Result<RankResult, DescentError> {
    if !pair_data.in_theorem_scope() {
        return Err(DescentError::OutOfTheoremScope {
            class: pair_data.residue_class(),
        });
    }
    let curve = curve_from_pair(pair_data);
    let torsion = certify_torsion(&curve, torsion_ell_max);
    if let TorsionOutcome::Inconclusive { count_gcd } = torsion.outcome {
        return Err(DescentError::TorsionNotCertified { count_gcd });
    }

    let mut outcomes = Vec::with_capacity(16);
    let mut survivors = 0u32;
    let mut witnessed = Vec::new();
    for cand in candidate_pairs(&curve) {
        let verdict = if cand.is_identity() {
            DescentVerdict::InTorsionImage
        } else if let Some(reason) = obstruct(&cand, pair_data)? {
            DescentVerdict::Obstructed(reason)
        } else {
            survivors += 1;
            match witness_search(&cand, pair_data, search_bound) {
                Some(wit) => {
                    // defensive recheck: the witness must land on the curve
                    reconstruct_point(&cand, &wit, &curve)?;
                    witnessed.push(cand);
                    DescentVerdict::Witnessed(wit)
                }
                None => DescentVerdict::Unresolved { search_bound },
            }
        };
        outcomes.push(DescentOutcome {
            pair: cand,
            verdict,
        });
    }

    let mut k = 0u32;
    while (1u64 << k) < (1 + survivors) as u64 {
        k += 1;
    }
    let image_size_bound = 4u64 << k;
    let upper = k;
    let lower = f2_rank(&witnessed);
    Ok(RankResult {
        lower,
        upper,
        certified: lower == upper,
        image_size_bound,
        outcomes,
        torsion,
    })
}

/// Rank over F2 of the exponent vectors of the witnessed cosets: the number
/// of independent generators they contribute to the image.
fn f2_rank(pairs: &[DescentPair]) -> u32 {
    let mut basis: Vec<u8> = Vec::new(); // one vector per leading bit
    'outer: for pair in pairs {
        let mut v = (pair.b1.ep as u8)
            | (pair.b1.eq as u8) << 1
            | (pair.b2.ep as u8) << 2
            | (pair.b2.eq as u8) << 3;
        loop {
            if v == 0 {
                continue 'outer;
            }
            let lead = v.leading_zeros();
            match basis.iter().find(|b| b.leading_zeros() == lead) {
                Some(&b) => v ^= b,
                None => {
                    basis.push(v);
                    continue 'outer;
                }
            }
        }
    }
    basis.len() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::pairs::make_pair_u64;

    fn setup(p: u64) -> (PrimePair, CurveParams) {
        let pair = make_pair_u64(p).unwrap();
        let curve = curve_from_pair(&pair);
        (pair, curve)
    }

    fn by_symbols(s1: Sym, s2: Sym) -> DescentPair {
        let cl = |s: Sym| match s {
            Sym::One => SquareClass::ONE,
            Sym::P => SquareClass::P,
            Sym::Q => SquareClass::Q,
            Sym::Pq => SquareClass::PQ,
        };
        DescentPair::new(cl(s1), cl(s2))
    }

    #[test]
    fn square_class_values_and_symbols() {
        let (pair, _) = setup(3);
        assert_eq!(SquareClass::ONE.value(&pair), BigInt::from(1));
        assert_eq!(SquareClass::Q.value(&pair), BigInt::from(5));
        assert_eq!(SquareClass::TWO_Q.value(&pair), BigInt::from(10));
        assert_eq!(
            SquareClass::new(true, true, true, true).value(&pair),
            BigInt::from(-30)
        );
        assert_eq!(SquareClass::PQ.symbol(), "pq");
        assert_eq!(SquareClass::MINUS_ONE.symbol(), "-1");
    }

    #[test]
    fn square_class_group_law() {
        let a = SquareClass::new(true, true, false, true);
        assert!(a.mul(&a).is_one(), "every element is its own inverse");
        assert_eq!(SquareClass::P.mul(&SquareClass::Q), SquareClass::PQ);
    }

    #[test]
    fn from_rational_extracts_classes() {
        let (pair, _) = setup(3);
        // 9/4 = (3/2)^2 -> class 1
        assert_eq!(
            SquareClass::from_rational(&ratio(9, 4), &pair),
            Some(SquareClass::ONE)
        );
        // 5/4 -> q
        assert_eq!(
            SquareClass::from_rational(&ratio(5, 4), &pair),
            Some(SquareClass::Q)
        );
        // 8 = 2^3 -> 2
        assert_eq!(
            SquareClass::from_rational(&ratio(8, 1), &pair),
            Some(SquareClass::new(false, true, false, false))
        );
        // -45 = -(3^2)5 -> -q
        assert_eq!(
            SquareClass::from_rational(&ratio(-45, 1), &pair),
            Some(SquareClass::new(true, false, false, true))
        );
        // 7 is outside the support
        assert_eq!(SquareClass::from_rational(&ratio(7, 1), &pair), None);
        assert_eq!(SquareClass::from_rational(&ratio(0, 1), &pair), None);
    }

    #[test]
    fn torsion_image_is_a_subgroup_of_order_four() {
        let (_, curve) = setup(5);
        let a = torsion_image(&curve);
        assert_eq!(a.len(), 4);
        for x in &a {
            for y in &a {
                assert!(a.contains(&x.mul(y)), "A must be closed under the group law");
            }
        }
        // the expected four values for p = 5, q = 13
        let (pair, _) = setup(5);
        let values: Vec<(BigInt, BigInt)> = a
            .iter()
            .map(|d| (d.b1.value(&pair), d.b2.value(&pair)))
            .collect();
        assert!(values.contains(&(BigInt::from(1), BigInt::from(1))));
        assert!(values.contains(&(BigInt::from(-1), BigInt::from(-1))));
        assert!(values.contains(&(BigInt::from(1), BigInt::from(26))));
        assert!(values.contains(&(BigInt::from(-1), BigInt::from(-26))));
    }

    #[test]
    fn candidates_are_the_sixteen_odd_positive_pairs() {
        let (_, curve) = setup(5);
        let cands = candidate_pairs(&curve);
        assert_eq!(cands.len(), 16);
        assert!(cands.contains(&by_symbols(Sym::One, Sym::Q)));
        for c in &cands {
            assert!(!c.b1.negative && !c.b2.negative);
            assert!(!c.b1.e2, "b1 is odd always");
            assert!(!c.b2.e2);
        }
        // each candidate is the canonical representative of its coset
        for c in &cands {
            for member in c.a_coset() {
                assert_eq!(member.canonical_rep(), Some(*c));
            }
        }
    }

    #[test]
    fn coset_of_one_q_contains_one_two() {
        // the p = 3 point (9, 36) maps to (1, 2), which must reduce to (1, q)
        let two = SquareClass::new(false, true, false, false);
        let pair = DescentPair::new(SquareClass::ONE, two);
        assert_eq!(pair.canonical_rep(), Some(by_symbols(Sym::One, Sym::Q)));
        // mixed signs cannot be canonicalized
        let bad = DescentPair::new(SquareClass::MINUS_ONE, SquareClass::ONE);
        assert_eq!(bad.canonical_rep(), None);
    }

    #[test]
    fn descent_map_values() {
        let (_, curve) = setup(3);
        let m = |x: i64, y: i64| {
            descent_map(&RationalPoint::affine(ratio(x, 1), ratio(y, 1)), &curve).unwrap()
        };
        assert_eq!(
            descent_map(&RationalPoint::Infinity, &curve).unwrap(),
            DescentPair::new(SquareClass::ONE, SquareClass::ONE)
        );
        assert_eq!(
            m(0, 0),
            DescentPair::new(SquareClass::MINUS_ONE, SquareClass::MINUS_ONE)
        );
        assert_eq!(
            m(1, 0),
            DescentPair::new(SquareClass::ONE, SquareClass::TWO_Q)
        );
        // (-9, 0) -> (-1, -2q) via the generic branch
        assert_eq!(
            m(-9, 0),
            DescentPair::new(
                SquareClass::MINUS_ONE,
                SquareClass::new(true, true, false, true)
            )
        );
        // (9, 36) -> (1, 2), the (1, q) coset
        let img = m(9, 36);
        assert_eq!(
            img,
            DescentPair::new(SquareClass::ONE, SquareClass::new(false, true, false, false))
        );
        assert_eq!(img.canonical_rep(), Some(by_symbols(Sym::One, Sym::Q)));
        // off-curve points are rejected
        assert_eq!(
            descent_map(&RationalPoint::affine(ratio(2, 1), ratio(3, 1)), &curve),
            Err(DescentError::PointNotOnCurve)
        );
    }

    #[test]
    fn obstruction_examples() {
        let (p5, _) = setup(5);
        // (p, q) for p = 5 mod 8: (2/p) = -1
        let reason = obstruct(&by_symbols(Sym::P, Sym::Q), &p5).unwrap().unwrap();
        assert_eq!(
            reason,
            ObstructionReason::NonResidue {
                modulus: BigUint::from(5u32),
                conditions: vec![("(2/p)".to_string(), -1)],
            }
        );
        // (1, q) for p = 5 mod 8 (Lemma-4 shape)
        let reason = obstruct(&by_symbols(Sym::One, Sym::Q), &p5).unwrap().unwrap();
        assert!(matches!(reason, ObstructionReason::NonResidue { .. }));

        // (1, q) for p = 3: no obstruction fires (the rank is 1)
        let (p3, _) = setup(3);
        assert_eq!(obstruct(&by_symbols(Sym::One, Sym::Q), &p3).unwrap(), None);

        // identity is never obstructed
        assert_eq!(obstruct(&by_symbols(Sym::One, Sym::One), &p3).unwrap(), None);

        // non-candidates are rejected
        let two = SquareClass::new(false, true, false, false);
        assert_eq!(
            obstruct(&DescentPair::new(two, SquareClass::P), &p3),
            Err(DescentError::NotACandidatePair("(2, p)".to_string()))
        );
    }

    #[test]
    fn all_fifteen_obstructed_for_class_five() {
        for p in [5u64, 29, 61, 101] {
            let (pair, curve) = setup(p);
            for cand in candidate_pairs(&curve) {
                if cand.is_identity() {
                    continue;
                }
                assert!(
                    obstruct(&cand, &pair).unwrap().is_some(),
                    "p = {p}, pair {cand} must be obstructed"
                );
            }
        }
    }

    #[test]
    fn only_one_q_survives_for_class_three_and_seven() {
        for p in [3u64, 11, 19, 59, 71, 79] {
            let (pair, curve) = setup(p);
            for cand in candidate_pairs(&curve) {
                if cand.is_identity() {
                    continue;
                }
                let obstructed = obstruct(&cand, &pair).unwrap().is_some();
                if cand == by_symbols(Sym::One, Sym::Q) {
                    assert!(!obstructed, "p = {p}: (1, q) must survive");
                } else {
                    assert!(obstructed, "p = {p}: {cand} must be obstructed");
                }
            }
        }
    }

    #[test]
    fn witness_search_examples() {
        let (p3, _) = setup(3);
        let w = witness_search(&by_symbols(Sym::One, Sym::Q), &p3, 10).unwrap();
        assert_eq!(w, Witness::from_u64(3, 1, 3, 2));

        // the obstructed (p, q) at p = 5 has no witness
        let (p5, _) = setup(5);
        assert_eq!(witness_search(&by_symbols(Sym::P, Sym::Q), &p5, 200), None);

        let (p11, _) = setup(11);
        let w = witness_search(&by_symbols(Sym::One, Sym::Q), &p11, 1000).unwrap();
        assert_eq!(w, Witness::from_u64(55, 7, 11, 6));
    }

    #[test]
    fn i128_and_bigint_searches_agree() {
        let (p3, _) = setup(3);
        let (p11, _) = setup(11);
        for (pair_data, cand, bound) in [
            (&p3, by_symbols(Sym::One, Sym::Q), 15u64),
            (&p3, by_symbols(Sym::One, Sym::P), 15),
            (&p11, by_symbols(Sym::One, Sym::Q), 60),
        ] {
            let b1 = cand.b1.value(pair_data);
            let b2 = cand.b2.value(pair_data);
            let psq = BigInt::from(pair_data.p() * pair_data.p());
            let fast = witness_search_i128(
                b1.to_i128().unwrap(),
                b2.to_i128().unwrap(),
                psq.to_i128().unwrap(),
                bound,
            );
            let slow = witness_search_big(&b1, &b2, &psq, bound);
            assert_eq!(fast, slow, "{cand} bound {bound}");
        }
    }

    #[test]
    fn reconstruction() {
        let (p3, curve) = setup(3);
        let _ = p3;
        let pt = reconstruct_point(
            &by_symbols(Sym::One, Sym::Q),
            &Witness::from_u64(3, 1, 3, 2),
            &curve,
        )
        .unwrap();
        assert_eq!(pt, RationalPoint::affine(ratio(9, 4), ratio(45, 8)));
        assert!(is_on_curve(&pt, &curve));
        assert!(!crate::curve::two_torsion(&curve).contains(&pt));

        // defensive rejection: (1, 1, 1, 1) fails E1 for (1, q)
        assert_eq!(
            reconstruct_point(
                &by_symbols(Sym::One, Sym::Q),
                &Witness::from_u64(1, 1, 1, 1),
                &curve,
            ),
            Err(DescentError::InvalidWitness)
        );
    }

    #[test]
    fn rank_bounds_examples() {
        let (p5, _) = setup(5);
        let r = rank_bounds(&p5, 100).unwrap();
        assert_eq!((r.lower, r.upper, r.certified), (0, 0, true));
        assert_eq!(r.image_size_bound, 4);
        assert_eq!(r.outcomes.len(), 16);

        let (p29, _) = setup(29);
        let r = rank_bounds(&p29, 100).unwrap();
        assert_eq!((r.lower, r.upper, r.certified), (0, 0, true));

        let (p3, _) = setup(3);
        let r = rank_bounds(&p3, 10).unwrap();
        assert_eq!((r.lower, r.upper, r.certified), (1, 1, true));
        assert_eq!(r.image_size_bound, 8);
        let witnessed: Vec<_> = r
            .outcomes
            .iter()
            .filter_map(|o| match &o.verdict {
                DescentVerdict::Witnessed(w) => Some((o.pair, w.clone())),
                _ => None,
            })
            .collect();
        assert_eq!(
            witnessed,
            vec![(by_symbols(Sym::One, Sym::Q), Witness::from_u64(3, 1, 3, 2))]
        );

        // tiny search bound leaves (1, q) unresolved: upper still 1
        let r = rank_bounds(&p3, 2).unwrap();
        assert_eq!((r.lower, r.upper, r.certified), (0, 1, false));
        assert!(r
            .outcomes
            .iter()
            .any(|o| matches!(o.verdict, DescentVerdict::Unresolved { search_bound: 2 })));
    }

    #[test]
    fn class_one_is_refused() {
        let pair = make_pair_u64(409).unwrap();
        assert_eq!(
            rank_bounds(&pair, 10),
            Err(DescentError::OutOfTheoremScope { class: 1 })
        );
    }

    #[test]
    fn f2_rank_counts_independent_cosets() {
        assert_eq!(f2_rank(&[]), 0);
        let one_q = by_symbols(Sym::One, Sym::Q);
        assert_eq!(f2_rank(&[one_q]), 1);
        assert_eq!(f2_rank(&[one_q, one_q]), 1);
        let p_one = by_symbols(Sym::P, Sym::One);
        let p_q = by_symbols(Sym::P, Sym::Q);
        assert_eq!(f2_rank(&[one_q, p_one]), 2);
        // (p, q) = (p, 1) * (1, q): dependent
        assert_eq!(f2_rank(&[one_q, p_one, p_q]), 2);
    }
}
