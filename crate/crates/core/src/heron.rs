//! The Diophantine side: for an odd prime `p`, solutions of
//!
//! ```text
//!     (x^2 + y^2)^2 + (2 p x y)^2 = z^2,      gcd(x, y) = 1,
//! ```
//!
//! correspond one-to-one with Heron triangles of area `p` whose designated
//! angle `theta` satisfies `tan(theta/2) = 1/p`. The solution-to-triangle
//! direction is the explicit evaluation
//!
//! ```text
//!     a = (x/y - y/x + z/(xy)) / 2,   b = a - (x/y - y/x),   c = x/y + y/x,
//! ```
//!
//! and the inverse writes `c = w1/w2` in lowest terms, splits the primitive
//! Pythagorean triple `w1^2 = u1^2 + (2 w2)^2` back into generators `(m, n)`
//! and reads off `(x, y, z) = (m, n, 2mna - (m^2 - n^2))`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{int_sqrt_exact, is_prime, pythagorean_split, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeronError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(BigUint),
    #[error("sides must be strictly positive")]
    NonPositiveSides,
    #[error("solution must satisfy x > y >= 1")]
    UnorderedSolution,
    #[error("x and y must be coprime")]
    NotCoprime,
    #[error("(x^2 + y^2)^2 + (2pxy)^2 = z^2 fails for these values")]
    QuarticIdentityViolated,
    #[error("triangle fails verification: {failed}")]
    NonConformingTriangle { failed: String },
    #[error("hypotenuse {num}/{den} admits no coprime split m^2 + n^2 = num, mn = den")]
    NoPythagoreanSplit { num: BigUint, den: BigUint },
    #[error("recovered z = {0} is not a positive integer")]
    NonIntegralZ(Rational),
    #[error("search range for p exceeds the machine-size limit")]
    RangeTooLarge,
}

/// A positive solution of the quartic equation for a fixed odd prime `p`,
/// normalized to `x > y >= 1` (the equation is symmetric in `x` and `y`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophSolution {
    x: BigUint,
    y: BigUint,
    z: BigUint,
    p: BigUint,
}

impl DiophSolution {
    /// Validates the ordering, coprimality and the quartic identity.
    pub fn new(x: BigUint, y: BigUint, z: BigUint, p: BigUint) -> Result<Self, HeronError> {
        if !is_prime(&p) || (&p % 2u32).is_zero() {
            return Err(HeronError::NotOddPrime(p));
        }
        if y.is_zero() || x <= y {
            return Err(HeronError::UnorderedSolution);
        }
        if !x.gcd(&y).is_one() {
            return Err(HeronError::NotCoprime);
        }
        let lhs = {
            let sum_sq = &x * &x + &y * &y;
            let cross = (&p * &x * &y) << 1;
            &sum_sq * &sum_sq + &cross * &cross
        };
        if lhs != &z * &z {
            return Err(HeronError::QuarticIdentityViolated);
        }
        Ok(DiophSolution { x, y, z, p })
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn z(&self) -> &BigUint {
        &self.z
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }
}

impl std::fmt::Display for DiophSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(x, y, z) = ({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Rational-sided triangle with designated area prime `p`; `theta` is the
/// angle between sides `a` and `b`. Construction validates positivity and
/// that `p` is an odd prime; the Heron conditions themselves are checked by
/// [`verify_heron`] (so non-conforming triangles can be represented and
/// reported on).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeronTriangle {
    a: Rational,
    b: Rational,
    c: Rational,
    p: BigUint,
}

impl HeronTriangle {
    pub fn new(a: Rational, b: Rational, c: Rational, p: BigUint) -> Result<Self, HeronError> {
        if !is_prime(&p) || (&p % 2u32).is_zero() {
            return Err(HeronError::NotOddPrime(p));
        }
        if !a.is_positive() || !b.is_positive() || !c.is_positive() {
            return Err(HeronError::NonPositiveSides);
        }
        Ok(HeronTriangle { a, b, c, p })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn is_isosceles(&self) -> bool {
        self.a == self.b || self.b == self.c || self.a == self.c
    }
}

impl std::fmt::Display for HeronTriangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(a, b, c) = ({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All solutions of the quartic equation with `1 <= y < x <= bound` and
/// `gcd(x, y) = 1`, ordered by ascending `(x, y)`. `z` is pinned down by
/// exact square detection.
pub fn solve_quartic(p: &BigUint, bound: u64) -> Result<Vec<DiophSolution>, HeronError> {
    if !is_prime(p) || (p % 2u32).is_zero() {
        return Err(HeronError::NotOddPrime(p.clone()));
    }
    let mut out = Vec::new();
    let p_wide = p.to_u64().map(|v| v as u128);
    for x in 2..=bound {
        for y in 1..x {
            if x.gcd(&y) != 1 {
                continue;
            }
            // (x^2 + y^2)^2 + (2pxy)^2, in u128 while it fits
            let z = match p_wide.and_then(|pw| quartic_rhs_u128(pw, x, y)) {
                Some(t) => int_sqrt_exact(&BigUint::from(t)).map(BigUint::from),
                None => {
                    let xb = BigUint::from(x);
                    let yb = BigUint::from(y);
                    let sum_sq = &xb * &xb + &yb * &yb;
                    let cross = (p * &xb * &yb) << 1;
                    int_sqrt_exact(&(&sum_sq * &sum_sq + &cross * &cross))
                }
            };
            if let Some(z) = z {
                out.push(
                    DiophSolution::new(BigUint::from(x), BigUint::from(y), z, p.clone())
                        .expect("constructed solution satisfies the identity"),
                );
            }
        }
    }
    Ok(out)
}

fn quartic_rhs_u128(p: u128, x: u64, y: u64) -> Option<u128> {
    let x = x as u128;
    let y = y as u128;
    let sum_sq = x.checked_mul(x)?.checked_add(y.checked_mul(y)?)?;
    let cross = p.checked_mul(2)?.checked_mul(x)?.checked_mul(y)?;
    sum_sq
        .checked_mul(sum_sq)?
        .checked_add(cross.checked_mul(cross)?)
}

/// A solution of `x^2 + y^2 + x^2 y^2 = p^2` together with the quartic
/// solution it induces by the Pythagorean construction `r = p`, `s = xy`
/// (which forces `z = p^2 + (xy)^2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollarySolution {
    pub x: BigUint,
    pub y: BigUint,
    pub induced: DiophSolution,
}

/// Searches `x >= y >= 1` for a solution of `x^2 + y^2 + x^2 y^2 = p^2`.
/// The equation forces `x, y < p`, so the search is complete without any
/// user-supplied bound. Returns the first solution in ascending `(x, y)`
/// order, if any.
pub fn solve_corollary(p: &BigUint) -> Result<Option<CorollarySolution>, HeronError> {
    if !is_prime(p) || (p % 2u32).is_zero() {
        return Err(HeronError::NotOddPrime(p.clone()));
    }
    let p64 = p.to_u64().ok_or(HeronError::RangeTooLarge)?;
    let target = (p64 as u128) * (p64 as u128);
    for x in 1..p64 {
        let x = x as u128;
        for y in 1..=x {
            if x * x + y * y + x * x * y * y == target {
                let z = BigUint::from(target + x * x * y * y);
                let induced = DiophSolution::new(
                    BigUint::from(x),
                    BigUint::from(y),
                    z,
                    p.clone(),
                )?;
                return Ok(Some(CorollarySolution {
                    x: BigUint::from(x),
                    y: BigUint::from(y),
                    induced,
                }));
            }
        }
    }
    Ok(None)
}

/// Builds the triangle attached to a quartic solution:
/// `a = (x/y - y/x + z/(xy))/2`, `b = a - (x/y - y/x)`, `c = x/y + y/x`.
/// The output always passes [`verify_heron`].
pub fn triangle_from_solution(sol: &DiophSolution) -> Result<HeronTriangle, HeronError> {
    let x = BigInt::from(sol.x.clone());
    let y = BigInt::from(sol.y.clone());
    let z = BigInt::from(sol.z.clone());
    let xy = &x * &y;
    // x/y - y/x = (x^2 - y^2) / xy
    let diff = Rational::new(&x * &x - &y * &y, xy.clone());
    let a = (&diff + Rational::new(z, xy.clone())) / Rational::from_integer(BigInt::from(2));
    let b = &a - &diff;
    let c = Rational::new(&x * &x + &y * &y, xy);
    HeronTriangle::new(a, b, c, sol.p.clone())
}

/// Recovers the quartic solution from a verified triangle. The designated
/// sides are normalized to `a >= b` first (the correspondence fixes that
/// orientation); then `c = w1/w2` in lowest terms is split into Pythagorean
/// generators `(m, n)` and `z = 2mna - (m^2 - n^2)`.
pub fn solution_from_triangle(tri: &HeronTriangle) -> Result<DiophSolution, HeronError> {
    let report = verify_heron(tri);
    if !report.all_pass() {
        let failed = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect::<Vec<_>>()
            .join(", ");
        return Err(HeronError::NonConformingTriangle { failed });
    }
    let a = if tri.a >= tri.b { &tri.a } else { &tri.b };
    let w1 = tri.c.numer().magnitude().clone();
    let w2 = tri.c.denom().magnitude().clone();
    let (m, n) = pythagorean_split(&w1, &w2).ok_or(HeronError::NoPythagoreanSplit {
        num: w1,
        den: w2,
    })?;
    let m_int = BigInt::from(m.clone());
    let n_int = BigInt::from(n.clone());
    // z = 2mna - (m^2 - n^2)
    let z_rat = Rational::from_integer((&m_int * &n_int) << 1) * a
        - Rational::from_integer(&m_int * &m_int - &n_int * &n_int);
    if !z_rat.is_integer() || !z_rat.is_positive() {
        return Err(HeronError::NonIntegralZ(z_rat));
    }
    let z = z_rat.to_integer().magnitude().clone();
    DiophSolution::new(m, n, z, tri.p.clone())
}

/// One entry of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeronCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of the exact verification of a triangle against the Heron
/// conditions for its designated prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<HeronCheck>,
    /// Two equal sides: the associated curve presentation would carry
    /// `Z/2 x Z/4` torsion in the general family classification. Recorded
    /// for information only.
    pub isosceles: bool,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks, in exact rational arithmetic: the strict triangle inequality,
/// `ab = 1 + p^2`, `(a + b)^2 = c^2 + 4p^2`, the law-of-cosines value
/// `cos theta = (p^2 - 1)/(p^2 + 1)`, the Pythagorean identity for
/// `sin theta = 2p/(ab)`, `area = p`, and `tan(theta/2) = 1/p` (evaluated
/// cross-multiplied as `4p^2 = (a+b)^2 - c^2`).
pub fn verify_heron(tri: &HeronTriangle) -> VerificationReport {
    let (a, b, c) = (&tri.a, &tri.b, &tri.c);
    let p = Rational::from_integer(BigInt::from(tri.p.clone()));
    let one = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    let four = Rational::from_integer(BigInt::from(4));
    let psq = &p * &p;

    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(HeronCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    let ineq = a + b > *c && a + c > *b && b + c > *a;
    push(
        "triangle inequality",
        ineq,
        format!("sides {}, {}, {}", a, b, c),
    );

    let ab = a * b;
    let ab_ok = ab == &one + &psq;
    push("ab = 1 + p^2", ab_ok, format!("ab = {}, 1 + p^2 = {}", ab, &one + &psq));

    let apb_sq = (a + b) * (a + b);
    let rhs = c * c + &four * &psq;
    push(
        "(a + b)^2 = c^2 + 4p^2",
        apb_sq == rhs,
        format!("(a + b)^2 = {}, c^2 + 4p^2 = {}", apb_sq, rhs),
    );

    // law of cosines against the closed form (p^2 - 1)/(p^2 + 1)
    let cos_lhs = (a * a + b * b - c * c) / (&two * &ab);
    let cos_rhs = (&psq - &one) / (&psq + &one);
    push(
        "cos theta = (p^2 - 1)/(p^2 + 1)",
        cos_lhs == cos_rhs,
        format!("(a^2 + b^2 - c^2)/(2ab) = {}, expected {}", cos_lhs, cos_rhs),
    );

    let sin = &two * &p / &ab;
    let pyth = &sin * &sin + &cos_lhs * &cos_lhs == one;
    push(
        "sin^2 + cos^2 = 1 with sin theta = 2p/(ab)",
        pyth,
        format!("sin theta = {}", sin),
    );

    let area = &ab * &sin / &two;
    push("area = p", area == p, format!("area = {}", area));

    // tan(theta/2) = 4p / ((a+b)^2 - c^2) = 1/p, cross-multiplied
    let denom = &apb_sq - c * c;
    let tan_ok = &four * &psq == denom;
    push(
        "tan(theta/2) = 1/p",
        tan_ok,
        format!("(a + b)^2 - c^2 = {}, 4p^2 = {}", denom, &four * &psq),
    );

    VerificationReport {
        checks,
        isosceles: tri.is_isosceles(),
    }
}
