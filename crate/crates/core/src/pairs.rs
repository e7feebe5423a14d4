//! Prime pairs `(p, q)` with `p^2 + 1 = 2q`: the hypothesis of the rank
//! certification pipeline. Geometrically these are the right triangles with
//! prime leg `p` and prime hypotenuse `q`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::arith::is_prime;

/// A prime `p` such that `q = (p^2 + 1)/2` is also prime, together with the
/// residue class `p mod 8`.
///
/// The descent certifier only accepts classes 3, 5 and 7; pairs with
/// `p = 1 mod 8` are still emitted by the scanner but flagged out of scope
/// (see [`PrimePair::in_theorem_scope`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePair {
    p: BigUint,
    q: BigUint,
    residue_class: u8,
}

impl PrimePair {
    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// `p mod 8`, one of 1, 3, 5, 7.
    pub fn residue_class(&self) -> u8 {
        self.residue_class
    }

    /// Whether the rank theorems cover this pair (`p != 1 mod 8`).
    pub fn in_theorem_scope(&self) -> bool {
        self.residue_class != 1
    }
}

/// Builds the pair for `p`, or `None` when the hypothesis fails (either `p`
/// is not an odd prime or `(p^2 + 1)/2` is composite).
pub fn make_pair(p: &BigUint) -> Option<PrimePair> {
    if *p < BigUint::from(3u32) || !is_prime(p) {
        return None;
    }
    let q = (p * p + BigUint::one()) >> 1;
    if !is_prime(&q) {
        return None;
    }
    let residue_class = (p % BigUint::from(8u32)).to_u8().expect("p mod 8 < 8");
    Some(PrimePair {
        p: p.clone(),
        q,
        residue_class,
    })
}

/// `make_pair` for machine-sized `p`.
pub fn make_pair_u64(p: u64) -> Option<PrimePair> {
    make_pair(&BigUint::from(p))
}

/// All prime pairs with `p <= limit`, ascending in `p`.
///
/// Primes `p` come from a segmented sieve; each candidate `q ~ p^2 / 2`
/// immediately outgrows any sieve over the range, so `q` gets an individual
/// deterministic primality test.
pub fn scan_pairs(limit: u64) -> Vec<PrimePair> {
    let mut out = Vec::new();
    for p in sieve_primes(limit) {
        if p < 3 {
            continue;
        }
        let q = (p as u128 * p as u128 + 1) / 2;
        let q_prime = match u64::try_from(q) {
            Ok(q64) => crate::arith::is_prime_u64(q64),
            Err(_) => is_prime(&BigUint::from(q)),
        };
        if q_prime {
            out.push(PrimePair {
                p: BigUint::from(p),
                q: BigUint::from(q),
                residue_class: (p % 8) as u8,
            });
        }
    }
    out
}

/// Primes up to `limit` by a segmented sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    // base sieve up to sqrt(limit)
    let mut base = vec![true; (root + 1) as usize];
    base[0] = false;
    if root >= 1 {
        base[1] = false;
    }
    let mut base_primes = Vec::new();
    for i in 2..=root {
        if base[i as usize] {
            base_primes.push(i);
            let mut j = i * i;
            while j <= root {
                base[j as usize] = false;
                j += i;
            }
        }
    }
    let mut primes: Vec<u64> = base_primes.iter().copied().filter(|&p| p <= limit).collect();

    const SEGMENT: u64 = 1 << 16;
    let mut low = root + 1;
    let mut mark = vec![true; SEGMENT as usize];
    while low <= limit {
        let high = (low + SEGMENT - 1).min(limit);
        let len = (high - low + 1) as usize;
        mark[..len].fill(true);
        for &p in &base_primes {
            if p * p > high {
                break;
            }
            let mut start = low.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= high {
                mark[(j - low) as usize] = false;
                j += p;
            }
        }
        for (offset, &is_p) in mark[..len].iter().enumerate() {
            if is_p {
                primes.push(low + offset as u64);
            }
        }
        low = high + 1;
    }
    primes
}
