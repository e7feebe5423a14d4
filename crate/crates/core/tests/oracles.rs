//! Cross-checks of the optimized implementations against independent
//! brute-force oracles. The oracles deliberately share no code with the
//! paths they check.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use heron_descent::arith::{int_sqrt_exact, legendre};
use heron_descent::curve::{count_points_mod, curve_from_pair, is_on_curve, RationalPoint};
use heron_descent::descent::{
    candidate_pairs, descent_map, obstruct, witness_search, DescentPair, SquareClass, Witness,
};
use heron_descent::pairs::{make_pair_u64, scan_pairs, PrimePair};
use heron_descent::Rational;

/// Exhaustive quadruple-loop search: smallest solution by max-coordinate,
/// ties broken lexicographically by (s, r1, r2, r3). O(bound^4), so only
/// usable at tiny bounds; that is the point.
fn witness_oracle(pair: &DescentPair, data: &PrimePair, bound: u64) -> Option<Witness> {
    let b1 = pair.b1.value(data).to_i128().unwrap();
    let b2 = pair.b2.value(data).to_i128().unwrap();
    let psq = (data.p() * data.p()).to_i128().unwrap();
    let mut best: Option<(u64, u64, u64, u64, u64)> = None;
    for s in 1..=bound {
        for r1 in 1..=bound {
            for r2 in 1..=bound {
                for r3 in 1..=bound {
                    if r1.gcd(&s) != 1 || r2.gcd(&s) != 1 || r3.gcd(&s) != 1 {
                        continue;
                    }
                    let (r1i, r2i, r3i, si) =
                        (r1 as i128, r2 as i128, r3 as i128, s as i128);
                    if b1 * r1i * r1i - b2 * r2i * r2i != si * si {
                        continue;
                    }
                    if b1 * r1i * r1i - b1 * b2 * r3i * r3i != -psq * si * si {
                        continue;
                    }
                    let cand = (r1.max(r2).max(r3).max(s), s, r1, r2, r3);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best.map(|(_, s, r1, r2, r3)| Witness {
        r1: BigUint::from(r1),
        r2: BigUint::from(r2),
        r3: BigUint::from(r3),
        s: BigUint::from(s),
    })
}

#[test]
fn witness_search_matches_quadruple_loop_oracle() {
    let p3 = make_pair_u64(3).unwrap();
    let p5 = make_pair_u64(5).unwrap();
    let curve3 = curve_from_pair(&p3);
    for cand in candidate_pairs(&curve3) {
        assert_eq!(
            witness_search(&cand, &p3, 12),
            witness_oracle(&cand, &p3, 12),
            "p = 3, pair {cand}"
        );
    }
    let curve5 = curve_from_pair(&p5);
    for cand in candidate_pairs(&curve5) {
        assert_eq!(
            witness_search(&cand, &p5, 9),
            witness_oracle(&cand, &p5, 9),
            "p = 5, pair {cand}"
        );
    }
}

#[test]
fn legendre_matches_residue_enumeration_below_200() {
    for p in heron_descent::pairs::sieve_primes(200) {
        if p < 3 {
            continue;
        }
        let squares: std::collections::HashSet<u64> = (0..p).map(|x| x * x % p).collect();
        for a in 0..p {
            let expected = if a == 0 {
                0
            } else if squares.contains(&a) {
                1
            } else {
                -1
            };
            assert_eq!(
                legendre(&BigInt::from(a), &BigUint::from(p)).unwrap(),
                expected,
                "({a}/{p})"
            );
        }
    }
}

/// Point counting by full (x, y) enumeration.
fn count_oracle(p: u64, ell: u64) -> u64 {
    let psq = (p % ell) * (p % ell) % ell;
    let mut n = 1;
    for x in 0..ell {
        let f = x * ((x + ell - 1) % ell) % ell * ((x + psq) % ell) % ell;
        n += (0..ell).filter(|&y| y * y % ell == f).count() as u64;
    }
    n
}

#[test]
fn point_counts_match_xy_enumeration() {
    for pair in scan_pairs(100) {
        let curve = curve_from_pair(&pair);
        let p = pair.p().to_u64().unwrap();
        for ell in heron_descent::pairs::sieve_primes(60) {
            if let Ok(n) = count_points_mod(&curve, ell) {
                assert_eq!(n, count_oracle(p, ell), "p = {p}, ell = {ell}");
            }
        }
    }
}

#[test]
fn brute_force_points_land_in_unobstructed_cosets() {
    // integral points with 2 <= x <= 100 on y^2 = x(x-1)(x+9), found by
    // direct search, must map into the one unobstructed coset (1, q)
    let p3 = make_pair_u64(3).unwrap();
    let curve = curve_from_pair(&p3);
    let one_q = DescentPair::new(SquareClass::ONE, SquareClass::Q);
    let mut found = Vec::new();
    for x in 2i64..=100 {
        let rhs = x * (x - 1) * (x + 9);
        if let Some(y) = int_sqrt_exact(&BigUint::from(rhs as u64)) {
            let pt = RationalPoint::affine(
                Rational::from_integer(BigInt::from(x)),
                Rational::from_integer(BigInt::from(y)),
            );
            assert!(is_on_curve(&pt, &curve));
            let image = descent_map(&pt, &curve).unwrap();
            let rep = image.canonical_rep().expect("curve points satisfy the constraints");
            assert!(
                rep == one_q || rep.is_identity(),
                "x = {x} maps to {rep}, outside the surviving cosets"
            );
            found.push((x, image));
        }
    }
    // the known point (9, 36) maps to (1, 2), inside the (1, q) coset
    let img9 = found.iter().find(|(x, _)| *x == 9).map(|(_, i)| *i).unwrap();
    assert_eq!(
        img9,
        DescentPair::new(SquareClass::ONE, SquareClass::new(false, true, false, false))
    );
    assert!(
        !obstruct(&one_q, &p3).unwrap().is_some(),
        "the coset the points land in is exactly the unobstructed one"
    );
}
