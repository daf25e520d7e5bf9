//! Points of the projective line over Z/NZ.
//!
//! A point [c:d] is the orbit of a pair with gcd(c, d, N) = 1 under scaling by
//! units of Z/NZ. The canonical representative is the lexicographically
//! smallest pair (k·c mod N, k·d mod N) over all units k. It is computed in
//! closed form rather than by tabulating the whole orbit structure.

use crate::arith::{gcd, inv_mod};

/// Canonical representative of the class of (c, d) in P¹(Z/nZ).
///
/// Inputs are arbitrary residues; they are reduced first. Panics if
/// gcd(c, d, n) ≠ 1, which never happens for rows of unimodular matrices.
pub fn canonical_class(c: u64, d: u64, n: u64) -> (u64, u64) {
    assert!(n >= 1);
    if n == 1 {
        return (0, 0);
    }
    let (c, d) = (c % n, d % n);
    assert_eq!(gcd(gcd(c, d), n), 1, "({c}, {d}) is not a point of P1(Z/{n})");
    let g = gcd(c, n);
    if g == n {
        // c = 0: units act transitively on residues with the same gcd.
        return (0, gcd(d, n));
    }
    // Units k with k·c ≡ g are exactly k ≡ k0 mod n/g.
    let step = n / g;
    let k0 = inv_mod((c / g) % step, step).expect("c/g is a unit mod n/g");
    let mut best = u64::MAX;
    for t in 0..g {
        let k = (k0 + t * step) % n;
        if gcd(k, n) != 1 {
            continue;
        }
        let v = ((k as u128 * d as u128) % n as u128) as u64;
        best = best.min(v);
    }
    debug_assert!(best != u64::MAX);
    (g, best)
}

/// Number of points of P¹(Z/nZ), by direct enumeration of canonical pairs.
pub fn enumerate_points(n: u64) -> Vec<(u64, u64)> {
    let mut pts: Vec<(u64, u64)> = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if gcd(gcd(c, d), n) == 1 && canonical_class(c, d, n) == (c, d) {
                pts.push((c, d));
            }
        }
    }
    if n == 1 {
        pts.push((0, 0));
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(c: u64, d: u64, n: u64) -> (u64, u64) {
        (1..n.max(2)).filter(|&k| gcd(k, n) == 1).map(|k| (k * c % n, k * d % n)).min().unwrap()
    }

    #[test]
    fn closed_form_matches_orbit_minimum() {
        for n in 2..=40 {
            for c in 0..n {
                for d in 0..n {
                    if gcd(gcd(c, d), n) == 1 {
                        assert_eq!(canonical_class(c, d, n), brute(c, d, n), "({c},{d}) mod {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn point_count_is_index() {
        for n in 1..=40 {
            let pts: BTreeSet<_> = enumerate_points(n).into_iter().collect();
            assert_eq!(pts.len() as u64, crate::arith::gamma0_index(n), "n={n}");
        }
    }
}
