//! Exact 2×2 integer matrices, congruence subgroup membership, the Hermite
//! decomposition g = γ·A and canonical left-coset keys.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ext_gcd, mod_u64};
use crate::error::{domain, Error, Result};
use crate::p1::canonical_class;

/// A 2×2 integer matrix (a b; c d). Ordered lexicographically on (a, b, c, d).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Mat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// T = (1 1; 0 1).
    pub fn t() -> Self {
        Mat2::new(1, 1, 0, 1)
    }

    /// T′ = (1 0; 1 1).
    pub fn t_prime() -> Self {
        Mat2::new(1, 0, 1, 1)
    }

    /// S = (0 −1; 1 0).
    pub fn s() -> Self {
        Mat2::new(0, -1, 1, 0)
    }

    /// M = (0 1; 1 0).
    pub fn m() -> Self {
        Mat2::new(0, 1, 1, 0)
    }

    /// B_m = (m 0; 0 1).
    pub fn b_m(m: u64) -> Self {
        Mat2::new(m, 0, 0, 1)
    }

    /// k·I.
    pub fn scalar(k: u64) -> Self {
        Mat2::new(k, 0, 0, k)
    }

    /// Tᵏ for any integer k.
    pub fn t_pow(k: impl Into<BigInt>) -> Self {
        Mat2::new(1, k.into(), 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn adj(&self) -> Mat2 {
        Mat2 { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Mat2 {
        Mat2 { a: &self.a * k, b: &self.b * k, c: &self.c * k, d: &self.d * k }
    }

    /// Exact inverse as the pair (adj(x), det(x)), so that x⁻¹ = adj / det.
    pub fn inverse(&self) -> Result<(Mat2, BigInt)> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular(self.to_string()));
        }
        Ok((self.adj(), det))
    }

    /// Inverse of a determinant ±1 matrix.
    pub fn unimodular_inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_one() {
            Ok(self.adj())
        } else if (-&det).is_one() {
            Ok(self.adj().scale(&BigInt::from(-1)))
        } else {
            Err(domain!("{self} is not unimodular (det {det})"))
        }
    }

    /// Divides every entry by `k`, failing if any entry is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Result<Mat2> {
        let parts = [&self.a, &self.b, &self.c, &self.d];
        for (name, x) in ["a", "b", "c", "d"].iter().zip(parts) {
            if !x.is_multiple_of(k) {
                return Err(domain!("entry {name} = {x} of {self} is not divisible by {k}"));
            }
        }
        Ok(Mat2 { a: &self.a / k, b: &self.b / k, c: &self.c / k, d: &self.d / k })
    }

    /// Integer power for n ≥ 0.
    pub fn pow(&self, n: u32) -> Mat2 {
        (0..n).fold(Mat2::identity(), |acc, _| &acc * self)
    }

    pub fn entry_sum(&self) -> BigInt {
        &self.a + &self.b + &self.c + &self.d
    }

    pub fn is_nonnegative(&self) -> bool {
        !(self.a.is_negative() || self.b.is_negative() || self.c.is_negative() || self.d.is_negative())
    }

    /// gcd of all four entries.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c).gcd(&self.d)
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as i64 when all of them fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([
            i64::try_from(&self.a).ok()?,
            i64::try_from(&self.b).ok()?,
            i64::try_from(&self.c).ok()?,
            i64::try_from(&self.d).ok()?,
        ])
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The groups whose membership can be tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Sl2z,
    /// Γ₀(n): c ≡ 0 mod n.
    Gamma0 {
        n: u64,
    },
    /// Γ₀(n, m): c ≡ 0 mod n and b ≡ 0 mod m.
    Gamma0nm {
        n: u64,
        m: u64,
    },
    /// Integer matrices of determinant ±1.
    Gl2zDetPm1,
}

impl GroupSpec {
    pub fn gamma0(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain!("level must be positive"));
        }
        Ok(GroupSpec::Gamma0 { n })
    }

    pub fn gamma0nm(n: u64, m: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(domain!("levels must be positive, got ({n}, {m})"));
        }
        Ok(GroupSpec::Gamma0nm { n, m })
    }
}

fn divides(k: u64, x: &BigInt) -> bool {
    mod_u64(x, k) == 0
}

pub fn membership(g: &Mat2, spec: GroupSpec) -> bool {
    let det = g.det();
    match spec {
        GroupSpec::Gl2zDetPm1 => det.abs().is_one(),
        GroupSpec::Sl2z => det.is_one(),
        GroupSpec::Gamma0 { n } => det.is_one() && divides(n, &g.c),
        GroupSpec::Gamma0nm { n, m } => det.is_one() && divides(n, &g.c) && divides(m, &g.b),
    }
}

/// Decomposes g with det g > 0 as g = γ·A where γ ∈ SL(2,Z) and
/// A = (c b; 0 e) with c ≥ 1, 0 ≤ b < e. The factorization is unique.
pub fn hnf_decompose(g: &Mat2) -> Result<(Mat2, Mat2)> {
    let det = g.det();
    if !det.is_positive() {
        return Err(domain!("hnf_decompose needs det > 0, got det {det} for {g}"));
    }
    let (c0, x, y) = ext_gcd(&g.a, &g.c);
    // inv = (x y; -c/c0 a/c0) has det 1 and kills the lower-left entry.
    let inv = Mat2 { a: x, b: y, c: -(&g.c / &c0), d: &g.a / &c0 };
    let upper = &inv * g;
    debug_assert!(upper.c.is_zero());
    let e = upper.d.clone();
    let k = -upper.b.div_floor(&e);
    let shift = Mat2::t_pow(k);
    let inv = &shift * &inv;
    let a_part = &shift * &upper;
    let gamma = inv.adj();
    debug_assert_eq!(&(&gamma * &a_part), g);
    Ok((gamma, a_part))
}

/// Key of the left coset Γ₀(n)·g for det g ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetKey {
    pub level: u64,
    /// Canonical representative of the bottom-row class of the unimodular factor.
    pub class: (u64, u64),
    /// Upper-triangular canonical factor (c b; 0 e).
    pub hnf: Mat2,
}

pub fn coset_key(n: u64, g: &Mat2) -> Result<CosetKey> {
    if n == 0 {
        return Err(domain!("level must be positive"));
    }
    let (gamma, a) = hnf_decompose(g)?;
    Ok(CosetKey { level: n, class: row_class(&gamma.c, &gamma.d, n), hnf: a })
}

/// Canonical P¹(Z/nZ) class of a primitive row (c, d).
pub fn row_class(c: &BigInt, d: &BigInt, n: u64) -> (u64, u64) {
    canonical_class(mod_u64(c, n), mod_u64(d, n), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a, b, c, d)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&Mat2::t() * &Mat2::t_prime(), m(2, 1, 1, 1));
        assert_eq!(m(1, 1, 0, 2).det(), BigInt::from(2));
        let x = m(2, 0, 1, 1);
        assert_eq!(x.adj(), m(1, 0, -1, 2));
        assert_eq!(&x * &x.adj(), Mat2::scalar(2));
        assert!(matches!(m(1, 2, 2, 4).inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn membership_examples() {
        assert!(membership(&Mat2::t(), GroupSpec::Gamma0 { n: 4 }));
        assert!(!membership(&m(1, 0, 2, 1), GroupSpec::Gamma0 { n: 4 }));
        assert!(membership(&m(1, 2, 4, 9), GroupSpec::Gamma0nm { n: 4, m: 2 }));
        assert!(membership(&m(0, 1, 1, 0), GroupSpec::Gl2zDetPm1));
        assert!(!membership(&m(0, 1, 1, 0), GroupSpec::Sl2z));
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf_decompose(&Mat2::identity()).unwrap(), (Mat2::identity(), Mat2::identity()));
        let (g, a) = hnf_decompose(&m(2, 0, 1, 1)).unwrap();
        assert_eq!(g, m(2, -1, 1, 0));
        assert_eq!(a, m(1, 1, 0, 2));
        let x = m(0, -2, 3, 1);
        let (g, a) = hnf_decompose(&x).unwrap();
        assert_eq!(&g * &a, x);
        assert!(g.det().is_one());
        assert!(a.c.is_zero() && a.a >= BigInt::one() && !a.b.is_negative() && a.b < a.d);
        assert!(hnf_decompose(&m(0, 1, 1, 0)).is_err());
    }

    #[test]
    fn coset_key_examples() {
        let k = coset_key(2, &Mat2::t()).unwrap();
        assert_eq!((k.class, k.hnf), ((0, 1), Mat2::identity()));
        let k = coset_key(2, &Mat2::s()).unwrap();
        assert_eq!((k.class, k.hnf), ((1, 0), Mat2::identity()));
        let k = coset_key(2, &m(2, 0, 1, 1)).unwrap();
        assert_eq!((k.class, k.hnf), ((1, 0), m(1, 1, 0, 2)));
    }
}
