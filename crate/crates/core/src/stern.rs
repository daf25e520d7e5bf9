//! The matrix sets Sₙ, Xₙ, Yₙ, Xₙ*, the K-map and its orbits, Farey paths,
//! and the orbit-sum solutions ψ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::ceil_div;
use crate::cosets::CosetTable;
use crate::error::{domain, invariant, Error, Result};
use crate::formal::FormalSum;
use crate::gl2::Mat2;

/// The four matrix sets of a given determinant, each sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSets {
    pub n: u64,
    /// a > c ≥ 0, d > b ≥ 0, ad − bc = n.
    pub s: Vec<Mat2>,
    /// Members of S with c = 0.
    pub x: Vec<Mat2>,
    /// Members of S with b = 0.
    pub y: Vec<Mat2>,
    /// Members of X with gcd(a, b, d) = 1.
    pub x_star: Vec<Mat2>,
}

pub fn matrix_sets(n: u64) -> Result<MatrixSets> {
    if n == 0 {
        return Err(domain!("determinant must be positive"));
    }
    let n_i = n as i128;
    let mut s = Vec::new();
    // a > c and d > b give n = ad − bc ≥ a + d − 1.
    for a in 1..=n_i {
        for d in 1..=(n_i + 1 - a) {
            let excess = a * d - n_i;
            if excess < 0 {
                continue;
            }
            if excess == 0 {
                for b in 0..d {
                    s.push(Mat2::new(BigInt::from(a), BigInt::from(b), 0, BigInt::from(d)));
                }
            }
            for c in 1..a {
                if excess % c == 0 {
                    let b = excess / c;
                    if b < d {
                        s.push(Mat2::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d)));
                    }
                }
            }
        }
    }
    s.sort();
    let x: Vec<Mat2> = s.iter().filter(|m| m.c.is_zero()).cloned().collect();
    let y: Vec<Mat2> = s.iter().filter(|m| m.b.is_zero()).cloned().collect();
    let x_star = x.iter().filter(|m| m.content().is_one()).cloned().collect();
    Ok(MatrixSets { n, s, x, y, x_star })
}

/// Primitive upper-triangular matrices of determinant n in canonical form.
pub fn x_star(n: u64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in (1..=n).filter(|a| n.is_multiple_of(*a)) {
        let d = n / a;
        for b in 0..d {
            let m = Mat2::new(a, b, 0, d);
            if m.content().is_one() {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

pub fn in_s(m: &Mat2) -> bool {
    !m.c.is_negative() && m.a > m.c && !m.b.is_negative() && m.d > m.b && m.det().is_positive()
}

/// K(A) = (−c + ⌈d/b⌉a, −d + ⌈d/b⌉b; a, b) for A ∈ S \ Y.
pub fn k_map(m: &Mat2) -> Result<Mat2> {
    if !in_s(m) {
        return Err(domain!("K is only defined on S, got {m}"));
    }
    if m.b.is_zero() {
        return Err(domain!("K is undefined on Y: {m} has b = 0"));
    }
    let k = ceil_div(&m.d, &m.b);
    Ok(Mat2 { a: &k * &m.a - &m.c, b: &k * &m.b - &m.d, c: m.a.clone(), d: m.b.clone() })
}

/// The K-orbit of A ∈ Sₙ up to and including its first member in Yₙ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KOrbit {
    pub orbit: Vec<Mat2>,
}

impl KOrbit {
    pub fn start(&self) -> &Mat2 {
        &self.orbit[0]
    }

    /// The hitting time k_A.
    pub fn k(&self) -> usize {
        self.orbit.len() - 1
    }
}

pub fn k_orbit(a: &Mat2) -> Result<KOrbit> {
    if !in_s(a) {
        return Err(domain!("K-orbits start in S, got {a}"));
    }
    let cap = 4u64 * u64::try_from(a.entry_sum()).unwrap_or(u64::MAX / 8);
    let mut orbit = vec![a.clone()];
    let mut cur = a.clone();
    while !cur.b.is_zero() {
        if orbit.len() as u64 > cap {
            return Err(Error::NonTermination { start: a.to_string(), cap });
        }
        cur = k_map(&cur)?;
        orbit.push(cur.clone());
    }
    Ok(KOrbit { orbit })
}

/// The Farey path from −1/0 through 0 to q ∈ [0, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyPath {
    pub q: BigRational,
    /// Numerators a_0 … a_L (a_0 = −1).
    pub num: Vec<BigInt>,
    /// Denominators b_0 … b_L (b_0 = 0).
    pub den: Vec<BigInt>,
    /// m_1 … m_L with m_r = (b_r −a_r; b_{r−1} −a_{r−1}).
    pub m: Vec<Mat2>,
}

impl FareyPath {
    /// L(q).
    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// y_r = a_r / b_r for r ≥ 1.
    pub fn fraction(&self, r: usize) -> BigRational {
        BigRational::new(self.num[r].clone(), self.den[r].clone())
    }

    /// M(q) = Σ m_r.
    pub fn m_sum(&self) -> FormalSum {
        FormalSum::from_terms(self.m.iter().map(|m| (m.clone(), BigInt::one())))
    }

    /// Checks neighbour determinants, monotonicity, endpoints and m_1 = I.
    pub fn check(&self) -> Result<()> {
        let l = self.len();
        if self.m.first() != Some(&Mat2::identity()) {
            return Err(invariant!("m_1 ≠ I on the Farey path of {}", self.q));
        }
        if self.num[0] != BigInt::from(-1) || !self.den[0].is_zero() {
            return Err(invariant!("y_0 ≠ −1/0 on the Farey path of {}", self.q));
        }
        for r in 1..=l {
            let det = &self.num[r - 1] * &self.den[r] - &self.num[r] * &self.den[r - 1];
            if det != BigInt::from(-1) {
                return Err(invariant!("neighbours {r}−1, {r} have determinant {det}"));
            }
            if !self.m[r - 1].det().is_one() {
                return Err(invariant!("m_{r} is not unimodular"));
            }
            if r >= 2 && self.fraction(r - 1) >= self.fraction(r) {
                return Err(invariant!("path not increasing at {r}"));
            }
        }
        if !self.fraction(1).is_zero() || self.fraction(l) != self.q {
            return Err(invariant!("Farey path endpoints wrong for {}", self.q));
        }
        Ok(())
    }
}

/// The Farey path of q read off the K-orbit of A = (1 a; 0 b), q = a/b:
/// m_{l+1} = K^l(A)·A⁻¹.
pub fn farey_path(q: &BigRational) -> Result<FareyPath> {
    if q.is_negative() || *q >= BigRational::one() {
        return Err(domain!("Farey paths need 0 ≤ q < 1, got {q}"));
    }
    let a = Mat2::new(1, q.numer().clone(), 0, q.denom().clone());
    let det = a.det();
    let orbit = k_orbit(&a)?;
    let mut ms = Vec::with_capacity(orbit.orbit.len());
    for k in &orbit.orbit {
        ms.push((k * &a.adj()).div_exact(&det)?);
    }
    let mut num = vec![-ms[0].d.clone()];
    let mut den = vec![ms[0].c.clone()];
    for (r, m) in ms.iter().enumerate() {
        if r > 0 && (m.c != den[r] || -&m.d != num[r]) {
            return Err(invariant!("m_{} does not continue the Farey path of {q}", r + 1));
        }
        num.push(-m.b.clone());
        den.push(m.a.clone());
    }
    let path = FareyPath { q: q.clone(), num, den, m: ms };
    path.check()?;
    Ok(path)
}

/// ψ_i = Σ_{j=0}^{k_i} K^j(A_i) for every i ∈ Iₙ.
pub fn psi_vector(n: u64) -> Result<Vec<FormalSum>> {
    let t = CosetTable::get(n)?;
    t.entries
        .iter()
        .map(|en| {
            let orbit = k_orbit(&en.a_mat)?;
            Ok(FormalSum::from_terms(orbit.orbit.into_iter().map(|m| (m, BigInt::one()))))
        })
        .collect()
}

/// ψ^(m) = Σ_i ψ_i over I_m.
pub fn psi_total(m: u64) -> Result<FormalSum> {
    let mut total = FormalSum::zero();
    for p in psi_vector(m)? {
        total += &p;
    }
    Ok(total)
}

/// The orbits of all A_i at level n, by ordinal.
pub fn orbits(n: u64) -> Result<Vec<KOrbit>> {
    let t = CosetTable::get(n)?;
    t.entries.iter().map(|en| k_orbit(&en.a_mat)).collect()
}

/// q = A·0 = b/d as a rational, for upper-triangular A.
pub fn at_zero(a: &Mat2) -> BigRational {
    let g = a.b.gcd(&a.d);
    BigRational::new(&a.b / &g, &a.d / &g)
}
