//! Hecke operators Ĥₙ,ₘ as multisets of left cosets Γ₀(n)·B_m·R_j, their
//! products and the relations between them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::arith::gcd;
use crate::cosets::rep_system;
use crate::error::{domain, Result};
use crate::gl2::{coset_key, CosetKey, Mat2};
use crate::stern::x_star;

/// A multiset of canonical left cosets Γ₀(n)·g.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CosetSum {
    pub level: u64,
    pub keys: BTreeMap<CosetKey, u64>,
}

impl CosetSum {
    pub fn new(level: u64) -> Self {
        CosetSum { level, keys: BTreeMap::new() }
    }

    pub fn from_mats<'a>(level: u64, mats: impl IntoIterator<Item = &'a Mat2>) -> Result<Self> {
        let mut s = CosetSum::new(level);
        for g in mats {
            s.insert(coset_key(level, g)?, 1);
        }
        Ok(s)
    }

    pub fn insert(&mut self, key: CosetKey, mult: u64) {
        if mult > 0 {
            *self.keys.entry(key).or_insert(0) += mult;
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &CosetSum) -> Result<CosetSum> {
        if self.level != other.level {
            return Err(domain!("coset sums of levels {} and {}", self.level, other.level));
        }
        let mut out = self.clone();
        for (k, &v) in &other.keys {
            out.insert(k.clone(), v);
        }
        Ok(out)
    }

    /// Every multiplicity times k.
    pub fn times(&self, k: u64) -> CosetSum {
        CosetSum {
            level: self.level,
            keys: self.keys.iter().filter(|_| k > 0).map(|(c, &v)| (c.clone(), v * k)).collect(),
        }
    }

    /// Total number of cosets counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.keys.values().sum()
    }

    /// Keys whose multiplicities differ, with (self, other) counts.
    pub fn difference(&self, other: &CosetSum) -> Vec<(CosetKey, u64, u64)> {
        let mut out = Vec::new();
        for k in self.keys.keys().chain(other.keys.keys()) {
            let a = self.keys.get(k).copied().unwrap_or(0);
            let b = other.keys.get(k).copied().unwrap_or(0);
            if a != b && !out.iter().any(|(x, _, _): &(CosetKey, u64, u64)| x == k) {
                out.push((k.clone(), a, b));
            }
        }
        out
    }
}

impl fmt::Display for CosetSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.keys.iter().map(|(k, v)| format!("{v}×[{}:{}]{}", k.class.0, k.class.1, k.hnf)).collect();
        write!(f, "level {}: {}", self.level, parts.join(", "))
    }
}

/// An operator u ↦ u|Σ gₖ given by an explicit list of matrices, before
/// any canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawOperator {
    pub level: u64,
    pub mats: Vec<Mat2>,
}

impl RawOperator {
    /// Applies self first, then `next`: u ↦ (u|self)|next, i.e. products s·o.
    pub fn then(&self, next: &RawOperator) -> Result<RawOperator> {
        if self.level != next.level {
            return Err(domain!("operators of levels {} and {}", self.level, next.level));
        }
        let mut mats = Vec::with_capacity(self.mats.len() * next.mats.len());
        for s in &self.mats {
            for o in &next.mats {
                mats.push(s * o);
            }
        }
        Ok(RawOperator { level: self.level, mats })
    }

    /// Left multiplication of every term by h (h·g), e.g. by a scalar matrix.
    pub fn premul(&self, h: &Mat2) -> RawOperator {
        RawOperator { level: self.level, mats: self.mats.iter().map(|g| h * g).collect() }
    }

    pub fn coset_sum(&self) -> Result<CosetSum> {
        CosetSum::from_mats(self.level, &self.mats)
    }
}

/// The list B_m·R_j^{nm,n} over the representative system of Γ₀(nm)\Γ₀(n).
pub fn h_hat_raw(n: u64, m: u64) -> Result<RawOperator> {
    h_hat_raw_with(n, m, |_, r| r.clone())
}

/// Same as [`h_hat_raw`] with each representative replaced by `choose(j, R_j)`;
/// used to test independence of the choice of representatives.
pub fn h_hat_raw_with(n: u64, m: u64, mut choose: impl FnMut(usize, &Mat2) -> Mat2) -> Result<RawOperator> {
    let rs = rep_system(n, m)?;
    let b = Mat2::b_m(m);
    Ok(RawOperator { level: n, mats: rs.reps.iter().enumerate().map(|(j, r)| &b * &choose(j, r)).collect() })
}

/// Ĥₙ,ₘ as a coset sum.
pub fn h_hat_coset_sum(n: u64, m: u64) -> Result<CosetSum> {
    h_hat_raw(n, m)?.coset_sum()
}

/// The cosets Γ₀(n)·A for A ∈ X_m*, which equal Ĥₙ,ₘ when gcd(n, m) = 1.
pub fn x_star_coset_sum(n: u64, m: u64) -> Result<CosetSum> {
    CosetSum::from_mats(n, &x_star(m))
}

/// Ĥₙ,ₐĤₙ,ᵦ: the cosets of B_b R_j·B_a R_i, multiplied before canonicalizing.
pub fn coset_sum_product(x: &RawOperator, y: &RawOperator) -> Result<CosetSum> {
    y.then(x)?.coset_sum()
}

/// A relation between the operators Ĥₙ,ₘ at a fixed level n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// ĤₚĤₚᵉ = Ĥₚᵉ⁺¹ for p | n.
    PrimeDivides { p: u64, e: u32 },
    /// ĤₚĤₚ = Ĥₚ² + (p+1)·(pI) for e = 1, and
    /// ĤₚĤₚᵉ = Ĥₚᵉ⁺¹ + p·(pI)·Ĥₚᵉ⁻¹ for e > 1, when p ∤ n.
    PrimeCoprime { p: u64, e: u32 },
    /// ĤₘĤₘ′ = Ĥₘₘ′ for gcd(m, m′) = 1.
    Multiplicative { m1: u64, m2: u64 },
    /// ĤₘĤₘ′ = Ĥₘ′Ĥₘ.
    Commute { m1: u64, m2: u64 },
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::PrimeDivides { p, e } => write!(f, "divides(p={p},e={e})"),
            Relation::PrimeCoprime { p, e } => write!(f, "coprime(p={p},e={e})"),
            Relation::Multiplicative { m1, m2 } => write!(f, "mult(m={m1},m'={m2})"),
            Relation::Commute { m1, m2 } => write!(f, "commute(m={m1},m'={m2})"),
        }
    }
}

/// Both sides of a relation as coset sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSides {
    pub lhs: CosetSum,
    pub rhs: CosetSum,
}

impl RelationSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn relation_sides(n: u64, rel: Relation) -> Result<RelationSides> {
    match rel {
        Relation::PrimeDivides { p, e } => {
            if !n.is_multiple_of(p) || e == 0 {
                return Err(domain!("{rel} needs p | n = {n} and e ≥ 1"));
            }
            let pe = p.pow(e);
            let lhs = coset_sum_product(&h_hat_raw(n, p)?, &h_hat_raw(n, pe)?)?;
            let rhs = h_hat_coset_sum(n, pe * p)?;
            Ok(RelationSides { lhs, rhs })
        }
        Relation::PrimeCoprime { p, e } => {
            if n.is_multiple_of(p) || e == 0 {
                return Err(domain!("{rel} needs p ∤ n = {n} and e ≥ 1"));
            }
            let pe = p.pow(e);
            let lhs = coset_sum_product(&h_hat_raw(n, p)?, &h_hat_raw(n, pe)?)?;
            let scalar = Mat2::scalar(p);
            let extra = if e == 1 {
                CosetSum::from_mats(n, [&scalar])?.times(p + 1)
            } else {
                h_hat_raw(n, pe / p)?.premul(&scalar).coset_sum()?.times(p)
            };
            let rhs = h_hat_coset_sum(n, pe * p)?.union(&extra)?;
            Ok(RelationSides { lhs, rhs })
        }
        Relation::Multiplicative { m1, m2 } => {
            if gcd(m1, m2) != 1 {
                return Err(domain!("{rel} needs coprime m, m'"));
            }
            let lhs = coset_sum_product(&h_hat_raw(n, m1)?, &h_hat_raw(n, m2)?)?;
            let rhs = h_hat_coset_sum(n, m1 * m2)?;
            Ok(RelationSides { lhs, rhs })
        }
        Relation::Commute { m1, m2 } => {
            let x = h_hat_raw(n, m1)?;
            let y = h_hat_raw(n, m2)?;
            Ok(RelationSides { lhs: coset_sum_product(&x, &y)?, rhs: coset_sum_product(&y, &x)? })
        }
    }
}

/// Multiset of Hermite factors of all products A·B, A ∈ X_p*, B ∈ X_{p^e}*.
pub fn x_star_product(p: u64, e: u32) -> Result<BTreeMap<Mat2, u64>> {
    let mut out = BTreeMap::new();
    for a in x_star(p) {
        for b in x_star(p.pow(e)) {
            let (_, h) = crate::gl2::hnf_decompose(&(&a * &b))?;
            *out.entry(h).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// X_{p^{e+1}}* ⊎ {pI} ⊎ {pI·Tᵇ : 0 ≤ b < p} for e = 1 and
/// X_{p^{e+1}}* ⊎ ⊎_{0 ≤ l < p} pI·Tˡ·X_{p^{e−1}}* for e > 1, as Hermite factors.
pub fn x_star_product_expected(p: u64, e: u32) -> Result<BTreeMap<Mat2, u64>> {
    let mut out = BTreeMap::new();
    let mut push = |m: &Mat2| -> Result<()> {
        let (_, h) = crate::gl2::hnf_decompose(m)?;
        *out.entry(h).or_insert(0) += 1;
        Ok(())
    };
    for a in x_star(p.pow(e + 1)) {
        push(&a)?;
    }
    let scalar = Mat2::scalar(p);
    if e == 1 {
        push(&scalar)?;
        for b in 0..p {
            push(&(&scalar * &Mat2::t_pow(BigInt::from(b))))?;
        }
    } else {
        for l in 0..p {
            let pre = &scalar * &Mat2::t_pow(BigInt::from(l));
            for x in x_star(p.pow(e - 1)) {
                push(&(&pre * &x))?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_operators() {
        let h = h_hat_coset_sum(5, 1).unwrap();
        assert_eq!(h.total(), 1);
        assert_eq!(h.keys.keys().next().unwrap().hnf, Mat2::identity());
        let h12 = h_hat_coset_sum(1, 2).unwrap();
        assert_eq!(h12, x_star_coset_sum(1, 2).unwrap());
        assert_eq!(h12.total(), 3);
        assert_eq!(h_hat_coset_sum(2, 2).unwrap().total(), 2);
    }

    #[test]
    fn square_of_two_at_level_one() {
        let x = h_hat_raw(1, 2).unwrap();
        let prod = coset_sum_product(&x, &x).unwrap();
        assert_eq!(prod.total(), 9);
        let scalar_key = coset_key(1, &Mat2::scalar(2)).unwrap();
        assert_eq!(prod.keys[&scalar_key], 3);
        assert_eq!(prod.keys.len(), 7);
        assert!(relation_sides(1, Relation::PrimeCoprime { p: 2, e: 1 }).unwrap().holds());
    }

    #[test]
    fn small_relations() {
        let s = relation_sides(2, Relation::PrimeDivides { p: 2, e: 1 }).unwrap();
        assert_eq!(s.lhs.total(), 4);
        assert!(s.holds());
        let s = relation_sides(1, Relation::Multiplicative { m1: 2, m2: 3 }).unwrap();
        assert_eq!(s.lhs.total(), 12);
        assert!(s.holds());
        assert!(relation_sides(2, Relation::PrimeCoprime { p: 2, e: 1 }).is_err());
    }

    #[test]
    fn x_star_lemmas_small() {
        for e in 1..=3 {
            assert_eq!(x_star_product(2, e).unwrap(), x_star_product_expected(2, e).unwrap());
        }
    }
}
