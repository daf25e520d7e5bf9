//! Index sets of Γ₀(n)\SL(2,Z), their representatives, the hₙ bijection,
//! representative systems for Γ₀(nm)\Γ₀(n) and the permutation
//! representations ρ and ρ̃.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{gamma0_index, gcd, inv_mod, mod_u64};
use crate::error::{domain, invariant, Result};
use crate::gl2::{coset_key, hnf_decompose, membership, row_class, GroupSpec, Mat2};

/// One element of the index set Iₙ, parametrized by a pair (c, b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexEntry {
    pub ordinal: usize,
    pub c: u64,
    pub b: u64,
    /// dₙ(c, b).
    pub d: u64,
    /// A = (c b; 0 n/c).
    pub a_mat: Mat2,
    /// Unimodular representative with bottom row (c, d).
    pub r: Mat2,
    /// Canonical P¹(Z/nZ) class of the bottom row of `r`.
    pub class: (u64, u64),
}

/// The index table of level n. Entries are ordered lexicographically by (c, b).
#[derive(Debug)]
pub struct CosetTable {
    pub n: u64,
    pub mu: u64,
    pub entries: Vec<IndexEntry>,
    /// hₙ as a map on ordinals.
    pub h: Vec<usize>,
    h_inv: Vec<usize>,
    by_class: HashMap<(u64, u64), usize>,
    by_a: HashMap<(u64, u64), usize>,
}

/// dₙ(c, b) = min over 0 ≤ k < c of c + b + k·n/c subject to gcd(c, b + k·n/c) = 1.
pub fn d_value(n: u64, c: u64, b: u64) -> u64 {
    let e = n / c;
    (0..c).find(|k| gcd(c, b + k * e) == 1).map(|k| c + b + k * e).expect("gcd(c, b, n/c) = 1 guarantees a solution")
}

/// The unimodular matrix with bottom row (c, d), gcd(c, d) = 1, whose
/// top-left entry is the smallest nonnegative admissible value.
pub fn representative(c: u64, d: u64) -> Mat2 {
    let a: u64 = if c == 1 { 0 } else { inv_mod(d % c, c).expect("gcd(c, d) = 1") };
    let b = (a as i128 * d as i128 - 1) / c as i128;
    debug_assert_eq!((a as i128 * d as i128 - 1) % c as i128, 0);
    Mat2::new(a, BigInt::from(b), c, d)
}

impl CosetTable {
    pub fn build(n: u64) -> Result<CosetTable> {
        if n == 0 {
            return Err(domain!("level must be positive"));
        }
        let mut entries = Vec::new();
        for c in (1..=n).filter(|c| n.is_multiple_of(*c)) {
            let e = n / c;
            for b in 0..e {
                if gcd(gcd(c, b), e) != 1 {
                    continue;
                }
                let d = d_value(n, c, b);
                let r = representative(c, d);
                let class = row_class(&r.c, &r.d, n);
                entries.push(IndexEntry { ordinal: entries.len(), c, b, d, a_mat: Mat2::new(c, b, 0, e), r, class });
            }
        }
        let mu = gamma0_index(n);
        if entries.len() as u64 != mu {
            return Err(invariant!("level {n}: {} index pairs, expected {mu}", entries.len()));
        }
        let mut by_class = HashMap::new();
        let mut by_a = HashMap::new();
        for en in &entries {
            if by_class.insert(en.class, en.ordinal).is_some() {
                return Err(invariant!("level {n}: class {:?} hit twice", en.class));
            }
            by_a.insert((en.c, en.b), en.ordinal);
        }
        let mut table = CosetTable { n, mu, entries, h: Vec::new(), h_inv: Vec::new(), by_class, by_a };
        let w = Mat2::new(0, 1, -(n as i64), 0);
        let mut h = Vec::with_capacity(table.entries.len());
        for en in &table.entries {
            h.push(table.ordinal_of_hnf(&(&w * &en.r))?);
        }
        let mut h_inv = vec![usize::MAX; h.len()];
        for (i, &j) in h.iter().enumerate() {
            if h_inv[j] != usize::MAX {
                return Err(invariant!("h_{n} is not injective at {j}"));
            }
            h_inv[j] = i;
        }
        table.h = h;
        table.h_inv = h_inv;
        Ok(table)
    }

    /// Shared, lazily built table for level n.
    pub fn get(n: u64) -> Result<Arc<CosetTable>> {
        static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CosetTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(t) = cache.read().expect("table cache poisoned").get(&n) {
            return Ok(t.clone());
        }
        let t = Arc::new(CosetTable::build(n)?);
        let mut w = cache.write().expect("table cache poisoned");
        Ok(w.entry(n).or_insert(t).clone())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn h_inverse(&self) -> &[usize] {
        &self.h_inv
    }

    /// Ordinal of the coset Γ₀(n)·g for unimodular g, read off its bottom row.
    pub fn ordinal_of_row(&self, c: &BigInt, d: &BigInt) -> usize {
        let cls = row_class(c, d, self.n);
        self.by_class[&cls]
    }

    pub fn ordinal_of_pair(&self, c: u64, b: u64) -> Option<usize> {
        self.by_a.get(&(c, b)).copied()
    }

    /// Ordinal i with A_i equal to the given upper-triangular matrix.
    pub fn ordinal_of_a(&self, a: &Mat2) -> Result<usize> {
        let key = (|| Some((u64::try_from(&a.a).ok()?, u64::try_from(&a.b).ok()?)))();
        match key {
            Some(k) if a.c.is_zero() && a.det() == BigInt::from(self.n) => {
                self.by_a.get(&k).copied().ok_or_else(|| invariant!("{a} is not an A-matrix of level {}", self.n))
            }
            _ => Err(invariant!("{a} is not an A-matrix of level {}", self.n)),
        }
    }

    /// Ordinal i with g ∈ SL(2,Z)·A_i, for a primitive g of determinant n.
    pub fn ordinal_of_hnf(&self, g: &Mat2) -> Result<usize> {
        let (_, a) = hnf_decompose(g)?;
        self.ordinal_of_a(&a)
    }

    /// The ordinal of the identity coset Γ₀(n)·I.
    pub fn identity_ordinal(&self) -> usize {
        self.ordinal_of_row(&BigInt::zero(), &BigInt::one())
    }
}

/// Natural projection I_{nFrom} → I_{nTo}, reducing bottom-row classes.
pub fn sigma_project(n_from: u64, n_to: u64, i: usize) -> Result<usize> {
    if n_to == 0 || !n_from.is_multiple_of(n_to) {
        return Err(domain!("{n_to} does not divide {n_from}"));
    }
    let from = CosetTable::get(n_from)?;
    let to = CosetTable::get(n_to)?;
    let en = from.entries.get(i).ok_or_else(|| domain!("ordinal {i} out of range for level {n_from}"))?;
    Ok(to.ordinal_of_row(&en.r.c, &en.r.d))
}

/// The whole projection as a vector over I_{nFrom}.
pub fn sigma_map(n_from: u64, n_to: u64) -> Result<Vec<usize>> {
    let from = CosetTable::get(n_from)?;
    (0..from.len()).map(|i| sigma_project(n_from, n_to, i)).collect()
}

/// A permutation matrix stored as p[i] = j where the (i, j) entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Matrix product self·other.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&j| other.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// (P·v)_i = v_{p[i]}.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.0.iter().map(|&j| v[j].clone()).collect()
    }

    pub fn is_bijection(&self) -> bool {
        let set: BTreeSet<_> = self.0.iter().collect();
        set.len() == self.0.len() && self.0.iter().all(|&j| j < self.0.len())
    }

    /// Dense 0/1 matrix, for display and cross-checks.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let n = self.0.len();
        (0..n).map(|i| (0..n).map(|j| u8::from(self.0[i] == j)).collect()).collect()
    }
}

fn require_sl2(g: &Mat2) -> Result<()> {
    if !membership(g, GroupSpec::Sl2z) {
        return Err(domain!("{g} is not in SL(2,Z)"));
    }
    Ok(())
}

/// ρ(g): entry (i, j) is 1 iff R_i g R_j⁻¹ ∈ Γ₀(n).
pub fn rho(n: u64, g: &Mat2) -> Result<Permutation> {
    require_sl2(g)?;
    let t = CosetTable::get(n)?;
    Ok(Permutation(
        t.entries
            .iter()
            .map(|en| {
                let rg = &en.r * g;
                t.ordinal_of_row(&rg.c, &rg.d)
            })
            .collect(),
    ))
}

/// ρ̃(g): entry (i, j) is 1 iff A_i g A_j⁻¹ ∈ SL(2,Z).
pub fn rho_tilde(n: u64, g: &Mat2) -> Result<Permutation> {
    require_sl2(g)?;
    let t = CosetTable::get(n)?;
    t.entries.iter().map(|en| t.ordinal_of_hnf(&(&en.a_mat * g))).collect::<Result<Vec<_>>>().map(Permutation)
}

/// The permutation matrix Hₙ with (Hₙ)_{ij} = 1 iff hₙ(j) = i.
pub fn h_matrix(n: u64) -> Result<Permutation> {
    Ok(Permutation(CosetTable::get(n)?.h_inverse().to_vec()))
}

/// Representatives R_j^{nm,n} of Γ₀(nm)\Γ₀(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSystem {
    pub n: u64,
    pub m: u64,
    pub reps: Vec<Mat2>,
    /// The ordinals in I_{nm} (the fiber over the identity class of Iₙ) that
    /// the representatives were built from.
    pub fiber: Vec<usize>,
}

/// Builds R_j^{nm,n} = R_j^{nm,1}·(R_{i₀}^{n,1})⁻¹ over the fiber of the
/// projection I_{nm} → Iₙ above the identity class i₀.
pub fn rep_system(n: u64, m: u64) -> Result<RepSystem> {
    if n == 0 || m == 0 {
        return Err(domain!("levels must be positive, got ({n}, {m})"));
    }
    let nm = n * m;
    let big = CosetTable::get(nm)?;
    let small = CosetTable::get(n)?;
    let i0 = small.identity_ordinal();
    let r0_inv = small.entries[i0].r.unimodular_inverse()?;
    let mut reps = Vec::new();
    let mut fiber = Vec::new();
    for en in &big.entries {
        if small.ordinal_of_row(&en.r.c, &en.r.d) == i0 {
            let r = &en.r * &r0_inv;
            if !membership(&r, GroupSpec::Gamma0 { n }) {
                return Err(invariant!("representative {r} for ({n}, {m}) is not in Γ₀({n})"));
            }
            reps.push(r);
            fiber.push(en.ordinal);
        }
    }
    let expected = big.mu / small.mu;
    if reps.len() as u64 != expected {
        return Err(invariant!("rep system ({n}, {m}) has {} members, expected {expected}", reps.len()));
    }
    let keys: BTreeSet<_> = reps.iter().map(|r| coset_key(nm, r)).collect::<Result<_>>()?;
    if keys.len() != reps.len() {
        return Err(invariant!("rep system ({n}, {m}) is not disjoint modulo Γ₀({nm})"));
    }
    Ok(RepSystem { n, m, reps, fiber })
}

/// ḡ = B_m g B_m⁻¹ = (a, m·b; c/m, d), so that B_m g = ḡ B_m.
pub fn bar_map(m: u64, g: &Mat2) -> Result<Mat2> {
    if m == 0 {
        return Err(domain!("m must be positive"));
    }
    if mod_u64(&g.c, m) != 0 {
        return Err(domain!("bar map: entry c/m = {}/{m} of {g} is not integral", g.c));
    }
    let mb = BigInt::from(m);
    Ok(Mat2 { a: g.a.clone(), b: &g.b * &mb, c: &g.c / &mb, d: g.d.clone() })
}
