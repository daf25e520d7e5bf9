//! The index table l_{i,j}, lifting period vectors from level n to level nm,
//! projection and inflation between levels, and the operators T̃ₙ,ₘ.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cosets::{sigma_map, CosetTable};
use crate::error::{domain, invariant, Result};
use crate::formal::{slash_normal_form, Beta, FormalSum, PeriodVector};
use crate::gl2::{hnf_decompose, Mat2};
use crate::stern::{k_orbit, KOrbit};

/// One step j of the K-orbit attached to i ∈ I_{nm}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftStep {
    /// l_{i,j} ∈ Iₙ.
    pub l: usize,
    /// K^j(A_{σ(i)}), of determinant m.
    pub k_mat: Mat2,
    /// γ = A_l·K^j(A_{σ(i)})·A_i⁻¹ ∈ SL(2,Z).
    pub witness: Mat2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRow {
    /// σ(i) ∈ I_m, the projection of i to determinant m.
    pub sigma: usize,
    pub steps: Vec<LiftStep>,
}

type LiftCache = HashMap<(u64, u64), Arc<LiftTable>>;

/// The table of indices l_{i,j} for a pair (n, m).
///
/// Here σ always projects I_{nm} to I_m: the determinant bookkeeping
/// det A_l · det K^j(A_σ) = det A_i forces the orbit to live in determinant m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftTable {
    pub n: u64,
    pub m: u64,
    pub rows: Vec<LiftRow>,
}

/// Solves A_l·K·A_i⁻¹ ∈ SL(2,Z) for l: A_l is the Hermite factor of A_i·K⁻¹.
fn solve_l(small: &CosetTable, a_i: &Mat2, k: &Mat2) -> Result<(usize, Mat2)> {
    let m = k.det();
    let y =
        (a_i * &k.adj()).div_exact(&m).map_err(|_| invariant!("A_i·K⁻¹ is not integral for A_i = {a_i}, K = {k}"))?;
    let (_, a_l) = hnf_decompose(&y)?;
    let l = small.ordinal_of_a(&a_l)?;
    let witness = (&(&a_l * k) * &a_i.adj()).div_exact(&a_i.det())?;
    if !witness.det().is_one() {
        return Err(invariant!("lift witness {witness} is not unimodular"));
    }
    Ok((l, witness))
}

impl LiftTable {
    pub fn build(n: u64, m: u64) -> Result<LiftTable> {
        if n == 0 || m == 0 {
            return Err(domain!("levels must be positive, got ({n}, {m})"));
        }
        let big = CosetTable::get(n * m)?;
        let small = CosetTable::get(n)?;
        let dm = CosetTable::get(m)?;
        let orbits: Vec<KOrbit> = dm.entries.iter().map(|e| k_orbit(&e.a_mat)).collect::<Result<_>>()?;
        let sigma = sigma_map(n * m, m)?;
        let mut rows = Vec::with_capacity(big.len());
        for en in &big.entries {
            let s = sigma[en.ordinal];
            let steps = orbits[s]
                .orbit
                .iter()
                .map(|k| {
                    let (l, witness) = solve_l(&small, &en.a_mat, k)?;
                    Ok(LiftStep { l, k_mat: k.clone(), witness })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(LiftRow { sigma: s, steps });
        }
        Ok(LiftTable { n, m, rows })
    }

    /// Shared, lazily built table.
    pub fn get(n: u64, m: u64) -> Result<Arc<LiftTable>> {
        static CACHE: OnceLock<RwLock<LiftCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(t) = cache.read().expect("lift cache poisoned").get(&(n, m)) {
            return Ok(t.clone());
        }
        let t = Arc::new(LiftTable::build(n, m)?);
        let mut w = cache.write().expect("lift cache poisoned");
        Ok(w.entry((n, m)).or_insert(t).clone())
    }

    /// Re-verifies every stored witness.
    pub fn verify(&self) -> Result<()> {
        let big = CosetTable::get(self.n * self.m)?;
        let small = CosetTable::get(self.n)?;
        for (i, row) in self.rows.iter().enumerate() {
            let a_i = &big.entries[i].a_mat;
            for step in &row.steps {
                let lhs = &step.witness * a_i;
                let rhs = &small.entries[step.l].a_mat * &step.k_mat;
                if lhs != rhs || !step.witness.det().is_one() {
                    return Err(invariant!("lift witness fails at i = {i}, l = {}", step.l));
                }
            }
        }
        Ok(())
    }
}

/// l_{i,j} for i ∈ I_{nm} and 0 ≤ j ≤ k_{σ(i)}.
pub fn l_index(n: u64, m: u64, i: usize, j: usize) -> Result<usize> {
    let t = LiftTable::get(n, m)?;
    let row = t.rows.get(i).ok_or_else(|| domain!("ordinal {i} out of range for level {}", n * m))?;
    let step = row.steps.get(j).ok_or_else(|| domain!("orbit position {j} exceeds k = {}", row.steps.len() - 1))?;
    Ok(step.l)
}

/// All l ∈ Iₙ with A_l·K^j(A_{σ(i)})·A_i⁻¹ ∈ SL(2,Z), found by scanning the
/// A-matrices of level n.
pub fn l_index_scan(n: u64, m: u64, i: usize, j: usize) -> Result<Vec<usize>> {
    let t = LiftTable::get(n, m)?;
    let big = CosetTable::get(n * m)?;
    let small = CosetTable::get(n)?;
    let step = t.rows.get(i).and_then(|r| r.steps.get(j)).ok_or_else(|| domain!("({i}, {j}) out of range"))?;
    let a_i = &big.entries[i].a_mat;
    let nm = BigInt::from(n * m);
    let adj = a_i.adj();
    Ok(small
        .entries
        .iter()
        .filter(|e| {
            let x = &(&e.a_mat * &step.k_mat) * &adj;
            x.div_exact(&nm).map(|g| g.det().is_one()).unwrap_or(false)
        })
        .map(|e| e.ordinal)
        .collect())
}

fn check_level(v: &PeriodVector, level: u64) -> Result<()> {
    let len = CosetTable::get(level)?.len();
    if v.n != level || v.weights.len() != len {
        return Err(domain!(
            "vector of level {} with {} components, expected level {level} with {len}",
            v.n,
            v.weights.len()
        ));
    }
    Ok(())
}

/// Φ_j = Σ_s w_{l_{j,s}}·K^s(A_{σ(j)}) at level nm.
pub fn lift_period(n: u64, m: u64, v: &PeriodVector) -> Result<PeriodVector> {
    check_level(v, n)?;
    let t = LiftTable::get(n, m)?;
    let weights = t
        .rows
        .iter()
        .map(|row| {
            let mut phi = FormalSum::zero();
            for step in &row.steps {
                phi += &v.weights[step.l].mul_mat(&step.k_mat);
            }
            phi
        })
        .collect();
    Ok(v.with_weights(n * m, weights))
}

/// φ_j = Σ_{σ(i) = j} Φ_i, from level nm down to level n.
pub fn project(n: u64, m: u64, v: &PeriodVector) -> Result<PeriodVector> {
    check_level(v, n * m)?;
    let sigma = sigma_map(n * m, n)?;
    let mut weights = vec![FormalSum::zero(); CosetTable::get(n)?.len()];
    for (i, w) in v.weights.iter().enumerate() {
        weights[sigma[i]] += w;
    }
    Ok(v.with_weights(n, weights))
}

/// Φ_i = φ_{σ(i)}, from level n up to level nm.
pub fn inflate(n: u64, m: u64, v: &PeriodVector) -> Result<PeriodVector> {
    check_level(v, n)?;
    let sigma = sigma_map(n * m, n)?;
    Ok(v.with_weights(n * m, sigma.iter().map(|&s| v.weights[s].clone()).collect()))
}

/// T̃ₙ,ₘ = project ∘ lift.
pub fn t_tilde_apply(n: u64, m: u64, v: &PeriodVector) -> Result<PeriodVector> {
    project(n, m, &lift_period(n, m, v)?)
}

/// If every component of `out` equals λ times the same component of `input`
/// as functions, returns λ. Needs an integer β.
pub fn detect_eigenvalue(input: &PeriodVector, out: &PeriodVector) -> Result<Option<BigRational>> {
    let beta = match input.beta {
        Beta::Int(b) => b,
        Beta::Complex(_) => return Err(domain!("eigenvalue detection needs an integer beta")),
    };
    if input.weights.len() != out.weights.len() {
        return Ok(None);
    }
    let mut lambda: Option<BigRational> = None;
    for (x, y) in input.weights.iter().zip(&out.weights) {
        let fx = slash_normal_form(input.seed, beta, x)?;
        let fy = slash_normal_form(out.seed, beta, y)?;
        if fx.is_zero() {
            if fy.is_zero() {
                continue;
            }
            return Ok(None);
        }
        let (atom, cx) = fx.iter().next().expect("nonzero form");
        let cy = fy.iter().find(|(a, _)| *a == atom).map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero);
        let ratio = cy / cx;
        let mut scaled = fx.clone();
        scaled.add_scaled(&fx, &(ratio.clone() - BigRational::one()));
        if scaled != fy {
            return Ok(None);
        }
        match &lambda {
            Some(l) if *l != ratio => return Ok(None),
            _ => lambda = Some(ratio),
        }
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{lewis_check_function, CheckMode, Representation, Seed};
    use crate::stern::psi_vector;

    #[test]
    fn l_index_examples() {
        assert_eq!(l_index(1, 1, 0, 0).unwrap(), 0);
        let t4 = CosetTable::get(4).unwrap();
        let t2 = CosetTable::get(2).unwrap();
        let i = t4.ordinal_of_pair(1, 1).unwrap();
        assert_eq!(l_index(2, 2, i, 0).unwrap(), t2.ordinal_of_pair(1, 0).unwrap());
        assert_eq!(l_index(2, 2, i, 1).unwrap(), t2.ordinal_of_pair(2, 0).unwrap());
        let lt = LiftTable::get(2, 2).unwrap();
        assert_eq!(lt.rows[i].steps[0].witness, Mat2::identity());
        assert_eq!(lt.rows[i].steps[1].witness, Mat2::new(4, -1, 1, 0));
        assert!(l_index(2, 2, i, 5).is_err());
    }

    #[test]
    fn trivial_m_is_identity() {
        let v = PeriodVector::new(3, Seed::InverseZ, Beta::Int(1), psi_vector(3).unwrap());
        assert_eq!(lift_period(3, 1, &v).unwrap(), v);
        assert_eq!(t_tilde_apply(3, 1, &v).unwrap(), v);
        assert_eq!(project(3, 1, &v).unwrap(), v);
        assert_eq!(inflate(3, 1, &v).unwrap(), v);
    }

    #[test]
    fn lift_of_scalar_is_psi() {
        let v = PeriodVector::new(1, Seed::InverseZ, Beta::Int(1), vec![FormalSum::one()]);
        assert_eq!(lift_period(1, 2, &v).unwrap().weights, psi_vector(2).unwrap());
    }

    #[test]
    fn hecke_two_on_inverse_z() {
        let v = PeriodVector::new(1, Seed::InverseZ, Beta::Int(1), vec![FormalSum::one()]);
        let out = t_tilde_apply(1, 2, &v).unwrap();
        assert_eq!(detect_eigenvalue(&v, &out).unwrap(), Some(BigRational::from_integer(3.into())));
        let lifted = lift_period(2, 2, &v.with_weights(2, psi_vector(2).unwrap())).unwrap();
        assert!(lewis_check_function(&lifted, Representation::RhoTilde, CheckMode::Exact).unwrap().passed());
    }
}
