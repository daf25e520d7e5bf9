//! The maps σ_R and Φ_A and the old vector induced from level n to level nm
//! through B_m and Farey matrices.

use num_traits::One;

use crate::cosets::{rho, sigma_map, CosetTable};
use crate::error::{domain, invariant, Result};
use crate::formal::{FormalSum, PeriodVector};
use crate::gl2::{hnf_decompose, Mat2};
use crate::stern::{at_zero, farey_path};

/// For A of determinant m and a unimodular R, writes A·R = γ·σ_R(A) with
/// σ_R(A) upper triangular and returns (σ_R(A), Φ_A) where Φ_A is the
/// ordinal of Γ₀(nm)·γ in the given table.
pub fn sigma_phi(table: &CosetTable, r: &Mat2, a: &Mat2) -> Result<(Mat2, usize)> {
    if !r.det().is_one() {
        return Err(domain!("{r} is not unimodular"));
    }
    let (gamma, sigma) = hnf_decompose(&(a * r))?;
    Ok((sigma, table.ordinal_of_row(&gamma.c, &gamma.d)))
}

/// The old vector at level nm built from v at level n:
/// component j = Σ_r [ρₙ(m_r⁻¹)·v]_{σ(Φ_{B_m}(j))}·m_r·σ_{R_j}(B_m),
/// with m_r the Farey matrices of σ_{R_j}(B_m)·0.
pub fn induce_old_vector(n: u64, m: u64, v: &PeriodVector) -> Result<PeriodVector> {
    let small = CosetTable::get(n)?;
    if v.n != n || v.weights.len() != small.len() {
        return Err(domain!("vector is not of level {n}"));
    }
    let big = CosetTable::get(n * m)?;
    let down = sigma_map(n * m, n)?;
    let b = Mat2::b_m(m);
    let mut weights = Vec::with_capacity(big.len());
    for en in &big.entries {
        let (sigma, phi) = sigma_phi(&big, &en.r, &b)?;
        if !sigma.content().is_one() {
            return Err(invariant!("σ_R(B_{m}) = {sigma} is not primitive"));
        }
        let target = down[phi];
        let path = farey_path(&at_zero(&sigma))?;
        let mut w = FormalSum::zero();
        for mr in &path.m {
            let perm = rho(n, &mr.unimodular_inverse()?)?;
            w += &v.weights[perm.0[target]].mul_mat(&(mr * &sigma));
        }
        weights.push(w);
    }
    Ok(v.with_weights(n * m, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::h_matrix;
    use crate::formal::{Beta, Seed};
    use crate::hecke::lift::lift_period;
    use crate::stern::psi_vector;

    #[test]
    fn sigma_phi_identity() {
        let t = CosetTable::get(6).unwrap();
        for en in &t.entries {
            let (s, phi) = sigma_phi(&t, &en.r, &Mat2::identity()).unwrap();
            assert_eq!(s, Mat2::identity());
            assert_eq!(phi, en.ordinal);
        }
    }

    #[test]
    fn frobenius_lemma_level_two() {
        let t = CosetTable::get(2).unwrap();
        let i = t.ordinal_of_pair(1, 0).unwrap();
        let (s, _) = sigma_phi(&t, &t.entries[i].r, &Mat2::b_m(2)).unwrap();
        assert_eq!(s, Mat2::new(1, 1, 0, 2));
        assert_eq!(s, t.entries[t.h[i]].a_mat);
    }

    #[test]
    fn induced_matches_lift() {
        let v = PeriodVector::new(2, Seed::InverseZ, Beta::Int(1), psi_vector(2).unwrap());
        let hv = v.with_weights(2, h_matrix(2).unwrap().apply(&v.weights));
        let induced = induce_old_vector(2, 2, &v).unwrap();
        let lifted = lift_period(2, 2, &hv).unwrap();
        let t4 = CosetTable::get(4).unwrap();
        for i in 0..t4.len() {
            assert_eq!(induced.weights[i], lifted.weights[t4.h[i]], "component {i}");
        }
    }
}
