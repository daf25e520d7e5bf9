//! Every structural property of the library as a named, parameterized
//! check returning a status and a JSON payload. The suite runner and the
//! acceptance tests both drive these.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::arith::{gamma0_index, gcd};
use crate::cosets::{bar_map, h_matrix, rep_system, rho, rho_tilde, sigma_map, CosetTable, Permutation};
use crate::error::Result;
use crate::formal::{
    check_vanishing, exact_point, jplus_witness_search, lewis_check_function, lewis_residual, slash_eval_exact, Beta,
    CheckMode, FormalSum, PeriodVector, Representation, Seed, Status, WitnessOutcome,
};
use crate::gl2::{coset_key, hnf_decompose, membership, GroupSpec, Mat2};
use crate::hecke::{
    coset_sum_product, detect_eigenvalue, h_hat_coset_sum, h_hat_raw, h_hat_raw_with, induce_old_vector, inflate,
    l_index_scan, lift_period, project, relation_sides, sigma_phi, t_tilde_apply, verify_t_relation, x_star_coset_sum,
    x_star_product, x_star_product_expected, LiftTable, LowerCoefficient, Relation,
};
use crate::json::mat_to_json;
use crate::p1::enumerate_points;
use crate::stern::{at_zero, farey_path, k_orbit, matrix_sets, psi_total, psi_vector};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub status: Status,
    pub payload: Value,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn verdict(ok: bool, payload: Value) -> CheckOutcome {
    CheckOutcome { status: if ok { Status::Pass } else { Status::Fail }, payload }
}

/// Cap on the number of mismatches copied into a payload.
const MAX_LISTED: usize = 8;

fn truncated<T: Clone>(v: &[T]) -> Vec<T> {
    v.iter().take(MAX_LISTED).cloned().collect()
}

/// A random element of Γ₀(n) as a word in T^{±1}, (1 0; n 1)^{±1} and −I.
pub fn random_gamma0<R: Rng>(rng: &mut R, n: u64, len: usize) -> Mat2 {
    let gens = [
        Mat2::t(),
        Mat2::new(1, -1, 0, 1),
        Mat2::new(1, 0, n, 1),
        Mat2::new(1, 0, -(n as i64), 1),
        Mat2::new(-1, 0, 0, -1),
    ];
    (0..len).fold(Mat2::identity(), |acc, _| &acc * &gens[rng.gen_range(0..gens.len())])
}

/// A random element of SL(2,Z) as a word in T^{±1} and S.
pub fn random_sl2<R: Rng>(rng: &mut R, len: usize) -> Mat2 {
    let gens = [Mat2::t(), Mat2::new(1, -1, 0, 1), Mat2::s()];
    (0..len).fold(Mat2::identity(), |acc, _| &acc * &gens[rng.gen_range(0..gens.len())])
}

/// |Iₙ| = n·∏(1 + 1/q) and |Xₙ*| = |Iₙ|.
pub fn index_formula(n: u64) -> Result<CheckOutcome> {
    let t = CosetTable::get(n)?;
    let mu = gamma0_index(n);
    let xs = matrix_sets(n)?.x_star.len() as u64;
    Ok(verdict(
        t.len() as u64 == mu && t.mu == mu && xs == mu,
        json!({"n": n, "entries": t.len(), "formula": mu, "xStar": xs}),
    ))
}

/// (c, b) ↦ [c : dₙ(c, b)] hits every point of P¹(Z/n) exactly once.
pub fn index_bijection(n: u64) -> Result<CheckOutcome> {
    let t = CosetTable::get(n)?;
    let classes: BTreeSet<_> = t.entries.iter().map(|e| e.class).collect();
    let points: BTreeSet<_> = enumerate_points(n).into_iter().collect();
    Ok(verdict(
        classes.len() == t.len() && classes == points,
        json!({"n": n, "classes": classes.len(), "points": points.len()}),
    ))
}

/// hₙ is a bijection; h₁ is the identity.
pub fn h_bijection(n: u64) -> Result<CheckOutcome> {
    let t = CosetTable::get(n)?;
    let ok = Permutation(t.h.clone()).is_bijection() && (n != 1 || t.h == [0]);
    Ok(verdict(ok, json!({"n": n, "h": t.h})))
}

/// hₙ(σ(i)) = σ(h_{nm}(i)) for all i ∈ I_{nm}.
pub fn h_sigma(n: u64, m: u64) -> Result<CheckOutcome> {
    let big = CosetTable::get(n * m)?;
    let small = CosetTable::get(n)?;
    let sigma = sigma_map(n * m, n)?;
    let bad: Vec<usize> = (0..big.len()).filter(|&i| small.h[sigma[i]] != sigma[big.h[i]]).collect();
    Ok(verdict(bad.is_empty(), json!({"n": n, "m": m, "mismatches": truncated(&bad)})))
}

/// For every A ∈ Xₙ: k_A = L(A·0) − 1 and K^l(A) = m_{l+1}·A.
pub fn farey_k_coherence(n: u64) -> Result<CheckOutcome> {
    let sets = matrix_sets(n)?;
    let mut bad = Vec::new();
    for a in &sets.x {
        let orbit = k_orbit(a)?;
        let path = farey_path(&at_zero(a))?;
        let ok = orbit.k() + 1 == path.len() && orbit.orbit.iter().zip(&path.m).all(|(k, m)| *k == m * a);
        if !ok {
            bad.push(mat_to_json(a));
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "checked": sets.x.len(), "failures": truncated(&bad)})))
}

/// Farey path invariants for every reduced a/b with the given denominator.
pub fn farey_invariants(b: u64) -> Result<CheckOutcome> {
    let mut bad = Vec::new();
    let mut count = 0;
    for a in (0..b).filter(|&a| gcd(a, b) == 1) {
        count += 1;
        let q = BigRational::new(BigInt::from(a), BigInt::from(b));
        if farey_path(&q).and_then(|p| p.check()).is_err() {
            bad.push(format!("{a}/{b}"));
        }
    }
    Ok(verdict(bad.is_empty(), json!({"denominator": b, "checked": count, "failures": truncated(&bad)})))
}

/// ψ^(p) = Σ_{A ∈ S_p} A for p prime.
pub fn psi_total_prime(p: u64) -> Result<CheckOutcome> {
    let total = psi_total(p)?;
    let s = FormalSum::from_terms(matrix_sets(p)?.s.into_iter().map(|m| (m, BigInt::one())));
    Ok(verdict(total == s, json!({"p": p, "psiTerms": total.len(), "sTerms": s.len()})))
}

/// The ψ residual at level n, certified per component by a witness or,
/// failing that, by exact vanishing on both seeds (reported inconclusive).
pub fn psi_residual(n: u64, depth_cap: usize, psi: &[FormalSum]) -> Result<CheckOutcome> {
    let residual = lewis_residual(n, psi, Representation::RhoTilde)?;
    let mut witnesses = 0;
    let mut fallback = Vec::new();
    let mut failed = Vec::new();
    for (i, r) in residual.iter().enumerate() {
        match jplus_witness_search(r, depth_cap) {
            WitnessOutcome::Found(_) => witnesses += 1,
            WitnessOutcome::NotFound { reason } => {
                let mut ok = true;
                for seed in [Seed::InverseZ, Seed::Eisenstein] {
                    let rep = check_vanishing(seed, Beta::Int(1), r, CheckMode::Sampled)?;
                    ok &= rep.status == Status::Pass;
                }
                if ok {
                    fallback.push(json!({"index": i, "reason": reason}));
                } else {
                    failed.push(json!({"index": i, "reason": reason}));
                }
            }
        }
    }
    let status = if !failed.is_empty() {
        Status::Fail
    } else if !fallback.is_empty() {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    Ok(CheckOutcome {
        status,
        payload: json!({
            "n": n,
            "components": residual.len(),
            "witnesses": witnesses,
            "functionalFallback": truncated(&fallback),
            "failures": truncated(&failed),
        }),
    })
}

/// The decomposition of X_p*·X_{p^e}* as a multiset of Hermite factors.
pub fn x_star_lemma(p: u64, e: u32) -> Result<CheckOutcome> {
    let lhs = x_star_product(p, e)?;
    let rhs = x_star_product_expected(p, e)?;
    let (lt, rt): (u64, u64) = (lhs.values().sum(), rhs.values().sum());
    Ok(verdict(lhs == rhs, json!({"p": p, "e": e, "lhsTotal": lt, "rhsTotal": rt})))
}

/// A coset sum relation at level n.
pub fn coset_relation(n: u64, rel: Relation) -> Result<CheckOutcome> {
    let sides = relation_sides(n, rel)?;
    let diff: Vec<Value> = sides
        .lhs
        .difference(&sides.rhs)
        .into_iter()
        .take(MAX_LISTED)
        .map(|(k, a, b)| json!({"class": [k.class.0, k.class.1], "hnf": mat_to_json(&k.hnf), "lhs": a, "rhs": b}))
        .collect();
    Ok(verdict(
        sides.holds(),
        json!({
            "n": n,
            "relation": rel.to_string(),
            "lhsTotal": sides.lhs.total(),
            "rhsTotal": sides.rhs.total(),
            "mismatches": diff,
        }),
    ))
}

/// For gcd(n, m) = 1 the definition of Ĥₙ,ₘ agrees with the cosets of X_m*.
pub fn h_hat_prime_route(n: u64, m: u64) -> Result<CheckOutcome> {
    let a = h_hat_coset_sum(n, m)?;
    let b = x_star_coset_sum(n, m)?;
    let simple = b.keys.values().all(|&v| v == 1);
    Ok(verdict(a == b && simple, json!({"n": n, "m": m, "cosets": a.total()})))
}

/// T̃₁,ₘ(1/z) = λ/z with λ compared to `expected`.
pub fn eigenvalue(m: u64, expected: i64) -> Result<CheckOutcome> {
    let v = PeriodVector::new(1, Seed::InverseZ, Beta::Int(1), vec![FormalSum::one()]);
    let out = t_tilde_apply(1, m, &v)?;
    let lambda = detect_eigenvalue(&v, &out)?;
    let ok = lambda == Some(BigRational::from_integer(BigInt::from(expected)));
    Ok(verdict(ok, json!({"m": m, "expected": expected, "observed": lambda.map(|l| l.to_string())})))
}

fn psi_seed_vector(n: u64, seed: Seed, beta: Beta) -> Result<PeriodVector> {
    Ok(PeriodVector::new(n, seed, beta, psi_vector(n)?))
}

fn lewis_payload(v: &PeriodVector, mode: CheckMode) -> Result<(bool, Value)> {
    let rep = lewis_check_function(v, Representation::RhoTilde, mode)?;
    let failing: Vec<usize> = rep.components.iter().filter(|c| c.status != Status::Pass).map(|c| c.index).collect();
    Ok((failing.is_empty(), json!({"level": v.n, "terms": v.term_count(), "failingComponents": truncated(&failing)})))
}

/// T̃ₙ,ₘ maps the ψ solution of level n to a solution of level n.
pub fn t_closure(n: u64, m: u64, seed: Seed, beta: Beta, mode: CheckMode) -> Result<CheckOutcome> {
    let v = psi_seed_vector(n, seed, beta)?;
    let out = t_tilde_apply(n, m, &v)?;
    let (ok, mut payload) = lewis_payload(&out, mode)?;
    payload["m"] = json!(m);
    payload["seed"] = json!(seed.name());
    payload["beta"] = json!(beta.to_string());
    payload["mode"] = json!(mode.name());
    Ok(verdict(ok, payload))
}

/// The lift to level nm of a level-n solution solves the level-nm equation.
pub fn lift_solution(n: u64, m: u64, seed: Seed) -> Result<CheckOutcome> {
    let v = psi_seed_vector(n, seed, Beta::Int(1))?;
    let (ok, mut payload) = lewis_payload(&lift_period(n, m, &v)?, CheckMode::Exact)?;
    payload["m"] = json!(m);
    payload["seed"] = json!(seed.name());
    Ok(verdict(ok, payload))
}

/// Inflation n → nm and projection nm → n preserve solutions.
pub fn project_inflate(n: u64, m: u64, seed: Seed) -> Result<CheckOutcome> {
    let v = psi_seed_vector(n, seed, Beta::Int(1))?;
    let up = inflate(n, m, &v)?;
    let w = psi_seed_vector(n * m, seed, Beta::Int(1))?;
    let down = project(n, m, &w)?;
    let (ok_up, _) = lewis_payload(&up, CheckMode::Exact)?;
    let (ok_down, _) = lewis_payload(&down, CheckMode::Exact)?;
    Ok(verdict(ok_up && ok_down, json!({"n": n, "m": m, "seed": seed.name(), "inflate": ok_up, "project": ok_down})))
}

/// A T̃ relation on the ψ solution of level n.
pub fn t_relation(n: u64, p: u64, e: u32, seed: Seed, beta: Beta, coeff: LowerCoefficient) -> Result<CheckOutcome> {
    let v = psi_seed_vector(n, seed, beta)?;
    let rep = verify_t_relation(p, e, &v, coeff, CheckMode::Exact)?;
    let lower = if n.is_multiple_of(p) { 0 } else { coeff.value(p, e) };
    Ok(verdict(
        rep.holds(),
        json!({
            "n": n, "p": p, "e": e, "seed": seed.name(), "beta": beta.to_string(),
            "lowerCoefficient": lower,
            "failingComponents": truncated(&rep.failing_components),
        }),
    ))
}

/// The induced old vector agrees with the lift of the Hₙ-permuted input,
/// reindexed by h_{nm}: exactly at `points` rational points, and formally.
pub fn induce_route(n: u64, m: u64, points: usize) -> Result<CheckOutcome> {
    let v = psi_seed_vector(n, Seed::InverseZ, Beta::Int(1))?;
    let hv = v.with_weights(n, h_matrix(n)?.apply(&v.weights));
    let induced = induce_old_vector(n, m, &v)?;
    let lifted = lift_period(n, m, &hv)?;
    let big = CosetTable::get(n * m)?;
    let mut bad = Vec::new();
    let mut formal = true;
    for i in 0..big.len() {
        let x = &induced.weights[i];
        let y = &lifted.weights[big.h[i]];
        formal &= x == y;
        for k in 0..points {
            let z = exact_point(k);
            if slash_eval_exact(Seed::InverseZ, 1, x, &z)? != slash_eval_exact(Seed::InverseZ, 1, y, &z)? {
                bad.push(json!({"component": i, "z": z.to_string()}));
            }
        }
    }
    Ok(verdict(
        bad.is_empty(),
        json!({"n": n, "m": m, "points": points, "formallyEqual": formal, "mismatches": truncated(&bad)}),
    ))
}

/// Exactly one pair (j, k) ∈ Iₙ×I_m has A_j·A_k ∈ SL(2,Z)·A_i, for each i.
pub fn uniqueness(n: u64, m: u64) -> Result<CheckOutcome> {
    let a = CosetTable::get(n)?;
    let b = CosetTable::get(m)?;
    let big = CosetTable::get(n * m)?;
    let mut hits: HashMap<usize, u64> = HashMap::new();
    for x in &a.entries {
        for y in &b.entries {
            let p = &x.a_mat * &y.a_mat;
            if p.content().is_one() {
                *hits.entry(big.ordinal_of_hnf(&p)?).or_insert(0) += 1;
            }
        }
    }
    let bad: Vec<usize> = (0..big.len()).filter(|i| hits.get(i) != Some(&1)).collect();
    Ok(verdict(bad.is_empty(), json!({"n": n, "m": m, "failures": truncated(&bad)})))
}

/// The scan over Xₙ* finds exactly one l_{i,j}, equal to the table value,
/// and every stored witness re-verifies.
pub fn l_index_unique(n: u64, m: u64) -> Result<CheckOutcome> {
    let t = LiftTable::get(n, m)?;
    t.verify()?;
    let mut bad = Vec::new();
    for (i, row) in t.rows.iter().enumerate() {
        for (j, step) in row.steps.iter().enumerate() {
            let hits = l_index_scan(n, m, i, j)?;
            if hits != [step.l] {
                bad.push(json!({"i": i, "j": j, "hits": hits}));
            }
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "m": m, "failures": truncated(&bad)})))
}

/// Distinct (A₁, B₁), (A₂, B₂) ∈ Xₙ*×X_m* with A₁B₁ = TᵏA₂B₂, |k| ≤ 3,
/// force a common divisor > 1 of the entries of A₁B₁.
pub fn uniqueness1(n: u64, m: u64) -> Result<CheckOutcome> {
    let xs = crate::stern::x_star(n);
    let ys = crate::stern::x_star(m);
    let mut by_product: HashMap<Mat2, Vec<(usize, usize)>> = HashMap::new();
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in ys.iter().enumerate() {
            by_product.entry(a * b).or_default().push((i, j));
        }
    }
    let mut bad = Vec::new();
    let mut collisions = 0;
    for (p, pairs) in &by_product {
        for k in -3i64..=3 {
            let q = &Mat2::t_pow(-k) * p;
            if let Some(others) = by_product.get(&q) {
                for x in pairs {
                    for y in others {
                        if x != y {
                            collisions += 1;
                            if p.content().is_one() {
                                bad.push(mat_to_json(p));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "m": m, "collisions": collisions, "failures": truncated(&bad)})))
}

/// σ_{R_i}(Bₙ) = A_{hₙ(i)} at level n.
pub fn lemma_fr(n: u64) -> Result<CheckOutcome> {
    let t = CosetTable::get(n)?;
    let bn = Mat2::b_m(n);
    let mut bad = Vec::new();
    for en in &t.entries {
        let (s, _) = sigma_phi(&t, &en.r, &bn)?;
        if s != t.entries[t.h[en.ordinal]].a_mat {
            bad.push(en.ordinal);
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "failures": truncated(&bad)})))
}

/// ρ̃ₙ(m_{s+1}⁻¹) sends l_{j,0} to l_{j,s}, with m_s the Farey matrices of
/// A_{σ(j)}·0 (so [ρ̃ₙ(m_{s+1}⁻¹)φ]_{l_{j,0}} = φ_{l_{j,s}}). The entrywise
/// reading δ_{s,r+1} additionally needs the l_{j,r} to be distinct; rows
/// where they repeat are counted in the payload.
pub fn rhotilde(n: u64, m: u64) -> Result<CheckOutcome> {
    let t = LiftTable::get(n, m)?;
    let dm = CosetTable::get(m)?;
    let mut bad = Vec::new();
    let mut repeated = 0;
    for (j, row) in t.rows.iter().enumerate() {
        let path = farey_path(&at_zero(&dm.entries[row.sigma].a_mat))?;
        if path.len() != row.steps.len() {
            bad.push(json!({"j": j, "reason": "length"}));
            continue;
        }
        let distinct: BTreeSet<usize> = row.steps.iter().map(|s| s.l).collect();
        if distinct.len() != row.steps.len() {
            repeated += 1;
        }
        let l0 = row.steps[0].l;
        for (s, (ms, step)) in path.m.iter().zip(&row.steps).enumerate() {
            if rho_tilde(n, &ms.unimodular_inverse()?)?.0[l0] != step.l {
                bad.push(json!({"j": j, "s": s + 1}));
            }
        }
    }
    Ok(verdict(
        bad.is_empty(),
        json!({"n": n, "m": m, "rows": t.rows.len(), "rowsWithRepeatedIndices": repeated, "failures": truncated(&bad)}),
    ))
}

fn in_sl2_coset(x: &Mat2, y: &Mat2) -> bool {
    // x ∈ SL(2,Z)·y iff x·y⁻¹ is integral with determinant 1.
    let det = y.det();
    (x * &y.adj()).div_exact(&det).map(|g| g.det().is_one()).unwrap_or(false)
}

/// Bₙ·B_m·R_i ∈ SL(2,Z)·A_{hₙ(σ(Φ_{B_m}(i)))}·σ_{R_i}(B_m).
pub fn lemma2(n: u64, m: u64) -> Result<CheckOutcome> {
    let big = CosetTable::get(n * m)?;
    let small = CosetTable::get(n)?;
    let down = sigma_map(n * m, n)?;
    let bnbm = &Mat2::b_m(n) * &Mat2::b_m(m);
    let mut bad = Vec::new();
    for en in &big.entries {
        let (s, phi) = sigma_phi(&big, &en.r, &Mat2::b_m(m))?;
        let target = &small.entries[small.h[down[phi]]].a_mat * &s;
        if !in_sl2_coset(&(&bnbm * &en.r), &target) {
            bad.push(en.ordinal);
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "m": m, "failures": truncated(&bad)})))
}

/// l_{h_{nm}(i),0} = hₙ(σ(Φ_{B_m}(i))) and A_{σ(h_{nm}(i))} = σ_{R_i}(B_m).
pub fn lemma_la(n: u64, m: u64) -> Result<CheckOutcome> {
    let big = CosetTable::get(n * m)?;
    let small = CosetTable::get(n)?;
    let dm = CosetTable::get(m)?;
    let lt = LiftTable::get(n, m)?;
    let down = sigma_map(n * m, n)?;
    let mut bad = Vec::new();
    for en in &big.entries {
        let (s, phi) = sigma_phi(&big, &en.r, &Mat2::b_m(m))?;
        let row = &lt.rows[big.h[en.ordinal]];
        let ok_l = row.steps[0].l == small.h[down[phi]];
        let ok_a = dm.entries[row.sigma].a_mat == s;
        if !(ok_l && ok_a) {
            bad.push(json!({"i": en.ordinal, "l": ok_l, "A": ok_a}));
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "m": m, "failures": truncated(&bad)})))
}

/// gcd(n, m) = 1, g ∈ Γ₀(n), B_m g B_m⁻¹ ∈ Γ₀(n, m) ⟹ g ∈ Γ₀(nm), on random g.
pub fn b7<R: Rng>(n: u64, m: u64, samples: usize, rng: &mut R) -> Result<CheckOutcome> {
    let mut premise = 0;
    let mut bad = Vec::new();
    for _ in 0..samples {
        let mut g = random_gamma0(rng, n, 12);
        // Bias towards the premise: multiply by a random power of (1 0; nm 1).
        if rng.gen_bool(0.5) {
            let k: i64 = rng.gen_range(-3..=3);
            g = &g * &Mat2::new(1, 0, k * (n * m) as i64, 1);
        }
        if let Ok(conj) = bar_map(m, &g) {
            if membership(&conj, GroupSpec::Gamma0nm { n, m }) {
                premise += 1;
                if !membership(&g, GroupSpec::Gamma0 { n: n * m }) {
                    bad.push(mat_to_json(&g));
                }
            }
        }
    }
    Ok(verdict(
        bad.is_empty() && premise > 0,
        json!({"n": n, "m": m, "samples": samples, "premiseHits": premise, "failures": truncated(&bad)}),
    ))
}

fn is_rep_system(level_small: u64, level_big: u64, reps: &[Mat2]) -> Result<(bool, Value)> {
    let expected = gamma0_index(level_big) / gamma0_index(level_small);
    let inside = reps.iter().all(|r| membership(r, GroupSpec::Gamma0 { n: level_small }));
    let keys: BTreeSet<_> = reps.iter().map(|r| coset_key(level_big, r)).collect::<Result<_>>()?;
    let ok = inside && reps.len() as u64 == expected && keys.len() == reps.len();
    Ok((ok, json!({"size": reps.len(), "expected": expected, "inGroup": inside, "distinct": keys.len()})))
}

/// Bar images (by p) of representatives of Γ₀(p^{e+1}n)\Γ₀(pn) represent
/// Γ₀(pᵉn)\Γ₀(n), for p | n.
pub fn bar_rep_b3(n: u64, p: u64, e: u32) -> Result<CheckOutcome> {
    let rs = rep_system(p * n, p.pow(e))?;
    let bars: Vec<Mat2> = rs.reps.iter().map(|r| bar_map(p, r)).collect::<Result<_>>()?;
    let (ok, mut payload) = is_rep_system(n, p.pow(e) * n, &bars)?;
    payload["n"] = json!(n);
    payload["p"] = json!(p);
    payload["e"] = json!(e);
    Ok(verdict(ok, payload))
}

/// Bar images (by m) of representatives of Γ₀(mm′n)\Γ₀(mn) represent
/// Γ₀(m′n)\Γ₀(n), for coprime m, m′.
pub fn bar_rep_b5(n: u64, m: u64, m2: u64) -> Result<CheckOutcome> {
    let rs = rep_system(m * n, m2)?;
    let bars: Vec<Mat2> = rs.reps.iter().map(|r| bar_map(m, r)).collect::<Result<_>>()?;
    let (ok, mut payload) = is_rep_system(n, m2 * n, &bars)?;
    payload["n"] = json!(n);
    payload["m"] = json!(m);
    payload["m2"] = json!(m2);
    Ok(verdict(ok, payload))
}

/// rep_system(n, m) is a disjoint system of the right size inside Γ₀(n).
pub fn rep_disjoint(n: u64, m: u64) -> Result<CheckOutcome> {
    let rs = rep_system(n, m)?;
    let (ok, mut payload) = is_rep_system(n, n * m, &rs.reps)?;
    payload["n"] = json!(n);
    payload["m"] = json!(m);
    Ok(verdict(ok, payload))
}

/// Ĥₙ,ₘ and Ĥₙ,ₘĤₙ,ₘ′ do not depend on the representatives chosen.
pub fn rep_independence<R: Rng>(n: u64, m: u64, m2: u64, trials: usize, rng: &mut R) -> Result<CheckOutcome> {
    let base = h_hat_coset_sum(n, m)?;
    let base_prod = coset_sum_product(&h_hat_raw(n, m)?, &h_hat_raw(n, m2)?)?;
    let mut bad = 0;
    for _ in 0..trials {
        let x = h_hat_raw_with(n, m, |_, r| &random_gamma0(rng, n * m, 6) * r)?;
        let y = h_hat_raw_with(n, m2, |_, r| &random_gamma0(rng, n * m2, 6) * r)?;
        if x.coset_sum()? != base || coset_sum_product(&x, &y)? != base_prod {
            bad += 1;
        }
    }
    Ok(verdict(bad == 0, json!({"n": n, "m": m, "m2": m2, "trials": trials, "failures": bad})))
}

/// ρ(g) = Hₙ⁻¹ρ̃(g)Hₙ on T, S and random words.
pub fn rho_equivalence<R: Rng>(n: u64, words: usize, rng: &mut R) -> Result<CheckOutcome> {
    let h = h_matrix(n)?;
    let hi = h.inverse();
    let mut gs = vec![Mat2::t(), Mat2::s(), Mat2::t_prime()];
    gs.extend((0..words).map(|_| random_sl2(rng, 10)));
    let mut bad = Vec::new();
    for g in &gs {
        if rho(n, g)? != hi.mul(&rho_tilde(n, g)?).mul(&h) {
            bad.push(mat_to_json(g));
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "words": gs.len(), "failures": truncated(&bad)})))
}

/// ρ(g₁g₂) = ρ(g₁)ρ(g₂) and likewise for ρ̃, on random pairs.
pub fn rho_homomorphism<R: Rng>(n: u64, pairs: usize, rng: &mut R) -> Result<CheckOutcome> {
    let mut bad = 0;
    for _ in 0..pairs {
        let g1 = random_sl2(rng, 8);
        let g2 = random_sl2(rng, 8);
        let g = &g1 * &g2;
        if rho(n, &g)? != rho(n, &g1)?.mul(&rho(n, &g2)?) {
            bad += 1;
        }
        if rho_tilde(n, &g)? != rho_tilde(n, &g1)?.mul(&rho_tilde(n, &g2)?) {
            bad += 1;
        }
    }
    Ok(verdict(bad == 0, json!({"n": n, "pairs": pairs, "failures": bad})))
}

/// The scalar seed satisfies the scalar three-term equation.
pub fn scalar_seed(seed: Seed, beta: Beta, mode: CheckMode) -> Result<CheckOutcome> {
    let v = PeriodVector::new(1, seed, beta, vec![FormalSum::one()]);
    let rep = lewis_check_function(&v, Representation::Rho, mode)?;
    Ok(verdict(rep.passed(), json!({"seed": seed.name(), "beta": beta.to_string(), "mode": mode.name()})))
}

/// Floating point spot check of T̃ closure at complex β.
pub fn t_closure_float(n: u64, m: u64, beta: Complex64) -> Result<CheckOutcome> {
    t_closure(n, m, Seed::Eisenstein, Beta::Complex(beta), CheckMode::Float)
}

/// coset_key(n, γg) = coset_key(n, g) for random γ ∈ Γ₀(n) and random g of
/// determinant ≤ 6, and g = γ'·A reconstructs from its Hermite factorization.
pub fn coset_key_invariance<R: Rng>(n: u64, samples: usize, rng: &mut R) -> Result<CheckOutcome> {
    let mut bad = Vec::new();
    for _ in 0..samples {
        let det: i64 = rng.gen_range(1..=6);
        let b: i64 = rng.gen_range(-5..=5);
        let g = &random_sl2(rng, 6) * &Mat2::new(1, b, 0, det);
        let gamma = random_gamma0(rng, n, 8);
        let (u, a) = hnf_decompose(&g)?;
        let rebuilt = &u * &a == g && u.det().is_one();
        if !rebuilt || coset_key(n, &(&gamma * &g))? != coset_key(n, &g)? {
            bad.push(mat_to_json(&g));
        }
    }
    Ok(verdict(bad.is_empty(), json!({"n": n, "samples": samples, "failures": truncated(&bad)})))
}

/// (f|g)|h = f|(gh) at exact points, for random g, h of small determinant.
pub fn slash_right_action<R: Rng>(seed: Seed, beta: u32, samples: usize, rng: &mut R) -> Result<CheckOutcome> {
    let mut bad = 0;
    let mut used = 0;
    for k in 0..samples {
        let g = &random_sl2(rng, 5) * &Mat2::new(1, rng.gen_range(0..3i64), 0, rng.gen_range(1..4i64));
        let h = &random_sl2(rng, 5) * &Mat2::new(rng.gen_range(1..4i64), 0, rng.gen_range(0..3i64), 1);
        let z = exact_point(k);
        // Evaluate (f|g)|h at z directly: |det h|^β (cz+d)^{−2β} (f|g)(hz).
        let hz_den = &BigRational::from_integer(h.c.clone()) * &z + BigRational::from_integer(h.d.clone());
        if hz_den.is_zero() {
            continue;
        }
        let hz = (&BigRational::from_integer(h.a.clone()) * &z + BigRational::from_integer(h.b.clone())) / &hz_den;
        let lhs = slash_eval_exact(seed, beta, &FormalSum::from_mat(g.clone()), &hz);
        let rhs = slash_eval_exact(seed, beta, &FormalSum::from_mat(&g * &h), &z);
        let (Ok(lhs), Ok(rhs)) = (lhs, rhs) else { continue };
        let factor = num_traits::pow(BigRational::from_integer(h.det().abs()), beta as usize)
            / num_traits::pow(hz_den, 2 * beta as usize);
        used += 1;
        if lhs * factor != rhs {
            bad += 1;
        }
    }
    Ok(verdict(bad == 0 && used > 0, json!({"seed": seed.name(), "beta": beta, "samples": used, "failures": bad})))
}

/// Multiset of classes hit by the images of every A ∈ X_m* at level n,
/// for display.
pub fn coset_multiplicities(n: u64, m: u64) -> Result<BTreeMap<String, u64>> {
    Ok(h_hat_coset_sum(n, m)?
        .keys
        .iter()
        .map(|(k, &v)| (format!("[{}:{}]{}", k.class.0, k.class.1, k.hnf), v))
        .collect())
}

/// Σ_{A ∈ S_m, A primitive} and Σ_{A ∈ S_m} of 1/z slashed, as multiples of 1/z.
pub fn inverse_z_sums_over_s(m: u64) -> Result<(BigRational, BigRational)> {
    let s = matrix_sets(m)?.s;
    let z = BigRational::from_integer(BigInt::from(3));
    let base = slash_eval_exact(Seed::InverseZ, 1, &FormalSum::one(), &z)?;
    let all = FormalSum::from_terms(s.iter().map(|a| (a.clone(), BigInt::one())));
    let prim = FormalSum::from_terms(s.iter().filter(|a| a.content().is_one()).map(|a| (a.clone(), BigInt::one())));
    let ratio = |w: &FormalSum| -> Result<BigRational> { Ok(slash_eval_exact(Seed::InverseZ, 1, w, &z)? / &base) };
    Ok((ratio(&prim)?, ratio(&all)?))
}

/// Whether a rational is zero; small helper for callers outside the crate.
pub fn is_zero(x: &BigRational) -> bool {
    x.is_zero()
}

/// The Hermite factor of g, exposed for oracles.
pub fn hermite_factor(g: &Mat2) -> Result<Mat2> {
    Ok(hnf_decompose(g)?.1)
}
