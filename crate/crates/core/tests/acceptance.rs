//! Acceptance harness: runs criteria 1–12 and prints one line per criterion.
//!
//! Each criterion is checked through the library and, where possible,
//! against an oracle written here from first principles (brute-force
//! enumeration, direct K iteration, left-neighbour Farey chains). Two
//! criteria state values that the faithful computation does not reproduce
//! (T̃₁,₄(1/z) and the uniform lower coefficient at e = 1). They print FAIL
//! with the observed values; the harness only aborts when an outcome differs
//! from what was established and documented.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hecke_lab::arith::{gamma0_index, gcd, primes_up_to};
use hecke_lab::checks::{self, CheckOutcome};
use hecke_lab::cosets::CosetTable;
use hecke_lab::formal::{
    check_vanishing, lewis_check_function, slash_eval_exact, Beta, CheckMode, FormalSum, PeriodVector, Representation,
    Seed, Status,
};
use hecke_lab::hecke::{h_hat_coset_sum, relation_sides, t_tilde_apply, verify_t_relation, LowerCoefficient, Relation};
use hecke_lab::stern::{farey_path, matrix_sets, psi_total, psi_vector};
use hecke_lab::Mat2;

type M = [i64; 4];

fn mat(m: M) -> Mat2 {
    Mat2::new(m[0], m[1], m[2], m[3])
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// |P¹(Z/n)| = #{(c, d) mod n : gcd(c, d, n) = 1} / φ(n).
fn p1_count_brute(n: u64) -> u64 {
    let units = (0..n).filter(|&k| gcd(k, n) == 1).count() as u64;
    let pairs =
        (0..n).flat_map(|c| (0..n).map(move |d| (c, d))).filter(|&(c, d)| gcd(gcd(c, d), n) == 1).count() as u64;
    pairs / units.max(1)
}

/// S_n by exhaustive search: a > c ≥ 0, d > b ≥ 0, ad − bc = n.
/// (a > c and d > b give ad − bc ≥ a + d − 1, so a, d ≤ n.)
fn s_brute(n: i64) -> Vec<M> {
    let mut out = Vec::new();
    for a in 1..=n {
        for d in 1..=n {
            for c in 0..a {
                for b in 0..d {
                    if a * d - b * c == n {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// K written out from its defining formula with ⌈d/b⌉.
fn k_direct(m: M) -> M {
    let [a, b, c, d] = m;
    let k = (d + b - 1) / b;
    [k * a - c, k * b - d, a, b]
}

/// The K-orbit of A up to its first member with b = 0.
fn k_orbit_direct(m: M) -> Vec<M> {
    let mut out = vec![m];
    let mut cur = m;
    while cur[1] != 0 {
        cur = k_direct(cur);
        out.push(cur);
        assert!(out.len() < 10_000, "K iteration from {m:?} does not stop");
    }
    out
}

/// The Farey path to a/b built backwards: each point's predecessor is its
/// left neighbour with smaller denominator, ending at 0/1 and then −1/0.
/// Returns (points, m_1..m_L) with m_r = (b_r −a_r; b_{r−1} −a_{r−1}).
fn farey_oracle(a: i64, b: i64) -> (Vec<(i64, i64)>, Vec<M>) {
    let mut pts = vec![(a, b)];
    let (mut x, mut y) = (a, b);
    while y > 0 {
        if (x, y) == (0, 1) {
            pts.push((-1, 0));
            break;
        }
        // Predecessor (x', y'): x'·y − x·y' = −1 with 0 < y' < y.
        let yp = (1..y).find(|&yp| (x * yp - 1) % y == 0).expect("reduced fraction has a left neighbour");
        let xp = (x * yp - 1) / y;
        pts.push((xp, yp));
        x = xp;
        y = yp;
    }
    pts.reverse();
    let ms = (1..pts.len()).map(|r| [pts[r].1, -pts[r].0, pts[r - 1].1, -pts[r - 1].0]).collect();
    (pts, ms)
}

/// X_n by enumeration: (a b; 0 d), ad = n, 0 ≤ b < d.
fn x_brute(n: i64) -> Vec<M> {
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a == 0 {
            let d = n / a;
            for b in 0..d {
                out.push([a, b, 0, d]);
            }
        }
    }
    out
}

fn gcd_i(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// (1/z)|h at z for h = (a b; c d): det / ((cz + d)(az + b)).
fn inverse_z_slash(h: M, z: &BigRational) -> BigRational {
    let [a, b, c, d] = h;
    let det = BigRational::from_integer(BigInt::from(a * d - b * c));
    let l = BigRational::from_integer(c.into()) * z + BigRational::from_integer(d.into());
    let r = BigRational::from_integer(a.into()) * z + BigRational::from_integer(b.into());
    det / (l * r)
}

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

struct Line {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Line {
    Line { ok: true, detail: detail.into() }
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn must(o: hecke_lab::Result<CheckOutcome>, what: &str) -> CheckOutcome {
    o.unwrap_or_else(|e| panic!("{what}: {e}"))
}

fn expect_pass(o: hecke_lab::Result<CheckOutcome>, what: &str) {
    let o = must(o, what);
    assert!(o.passed(), "{what} failed: {}", o.payload);
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let tables: Vec<_> = (1..=60).map(|n| CosetTable::build(n).unwrap()).collect();
    let secs = start.elapsed().as_secs_f64();
    for (t, n) in tables.iter().zip(1u64..) {
        let formula = n as f64
            * primes_up_to(n).iter().filter(|&&p| n % p == 0).fold(1.0, |acc, &p| acc * (1.0 + 1.0 / p as f64));
        assert_eq!(t.len() as u64, gamma0_index(n), "n = {n}");
        assert_eq!(t.len() as f64, formula.round(), "n = {n}");
        assert_eq!(t.len() as u64, p1_count_brute(n), "brute-force P¹ count, n = {n}");
        expect_pass(checks::index_formula(n), "index formula");
        expect_pass(checks::index_bijection(n), "P_n → I_n bijection");
    }
    line(secs < 1.0, format!("|Iₙ| = n∏(1+1/q) = |P¹(Z/n)| (brute force) for n ≤ 60 in {secs:.3} s"))
}

fn criterion_2() -> Line {
    let t = CosetTable::get(2).unwrap();
    let pairs: Vec<(u64, u64, u64)> = t.entries.iter().map(|e| (e.c, e.b, e.d)).collect();
    assert_eq!(pairs, [(1, 0, 1), (1, 1, 2), (2, 0, 3)]);
    let a: Vec<Mat2> = t.entries.iter().map(|e| e.a_mat.clone()).collect();
    assert_eq!(a, [mat([1, 0, 0, 2]), mat([1, 1, 0, 2]), mat([2, 0, 0, 1])]);
    // Oracle for A: Hermite matrices (c b; 0 n/c) with gcd(c, b, n/c) = 1.
    let brute_a: Vec<Mat2> = x_brute(2).into_iter().filter(|m| gcd_i(gcd_i(m[0], m[1]), m[3]) == 1).map(mat).collect();
    assert_eq!(a, brute_a);
    // h₂ swaps (1,0) and (1,1), fixes (2,0); oracle: search j with (0 1; −2 0)R_i ∈ SL(2,Z)·A_j.
    assert_eq!(t.h, [1, 0, 2]);
    let w = mat([0, 1, -2, 0]);
    for e in &t.entries {
        let x = &w * &e.r;
        let hits: Vec<usize> = t
            .entries
            .iter()
            .filter(|f| {
                let det = f.a_mat.det();
                (&x * &f.a_mat.adj()).div_exact(&det).map(|g| g.det().is_one()).unwrap_or(false)
            })
            .map(|f| f.ordinal)
            .collect();
        assert_eq!(hits, [t.h[e.ordinal]]);
    }
    // ψ at level 2, and the same from direct K iteration.
    let psi = psi_vector(2).unwrap();
    let expected = [
        FormalSum::from_mat(mat([1, 0, 0, 2])),
        FormalSum::from_mat(mat([1, 1, 0, 2])) + FormalSum::from_mat(mat([2, 0, 1, 1])),
        FormalSum::from_mat(mat([2, 0, 0, 1])),
    ];
    assert_eq!(psi, expected);
    for (e, p) in t.entries.iter().zip(&psi) {
        let start = e.a_mat.to_i64().unwrap();
        let direct = FormalSum::from_terms(k_orbit_direct(start).into_iter().map(|m| (mat(m), BigInt::one())));
        assert_eq!(&direct, p);
    }
    // |S₃| = 7 against exhaustive enumeration.
    let s3 = matrix_sets(3).unwrap().s;
    let brute: Vec<Mat2> = s_brute(3).into_iter().map(mat).collect();
    assert_eq!(s3.len(), 7);
    assert_eq!(s3, brute);
    // Farey path of 2/3, and the left-neighbour oracle.
    let path = farey_path(&q(2, 3)).unwrap();
    assert_eq!(path.m[1], mat([2, -1, 1, 0]));
    assert_eq!(path.m[2], mat([3, -2, 2, -1]));
    let (_, ms) = farey_oracle(2, 3);
    assert_eq!(path.m, ms.into_iter().map(mat).collect::<Vec<_>>());
    pass("P₂, d₂, A-table, h₂, ψ of level 2, |S₃| = 7, Farey path of 2/3; all match brute-force oracles")
}

fn criterion_3() -> Line {
    let mut inconclusive = Vec::new();
    let mut failed = Vec::new();
    for n in 1..=30 {
        let o = must(checks::psi_residual(n, 10_000, &psi_vector(n).unwrap()), "ψ residual");
        match o.status {
            Status::Pass => {}
            Status::Inconclusive => inconclusive.push(n),
            Status::Fail => failed.push(n),
        }
    }
    line(
        failed.is_empty(),
        format!(
            "ψ residuals for n ≤ 30: {} certified by witness, inconclusive {:?}, failed {:?}",
            30 - inconclusive.len() - failed.len(),
            inconclusive,
            failed
        ),
    )
}

fn criterion_4() -> Line {
    let mut count = 0;
    for n in 1..=60u64 {
        expect_pass(checks::farey_k_coherence(n), "Farey/K coherence");
        for a in x_brute(n as i64) {
            let orbit = k_orbit_direct(a);
            let g = gcd_i(a[1], a[3]);
            let (_, ms) = farey_oracle(a[1] / g, a[3] / g);
            assert_eq!(orbit.len(), ms.len(), "k_A = L(A·0) − 1 for {a:?}");
            for (k, m) in orbit.iter().zip(&ms) {
                assert_eq!(mat(*k), &mat(*m) * &mat(a), "K^l(A) = m_(l+1)·A for {a:?}");
            }
            count += 1;
        }
    }
    pass(format!("K^l(A) = m_(l+1)A and k_A = L(A·0) − 1 for all {count} A ∈ Xₙ, n ≤ 60 (direct K iteration, left-neighbour Farey chains)"))
}

fn criterion_5() -> Line {
    for p in primes_up_to(13) {
        expect_pass(checks::psi_total_prime(p), "ψ^(p)");
        // Oracle: Σ over brute-force Hermite matrices of direct K-orbits vs brute-force S_p.
        let mut orbit_sum: BTreeMap<M, i64> = BTreeMap::new();
        for a in x_brute(p as i64).into_iter().filter(|m| gcd_i(gcd_i(m[0], m[1]), m[3]) == 1) {
            for k in k_orbit_direct(a) {
                *orbit_sum.entry(k).or_insert(0) += 1;
            }
        }
        let s: BTreeMap<M, i64> = s_brute(p as i64).into_iter().map(|m| (m, 1)).collect();
        assert_eq!(orbit_sum, s, "p = {p}");
        let lib: BTreeMap<M, i64> =
            psi_total(p).unwrap().iter().map(|(m, c)| (m.to_i64().unwrap(), i64::try_from(c).unwrap())).collect();
        assert_eq!(lib, s, "p = {p}");
    }
    pass("ψ^(p) = Σ_{A∈S_p} A as multisets for p ∈ {2,3,5,7,11,13} (library and brute-force routes)")
}

fn criterion_6() -> Line {
    for p in [2u64, 3, 5] {
        for e in 1..=4 {
            expect_pass(checks::x_star_lemma(p, e), "X* product");
            let lhs = hecke_lab::hecke::x_star_product(p, e).unwrap();
            assert_eq!(lhs.values().sum::<u64>(), gamma0_index(p) * gamma0_index(p.pow(e)));
        }
    }
    pass("X_p*·X_{p^e}* decompositions hold as exact multisets for p ∈ {2,3,5}, e ≤ 4")
}

fn criterion_7() -> Line {
    let mut counts = [0usize; 4];
    for p in [2u64, 3, 5, 7] {
        for e in 1..=7 {
            for n in (p..=200).step_by(p as usize) {
                if p.pow(e + 1) * n <= 200 {
                    expect_pass(checks::coset_relation(n, Relation::PrimeDivides { p, e }), "p | n relation");
                    counts[0] += 1;
                }
            }
        }
    }
    for n in 1..=10 {
        for p in [2u64, 3, 5] {
            if n % p != 0 {
                for e in 1..=3 {
                    expect_pass(checks::coset_relation(n, Relation::PrimeCoprime { p, e }), "p ∤ n relation");
                    counts[1] += 1;
                }
            }
        }
    }
    for n in 1..=50u64 {
        for m1 in 2..=100u64 {
            for m2 in m1 + 1..=100u64 {
                if gcd(m1, m2) == 1 && m1 * m2 * n <= 200 {
                    expect_pass(checks::coset_relation(n, Relation::Multiplicative { m1, m2 }), "multiplicativity");
                    counts[2] += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while counts[3] < 20 {
        let (n, m1, m2) = (rng.gen_range(1..=6u64), rng.gen_range(2..=8u64), rng.gen_range(2..=8u64));
        if m1 != m2 && n * m1 * m2 <= 120 {
            expect_pass(checks::coset_relation(n, Relation::Commute { m1, m2 }), "commutation");
            counts[3] += 1;
        }
    }
    // The hand-verified case: Ĥ₂Ĥ₂ at level 1 has 9 cosets = 6 of Ĥ₄ + 3 copies of (2 0; 0 2).
    let sides = relation_sides(1, Relation::PrimeCoprime { p: 2, e: 1 }).unwrap();
    assert_eq!(sides.lhs.total(), 9);
    assert_eq!(h_hat_coset_sum(1, 4).unwrap().total(), 6);
    let two_i = hecke_lab::gl2::coset_key(1, &Mat2::scalar(2)).unwrap();
    assert_eq!(sides.lhs.keys.get(&two_i), Some(&3));
    pass(format!(
        "coset sum relations: {} p|n, {} p∤n, {} multiplicative, {} commuting pairs; 9 = 6 + 3 at (n, p, e) = (1, 2, 1)",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn criterion_8() -> Line {
    // Hand check for p = 2: the four S₂ terms applied to 1/z sum to 3/z.
    for k in 1..6 {
        let z = q(2 * k + 1, k + 3);
        let sum: BigRational = s_brute(2).into_iter().map(|h| inverse_z_slash(h, &z)).sum();
        assert_eq!(sum, BigRational::from_integer(3.into()) / &z);
    }
    for p in [2u64, 3, 5, 7] {
        expect_pass(checks::eigenvalue(p, p as i64 + 1), "prime eigenvalue");
    }
    let four = must(checks::eigenvalue(4, 7), "T̃₁,₄");
    let observed = four.payload["observed"].as_str().unwrap_or("none").to_string();
    // Oracle: over S₄, the primitive members give 6/z and all members 7/z.
    let (prim, all) = checks::inverse_z_sums_over_s(4).unwrap();
    assert_eq!(prim, BigRational::from_integer(6.into()));
    assert_eq!(all, BigRational::from_integer(7.into()));
    assert_eq!(observed, "6", "documented value of T̃₁,₄(1/z)");
    line(
        four.passed(),
        format!(
            "T̃₁,ₚ(1/z) = (p+1)/z for p ∈ {{2,3,5,7}} pass; T̃₁,₄(1/z) observed {observed}/z, stated 7/z \
             (documented deviation: T̃₁,₄ sums primitive matrices only, Σ over primitive S₄ = 6/z, over all S₄ = 7/z)"
        ),
    )
}

fn criterion_9() -> Line {
    let seeds = [(Seed::InverseZ, Beta::Int(1)), (Seed::Eisenstein, Beta::Int(1)), (Seed::Eisenstein, Beta::Int(2))];
    let mut count = 0;
    for n in 1..=6 {
        for m in 1..=6 {
            for (seed, beta) in seeds {
                expect_pass(checks::t_closure(n, m, seed, beta, CheckMode::Exact), "T̃ closure");
                count += 1;
            }
        }
    }
    // The literal point-sampling route agrees on small cases.
    for (n, m) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        for (seed, beta) in seeds {
            expect_pass(checks::t_closure(n, m, seed, beta, CheckMode::Sampled), "T̃ closure, sampled");
        }
    }
    let beta = Complex64::new(0.5, 14.0);
    let mut float = 0;
    for (n, m) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        expect_pass(checks::t_closure_float(n, m, beta), "T̃ closure, floating point");
        float += 1;
    }
    pass(format!("T̃ₙ,ₘ outputs solve the level-n equation: {count} exact cases (n, m ≤ 6, three seeds), {float} floating spot checks at β = 0.5+14i"))
}

fn criterion_10() -> Line {
    for (n, m) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let o = must(checks::induce_route(n, m, 20), "induced old vector");
        assert!(o.passed(), "({n}, {m}): {}", o.payload);
        assert_eq!(o.payload["formallyEqual"], true);
    }
    pass("induced old vector = H-permuted lift at 20 rational points (and formally) for the five (n, m)")
}

fn criterion_11() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = Vec::new();
    for n in 1..=60u64 {
        for m in 2..=60 / n {
            pairs.push((n, m));
        }
    }
    let mut runs = 0;
    for &(n, m) in &pairs {
        expect_pass(checks::uniqueness(n, m), "uniqueness");
        expect_pass(checks::h_sigma(n, m), "h sigma");
        expect_pass(checks::lemma2(n, m), "lemma2");
        expect_pass(checks::lemma_la(n, m), "lA");
        expect_pass(checks::rep_disjoint(n, m), "rep system");
        if gcd(n, m) == 1 {
            expect_pass(checks::b7(n, m, 100, &mut rng), "B7");
        }
        runs += 5;
        if n * m <= 36 {
            expect_pass(checks::rhotilde(n, m), "rhotilde");
            expect_pass(checks::l_index_unique(n, m), "lemma 1");
            expect_pass(checks::uniqueness1(n, m), "uniqueness 1");
            expect_pass(checks::rep_independence(n, m, if m == 2 { 3 } else { 2 }, 4, &mut rng), "rep independence");
            runs += 4;
        }
    }
    for n in 1..=60 {
        expect_pass(checks::lemma_fr(n), "lemma Fr");
        expect_pass(checks::h_bijection(n), "h bijection");
        expect_pass(checks::rho_equivalence(n, 10, &mut rng), "ρ ≅ ρ̃");
        runs += 3;
    }
    for n in 1..=12 {
        expect_pass(checks::rho_homomorphism(n, 100, &mut rng), "ρ homomorphism");
    }
    for n in 1..=20u64 {
        for p in [2u64, 3, 5] {
            for e in 1..=3 {
                if n % p == 0 && p.pow(e + 1) * n <= 200 {
                    expect_pass(checks::bar_rep_b3(n, p, e), "B3");
                }
            }
        }
        for (m, m2) in [(2, 3), (3, 2), (2, 5), (3, 4), (4, 3)] {
            if m * m2 * n <= 200 {
                expect_pass(checks::bar_rep_b5(n, m, m2), "B5");
            }
        }
    }
    pass(format!("{runs} structural checks over {} pairs with nm ≤ 60 (nm ≤ 36 for the lift lemmas), plus ρ homomorphism and bar-map systems", pairs.len()))
}

fn criterion_12() -> Line {
    let seeds = [(Seed::InverseZ, Beta::Int(1)), (Seed::Eisenstein, Beta::Int(1)), (Seed::Eisenstein, Beta::Int(2))];
    let mut uniform_failures = BTreeSet::new();
    let mut predicted = BTreeSet::new();
    let mut cases = 0;
    for n in 1..=4u64 {
        let psi = psi_vector(n).unwrap();
        for p in [2u64, 3] {
            for e in 1..=2 {
                for (seed, beta) in seeds {
                    let v = PeriodVector::new(n, seed, beta, psi.clone());
                    let coset = verify_t_relation(p, e, &v, LowerCoefficient::CosetSum, CheckMode::Exact).unwrap();
                    assert!(coset.holds(), "coset-consistent relation (n, p, e) = ({n}, {p}, {e}) on {}", seed.name());
                    let uniform = verify_t_relation(p, e, &v, LowerCoefficient::Uniform, CheckMode::Exact).unwrap();
                    if !uniform.holds() {
                        uniform_failures.insert((n, p, e, seed.name(), beta.to_string()));
                    }
                    if e == 1 && n % p != 0 {
                        predicted.insert((n, p, e, seed.name(), beta.to_string()));
                    }
                    cases += 1;
                }
            }
        }
    }
    assert_eq!(uniform_failures, predicted, "the uniform form fails exactly at e = 1, p ∤ n");
    // The T̃ side agrees with a direct eigenvalue reading at level 1.
    let v = PeriodVector::new(1, Seed::InverseZ, Beta::Int(1), vec![FormalSum::one()]);
    let t2 = t_tilde_apply(1, 2, &v).unwrap();
    let lewis = lewis_check_function(&t2, Representation::Rho, CheckMode::Exact).unwrap();
    assert!(lewis.passed());
    let zero = &t_tilde_apply(1, 2, &t2).unwrap().weights[0]
        - &(t_tilde_apply(1, 4, &v).unwrap().weights[0].clone() + FormalSum::one().scale(&BigInt::from(3)));
    assert_eq!(check_vanishing(Seed::InverseZ, Beta::Int(1), &zero, CheckMode::Exact).unwrap().status, Status::Pass);
    assert!(slash_eval_exact(Seed::InverseZ, 1, &zero, &q(1, 2)).unwrap().is_zero());
    line(
        uniform_failures.is_empty(),
        format!(
            "stated form (lower coefficient p): {} of {cases} cases fail, exactly those with e = 1, p ∤ n (documented deviation); \
             form with p+1 at e = 1: all {cases} hold, Eisenstein seeds included",
            uniform_failures.len()
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Line); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    // Criteria whose stated values differ from the faithful computation.
    const DOCUMENTED: [u32; 2] = [8, 12];
    let total = Instant::now();
    let mut failing = Vec::new();
    for (k, f) in criteria {
        let start = Instant::now();
        let l = f();
        if !l.ok {
            failing.push(k);
        }
        println!(
            "criterion {k:>2}: {}  [{:.2} s] {}",
            if l.ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            l.detail
        );
    }
    println!(
        "acceptance: {}/12 criteria pass, failing {:?} (documented deviations: {:?}); total {:.1} s",
        12 - failing.len(),
        failing,
        DOCUMENTED,
        total.elapsed().as_secs_f64()
    );
    let unexpected: Vec<u32> = failing.iter().copied().filter(|k| !DOCUMENTED.contains(k)).collect();
    if !unexpected.is_empty() {
        eprintln!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
