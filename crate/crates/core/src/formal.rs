//! Formal integer combinations of matrices, the slash action on closed-form
//! seed functions, and checks of the (vector valued) three-term equation.
//!
//! A seed function f together with a formal sum w = Σ cₖ hₖ denotes the
//! function f|w = Σ cₖ f|_β hₖ where
//! (f|_β h)(z) = |det h|^β (cz + d)^{−2β} f(hz).
//!
//! Exact identities are decided in two independent ways: by evaluating at
//! rational points, and by reducing to a partial-fraction normal form. For
//! the seeds used here every term f|_β h is a combination of (z − r)^{−k}
//! and constants, so the normal form is a finite map from (pole, order) to a
//! rational coefficient, and two sums are equal as functions iff their
//! normal forms agree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cosets::{rho, rho_tilde, Permutation};
use crate::error::{domain, Error, Result};
use crate::gl2::Mat2;

/// A finite sum Σ cₖ·hₖ with nonzero integer coefficients and nonsingular
/// matrices, kept in canonical (sorted) order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Mat2, BigInt>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn one() -> Self {
        FormalSum::from_mat(Mat2::identity())
    }

    pub fn from_mat(m: Mat2) -> Self {
        FormalSum::from_terms([(m, BigInt::one())])
    }

    /// Builds a sum, merging repeated matrices. Panics on a singular matrix;
    /// use [`FormalSum::try_from_terms`] for untrusted input.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mat2, BigInt)>) -> Self {
        FormalSum::try_from_terms(terms).expect("formal sums hold nonsingular matrices")
    }

    pub fn try_from_terms(terms: impl IntoIterator<Item = (Mat2, BigInt)>) -> Result<Self> {
        let mut s = FormalSum::zero();
        for (m, c) in terms {
            if m.det().is_zero() {
                return Err(domain!("singular matrix {m} in formal sum"));
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    /// The element 1 − T − T′.
    pub fn lewis_generator() -> Self {
        FormalSum::from_terms([
            (Mat2::identity(), BigInt::one()),
            (Mat2::t(), BigInt::from(-1)),
            (Mat2::t_prime(), BigInt::from(-1)),
        ])
    }

    fn add_term(&mut self, m: Mat2, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`FormalSum::is_zero`]: the zero sum has no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mat2, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mat2) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Mat2> {
        self.terms.keys()
    }

    /// Whether every matrix has nonnegative entries and positive determinant.
    pub fn is_r_plus(&self) -> bool {
        self.terms.keys().all(|m| m.is_nonnegative() && m.det().is_positive())
    }

    /// Σ |cₖ|, the number of terms counted with multiplicity.
    pub fn weight(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn scale(&self, k: &BigInt) -> FormalSum {
        if k.is_zero() {
            return FormalSum::zero();
        }
        FormalSum { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// self·h.
    pub fn mul_mat(&self, h: &Mat2) -> FormalSum {
        FormalSum::from_terms(self.terms.iter().map(|(m, c)| (m * h, c.clone())))
    }

    /// h·self.
    pub fn mat_mul(&self, h: &Mat2) -> FormalSum {
        FormalSum::from_terms(self.terms.iter().map(|(m, c)| (h * m, c.clone())))
    }

    /// Ring product self·other.
    pub fn mul_sum(&self, other: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                out.add_term(x * y, cx * cy);
            }
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}·{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, o: &FormalSum) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for FormalSum {
    type Output = FormalSum;
    fn add(mut self, o: FormalSum) -> FormalSum {
        self += &o;
        self
    }
}

impl Add for &FormalSum {
    type Output = FormalSum;
    fn add(self, o: &FormalSum) -> FormalSum {
        let mut s = self.clone();
        s += o;
        s
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &FormalSum {
    type Output = FormalSum;
    fn sub(self, o: &FormalSum) -> FormalSum {
        self + &(-o)
    }
}

impl Sub for FormalSum {
    type Output = FormalSum;
    fn sub(self, o: FormalSum) -> FormalSum {
        &self - &o
    }
}

impl Mul for &FormalSum {
    type Output = FormalSum;
    fn mul(self, o: &FormalSum) -> FormalSum {
        self.mul_sum(o)
    }
}

/// Closed-form solutions of the scalar three-term equation used as test
/// vectors, plus a constant function that is deliberately not a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Seed {
    /// z ↦ 1/z, a solution for β = 1.
    InverseZ,
    /// z ↦ 1 − z^{−2β}, a solution for every β.
    Eisenstein,
    /// z ↦ 1, never a solution.
    Constant,
}

impl Seed {
    pub fn name(&self) -> &'static str {
        match self {
            Seed::InverseZ => "inversez",
            Seed::Eisenstein => "eisenstein",
            Seed::Constant => "constant",
        }
    }

    pub fn parse(s: &str) -> Result<Seed> {
        match s {
            "inversez" => Ok(Seed::InverseZ),
            "eisenstein" => Ok(Seed::Eisenstein),
            "constant" => Ok(Seed::Constant),
            _ => Err(Error::Usage(format!("unknown seed '{s}' (inversez|eisenstein|constant)"))),
        }
    }
}

/// The spectral parameter: a positive integer for exact work, or complex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Beta {
    Int(u32),
    Complex(Complex64),
}

impl Beta {
    pub fn as_int(&self) -> Option<u32> {
        match self {
            Beta::Int(b) => Some(*b),
            Beta::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        match self {
            Beta::Int(b) => Complex64::new(*b as f64, 0.0),
            Beta::Complex(c) => *c,
        }
    }

    /// Parses "2", "0.5+14i", "0.5-14.13i" or "3i".
    pub fn parse(s: &str) -> Result<Beta> {
        let s = s.trim();
        if let Ok(k) = s.parse::<u32>() {
            return Ok(Beta::Int(k));
        }
        let bad = || Error::Usage(format!("cannot parse beta '{s}'"));
        if let Some(body) = s.strip_suffix('i') {
            let split = body.char_indices().skip(1).filter(|&(_, ch)| ch == '+' || ch == '-').map(|(i, _)| i).last();
            let (re, im) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => 1.0,
                "-" => -1.0,
                x => x.parse::<f64>().map_err(|_| bad())?,
            };
            let re = re.parse::<f64>().map_err(|_| bad())?;
            return Ok(Beta::Complex(Complex64::new(re, im)));
        }
        s.parse::<f64>().map(|x| Beta::Complex(Complex64::new(x, 0.0))).map_err(|_| bad())
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Int(b) => write!(f, "{b}"),
            Beta::Complex(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Beta::Complex(c) if c.im < 0.0 => write!(f, "{}{}i", c.re, c.im),
            Beta::Complex(c) => write!(f, "{}+{}i", c.re, c.im),
        }
    }
}

/// A vector over Iₙ of formal sums, denoting the functions seed|_β wᵢ.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodVector {
    pub n: u64,
    pub beta: Beta,
    pub seed: Seed,
    pub weights: Vec<FormalSum>,
}

impl PeriodVector {
    pub fn new(n: u64, seed: Seed, beta: Beta, weights: Vec<FormalSum>) -> Self {
        PeriodVector { n, beta, seed, weights }
    }

    pub fn with_weights(&self, n: u64, weights: Vec<FormalSum>) -> Self {
        PeriodVector { n, beta: self.beta, seed: self.seed, weights }
    }

    pub fn term_count(&self) -> usize {
        self.weights.iter().map(FormalSum::len).sum()
    }
}

/// A term of the partial-fraction normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Constant,
    /// (z − pole)^{−order}.
    Pole(BigRational, u32),
}

/// A rational function Σ coeff·atom in partial-fraction normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleForm {
    terms: BTreeMap<Atom, BigRational>,
}

impl PoleForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &BigRational)> {
        self.terms.iter()
    }

    fn add(&mut self, atom: Atom, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(atom.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&atom);
        }
    }

    pub fn add_scaled(&mut self, other: &PoleForm, k: &BigRational) {
        for (a, c) in &other.terms {
            self.add(a.clone(), c * k);
        }
    }

    /// Adds c·(pz + q)^{−k}.
    fn add_linear_power(&mut self, p: &BigInt, q: &BigInt, k: u32, c: BigRational) {
        if k == 0 {
            self.add(Atom::Constant, c);
        } else if p.is_zero() {
            let qk = BigRational::from_integer(q.pow(k));
            self.add(Atom::Constant, c / qk);
        } else {
            let pk = BigRational::from_integer(p.pow(k));
            let pole = BigRational::new(-q, p.clone());
            self.add(Atom::Pole(pole, k), c / pk);
        }
    }

    /// Evaluates at a rational point, failing on a pole.
    pub fn eval(&self, z: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (a, c) in &self.terms {
            match a {
                Atom::Constant => acc += c,
                Atom::Pole(p, k) => {
                    let base = z - p;
                    if base.is_zero() {
                        return Err(Error::Pole { point: z.to_string(), term: format!("pole {p}") });
                    }
                    acc += c / pow_rat(&base, *k);
                }
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for PoleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| match a {
                Atom::Constant => format!("{c}"),
                Atom::Pole(p, k) => format!("{c}·(z − {p})^-{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

fn exact_beta(seed: Seed, beta: u32) -> Result<u32> {
    if beta == 0 {
        return Err(domain!("exact mode needs a positive integer beta"));
    }
    if seed == Seed::InverseZ && beta != 1 {
        return Err(domain!("the seed 1/z is only defined here for beta = 1"));
    }
    Ok(beta)
}

/// Normal form of seed|_β h.
pub fn slash_normal_form_mat(seed: Seed, beta: u32, h: &Mat2) -> Result<PoleForm> {
    let beta = exact_beta(seed, beta)?;
    let det = h.det();
    if det.is_zero() {
        return Err(Error::Singular(h.to_string()));
    }
    let mut out = PoleForm::default();
    let scale = BigRational::from_integer(det.abs().pow(beta));
    match seed {
        Seed::InverseZ => {
            // |det|/((cz+d)(az+b)) = sign(det)·(a/(az+b) − c/(cz+d)).
            let s = BigRational::from_integer(det.signum());
            if !h.a.is_zero() {
                out.add(Atom::Pole(BigRational::new(-&h.b, h.a.clone()), 1), s.clone());
            }
            if !h.c.is_zero() {
                out.add(Atom::Pole(BigRational::new(-&h.d, h.c.clone()), 1), -s);
            }
        }
        Seed::Eisenstein => {
            // |det|^β ((cz+d)^{−2β} − (az+b)^{−2β}).
            out.add_linear_power(&h.c, &h.d, 2 * beta, scale.clone());
            out.add_linear_power(&h.a, &h.b, 2 * beta, -scale);
        }
        Seed::Constant => out.add_linear_power(&h.c, &h.d, 2 * beta, scale),
    }
    Ok(out)
}

/// Normal form of seed|_β w.
pub fn slash_normal_form(seed: Seed, beta: u32, w: &FormalSum) -> Result<PoleForm> {
    let mut out = PoleForm::default();
    for (h, c) in w.iter() {
        let nf = slash_normal_form_mat(seed, beta, h)?;
        out.add_scaled(&nf, &BigRational::from_integer(c.clone()));
    }
    Ok(out)
}

fn seed_exact(seed: Seed, beta: u32, w: &BigRational) -> Option<BigRational> {
    match seed {
        Seed::InverseZ => (!w.is_zero()).then(|| w.recip()),
        Seed::Eisenstein => (!w.is_zero()).then(|| BigRational::one() - pow_rat(&w.recip(), 2 * beta)),
        Seed::Constant => Some(BigRational::one()),
    }
}

/// (seed|_β h)(z) evaluated literally: |det h|^β (cz+d)^{−2β} seed(hz).
pub fn slash_eval_mat_exact(seed: Seed, beta: u32, h: &Mat2, z: &BigRational) -> Result<BigRational> {
    let beta = exact_beta(seed, beta)?;
    let to_r = |x: &BigInt| BigRational::from_integer(x.clone());
    let denom = to_r(&h.c) * z + to_r(&h.d);
    let pole = || Error::Pole { point: z.to_string(), term: h.to_string() };
    if denom.is_zero() {
        return Err(pole());
    }
    let hz = (to_r(&h.a) * z + to_r(&h.b)) / &denom;
    let f = seed_exact(seed, beta, &hz).ok_or_else(pole)?;
    let det = BigRational::from_integer(h.det().abs().pow(beta));
    Ok(det * f / pow_rat(&denom, 2 * beta))
}

pub fn slash_eval_exact(seed: Seed, beta: u32, w: &FormalSum, z: &BigRational) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (h, c) in w.iter() {
        acc += slash_eval_mat_exact(seed, beta, h, z)? * BigRational::from_integer(c.clone());
    }
    Ok(acc)
}

fn cpow(base: Complex64, exponent: Complex64) -> Complex64 {
    (base.ln() * exponent).exp()
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

/// (seed|_β h)(z) in floating point with principal branches on C∖(−∞, 0].
pub fn slash_eval_mat_float(seed: Seed, beta: Complex64, h: &Mat2, z: Complex64) -> Result<Complex64> {
    if on_cut(z) {
        return Err(domain!("z = {z} lies on the branch cut"));
    }
    let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
    let (a, b, c, d) = (f(&h.a), f(&h.b), f(&h.c), f(&h.d));
    let denom = z * c + d;
    let num = z * a + b;
    let pole = || Error::Pole { point: z.to_string(), term: h.to_string() };
    if denom.norm() == 0.0 {
        return Err(pole());
    }
    if on_cut(denom) {
        return Err(domain!("cz + d = {denom} lies on the branch cut for {h}"));
    }
    let hz = num / denom;
    let value = match seed {
        Seed::InverseZ => {
            if hz.norm() == 0.0 {
                return Err(pole());
            }
            hz.inv()
        }
        Seed::Eisenstein => {
            if on_cut(hz) {
                return Err(domain!("hz = {hz} lies on the branch cut for {h}"));
            }
            Complex64::new(1.0, 0.0) - cpow(hz, -beta * 2.0)
        }
        Seed::Constant => Complex64::new(1.0, 0.0),
    };
    let det = f(&h.det()).abs();
    Ok(cpow(Complex64::new(det, 0.0), beta) * cpow(denom, -beta * 2.0) * value)
}

/// Value of seed|_β w at z and the sum of absolute values of its terms.
pub fn slash_eval_float(seed: Seed, beta: Complex64, w: &FormalSum, z: Complex64) -> Result<(Complex64, f64)> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for (h, c) in w.iter() {
        let term = slash_eval_mat_float(seed, beta, h, z)? * c.to_f64().unwrap_or(f64::NAN);
        mag += term.norm();
        acc += term;
    }
    Ok((acc, mag))
}

/// Which permutation representation drives the vector three-term equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// ρ, acting on vectors indexed by the representatives R_i.
    Rho,
    /// ρ̃, acting on vectors indexed by the matrices A_i.
    RhoTilde,
}

fn representation(n: u64, rep: Representation, g: &Mat2) -> Result<Permutation> {
    match rep {
        Representation::Rho => rho(n, g),
        Representation::RhoTilde => rho_tilde(n, g),
    }
}

/// residual_i = ψ_i − Σ_j P(T⁻¹)_{ij} ψ_j·T − Σ_j P(T′⁻¹)_{ij} ψ_j·T′.
pub fn lewis_residual(n: u64, psi: &[FormalSum], rep: Representation) -> Result<Vec<FormalSum>> {
    let p = representation(n, rep, &Mat2::new(1, -1, 0, 1))?;
    let q = representation(n, rep, &Mat2::new(1, 0, -1, 1))?;
    if psi.len() != p.len() {
        return Err(domain!("vector has {} components, level {n} needs {}", psi.len(), p.len()));
    }
    let t = Mat2::t();
    let tp = Mat2::t_prime();
    Ok((0..psi.len())
        .map(|i| {
            let mut r = psi[i].clone();
            r += &(-&psi[p.0[i]].mul_mat(&t));
            r += &(-&psi[q.0[i]].mul_mat(&tp));
            r
        })
        .collect())
}

/// Outcome of the search for y with (1 − T − T′)·y = residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(FormalSum),
    NotFound { reason: String },
}

/// Looks for a certificate that `residual` lies in the ideal generated by
/// 1 − T − T′, with the witness supported on the closure of the residual's
/// support under X ↦ T⁻¹X and X ↦ T′⁻¹X (kept while entries stay
/// nonnegative). On that support the equation is triangular with respect
/// to the entry sum, so the candidate is unique and is solved for directly,
/// then verified by multiplying out.
pub fn jplus_witness_search(residual: &FormalSum, depth_cap: usize) -> WitnessOutcome {
    let t_inv = Mat2::new(1, -1, 0, 1);
    let tp_inv = Mat2::new(1, 0, -1, 1);
    let mut closure: BTreeSet<Mat2> = BTreeSet::new();
    let mut frontier: Vec<Mat2> = residual.support().cloned().collect();
    while let Some(x) = frontier.pop() {
        if !closure.insert(x.clone()) {
            continue;
        }
        if closure.len() > depth_cap {
            return WitnessOutcome::NotFound { reason: format!("closure exceeds the cap of {depth_cap} matrices") };
        }
        for g in [&t_inv, &tp_inv] {
            let y = g * &x;
            if y.is_nonnegative() && !closure.contains(&y) {
                frontier.push(y);
            }
        }
    }
    let mut order: Vec<&Mat2> = closure.iter().collect();
    order.sort_by(|x, y| x.entry_sum().cmp(&y.entry_sum()).then(x.cmp(y)));
    let mut sol: HashMap<Mat2, BigInt> = HashMap::new();
    for x in order {
        let mut v = residual.coeff(x);
        for g in [&t_inv, &tp_inv] {
            if let Some(c) = sol.get(&(g * x)) {
                v += c;
            }
        }
        sol.insert(x.clone(), v);
    }
    let y = FormalSum::from_terms(sol);
    if &FormalSum::lewis_generator() * &y == *residual {
        WitnessOutcome::Found(y)
    } else {
        WitnessOutcome::NotFound { reason: format!("no solution supported on the {}-element closure", closure.len()) }
    }
}

/// How function identities are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckMode {
    /// Exact partial-fraction normal form.
    Exact,
    /// Exact evaluation at enough rational points to decide the identity.
    Sampled,
    /// Floating point evaluation at 25 points of the cut plane.
    Float,
}

impl CheckMode {
    pub fn name(&self) -> &'static str {
        match self {
            CheckMode::Exact => "exact",
            CheckMode::Sampled => "sampled",
            CheckMode::Float => "float",
        }
    }

    pub fn parse(s: &str) -> Result<CheckMode> {
        match s {
            "exact" => Ok(CheckMode::Exact),
            "sampled" => Ok(CheckMode::Sampled),
            "float" => Ok(CheckMode::Float),
            _ => Err(Error::Usage(format!("unknown mode '{s}' (exact|sampled|float)"))),
        }
    }
}

/// Relative tolerance for floating point identity checks.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Number of points used in floating mode.
pub const FLOAT_POINTS: usize = 25;

/// Deterministic sample points with positive real part, spread over a
/// strip around the positive real axis.
pub fn float_points() -> Vec<Complex64> {
    (0..FLOAT_POINTS)
        .map(|k| {
            let re = 0.25 + 0.19 * k as f64;
            let im = 0.07 * ((k % 5) as f64 - 2.0);
            Complex64::new(re, im)
        })
        .collect()
}

/// The k-th candidate exact sample point, (2k + 3)/(k + 2).
pub fn exact_point(k: usize) -> BigRational {
    BigRational::new(BigInt::from(2 * k + 3), BigInt::from(k + 2))
}

/// Number of points that decides whether seed|w vanishes: every term is a
/// ratio of polynomials of degree at most 2β, so a nonzero sum has fewer
/// than 4β·terms + 5 zeros.
pub fn exact_point_count(beta: u32, terms: usize) -> usize {
    4 * beta.max(1) as usize * terms + 5
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Result of checking that seed|w vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub status: Status,
    /// Points where a nonzero value was observed (at most a few).
    pub fail_points: Vec<String>,
}

/// Decides whether seed|_β w is identically zero.
pub fn check_vanishing(seed: Seed, beta: Beta, w: &FormalSum, mode: CheckMode) -> Result<VanishingReport> {
    const MAX_REPORTED: usize = 5;
    match mode {
        CheckMode::Exact => {
            let b = beta.as_int().ok_or_else(|| domain!("exact mode needs an integer beta"))?;
            let nf = slash_normal_form(seed, b, w)?;
            if nf.is_zero() {
                return Ok(VanishingReport { status: Status::Pass, fail_points: vec![] });
            }
            let mut fail_points = Vec::new();
            let mut k = 0;
            while fail_points.len() < MAX_REPORTED && k < 64 {
                let z = exact_point(k);
                if let Ok(v) = nf.eval(&z) {
                    if !v.is_zero() {
                        fail_points.push(z.to_string());
                    }
                }
                k += 1;
            }
            Ok(VanishingReport { status: Status::Fail, fail_points })
        }
        CheckMode::Sampled => {
            let b = beta.as_int().ok_or_else(|| domain!("sampled mode needs an integer beta"))?;
            let needed = exact_point_count(b, w.len());
            let mut fail_points = Vec::new();
            let mut used = 0;
            let mut k = 0;
            while used < needed {
                if k >= 4 * needed + 16 {
                    return Err(Error::Sampling { needed });
                }
                let z = exact_point(k);
                k += 1;
                match slash_eval_exact(seed, b, w, &z) {
                    Ok(v) => {
                        used += 1;
                        if !v.is_zero() && fail_points.len() < MAX_REPORTED {
                            fail_points.push(z.to_string());
                        }
                    }
                    Err(Error::Pole { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            let status = if fail_points.is_empty() { Status::Pass } else { Status::Fail };
            Ok(VanishingReport { status, fail_points })
        }
        CheckMode::Float => {
            let b = beta.as_complex();
            if b.re <= 0.0 {
                return Err(domain!("floating mode needs Re beta > 0"));
            }
            let mut fail_points = Vec::new();
            for z in float_points() {
                let (v, mag) = slash_eval_float(seed, b, w, z)?;
                // Written so that a NaN residual counts as a failure.
                let small = v.norm() <= FLOAT_TOLERANCE * mag.max(f64::MIN_POSITIVE);
                if !small && fail_points.len() < MAX_REPORTED {
                    fail_points.push(format!("{z}"));
                }
            }
            let status = if fail_points.is_empty() { Status::Pass } else { Status::Fail };
            Ok(VanishingReport { status, fail_points })
        }
    }
}

/// Decides whether seed|_β x and seed|_β y agree as functions.
pub fn functions_equal(seed: Seed, beta: Beta, x: &FormalSum, y: &FormalSum, mode: CheckMode) -> Result<bool> {
    Ok(check_vanishing(seed, beta, &(x - y), mode)?.status == Status::Pass)
}

/// Per-component outcome of a function-level three-term check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub index: usize,
    pub status: Status,
    pub fail_points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LewisReport {
    pub n: u64,
    pub beta: Beta,
    pub mode: CheckMode,
    pub components: Vec<ComponentReport>,
}

impl LewisReport {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.status == Status::Pass)
    }
}

/// Checks the vector valued three-term equation for v at its level.
pub fn lewis_check_function(v: &PeriodVector, rep: Representation, mode: CheckMode) -> Result<LewisReport> {
    let residual = lewis_residual(v.n, &v.weights, rep)?;
    let components = residual
        .par_iter()
        .enumerate()
        .map(|(index, r)| {
            let rep = check_vanishing(v.seed, v.beta, r, mode)?;
            Ok(ComponentReport { index, status: rep.status, fail_points: rep.fail_points })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LewisReport { n: v.n, beta: v.beta, mode, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a, b, c, d)
    }

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn algebra_examples() {
        let r = FormalSum::lewis_generator().mul_mat(&Mat2::t());
        assert_eq!(r.len(), 3);
        assert_eq!(r.coeff(&Mat2::t()), BigInt::one());
        assert_eq!(r.coeff(&Mat2::t().pow(2)), BigInt::from(-1));
        assert_eq!(r.coeff(&(&Mat2::t_prime() * &Mat2::t())), BigInt::from(-1));
        let x = FormalSum::lewis_generator();
        assert!((&x + &x.scale(&BigInt::from(-1))).is_zero());
        let psi = FormalSum::from_mat(m(1, 1, 0, 2)) + FormalSum::from_mat(m(2, 0, 1, 1));
        let p = psi.mul_mat(&m(1, 0, 0, 2));
        assert_eq!(p.len(), 2);
        assert!(p.support().all(|h| h.det() == BigInt::from(4)));
        assert!(FormalSum::try_from_terms([(m(1, 1, 1, 1), BigInt::one())]).is_err());
    }

    #[test]
    fn slash_examples() {
        let h = FormalSum::from_mat(m(1, 1, 0, 2));
        assert_eq!(slash_eval_exact(Seed::InverseZ, 1, &h, &q(1, 1)).unwrap(), q(1, 2));
        let z = q(3, 7);
        for seed in [Seed::InverseZ, Seed::Eisenstein] {
            let f = slash_eval_exact(seed, 1, &FormalSum::one(), &z).unwrap();
            let g = slash_eval_exact(seed, 1, &FormalSum::from_mat(Mat2::scalar(5)), &z).unwrap();
            assert_eq!(f, g);
        }
        assert!(slash_eval_exact(Seed::InverseZ, 1, &FormalSum::one(), &q(0, 1)).is_err());
    }

    #[test]
    fn normal_form_agrees_with_evaluation() {
        let w = FormalSum::from_terms([
            (m(2, 1, 1, 3), BigInt::from(3)),
            (m(1, 0, 4, 1), BigInt::from(-2)),
            (m(0, 1, -1, 5), BigInt::one()),
        ]);
        for (seed, beta) in [(Seed::InverseZ, 1), (Seed::Eisenstein, 1), (Seed::Eisenstein, 2), (Seed::Constant, 3)] {
            let nf = slash_normal_form(seed, beta, &w).unwrap();
            for k in 0..10 {
                let z = exact_point(k);
                assert_eq!(nf.eval(&z).unwrap(), slash_eval_exact(seed, beta, &w, &z).unwrap());
            }
        }
    }

    #[test]
    fn scalar_seeds_solve_the_three_term_equation() {
        let v = |seed, beta| PeriodVector::new(1, seed, beta, vec![FormalSum::one()]);
        for mode in [CheckMode::Exact, CheckMode::Sampled] {
            assert!(lewis_check_function(&v(Seed::InverseZ, Beta::Int(1)), Representation::Rho, mode)
                .unwrap()
                .passed());
            for b in 1..=3 {
                assert!(lewis_check_function(&v(Seed::Eisenstein, Beta::Int(b)), Representation::Rho, mode)
                    .unwrap()
                    .passed());
            }
            assert!(!lewis_check_function(&v(Seed::Constant, Beta::Int(1)), Representation::Rho, mode)
                .unwrap()
                .passed());
        }
        let beta = Beta::Complex(Complex64::new(0.5, 14.13));
        assert!(lewis_check_function(&v(Seed::Eisenstein, beta), Representation::Rho, CheckMode::Float)
            .unwrap()
            .passed());
        assert!(!lewis_check_function(&v(Seed::Constant, beta), Representation::Rho, CheckMode::Float)
            .unwrap()
            .passed());
    }

    #[test]
    fn residual_and_witness_examples() {
        let r = lewis_residual(1, &[FormalSum::one()], Representation::Rho).unwrap();
        assert_eq!(r[0], FormalSum::lewis_generator());
        assert_eq!(jplus_witness_search(&r[0], 1000), WitnessOutcome::Found(FormalSum::one()));
        assert_eq!(jplus_witness_search(&FormalSum::zero(), 1000), WitnessOutcome::Found(FormalSum::zero()));
        let r = lewis_residual(1, &[FormalSum::from_mat(Mat2::t())], Representation::Rho).unwrap();
        assert_eq!(r[0], FormalSum::lewis_generator().mat_mul(&Mat2::t()));
        assert!(matches!(
            jplus_witness_search(&FormalSum::from_mat(Mat2::identity()), 1000),
            WitnessOutcome::NotFound { .. }
        ));
    }

    #[test]
    fn beta_parsing() {
        assert_eq!(Beta::parse("2").unwrap(), Beta::Int(2));
        assert_eq!(Beta::parse("0.5+14i").unwrap(), Beta::Complex(Complex64::new(0.5, 14.0)));
        assert_eq!(Beta::parse("0.5-14.13i").unwrap(), Beta::Complex(Complex64::new(0.5, -14.13)));
        assert!(Beta::parse("abc").is_err());
    }
}
