//! The decomposition of the homogeneous degree-k polynomial solutions of
//! the Navier equations into three orthogonal-group summands, with
//! explicit bases for each:
//!
//! * K1 — gradients of harmonics of degree k+1,
//! * K2 — vectors with harmonic components orthogonal to x⃗
//!   (for n = 4 further split into ±(k+1) eigenspaces of 𝒟),
//! * K3 — the (φ₁ + c·φ₂)-image of the harmonics of degree k−1.
//!
//! Every constructed vector is verified at construction time; an
//! independent exact nullspace oracle provides ground truth for spans.

use num::{One, Zero};
use serde_json::json;

use crate::diffops::{
    d_operator, divergence, euler_field, gradient, laplacian, laplacian_prefix, navier_apply,
    navier_apply_normalized, radius_squared, LameParameters,
};
use crate::error::{Error, Result};
use crate::harmonics::harmonic_basis;
use crate::linalg::{DenseMatrix, VecBasis};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::{double_factorial, factorial, format_rational, rat_int, Rational};
use crate::vecpoly::VectorPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    K1,
    K2,
    K2Plus,
    K2Minus,
    K3,
    Uniform,
    Lame,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::K1 => "k1",
            Family::K2 => "k2",
            Family::K2Plus => "k2plus",
            Family::K2Minus => "k2minus",
            Family::K3 => "k3",
            Family::Uniform => "uniform",
            Family::Lame => "lame",
        }
    }
}

/// Construction provenance of one basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisParams {
    /// Seed harmonic index (ε, l₂..lₙ) for K1/K3.
    Harmonic { eps: u8, l: Vec<u32> },
    /// The k = 1 realization of K3: the Euler field x⃗.
    EulerField,
    /// K2 family seeds: first component j and exponent tuple r⃗.
    K2Seed { subfamily: u8, j: usize, r: Vec<u32> },
    /// K2± member: the (r, s) ladder position and whether it is the real
    /// or imaginary part.
    Ladder { r: u32, s: u32, imag: bool },
    /// Component j plus leading exponents for uniform/Lamé tuples.
    Indexed { j: usize, eps: u8, l: Vec<u32> },
    /// Oracle-produced vector (fallback output mode).
    Oracle { index: usize },
}

impl BasisParams {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BasisParams::Harmonic { eps, l } => json!({"eps": eps, "l": l}),
            BasisParams::EulerField => json!({"kind": "euler-field"}),
            BasisParams::K2Seed { subfamily, j, r } => {
                json!({"subfamily": subfamily, "j": j, "r": r})
            }
            BasisParams::Ladder { r, s, imag } => json!({"r": r, "s": s, "imag": imag}),
            BasisParams::Indexed { j, eps, l } => json!({"j": j, "eps": eps, "l": l}),
            BasisParams::Oracle { index } => json!({"oracle_index": index}),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisVector {
    pub family: Family,
    pub params: BasisParams,
    pub value: VectorPolynomial,
}

fn verification_error(family: Family, params: &BasisParams, condition: &str) -> Error {
    Error::VerificationFailed {
        family: family.name().into(),
        params: params.to_json().to_string(),
        condition: condition.into(),
    }
}

/// The scalar c of the K3 construction:
/// (2k+n−2)(k+n−3)(k−1) / (2(b⁻¹(2k+n−4)+k−1)).
///
/// For n ≥ 3, k ≥ 2 and b > −1 the denominator cannot vanish: it would
/// force b = −(2k+n−4)/(k−1) ≤ −3.
pub fn c_coefficient(n: usize, k: u32, b: &Rational) -> Result<Rational> {
    assert!(n >= 3 && k >= 1, "c is defined for n >= 3, k >= 1");
    let (n_i, k_i) = (n as i64, k as i64);
    let num = rat_int((2 * k_i + n_i - 2) * (k_i + n_i - 3) * (k_i - 1));
    let den = (rat_int(2 * k_i + n_i - 4) / b + rat_int(k_i - 1)) * rat_int(2);
    if den.is_zero() {
        return Err(Error::ZeroDenominator {
            n,
            k,
            b: format_rational(b),
        });
    }
    Ok(num / den)
}

/// ψ(h) = ∇h: the symmetrized sum over monomial positions collapses to
/// the gradient.
pub fn psi_map(h: &Polynomial) -> VectorPolynomial {
    gradient(h)
}

/// x̃_j = (k−1)·ρ²·ς_j − (2k+n−4)·x_j·x⃗ (j is a 0-based slot here).
fn x_tilde(n: usize, k: u32, j: usize) -> VectorPolynomial {
    let (n_i, k_i) = (n as i64, k as i64);
    let rho2 = radius_squared(n);
    let term1 = VectorPolynomial::unit(n, n, j, rho2.scale(&rat_int(k_i - 1)));
    let xj = Polynomial::variable(n, j);
    let term2 = euler_field(n)
        .map(|p| &xj * p)
        .scale(&rat_int(2 * k_i + n_i - 4));
    &term1 - &term2
}

/// φ₁(h) = Σ_j ∂_j(h)·x̃_j on homogeneous h of degree k−1.
pub fn phi1_map(h: &Polynomial, n: usize, k: u32) -> Result<VectorPolynomial> {
    check_degree(h, i64::from(k) - 1)?;
    let mut out = VectorPolynomial::zero(n, n);
    for j in 0..n {
        let dj = h.partial(j);
        if dj.is_zero() {
            continue;
        }
        out = &out + &x_tilde(n, k, j).map(|p| p * &dj);
    }
    Ok(out)
}

/// The closed form φ₁(h) = (k−1)[ρ²·∇h − (2k+n−4)·h·x⃗], equal to
/// [`phi1_map`] on homogeneous arguments by the Euler identity. Kept as
/// an independent route for the identity checks.
pub fn phi1_closed_form(h: &Polynomial, n: usize, k: u32) -> Result<VectorPolynomial> {
    check_degree(h, i64::from(k) - 1)?;
    let (n_i, k_i) = (n as i64, k as i64);
    let rho2 = radius_squared(n);
    let a = gradient(h).map(|p| &rho2 * p);
    let b = euler_field(n)
        .map(|p| h * p)
        .scale(&rat_int(2 * k_i + n_i - 4));
    Ok((&a - &b).scale(&rat_int(k_i - 1)))
}

/// φ₂(h) = ρ²·∇h.
pub fn phi2_map(h: &Polynomial) -> VectorPolynomial {
    let rho2 = radius_squared(h.varcount());
    gradient(h).map(|p| &rho2 * p)
}

fn check_degree(h: &Polynomial, want: i64) -> Result<()> {
    if h.is_zero() {
        return Ok(());
    }
    match h.homogeneous_degree() {
        Some(d) if i64::from(d) == want => Ok(()),
        other => Err(Error::DegreeMismatch {
            expected: want,
            found: format!("{other:?}"),
        }),
    }
}

/// Basis of K1 = ψ(ℋ_{k+1}): exactly dim ℋ_{k+1} gradients, each with
/// harmonic components and zero divergence, hence a Navier solution for
/// every parameter choice.
pub fn basis_k1(n: usize, k: u32) -> Result<Vec<BasisVector>> {
    assert!(n >= 3);
    let mut out = Vec::new();
    for (idx, w) in harmonic_basis(n, k + 1) {
        let v = psi_map(&w);
        let params = BasisParams::Harmonic {
            eps: idx.eps,
            l: idx.l.clone(),
        };
        verify_harmonic_divfree(&v, k).map_err(|c| verification_error(Family::K1, &params, &c))?;
        out.push(BasisVector {
            family: Family::K1,
            params,
            value: v,
        });
    }
    Ok(out)
}

/// Basis of K3 = (φ₁ + c·φ₂)(ℋ_{k−1}) for k ≥ 2; the k = 1 space is
/// spanned by the Euler field x⃗ (the φ formulas degenerate there), and
/// k = 0 is empty.
pub fn basis_k3(n: usize, k: u32, b: &Rational) -> Result<Vec<BasisVector>> {
    assert!(n >= 3);
    if k == 0 {
        return Ok(Vec::new());
    }
    let params_b = LameParameters::from_b(b.clone())?;
    if k == 1 {
        let v = euler_field(n);
        let params = BasisParams::EulerField;
        if !navier_apply(&v, &params_b).is_zero() {
            return Err(verification_error(Family::K3, &params, "navier_apply != 0"));
        }
        return Ok(vec![BasisVector {
            family: Family::K3,
            params,
            value: v,
        }]);
    }
    let c = c_coefficient(n, k, b)?;
    let mut out = Vec::new();
    for (idx, w) in harmonic_basis(n, k - 1) {
        let v = &phi1_map(&w, n, k)? + &phi2_map(&w).scale(&c);
        let params = BasisParams::Harmonic {
            eps: idx.eps,
            l: idx.l.clone(),
        };
        if v.is_zero() {
            return Err(verification_error(Family::K3, &params, "zero vector"));
        }
        if !v.is_homogeneous_of(k) {
            return Err(verification_error(Family::K3, &params, "not homogeneous"));
        }
        if !navier_apply_normalized(&v, b).is_zero() {
            return Err(verification_error(Family::K3, &params, "navier_apply != 0"));
        }
        out.push(BasisVector {
            family: Family::K3,
            params,
            value: v,
        });
    }
    Ok(out)
}

fn verify_harmonic_divfree(v: &VectorPolynomial, k: u32) -> std::result::Result<(), String> {
    if v.is_zero() {
        return Err("zero vector".into());
    }
    if !v.is_homogeneous_of(k) {
        return Err("not homogeneous of declared degree".into());
    }
    for (i, p) in v.components().iter().enumerate() {
        if !laplacian(p).is_zero() {
            return Err(format!("component {} not harmonic", i + 1));
        }
    }
    if !divergence(v).is_zero() {
        return Err("divergence != 0".into());
    }
    Ok(())
}

/// Membership conditions for K2: harmonic components and Σ x_r f_r = 0
/// (divergence-freeness then follows).
fn verify_k2_member(v: &VectorPolynomial, k: u32) -> std::result::Result<(), String> {
    if v.is_zero() {
        return Err("zero vector".into());
    }
    if !v.is_homogeneous_of(k) {
        return Err("not homogeneous of declared degree".into());
    }
    let n = v.ncomp();
    for (i, p) in v.components().iter().enumerate() {
        if !laplacian(p).is_zero() {
            return Err(format!("component {} not harmonic", i + 1));
        }
    }
    let mut nu = Polynomial::zero(n);
    for r in 0..n {
        nu = &nu + &(&Polynomial::variable(n, r) * v.component(r));
    }
    if !nu.is_zero() {
        return Err("sum x_r f_r != 0".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------
// K2 construction: harmonic extensions in the last variable
// ---------------------------------------------------------------------

/// Σ_l (−1)^l Δ_{n−1}^l(seed) · xₙ^{2l+parity}/(2l+parity)!: the
/// harmonic polynomial whose xₙ-expansion starts at `seed` (a polynomial
/// in x₁..x_{n−1}) with the requested xₙ-parity.
fn harmonic_ext(seed: &Polynomial, parity: u32) -> Polynomial {
    let n = seed.varcount();
    let mut out = Polynomial::zero(n);
    let mut current = seed.clone();
    let mut l: u32 = 0;
    while !current.is_zero() {
        let e = 2 * l + parity;
        let mut coef = Rational::one() / Rational::from(factorial(u64::from(e)));
        if l % 2 == 1 {
            coef = -coef;
        }
        out = &out + &current.mul_monomial(&Monomial::one(n).mul_var(n - 1, e), &coef);
        current = laplacian_prefix(&current, n - 1);
        l += 1;
    }
    out
}

fn even_extension(seed: &Polynomial) -> Polynomial {
    harmonic_ext(seed, 0)
}

fn odd_extension(seed: &Polynomial) -> Polynomial {
    harmonic_ext(seed, 1)
}

fn monomial_poly(n: usize, exps: &[u32]) -> Polynomial {
    Polynomial::monomial(n, exps, Rational::one())
}

type K2Candidate = (BasisParams, std::result::Result<VectorPolynomial, String>);

/// Family I seeds: j ∈ {1..n−2}, r⃗ ∈ ℕ^{n−1} with Σr = k and some
/// r_q > 0 past position j. Components j and q* (the last support index)
/// carry even harmonic extensions; component n completes Σ x_r f_r = 0.
fn k2_family_i(n: usize, k: u32) -> Vec<K2Candidate> {
    let mut out = Vec::new();
    for j in 1..=n - 2 {
        for r in crate::harmonics::compositions(k, n - 1) {
            let Some(qstar) = (0..n - 1).rev().find(|&q| r[q] > 0).map(|q| q + 1) else {
                continue;
            };
            if qstar <= j {
                continue;
            }
            let params = BasisParams::K2Seed {
                subfamily: 1,
                j,
                r: r.clone(),
            };
            out.push((params, k2_family_i_vector(n, j, &r, qstar)));
        }
    }
    out
}

fn k2_family_i_vector(
    n: usize,
    j: usize,
    r: &[u32],
    qstar: usize,
) -> std::result::Result<VectorPolynomial, String> {
    let mut exps = r.to_vec();
    exps.push(0);
    let seed_j = monomial_poly(n, &exps);
    // x_j · x^r / x_{q*}
    let mut exps_q = exps.clone();
    exps_q[j - 1] += 1;
    exps_q[qstar - 1] -= 1;
    let seed_q = monomial_poly(n, &exps_q);

    let f_j = even_extension(&seed_j);
    let f_q = -&even_extension(&seed_q);

    let mut v = VectorPolynomial::zero(n, n);
    *v.component_mut(j - 1) = f_j;
    *v.component_mut(qstar - 1) = &v.component(qstar - 1).clone() + &f_q;
    complete_last_component(&mut v)?;
    Ok(v)
}

/// Fills component n as −xₙ⁻¹ Σ_{r<n} x_r f_r, failing loudly when the
/// division is not exact.
fn complete_last_component(v: &mut VectorPolynomial) -> std::result::Result<(), String> {
    let n = v.ncomp();
    let mut s = Polynomial::zero(n);
    for r in 0..n - 1 {
        s = &s + &(&Polynomial::variable(n, r) * v.component(r));
    }
    let q = s
        .divide_by_variable(n - 1)
        .ok_or_else(|| format!("sum x_r f_r not divisible by x_{n}"))?;
    *v.component_mut(n - 1) = -&q;
    Ok(())
}

/// Family II seeds: j ∈ {1..n−2}, r⃗ ∈ ℕ^{n−1} with Σr = k−1. Component
/// j is the odd harmonic extension of x^r⃗; component n−1 is determined
/// by the compatibility recursion
/// (l+3)·g_{l+1} = −l·Δ_{n−2}(g_{l−1}) − Σ_s(Δ_{n−2}x_s + ∂_s)(g_l^s)
/// − Σ_s x_s·g_{l+2}^s, seeded with g₀^{n−1} = 0.
fn k2_family_ii(n: usize, k: u32) -> Vec<K2Candidate> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for j in 1..=n - 2 {
        for r in crate::harmonics::compositions(k - 1, n - 1) {
            let params = BasisParams::K2Seed {
                subfamily: 2,
                j,
                r: r.clone(),
            };
            out.push((params, k2_family_ii_vector(n, k, j, &r)));
        }
    }
    out
}

fn k2_family_ii_vector(
    n: usize,
    k: u32,
    j: usize,
    r: &[u32],
) -> std::result::Result<VectorPolynomial, String> {
    let big_r = r[n - 2] as usize; // exponent of x_{n-1} in the seed
    // u = Π_{s ≤ n−2} x_s^{r_s}
    let mut exps_u = r.to_vec();
    exps_u[n - 2] = 0;
    exps_u.push(0);
    let u = monomial_poly(n, &exps_u);
    // g_l^j = δ_{l,R} · R! · u  (so that f_{n−1,1}^j = x_{n−1}^R · u)
    let gj = u.scale(&Rational::from(factorial(big_r as u64)));
    let xj = Polynomial::variable(n, j - 1);

    // Recursion for g_l^{n−1}, l = 1..k; higher entries vanish by degree
    // exhaustion (g_l is homogeneous of degree k−1−l).
    let kk = k as usize;
    let mut g = vec![Polynomial::zero(n); kk + 2];
    for l in 0..kk {
        let mut acc = Polynomial::zero(n);
        if l >= 1 {
            acc = &acc + &laplacian_prefix(&g[l - 1], n - 2).scale(&rat_int(-(l as i64)));
        }
        if l == big_r {
            let mid = &laplacian_prefix(&(&xj * &gj), n - 2) + &gj.partial(j - 1);
            acc = &acc - &mid;
        }
        if l + 2 == big_r {
            acc = &acc - &(&xj * &gj);
        }
        g[l + 1] = acc.scale(&(Rational::one() / rat_int(l as i64 + 3)));
    }

    // f_{n−1,1}^{n−1} = Σ_l g_l · x_{n−1}^l / l!
    let mut seed_nm1 = Polynomial::zero(n);
    for (l, gl) in g.iter().enumerate() {
        if gl.is_zero() {
            continue;
        }
        let coef = Rational::one() / Rational::from(factorial(l as u64));
        seed_nm1 = &seed_nm1 + &gl.mul_monomial(&Monomial::one(n).mul_var(n - 2, l as u32), &coef);
    }

    let mut exps_j = r.to_vec();
    exps_j.push(0);
    let f_j = odd_extension(&monomial_poly(n, &exps_j));
    let f_nm1 = odd_extension(&seed_nm1);

    let mut v = VectorPolynomial::zero(n, n);
    *v.component_mut(j - 1) = f_j;
    *v.component_mut(n - 2) = &v.component(n - 2).clone() + &f_nm1;
    complete_last_component(&mut v)?;
    Ok(v)
}

/// Family III seeds: r⃗ ∈ ℕ^{n−2} with Σr = k−1. The single independent
/// component n−1 is
/// Σ_{l,q} (−1)^{l+q}·2(2q−1)!!/((2q+2)!!(2q)!(2l+1)!)·
/// Δ_{n−1}^l Δ_{n−2}^q (x_{n−1}^{2q} xₙ^{2l+1} Π x_s^{r_s}),
/// and component n completes the x⃗-orthogonality.
fn k2_family_iii(n: usize, k: u32) -> Vec<K2Candidate> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for r in crate::harmonics::compositions(k - 1, n - 2) {
        let params = BasisParams::K2Seed {
            subfamily: 3,
            j: n - 1,
            r: r.clone(),
        };
        out.push((params, k2_family_iii_vector(n, k, &r)));
    }
    out
}

fn k2_family_iii_vector(
    n: usize,
    k: u32,
    r: &[u32],
) -> std::result::Result<VectorPolynomial, String> {
    let half_k = i64::from(k / 2);
    let mut f_nm1 = Polynomial::zero(n);
    for l in 0..=half_k {
        for q in 0..=half_k {
            let mut exps = r.to_vec();
            exps.push(2 * q as u32);
            exps.push(2 * l as u32 + 1);
            let mut term = monomial_poly(n, &exps);
            for _ in 0..q {
                term = laplacian_prefix(&term, n - 2);
            }
            for _ in 0..l {
                term = laplacian_prefix(&term, n - 1);
            }
            if term.is_zero() {
                continue;
            }
            let sign = if (l + q) % 2 == 0 { 1 } else { -1 };
            let num = rat_int(2 * sign) * Rational::from(double_factorial(2 * q - 1));
            let den = Rational::from(double_factorial(2 * q + 2))
                * Rational::from(factorial(2 * q as u64))
                * Rational::from(factorial(2 * l as u64 + 1));
            f_nm1 = &f_nm1 + &term.scale(&(num / den));
        }
    }
    let mut v = VectorPolynomial::zero(n, n);
    *v.component_mut(n - 2) = f_nm1;
    complete_last_component(&mut v)?;
    Ok(v)
}

/// Discrepancy report produced when a printed-formula K2 vector fails
/// verification; the oracle basis is the fallback output in that case.
#[derive(Clone, Debug)]
pub struct K2Discrepancy {
    pub failures: Vec<(BasisParams, String)>,
}

fn k2_candidates(n: usize, k: u32) -> Vec<K2Candidate> {
    let mut all = k2_family_i(n, k);
    all.extend(k2_family_ii(n, k));
    all.extend(k2_family_iii(n, k));
    all
}

pub fn expected_k2_count(n: usize, k: u32) -> usize {
    let d = |kk: i64| crate::harmonics::dim_harmonic(n, kk) as i64;
    (n as i64 * d(i64::from(k)) - d(i64::from(k) + 1) - d(i64::from(k) - 1)) as usize
}

/// The explicit basis of Ĥ_{k,2}: families I–III, each member verified
/// harmonic, x⃗-orthogonal, and exactly divisible where required. Hard
/// error on any violation.
pub fn basis_k2(n: usize, k: u32) -> Result<Vec<BasisVector>> {
    assert!(n >= 3 && k >= 1);
    let mut out = Vec::new();
    for (params, cand) in k2_candidates(n, k) {
        let v = cand.map_err(|c| verification_error(Family::K2, &params, &c))?;
        verify_k2_member(&v, k).map_err(|c| verification_error(Family::K2, &params, &c))?;
        out.push(BasisVector {
            family: Family::K2,
            params,
            value: v,
        });
    }
    let expected = expected_k2_count(n, k);
    if out.len() != expected {
        return Err(Error::RankDefect {
            context: format!("K2 family count for n={n}, k={k}"),
            expected,
            found: out.len(),
        });
    }
    Ok(out)
}

/// Like [`basis_k2`] but degrades per the formula-vs-oracle policy: on
/// any formula failure, returns the oracle basis together with the
/// discrepancy report instead of failing.
pub fn basis_k2_with_fallback(n: usize, k: u32) -> (Vec<BasisVector>, Option<K2Discrepancy>) {
    let mut failures = Vec::new();
    let mut out = Vec::new();
    for (params, cand) in k2_candidates(n, k) {
        match cand {
            Ok(v) => match verify_k2_member(&v, k) {
                Ok(()) => out.push(BasisVector {
                    family: Family::K2,
                    params,
                    value: v,
                }),
                Err(c) => failures.push((params, c)),
            },
            Err(c) => failures.push((params, c)),
        }
    }
    if failures.is_empty() && out.len() == expected_k2_count(n, k) {
        return (out, None);
    }
    let oracle = oracle_k2(n, k)
        .into_iter()
        .enumerate()
        .map(|(index, value)| BasisVector {
            family: Family::K2,
            params: BasisParams::Oracle { index },
            value,
        })
        .collect();
    (oracle, Some(K2Discrepancy { failures }))
}

// ---------------------------------------------------------------------
// n = 4: the ±(k+1) eigenspaces of 𝒟
// ---------------------------------------------------------------------

/// Exact complex polynomial (pair of rational polynomials), sufficient
/// for the n = 4 ladder construction in the complexified coordinates.
#[derive(Clone, PartialEq, Eq)]
struct CPoly {
    re: Polynomial,
    im: Polynomial,
}

impl CPoly {
    fn new(re: Polynomial, im: Polynomial) -> Self {
        CPoly { re, im }
    }

    fn one() -> Self {
        CPoly::new(Polynomial::one(4), Polynomial::zero(4))
    }

    fn mul(&self, other: &CPoly) -> CPoly {
        CPoly::new(
            &(&self.re * &other.re) - &(&self.im * &other.im),
            &(&self.re * &other.im) + &(&self.im * &other.re),
        )
    }

    fn sub(&self, other: &CPoly) -> CPoly {
        CPoly::new(&self.re - &other.re, &self.im - &other.im)
    }

    /// ∂_x − i·∂_y applied componentwise (the ∂_{y_r} operators have
    /// this shape in the real coordinates).
    fn dz(&self, x_slot: usize, y_slot: usize) -> CPoly {
        // (re + i·im) ↦ (∂_x re + ∂_y im) + i(∂_x im − ∂_y re)
        CPoly::new(
            &self.re.partial(x_slot) + &self.im.partial(y_slot),
            &self.im.partial(x_slot) - &self.re.partial(y_slot),
        )
    }

    fn scale2k(&self, k: u32) -> CPoly {
        let mut c = Rational::one();
        for _ in 0..k {
            c = c * rat_int(2);
        }
        CPoly::new(self.re.scale(&c), self.im.scale(&c))
    }
}

/// y₁ = (x₁+ix₃)/2, y₂ = (x₂+ix₄)/2, y₃ = (ix₁+x₃)/2, y₄ = (ix₂+x₄)/2.
fn y_coord(idx: usize) -> CPoly {
    let half = Rational::one() / rat_int(2);
    let x = |i: usize| Polynomial::variable(4, i).scale(&half);
    match idx {
        1 => CPoly::new(x(0), x(2)),
        2 => CPoly::new(x(1), x(3)),
        3 => CPoly::new(x(2), x(0)),
        4 => CPoly::new(x(3), x(1)),
        _ => unreachable!(),
    }
}

/// g₊ (re) and g₋ (im) of the ladder: 2^k·(y₄∂_{y₁} − y₃∂_{y₂})^s
/// applied to y₂^r y₁^{k−r}, computed by exact complex arithmetic
/// directly from the definition. The paper's four-case closed-form
/// expansion carries transcription errors (see the pinning test below)
/// and is not used.
fn g_ladder(k: u32, r: u32, s: u32) -> (Polynomial, Polynomial) {
    assert!(r <= k);
    let y1 = y_coord(1);
    let y2 = y_coord(2);
    let y3 = y_coord(3);
    let y4 = y_coord(4);
    let mut base = CPoly::one();
    for _ in 0..r {
        base = base.mul(&y2);
    }
    for _ in 0..k - r {
        base = base.mul(&y1);
    }
    // ∂_{y₁} = ∂_{x₁} − i∂_{x₃}, ∂_{y₂} = ∂_{x₂} − i∂_{x₄}
    for _ in 0..s {
        let t1 = y4.mul(&base.dz(0, 2));
        let t2 = y3.mul(&base.dz(1, 3));
        base = t1.sub(&t2);
    }
    let scaled = base.scale2k(k);
    (scaled.re, scaled.im)
}

fn g_pm(k: u32, r: u32, s: u32, plus: bool) -> Polynomial {
    let (gp, gm) = g_ladder(k, r, s);
    if plus {
        gp
    } else {
        gm
    }
}

/// Real part of the ladder vector at position (r, s), scaled by 2^{-(k+1)}.
fn ladder_v(k: u32, r: u32, s: u32) -> VectorPolynomial {
    ladder_vector(k, r, s, false)
}

/// Imaginary part of the ladder vector at position (r, s).
fn ladder_w(k: u32, r: u32, s: u32) -> VectorPolynomial {
    ladder_vector(k, r, s, true)
}

fn ladder_vector(k: u32, r: u32, s: u32, imag: bool) -> VectorPolynomial {
    let gp = |r, s| g_pm(k, r, s, true);
    let gm = |r, s| g_pm(k, r, s, false);
    let zero = || Polynomial::zero(4);
    // the s·g(·, s−1) shift terms vanish at s = 0
    let (sh_p_r, sh_p_r1, sh_m_r, sh_m_r1) = if s > 0 {
        let sf = rat_int(i64::from(s));
        (
            gp(r, s - 1).scale(&sf),
            gp(r + 1, s - 1).scale(&sf),
            gm(r, s - 1).scale(&sf),
            gm(r + 1, s - 1).scale(&sf),
        )
    } else {
        (zero(), zero(), zero(), zero())
    };
    let comps = if !imag {
        vec![
            &(-&gp(r + 1, s)) + &sh_m_r,
            &gp(r, s) + &sh_m_r1,
            &gm(r + 1, s) - &sh_p_r,
            &(-&gm(r, s)) - &sh_p_r1,
        ]
    } else {
        vec![
            &(-&gm(r + 1, s)) - &sh_p_r,
            &gm(r, s) - &sh_p_r1,
            &(-&gp(r + 1, s)) - &sh_m_r,
            &gp(r, s) - &sh_m_r1,
        ]
    };
    let mut denom = Rational::one();
    for _ in 0..=k {
        denom = denom * rat_int(2);
    }
    VectorPolynomial::new(comps).scale(&(Rational::one() / denom))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenSign {
    Plus,
    Minus,
}

/// Basis of the 𝒟-eigenspace Ĥ_{k,2±} for n = 4: the (r, s) ladder
/// positions with both real and imaginary parts, except the middle
/// position of odd k which contributes a single vector. Each member is
/// verified to lie in Ĥ_{k,2} and to satisfy 𝒟v = ±(k+1)·v exactly;
/// the count is k(k+2).
pub fn basis_k2_pm(k: u32, sign: EigenSign) -> Result<Vec<BasisVector>> {
    assert!(k >= 1);
    let minus = basis_k2_minus(k)?;
    match sign {
        EigenSign::Minus => Ok(minus),
        EigenSign::Plus => {
            // The O(4) element exchanging x₂ and x₄ maps the − eigenspace
            // onto the + eigenspace; it acts on variables and components.
            let perm = [0usize, 3, 2, 1];
            let mut out = Vec::with_capacity(minus.len());
            for bv in minus {
                let v = bv.value.permuted(&perm, &perm);
                let params = bv.params.clone();
                verify_k2pm_member(&v, k, EigenSign::Plus)
                    .map_err(|c| verification_error(Family::K2Plus, &params, &c))?;
                out.push(BasisVector {
                    family: Family::K2Plus,
                    params,
                    value: v,
                });
            }
            Ok(out)
        }
    }
}

fn basis_k2_minus(k: u32) -> Result<Vec<BasisVector>> {
    let half_k = k / 2;
    let half_k1 = (k + 1) / 2;
    let mut positions: Vec<(u32, u32)> = Vec::new();
    for r in 0..=half_k {
        for s in 0..=half_k1 {
            positions.push((r, s));
        }
    }
    for r in half_k + 1..k {
        for s in 0..=half_k {
            positions.push((r, s));
        }
    }
    let middle = (k % 2 == 1).then(|| ((k - 1) / 2, (k + 1) / 2));

    let mut out = Vec::new();
    for (r, s) in positions {
        if Some((r, s)) == middle {
            // single vector at the middle position: the real part when it
            // survives, otherwise the imaginary part
            let v = ladder_v(k, r, s);
            if !v.is_zero() {
                push_k2pm(&mut out, k, r, s, false, v)?;
            } else {
                push_k2pm(&mut out, k, r, s, true, ladder_w(k, r, s))?;
            }
        } else {
            push_k2pm(&mut out, k, r, s, false, ladder_v(k, r, s))?;
            push_k2pm(&mut out, k, r, s, true, ladder_w(k, r, s))?;
        }
    }

    let expected = (k * (k + 2)) as usize;
    if out.len() != expected {
        return Err(Error::RankDefect {
            context: format!("K2- ladder count for k={k}"),
            expected,
            found: out.len(),
        });
    }
    Ok(out)
}

fn push_k2pm(
    out: &mut Vec<BasisVector>,
    k: u32,
    r: u32,
    s: u32,
    imag: bool,
    value: VectorPolynomial,
) -> Result<()> {
    let params = BasisParams::Ladder { r, s, imag };
    verify_k2pm_member(&value, k, EigenSign::Minus)
        .map_err(|c| verification_error(Family::K2Minus, &params, &c))?;
    out.push(BasisVector {
        family: Family::K2Minus,
        params,
        value,
    });
    Ok(())
}

fn verify_k2pm_member(
    v: &VectorPolynomial,
    k: u32,
    sign: EigenSign,
) -> std::result::Result<(), String> {
    verify_k2_member(v, k)?;
    let lambda = match sign {
        EigenSign::Plus => rat_int(i64::from(k) + 1),
        EigenSign::Minus => rat_int(-(i64::from(k) + 1)),
    };
    let dv = d_operator(v).map_err(|e| e.to_string())?;
    if dv != v.scale(&lambda) {
        return Err(format!(
            "D eigen-check failed: expected eigenvalue {}",
            format_rational(&lambda)
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Exact nullspace oracles
// ---------------------------------------------------------------------

/// Exact nullspace of a list of linear constraints on degree-`k` vector
/// polynomials. `out_degrees[t]` is the homogeneity degree of the t-th
/// constraint output; negative degrees contribute no rows.
fn nullspace_of(
    n: usize,
    k: u32,
    out_degrees: &[i64],
    apply: impl Fn(&VectorPolynomial) -> Vec<Polynomial>,
) -> Vec<VectorPolynomial> {
    let dom = VecBasis::new(n, n, k);
    let row_bases: Vec<Option<crate::linalg::MonoBasis>> = out_degrees
        .iter()
        .map(|&d| (d >= 0).then(|| crate::linalg::MonoBasis::new(n, d as u32)))
        .collect();
    let mut offsets = Vec::with_capacity(row_bases.len());
    let mut total_rows = 0usize;
    for b in &row_bases {
        offsets.push(total_rows);
        total_rows += b.as_ref().map_or(0, |b| b.len());
    }

    let mut m = DenseMatrix::zero(total_rows, dom.len());
    for col in 0..dom.len() {
        let mut coords = vec![Rational::zero(); dom.len()];
        coords[col] = Rational::one();
        let e = dom.vector_of(&coords);
        let outs = apply(&e);
        assert_eq!(outs.len(), out_degrees.len());
        for (t, p) in outs.iter().enumerate() {
            let Some(base) = &row_bases[t] else {
                assert!(
                    p.is_zero(),
                    "constraint {t} produced output of negative degree"
                );
                continue;
            };
            for (mono, coef) in p.iter() {
                m.set(offsets[t] + base.index_of(mono), col, coef.clone());
            }
        }
    }
    m.nullspace()
        .into_iter()
        .map(|x| dom.vector_of(&x))
        .collect()
}

/// Exact-rational nullspace basis of the Navier operator on degree-k
/// vector polynomials: the ground-truth realization of Ĥ_k.
pub fn oracle_nullspace(n: usize, k: u32, params: &LameParameters) -> Vec<VectorPolynomial> {
    nullspace_of(n, k, &vec![i64::from(k) - 2; n], |v| {
        navier_apply(v, params).into_components()
    })
}

/// Exact nullspace of {each component harmonic, Σ x_r f_r = 0}: the
/// ground truth for Ĥ_{k,2}.
pub fn oracle_k2(n: usize, k: u32) -> Vec<VectorPolynomial> {
    let mut degrees = vec![i64::from(k) - 2; n];
    degrees.push(i64::from(k) + 1);
    nullspace_of(n, k, &degrees, |v| {
        let mut outs: Vec<Polynomial> = v.components().iter().map(laplacian).collect();
        let mut nu = Polynomial::zero(n);
        for r in 0..n {
            nu = &nu + &(&Polynomial::variable(n, r) * v.component(r));
        }
        outs.push(nu);
        outs
    })
}

/// Exact nullspace of {each component harmonic, divergence = 0}: the
/// ground truth for K1 ⊕ K2.
pub fn oracle_harmonic_divfree(n: usize, k: u32) -> Vec<VectorPolynomial> {
    let mut degrees = vec![i64::from(k) - 2; n];
    degrees.push(i64::from(k) - 1);
    nullspace_of(n, k, &degrees, |v| {
        let mut outs: Vec<Polynomial> = v.components().iter().map(laplacian).collect();
        outs.push(divergence(v));
        outs
    })
}

// ---------------------------------------------------------------------
// Decomposition into family coordinates
// ---------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// One coefficient per basis vector of K1 ∪ K2 ∪ K3, in that order.
    pub terms: Vec<(BasisVector, Rational)>,
}

/// Exact coordinates of a degree-k Navier solution over the three-family
/// basis. Rejects vectors that are not solutions, reporting the residual.
pub fn decompose(v: &VectorPolynomial, n: usize, k: u32, b: &Rational) -> Result<Decomposition> {
    let params = LameParameters::from_b(b.clone())?;
    let residual = navier_apply(v, &params);
    if !residual.is_zero() {
        return Err(Error::NotASolution {
            residual: format!("{residual:?}"),
        });
    }
    if !v.is_zero() && !v.is_homogeneous_of(k) {
        return Err(Error::DegreeMismatch {
            expected: i64::from(k),
            found: format!("{:?}", v.components()[0].homogeneous_degree()),
        });
    }
    let mut basis = basis_k1(n, k)?;
    if k >= 1 {
        basis.extend(basis_k2(n, k)?);
    }
    basis.extend(basis_k3(n, k, b)?);

    let vb = VecBasis::new(n, n, k);
    let to_dense = |vec: &VectorPolynomial| {
        let mut dense = vec![Rational::zero(); vb.len()];
        for (i, c) in vb.row_of(vec).entries {
            dense[i] = c;
        }
        dense
    };
    let columns: Vec<Vec<Rational>> = basis.iter().map(|bv| to_dense(&bv.value)).collect();
    let coords = crate::linalg::solve_exact(&columns, &to_dense(v)).ok_or(Error::NotASolution {
        residual: "solution lies outside the three-family span".into(),
    })?;

    // exact reconstruction audit
    let mut recon = VectorPolynomial::zero(n, n);
    for (bv, c) in basis.iter().zip(&coords) {
        recon = &recon + &bv.value.scale(c);
    }
    if &recon != v {
        return Err(Error::NotASolution {
            residual: "nonzero reconstruction residual".into(),
        });
    }
    Ok(Decomposition {
        terms: basis.into_iter().zip(coords).collect(),
    })
}
