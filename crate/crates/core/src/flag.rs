//! Flag-form solution machinery: the coefficient functions f(m,s), g(m,s),
//! the uniform polynomial solution basis of the Navier equations (leading
//! term x₁^ε Π x_q^{l_q} ς_j), and the Lamé polynomial basis built from
//! powers of T₂ = b⁻¹Δ·Iₙ + ∇ᵀ·∇.

use std::collections::HashMap;

use num::{One, Zero};

use crate::decomp::{BasisParams, BasisVector, Family};
use crate::diffops::{
    grad_div, lame_apply, laplacian_2n, laplacian_vec, navier_apply_normalized, LameParameters,
};
use crate::error::{Error, Result};
use crate::harmonics::{dim_harmonic, harmonic_indices};
use crate::linalg::{rank_of_rows, VecBasis};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::{binomial, factorial, rat_int, Rational};
use crate::vecpoly::VectorPolynomial;

fn pow_rat(b: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= b;
    }
    out
}

/// f(m,s) = Σ_{r=s}^{⌊m/2⌋} 4^s(b+1)^s(b+2)^{2r−2s} a^{m−2r} b^{2r}
/// / (2^m (b+1)^m) · C(r,s)·C(m,2r), with a = (b+1)²+1.
pub fn coeff_f(m: u32, s: u32, b: &Rational) -> Rational {
    coeff_sum(m, s, b, false)
}

/// g(m,s): like f but with a^{m−2r−1} b^{2r+1} and C(m, 2r+1).
pub fn coeff_g(m: u32, s: u32, b: &Rational) -> Rational {
    coeff_sum(m, s, b, true)
}

fn coeff_sum(m: u32, s: u32, b: &Rational, shifted: bool) -> Rational {
    let bp1 = b + Rational::one();
    let bp2 = b + rat_int(2);
    let a = &(&bp1 * &bp1) + &Rational::one();
    let denom = pow_rat(&rat_int(2), m) * pow_rat(&bp1, m);
    let mut acc = Rational::zero();
    for r in s..=m / 2 {
        let c_rs = binomial(i64::from(r), i64::from(s));
        let c_m = binomial(
            i64::from(m),
            i64::from(if shifted { 2 * r + 1 } else { 2 * r }),
        );
        if c_rs.is_zero() || c_m.is_zero() {
            continue;
        }
        let a_pow = if shifted { m - 2 * r - 1 } else { m - 2 * r };
        let b_pow = if shifted { 2 * r + 1 } else { 2 * r };
        let term = pow_rat(&rat_int(4), s)
            * pow_rat(&bp1, s)
            * pow_rat(&bp2, 2 * (r - s))
            * pow_rat(&a, a_pow)
            * pow_rat(b, b_pow)
            * Rational::from(c_rs * c_m);
        acc += term;
    }
    acc / denom
}

/// Write-once memo of the coefficient functions for a fixed b; computed
/// exactly, converted to floating point once per (m,s) at the use sites.
pub struct CoeffTable {
    b: Rational,
    f: HashMap<(u32, u32), Rational>,
    g: HashMap<(u32, u32), Rational>,
}

impl CoeffTable {
    pub fn new(b: Rational) -> Self {
        CoeffTable {
            b,
            f: HashMap::new(),
            g: HashMap::new(),
        }
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn f(&mut self, m: u32, s: u32) -> Rational {
        if let Some(v) = self.f.get(&(m, s)) {
            return v.clone();
        }
        let v = coeff_f(m, s, &self.b);
        self.f.insert((m, s), v.clone());
        v
    }

    pub fn g(&mut self, m: u32, s: u32) -> Rational {
        if let Some(v) = self.g.get(&(m, s)) {
            return v.clone();
        }
        let v = coeff_g(m, s, &self.b);
        self.g.insert((m, s), v.clone());
        v
    }
}

// ---------------------------------------------------------------------
// Uniform Navier basis
// ---------------------------------------------------------------------

/// Iterated Δ_{2,n} powers of a tail polynomial, up to the first zero.
struct LapChain {
    powers: Vec<Polynomial>,
}

impl LapChain {
    fn new(p: Polynomial) -> Self {
        let mut powers = Vec::new();
        let mut cur = p;
        while !cur.is_zero() {
            let next = laplacian_2n(&cur);
            powers.push(cur);
            cur = next;
        }
        LapChain { powers }
    }

    fn get(&self, p: u32) -> Option<&Polynomial> {
        self.powers.get(p as usize)
    }

    /// Largest exponent with a nonzero power (−1 when the base is zero).
    fn max_power(&self) -> i64 {
        self.powers.len() as i64 - 1
    }
}

fn x1_monomial(n: usize, e: u32) -> Monomial {
    Monomial::one(n).mul_var(0, e)
}

fn inv_factorial(e: u32) -> Rational {
    Rational::one() / Rational::from(factorial(u64::from(e)))
}

/// One uniform basis vector: the Navier solution with leading term
/// x₁^ε Π_{q=2}^n x_q^{l_q} · ς_j (j is 1-based). The correction series
/// terminates when every admissible Δ_{2,n}-power annihilates the tail;
/// no fixed cap.
pub fn uniform_basis_vector(
    n: usize,
    j: usize,
    eps: u8,
    l: &[u32],
    coeffs: &mut CoeffTable,
) -> VectorPolynomial {
    assert!(n >= 2 && (1..=n).contains(&j));
    assert_eq!(l.len(), n - 1, "need exponents l_2..l_n");
    let eps = u32::from(eps);
    let b = coeffs.b().clone();
    let bp1 = &b + Rational::one();
    let bp2 = &b + rat_int(2);

    // tail = Π_{q ≥ 2} x_q^{l_q}; chains of its divided variants
    let mut tail_exps = vec![0u32; n];
    tail_exps[1..].copy_from_slice(l);
    let tail = Polynomial::monomial(n, &tail_exps, Rational::one());
    let tail_chain = LapChain::new(tail.clone());
    let divided = |slots: &[usize]| -> Option<LapChain> {
        let mut p = tail.clone();
        for &s in slots {
            p = p.divide_by_variable(s)?;
        }
        Some(LapChain::new(p))
    };

    let mut comps = vec![Polynomial::zero(n); n];
    comps[j - 1].add_term(
        Monomial(tail_exps.clone()).mul_var(0, eps),
        Rational::one(),
    );

    if j == 1 {
        // component 1: (f(m,s) − (b+2)g(m,s)) · x₁^{ε+2m−2s} Δ^{m−s}(tail)
        // component r ≥ 2: 2(b+1)g(m,s)·l_r · x₁^{ε+2m−2s−1} Δ^{m−s−1}(tail/x_r)
        let div_chains: Vec<Option<LapChain>> = (1..n)
            .map(|slot| (l[slot - 1] > 0).then(|| divided(&[slot]).unwrap()))
            .collect();
        let mut m = 1u32;
        loop {
            let sign = if m % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            for s in 0..=m / 2 {
                let fc = coeffs.f(m, s);
                let gc = coeffs.g(m, s);
                let c_head = &(&fc - &(&bp2 * &gc)) * &sign;
                if !c_head.is_zero() {
                    if let Some(dp) = tail_chain.get(m - s) {
                        let e = eps + 2 * m - 2 * s;
                        comps[0] = &comps[0]
                            + &dp.mul_monomial(&x1_monomial(n, e), &(&c_head * &inv_factorial(e)));
                    }
                }
                let c_side = &(&(&gc * &bp1) * &sign) * &rat_int(2);
                if c_side.is_zero() {
                    continue;
                }
                for r in 2..=n {
                    let lr = l[r - 2];
                    if lr == 0 {
                        continue;
                    }
                    if let Some(dp) = div_chains[r - 2].as_ref().unwrap().get(m - s - 1) {
                        let e = eps + 2 * m - 2 * s - 1;
                        let c = &(&c_side * &rat_int(i64::from(lr))) * &inv_factorial(e);
                        comps[r - 1] =
                            &comps[r - 1] + &dp.mul_monomial(&x1_monomial(n, e), &c);
                    }
                }
            }
            if i64::from((m + 1) / 2) - 1 > tail_chain.max_power() {
                break;
            }
            m += 1;
        }
    } else {
        let lj = l[j - 2];
        let chain_j = (lj > 0).then(|| divided(&[j - 1]).unwrap());
        let chain_jj = (lj > 1).then(|| divided(&[j - 1, j - 1]).unwrap());
        let chains_rj: Vec<Option<LapChain>> = (1..n)
            .map(|slot| {
                (slot != j - 1 && l[slot - 1] > 0 && lj > 0)
                    .then(|| divided(&[slot, j - 1]).unwrap())
            })
            .collect();
        let mut m = 1u32;
        loop {
            let sign = if m % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            // pure diagonal series: (−1)^m x₁^{ε+2m}/(ε+2m)! Δ^m(tail)
            if let Some(dp) = tail_chain.get(m) {
                let e = eps + 2 * m;
                comps[j - 1] = &comps[j - 1]
                    + &dp.mul_monomial(&x1_monomial(n, e), &(&sign * &inv_factorial(e)));
            }
            // component 1: s ≤ ⌊(m−1)/2⌋, 2 g(m,s) l_j x₁^{ε+2m−2s−1} Δ^{m−s−1}(tail/x_j)
            if lj > 0 {
                for s in 0..=(m - 1) / 2 {
                    let gc = coeffs.g(m, s);
                    if gc.is_zero() {
                        continue;
                    }
                    if let Some(dp) = chain_j.as_ref().unwrap().get(m - s - 1) {
                        let e = eps + 2 * m - 2 * s - 1;
                        let c =
                            &(&(&gc * &sign) * &rat_int(2 * i64::from(lj))) * &inv_factorial(e);
                        comps[0] = &comps[0] + &dp.mul_monomial(&x1_monomial(n, e), &c);
                    }
                }
            }
            // off-diagonal r ≠ j: s ≤ ⌊m/2⌋,
            // (−δ_{s,0}+f+(b+2)g) l_r l_j x₁^{ε+2m−2s} Δ^{m−s−1}(tail/x_r/x_j);
            // the s = m/2 term (m even) is required for annihilation
            if lj > 0 {
                for s in 0..=m / 2 {
                    let gc = coeffs.g(m, s);
                    let fc = coeffs.f(m, s);
                    let mixed = &(&fc + &(&bp2 * &gc))
                        - &(if s == 0 { Rational::one() } else { Rational::zero() });
                    if mixed.is_zero() {
                        continue;
                    }
                    for r in 2..=n {
                        if r == j || l[r - 2] == 0 {
                            continue;
                        }
                        if let Some(dp) = chains_rj[r - 2].as_ref().unwrap().get(m - s - 1) {
                            let e = eps + 2 * m - 2 * s;
                            let c = &(&(&mixed * &sign)
                                * &rat_int(i64::from(l[r - 2]) * i64::from(lj)))
                                * &inv_factorial(e);
                            comps[r - 1] =
                                &comps[r - 1] + &dp.mul_monomial(&x1_monomial(n, e), &c);
                        }
                    }
                }
            }
            // diagonal correction: s ≤ ⌊m/2⌋, factor l_j(l_j−1), Δ^{m−s−1}(tail/x_j²)
            if lj > 1 {
                for s in 0..=m / 2 {
                    let gc = coeffs.g(m, s);
                    let fc = coeffs.f(m, s);
                    let mixed =
                        &(&fc + &(&bp2 * &gc)) - &(if s == 0 { Rational::one() } else { Rational::zero() });
                    if mixed.is_zero() {
                        continue;
                    }
                    if m < s + 1 {
                        continue;
                    }
                    if let Some(dp) = chain_jj.as_ref().unwrap().get(m - s - 1) {
                        let e = eps + 2 * m - 2 * s;
                        let c = &(&(&mixed * &sign)
                            * &rat_int(i64::from(lj) * (i64::from(lj) - 1)))
                            * &inv_factorial(e);
                        comps[j - 1] = &comps[j - 1] + &dp.mul_monomial(&x1_monomial(n, e), &c);
                    }
                }
            }
            if i64::from((m + 1) / 2) - 1 > tail_chain.max_power() {
                break;
            }
            m += 1;
        }
    }

    VectorPolynomial::new(comps)
}

/// The uniform basis of the degree-k homogeneous Navier solutions:
/// n·dim ℋ_k vectors indexed by (j, ε, l₂..lₙ), each verified exactly
/// annihilated; linear independence certified by exact rank.
pub fn uniform_basis(n: usize, k: u32, b: &Rational) -> Result<Vec<BasisVector>> {
    assert!(n >= 2);
    let mut coeffs = CoeffTable::new(b.clone());
    let mut out = Vec::new();
    for j in 1..=n {
        for idx in harmonic_indices(n, k) {
            let v = uniform_basis_vector(n, j, idx.eps, &idx.l, &mut coeffs);
            let params = BasisParams::Indexed {
                j,
                eps: idx.eps,
                l: idx.l.clone(),
            };
            if !v.is_homogeneous_of(k) {
                return Err(Error::VerificationFailed {
                    family: "uniform".into(),
                    params: params.to_json().to_string(),
                    condition: "not homogeneous".into(),
                });
            }
            if !navier_apply_normalized(&v, b).is_zero() {
                return Err(Error::VerificationFailed {
                    family: "uniform".into(),
                    params: params.to_json().to_string(),
                    condition: "navier_apply != 0".into(),
                });
            }
            out.push(BasisVector {
                family: Family::Uniform,
                params,
                value: v,
            });
        }
    }
    let expected = (n as u64 * dim_harmonic(n, i64::from(k))) as usize;
    if out.len() != expected {
        return Err(Error::RankDefect {
            context: format!("uniform basis count for n={n}, k={k}"),
            expected,
            found: out.len(),
        });
    }
    let vb = VecBasis::new(n, n, k);
    let rank = rank_of_rows(out.iter().map(|bv| vb.row_of(&bv.value)));
    if rank != expected {
        return Err(Error::RankDefect {
            context: format!("uniform basis rank for n={n}, k={k}"),
            expected,
            found: rank,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Lamé polynomial basis
// ---------------------------------------------------------------------

/// T₂ = b⁻¹Δ·Iₙ + ∇ᵀ·∇ on vectors with a time slot.
pub fn lame_t2_apply(v: &VectorPolynomial, b: &Rational) -> VectorPolynomial {
    let b_inv = Rational::one() / b;
    &laplacian_vec(v).scale(&b_inv) + &grad_div(v)
}

/// T₂ᵐ by operator composition: the unambiguous route.
pub fn lame_t2_power(v: &VectorPolynomial, m: u32, b: &Rational) -> VectorPolynomial {
    let mut out = v.clone();
    for _ in 0..m {
        out = lame_t2_apply(&out, b);
    }
    out
}

/// The closed form T₂ᵐ = b⁻ᵐ(Δᵐ·Iₙ + ((b+1)ᵐ−1)·Δ^{m−1}∘∇ᵀ·∇) for
/// m ≥ 1; used as a cross-check of the composition route.
pub fn lame_t2_power_closed(v: &VectorPolynomial, m: u32, b: &Rational) -> VectorPolynomial {
    if m == 0 {
        return v.clone();
    }
    let mut lap_m1 = grad_div(v);
    for _ in 0..m - 1 {
        lap_m1 = laplacian_vec(&lap_m1);
    }
    let mut lap_m = v.clone();
    for _ in 0..m {
        lap_m = laplacian_vec(&lap_m);
    }
    let bp1m_minus_1 = pow_rat(&(b + Rational::one()), m) - Rational::one();
    let b_inv_m = Rational::one() / pow_rat(b, m);
    (&lap_m + &lap_m1.scale(&bp1m_minus_1)).scale(&b_inv_m)
}

/// One Lamé basis vector: Σ_m t^{ε+2m}/(ε+2m)! · T₂ᵐ(x^l ς_r), a
/// polynomial in (t, x₁..xₙ) exactly annihilated by the Lamé operator.
/// `r` is 1-based; `l` has length n.
pub fn lame_basis_vector(
    n: usize,
    r: usize,
    eps: u8,
    l: &[u32],
    b: &Rational,
) -> Result<VectorPolynomial> {
    assert!((1..=n).contains(&r));
    assert_eq!(l.len(), n);
    let params = LameParameters::from_b(b.clone())?;
    let mut exps = vec![0u32; n + 1];
    exps[1..].copy_from_slice(l);
    let seed = VectorPolynomial::unit(
        n,
        n + 1,
        r - 1,
        Polynomial::monomial(n + 1, &exps, Rational::one()),
    );

    let mut u = VectorPolynomial::zero(n, n + 1);
    let mut power = seed;
    let mut m = 0u32;
    while !power.is_zero() {
        let e = u32::from(eps) + 2 * m;
        let c = inv_factorial(e);
        let t_mono = Monomial::one(n + 1).mul_var(0, e);
        u = &u + &power.map(|p| p.mul_monomial(&t_mono, &c));
        power = lame_t2_apply(&power, b);
        m += 1;
    }

    if !lame_apply(&u, &params).is_zero() {
        return Err(Error::VerificationFailed {
            family: "lame".into(),
            params: format!("{{\"r\":{r},\"eps\":{eps},\"l\":{l:?}}}"),
            condition: "lame_apply != 0".into(),
        });
    }
    Ok(u)
}

/// All Lamé basis vectors of total space degree ≤ `max_degree` (over the
/// spatial exponents), for r = 1..n and ε ∈ {0,1}.
pub fn lame_basis(n: usize, max_degree: u32, b: &Rational) -> Result<Vec<BasisVector>> {
    let mut out = Vec::new();
    for r in 1..=n {
        for eps in 0..=1u8 {
            for d in 0..=max_degree {
                for l in crate::harmonics::compositions(d, n) {
                    let v = lame_basis_vector(n, r, eps, &l, b)?;
                    out.push(BasisVector {
                        family: Family::Lame,
                        params: BasisParams::Indexed { j: r, eps, l },
                        value: v,
                    });
                }
            }
        }
    }
    Ok(out)
}
