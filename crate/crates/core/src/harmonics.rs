//! Scalar harmonic polynomials: dimension counts and the explicit
//! w(ε, l₂, …, lₙ) basis of the degree-k harmonics in n variables.

use num::{BigInt, Zero};

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::{binomial, multinomial, rat_int, Rational};

/// Number of monomials of total degree `k` in `n` variables.
pub fn dim_poly(n: usize, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    bigint_to_u64(binomial(k + n as i64 - 1, n as i64 - 1))
}

/// dim ℋ_k = C(k+n−2, n−2) + C(k+n−3, n−2), with dim ℋ_k = 0 for k < 0
/// and dim ℋ_0 = 1.
pub fn dim_harmonic(n: usize, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let n = n as i64;
    bigint_to_u64(binomial(k + n - 2, n - 2) + binomial(k + n - 3, n - 2))
}

fn bigint_to_u64(b: BigInt) -> u64 {
    num::ToPrimitive::to_u64(&b).expect("dimension overflows u64")
}

/// Index of one basis harmonic: the leading exponent data (ε, l₂, …, lₙ)
/// with ε + Σ l_j = k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicIndex {
    pub eps: u8,
    pub l: Vec<u32>,
}

/// All (ε, l⃗) with ε ∈ {0,1} and ε + Σ l_j = k, ε ascending then l⃗ in
/// deterministic composition order.
pub fn harmonic_indices(n: usize, k: u32) -> Vec<HarmonicIndex> {
    let mut out = Vec::new();
    for eps in 0..=1u8 {
        if u32::from(eps) > k {
            continue;
        }
        for l in compositions(k - u32::from(eps), n - 1) {
            out.push(HarmonicIndex { eps, l });
        }
    }
    out
}

/// Nonnegative integer vectors of length `parts` summing to `total`,
/// lexicographic by first coordinate descending.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in (0..=total).rev() {
            prefix.push(v);
            rec(total - v, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// The basis harmonic w(ε, l₂, …, lₙ): a finite sum over multi-indices
/// (r₂, …, rₙ) with 0 ≤ r_s ≤ ⌊l_s/2⌋, since C(l_s, 2r_s) kills the rest.
/// Each term carries the monomial x₁^{ε+2Σr} Π x_j^{l_j − 2r_j}.
pub fn harmonic_basis_element(n: usize, idx: &HarmonicIndex) -> Polynomial {
    assert_eq!(idx.l.len(), n - 1);
    let eps = u32::from(idx.eps);
    let mut p = Polynomial::zero(n);
    for r in bounded_tuples(&idx.l.iter().map(|&l| l / 2).collect::<Vec<_>>()) {
        let rsum: u32 = r.iter().sum();
        // numerator: (-1)^Σr · multinomial(Σr; r) · Π C(l_s, 2r_s)
        let mut num = multinomial(&r.iter().map(|&v| u64::from(v)).collect::<Vec<_>>());
        for (s, &rs) in r.iter().enumerate() {
            num *= binomial(i64::from(idx.l[s]), 2 * i64::from(rs));
        }
        if num.is_zero() {
            continue;
        }
        if rsum % 2 == 1 {
            num = -num;
        }
        // denominator: (1 + 2εΣr) · multinomial(2Σr; 2r)
        let den = rat_int(1 + 2 * i64::from(eps) * i64::from(rsum))
            * Rational::from(multinomial(&r.iter().map(|&v| 2 * u64::from(v)).collect::<Vec<_>>()));
        let coef = Rational::from(num) / den;

        let mut exps = vec![0u32; n];
        exps[0] = eps + 2 * rsum;
        for (s, &rs) in r.iter().enumerate() {
            exps[s + 1] = idx.l[s] - 2 * rs;
        }
        p.add_term(Monomial(exps), coef);
    }
    p
}

/// Tuples (t₁, …, t_m) with 0 ≤ t_i ≤ bound_i.
fn bounded_tuples(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for t in &out {
            for v in 0..=b {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// The explicit basis of ℋ_k: exactly `dim_harmonic(n, k)` homogeneous
/// degree-k polynomials, each exactly annihilated by the full Laplacian.
pub fn harmonic_basis(n: usize, k: u32) -> Vec<(HarmonicIndex, Polynomial)> {
    assert!(n >= 2);
    harmonic_indices(n, k)
        .into_iter()
        .map(|idx| {
            let p = harmonic_basis_element(n, &idx);
            (idx, p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::laplacian;
    use crate::rational::rat;

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_harmonic(3, 2), 5);
        for n in 2..=6 {
            assert_eq!(dim_harmonic(n, 0), 1);
        }
        assert_eq!(dim_harmonic(5, 3), 30);
        assert_eq!(dim_harmonic(3, -1), 0);
        // n=3: 2k+1
        for k in 0..8 {
            assert_eq!(dim_harmonic(3, k), (2 * k + 1) as u64);
        }
        // n=4: (k+1)^2
        for k in 0..8 {
            assert_eq!(dim_harmonic(4, k), ((k + 1) * (k + 1)) as u64);
        }
    }

    #[test]
    fn pascal_cross_check() {
        // dim ℋ_k = C(k+n−1, n−1) − C(k+n−3, n−1)
        for n in 2..=6usize {
            for k in 0..=8i64 {
                let alt = binomial(k + n as i64 - 1, n as i64 - 1)
                    - binomial(k + n as i64 - 3, n as i64 - 1);
                assert_eq!(rat_int(dim_harmonic(n, k) as i64), Rational::from(alt));
            }
        }
    }

    #[test]
    fn named_elements() {
        // w(ε=0, l2=2), n=3, k=2 → x2² − x1²
        let w = harmonic_basis_element(
            3,
            &HarmonicIndex {
                eps: 0,
                l: vec![2, 0],
            },
        );
        let want = &Polynomial::monomial(3, &[0, 2, 0], rat(1, 1))
            - &Polynomial::monomial(3, &[2, 0, 0], rat(1, 1));
        assert_eq!(w, want);
        // w(ε=1, l2=1), n=3, k=2 → x1 x2
        let w = harmonic_basis_element(
            3,
            &HarmonicIndex {
                eps: 1,
                l: vec![1, 0],
            },
        );
        assert_eq!(w, Polynomial::monomial(3, &[1, 1, 0], rat(1, 1)));
    }

    #[test]
    fn basis_is_harmonic_and_counted() {
        for n in 2..=5usize {
            for k in 0..=5u32 {
                let basis = harmonic_basis(n, k);
                assert_eq!(basis.len() as u64, dim_harmonic(n, k as i64));
                for (idx, w) in &basis {
                    assert!(!w.is_zero(), "zero basis harmonic at {idx:?}");
                    assert!(w.is_homogeneous_of(k));
                    assert!(
                        laplacian(w).is_zero(),
                        "Δ w != 0 at n={n} k={k} {idx:?}: {w}"
                    );
                }
            }
        }
    }
}
