//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the grid it covered. Run with
//! `cargo test -p navier-core --test acceptance -- --nocapture`.

use std::f64::consts::PI;

use navier_core::decomp::{
    basis_k1, basis_k2, basis_k3, basis_k2_pm, oracle_harmonic_divfree, oracle_nullspace,
    EigenSign,
};
use navier_core::diffops::{d_operator, navier_apply, so_action, LameParameters};
use navier_core::flag::{lame_basis_vector, uniform_basis, CoeffTable};
use navier_core::harmonics::{compositions, dim_harmonic};
use navier_core::ivp::{
    lame_ivp_evaluate, navier_ivp_evaluate, residual_check, BoxDomain, FourierMode, ResidualKind,
    TruncationPolicy,
};
use navier_core::linalg::{rank_of_rows, Echelon, VecBasis};
use navier_core::rational::{rat, to_f64, Rational};
use navier_core::vecpoly::VectorPolynomial;
use navier_core::decomp;

fn b_grid_small() -> Vec<Rational> {
    vec![rat(1, 1), rat(2, 1), rat(-1, 2)]
}

/// Deterministic pseudo-random points in [−w, w]^dim.
fn test_points(dim: usize, count: usize, w: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| (0..dim).map(|_| (2.0 * next() - 1.0) * w).collect())
        .collect()
}

// AC-1: |uniform_basis(n,k,b)| = n·dim ℋ_k for n ∈ {3,4,5,6}, k = 0..6,
// every member exactly annihilated for b ∈ {1, 2, −1/2}, exact rank =
// count (annihilation and rank verified inside `uniform_basis`, which
// hard-errors otherwise).
#[test]
fn ac1_uniform_basis_dimension() {
    for n in 3..=6usize {
        for k in 0..=6u32 {
            let expected = n as u64 * dim_harmonic(n, i64::from(k));
            for b in b_grid_small() {
                let basis = uniform_basis(n, k, &b).unwrap_or_else(|e| {
                    panic!("AC-1 FAIL at n={n}, k={k}, b={b}: {e}");
                });
                assert_eq!(
                    basis.len() as u64,
                    expected,
                    "AC-1 count mismatch at n={n}, k={k}, b={b}"
                );
            }
            if n == 3 {
                assert_eq!(expected, 3 * (2 * u64::from(k) + 1));
            }
        }
    }
    println!("AC-1 PASS: uniform basis counts n*dimH_k, annihilation and rank exact, n=3..6, k=0..6, b in {{1, 2, -1/2}}");
}

// AC-2: family sizes |K1| = dim ℋ_{k+1}, |K3| = dim ℋ_{k−1},
// |K2| = n·dim ℋ_k − dim ℋ_{k+1} − dim ℋ_{k−1}; concatenated rank =
// sum of sizes; span equals the oracle nullspace span (mutual
// containment by exact rank), for n ∈ {3,4,5}, k = 1..5, four b values.
#[test]
fn ac2_three_family_decomposition() {
    let b_values = vec![rat(1, 1), rat(2, 1), rat(-1, 2), rat(3, 7)];
    for n in 3..=5usize {
        for k in 1..=5u32 {
            let d = |kk: i64| dim_harmonic(n, kk);
            let k1 = basis_k1(n, k).unwrap();
            let k2 = basis_k2(n, k).unwrap();
            assert_eq!(k1.len() as u64, d(i64::from(k) + 1), "n={n} k={k}");
            assert_eq!(
                k2.len() as u64,
                n as u64 * d(i64::from(k)) - d(i64::from(k) + 1) - d(i64::from(k) - 1),
                "n={n} k={k}"
            );
            let vb = VecBasis::new(n, n, k);
            for b in &b_values {
                let k3 = basis_k3(n, k, b).unwrap();
                assert_eq!(k3.len() as u64, d(i64::from(k) - 1), "n={n} k={k} b={b}");
                let total = k1.len() + k2.len() + k3.len();

                let mut ech = Echelon::new();
                for bv in k1.iter().chain(&k2).chain(&k3) {
                    ech.insert(vb.row_of(&bv.value));
                }
                assert_eq!(ech.rank(), total, "family rank defect n={n} k={k} b={b}");

                let params = LameParameters::from_b(b.clone()).unwrap();
                let oracle = oracle_nullspace(n, k, &params);
                assert_eq!(oracle.len(), total, "oracle count n={n} k={k} b={b}");
                // oracle ⊆ families (rank equality gives the reverse)
                for v in &oracle {
                    assert!(
                        ech.contains(vb.row_of(v)),
                        "oracle vector outside family span at n={n} k={k} b={b}"
                    );
                }
                let oracle_rank = rank_of_rows(oracle.iter().map(|v| vb.row_of(v)));
                assert_eq!(oracle_rank, total, "oracle rank n={n} k={k} b={b}");
            }
        }
    }
    println!("AC-2 PASS: K1/K2/K3 sizes, direct-sum rank, and span = oracle nullspace, n=3..5, k=1..5, b in {{1, 2, -1/2, 3/7}}");
}

// AC-3: n = 4, k = 1..4: 𝒟v = −(k+1)·v exactly on every K2− member and
// +(k+1) on the swap images; each part has exactly k(k+2) members.
#[test]
fn ac3_d_operator_eigenspaces() {
    let expected = [3usize, 8, 15, 24];
    for k in 1..=4u32 {
        let minus = basis_k2_pm(k, EigenSign::Minus).unwrap();
        let plus = basis_k2_pm(k, EigenSign::Plus).unwrap();
        assert_eq!(minus.len(), expected[k as usize - 1], "k={k}");
        assert_eq!(plus.len(), expected[k as usize - 1], "k={k}");
        let lam = rat(i64::from(k) + 1, 1);
        for bv in &minus {
            let dv = d_operator(&bv.value).unwrap();
            assert_eq!(dv, bv.value.scale(&(-lam.clone())), "k={k} minus");
        }
        for bv in &plus {
            let dv = d_operator(&bv.value).unwrap();
            assert_eq!(dv, bv.value.scale(&lam), "k={k} plus");
        }
        // both parts together have full K2 rank
        let vb = VecBasis::new(4, 4, k);
        let rank = rank_of_rows(minus.iter().chain(&plus).map(|b| vb.row_of(&b.value)));
        assert_eq!(rank, 2 * expected[k as usize - 1], "k={k} direct sum");
    }
    println!("AC-3 PASS: D eigenvalues -(k+1)/+(k+1) exact with counts 3, 8, 15, 24, n=4, k=1..4");
}

// AC-4: every o(n,ℝ) generator applied to every family basis vector
// stays exactly annihilated, n ∈ {3,4}, k ≤ 4.
#[test]
fn ac4_rotation_invariance() {
    for n in 3..=4usize {
        for k in 0..=4u32 {
            for b in b_grid_small() {
                let params = LameParameters::from_b(b.clone()).unwrap();
                let mut all = basis_k1(n, k).unwrap();
                if k >= 1 {
                    all.extend(basis_k2(n, k).unwrap());
                }
                all.extend(basis_k3(n, k, &b).unwrap());
                for bv in &all {
                    for r in 1..=n {
                        for s in r + 1..=n {
                            let moved = so_action(r, s, &bv.value);
                            assert!(
                                navier_apply(&moved, &params).is_zero(),
                                "AC-4 violation at n={n} k={k} b={b} family={:?} (r,s)=({r},{s})",
                                bv.family
                            );
                        }
                    }
                }
            }
        }
    }
    println!("AC-4 PASS: so(n) generators map family solutions to solutions exactly, n=3..4, k<=4, b in {{1, 2, -1/2}}");
}

// AC-5: span(K1 ∪ K2) equals the exact nullspace of {componentwise
// harmonic, divergence = 0}, verified by rank both ways, n ∈ {3,4},
// k ≤ 4.
#[test]
fn ac5_divergence_free_characterization() {
    for n in 3..=4usize {
        for k in 0..=4u32 {
            let mut fam = basis_k1(n, k).unwrap();
            if k >= 1 {
                fam.extend(basis_k2(n, k).unwrap());
            }
            let oracle = oracle_harmonic_divfree(n, k);
            assert_eq!(fam.len(), oracle.len(), "count n={n} k={k}");
            let vb = VecBasis::new(n, n, k);
            let mut ech_fam = Echelon::new();
            for bv in &fam {
                ech_fam.insert(vb.row_of(&bv.value));
            }
            assert_eq!(ech_fam.rank(), fam.len(), "family rank n={n} k={k}");
            let mut ech_oracle = Echelon::new();
            for v in &oracle {
                ech_oracle.insert(vb.row_of(v));
            }
            assert_eq!(ech_oracle.rank(), oracle.len(), "oracle rank n={n} k={k}");
            for v in &oracle {
                assert!(ech_fam.contains(vb.row_of(v)), "oracle ⊄ span n={n} k={k}");
            }
            for bv in &fam {
                assert!(
                    ech_oracle.contains(vb.row_of(&bv.value)),
                    "span ⊄ oracle n={n} k={k}"
                );
            }
        }
    }
    println!("AC-5 PASS: span(K1 ∪ K2) = {{harmonic, divergence-free}} nullspace by rank both ways, n=3..4, k<=4");
}

// AC-6: n = 3, box (1,1), single-mode g₀ and g₁ with unit amplitudes:
// u(0,·) = g₀ to 1e−10, ∂ₓ₁u(0,·) = g₁ to 1e−6 (central difference),
// and the finite-difference Navier residual over |x₁| ≤ 0.5 is ≤ 1e−6
// with max_m = 40.
#[test]
fn ac6_navier_ivp_single_mode() {
    let b = rat(1, 1);
    let domain = BoxDomain::new(vec![1.0, 1.0]).unwrap();
    let policy = TruncationPolicy {
        max_m: 40,
        tail_tol: 1e-12,
    };
    let mode = |kvec: Vec<u32>| FourierMode {
        kvec,
        cos_amp: vec![1.0; 3],
        sin_amp: vec![1.0; 3],
    };
    let g0 = vec![mode(vec![1, 1])];
    let g1 = vec![mode(vec![1, 1])];
    let mut table = CoeffTable::new(b.clone());
    let data = |xs: &[f64]| {
        let theta = 2.0 * PI * (xs[0] + xs[1]);
        theta.cos() + theta.sin()
    };

    let points = test_points(2, 20, 1.0, 7);
    for xs in &points {
        let (u, rep) = navier_ivp_evaluate(
            &g0,
            &g1,
            &b,
            &domain,
            &[0.0, xs[0], xs[1]],
            &policy,
            &mut table,
        );
        assert!(rep.converged, "AC-6: not converged at {xs:?}");
        let want = data(xs);
        for c in 0..3 {
            assert!(
                (u[c] - want).abs() <= 1e-10,
                "AC-6 u(0) error {} at {xs:?}",
                (u[c] - want).abs()
            );
        }
        let h = 1e-5;
        let (up, _) = navier_ivp_evaluate(&g0, &g1, &b, &domain, &[h, xs[0], xs[1]], &policy, &mut table);
        let (dn, _) = navier_ivp_evaluate(&g0, &g1, &b, &domain, &[-h, xs[0], xs[1]], &policy, &mut table);
        for c in 0..3 {
            let d = (up[c] - dn[c]) / (2.0 * h);
            assert!(
                (d - want).abs() <= 1e-6,
                "AC-6 du/dx1 error {} at {xs:?}",
                (d - want).abs()
            );
        }
    }

    // FD residual over |x1| ≤ 0.5
    let table2 = std::cell::RefCell::new(CoeffTable::new(b.clone()));
    let eval = |point: &[f64]| {
        navier_ivp_evaluate(&g0, &g1, &b, &domain, point, &policy, &mut table2.borrow_mut()).0
    };
    let res_points = test_points(3, 10, 0.5, 11);
    let res = residual_check(eval, ResidualKind::Navier { b: to_f64(&b) }, &res_points, 1e-4);
    assert!(res <= 1e-6, "AC-6 residual {res} exceeds 1e-6");
    println!("AC-6 PASS: Navier IVP single mode: u(0)=g0 @1e-10, du/dx1(0)=g1 @1e-6, FD residual {res:.2e} <= 1e-6");
}

// AC-7: every Lamé basis vector with n ≤ 4, degree ≤ 4 is exactly
// annihilated (hard-errors otherwise); the Lamé IVP on an
// orthogonal-amplitude single mode matches cos(ωt) with
// ω² = b⁻¹Σ(2πk†)² to 1e−8 for t ∈ [0, 1].
#[test]
fn ac7_lame_basis_and_ivp() {
    let b_values = b_grid_small();
    let mut count = 0usize;
    for n in 2..=4usize {
        for b in &b_values {
            for r in 1..=n {
                for eps in 0..=1u8 {
                    for d in 0..=4u32 {
                        for l in compositions(d, n) {
                            lame_basis_vector(n, r, eps, &l, b).unwrap_or_else(|e| {
                                panic!("AC-7 FAIL at n={n} r={r} eps={eps} l={l:?} b={b}: {e}")
                            });
                            count += 1;
                        }
                    }
                }
            }
        }
    }

    // orthogonal-amplitude single mode: pure cosine wave per component
    let b = rat(2, 1);
    let domain = BoxDomain::new(vec![1.0, 1.0]).unwrap();
    let h0 = vec![FourierMode {
        kvec: vec![1, 1],
        cos_amp: vec![1.0, -1.0],
        sin_amp: vec![0.0, 0.0],
    }];
    let policy = TruncationPolicy {
        max_m: 60,
        tail_tol: 1e-15,
    };
    let omega2 = to_f64(&(rat(1, 1) / &b)) * 2.0 * (2.0 * PI).powi(2);
    let omega = omega2.sqrt();
    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        let t = i as f64 / 20.0;
        for xs in test_points(2, 5, 1.0, 3) {
            let (u, rep) = lame_ivp_evaluate(&h0, &[], &b, &domain, &[t, xs[0], xs[1]], &policy);
            assert!(rep.converged);
            let theta = 2.0 * PI * (xs[0] + xs[1]);
            let want = theta.cos() * (omega * t).cos();
            worst = worst.max((u[0] - want).abs()).max((u[1] + want).abs());
        }
    }
    assert!(worst <= 1e-8, "AC-7 wave mismatch {worst}");
    println!("AC-7 PASS: {count} Lamé basis vectors exactly annihilated (n<=4, deg<=4); IVP matches cos(ωt) to {worst:.2e} <= 1e-8");
}

// AC-8: φ₁(h) = (k−1)[ρ²·grad h − (2k+n−4)·h·x⃗] as an exact identity
// on all of harmonic_basis(n, k−1), n ∈ {3,4,5}, k ≤ 6.
#[test]
fn ac8_phi1_closed_form() {
    for n in 3..=5usize {
        for k in 1..=6u32 {
            for (idx, h) in navier_core::harmonics::harmonic_basis(n, k - 1) {
                let lhs = decomp::phi1_map(&h, n, k).unwrap();
                let rhs = decomp::phi1_closed_form(&h, n, k).unwrap();
                assert_eq!(lhs, rhs, "AC-8 mismatch at n={n} k={k} {idx:?}");
            }
        }
    }
    println!("AC-8 PASS: φ1 positionwise map equals (k-1)[ρ² grad h - (2k+n-4) h x] exactly, n=3..5, k<=6");
}

// Euler-field sanity shared by several criteria: x⃗ is a degree-1
// solution outside span(K1 ∪ K2).
#[test]
fn euler_field_is_pure_k3() {
    let b = rat(1, 1);
    for n in 3..=4usize {
        let x = navier_core::diffops::euler_field(n);
        let d = decomp::decompose(&x, n, 1, &b).unwrap();
        for (bv, c) in &d.terms {
            use navier_core::decomp::Family;
            if bv.family == Family::K3 {
                assert_eq!(c, &rat(1, 1));
            } else {
                assert_eq!(c, &rat(0, 1));
            }
        }
    }
    println!("SANITY PASS: Euler field decomposes as pure K3 at k=1");
}
