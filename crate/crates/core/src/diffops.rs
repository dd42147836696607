//! The differential operators of the theory as exact transformations:
//! Laplacians, gradient, divergence, the Navier and Lamé operators, the
//! o(n,ℝ) generator action, the n=4 operator 𝒟, and the x₁-antiderivative.
//!
//! Public functions take the paper's 1-based spatial indices; translation
//! to 0-based slots (and past a leading time slot) happens here.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{format_rational, Rational};
use crate::vecpoly::VectorPolynomial;

/// Lamé material constants (ι₁, ι₂) with the derived ratio
/// b = (ι₁+ι₂)/ι₁.
///
/// Admissibility: ι₁ > 0, 2ι₁+ι₂ > 0 and ι₁+ι₂ ≠ 0, which forces
/// b > −1 and b ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LameParameters {
    iota1: Rational,
    iota2: Rational,
    b: Rational,
}

impl LameParameters {
    pub fn new(iota1: Rational, iota2: Rational) -> Result<Self> {
        if iota1 <= Rational::zero() {
            return Err(Error::InvalidLameParameters(format!(
                "iota1 must be positive, got {}",
                format_rational(&iota1)
            )));
        }
        let two_i1_plus_i2 = &(&iota1 + &iota1) + &iota2;
        if two_i1_plus_i2 <= Rational::zero() {
            return Err(Error::InvalidLameParameters(format!(
                "2*iota1 + iota2 must be positive, got {}",
                format_rational(&two_i1_plus_i2)
            )));
        }
        let i1_plus_i2 = &iota1 + &iota2;
        if i1_plus_i2.is_zero() {
            return Err(Error::InvalidLameParameters(
                "iota1 + iota2 must be nonzero".into(),
            ));
        }
        let b = &i1_plus_i2 / &iota1;
        Ok(LameParameters { iota1, iota2, b })
    }

    /// Parameters with ι₁ = 1 realizing a given ratio b.
    pub fn from_b(b: Rational) -> Result<Self> {
        let iota2 = &b - &Rational::one();
        Self::new(Rational::one(), iota2)
    }

    pub fn iota1(&self) -> &Rational {
        &self.iota1
    }

    pub fn iota2(&self) -> &Rational {
        &self.iota2
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }
}

/// Sum of second partials over the given 0-based slots.
pub fn laplacian_slots<I: IntoIterator<Item = usize>>(p: &Polynomial, slots: I) -> Polynomial {
    let mut out = Polynomial::zero(p.varcount());
    for s in slots {
        out = &out + &p.partial(s).partial(s);
    }
    out
}

/// Full Laplacian over every variable of `p`.
pub fn laplacian(p: &Polynomial) -> Polynomial {
    laplacian_slots(p, 0..p.varcount())
}

/// Δ restricted to the first `s` variables (the paper's Δ_s).
pub fn laplacian_prefix(p: &Polynomial, s: usize) -> Polynomial {
    laplacian_slots(p, 0..s)
}

/// Δ_{2,n}: second partials over the spatial variables x₂..xₙ of a
/// spatial-only polynomial.
pub fn laplacian_2n(p: &Polynomial) -> Polynomial {
    laplacian_slots(p, 1..p.varcount())
}

/// Gradient of a spatial-only scalar: (∂₁p, …, ∂ₙp)ᵀ.
pub fn gradient(p: &Polynomial) -> VectorPolynomial {
    VectorPolynomial::new((0..p.varcount()).map(|s| p.partial(s)).collect())
}

/// Gradient over the spatial slots of a scalar that may carry a time
/// variable in slot 0; the result has `varcount - offset` components.
fn gradient_spatial(p: &Polynomial, offset: usize) -> VectorPolynomial {
    VectorPolynomial::new((offset..p.varcount()).map(|s| p.partial(s)).collect())
}

/// Σ_r ∂_r v_r over the spatial variables.
pub fn divergence(v: &VectorPolynomial) -> Polynomial {
    let off = v.spatial_offset();
    let mut out = Polynomial::zero(v.varcount());
    for r in 0..v.ncomp() {
        out = &out + &v.component(r).partial(off + r);
    }
    out
}

/// Componentwise spatial Laplacian.
pub fn laplacian_vec(v: &VectorPolynomial) -> VectorPolynomial {
    let off = v.spatial_offset();
    let vc = v.varcount();
    v.map(|p| laplacian_slots(p, off..vc))
}

/// The Hessian composite (∇ᵀ·∇)(v) = grad(div v) over spatial variables.
pub fn grad_div(v: &VectorPolynomial) -> VectorPolynomial {
    gradient_spatial(&divergence(v), v.spatial_offset())
}

/// The Navier operator ι₁Δv + (ι₁+ι₂)·∇(∇·v); `v` solves the Navier
/// equations iff the result is the zero vector.
pub fn navier_apply(v: &VectorPolynomial, params: &LameParameters) -> VectorPolynomial {
    assert_eq!(v.spatial_offset(), 0, "Navier operator takes spatial vectors");
    let i1_plus_i2 = params.iota1() + params.iota2();
    &laplacian_vec(v).scale(params.iota1()) + &grad_div(v).scale(&i1_plus_i2)
}

/// The normalized form Δv + b·∇(∇·v); same kernel as [`navier_apply`]
/// since the two differ by the positive factor ι₁.
pub fn navier_apply_normalized(v: &VectorPolynomial, b: &Rational) -> VectorPolynomial {
    assert_eq!(v.spatial_offset(), 0, "Navier operator takes spatial vectors");
    &laplacian_vec(v) + &grad_div(v).scale(b)
}

/// The Lamé operator ∂ₜ²u − b⁻¹Δu − ∇(∇·u) on vectors with time in
/// slot 0.
pub fn lame_apply(u: &VectorPolynomial, params: &LameParameters) -> VectorPolynomial {
    assert_eq!(u.spatial_offset(), 1, "Lamé operator needs a time variable");
    let u_tt = u.map(|p| p.partial(0).partial(0));
    let b_inv = Rational::one() / params.b();
    &(&u_tt - &laplacian_vec(u).scale(&b_inv)) - &grad_div(u)
}

/// The o(n,ℝ) generator E_{r,s} − E_{s,r} acting on a vector field:
/// (x_r∂_s − x_s∂_r)(f⃗) + f_sς_r − f_rς_s. Indices are 1-based spatial,
/// r < s.
pub fn so_action(r: usize, s: usize, v: &VectorPolynomial) -> VectorPolynomial {
    let n = v.ncomp();
    assert!(r >= 1 && s <= n && r < s, "need 1 <= r < s <= n");
    let off = v.spatial_offset();
    let (ri, si) = (off + r - 1, off + s - 1);
    let vc = v.varcount();
    let x_r = Polynomial::variable(vc, ri);
    let x_s = Polynomial::variable(vc, si);
    let mut out = v.map(|p| &(&x_r * &p.partial(si)) - &(&x_s * &p.partial(ri)));
    *out.component_mut(r - 1) = &(out.component(r - 1).clone()) + v.component(s - 1);
    *out.component_mut(s - 1) = &(out.component(s - 1).clone()) - v.component(r - 1);
    out
}

/// The scalar counterpart x_r∂_s − x_s∂_r, used in equivariance checks.
pub fn so_action_scalar(r: usize, s: usize, p: &Polynomial) -> Polynomial {
    let (ri, si) = (r - 1, s - 1);
    let x_r = Polynomial::variable(p.varcount(), ri);
    let x_s = Polynomial::variable(p.varcount(), si);
    &(&x_r * &p.partial(si)) - &(&x_s * &p.partial(ri))
}

/// d_{r,s} = x_s∂_r − x_r∂_s (1-based spatial indices).
fn d_rs(r: usize, s: usize, p: &Polynomial) -> Polynomial {
    let (ri, si) = (r - 1, s - 1);
    let x_r = Polynomial::variable(p.varcount(), ri);
    let x_s = Polynomial::variable(p.varcount(), si);
    &(&x_s * &p.partial(ri)) - &(&x_r * &p.partial(si))
}

/// Entry pattern of the 4×4 operator matrix 𝒟; `None` on the diagonal,
/// otherwise the (r,s) of d_{r,s}.
const D_ENTRIES: [[Option<(usize, usize)>; 4]; 4] = [
    [None, Some((3, 4)), Some((4, 2)), Some((2, 3))],
    [Some((4, 3)), None, Some((1, 4)), Some((3, 1))],
    [Some((2, 4)), Some((4, 1)), None, Some((1, 2))],
    [Some((3, 2)), Some((1, 3)), Some((2, 1)), None],
];

/// The n=4 operator 𝒟: result_i = Σ_j 𝒟_{ij}(v_j). Its ±(k+1)
/// eigenspaces split the harmonic x⃗-orthogonal summand when n = 4.
pub fn d_operator(v: &VectorPolynomial) -> Result<VectorPolynomial> {
    if v.ncomp() != 4 || v.spatial_offset() != 0 {
        return Err(Error::Parse(format!(
            "operator D needs exactly 4 spatial components, got {}",
            v.ncomp()
        )));
    }
    let mut comps = Vec::with_capacity(4);
    for row in &D_ENTRIES {
        let mut acc = Polynomial::zero(4);
        for (j, entry) in row.iter().enumerate() {
            if let Some((r, s)) = entry {
                acc = &acc + &d_rs(*r, *s, v.component(j));
            }
        }
        comps.push(acc);
    }
    Ok(VectorPolynomial::new(comps))
}

/// Monomial-wise antiderivative in x₁ with zero constant; ∂₁ ∘ ∫ = id.
pub fn x1_integrate(p: &Polynomial) -> Polynomial {
    p.integrate(0)
}

/// The Euler field x⃗ = Σ x_l ς_l.
pub fn euler_field(n: usize) -> VectorPolynomial {
    VectorPolynomial::new((0..n).map(|s| Polynomial::variable(n, s)).collect())
}

/// ρ² = x₁² + ⋯ + xₙ².
pub fn radius_squared(n: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for s in 0..n {
        let x = Polynomial::variable(n, s);
        p = &p + &(&x * &x);
    }
    p
}
