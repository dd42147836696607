//! Vector-valued polynomials: `n` polynomial components sharing a
//! variable count.
//!
//! Spatial-only vectors have `varcount == ncomp`; Lamé-context vectors
//! have `varcount == ncomp + 1` with the time variable in slot 0. The
//! difference is the `spatial_offset`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct VectorPolynomial {
    components: Vec<Polynomial>,
}

impl VectorPolynomial {
    pub fn new(components: Vec<Polynomial>) -> Self {
        assert!(!components.is_empty(), "empty vector polynomial");
        let vc = components[0].varcount();
        assert!(
            components.iter().all(|p| p.varcount() == vc),
            "variable count mismatch across components"
        );
        VectorPolynomial { components }
    }

    pub fn zero(ncomp: usize, varcount: usize) -> Self {
        Self::new(vec![Polynomial::zero(varcount); ncomp])
    }

    /// `p * ς_r` with `r` a 0-based component slot.
    pub fn unit(ncomp: usize, varcount: usize, comp: usize, p: Polynomial) -> Self {
        let mut v = Self::zero(ncomp, varcount);
        v.components[comp] = p;
        v
    }

    pub fn ncomp(&self) -> usize {
        self.components.len()
    }

    pub fn varcount(&self) -> usize {
        self.components[0].varcount()
    }

    /// 0 for spatial-only vectors, 1 when slot 0 is the time variable.
    pub fn spatial_offset(&self) -> usize {
        let off = self.varcount() - self.ncomp();
        assert!(off <= 1, "varcount must be ncomp or ncomp+1");
        off
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn component_mut(&mut self, i: usize) -> &mut Polynomial {
        &mut self.components[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.components.iter().map(|p| p.scale(c)).collect())
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.components.iter().all(|p| p.is_homogeneous_of(d))
    }

    /// Applies `f` to each component.
    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> Self {
        Self::new(self.components.iter().map(f).collect())
    }

    pub fn evaluate(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.evaluate(point)).collect()
    }

    /// Simultaneous variable and component permutation; `var_perm` and
    /// `comp_perm` follow the `Monomial::permuted` convention.
    pub fn permuted(&self, var_perm: &[usize], comp_perm: &[usize]) -> Self {
        assert_eq!(comp_perm.len(), self.ncomp());
        Self::new(
            comp_perm
                .iter()
                .map(|&c| self.components[c].permuted_vars(var_perm))
                .collect(),
        )
    }

    pub fn audit_canonical(&self) -> bool {
        self.components.iter().all(|p| p.audit_canonical())
    }
}

impl Add for &VectorPolynomial {
    type Output = VectorPolynomial;
    fn add(self, rhs: &VectorPolynomial) -> VectorPolynomial {
        assert_eq!(self.ncomp(), rhs.ncomp(), "component count mismatch");
        VectorPolynomial::new(
            self.components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &VectorPolynomial {
    type Output = VectorPolynomial;
    fn sub(self, rhs: &VectorPolynomial) -> VectorPolynomial {
        assert_eq!(self.ncomp(), rhs.ncomp(), "component count mismatch");
        VectorPolynomial::new(
            self.components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &VectorPolynomial {
    type Output = VectorPolynomial;
    fn neg(self) -> VectorPolynomial {
        self.map(|p| -p)
    }
}

impl fmt::Debug for VectorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}
