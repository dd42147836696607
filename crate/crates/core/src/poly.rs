//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! The term map never stores a zero coefficient, so structural equality of
//! term maps is exact polynomial equality. The zero polynomial is the
//! empty map and its degree is `None`, never a sentinel integer.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::monomial::Monomial;
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    varcount: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(varcount: usize) -> Self {
        Polynomial {
            varcount,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(varcount: usize, c: Rational) -> Self {
        let mut p = Self::zero(varcount);
        p.add_term(Monomial::one(varcount), c);
        p
    }

    pub fn one(varcount: usize) -> Self {
        Self::constant(varcount, Rational::one())
    }

    /// The variable `x` living in `slot` (0-based).
    pub fn variable(varcount: usize, slot: usize) -> Self {
        let mut p = Self::zero(varcount);
        p.add_term(Monomial::var(varcount, slot), Rational::one());
        p
    }

    pub fn from_terms<I>(varcount: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(varcount);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(varcount: usize, exps: &[u32], coef: Rational) -> Self {
        assert_eq!(exps.len(), varcount);
        let mut p = Self::zero(varcount);
        p.add_term(Monomial(exps.to_vec()), coef);
        p
    }

    pub fn varcount(&self) -> usize {
        self.varcount
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulates a term, pruning the entry if the sum cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.varcount, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// `Some(d)` when every term has total degree `d`; zero is vacuously
    /// homogeneous of any degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.varcount);
        }
        Polynomial {
            varcount: self.varcount,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, coef: &Rational) -> Polynomial {
        if coef.is_zero() {
            return Polynomial::zero(self.varcount);
        }
        Polynomial {
            varcount: self.varcount,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v * coef))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to the variable in `slot`.
    pub fn partial(&self, slot: usize) -> Polynomial {
        assert!(slot < self.varcount, "slot {slot} out of range");
        let mut out = Polynomial::zero(self.varcount);
        for (m, c) in &self.terms {
            let e = m.0[slot];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[slot] -= 1;
            out.add_term(Monomial(exps), c * rational::rat_int(e as i64));
        }
        out
    }

    /// Exact division by `x_slot`: returns `q` with `x_slot * q == self`
    /// when every term is divisible, `None` otherwise. Never truncates.
    pub fn divide_by_variable(&self, slot: usize) -> Option<Polynomial> {
        assert!(slot < self.varcount, "slot {slot} out of range");
        let mut out = Polynomial::zero(self.varcount);
        for (m, c) in &self.terms {
            out.add_term(m.div_var(slot)?, c.clone());
        }
        Some(out)
    }

    /// Monomial-wise antiderivative in `slot` with zero constant;
    /// `partial(slot)` is its exact left inverse.
    pub fn integrate(&self, slot: usize) -> Polynomial {
        assert!(slot < self.varcount, "slot {slot} out of range");
        let mut out = Polynomial::zero(self.varcount);
        for (m, c) in &self.terms {
            let e = m.0[slot];
            let mut exps = m.0.clone();
            exps[slot] += 1;
            out.add_term(Monomial(exps), c / rational::rat_int(e as i64 + 1));
        }
        out
    }

    /// Applies a variable permutation: the result's slot `i` carries what
    /// `slot perm[i]` carried.
    pub fn permuted_vars(&self, perm: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(self.varcount);
        for (m, c) in &self.terms {
            out.add_term(m.permuted(perm), c.clone());
        }
        out
    }

    /// Floating-point evaluation by direct term summation.
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.varcount, "point length mismatch");
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational::to_f64(c);
            for (slot, &e) in m.0.iter().enumerate() {
                t *= point[slot].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Audits the canonical-form invariants of every stored coefficient.
    pub fn audit_canonical(&self) -> bool {
        self.terms
            .values()
            .all(|c| !c.is_zero() && rational::is_canonical(c))
            && self.terms.keys().all(|m| m.nvars() == self.varcount)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.varcount, rhs.varcount, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.varcount, rhs.varcount, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.varcount, rhs.varcount, "variable count mismatch");
        let mut out = Polynomial::zero(self.varcount);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = rational::format_rational(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(stripped) => (true, stripped.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_const = m.degree() == 0;
            if is_const || mag != "1" {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for (slot, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                write!(f, "{sep}x{}", slot + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x(slot: usize) -> Polynomial {
        Polynomial::variable(2, slot)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let want = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, want);
    }

    #[test]
    fn additive_identity() {
        let p = &(&x(0) * &x(0)) + &x(1);
        assert_eq!(&p + &Polynomial::zero(2), p);
    }

    #[test]
    fn rational_coefficient_product() {
        let p = x(0).scale(&rat(1, 2));
        let q = x(0).scale(&rat(2, 3));
        let pq = &p * &q;
        assert_eq!(pq, Polynomial::monomial(2, &[2, 0], rat(1, 3)));
    }

    #[test]
    fn partials() {
        // d/dx1 (x1^3 x2) = 3 x1^2 x2
        let p = Polynomial::monomial(2, &[3, 1], rat(1, 1));
        assert_eq!(p.partial(0), Polynomial::monomial(2, &[2, 1], rat(3, 1)));
        // d/dx2 (x1^3) = 0
        let q = Polynomial::monomial(2, &[3, 0], rat(1, 1));
        assert!(q.partial(1).is_zero());
        // d/dx1 (x1^2 + x2^2) = 2 x1
        let r = &(&x(0) * &x(0)) + &(&x(1) * &x(1));
        assert_eq!(r.partial(0), x(0).scale(&rat(2, 1)));
    }

    #[test]
    fn divide_by_variable_contract() {
        // (x1 x2 + x2^2) / x2 = x1 + x2
        let p = &(&x(0) * &x(1)) + &(&x(1) * &x(1));
        assert_eq!(p.divide_by_variable(1), Some(&x(0) + &x(1)));
        // (x1 + x2) / x1 fails
        assert_eq!((&x(0) + &x(1)).divide_by_variable(0), None);
        // 0 / xi = 0
        assert_eq!(
            Polynomial::zero(2).divide_by_variable(0),
            Some(Polynomial::zero(2))
        );
    }

    #[test]
    fn integrate_right_inverse() {
        let p = Polynomial::monomial(2, &[1, 0], rat(1, 1));
        assert_eq!(p.integrate(0), Polynomial::monomial(2, &[2, 0], rat(1, 2)));
        let q = Polynomial::monomial(2, &[0, 3], rat(1, 1));
        assert_eq!(q.integrate(0), Polynomial::monomial(2, &[1, 3], rat(1, 1)));
    }

    #[test]
    fn evaluation() {
        let p = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p.evaluate(&[2.0, 1.0]), 3.0);
        assert_eq!(Polynomial::constant(2, rat(5, 2)).evaluate(&[9.0, -4.0]), 2.5);
        assert_eq!(Polynomial::zero(2).evaluate(&[1.0, 1.0]), 0.0);
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(Polynomial::zero(3).degree(), None);
        assert_eq!(x(0).degree(), Some(1));
    }

    #[test]
    #[should_panic(expected = "variable count mismatch")]
    fn varcount_mismatch_is_structural() {
        let _ = &Polynomial::variable(2, 0) + &Polynomial::variable(3, 0);
    }
}
