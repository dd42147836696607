//! Exponent vectors with graded-lexicographic ordering.

use std::cmp::Ordering;

/// A monomial `x_0^{e_0} x_1^{e_1} ...` as its exponent vector.
///
/// Slots are 0-based. In spatial contexts slot `i` holds the paper's
/// variable `x_{i+1}`; in Lamé contexts slot 0 holds the time variable and
/// slot `i` holds `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, slot: usize) -> Self {
        assert!(slot < nvars, "variable slot {slot} out of range {nvars}");
        let mut e = vec![0; nvars];
        e[slot] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, slot: usize, power: u32) -> Monomial {
        let mut e = self.0.clone();
        e[slot] += power;
        Monomial(e)
    }

    /// Divides by `x_slot` when the exponent there is positive.
    pub fn div_var(&self, slot: usize) -> Option<Monomial> {
        if self.0[slot] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[slot] -= 1;
        Some(Monomial(e))
    }

    /// Applies a variable permutation: slot `i` of the result takes the
    /// exponent of slot `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        assert_eq!(perm.len(), self.0.len());
        Monomial(perm.iter().map(|&p| self.0[p]).collect())
    }
}

/// Graded lexicographic order: compare total degree first, then the
/// exponent vector lexicographically. Used for canonical serialization
/// only; no mathematical consequence.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![2, 0]); // x^2
        let b = Monomial(vec![1, 1]); // xy
        let c = Monomial(vec![0, 1]); // y
        assert!(c < a && c < b);
        assert!(a > b); // same degree, lex on exponents
    }

    #[test]
    fn division() {
        let m = Monomial(vec![1, 2]);
        assert_eq!(m.div_var(1), Some(Monomial(vec![1, 1])));
        assert_eq!(m.div_var(0).unwrap().div_var(0), None);
    }
}
