//! Exact linear algebra over the rationals for polynomial spaces:
//! coordinate bases for homogeneous (vector) polynomials, sparse echelon
//! rank, and dense nullspace / solve via Gauss–Jordan elimination with
//! deterministic pivoting (first nonzero entry in column order).

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::vecpoly::VectorPolynomial;

/// Coordinate basis of the homogeneous degree-`degree` polynomials in
/// `varcount` variables: all monomials in graded-lex order.
pub struct MonoBasis {
    pub varcount: usize,
    pub monos: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl MonoBasis {
    pub fn new(varcount: usize, degree: u32) -> Self {
        let mut monos: Vec<Monomial> = crate::harmonics::compositions(degree, varcount)
            .into_iter()
            .map(Monomial)
            .collect();
        monos.sort();
        let index = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        MonoBasis {
            varcount,
            monos,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> usize {
        *self
            .index
            .get(m)
            .unwrap_or_else(|| panic!("monomial {m:?} outside coordinate basis"))
    }
}

/// Coordinate basis of degree-`degree` vector polynomials. The layout is
/// monomial-major (column `mono_index * ncomp + comp`) with monomials in
/// lex-ascending order, so columns with low x₁-exponent come first; the
/// leading-term structure of the solution bases then makes echelon
/// insertion nearly collision-free.
pub struct VecBasis {
    pub mono: MonoBasis,
    pub ncomp: usize,
}

impl VecBasis {
    pub fn new(ncomp: usize, varcount: usize, degree: u32) -> Self {
        VecBasis {
            mono: MonoBasis::new(varcount, degree),
            ncomp,
        }
    }

    pub fn len(&self) -> usize {
        self.ncomp * self.mono.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn row_of(&self, v: &VectorPolynomial) -> SparseRow {
        let mut entries = Vec::new();
        for (c, p) in v.components().iter().enumerate() {
            for (m, coef) in p.iter() {
                entries.push((self.mono.index_of(m) * self.ncomp + c, coef.clone()));
            }
        }
        entries.sort_by_key(|(i, _)| *i);
        SparseRow { entries }
    }

    pub fn vector_of(&self, coords: &[Rational]) -> VectorPolynomial {
        assert_eq!(coords.len(), self.len());
        let mut comps = vec![Polynomial::zero(self.mono.varcount); self.ncomp];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let comp = i % self.ncomp;
            let m = self.mono.monos[i / self.ncomp].clone();
            comps[comp].add_term(m, c.clone());
        }
        VectorPolynomial::new(comps)
    }
}

/// Sorted sparse row of rationals.
#[derive(Clone, Debug)]
pub struct SparseRow {
    pub entries: Vec<(usize, Rational)>,
}

impl SparseRow {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    /// self − factor · other, merged in sorted order.
    fn axpy(&self, factor: &Rational, other: &SparseRow) -> SparseRow {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let take_a = match (self.entries.get(a), other.entries.get(b)) {
                (Some((ia, _)), Some((ib, _))) => {
                    if ia == ib {
                        let c = &self.entries[a].1 - &(factor * &other.entries[b].1);
                        if !c.is_zero() {
                            out.push((*ia, c));
                        }
                        a += 1;
                        b += 1;
                        continue;
                    }
                    ia < ib
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_a {
                out.push(self.entries[a].clone());
                a += 1;
            } else {
                let (ib, cb) = &other.entries[b];
                let c = -(factor * cb);
                if !c.is_zero() {
                    out.push((*ib, c));
                }
                b += 1;
            }
        }
        SparseRow { entries: out }
    }
}

/// Incremental row echelon form over sparse rows; keeps one normalized
/// pivot row per leading column.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the recorded pivots; returns the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some(lead) = row.leading() else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return row;
            };
            let factor = row.entries[0].1.clone();
            row = row.axpy(&factor, pivot);
            debug_assert!(row.leading() != Some(lead));
        }
    }

    /// Inserts a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let red = self.reduce(row);
        match red.leading() {
            None => false,
            Some(lead) => {
                let inv = Rational::one() / red.entries[0].1.clone();
                let normalized = SparseRow {
                    entries: red
                        .entries
                        .into_iter()
                        .map(|(i, c)| (i, &c * &inv))
                        .collect(),
                };
                self.pivots.insert(lead, normalized);
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True when the row lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_zero()
    }
}

pub fn rank_of_rows<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Exact span equality of two row families over the same column space.
pub fn spans_equal(a: &[SparseRow], b: &[SparseRow]) -> bool {
    let mut ea = Echelon::new();
    for r in a {
        ea.insert(r.clone());
    }
    let mut eb = Echelon::new();
    for r in b {
        eb.insert(r.clone());
    }
    if ea.rank() != eb.rank() {
        return false;
    }
    b.iter().all(|r| ea.contains(r.clone())) && a.iter().all(|r| eb.contains(r.clone()))
}

/// Dense matrix for nullspace and solve; rows are constraint equations.
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduced row echelon form; returns the pivot column of each
    /// processed pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = Rational::one() / self.at(r, c).clone();
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in c..self.cols {
                    let v = self.at(i, j) - &(&f * self.at(r, j));
                    self.set(i, j, v);
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        pivot_cols
    }

    /// Nullspace basis (one coordinate vector per free column) of the
    /// homogeneous system `self · x = 0`.
    pub fn nullspace(mut self) -> Vec<Vec<Rational>> {
        let pivot_cols = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = -self.at(r, free).clone();
            }
            basis.push(x);
        }
        basis
    }
}

/// Solves `Σ_i x_i · columns_i = rhs` exactly; `None` when inconsistent.
/// When the columns are independent the solution is unique.
pub fn solve_exact(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = columns.len();
    let nrows = rhs.len();
    let mut m = DenseMatrix::zero(nrows, ncols + 1);
    for (j, col) in columns.iter().enumerate() {
        assert_eq!(col.len(), nrows);
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    for (i, v) in rhs.iter().enumerate() {
        m.set(i, ncols, v.clone());
    }
    let pivots = m.rref();
    if pivots.contains(&ncols) {
        return None; // inconsistent
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m.at(r, ncols).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        SparseRow {
            entries: entries.iter().map(|&(i, v)| (i, rat(v, 1))).collect(),
        }
    }

    #[test]
    fn echelon_rank() {
        let rows = vec![
            row(&[(0, 1), (1, 2)]),
            row(&[(1, 1), (2, 1)]),
            row(&[(0, 1), (1, 1), (2, -1)]), // dependent: r1 - r2
            row(&[(2, 5)]),
        ];
        assert_eq!(rank_of_rows(rows), 3);
    }

    #[test]
    fn nullspace_small() {
        // x + y + z = 0 has nullity 2
        let mut m = DenseMatrix::zero(1, 3);
        for c in 0..3 {
            m.set(0, c, rat(1, 1));
        }
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: Rational = v.iter().cloned().sum();
            assert!(num::Zero::is_zero(&s));
        }
    }

    #[test]
    fn solve_small() {
        // columns (1,0),(1,1); rhs (3,2) → x = (1,2)
        let cols = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)]];
        let sol = solve_exact(&cols, &[rat(3, 1), rat(2, 1)]).unwrap();
        assert_eq!(sol, vec![rat(1, 1), rat(2, 1)]);
        // inconsistent
        let cols = vec![vec![rat(1, 1), rat(2, 1)]];
        assert!(solve_exact(&cols, &[rat(1, 1), rat(3, 1)]).is_none());
    }
}
