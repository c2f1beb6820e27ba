//! Exact integer linear algebra: Smith normal form and presentations of
//! finite lattice quotients `Z^r / L` as products of cyclic groups.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i].as_ref()[j]))
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(entries[i])
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Multiplies column `j` by `factors[j]`.
    pub fn scale_columns(&self, factors: &[i64]) -> Self {
        assert_eq!(factors.len(), self.cols);
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * factors[j])
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

/// `left * m * right == diag`, with `left` and `right` unimodular and the
/// nonzero diagonal entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `left`, maintained alongside it.
    pub left_inv: IntMatrix,
}

impl SmithForm {
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.diag.rows().min(self.diag.cols()))
            .map(|i| self.diag[(i, i)].clone())
            .collect()
    }
}

fn min_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for j in t..d.cols() {
        for i in t..d.rows() {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form by row/column reduction, always pivoting on the entry of
/// least nonzero absolute value (first in column-major order on ties).
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'pivots: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_nonzero(&d, t) else {
                break 'pivots;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    let neg = -&q;
                    d.add_row_multiple(i, t, &neg);
                    u.add_row_multiple(i, t, &neg);
                    // (E u)^-1 = u^-1 E^-1, E^-1 adds +q * row t to row i,
                    // which is col t += q * col i on the right.
                    u_inv.add_col_multiple(t, i, &q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    let neg = -&q;
                    d.add_col_multiple(j, t, &neg);
                    v.add_col_multiple(j, t, &neg);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            // negating a row of u negates the matching column of u^-1
            for i in 0..rows {
                let x = -&u_inv[(i, t)];
                u_inv[(i, t)] = x;
            }
        }
    }

    SmithForm {
        left: u,
        diag: d,
        right: v,
        left_inv: u_inv,
    }
}

/// A finite abelian group `Z^r / L` in invariant-factor form
/// `Z/d_1 x ... x Z/d_k` with `d_i | d_{i+1}` and every `d_i >= 2`.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    ambient_rank: usize,
    invariant_factors: Vec<BigInt>,
    /// k x r; row i gives the residue mod d_i.
    projection: IntMatrix,
    /// r x k; column i is a lift of the i-th cyclic generator.
    generators: IntMatrix,
    small: Option<SmallPresentation>,
}

#[derive(Clone, Debug)]
struct SmallPresentation {
    factors: Vec<i64>,
    projection: Vec<Vec<i64>>,
    generators: Vec<Vec<i64>>,
}

/// Quotient of `Z^ambient_rank` by the span of the columns of `sublattice_basis`.
pub fn quotient(ambient_rank: usize, sublattice_basis: &IntMatrix) -> Result<FiniteAbelianGroup> {
    if sublattice_basis.rows() != ambient_rank {
        return Err(Error::RankMismatch {
            expected: ambient_rank,
            actual: sublattice_basis.rows(),
        });
    }
    let snf = smith_normal_form(sublattice_basis);
    let diag = snf.diagonal_entries();
    if diag.len() < ambient_rank || diag.iter().any(Zero::is_zero) {
        return Err(Error::InfiniteIndex(ambient_rank));
    }
    let kept: Vec<usize> = (0..ambient_rank).filter(|&i| !diag[i].is_one()).collect();
    let invariant_factors: Vec<BigInt> = kept.iter().map(|&i| diag[i].clone()).collect();
    let projection = IntMatrix::from_fn(kept.len(), ambient_rank, |a, j| {
        snf.left[(kept[a], j)].mod_floor(&invariant_factors[a])
    });
    let generators = IntMatrix::from_fn(ambient_rank, kept.len(), |i, a| {
        snf.left_inv[(i, kept[a])].clone()
    });

    let small = (|| {
        let factors = invariant_factors
            .iter()
            .map(|d| d.to_i64().filter(|&d| d < 1 << 31))
            .collect::<Option<Vec<_>>>()?;
        Some(SmallPresentation {
            factors,
            projection: projection.to_i64_rows()?,
            generators: generators.to_i64_rows()?,
        })
    })();

    Ok(FiniteAbelianGroup {
        ambient_rank,
        invariant_factors,
        projection,
        generators,
        small,
    })
}

impl FiniteAbelianGroup {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn invariant_factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("invariant factor exceeds u64"))
            .collect()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Residues of an ambient vector, each in `0..d_i`.
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient_rank);
        self.projection
            .mul_vec(v)
            .into_iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    pub fn project_i64(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.ambient_rank);
        match &self.small {
            Some(s) => s
                .projection
                .iter()
                .zip(&s.factors)
                .map(|(row, &d)| {
                    let x: i128 = row
                        .iter()
                        .zip(v)
                        .map(|(&a, &b)| a as i128 * b as i128)
                        .sum();
                    x.rem_euclid(d as i128) as i64
                })
                .collect(),
            None => {
                let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                self.project(&big)
                    .iter()
                    .map(|x| x.to_i64().expect("residue exceeds i64"))
                    .collect()
            }
        }
    }

    /// A representative of the class with the given residues.
    pub fn lift(&self, residues: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(residues.len(), self.invariant_factors.len());
        self.generators.mul_vec(residues)
    }

    pub fn lift_i64(&self, residues: &[i64]) -> Vec<i64> {
        match &self.small {
            Some(s) => s
                .generators
                .iter()
                .map(|row| row.iter().zip(residues).map(|(&a, &b)| a * b).sum())
                .collect(),
            None => {
                let big: Vec<BigInt> = residues.iter().map(|&x| BigInt::from(x)).collect();
                self.lift(&big)
                    .iter()
                    .map(|x| x.to_i64().expect("lift exceeds i64"))
                    .collect()
            }
        }
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect()
    }

    /// Order of the element with the given residues.
    pub fn element_order(&self, residues: &[BigInt]) -> BigInt {
        residues
            .iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (r, d)| acc.lcm(&(d / r.gcd(d))))
    }

    /// Group order as a machine integer, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    /// Mixed-radix index of a residue tuple, `0..order`.
    pub fn index_of(&self, residues: &[i64]) -> u64 {
        let s = self.small.as_ref().expect("group too large for indexing");
        residues
            .iter()
            .zip(&s.factors)
            .fold(0u64, |acc, (&r, &d)| acc * d as u64 + r as u64)
    }

    pub fn residues_at(&self, mut index: u64) -> Vec<i64> {
        let s = self.small.as_ref().expect("group too large for indexing");
        let mut out = vec![0; s.factors.len()];
        for (slot, &d) in out.iter_mut().zip(&s.factors).rev() {
            *slot = (index % d as u64) as i64;
            index /= d as u64;
        }
        out
    }
}
