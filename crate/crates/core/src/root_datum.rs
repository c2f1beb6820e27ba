//! Root data of simply connected semisimple groups, built from Cartan type
//! strings such as `"E8"` or `"A2xG2"`.
//!
//! Conventions (Bourbaki numbering throughout):
//! - the Cartan matrix is `A[i][j] = <alpha_j, alpha_i^vee>`, so the simple
//!   root `alpha_j` has fundamental-weight coordinates given by column `j`;
//! - weights are integer vectors in the fundamental-weight basis;
//! - coweights are rational vectors in the simple-coroot basis, and the
//!   pairing between the two is the plain dot product.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num::rational::Rational64;
use num::{BigInt, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{quotient, FiniteAbelianGroup, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One simple factor of a Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let constraint = match family {
            Family::A if rank < 1 => Some("A requires rank >= 1"),
            Family::B if rank < 2 => Some("B requires rank >= 2"),
            Family::C if rank < 2 => Some("C requires rank >= 2"),
            Family::D if rank < 4 => Some("D requires rank >= 4 (use A3 for D3)"),
            Family::E if !(6..=8).contains(&rank) => Some("E requires rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("F requires rank 4"),
            Family::G if rank != 2 => Some("G requires rank 2"),
            _ => None,
        };
        match constraint {
            Some(constraint) => Err(Error::RankConstraint {
                family: family.letter(),
                rank,
                constraint,
            }),
            None => Ok(SimpleType { family, rank }),
        }
    }

    /// Every simple type of rank at most `max_rank`, family by family.
    pub fn all(max_rank: usize) -> Vec<SimpleType> {
        use Family::*;
        let mut out = Vec::new();
        for family in [A, B, C, D, E, F, G] {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Gram matrix of the simple roots, scaled so entries are integers.
    /// Short roots have squared length 2 throughout; long roots 4 in
    /// types B, C, F and 6 in type G2.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut len = vec![2i64; n];
        match self.family {
            Family::A => edges.extend((1..n).map(|i| (i - 1, i))),
            Family::B => {
                edges.extend((1..n).map(|i| (i - 1, i)));
                len[..n - 1].fill(4);
            }
            Family::C => {
                edges.extend((1..n).map(|i| (i - 1, i)));
                len[n - 1] = 4;
            }
            Family::D => {
                edges.extend((1..n - 1).map(|i| (i - 1, i)));
                edges.push((n - 3, n - 1));
            }
            Family::E => {
                edges.extend([(0, 2), (2, 3), (3, 4), (1, 3)]);
                edges.extend((5..n).map(|i| (i - 1, i)));
            }
            Family::F => {
                edges.extend([(0, 1), (1, 2), (2, 3)]);
                len[0] = 4;
                len[1] = 4;
            }
            Family::G => {
                edges.push((0, 1));
                len[1] = 6;
            }
        }
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram[i][i] = len[i];
        }
        for (i, j) in edges {
            // a bond between roots of squared lengths s <= l has (a, b) = -l/2
            let ip = -len[i].max(len[j]) / 2;
            gram[i][j] = ip;
            gram[j][i] = ip;
        }
        gram
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Ordered list of simple factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    factors: Vec<SimpleType>,
}

impl CartanType {
    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_owned(),
            reason: reason.to_owned(),
        };
        if s.is_empty() {
            return Err(bad("empty type string"));
        }
        let mut factors = Vec::new();
        for part in s.split('x') {
            let mut chars = part.chars();
            let family = chars
                .next()
                .and_then(Family::from_char)
                .ok_or_else(|| bad("factor must start with one of A B C D E F G"))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("factor rank must be a decimal number"));
            }
            let rank: usize = digits.parse().map_err(|_| bad("rank too large"))?;
            factors.push(SimpleType::new(family, rank)?);
        }
        Ok(CartanType { factors })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Integral weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Rational coweight in the simple-coroot basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coweight(pub Vec<Rational64>);

impl Coweight {
    pub fn from_integers(coords: &[i64]) -> Self {
        Coweight(
            coords
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Sum of the coordinates.
    pub fn height(&self) -> Rational64 {
        self.0.iter().sum()
    }
}

/// A positive root together with its coroot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootPair {
    /// Index of the simple factor the root belongs to.
    pub factor: usize,
    /// Fundamental-weight coordinates.
    pub root: Weight,
    /// Simple-root coordinates.
    pub simple_coords: Vec<i64>,
    /// Simple-coroot coordinates of the coroot.
    pub coroot: Vec<i64>,
}

impl RootPair {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn coroot_height(&self) -> i64 {
        self.coroot.iter().sum()
    }

    pub fn coroot_coweight(&self) -> Coweight {
        Coweight::from_integers(&self.coroot)
    }

    /// `<lambda, self^vee>`.
    pub fn pair(&self, lambda: &[i64]) -> i64 {
        self.coroot.iter().zip(lambda).map(|(a, b)| a * b).sum()
    }
}

/// Per-factor data of a (possibly product) root datum.
#[derive(Clone, Debug)]
pub struct Factor {
    pub simple_type: SimpleType,
    /// First simple index of this factor in the global numbering.
    pub offset: usize,
    pub coxeter_number: u64,
    /// Index into the global positive-root list of the root whose coroot is
    /// the highest coroot of the factor.
    pub highest_coroot: usize,
    pub num_positive_roots: usize,
}

impl Factor {
    pub fn rank(&self) -> usize {
        self.simple_type.rank
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.simple_type.rank
    }
}

/// The root datum of a simply connected semisimple group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    rank: usize,
    cartan: IntMatrix,
    cartan_small: Vec<Vec<i64>>,
    positive_roots: Vec<RootPair>,
    rho: Weight,
    rho_check: Coweight,
    two_rho_check: Vec<i64>,
    two_rho_simple: Vec<i64>,
    center: FiniteAbelianGroup,
    factors: Vec<Factor>,
}

/// Builds the root datum for a type string such as `"C3"` or `"A1xA1"`.
pub fn build(type_string: &str) -> Result<RootDatum> {
    RootDatum::new(type_string.parse()?)
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Result<RootDatum> {
        let rank = cartan_type.rank();
        let mut cartan_small = vec![vec![0i64; rank]; rank];
        let mut positive_roots = Vec::new();
        let mut factors = Vec::new();
        let mut offset = 0;

        for (fi, st) in cartan_type.factors().iter().enumerate() {
            let gram = st.gram();
            let r = st.rank;
            let local: Vec<Vec<i64>> = (0..r)
                .map(|i| (0..r).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
                .collect();
            for i in 0..r {
                cartan_small[offset + i][offset..offset + r].copy_from_slice(&local[i]);
            }
            let first = positive_roots.len();
            for simple in enumerate_positive_roots(&local) {
                let len2 = quad_form(&gram, &simple);
                let mut coroot = Vec::with_capacity(r);
                for i in 0..r {
                    let num = simple[i] * gram[i][i];
                    if num % len2 != 0 {
                        return Err(Error::Internal(format!(
                            "non-integral coroot for {simple:?} in {st}"
                        )));
                    }
                    coroot.push(num / len2);
                }
                let pad = |v: &[i64]| {
                    let mut out = vec![0i64; rank];
                    out[offset..offset + r].copy_from_slice(v);
                    out
                };
                let omega: Vec<i64> = (0..r)
                    .map(|k| (0..r).map(|j| local[k][j] * simple[j]).sum())
                    .collect();
                positive_roots.push(RootPair {
                    factor: fi,
                    root: Weight(pad(&omega)),
                    simple_coords: pad(&simple),
                    coroot: pad(&coroot),
                });
            }
            let count = positive_roots.len() - first;
            let (highest, _) = positive_roots[first..]
                .iter()
                .enumerate()
                .max_by_key(|(_, p)| p.coroot_height())
                .expect("at least one root");
            let h = 2 * count / r;
            if h * r != 2 * count {
                return Err(Error::Internal(format!(
                    "|Phi| not divisible by rank in {st}"
                )));
            }
            factors.push(Factor {
                simple_type: *st,
                offset,
                coxeter_number: h as u64,
                highest_coroot: first + highest,
                num_positive_roots: count,
            });
            offset += r;
        }

        let mut two_rho_check = vec![0i64; rank];
        let mut two_rho_simple = vec![0i64; rank];
        for p in &positive_roots {
            for i in 0..rank {
                two_rho_check[i] += p.coroot[i];
                two_rho_simple[i] += p.simple_coords[i];
            }
        }
        let rho_check = Coweight(
            two_rho_check
                .iter()
                .map(|&c| Rational64::new(c, 2))
                .collect(),
        );
        let cartan = IntMatrix::from_rows(&cartan_small);
        let center = quotient(rank, &cartan)?;

        Ok(RootDatum {
            cartan_type,
            rank,
            cartan,
            cartan_small,
            positive_roots,
            rho: Weight(vec![1; rank]),
            rho_check,
            two_rho_check,
            two_rho_simple,
            center,
            factors,
        })
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// `A[i][j] = <alpha_j, alpha_i^vee>`.
    #[inline]
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan_small[i][j]
    }

    /// Simple root `alpha_j` in fundamental-weight coordinates.
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan_small[k][j]).collect())
    }

    /// Positive roots ordered by factor, then height, then decreasing
    /// lexicographic order of simple-root coordinates.
    pub fn positive_roots(&self) -> &[RootPair] {
        &self.positive_roots
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_check(&self) -> &Coweight {
        &self.rho_check
    }

    /// Sum of the positive coroots, in simple-coroot coordinates.
    pub fn two_rho_check(&self) -> &[i64] {
        &self.two_rho_check
    }

    /// Sum of the positive roots, in simple-root coordinates.
    pub fn two_rho_simple(&self) -> &[i64] {
        &self.two_rho_simple
    }

    /// `P/Q`, presented on fundamental-weight coordinates.
    pub fn center(&self) -> &FiniteAbelianGroup {
        &self.center
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn coxeter_number(&self) -> Result<u64> {
        match self.factors.as_slice() {
            [f] => Ok(f.coxeter_number),
            _ => Err(Error::NotSimple(self.cartan_type.to_string())),
        }
    }

    pub fn coxeter_numbers(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.coxeter_number).collect()
    }

    pub fn highest_coroot(&self) -> Result<&RootPair> {
        match self.factors.as_slice() {
            [f] => Ok(&self.positive_roots[f.highest_coroot]),
            _ => Err(Error::NotSimple(self.cartan_type.to_string())),
        }
    }

    /// The simple root datum of factor `i`.
    pub fn factor_datum(&self, i: usize) -> Result<RootDatum> {
        let st = self.factors[i].simple_type;
        RootDatum::new(CartanType { factors: vec![st] })
    }

    pub fn check_rank(&self, len: usize) -> Result<()> {
        if len == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                actual: len,
            })
        }
    }

    /// `<lambda, v>`.
    pub fn pairing(&self, lambda: &Weight, v: &Coweight) -> Result<Rational64> {
        self.check_rank(lambda.rank())?;
        self.check_rank(v.0.len())?;
        Ok(lambda.0.iter().zip(&v.0).map(|(&c, d)| d * c).sum())
    }

    /// `<lambda, 2 rho^vee>`, always an integer.
    pub fn pair_two_rho_check(&self, lambda: &[i64]) -> i64 {
        lambda
            .iter()
            .zip(&self.two_rho_check)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Order of `W`, from the exponents read off the root heights.
    pub fn weyl_group_order(&self) -> u128 {
        self.exponents()
            .iter()
            .flatten()
            .map(|&m| m as u128 + 1)
            .product()
    }

    /// Exponents of each simple factor: the partition dual to the number of
    /// positive roots at each height.
    pub fn exponents(&self) -> Vec<Vec<u64>> {
        self.factors
            .iter()
            .enumerate()
            .map(|(fi, f)| {
                let h = f.coxeter_number as usize;
                let mut per_height = vec![0usize; h + 1];
                for p in self.positive_roots.iter().filter(|p| p.factor == fi) {
                    per_height[p.height() as usize] += 1;
                }
                let mut exps = Vec::new();
                for m in 1..h {
                    let next = per_height.get(m + 1).copied().unwrap_or(0);
                    for _ in next..per_height[m] {
                        exps.push(m as u64);
                    }
                }
                exps
            })
            .collect()
    }

    /// Fundamental-weight coordinates of a vector of rational simple-root
    /// coordinates is `A * c`; this solves the reverse direction exactly.
    pub fn weight_to_simple_coords(&self, lambda: &[i64]) -> Vec<num::BigRational> {
        solve_rational(&self.cartan, lambda)
    }
}

fn quad_form(gram: &[Vec<i64>], v: &[i64]) -> i64 {
    let n = v.len();
    (0..n)
        .map(|i| (0..n).map(|j| v[i] * gram[i][j] * v[j]).sum::<i64>())
        .sum()
}

/// Positive roots in simple-root coordinates, by breadth-first closure over
/// root strings. Sorted by height, then in decreasing lexicographic order
/// (so the simple roots come first, in index order).
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut levels: Vec<Vec<Vec<i64>>> = Vec::new();
    let simple: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    known.extend(simple.iter().cloned());
    levels.push(simple);

    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in levels.last().unwrap() {
            for i in 0..r {
                // <beta, alpha_i^vee>
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                let mut down = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if probe[i] < 0 || !known.contains(&probe) {
                        break;
                    }
                    down += 1;
                }
                // the alpha_i-string through beta runs from beta - down*alpha_i
                // to beta + up*alpha_i
                let up = down - pairing;
                if up > 0 {
                    let mut gamma = beta.clone();
                    gamma[i] += 1;
                    if known.insert(gamma.clone()) {
                        next.push(gamma);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| b.cmp(a));
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

/// Solves `a * x = b` over the rationals for square nonsingular `a`.
pub(crate) fn solve_rational(a: &IntMatrix, b: &[i64]) -> Vec<num::BigRational> {
    use num::{BigRational, One};
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| BigRational::from_integer(a[(i, j)].clone()))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(b[i])));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !m[i][col].is_zero())
            .expect("singular matrix");
        m.swap(col, piv);
        let inv = BigRational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= p * &f;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

/// Least positive `m` such that `m * x` is integral for every entry.
pub(crate) fn common_denominator(xs: &[num::BigRational]) -> BigInt {
    use num::{Integer, One};
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub(crate) fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("value exceeds u64")
}
