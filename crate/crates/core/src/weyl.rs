//! Weyl group actions on the weight lattice.

use std::collections::{HashSet, VecDeque};

use num::BigInt;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::root_datum::{RootDatum, RootPair, Weight};

/// Default refusal threshold for full enumeration of `W`.
pub const DEFAULT_ENUMERATION_CAP: u64 = 5_000_000;

/// An element of `W` as its exact action on fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    /// Row-major `rank x rank`.
    matrix: Vec<i64>,
    sign: i8,
    word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement {
            rank,
            matrix,
            sign: 1,
            word: Some(Vec::new()),
        }
    }

    pub fn simple(rd: &RootDatum, i: usize) -> Result<Self> {
        let r = rd.rank();
        if i >= r {
            return Err(Error::IndexOutOfRange { index: i, rank: r });
        }
        let mut e = Self::identity(r);
        e.left_mul_simple(rd, i);
        Ok(e)
    }

    /// The reflection `x -> x - <x, beta^vee> beta` in a positive root.
    pub fn reflection(rd: &RootDatum, beta: &RootPair) -> Self {
        let r = rd.rank();
        let mut matrix = vec![0; r * r];
        for k in 0..r {
            for l in 0..r {
                matrix[k * r + l] = (k == l) as i64 - beta.root.0[k] * beta.coroot[l];
            }
        }
        WeylElement {
            rank: r,
            matrix,
            sign: -1,
            word: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `det` of the matrix, which is `(-1)^length`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank + j]
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rank, self.rank, |i, j| BigInt::from(self.entry(i, j)))
    }

    pub fn apply(&self, lambda: &Weight) -> Weight {
        let r = self.rank;
        Weight(
            (0..r)
                .map(|i| (0..r).map(|j| self.matrix[i * r + j] * lambda.0[j]).sum())
                .collect(),
        )
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let r = self.rank;
        let mut matrix = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.matrix[i * r + k];
                if a != 0 {
                    for j in 0..r {
                        matrix[i * r + j] += a * other.matrix[k * r + j];
                    }
                }
            }
        }
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElement {
            rank: r,
            matrix,
            sign: self.sign * other.sign,
            word,
        }
    }

    pub fn is_identity(&self) -> bool {
        let r = self.rank;
        (0..r).all(|i| (0..r).all(|j| self.matrix[i * r + j] == (i == j) as i64))
    }

    /// Multiplicative order, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut power = self.clone();
        power.word = None;
        for k in 1..=limit {
            if power.is_identity() {
                return Some(k);
            }
            power = power.compose(self);
            power.word = None;
        }
        None
    }

    /// `self <- s_i * self`. Row `k` picks up `-A[k][i]` times row `i`.
    fn left_mul_simple(&mut self, rd: &RootDatum, i: usize) {
        let r = self.rank;
        let row_i: Vec<i64> = self.matrix[i * r..(i + 1) * r].to_vec();
        for k in 0..r {
            let a = rd.cartan_entry(k, i);
            if a != 0 {
                for (x, y) in self.matrix[k * r..(k + 1) * r].iter_mut().zip(&row_i) {
                    *x -= a * y;
                }
            }
        }
        self.sign = -self.sign;
        if let Some(w) = &mut self.word {
            w.insert(0, i);
        }
    }
}

/// `s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i`.
pub fn simple_reflection(rd: &RootDatum, i: usize, lambda: &Weight) -> Result<Weight> {
    rd.check_rank(lambda.rank())?;
    if i >= rd.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: rd.rank(),
        });
    }
    let mut out = lambda.clone();
    reflect_in_place(rd, i, &mut out.0);
    Ok(out)
}

#[inline]
pub(crate) fn reflect_in_place(rd: &RootDatum, i: usize, x: &mut [i64]) {
    let c = x[i];
    if c != 0 {
        for (k, xk) in x.iter_mut().enumerate() {
            *xk -= c * rd.cartan_entry(k, i);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dominance {
    pub dominant: Weight,
    /// `det(w)` for the applied `w`.
    pub sign: i8,
    pub steps: u64,
}

/// Moves `lambda` into the dominant chamber, always reflecting in the
/// smallest index with a negative coordinate.
pub fn make_dominant(rd: &RootDatum, lambda: &Weight) -> Result<Dominance> {
    rd.check_rank(lambda.rank())?;
    let max_abs = lambda.0.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
    let cap = 10 * rd.positive_roots().len() as u64 * (1 + max_abs);
    let mut x = lambda.0.clone();
    let mut sign = 1i8;
    let mut steps = 0u64;
    let mut height = rd.pair_two_rho_check(&x);
    while let Some(i) = x.iter().position(|&c| c < 0) {
        reflect_in_place(rd, i, &mut x);
        sign = -sign;
        steps += 1;
        let next = rd.pair_two_rho_check(&x);
        if next <= height {
            return Err(Error::Internal(format!(
                "dominance reduction failed to increase <x, rho^vee> at {x:?}"
            )));
        }
        height = next;
        if steps > cap {
            return Err(Error::Internal(format!(
                "dominance reduction exceeded {cap} steps from {lambda}"
            )));
        }
    }
    Ok(Dominance {
        dominant: Weight(x),
        sign,
        steps,
    })
}

/// Highest weight of the dual representation, `-w_long(lambda)`.
pub fn duality_involution(rd: &RootDatum, lambda: &Weight) -> Result<Weight> {
    Ok(make_dominant(rd, &lambda.neg())?.dominant)
}

/// The Coxeter element `s_1 s_2 ... s_r`.
pub fn coxeter_element(rd: &RootDatum) -> WeylElement {
    let mut e = WeylElement::identity(rd.rank());
    for i in (0..rd.rank()).rev() {
        e.left_mul_simple(rd, i);
    }
    e
}

fn check_cap(rd: &RootDatum, cap: u64) -> Result<()> {
    let order = rd.weyl_group_order();
    if order > cap as u128 {
        return Err(Error::CapExceeded {
            what: "Weyl group enumeration",
            cap,
            actual: order,
        });
    }
    Ok(())
}

/// Every element of `W` exactly once, with a reduced word.
///
/// Elements are identified with their images of `rho`. The walk is the tree
/// in which the parent of a non-dominant `x` is `s_i x` for the smallest `i`
/// with `x_i < 0`, so nothing needs to be remembered besides the current
/// path.
pub fn enumerate(rd: &RootDatum, cap: u64) -> Result<WeylElements<'_>> {
    check_cap(rd, cap)?;
    Ok(WeylElements {
        rd,
        stack: Vec::new(),
        started: false,
    })
}

pub struct WeylElements<'a> {
    rd: &'a RootDatum,
    stack: Vec<Frame>,
    started: bool,
}

struct Frame {
    rho_image: Vec<i64>,
    element: WeylElement,
    next: usize,
}

impl Iterator for WeylElements<'_> {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        let r = self.rd.rank();
        if !self.started {
            self.started = true;
            let e = WeylElement::identity(r);
            self.stack.push(Frame {
                rho_image: self.rd.rho().0.clone(),
                element: e.clone(),
                next: 0,
            });
            return Some(e);
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.next >= r {
                self.stack.pop();
                continue;
            }
            let i = top.next;
            top.next += 1;
            if top.rho_image[i] <= 0 {
                continue;
            }
            let mut child = top.rho_image.clone();
            reflect_in_place(self.rd, i, &mut child);
            // the child's first negative coordinate must be i
            if child[..i].iter().any(|&c| c < 0) {
                continue;
            }
            let mut element = top.element.clone();
            element.left_mul_simple(self.rd, i);
            self.stack.push(Frame {
                rho_image: child,
                element: element.clone(),
                next: 0,
            });
            return Some(element);
        }
    }
}

/// `W` by breadth-first closure over right multiplication by simple
/// reflections, deduplicated on matrices. Independent of [`enumerate`]; used
/// to cross-check it on small groups.
pub fn closure(rd: &RootDatum, cap: u64) -> Result<Vec<WeylElement>> {
    check_cap(rd, cap)?;
    let r = rd.rank();
    let gens: Vec<WeylElement> = (0..r)
        .map(|i| WeylElement::simple(rd, i))
        .collect::<Result<_>>()?;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let id = WeylElement::identity(r);
    seen.insert(id.matrix.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = w.compose(g);
            if seen.insert(next.matrix.clone()) {
                queue.push_back(next);
            }
        }
        out.push(w);
    }
    Ok(out)
}
