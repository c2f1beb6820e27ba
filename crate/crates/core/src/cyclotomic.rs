//! Exact arithmetic in `Z[zeta_N]` and `Q(zeta_N)`, with elements stored as
//! polynomials reduced modulo the `N`-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients low degree first, no trailing zeros.
pub type IntPoly = Vec<BigInt>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

/// Exact division of `num` by the monic polynomial `den`. Panics if the
/// division leaves a remainder.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    let (q, r) = divrem_monic(num, den);
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

fn divrem_monic(num: &[BigInt], den: &[BigInt]) -> (IntPoly, IntPoly) {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut r: Vec<BigInt> = num.to_vec();
    if r.len() <= dd {
        trim(&mut r);
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            r[k + j] -= &c * d;
        }
        q[k] = c;
    }
    r.truncate(dd);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

static PHI_CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();

/// `Phi_N`, by dividing `x^N - 1` by `Phi_d` for every proper divisor `d`.
/// Memoized process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let cache = PHI_CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut p: IntPoly = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            p = div_exact_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(p);
    // a racing thread may have inserted the same value; keep the first
    let mut w = cache.write().unwrap();
    Arc::clone(w.entry(n).or_insert(p))
}

/// Element of `Z[zeta_N]`, canonical of length `phi(N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(conductor: u64) -> Self {
        CyclotomicInt {
            conductor,
            coeffs: vec![BigInt::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_integer(conductor, BigInt::one())
    }

    pub fn from_integer(conductor: u64, k: BigInt) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = k;
        z
    }

    /// Reduces an arbitrary integer polynomial in `zeta_N`.
    pub fn from_poly(conductor: u64, poly: &[BigInt]) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let (_, r) = divrem_monic(poly, &phi);
        let mut coeffs = r;
        coeffs.resize(phi.len() - 1, BigInt::zero());
        CyclotomicInt { conductor, coeffs }
    }

    /// `sum_k counts[k] * zeta_N^k` for `k` in `0..N`.
    pub fn from_exponent_counts(conductor: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, conductor);
        let poly: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_poly(conductor, &poly)
    }

    /// `zeta_N^k`, with `k` taken mod `N`.
    pub fn zeta_pow(conductor: u64, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        Self::from_poly(conductor, &poly)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.conductor)
    }

    /// The value if this is a rational integer.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor, other.conductor))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(CyclotomicInt {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(CyclotomicInt {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(Self::from_poly(self.conductor, &prod))
    }

    /// Numerical value at `zeta_N = exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.conductor, self.coeffs.iter().map(|c| c.to_string()))
    }
}

fn write_poly(
    f: &mut fmt::Formatter<'_>,
    conductor: u64,
    coeffs: impl Iterator<Item = String>,
) -> fmt::Result {
    let terms: Vec<String> = coeffs
        .enumerate()
        .filter(|(_, c)| c != "0")
        .map(|(k, c)| match k {
            0 => c,
            _ => format!("({c})*z{conductor}^{k}"),
        })
        .collect();
    if terms.is_empty() {
        f.write_str("0")
    } else {
        f.write_str(&terms.join(" + "))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &CyclotomicInt {
            type Output = CyclotomicInt;

            /// Panics on a conductor mismatch; use the `checked_` form to
            /// handle it.
            fn $method(self, rhs: &CyclotomicInt) -> CyclotomicInt {
                self.$checked(rhs).expect("conductor mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Element of `Q(zeta_N)`, canonical of length `phi(N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicRat {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicRat {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_integral(&self) -> Option<CyclotomicInt> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(CyclotomicInt {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// The value if this is a rational number.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

impl fmt::Debug for CyclotomicRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.conductor, self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// Columns `den * zeta^j` for `j < phi(N)`, as rows of the transpose.
fn multiplication_columns(den: &CyclotomicInt) -> Vec<Vec<BigInt>> {
    let phi = cyclotomic_polynomial(den.conductor);
    let d = phi.len() - 1;
    let mut col = den.coeffs.clone();
    let mut cols = Vec::with_capacity(d);
    for _ in 0..d {
        cols.push(col.clone());
        // multiply by zeta and reduce with the monic Phi_N
        col.insert(0, BigInt::zero());
        let top = col.pop().unwrap_or_else(BigInt::zero);
        if !top.is_zero() {
            for (c, p) in col.iter_mut().zip(phi.iter()) {
                *c -= &top * p;
            }
        }
    }
    cols
}

/// `num / den` in `Q(zeta_N)`: solves `den * x = num` as a linear system in
/// the power basis, using fraction-free (Bareiss) elimination so that
/// intermediate entries stay bounded by minors of the system.
pub fn divide_exact(num: &CyclotomicInt, den: &CyclotomicInt) -> Result<CyclotomicRat> {
    num.check(den)?;
    let n = num.conductor;
    if den.is_zero() {
        return Err(Error::DivisionByZero(n));
    }
    let cols = multiplication_columns(den);
    let d = cols.len();
    let mut m: Vec<Vec<BigInt>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigInt> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(num.coeffs[i].clone());
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..d {
        // Phi_N is irreducible, so multiplication by a nonzero element is invertible
        let piv = (k..d).find(|&i| !m[i][k].is_zero()).ok_or_else(|| {
            Error::Internal(format!("singular multiplication matrix mod Phi_{n}"))
        })?;
        m.swap(k, piv);
        for i in k + 1..d {
            for j in k + 1..=d {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut coeffs = vec![BigRational::zero(); d];
    for k in (0..d).rev() {
        let mut acc = BigRational::from_integer(m[k][d].clone());
        for (j, x) in coeffs.iter().enumerate().skip(k + 1) {
            acc -= x * BigRational::from_integer(m[k][j].clone());
        }
        coeffs[k] = acc / BigRational::from_integer(m[k][k].clone());
    }
    Ok(CyclotomicRat {
        conductor: n,
        coeffs,
    })
}

/// Multiplicative order of `zeta_N^k`.
pub fn root_of_unity_order(conductor: u64, k: i64) -> u64 {
    conductor / (k.rem_euclid(conductor as i64) as u64).gcd(&conductor)
}
