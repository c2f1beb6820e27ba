//! Brute-force evaluation of the Weyl character formula at the Coxeter
//! torus element `t_c = exp(2 pi i rho^vee / h)`, in exact cyclotomic
//! arithmetic.
//!
//! The numerator `sum_w det(w) e^{w(lambda + rho)}(t_c)` is summed over every
//! element of `W`. With `e` the exponent of `P/Q`, every value
//! `<mu, rho^vee> / h` is a multiple of `1 / (h e)`, so all terms live in
//! `Z[zeta_N]` for `N = h e`.

use num::complex::Complex64;
use num::{BigRational, One, Signed, ToPrimitive};

use crate::cyclotomic::{divide_exact, CyclotomicInt};
use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, Weight};
use crate::weyl::{self, WeylElement};

/// Maximum allowed distance between the floating-point shadow and the exact
/// character value.
pub const SHADOW_TOLERANCE: f64 = 1e-6;

/// The evaluation point for one simple root datum.
#[derive(Clone, Debug)]
pub struct CoxeterEvaluation<'a> {
    rd: &'a RootDatum,
    coxeter_number: u64,
    center_exponent: u64,
    conductor: u64,
    /// `e * rho^vee` in simple-coroot coordinates; integral.
    scaled_rho_check: Vec<i64>,
    cap: u64,
}

impl<'a> CoxeterEvaluation<'a> {
    pub fn new(rd: &'a RootDatum, cap: u64) -> Result<Self> {
        let h = rd.coxeter_number()?;
        let e = rd
            .center()
            .exponent()
            .to_u64()
            .ok_or_else(|| Error::Internal("center exponent overflow".into()))?;
        let scaled_rho_check = rd
            .rho_check()
            .coords()
            .iter()
            .map(|c| {
                let v = c * e as i64;
                v.is_integer()
                    .then(|| v.to_integer())
                    .ok_or_else(|| Error::Internal(format!("e * rho^vee not integral: {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoxeterEvaluation {
            rd,
            coxeter_number: h,
            center_exponent: e,
            conductor: h * e,
            scaled_rho_check,
            cap,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coxeter_number(&self) -> u64 {
        self.coxeter_number
    }

    pub fn center_exponent(&self) -> u64 {
        self.center_exponent
    }

    /// `e <lambda, rho^vee>`: the power of `zeta_N` that `e^lambda` takes at
    /// `t_c`.
    pub fn exponent_map(&self, lambda: &Weight) -> i64 {
        lambda
            .0
            .iter()
            .zip(&self.scaled_rho_check)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Signed exponent histograms `counts[k] = sum of det(w)` over `w` with
    /// `w(mu)` landing on `zeta_N^k`, for every `mu` in one pass over `W`.
    pub fn exponent_histograms(&self, mus: &[Weight]) -> Result<Vec<Vec<i64>>> {
        self.histograms_over(mus, weyl::enumerate(self.rd, self.cap)?)
    }

    pub(crate) fn histograms_over(
        &self,
        mus: &[Weight],
        elements: impl IntoIterator<Item = WeylElement>,
    ) -> Result<Vec<Vec<i64>>> {
        let r = self.rd.rank();
        for mu in mus {
            self.rd.check_rank(mu.rank())?;
        }
        let n = self.conductor as i64;
        let mut counts = vec![vec![0i64; n as usize]; mus.len()];
        let mut pulled = vec![0i64; r];
        for w in elements {
            // <w mu, s> = <mu, w^T s>
            for (l, slot) in pulled.iter_mut().enumerate() {
                *slot = (0..r)
                    .map(|k| w.entry(k, l) * self.scaled_rho_check[k])
                    .sum();
            }
            let sign = w.sign() as i64;
            for (mu, hist) in mus.iter().zip(counts.iter_mut()) {
                let k: i64 = mu.0.iter().zip(&pulled).map(|(a, b)| a * b).sum();
                hist[k.rem_euclid(n) as usize] += sign;
            }
        }
        Ok(counts)
    }

    pub fn numerator_from_histogram(&self, counts: &[i64]) -> CyclotomicInt {
        CyclotomicInt::from_exponent_counts(self.conductor, counts)
    }

    /// Direct complex evaluation of a histogram, bypassing the reduction
    /// modulo the cyclotomic polynomial.
    pub fn shadow_from_histogram(&self, counts: &[i64]) -> Complex64 {
        let n = self.conductor as f64;
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / n)
            })
            .sum()
    }
}

/// Weyl numerator of `lambda` (so evaluated at `lambda + rho`).
pub fn weyl_numerator(rd: &RootDatum, lambda: &Weight, cap: u64) -> Result<CyclotomicInt> {
    rd.check_rank(lambda.rank())?;
    weyl_numerator_at(rd, &lambda.add(rd.rho()), cap)
}

/// `sum_w det(w) e^{w mu}(t_c)` for an arbitrary weight `mu`.
pub fn weyl_numerator_at(rd: &RootDatum, mu: &Weight, cap: u64) -> Result<CyclotomicInt> {
    let ev = CoxeterEvaluation::new(rd, cap)?;
    let hist = ev.exponent_histograms(std::slice::from_ref(mu))?;
    Ok(ev.numerator_from_histogram(&hist[0]))
}

/// Exact value and numerical shadow of a character at `t_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleValue {
    pub value: i8,
    pub shadow: Complex64,
}

/// Character value at the Coxeter class by exact division of Weyl
/// numerators.
pub fn char_at_coxeter_oracle(rd: &RootDatum, lambda: &Weight, cap: u64) -> Result<i8> {
    Ok(oracle_batch(rd, std::slice::from_ref(lambda), cap)?[0].value)
}

/// Floating-point evaluation of the same Weyl sums.
pub fn float_shadow(rd: &RootDatum, lambda: &Weight, cap: u64) -> Result<Complex64> {
    Ok(oracle_batch(rd, std::slice::from_ref(lambda), cap)?[0].shadow)
}

/// Oracle values for many highest weights, with one pass over `W` per simple
/// factor. Products multiply factorwise.
pub fn oracle_batch(rd: &RootDatum, lambdas: &[Weight], cap: u64) -> Result<Vec<OracleValue>> {
    for l in lambdas {
        rd.check_rank(l.rank())?;
        if !l.is_dominant() {
            return Err(Error::NotDominant(l.0.clone()));
        }
    }
    let mut out: Vec<OracleValue> = lambdas
        .iter()
        .map(|_| OracleValue {
            value: 1,
            shadow: Complex64::new(1.0, 0.0),
        })
        .collect();
    for (fi, f) in rd.factors().iter().enumerate() {
        let owned;
        let frd = if rd.is_simple() {
            rd
        } else {
            owned = rd.factor_datum(fi)?;
            &owned
        };
        let local: Vec<Weight> = lambdas
            .iter()
            .map(|l| Weight(l.0[f.range()].to_vec()))
            .collect();
        for (slot, v) in out.iter_mut().zip(simple_batch(frd, &local, cap)?) {
            slot.value *= v.value;
            slot.shadow *= v.shadow;
        }
    }
    Ok(out)
}

fn simple_batch(rd: &RootDatum, lambdas: &[Weight], cap: u64) -> Result<Vec<OracleValue>> {
    let ev = CoxeterEvaluation::new(rd, cap)?;
    let mut mus = vec![rd.rho().clone()];
    mus.extend(lambdas.iter().map(|l| l.add(rd.rho())));
    let hists = ev.exponent_histograms(&mus)?;
    let den = ev.numerator_from_histogram(&hists[0]);
    if den.is_zero() {
        return Err(Error::Internal(format!(
            "Weyl denominator vanishes at t_c for {}",
            rd.cartan_type()
        )));
    }
    let den_shadow = ev.shadow_from_histogram(&hists[0]);

    lambdas
        .iter()
        .zip(&hists[1..])
        .map(|(lambda, hist)| {
            let num = ev.numerator_from_histogram(hist);
            let quotient = divide_exact(&num, &den)?;
            let value = quotient
                .as_rational()
                .filter(|q| q.is_integer() && q.abs() <= BigRational::one())
                .and_then(|q| q.to_integer().to_i8());
            let Some(value) = value else {
                return Err(Error::TheoremViolation(format!(
                    "character of {} at the Coxeter class is {:?}, outside {{-1, 0, 1}} \
                     (numerator {}, denominator {}, conductor {})",
                    describe(rd, lambda),
                    quotient,
                    num,
                    den,
                    ev.conductor()
                )));
            };
            let shadow = ev.shadow_from_histogram(hist) / den_shadow;
            let gap = (shadow - Complex64::new(value as f64, 0.0)).norm();
            if gap.is_nan() || gap >= SHADOW_TOLERANCE {
                return Err(Error::TheoremViolation(format!(
                    "float shadow {shadow} disagrees with exact value {value} for {} (gap {gap:e})",
                    describe(rd, lambda)
                )));
            }
            Ok(OracleValue { value, shadow })
        })
        .collect()
}

fn describe(rd: &RootDatum, lambda: &Weight) -> String {
    format!("{} with highest weight {}", rd.cartan_type(), lambda)
}
