//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p kostant-core --test acceptance`. Pass `-- --e7` to
//! include the E7 spot-check (about three million Weyl group elements).

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num::complex::Complex64;
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kostant_core::cyclotomic::{cyclotomic_polynomial, euler_phi, IntPoly};
use kostant_core::kostant::CoxeterCharacter;
use kostant_core::oracle::{oracle_batch, SHADOW_TOLERANCE};
use kostant_core::root_datum::SimpleType;
use kostant_core::torsion::{
    classify_regular_orbits, lemma1_equivariance_report_with, Lemma1Options,
};
use kostant_core::weyl::DEFAULT_ENUMERATION_CAP;
use kostant_core::{
    build, coxeter_lift_order, divide_exact, fs_indicator, rho_central_character,
    verify_principal_cocharacter, CyclotomicInt, RootDatum, Weight,
};

const THEOREM_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4",
];
const MAX_RANK: usize = 8;
const ORBIT_CAP: u64 = 1_000_000;
const LEMMA1_WITNESSES: usize = 1000;
const DIVISION_PAIRS: usize = 10_000;
const E8_SAMPLES: usize = 1000;

type Check = Result<String, String>;

/// Shared across criteria: the float shadow must stay within tolerance on
/// every oracle call made by criteria 1 to 3.
#[derive(Default)]
struct Shadow {
    calls: usize,
    worst: f64,
}

impl Shadow {
    fn record(&mut self, value: i8, shadow: Complex64) {
        self.calls += 1;
        let gap = (shadow - Complex64::new(value as f64, 0.0)).norm();
        self.worst = if gap.is_nan() {
            f64::INFINITY
        } else {
            self.worst.max(gap)
        };
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_types() -> Vec<String> {
    SimpleType::all(MAX_RANK)
        .iter()
        .map(|t| t.to_string())
        .collect()
}

/// Dominant weights with coordinate sum at most `s`.
fn weights_up_to_sum(rank: usize, s: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut current = vec![0i64; rank];
    fn go(i: usize, left: i64, current: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == current.len() {
            out.push(Weight(current.clone()));
            return;
        }
        for c in 0..=left {
            current[i] = c;
            go(i + 1, left - c, current, out);
        }
        current[i] = 0;
    }
    go(0, s, &mut current, &mut out);
    out
}

/// Fast path against oracle on `weights`; returns the number compared.
fn compare(rd: &RootDatum, weights: &[Weight], shadow: &mut Shadow) -> Result<usize, String> {
    let fast = CoxeterCharacter::new(rd).map_err(|e| e.to_string())?;
    let slow = oracle_batch(rd, weights, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
    for (lambda, oracle) in weights.iter().zip(slow) {
        shadow.record(oracle.value, oracle.shadow);
        let value = fast.evaluate(lambda).map_err(|e| e.to_string())?.value;
        ensure((-1..=1).contains(&value), || {
            format!("{} {lambda}: value {value}", rd.cartan_type())
        })?;
        ensure(value == oracle.value, || {
            format!(
                "{} {lambda}: fast {value}, oracle {}",
                rd.cartan_type(),
                oracle.value
            )
        })?;
    }
    Ok(weights.len())
}

fn criterion_1(shadow: &mut Shadow) -> Check {
    let mut total = 0;
    for t in THEOREM_TYPES {
        let rd = build(t).map_err(|e| e.to_string())?;
        total += compare(&rd, &weights_up_to_sum(rd.rank(), 4), shadow)?;
    }
    Ok(format!(
        "{total} weights over {} types, exact",
        THEOREM_TYPES.len()
    ))
}

fn criterion_2(shadow: &mut Shadow, e7: bool) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut detail = Vec::new();
    let mut spot = |t: &str, shadow: &mut Shadow| -> Result<(), String> {
        let rd = build(t).map_err(|e| e.to_string())?;
        let weights: Vec<Weight> = (0..100)
            .map(|_| Weight((0..rd.rank()).map(|_| rng.gen_range(0..=5)).collect()))
            .collect();
        let start = Instant::now();
        compare(&rd, &weights, shadow)?;
        detail.push(format!(
            "{t} 100/100 in {:.1}s",
            start.elapsed().as_secs_f64()
        ));
        Ok(())
    };
    spot("E6", shadow)?;
    if e7 {
        spot("E7", shadow)?;
    } else {
        detail.push("E7 skipped (pass --e7)".into());
    }

    let e8 = build("E8").map_err(|e| e.to_string())?;
    let fast = CoxeterCharacter::new(&e8).map_err(|e| e.to_string())?;
    let mut regular = 0;
    let mut drawn = 0;
    while regular < E8_SAMPLES {
        drawn += 1;
        let lambda = Weight((0..8).map(|_| rng.gen_range(0..=1000)).collect());
        let report = fast.evaluate(&lambda).map_err(|e| e.to_string())?;
        ensure((-1..=1).contains(&report.value), || {
            format!("E8 {lambda}: {}", report.value)
        })?;
        if report.regular {
            regular += 1;
            ensure(
                report.value != 0 && report.endpoint_is_rho == Some(true),
                || format!("E8 {lambda}: {report:?}"),
            )?;
        } else {
            ensure(report.value == 0, || {
                format!("E8 {lambda}: singular but nonzero")
            })?;
        }
    }
    detail.push(format!(
        "E8 {regular} regular of {drawn} drawn, all land on rho"
    ));
    Ok(detail.join("; "))
}

fn criterion_3(shadow: &mut Shadow) -> Check {
    let a1 = build("A1").map_err(|e| e.to_string())?;
    let cycle: Vec<Weight> = (0..12).map(|k| Weight(vec![k])).collect();
    compare(&a1, &cycle, shadow)?;
    let fast = CoxeterCharacter::new(&a1).map_err(|e| e.to_string())?;
    for (k, lambda) in cycle.iter().enumerate() {
        let expected = [1, 0, -1, 0][k % 4];
        let value = fast.evaluate(lambda).map_err(|e| e.to_string())?.value;
        ensure(value == expected, || {
            format!("A1 k={k}: {value} != {expected}")
        })?;
    }
    let a2 = build("A2").map_err(|e| e.to_string())?;
    let fast = CoxeterCharacter::new(&a2).map_err(|e| e.to_string())?;
    let cases = [(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, 1], -1)];
    let weights: Vec<Weight> = cases.iter().map(|(l, _)| Weight(l.clone())).collect();
    compare(&a2, &weights, shadow)?;
    for (lambda, expected) in cases {
        let value = fast
            .evaluate(&Weight(lambda.clone()))
            .map_err(|e| e.to_string())?
            .value;
        ensure(value == expected, || {
            format!("A2 {lambda:?}: {value} != {expected}")
        })?;
    }
    Ok("A1 cycles 1,0,-1,0 for k < 12; A2 standard 0, adjoint -1".into())
}

fn criterion_4() -> Check {
    for n in 2..=9usize {
        let rd = build(&format!("C{n}")).map_err(|e| e.to_string())?;
        let rho_z = rho_central_character(&rd).map_err(|e| e.to_string())?;
        let at_minus_one = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        ensure(rho_z.values == vec![at_minus_one], || {
            format!(
                "C{n}: rho on the center {:?}, expected [{at_minus_one}]",
                rho_z.values
            )
        })?;
        ensure((rho_z.order == 2) == matches!(n % 4, 1 | 2), || {
            format!("C{n}: order {}", rho_z.order)
        })?;
    }
    for n in 2..=9usize {
        let rd = build(&format!("B{n}")).map_err(|e| e.to_string())?;
        let mut spin = vec![0; n];
        spin[n - 1] = 1;
        let fs = fs_indicator(&rd, &Weight(spin)).map_err(|e| e.to_string())?;
        ensure((fs == 1) == matches!(n % 4, 0 | 3), || {
            format!("B{n}: spin indicator {fs}")
        })?;
        ensure(fs != 0, || {
            format!("B{n}: spin representation not self-dual")
        })?;
    }
    Ok("C2..C9 central character and B2..B9 spin indicators".into())
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let types = all_types();
    for t in &types {
        let rd = build(t).map_err(|e| e.to_string())?;
        let rep = verify_principal_cocharacter(&rd).map_err(|e| e.to_string())?;
        ensure(rep.rho_pairs_to_one, || {
            format!("{t}: <rho, alpha_i^vee> != 1")
        })?;
        ensure(rep.adjoint_order == rep.coxeter_number, || {
            format!("{t}: adjoint order {} != h", rep.adjoint_order)
        })?;
        ensure(rep.regular && rep.dual_regular, || {
            format!("{t}: not regular {rep:?}")
        })?;
        ensure(rep.passed, || format!("{t}: {rep:?}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {secs:.2}s"))?;
    Ok(format!("{} types in {secs:.3}s", types.len()))
}

fn criterion_6() -> Check {
    let types = all_types();
    let mut matching = Vec::new();
    for t in &types {
        let rd = build(t).map_err(|e| e.to_string())?;
        let lift = coxeter_lift_order(&rd).map_err(|e| e.to_string())?;
        let trivial = rho_central_character(&rd)
            .map_err(|e| e.to_string())?
            .is_trivial();
        ensure(lift.matches_h == trivial, || {
            format!(
                "{t}: matches_h {} but rho|Z trivial {trivial}",
                lift.matches_h
            )
        })?;
        if lift.matches_h {
            matching.push(t.as_str());
        }
    }
    Ok(format!(
        "{} types; lift order equals h exactly for {}",
        types.len(),
        matching.join(" ")
    ))
}

fn criterion_7() -> Check {
    let types: Vec<String> = SimpleType::all(4).iter().map(|t| t.to_string()).collect();
    let mut cases = 0;
    for t in &types {
        let rd = build(t).map_err(|e| e.to_string())?;
        for n in 1..=12u64 {
            let options = Lemma1Options {
                cap: ORBIT_CAP,
                witnesses: LEMMA1_WITNESSES,
                seed: 7,
            };
            let rep =
                lemma1_equivariance_report_with(&rd, n, &options).map_err(|e| e.to_string())?;
            ensure(rep.invariant_factors_agree, || {
                format!("{t} n={n}: {rep:?}")
            })?;
            ensure(rep.action_well_defined, || {
                format!("{t} n={n}: {:?}", rep.failure)
            })?;
            ensure(rep.witnesses >= 1000 && rep.passed, || {
                format!("{t} n={n}: {rep:?}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, {LEMMA1_WITNESSES} witnesses each"))
}

fn criterion_8() -> Check {
    let required = [
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4",
    ];
    let mut tested = Vec::new();
    for t in all_types() {
        let rd = build(&t).map_err(|e| e.to_string())?;
        let h = rd.coxeter_number().map_err(|e| e.to_string())?;
        let size = (h as u128).pow(rd.rank() as u32) * rd.center().order_u64().unwrap() as u128;
        if size > ORBIT_CAP as u128 {
            continue;
        }
        let rep = classify_regular_orbits(&rd, h, ORBIT_CAP).map_err(|e| e.to_string())?;
        ensure(rep.regular_orbits_with_image_order_n == 1, || {
            format!(
                "{t}: {} regular orbits of image order h",
                rep.regular_orbits_with_image_order_n
            )
        })?;
        ensure(rep.rho_in_distinguished_orbit, || {
            format!("{t}: rho outside the orbit")
        })?;
        tested.push(t);
    }
    let missing: Vec<&&str> = required
        .iter()
        .filter(|t| !tested.iter().any(|s| s == **t))
        .collect();
    ensure(missing.is_empty(), || format!("not covered: {missing:?}"))?;
    Ok(format!("unique and contains rho for {}", tested.join(" ")))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn criterion_9(shadow: &Shadow) -> Check {
    for n in 1..=200u64 {
        let mut product: IntPoly = vec![BigInt::one()];
        for d in (1..=n).filter(|d| n % d == 0) {
            let phi = cyclotomic_polynomial(d);
            ensure(phi.len() as u64 - 1 == euler_phi(d), || {
                format!("deg Phi_{d}")
            })?;
            product = poly_mul(&product, &phi);
        }
        let mut expected = vec![BigInt::zero(); n as usize + 1];
        expected[0] = -BigInt::one();
        expected[n as usize] = BigInt::one();
        ensure(product == expected, || {
            format!("product over divisors of {n}")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random = |n: u64, rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(1..=n as usize + 2);
        let coeffs: Vec<BigInt> = (0..len)
            .map(|_| BigInt::from(rng.gen_range(-6..=6)))
            .collect();
        CyclotomicInt::from_poly(n, &coeffs)
    };
    let mut done = 0;
    while done < DIVISION_PAIRS {
        let n = rng.gen_range(1..=60u64);
        let a = random(n, &mut rng);
        let b = random(n, &mut rng);
        if b.is_zero() {
            continue;
        }
        let ab = a.checked_mul(&b).map_err(|e| e.to_string())?;
        let q = divide_exact(&ab, &b).map_err(|e| e.to_string())?;
        ensure(q.to_integral().as_ref() == Some(&a), || {
            format!("N={n}: ({a})({b}) / ({b})")
        })?;
        done += 1;
    }

    ensure(shadow.calls > 0, || "no oracle calls recorded".into())?;
    ensure(shadow.worst < SHADOW_TOLERANCE, || {
        format!("shadow gap {:e} >= {SHADOW_TOLERANCE:e}", shadow.worst)
    })?;
    Ok(format!(
        "N <= 200 products; {DIVISION_PAIRS} divisions; shadow gap {:e} < {SHADOW_TOLERANCE:e} over {} oracle values",
        shadow.worst, shadow.calls
    ))
}

fn main() -> ExitCode {
    let e7 = std::env::args().any(|a| a == "--e7");
    let mut shadow = Shadow::default();
    type Criterion<'a> = (&'a str, Box<dyn FnMut(&mut Shadow) -> Check + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("value range and oracle agreement", Box::new(criterion_1)),
        (
            "E6/E7/E8 spot checks",
            Box::new(move |s| criterion_2(s, e7)),
        ),
        ("closed-form families", Box::new(criterion_3)),
        ("symplectic and spin examples", Box::new(|_| criterion_4())),
        ("principal cocharacter", Box::new(|_| criterion_5())),
        ("lift order biconditional", Box::new(|_| criterion_6())),
        ("torsion duality", Box::new(|_| criterion_7())),
        ("unique regular orbit at n = h", Box::new(|_| criterion_8())),
        ("cyclotomic core", Box::new(|s| criterion_9(s))),
    ];

    let mut failures = 0;
    for (i, (name, mut run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(|| run(&mut shadow)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
