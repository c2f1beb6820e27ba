use kostant_core::kostant::{PrincipalCocharacterReport, RhoCentralCharacter};
use kostant_core::oracle::oracle_batch;
use kostant_core::root_datum::SimpleType;
use kostant_core::torsion::{lemma1_equivariance_report_with, Lemma1Options};
use kostant_core::{
    build, classify_regular_orbits, coxeter_lift_order, duality_involution, fs_indicator,
    rho_central_character, verify_principal_cocharacter, CoxeterCharacter, RootDatum, Weight,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, Failure, Format, SCHEMA_VERSION};

/// What to print, and an optional theorem-violation message that turns the
/// exit code to 3 after printing.
pub struct Outcome {
    pub text: String,
    pub problem: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            problem: None,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

pub fn run(command: &Command) -> CmdResult {
    match command {
        Command::Info { type_string } => info(type_string),
        Command::Char {
            type_string,
            lambda,
            oracle,
            cap,
        } => char_value(type_string, lambda, *oracle, *cap),
        Command::Fs {
            type_string,
            lambda,
        } => fs(type_string, lambda),
        Command::Table {
            type_string,
            max_coord,
            format,
            max_rows,
        } => table(type_string, *max_coord, *format, *max_rows),
        Command::Verify {
            type_string,
            max_coord,
            random,
            seed,
            bound,
            cap,
        } => verify(type_string, *max_coord, *random, *seed, *bound, *cap),
        Command::Torsion {
            type_string,
            n,
            cap,
            seed,
            witnesses,
        } => torsion(type_string, *n, *cap, *seed, *witnesses),
        Command::CheckAll => check_all(),
    }
}

/// Serializes `body` with `command` and `schema_version` added. `Value`
/// objects are ordered maps, so keys come out sorted.
fn document(command: &str, body: Value) -> String {
    let mut body = body;
    let map = body.as_object_mut().expect("document body is an object");
    map.insert("command".into(), json!(command));
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    let mut text = serde_json::to_string_pretty(&body).expect("JSON values serialize");
    text.push('\n');
    text
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn weight(rd: &RootDatum, lambda: &[i64]) -> Result<Weight, Failure> {
    rd.check_rank(lambda.len())?;
    if let Some(c) = lambda.iter().find(|&&c| c < 0) {
        return Err(Failure::usage(format!(
            "highest weight coordinates must be non-negative, got {c}"
        )));
    }
    Ok(Weight(lambda.to_vec()))
}

/// Every weight with coordinates in `0..=k`, in lexicographic order.
fn weight_box(rank: usize, k: i64, max_rows: u64) -> Result<Vec<Weight>, Failure> {
    if k < 0 {
        return Err(Failure::usage(format!("--max-coord must be >= 0, got {k}")));
    }
    let rows = (k as u128 + 1)
        .checked_pow(rank as u32)
        .unwrap_or(u128::MAX);
    if rows > max_rows as u128 {
        return Err(Failure {
            code: 4,
            message: format!("{rows} weights exceed the cap of {max_rows}"),
        });
    }
    let mut out = Vec::with_capacity(rows as usize);
    let mut current = vec![0i64; rank];
    loop {
        out.push(Weight(current.clone()));
        let mut i = rank;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if current[i] < k {
                current[i] += 1;
                break;
            }
            current[i] = 0;
        }
    }
}

struct FactorInfo {
    value: Value,
    lift_order: u64,
    principal: PrincipalCocharacterReport,
}

fn factor_info(rd: &RootDatum, index: usize) -> Result<FactorInfo, Failure> {
    let frd = rd.factor_datum(index)?;
    let f = &rd.factors()[index];
    let lift = coxeter_lift_order(&frd)?;
    let principal = verify_principal_cocharacter(&frd)?;
    let value = json!({
        "type": f.simple_type.to_string(),
        "rank": f.rank(),
        "offset": f.offset,
        "coxeter_number": f.coxeter_number,
        "exponents": rd.exponents()[index],
        "center": frd.center().invariant_factors_u64(),
        "coxeter_lift": to_value(&lift),
        "principal_cocharacter_checks": to_value(&principal),
    });
    Ok(FactorInfo {
        value,
        lift_order: lift.lift_order,
        principal,
    })
}

fn info(type_string: &str) -> CmdResult {
    let rd = build(type_string)?;
    let rho_z: RhoCentralCharacter = rho_central_character(&rd)?;
    let factors = (0..rd.factors().len())
        .map(|i| factor_info(&rd, i))
        .collect::<Result<Vec<_>, _>>()?;
    let order = rd.weyl_group_order();
    let mut body = json!({
        "type": rd.cartan_type().to_string(),
        "rank": rd.rank(),
        "num_positive_roots": rd.positive_roots().len(),
        "coxeter_numbers": rd.coxeter_numbers(),
        "coxeter_lift_orders": factors.iter().map(|f| f.lift_order).collect::<Vec<_>>(),
        "center": rd.center().invariant_factors_u64(),
        "rho_central_character": to_value(&rho_z),
        "weyl_group_order": u64::try_from(order).map(Value::from).unwrap_or_else(|_| json!(order.to_string())),
        "factors": factors.iter().map(|f| f.value.clone()).collect::<Vec<_>>(),
    });
    if let (Ok(h), [only]) = (rd.coxeter_number(), factors.as_slice()) {
        let map = body.as_object_mut().unwrap();
        map.insert("coxeter_number".into(), json!(h));
        map.insert("coxeter_lift_order".into(), json!(only.lift_order));
        map.insert(
            "principal_cocharacter_checks".into(),
            to_value(&only.principal),
        );
    }
    let failed: Vec<String> = factors
        .iter()
        .zip(rd.factors())
        .filter(|(f, _)| !f.principal.passed)
        .map(|(_, t)| t.simple_type.to_string())
        .collect();
    Ok(Outcome {
        text: document("info", body),
        problem: (!failed.is_empty()).then(|| {
            format!(
                "principal cocharacter checks failed for {}",
                failed.join(", ")
            )
        }),
    })
}

fn char_value(type_string: &str, lambda: &[i64], oracle: bool, cap: u64) -> CmdResult {
    let rd = build(type_string)?;
    let lambda = weight(&rd, lambda)?;
    let report = CoxeterCharacter::new(&rd)?.evaluate(&lambda)?;
    let mut body = to_value(&report);
    let map = body.as_object_mut().unwrap();
    map.insert("type".into(), json!(rd.cartan_type().to_string()));
    map.insert("lambda".into(), to_value(&lambda));
    let mut problem = None;
    if oracle {
        let slow = oracle_batch(&rd, std::slice::from_ref(&lambda), cap)?.remove(0);
        let agrees = slow.value == report.value;
        if !agrees {
            problem = Some(format!(
                "fast path gives {} but the oracle gives {}",
                report.value, slow.value
            ));
        }
        map.insert(
            "oracle".into(),
            json!({
                "value": slow.value,
                "agrees": agrees,
                "shadow": [slow.shadow.re + 0.0, slow.shadow.im + 0.0],
            }),
        );
    }
    Ok(Outcome {
        text: document("char", body),
        problem,
    })
}

fn fs(type_string: &str, lambda: &[i64]) -> CmdResult {
    let rd = build(type_string)?;
    let lambda = weight(&rd, lambda)?;
    let value = fs_indicator(&rd, &lambda)?;
    let dual = duality_involution(&rd, &lambda)?;
    let body = json!({
        "type": rd.cartan_type().to_string(),
        "lambda": lambda,
        "dual": dual,
        "self_dual": dual == lambda,
        "value": value,
        "pairing_with_two_rho_check": rd.pair_two_rho_check(&lambda.0),
    });
    Ok(Outcome::ok(document("fs", body)))
}

fn table(type_string: &str, max_coord: i64, format: Format, max_rows: u64) -> CmdResult {
    let rd = build(type_string)?;
    let weights = weight_box(rd.rank(), max_coord, max_rows)?;
    let fast = CoxeterCharacter::new(&rd)?;
    let mut rows = Vec::with_capacity(weights.len());
    for lambda in weights {
        let value = fast.evaluate(&lambda)?.value;
        let fs = fs_indicator(&rd, &lambda)?;
        rows.push((lambda, value, fs));
    }
    let text = match format {
        Format::Json => document(
            "table",
            json!({
                "type": rd.cartan_type().to_string(),
                "max_coord": max_coord,
                "rows": rows
                    .iter()
                    .map(|(l, v, f)| json!({"lambda": l, "value": v, "fs": f}))
                    .collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => {
            let mut out = String::new();
            let header: Vec<String> = (1..=rd.rank()).map(|i| format!("lambda_{i}")).collect();
            out.push_str(&header.join(","));
            out.push_str(",value,fs\n");
            for (l, v, f) in &rows {
                let coords: Vec<String> = l.0.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("{},{v},{f}\n", coords.join(",")));
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn verify(
    type_string: &str,
    max_coord: Option<i64>,
    random: Option<usize>,
    seed: u64,
    bound: i64,
    cap: u64,
) -> CmdResult {
    let rd = build(type_string)?;
    let (weights, mode) = match (max_coord, random) {
        (Some(k), _) => (
            weight_box(rd.rank(), k, 1_000_000)?,
            json!({"kind": "box", "max_coord": k}),
        ),
        (None, Some(n)) => {
            if bound < 0 {
                return Err(Failure::usage(format!("--bound must be >= 0, got {bound}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let weights = (0..n)
                .map(|_| Weight((0..rd.rank()).map(|_| rng.gen_range(0..=bound)).collect()))
                .collect();
            (
                weights,
                json!({"kind": "random", "count": n, "seed": seed, "bound": bound, "rng": "ChaCha8"}),
            )
        }
        (None, None) => return Err(Failure::usage("one of --max-coord or --random is required")),
    };

    let slow = oracle_batch(&rd, &weights, cap)?;
    let fast = CoxeterCharacter::new(&rd)?;
    let mut agreements = 0u64;
    let mut disagreements = Vec::new();
    let mut max_shadow_error = 0f64;
    for (lambda, oracle) in weights.iter().zip(&slow) {
        let value = fast.evaluate(lambda)?.value;
        let gap = (oracle.shadow.re - value as f64).hypot(oracle.shadow.im);
        max_shadow_error = max_shadow_error.max(gap);
        if value == oracle.value {
            agreements += 1;
        } else {
            disagreements.push(json!({"lambda": lambda, "fast": value, "oracle": oracle.value}));
        }
    }
    let count = disagreements.len();
    let body = json!({
        "type": rd.cartan_type().to_string(),
        "mode": mode,
        "checked": weights.len(),
        "agreements": agreements,
        "disagreements": count,
        "disagreement_examples": disagreements.into_iter().take(10).collect::<Vec<_>>(),
        "max_shadow_error": max_shadow_error,
    });
    Ok(Outcome {
        text: document("verify", body),
        problem: (count > 0).then(|| format!("{count} disagreements between fast path and oracle")),
    })
}

fn torsion(type_string: &str, n: u64, cap: u64, seed: u64, witnesses: usize) -> CmdResult {
    let rd = build(type_string)?;
    let options = Lemma1Options {
        cap,
        witnesses,
        seed,
    };
    let lemma1 = lemma1_equivariance_report_with(&rd, n, &options)?;
    let orbits = classify_regular_orbits(&rd, n, cap)?;
    let body = json!({
        "type": rd.cartan_type().to_string(),
        "n": n,
        "lemma1": to_value(&lemma1),
        "regular_orbits": to_value(&orbits),
    });
    Ok(Outcome {
        text: document("torsion", body),
        problem: (!lemma1.passed).then(|| "torsion duality checks failed".to_string()),
    })
}

const CHECK_ALL_MAX_RANK: usize = 8;

fn check(name: &str, subject: &str, result: Result<bool, Failure>) -> Value {
    match result {
        Ok(passed) => json!({"name": name, "type": subject, "passed": passed}),
        Err(f) => json!({"name": name, "type": subject, "passed": false, "error": f.message}),
    }
}

fn check_all() -> CmdResult {
    let mut checks = Vec::new();
    for t in SimpleType::all(CHECK_ALL_MAX_RANK) {
        let name = t.to_string();
        let rd = build(&name)?;
        checks.push(check(
            "principal_cocharacter",
            &name,
            verify_principal_cocharacter(&rd)
                .map(|r| r.passed)
                .map_err(Failure::from),
        ));
        checks.push(check(
            "lift_order_biconditional",
            &name,
            lift_matches_center(&rd).map_err(Failure::from),
        ));
        if rd.weyl_group_order() <= 1152 {
            checks.push(check(
                "fast_equals_oracle",
                &name,
                fast_equals_oracle(&rd, 2),
            ));
        }
        if let Ok(h) = rd.coxeter_number() {
            let classes =
                (h as u128).pow(rd.rank() as u32) * rd.center().order_u64().unwrap() as u128;
            if classes <= 50_000 {
                checks.push(check(
                    "unique_regular_orbit",
                    &name,
                    classify_regular_orbits(&rd, h, 50_000)
                        .map(|r| {
                            r.regular_orbits_with_image_order_n == 1 && r.rho_in_distinguished_orbit
                        })
                        .map_err(Failure::from),
                ));
            }
        }
    }
    let failed = checks.iter().filter(|c| c["passed"] != json!(true)).count();
    let body = json!({
        "checks": checks,
        "failed": failed,
        "passed": failed == 0,
    });
    Ok(Outcome {
        text: document("check-all", body),
        problem: (failed > 0).then(|| format!("{failed} checks failed")),
    })
}

fn lift_matches_center(rd: &RootDatum) -> kostant_core::Result<bool> {
    let lift = coxeter_lift_order(rd)?;
    Ok(lift.matches_h == rho_central_character(rd)?.is_trivial())
}

/// Fast path against oracle on every weight with coordinate sum at most `s`.
fn fast_equals_oracle(rd: &RootDatum, s: i64) -> Result<bool, Failure> {
    let weights: Vec<Weight> = weight_box(rd.rank(), s, 1_000_000)?
        .into_iter()
        .filter(|w| w.0.iter().sum::<i64>() <= s)
        .collect();
    let slow = oracle_batch(rd, &weights, kostant_core::weyl::DEFAULT_ENUMERATION_CAP)?;
    let fast = CoxeterCharacter::new(rd)?;
    for (lambda, oracle) in weights.iter().zip(&slow) {
        if fast.evaluate(lambda)?.value != oracle.value {
            return Ok(false);
        }
    }
    Ok(true)
}
