//! Torsion points of the maximal torus and their character groups.
//!
//! For the simply connected group with torus `T`, the points `T_n` with
//! `t^n` central form `P^vee / nQ^vee`, and their characters form `P / nQ`.
//! The two are dual under `(x, v) -> <x, v> / n mod Z`, compatibly with `W`.

use num::integer::gcd;
use num::{BigInt, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{quotient, FiniteAbelianGroup};
use crate::root_datum::{solve_rational, RootDatum, Weight};
use crate::weyl::reflect_in_place;

/// Default cap on the number of classes enumerated.
pub const DEFAULT_CLASS_CAP: u64 = 1_000_000;

/// Default number of random representative pairs per equivariance check.
pub const DEFAULT_WITNESSES: usize = 1000;

fn check_modulus(n: u64) -> Result<i64> {
    match n {
        0 => Err(Error::ZeroModulus),
        n => n
            .to_i64()
            .filter(|&m| m < 1 << 31)
            .ok_or_else(|| Error::Internal(format!("modulus {n} is too large"))),
    }
}

/// `P^vee / nQ^vee` in fundamental-coweight coordinates.
pub fn torsion_points(rd: &RootDatum, n: u64) -> Result<FiniteAbelianGroup> {
    let m = check_modulus(n)?;
    quotient(rd.rank(), &rd.cartan().transpose().scaled(&m.into()))
}

/// `P / nQ` in fundamental-weight coordinates.
pub fn char_group_of_torsion(rd: &RootDatum, n: u64) -> Result<FiniteAbelianGroup> {
    let m = check_modulus(n)?;
    quotient(rd.rank(), &rd.cartan().scaled(&m.into()))
}

/// A class in `P / nQ`.
#[derive(Clone, Debug)]
pub struct TorsionClass<'a> {
    rd: &'a RootDatum,
    n: u64,
    rep: Weight,
    residues: Vec<i64>,
}

impl<'a> TorsionClass<'a> {
    pub fn new(space: &TorsionSpace<'a>, rep: Weight) -> Result<Self> {
        space.rd.check_rank(rep.rank())?;
        let residues = space.group.project_i64(&rep.0);
        Ok(TorsionClass {
            rd: space.rd,
            n: space.n,
            rep,
            residues,
        })
    }

    pub fn root_datum(&self) -> &RootDatum {
        self.rd
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn rep(&self) -> &Weight {
        &self.rep
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    /// `<rep, beta^vee> != 0 mod n` for every positive coroot.
    pub fn is_regular(&self) -> bool {
        let n = self.n as i64;
        self.rd
            .positive_roots()
            .iter()
            .all(|beta| beta.pair(&self.rep.0).rem_euclid(n) != 0)
    }

    /// Order of the image in `P / nP`.
    pub fn image_order(&self) -> u64 {
        let g = self.rep.0.iter().fold(self.n as i64, |acc, &c| gcd(acc, c));
        self.n / g as u64
    }
}

impl PartialEq for TorsionClass<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.residues == other.residues
    }
}

impl Eq for TorsionClass<'_> {}

/// `P / nQ` with its `W`-action, as a space of [`TorsionClass`]es.
#[derive(Clone, Debug)]
pub struct TorsionSpace<'a> {
    rd: &'a RootDatum,
    n: u64,
    group: FiniteAbelianGroup,
}

impl<'a> TorsionSpace<'a> {
    pub fn new(rd: &'a RootDatum, n: u64) -> Result<Self> {
        Ok(TorsionSpace {
            rd,
            n,
            group: char_group_of_torsion(rd, n)?,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn class(&self, rep: Weight) -> Result<TorsionClass<'a>> {
        TorsionClass::new(self, rep)
    }

    pub fn class_at(&self, index: u64) -> TorsionClass<'a> {
        let residues = self.group.residues_at(index);
        TorsionClass {
            rd: self.rd,
            n: self.n,
            rep: Weight(self.group.lift_i64(&residues)),
            residues,
        }
    }

    pub fn index(&self, class: &TorsionClass) -> u64 {
        self.group.index_of(&class.residues)
    }

    pub fn reflect(&self, i: usize, class: &TorsionClass<'a>) -> TorsionClass<'a> {
        let mut x = class.rep.0.clone();
        reflect_in_place(self.rd, i, &mut x);
        let residues = self.group.project_i64(&x);
        TorsionClass {
            rd: self.rd,
            n: self.n,
            rep: Weight(self.group.lift_i64(&residues)),
            residues,
        }
    }
}

fn enumeration_size(group: &FiniteAbelianGroup, cap: u64) -> Result<u64> {
    let order = group.order();
    match order.to_u64() {
        Some(size) if size <= cap => Ok(size),
        _ => Err(Error::CapExceeded {
            what: "torsion class enumeration",
            cap,
            actual: order.to_u128().unwrap_or(u128::MAX),
        }),
    }
}

/// Number of orbits of `W` on `Z^r / L`, given the action of the simple
/// reflections on ambient vectors.
fn count_orbits(
    group: &FiniteAbelianGroup,
    size: u64,
    rank: usize,
    reflect: impl Fn(usize, &mut [i64]),
) -> u64 {
    let mut seen = vec![false; size as usize];
    let mut orbits = 0;
    let mut stack = Vec::new();
    for start in 0..size {
        if seen[start as usize] {
            continue;
        }
        orbits += 1;
        seen[start as usize] = true;
        stack.push(start);
        while let Some(index) = stack.pop() {
            let x = group.lift_i64(&group.residues_at(index));
            for i in 0..rank {
                let mut y = x.clone();
                reflect(i, &mut y);
                let j = group.index_of(&group.project_i64(&y));
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    stack.push(j);
                }
            }
        }
    }
    orbits
}

#[derive(Clone, Debug)]
pub struct Lemma1Options {
    pub cap: u64,
    pub witnesses: usize,
    pub seed: u64,
}

impl Default for Lemma1Options {
    fn default() -> Self {
        Lemma1Options {
            cap: DEFAULT_CLASS_CAP,
            witnesses: DEFAULT_WITNESSES,
            seed: 0,
        }
    }
}

/// Two representatives of one class whose reflections land in different
/// classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionFailure {
    pub side: &'static str,
    pub reflection: usize,
    pub first: Vec<i64>,
    pub second: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub n: u64,
    /// Invariant factors of `P^vee / nQ^vee`.
    pub torsion_points: Vec<u64>,
    /// Invariant factors of `P / nQ`.
    pub character_group: Vec<u64>,
    pub order: u64,
    pub invariant_factors_agree: bool,
    pub order_matches_formula: bool,
    pub witnesses: usize,
    pub action_well_defined: bool,
    pub pairing_invariant: bool,
    pub failure: Option<ActionFailure>,
    /// `W`-orbit counts on characters and on points, which agree for dual
    /// permutation modules.
    pub orbit_counts: [u64; 2],
    pub passed: bool,
}

/// Checks the duality between `T_n` and `P / nQ` and the `W`-action on both.
pub fn lemma1_equivariance_report(rd: &RootDatum, n: u64) -> Result<Lemma1Report> {
    lemma1_equivariance_report_with(rd, n, &Lemma1Options::default())
}

pub fn lemma1_equivariance_report_with(
    rd: &RootDatum,
    n: u64,
    options: &Lemma1Options,
) -> Result<Lemma1Report> {
    let m = check_modulus(n)?;
    let r = rd.rank();
    let points = torsion_points(rd, n)?;
    let chars = char_group_of_torsion(rd, n)?;
    let size = enumeration_size(&chars, options.cap)?;
    enumeration_size(&points, options.cap)?;

    let expected = (n as u128).pow(r as u32) * rd.center().order().to_u128().unwrap_or(0);
    let invariant_factors_agree = points.invariant_factors() == chars.invariant_factors();
    let order_matches_formula = size as u128 == expected;

    let reflect_weight = |i: usize, x: &mut [i64]| reflect_in_place(rd, i, x);
    let reflect_coweight = |i: usize, v: &mut [i64]| {
        let c = v[i];
        for (k, vk) in v.iter_mut().enumerate() {
            *vk -= c * rd.cartan_entry(i, k);
        }
    };

    // det(A) <x, v> = (adj(A) x) . v, with x in weight and v in coweight
    // coordinates
    let det = rd.center().order().to_i64().expect("center order fits i64");
    let adjugate: Vec<Vec<i64>> = (0..r)
        .map(|k| {
            let mut e = vec![0; r];
            e[k] = 1;
            solve_rational(rd.cartan(), &e)
                .iter()
                .map(|q| {
                    (q * BigInt::from(det))
                        .to_integer()
                        .to_i64()
                        .expect("adjugate entry")
                })
                .collect()
        })
        .collect();
    let scaled_pairing = |x: &[i64], v: &[i64]| -> i64 {
        (0..r)
            .map(|j| (0..r).map(|k| adjugate[k][j] * x[k]).sum::<i64>() * v[j])
            .sum()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ n.rotate_left(32) ^ r as u64);
    let bound = 5 * m;
    let mut failure = None;
    let mut pairing_invariant = true;
    for _ in 0..options.witnesses {
        let x: Vec<i64> = (0..r).map(|_| rng.gen_range(-bound..=bound)).collect();
        let z: Vec<i64> = (0..r).map(|_| rng.gen_range(-bound..=bound)).collect();
        let v: Vec<i64> = (0..r).map(|_| rng.gen_range(-bound..=bound)).collect();
        // x + n * sum z_j alpha_j and v + n * sum z_j alpha_j^vee
        let x2: Vec<i64> = (0..r)
            .map(|k| x[k] + m * (0..r).map(|j| rd.cartan_entry(k, j) * z[j]).sum::<i64>())
            .collect();
        let v2: Vec<i64> = (0..r)
            .map(|k| v[k] + m * (0..r).map(|j| rd.cartan_entry(j, k) * z[j]).sum::<i64>())
            .collect();
        for i in 0..r {
            let (mut a, mut b) = (x.clone(), x2.clone());
            reflect_weight(i, &mut a);
            reflect_weight(i, &mut b);
            if failure.is_none() && chars.project_i64(&a) != chars.project_i64(&b) {
                failure = Some(ActionFailure {
                    side: "characters",
                    reflection: i,
                    first: x.clone(),
                    second: x2.clone(),
                });
            }
            let (mut c, mut d) = (v.clone(), v2.clone());
            reflect_coweight(i, &mut c);
            reflect_coweight(i, &mut d);
            if failure.is_none() && points.project_i64(&c) != points.project_i64(&d) {
                failure = Some(ActionFailure {
                    side: "points",
                    reflection: i,
                    first: v.clone(),
                    second: v2.clone(),
                });
            }
            // <x, v> is W-invariant and well defined mod n on both classes
            let base = scaled_pairing(&x, &v);
            if scaled_pairing(&a, &c) != base
                || (scaled_pairing(&x2, &v2) - base).rem_euclid(det * m) != 0
            {
                pairing_invariant = false;
            }
        }
    }

    let orbit_counts = [
        count_orbits(&chars, size, r, reflect_weight),
        count_orbits(&points, size, r, reflect_coweight),
    ];
    let action_well_defined = failure.is_none();
    let passed = invariant_factors_agree
        && order_matches_formula
        && action_well_defined
        && pairing_invariant
        && orbit_counts[0] == orbit_counts[1];
    Ok(Lemma1Report {
        n,
        torsion_points: points.invariant_factors_u64(),
        character_group: chars.invariant_factors_u64(),
        order: size,
        invariant_factors_agree,
        order_matches_formula,
        witnesses: options.witnesses,
        action_well_defined,
        pairing_invariant,
        failure,
        orbit_counts,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularOrbit {
    pub representative: Vec<i64>,
    pub size: u64,
    pub image_order: u64,
    pub contains_rho: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularOrbitReport {
    pub n: u64,
    pub total_classes: u64,
    pub regular_classes: u64,
    pub regular_orbits: u64,
    pub regular_orbits_with_image_order_n: u64,
    /// The unique regular orbit of image order `n` exists and contains `rho`.
    pub rho_in_distinguished_orbit: bool,
    pub orbits: Vec<RegularOrbit>,
}

/// Splits the regular classes of `P / nQ` into `W`-orbits.
pub fn classify_regular_orbits(rd: &RootDatum, n: u64, cap: u64) -> Result<RegularOrbitReport> {
    check_modulus(n)?;
    let space = TorsionSpace::new(rd, n)?;
    let size = enumeration_size(space.group(), cap)?;
    let rho_index = space.index(&space.class(rd.rho().clone())?);

    let mut seen = vec![false; size as usize];
    let mut orbits = Vec::new();
    let mut regular_classes = 0;
    let mut stack = Vec::new();
    for start in 0..size {
        if seen[start as usize] {
            continue;
        }
        let first = space.class_at(start);
        if !first.is_regular() {
            continue;
        }
        seen[start as usize] = true;
        let image_order = first.image_order();
        let mut orbit = RegularOrbit {
            representative: first.rep.0.clone(),
            size: 0,
            image_order,
            contains_rho: false,
        };
        stack.push(first);
        while let Some(class) = stack.pop() {
            let index = space.index(&class);
            orbit.size += 1;
            orbit.contains_rho |= index == rho_index;
            for i in 0..rd.rank() {
                let next = space.reflect(i, &class);
                let j = space.index(&next) as usize;
                if !seen[j] {
                    if !next.is_regular() || next.image_order() != image_order {
                        return Err(Error::TheoremViolation(format!(
                            "reflection s_{} changed the type of class {:?}",
                            i + 1,
                            class.rep.0
                        )));
                    }
                    seen[j] = true;
                    stack.push(next);
                }
            }
        }
        regular_classes += orbit.size;
        orbits.push(orbit);
    }

    let distinguished: Vec<&RegularOrbit> = orbits.iter().filter(|o| o.image_order == n).collect();
    Ok(RegularOrbitReport {
        n,
        total_classes: size,
        regular_classes,
        regular_orbits: orbits.len() as u64,
        regular_orbits_with_image_order_n: distinguished.len() as u64,
        rho_in_distinguished_orbit: distinguished.len() == 1 && distinguished[0].contains_rho,
        orbits,
    })
}
