//! Exact character values of simply connected semisimple groups at the
//! Coxeter conjugacy class.
//!
//! The value of an irreducible character at the Coxeter class is always
//! `-1`, `0` or `1`. [`kostant`] computes it in polynomial time by a walk in
//! the affine Weyl group. [`oracle`] recomputes it by brute force from the
//! Weyl character formula in exact cyclotomic arithmetic, and the two are
//! compared throughout the test suites.
//!
//! ```
//! use kostant_core::{build, char_at_coxeter, Weight};
//!
//! let a2 = build("A2").unwrap();
//! let adjoint = char_at_coxeter(&a2, &Weight(vec![1, 1])).unwrap();
//! assert_eq!(adjoint.value, -1);
//! ```

pub mod cyclotomic;
pub mod error;
pub mod kostant;
pub mod lattice;
pub mod oracle;
pub mod root_datum;
pub mod torsion;
pub mod weyl;

pub use cyclotomic::{divide_exact, CyclotomicInt, CyclotomicRat};
pub use error::{Error, Result};
pub use kostant::{
    alcove_reduce, char_at_coxeter, coxeter_lift_order, fs_indicator, regularity_test,
    rho_central_character, verify_principal_cocharacter, CharReport, CoxeterCharacter,
};
pub use lattice::{quotient, smith_normal_form, FiniteAbelianGroup, IntMatrix};
pub use oracle::{char_at_coxeter_oracle, float_shadow, oracle_batch};
pub use root_datum::{
    build, CartanType, Coweight, Family, RootDatum, RootPair, SimpleType, Weight,
};
pub use torsion::{
    char_group_of_torsion, classify_regular_orbits, lemma1_equivariance_report, torsion_points,
    TorsionClass,
};
pub use weyl::{duality_involution, make_dominant, simple_reflection, WeylElement};
