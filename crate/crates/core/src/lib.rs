//! Exact arithmetic for Moore spaces in the stable range.
//!
//! A Moore space `M(A, n)` is modelled by its exact couple
//! `A -2-> A -α-> B -β-> A`. Homotopy classes of maps are morphisms of
//! couples, and the stable stems `π_0^S` through `π_7^S` are computed from `A`
//! by functorial formulas.
//!
//! Everything is generic over a [`Scalar`]: [`num_bigint::BigInt`] for
//! unbounded work, or `i32`/`i64`/`i128` which panic on overflow instead of
//! wrapping. The aliases below fix the scalar to `BigInt`.

pub mod error;
pub mod exact_couples;
pub mod fga;
pub mod functors;
pub mod moore;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};
pub use exact_couples::{
    morphism_group, parse_couple, write_couple, CoupleMorphism, ExactCouple, MorphismGroup, Violation,
};
pub use fga::{
    biproduct, direct_sum, hom_group, n_torsion, quotient_by_n, quotient_map, smith_normal_form, torsion_inclusion,
    AbelianGroup, Biproduct, GroupElement, GroupHom, HomGroup, IntMatrix, SmithForm,
};
pub use functors::{ext, ext_realize, lambda_iso_check, lambda_map, tensor, tor, ExtClass, ExtGroup, Extension, Lambda};
pub use moore::{
    ahss_order_check, canonical_couple, homotopy_classes, homotopy_ses_order_check, normalize, pi3_legs, pushout, sphere_stem,
    stable_stem, stem_table, CanonicalCouple, MooreSpace, StemTable,
};
pub use num_bigint::BigInt;
pub use scalar::Scalar;

pub type Int = BigInt;
pub type Group = AbelianGroup<BigInt>;
pub type Element = GroupElement<BigInt>;
pub type Hom = GroupHom<BigInt>;
pub type Matrix = IntMatrix<BigInt>;
pub type Couple = ExactCouple<BigInt>;
pub type Morphism = CoupleMorphism<BigInt>;

pub type Group64 = AbelianGroup<i64>;
pub type Hom64 = GroupHom<i64>;
pub type Couple64 = ExactCouple<i64>;
