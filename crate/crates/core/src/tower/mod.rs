//! The concrete target rings of the representations of Z[H].

pub mod novikov;
pub mod ratfield;
pub mod repr;
pub mod rfn;

pub use novikov::{rho_novikov, NovikovCtx, NovikovElement};
pub use ratfield::{RatFn, RatFnCtx};
pub use repr::{
    identity_basis, rho_bundle_at_one, rho_fraction_bundle, rho_rational_field, rho_scalar, rho_scalar_bundle,
    MonodromyRep, RepField, RepresentationDescriptor,
};
pub use rfn::{r_is_unit, rho_r, RationalFnR};
