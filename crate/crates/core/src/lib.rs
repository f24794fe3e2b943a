//! Invariant constant-scalar-curvature Kähler metrics on negative homogeneous
//! line bundles over generalized flag varieties.
//!
//! The pipeline runs root system → flag variety → line bundle data → exact
//! momentum profile → classification. All algebra is over exact rationals;
//! binary64 appears only in sample tables, asymptotic rates and the numeric
//! cross-check.

pub mod error;
pub mod flag;
pub mod invariants;
pub mod job;
pub mod momentum;
pub mod poly;
pub mod quadrature;
pub mod rootsys;

pub use error::{Error, Result};
pub use flag::{BundleClass, BundleWeight, FlagVariety, KahlerClass};
pub use invariants::{classify_invariant_fields, ddc_applicable, DdcVerdict, FieldCase, InvariantFieldClassification};
pub use momentum::{
    build_profile_inputs, classify_behavior, metric_index, momentum_interval, BehaviorReport, MomentumInterval,
    MomentumProfile, ProfileInputs,
};
pub use poly::{Polynomial, Rational, RationalFunction};
pub use rootsys::{Basis, LieTypeSpec, RootSystem, WeightVector};
