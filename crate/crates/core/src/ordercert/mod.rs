//! Membership certificates for root-closed, conjugacy-closed submonoids, word-equality witnesses
//! and their generators for 1-bridge braid knots, satellites and the manifold v2503.

pub mod certificate;
pub mod engine;
pub mod fixed_point;
pub mod property_d;
pub mod satellite;
pub mod v2503;
pub mod witness;

pub use certificate::{check_certificate, Certificate, Node};
pub use engine::{Engine, Fact};
pub use witness::{check_equality_witness, EqualityWitness, WitnessStep};
pub use property_d::{property_d_certificate, property_d_derivation, Branch, PropertyD};
pub use satellite::{peripheral_axioms, satellite_certificate, satellite_genus};
pub use fixed_point::fixed_point_hypotheses;
pub use v2503::{v2503_bundle, v2503_presentation, NamedCheck, V2503Bundle, WitnessedEquality};
