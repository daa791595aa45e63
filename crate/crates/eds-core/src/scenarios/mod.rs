//! End-to-end constructions of the coframed spaces and exterior systems the
//! library is designed to analyze: the structure equations of generalized
//! Finsler surfaces, the Pfaffian systems governing generalized Landsberg
//! structures, and the machine-checkable reports tying them together.
//!
//! Each `scenario_*` function builds its spaces from scratch, derives the
//! identities or runs the involutivity pipeline, and compares every headline
//! value against a pinned expectation (see `expected_values.json`); the
//! result is a [`ScenarioReport`] that renders to text or JSON.

pub mod finsler;
pub mod frame_bundle;
pub mod landsberg;
pub mod report;

pub use finsler::{
    generalized_finsler_space, scenario_contact_checks, scenario_finsler_identities,
    FinslerSymbols,
};
pub use frame_bundle::{prolonged_frame_bundle_system, scenario_prolonged_frame_bundle};
pub use landsberg::{landsberg_system, scenario_landsberg_ik};
pub use report::{Check, LabeledInvolutivity, ScenarioError, ScenarioReport};

#[cfg(test)]
mod tests;
