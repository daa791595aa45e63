//! Report plumbing shared by the pinned replication scenarios.
//!
//! Each scenario produces a [`ScenarioReport`]: derived identities, any
//! involutivity analyses it ran, a list of [`Check`]s against pinned expected
//! values, and free-form discrepancy notes.  The expected values live in
//! `expected_values.json` next to this module — never inline in scenario
//! code — and every entry carries the quoted source phrase (`anchor`) it
//! mirrors, so a failing check can report the computed value, the pinned
//! value, and where the pinned value comes from.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;
use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::field::FieldError;
use crate::jets::JetError;
use crate::pfaffian::{InvolutivityReport, PfaffianError};

/// Errors surfaced while assembling a scenario.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

#[derive(Clone, Debug, Deserialize)]
struct Pin {
    anchor: String,
    value: String,
}

fn pins() -> &'static BTreeMap<String, Pin> {
    static PINS: OnceLock<BTreeMap<String, Pin>> = OnceLock::new();
    PINS.get_or_init(|| {
        serde_json::from_str(include_str!("expected_values.json"))
            .expect("pinned expectation table parses")
    })
}

/// One comparison against a pinned expected value.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// Stable identifier, also the key into the pinned table.
    pub id: String,
    /// Quoted source phrase the pinned value mirrors.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// An involutivity analysis bundled with the name of the system it ran on.
#[derive(Clone, Debug, Serialize)]
pub struct LabeledInvolutivity {
    pub label: String,
    pub report: InvolutivityReport,
}

/// Machine-readable outcome of one scenario.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    /// Derived identities as `(symbol, expression)` display pairs.
    pub identities: Vec<(String, String)>,
    pub involutivity: Vec<LabeledInvolutivity>,
    pub checks: Vec<Check>,
    /// Observed divergences between the computation and the printed source
    /// displays it replicates (sign conventions, transcription slips).
    pub notes: Vec<String>,
}

impl ScenarioReport {
    pub fn new(scenario: &str) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            identities: Vec::new(),
            involutivity: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Compare a computed value against the pinned expectation for `id`.
    ///
    /// Panics if no expectation is pinned under that id: an unpinned check is
    /// a defect in the scenario, not a data-driven failure.
    pub fn pin(&mut self, id: &str, computed: impl Into<String>) -> bool {
        let pin = pins()
            .get(id)
            .unwrap_or_else(|| panic!("no expectation pinned under id `{id}`"));
        let computed = computed.into();
        let pass = computed == pin.value;
        self.checks.push(Check {
            id: id.to_string(),
            anchor: pin.anchor.clone(),
            expected: pin.value.clone(),
            computed,
            pass,
        });
        pass
    }

    /// Compare a boolean verdict against a pinned `true`/`false`.
    pub fn pin_bool(&mut self, id: &str, value: bool) -> bool {
        self.pin(id, if value { "true" } else { "false" })
    }

    pub fn identity(&mut self, symbol: impl Into<String>, expression: impl Into<String>) {
        self.identities.push((symbol.into(), expression.into()));
    }

    pub fn involutivity(&mut self, label: &str, report: InvolutivityReport) {
        self.involutivity.push(LabeledInvolutivity {
            label: label.to_string(),
            report,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// True when every check passed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The checks that did not pass.
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// Human-readable rendering used by the command line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {}", self.scenario);
        for (symbol, expr) in &self.identities {
            let _ = writeln!(out, "  identity {symbol} = {expr}");
        }
        for inv in &self.involutivity {
            let r = &inv.report;
            let _ = writeln!(
                out,
                "  system {}: s0={} characters={:?} dim={} cartan_ok={} generality=({} fn of {} var)",
                inv.label,
                r.s0,
                r.characters,
                r.integral_dim,
                r.cartan_ok,
                r.generality.functions,
                r.generality.variables,
            );
        }
        for check in &self.checks {
            if check.pass {
                let _ = writeln!(out, "  ok   {} = {}", check.id, check.computed);
            } else {
                let _ = writeln!(
                    out,
                    "  FAIL {}: computed {} but pinned {} (anchor: {})",
                    check.id, check.computed, check.expected, check.anchor
                );
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note {note}");
        }
        let _ = writeln!(
            out,
            "  verdict: {}",
            if self.all_pass() { "PASS" } else { "FAIL" }
        );
        out
    }
}
