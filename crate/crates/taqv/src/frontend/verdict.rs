//! Machine-readable verdict and bug-hunt reports.
//!
//! The JSON layout is versioned (`"schema": "taqv/1"`) and key order is
//! fixed by the struct definitions here, so output is stable for scripting.
//! A witness is present exactly when the outcome is a violation; it lists
//! the nonzero basis amplitudes of the counterexample state plus a
//! human-readable Dirac rendering. Amplitude components are emitted as JSON
//! integers with arbitrary precision.

use num_bigint::BigInt;
use serde::Serialize;

use crate::automaton::inclusion::DiffSide;
use crate::tree::StateTree;

pub const SCHEMA: &str = "taqv/1";

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDoc {
    pub schema: &'static str,
    /// `equal`, `included`, or `violation`.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    pub stats: StatsDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDoc {
    /// Which language contains the witness, e.g. `result-only`.
    pub side: String,
    /// Nonzero amplitudes by basis string, first qubit leftmost.
    pub basis: Vec<BasisEntry>,
    pub dirac: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntry {
    pub basis: String,
    /// The five integers of the amplitude: scaled coefficients and the
    /// inverse square-root-of-two exponent.
    pub amplitude: Vec<serde_json::Number>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsDoc {
    pub gate_count: usize,
    pub per_gate: Vec<GateStatDoc>,
    pub peak_states: usize,
    pub peak_transitions: usize,
    pub wall_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateStatDoc {
    pub gate: String,
    pub states: usize,
    pub transitions: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BugHuntDoc {
    pub schema: &'static str,
    /// `violation` or `no-violation`.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<BugHuntViolationDoc>,
    pub iterations_run: u64,
    /// True when the hunt stopped early on its intermediate size budget.
    pub budget_hit: bool,
    pub wall_ms: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BugHuntViolationDoc {
    /// 1-based iteration at which the difference appeared.
    pub iteration: u64,
    pub witness: WitnessDoc,
    /// Matrix-simulation confirmation; `null` when the register is too wide
    /// to check exhaustively.
    pub confirmed: Option<bool>,
}

pub fn side_str(side: DiffSide) -> &'static str {
    match side {
        DiffSide::ResultOnly => "result-only",
        DiffSide::PostOnly => "post-only",
    }
}

fn number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integer strings parse as JSON numbers")
}

/// Renders a counterexample state as basis entries plus a Dirac string.
pub fn witness_doc(tree: &StateTree, side: impl Into<String>) -> WitnessDoc {
    let mut basis = Vec::new();
    let mut path = String::new();
    collect_basis(tree, &mut path, &mut basis);
    WitnessDoc { side: side.into(), basis, dirac: tree.dirac() }
}

fn collect_basis(t: &StateTree, path: &mut String, out: &mut Vec<BasisEntry>) {
    match t {
        StateTree::Leaf(a) => {
            if !a.is_zero() {
                let (c0, c1, c2, c3, k) = a.parts();
                out.push(BasisEntry {
                    basis: path.clone(),
                    amplitude: vec![number(c0), number(c1), number(c2), number(c3), number(k)],
                });
            }
        }
        StateTree::Node { left, right, .. } => {
            path.push('0');
            collect_basis(left, path, out);
            path.pop();
            path.push('1');
            collect_basis(right, path, out);
            path.pop();
        }
    }
}

pub fn verdict_doc(outcome: impl Into<String>, witness: Option<WitnessDoc>, stats: StatsDoc) -> VerdictDoc {
    let doc = VerdictDoc { schema: SCHEMA, outcome: outcome.into(), witness, stats };
    debug_assert_eq!(doc.outcome == "violation", doc.witness.is_some());
    doc
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("verdict documents serialize");
    s.push('\n');
    s
}
