//! Differential bug hunting between two circuits.
//!
//! Starting from one random basis state, the hunt runs both circuits over
//! the same precondition and compares the output languages. While they
//! agree, the precondition is widened by one random extra transition, so
//! each round pushes a larger (and increasingly non-classical) state set
//! through both circuits. A reported mismatch carries a witness state
//! produced by exactly one of the circuits and, whenever the register is
//! small enough to enumerate, an independent matrix-level confirmation.
//!
//! Reported differences are never spurious in the automaton semantics: a
//! witness exists only when the two output languages differ, which means
//! some input state is mapped differently by the two circuits. Misses are
//! possible (this is a fuzzer, not a decision procedure for all inputs).
//!
//! Each round runs under a fixed transition budget. Widened preconditions
//! are nondeterministic, and composition-mode transformers can blow up on
//! such inputs; when a round would exceed the budget the hunt stops
//! cleanly and flags the report instead of consuming unbounded memory.
//! Rounds that hit the budget are not recorded as explored.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::inclusion::{diff_witness, DiffSide};
use crate::automaton::{InternalTransition, StateId, TreeAutomaton};
use crate::circuit::QuantumCircuit;
use crate::gates::ApplyMode;
use crate::oracle::{apply_circuit_matrix, enumerate_states};
use crate::tree::StateTree;

use super::{run_circuit_budgeted, EngineError};
use crate::gates::GateError;

/// A mismatch found between the two circuits.
#[derive(Debug, Clone)]
pub struct BugHuntViolation {
    /// 1-based round in which the mismatch appeared.
    pub iteration: u64,
    /// State produced by exactly one of the circuits.
    pub witness: StateTree,
    /// `ResultOnly`: only the first circuit produces the witness;
    /// `PostOnly`: only the second does.
    pub side: DiffSide,
    /// Matrix-level cross-check of the witness; `None` when the register is
    /// too wide or the input set too large to enumerate.
    pub confirmed: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct BugHuntReport {
    pub violation: Option<BugHuntViolation>,
    pub iterations_run: u64,
    /// The precondition used in each round, in order. Lets callers replay
    /// or independently re-check any round.
    pub pres: Vec<TreeAutomaton>,
    /// True when the hunt stopped early because a round exceeded the
    /// intermediate transition budget rather than finishing its comparison.
    pub budget_hit: bool,
    pub seed: u64,
    pub wall: Duration,
}

impl BugHuntReport {
    pub fn found(&self) -> bool {
        self.violation.is_some()
    }
}

/// Cap on intermediate automaton size per gate application during a hunt.
/// Large enough for every practical round, small enough that a worst-case
/// composition blowup stops in milliseconds instead of exhausting memory.
const TRANSITION_BUDGET: usize = 20_000;

/// Hunts for an input set on which the two circuits produce different
/// output languages. Stops at the first mismatch or after `max_iters`
/// rounds.
pub fn bughunt(
    a: &QuantumCircuit,
    b: &QuantumCircuit,
    max_iters: u64,
    seed: u64,
    mode: ApplyMode,
) -> Result<BugHuntReport, EngineError> {
    if a.n() != b.n() {
        return Err(EngineError::WidthMismatch(a.n(), b.n()));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<bool> = (0..a.n()).map(|_| rng.gen()).collect();
    let mut pre = TreeAutomaton::single_basis_state(&bits);
    let mut pres = Vec::new();
    let mut violation = None;
    let mut iterations_run = 0;
    let mut budget_hit = false;
    'rounds: for iteration in 1..=max_iters {
        let mut outs = Vec::with_capacity(2);
        for c in [a, b] {
            match run_circuit_budgeted(&pre, c, mode, TRANSITION_BUDGET) {
                Ok((out, _)) => outs.push(out),
                Err(EngineError::Gate(GateError::BudgetExceeded(_))) => {
                    budget_hit = true;
                    break 'rounds;
                }
                Err(e) => return Err(e),
            }
        }
        let (rb, ra) = (outs.pop().unwrap(), outs.pop().unwrap());
        iterations_run = iteration;
        pres.push(pre.clone());
        if let Some((witness, side)) = diff_witness(&ra, &rb) {
            let confirmed = confirm(&pre, a, b, &witness, side);
            violation = Some(BugHuntViolation { iteration, witness, side, confirmed });
            break;
        }
        widen(&mut pre, &mut rng);
    }
    Ok(BugHuntReport { violation, iterations_run, pres, budget_hit, seed, wall: start.elapsed() })
}

/// Grows the precondition language by one random transition: pick an
/// existing transition, keep its parent and layer, and rewire it to a
/// random pair of children already used at that layer. The new combination
/// may denote a superposition (even an unnormalized one); that is fine,
/// since the engine is linear and language comparison does not care about
/// norms. Gives up silently when the layer is saturated.
fn widen(pre: &mut TreeAutomaton, rng: &mut ChaCha8Rng) {
    let existing: Vec<InternalTransition> = pre.internal_transitions().cloned().collect();
    if existing.is_empty() {
        return;
    }
    for _ in 0..32 {
        let at = &existing[rng.gen_range(0..existing.len())];
        let q = at.symbol.qubit;
        let children: Vec<StateId> = existing
            .iter()
            .filter(|t| t.symbol.qubit == q)
            .flat_map(|t| [t.left, t.right])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let left = children[rng.gen_range(0..children.len())];
        let right = children[rng.gen_range(0..children.len())];
        let cand =
            InternalTransition { parent: at.parent, symbol: at.symbol.clone(), left, right };
        if !pre.internal_transitions().any(|t| *t == cand) {
            pre.add_internal(at.parent, q, left, right);
            debug_assert!(pre.validate().is_ok());
            return;
        }
    }
}

/// Replays the round through the matrix simulator: enumerate the input set,
/// push every state through both circuits, and check that the witness lands
/// in exactly the image it was reported for.
fn confirm(
    pre: &TreeAutomaton,
    a: &QuantumCircuit,
    b: &QuantumCircuit,
    witness: &StateTree,
    side: DiffSide,
) -> Option<bool> {
    if pre.n() > 12 {
        return None;
    }
    let inputs = enumerate_states(pre, 4096).ok()?;
    let mut image_a = BTreeSet::new();
    let mut image_b = BTreeSet::new();
    for t in &inputs {
        let v = t.to_vector().ok()?;
        image_a.insert(apply_circuit_matrix(&v, a).ok()?.to_tree());
        image_b.insert(apply_circuit_matrix(&v, b).ok()?.to_tree());
    }
    let in_a = image_a.contains(witness);
    let in_b = image_b.contains(witness);
    Some(match side {
        DiffSide::ResultOnly => in_a && !in_b,
        DiffSide::PostOnly => in_b && !in_a,
    })
}
