//! Job-level driver: run a circuit over a precondition automaton, check
//! `{pre} circuit {post}` triples, and collect analysis statistics.
//!
//! `run_circuit` folds the gate transformers over the precondition with a
//! reduction step after every gate and records per-gate automaton sizes.
//! `verify` compares the result against the postcondition by language
//! equivalence or inclusion and returns a counterexample state on failure.

pub mod bughunt;
pub mod generate;

use std::time::{Duration, Instant};

use crate::automaton::inclusion::{counterexample, diff_witness, DiffSide};
use crate::automaton::TreeAutomaton;
use crate::circuit::{Gate, QuantumCircuit};
use crate::gates::{apply_gate_budgeted, ApplyMode, GateError};
use crate::tree::StateTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("{part} is over {n} qubits but the circuit uses {circuit}")]
    QubitMismatch { part: &'static str, n: u32, circuit: u32 },
    #[error("circuits use different register widths: {0} vs {1} qubits")]
    WidthMismatch(u32, u32),
    #[error(transparent)]
    Gate(#[from] GateError),
}

/// Automaton size right after one gate (and its reduction) was applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateStat {
    pub gate: Gate,
    pub states: usize,
    pub transitions: usize,
}

#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub per_gate: Vec<GateStat>,
    pub wall: Duration,
}

impl RunStats {
    pub fn peak_states(&self) -> usize {
        self.per_gate.iter().map(|g| g.states).max().unwrap_or(0)
    }

    pub fn peak_transitions(&self) -> usize {
        self.per_gate.iter().map(|g| g.transitions).max().unwrap_or(0)
    }
}

/// Applies the whole circuit to `pre`, reducing after every gate.
pub fn run_circuit(
    pre: &TreeAutomaton,
    c: &QuantumCircuit,
    mode: ApplyMode,
) -> Result<(TreeAutomaton, RunStats), EngineError> {
    run_circuit_budgeted(pre, c, mode, usize::MAX)
}

/// Like [`run_circuit`], but aborts with [`GateError::BudgetExceeded`] if any
/// intermediate automaton grows past `max_transitions` transitions.
///
/// Composition-mode transformers can blow up on strongly nondeterministic
/// inputs; callers that run unattended (such as the bug hunter) pass a finite
/// budget so a pathological case surfaces as a typed error instead of
/// exhausting memory.
pub fn run_circuit_budgeted(
    pre: &TreeAutomaton,
    c: &QuantumCircuit,
    mode: ApplyMode,
    max_transitions: usize,
) -> Result<(TreeAutomaton, RunStats), EngineError> {
    if pre.n() != c.n() {
        return Err(EngineError::QubitMismatch { part: "precondition", n: pre.n(), circuit: c.n() });
    }
    let start = Instant::now();
    let mut cur = pre.clone();
    cur.reduce();
    let mut per_gate = Vec::with_capacity(c.len());
    for g in c.gates() {
        cur = apply_gate_budgeted(&cur, g, mode, max_transitions)?;
        per_gate.push(GateStat {
            gate: *g,
            states: cur.num_states(),
            transitions: cur.num_transitions(),
        });
    }
    Ok((cur, RunStats { per_gate, wall: start.elapsed() }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Circuit output language must equal the postcondition language.
    Equivalence,
    /// Circuit output language must be contained in the postcondition.
    Inclusion,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub holds: bool,
    /// A state accepted on exactly one side, present iff the check fails.
    /// The side says where: `ResultOnly` = reachable but not allowed,
    /// `PostOnly` = allowed but not reachable (equivalence checks only).
    pub witness: Option<(StateTree, DiffSide)>,
    pub stats: RunStats,
}

/// Decides `{pre} circuit {post}` for the given check kind.
pub fn verify(
    pre: &TreeAutomaton,
    c: &QuantumCircuit,
    post: &TreeAutomaton,
    check: CheckKind,
    mode: ApplyMode,
) -> Result<VerifyReport, EngineError> {
    if post.n() != c.n() {
        return Err(EngineError::QubitMismatch { part: "postcondition", n: post.n(), circuit: c.n() });
    }
    let (result, stats) = run_circuit(pre, c, mode)?;
    let witness = match check {
        CheckKind::Equivalence => diff_witness(&result, post),
        CheckKind::Inclusion => counterexample(&result, post).map(|w| (w, DiffSide::ResultOnly)),
    };
    Ok(VerifyReport { holds: witness.is_none(), witness, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::AlgebraicAmplitude;
    use crate::tree::StateVector;

    fn bell_circuit() -> QuantumCircuit {
        QuantumCircuit::from_gates(2, vec![Gate::H { t: 1 }, Gate::Cnot { c: 1, t: 2 }]).unwrap()
    }

    fn bell_automaton() -> TreeAutomaton {
        let h = AlgebraicAmplitude::inv_sqrt2_pow(1);
        let z = AlgebraicAmplitude::zero();
        let v = StateVector::new(2, vec![h.clone(), z.clone(), z, h]).unwrap();
        TreeAutomaton::from_tree(&v.to_tree(), 2).unwrap()
    }

    #[test]
    fn bell_triple_holds_in_both_modes() {
        let pre = TreeAutomaton::single_basis_state(&[false, false]);
        let post = bell_automaton();
        for mode in [ApplyMode::Hybrid, ApplyMode::Composition] {
            let rep = verify(&pre, &bell_circuit(), &post, CheckKind::Equivalence, mode).unwrap();
            assert!(rep.holds, "bell triple in {mode:?}");
            assert!(rep.witness.is_none());
            assert_eq!(rep.stats.per_gate.len(), 2);
        }
    }

    #[test]
    fn failed_check_produces_bell_witness() {
        let pre = TreeAutomaton::single_basis_state(&[false, false]);
        let wrong_post = TreeAutomaton::single_basis_state(&[false, false]);
        let rep =
            verify(&pre, &bell_circuit(), &wrong_post, CheckKind::Equivalence, ApplyMode::Hybrid)
                .unwrap();
        assert!(!rep.holds);
        let (w, _) = rep.witness.expect("violation carries a witness");
        let bell = bell_automaton();
        let result = run_circuit(&pre, &bell_circuit(), ApplyMode::Hybrid).unwrap().0;
        // The witness is accepted by exactly one side.
        assert_ne!(result.accepts(&w), wrong_post.accepts(&w));
        assert!(bell.accepts(&w), "witness is the bell state: {}", w.dirac());
    }

    #[test]
    fn inclusion_is_one_sided() {
        let pre = TreeAutomaton::single_basis_state(&[true, false]);
        let id = QuantumCircuit::new(2);
        let all = TreeAutomaton::all_basis_states(2);
        let rep = verify(&pre, &id, &all, CheckKind::Inclusion, ApplyMode::Hybrid).unwrap();
        assert!(rep.holds, "one basis state is included in all of them");
        // The reverse direction fails and the witness sits on the result side.
        let rep = verify(&all, &id, &pre, CheckKind::Inclusion, ApplyMode::Hybrid).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.witness.unwrap().1, DiffSide::ResultOnly);
    }

    #[test]
    fn width_mismatch_reported() {
        let pre = TreeAutomaton::single_basis_state(&[false]);
        let c = QuantumCircuit::new(2);
        assert!(matches!(
            run_circuit(&pre, &c, ApplyMode::Hybrid),
            Err(EngineError::QubitMismatch { part: "precondition", .. })
        ));
        let post = TreeAutomaton::all_basis_states(3);
        let pre2 = TreeAutomaton::single_basis_state(&[false, false]);
        assert!(matches!(
            verify(&pre2, &c, &post, CheckKind::Equivalence, ApplyMode::Hybrid),
            Err(EngineError::QubitMismatch { part: "postcondition", .. })
        ));
    }
}
