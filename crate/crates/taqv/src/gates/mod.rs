//! Gate application on tree automata.
//!
//! Two interchangeable strategies produce language-equal results:
//!
//! * **Composition** expresses every gate through generic language-level
//!   building blocks: branch restriction, projection (substituting a constant
//!   for one variable), constant scaling, and a synchronized binary sum. See
//!   [`compose`].
//! * **Permutation-style rewriting** handles the gates whose matrices only
//!   permute and phase basis states (X, Y, Z, S, T and ordered controlled
//!   gates) by local transition surgery, which is much cheaper. See `perm`.
//!
//! [`apply_gate`] picks per gate: in [`ApplyMode::Hybrid`] the rewriting path
//! is used whenever its wire-order precondition holds, everything else goes
//! through composition. [`ApplyMode::Composition`] forces the generic path.
//! Fredkin is applied as its three-gate controlled-swap sequence in both
//! modes.

use crate::automaton::{AutomatonError, TreeAutomaton};
use crate::circuit::{CircuitError, Gate};

pub mod compose;
mod perm;

pub use compose::{binary_op, mult_const, project, restrict, BinOp, ConstFactor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GateError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("automata act on different register sizes: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("projection of x{0} reached the leaf level with swaps left to do")]
    SwapPastBottom(u32),
    #[error("swapping x{0} requires singly-tagged transitions at the level below")]
    SwapNeedsSingleTags(u32),
    #[error("copy step expects x{0} transitions at the bottom level")]
    CopyNotAtBottom(u32),
    #[error("merged-tag structure around x{0} is inconsistent")]
    MalformedSwapStructure(u32),
    #[error("gate transformer exceeded the intermediate size budget of {0} transitions")]
    BudgetExceeded(usize),
}

/// Strategy selector for [`apply_gate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApplyMode {
    /// Transition rewriting where its preconditions hold, composition
    /// elsewhere.
    Hybrid,
    /// The generic composition pipeline for every gate.
    Composition,
}

/// Applies one gate, returning a trimmed and reduced automaton whose language
/// is the image of the input language under the gate. The input must be
/// untagged.
pub fn apply_gate(a: &TreeAutomaton, g: &Gate, mode: ApplyMode) -> Result<TreeAutomaton, GateError> {
    apply_gate_budgeted(a, g, mode, usize::MAX)
}

/// [`apply_gate`] with a resource cap: the composition pipeline fails fast
/// with [`GateError::BudgetExceeded`] once any intermediate automaton grows
/// past `max_transitions`. The generic pipeline can blow up combinatorially
/// on strongly nondeterministic inputs (its projection step builds products
/// of sibling subtree structures), so unattended callers such as the bug
/// hunter cap it rather than risk exhausting memory.
pub fn apply_gate_budgeted(
    a: &TreeAutomaton,
    g: &Gate,
    mode: ApplyMode,
    max_transitions: usize,
) -> Result<TreeAutomaton, GateError> {
    g.validate(a.n())?;
    let mut out = match (mode, *g) {
        (_, Gate::Fredkin { c, a: x, b: y }) => {
            return fredkin_sequence(a, c, x, y, mode, max_transitions)
        }
        (ApplyMode::Hybrid, Gate::X { t }) => perm::x_gate(a, t),
        (ApplyMode::Hybrid, Gate::Y { t }) => perm::y_gate(a, t),
        (ApplyMode::Hybrid, Gate::Z { t }) => perm::z_gate(a, t),
        (ApplyMode::Hybrid, Gate::S { t }) => perm::s_gate(a, t),
        (ApplyMode::Hybrid, Gate::T { t }) => perm::t_gate(a, t),
        (ApplyMode::Hybrid, Gate::Cnot { c, t }) if c < t => perm::cnot_gate(a, c, t),
        (ApplyMode::Hybrid, Gate::Cz { c, t }) if c < t => perm::cz_gate(a, c, t),
        (ApplyMode::Hybrid, Gate::Toffoli { c1, c2, t }) if c2 < t => {
            perm::toffoli_gate(a, c1, c2, t)
        }
        _ => compose::apply_composition(a, g, max_transitions)?,
    };
    out.reduce();
    Ok(out)
}

/// Controlled swap as CNOT, Toffoli, CNOT. The sub-gates dispatch through
/// `apply_gate_budgeted` again, so each leg picks its own strategy.
fn fredkin_sequence(
    a: &TreeAutomaton,
    c: u32,
    x: u32,
    y: u32,
    mode: ApplyMode,
    max_transitions: usize,
) -> Result<TreeAutomaton, GateError> {
    let seq = [Gate::Cnot { c: y, t: x }, Gate::toffoli(c, x, y), Gate::Cnot { c: y, t: x }];
    let mut cur = a.clone();
    for g in seq {
        cur = apply_gate_budgeted(&cur, &g, mode, max_transitions)?;
    }
    Ok(cur)
}
