//! Gate application by direct transition rewriting.
//!
//! Gates whose matrices are signed-phase permutations of the basis act on an
//! automaton locally. X swaps the children of every `x_t` transition. The
//! diagonal phase gates split the automaton into two weighted copies, routing
//! the `x_t = 1` branches into a phase-scaled duplicate. Controlled gates
//! route the `x_c = 1` branches of the control level into a copy of the
//! automaton with the body gate already applied, which requires the control
//! wire to come before the target wire.

use crate::amplitude::AlgebraicAmplitude;
use crate::automaton::{InternalTransition, TreeAutomaton};

/// A unit scalar `±w^p`.
#[derive(Debug, Clone, Copy)]
struct Phase {
    neg: bool,
    omega: i64,
}

impl Phase {
    const ONE: Phase = Phase { neg: false, omega: 0 };
    const MINUS_ONE: Phase = Phase { neg: true, omega: 0 };
    const I: Phase = Phase { neg: false, omega: 2 };
    const MINUS_I: Phase = Phase { neg: true, omega: 2 };
    const OMEGA: Phase = Phase { neg: false, omega: 1 };

    fn apply(self, a: &AlgebraicAmplitude) -> AlgebraicAmplitude {
        let x = a.mul_omega_pow(self.omega);
        if self.neg {
            x.negate()
        } else {
            x
        }
    }
}

fn level_transitions(a: &TreeAutomaton, t: u32) -> Vec<InternalTransition> {
    a.internal_transitions().filter(|tr| tr.symbol.qubit == t).copied().collect()
}

/// Swaps the two children of every `x_t` transition.
pub(super) fn x_gate(a: &TreeAutomaton, t: u32) -> TreeAutomaton {
    let mut out = a.clone();
    let targets = level_transitions(a, t);
    for tr in &targets {
        out.remove_internal(tr);
    }
    for tr in &targets {
        out.add_internal_tagged(tr.parent, tr.symbol, tr.right, tr.left);
    }
    out
}

/// Core of the diagonal gates: scales the subtrees hanging off the `x_t = 0`
/// branches by `a0` and those off the `x_t = 1` branches by `a1`, by routing
/// the 1-branches into a leaf-scaled duplicate of the automaton. With
/// `swap_after` the children are then exchanged, which turns `diag(a0, a1)`
/// into the antidiagonal matrix `[[0, a1], [a0, 0]]`.
fn scaled_branch_gate(a: &TreeAutomaton, t: u32, a0: Phase, a1: Phase, swap_after: bool) -> TreeAutomaton {
    let mut out = a.clone();
    out.map_leaf_amps(|amp| a0.apply(amp));
    let map = out.import_mapped(a, |amp| a1.apply(amp));
    let targets = level_transitions(a, t);
    for tr in &targets {
        out.remove_internal(tr);
    }
    for tr in &targets {
        out.add_internal_tagged(tr.parent, tr.symbol, tr.left, map[&tr.right]);
    }
    if swap_after {
        let rewritten = level_transitions(&out, t);
        for tr in &rewritten {
            out.remove_internal(tr);
        }
        for tr in &rewritten {
            out.add_internal_tagged(tr.parent, tr.symbol, tr.right, tr.left);
        }
    }
    out.trim();
    out
}

pub(super) fn z_gate(a: &TreeAutomaton, t: u32) -> TreeAutomaton {
    scaled_branch_gate(a, t, Phase::ONE, Phase::MINUS_ONE, false)
}

pub(super) fn s_gate(a: &TreeAutomaton, t: u32) -> TreeAutomaton {
    scaled_branch_gate(a, t, Phase::ONE, Phase::I, false)
}

pub(super) fn t_gate(a: &TreeAutomaton, t: u32) -> TreeAutomaton {
    scaled_branch_gate(a, t, Phase::ONE, Phase::OMEGA, false)
}

/// Y has matrix `[[0, -i], [i, 0]]`: scale the branches as `diag(i, -i)`,
/// then swap them.
pub(super) fn y_gate(a: &TreeAutomaton, t: u32) -> TreeAutomaton {
    scaled_branch_gate(a, t, Phase::I, Phase::MINUS_I, true)
}

/// Routes the `x_c = 1` branches into a copy of the automaton with `body`
/// applied. Sound when the body gate touches only wires after `c`, so every
/// affected level lies inside the rerouted subtrees.
fn controlled_rewrite(
    a: &TreeAutomaton,
    c: u32,
    body: impl FnOnce(&TreeAutomaton) -> TreeAutomaton,
) -> TreeAutomaton {
    let transformed = body(a);
    let mut out = a.clone();
    let map = out.import(&transformed);
    let targets = level_transitions(a, c);
    for tr in &targets {
        out.remove_internal(tr);
    }
    for tr in &targets {
        out.add_internal_tagged(tr.parent, tr.symbol, tr.left, map[&tr.right]);
    }
    out.trim();
    out
}

/// Requires `c < t`.
pub(super) fn cnot_gate(a: &TreeAutomaton, c: u32, t: u32) -> TreeAutomaton {
    debug_assert!(c < t);
    controlled_rewrite(a, c, |x| x_gate(x, t))
}

/// Requires `c < t`.
pub(super) fn cz_gate(a: &TreeAutomaton, c: u32, t: u32) -> TreeAutomaton {
    debug_assert!(c < t);
    controlled_rewrite(a, c, |x| z_gate(x, t))
}

/// Requires `c1 < c2 < t`.
pub(super) fn toffoli_gate(a: &TreeAutomaton, c1: u32, c2: u32, t: u32) -> TreeAutomaton {
    debug_assert!(c1 < c2 && c2 < t);
    controlled_rewrite(a, c1, |x| cnot_gate(x, c2, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{apply_gate_matrix, enumerate_states};
    use crate::tree::StateVector;

    fn image_of_basis(
        a: &TreeAutomaton,
        gate: &crate::circuit::Gate,
    ) -> std::collections::BTreeSet<crate::tree::StateTree> {
        enumerate_states(a, 64)
            .unwrap()
            .iter()
            .map(|t| apply_gate_matrix(&t.to_vector().unwrap(), gate).unwrap().to_tree())
            .collect()
    }

    fn check(a: &TreeAutomaton, gate: &crate::circuit::Gate, out: &TreeAutomaton) {
        let expect = image_of_basis(a, gate);
        let got = enumerate_states(out, 64).unwrap();
        assert_eq!(got, expect, "gate {gate:?}");
    }

    #[test]
    fn x_on_all_basis_states() {
        let a = TreeAutomaton::all_basis_states(3);
        for t in 1..=3 {
            let mut out = x_gate(&a, t);
            out.reduce();
            check(&a, &crate::circuit::Gate::X { t }, &out);
        }
    }

    #[test]
    fn phase_gates_on_single_state() {
        let a = TreeAutomaton::single_basis_state(&[true, false]);
        for t in 1..=2 {
            let mut out = z_gate(&a, t);
            out.reduce();
            check(&a, &crate::circuit::Gate::Z { t }, &out);
            let mut out = s_gate(&a, t);
            out.reduce();
            check(&a, &crate::circuit::Gate::S { t }, &out);
            let mut out = t_gate(&a, t);
            out.reduce();
            check(&a, &crate::circuit::Gate::T { t }, &out);
            let mut out = y_gate(&a, t);
            out.reduce();
            check(&a, &crate::circuit::Gate::Y { t }, &out);
        }
    }

    #[test]
    fn controlled_gates_on_all_basis_states() {
        let a = TreeAutomaton::all_basis_states(3);
        let mut out = cnot_gate(&a, 1, 3);
        out.reduce();
        check(&a, &crate::circuit::Gate::Cnot { c: 1, t: 3 }, &out);
        let mut out = cz_gate(&a, 2, 3);
        out.reduce();
        check(&a, &crate::circuit::Gate::Cz { c: 2, t: 3 }, &out);
        let mut out = toffoli_gate(&a, 1, 2, 3);
        out.reduce();
        check(&a, &crate::circuit::Gate::toffoli(1, 2, 3), &out);
    }

    #[test]
    fn bell_pair_via_rewriting() {
        // CNOT on the superposition (|00> + |10>)/sqrt(2).
        let h = AlgebraicAmplitude::inv_sqrt2_pow(1);
        let z = AlgebraicAmplitude::zero();
        let v = StateVector::new(2, vec![h.clone(), z.clone(), h.clone(), z.clone()]).unwrap();
        let a = TreeAutomaton::from_tree(&v.to_tree(), 2).unwrap();
        let mut out = cnot_gate(&a, 1, 2);
        out.reduce();
        let bell = StateVector::new(2, vec![h.clone(), z.clone(), z, h]).unwrap();
        assert!(out.accepts(&bell.to_tree()));
        assert_eq!(enumerate_states(&out, 8).unwrap().len(), 1);
    }
}
