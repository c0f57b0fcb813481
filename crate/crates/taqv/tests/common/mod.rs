//! Helpers shared by the integration suites.

use std::collections::BTreeSet;

use taqv::oracle::apply_circuit_matrix;
use taqv::{AlgebraicAmplitude, QuantumCircuit, StateTree, TreeAutomaton};

/// The automaton accepting exactly (|00> + |11>)/sqrt(2).
pub fn bell_automaton() -> TreeAutomaton {
    let mut post = TreeAutomaton::new(2);
    let root = post.fresh_state();
    let eq = post.fresh_state();
    let ne = post.fresh_state();
    let half = post.fresh_state();
    let zero = post.fresh_state();
    post.add_root(root);
    post.add_internal(root, 1, eq, ne);
    post.add_internal(eq, 2, half, zero);
    post.add_internal(ne, 2, zero, half);
    post.add_leaf(half, AlgebraicAmplitude::inv_sqrt2_pow(1));
    post.add_leaf(zero, AlgebraicAmplitude::zero());
    post.validate().unwrap();
    post
}

/// Embeds a concrete tree into `out` as a fresh accepting run and returns
/// its root state. The automaton's language grows by exactly that tree.
pub fn embed_tree(out: &mut TreeAutomaton, t: &StateTree) -> taqv::automaton::StateId {
    match t {
        StateTree::Leaf(amp) => {
            let s = out.fresh_state();
            out.add_leaf(s, amp.clone());
            s
        }
        StateTree::Node { qubit, left, right, .. } => {
            let l = embed_tree(out, left);
            let r = embed_tree(out, right);
            let s = out.fresh_state();
            out.add_internal(s, *qubit, l, r);
            s
        }
    }
}

/// Structure-identical copy built through the public construction API.
pub fn rebuild(a: &TreeAutomaton) -> TreeAutomaton {
    rebuild_with_leaf_change(a, usize::MAX)
}

/// Copy of `a` with the `which`-th leaf transition's amplitude shifted by 1,
/// producing a near-miss automaton differing in a single leaf.
pub fn perturb_leaf(a: &TreeAutomaton, which: usize) -> TreeAutomaton {
    let count = a.leaf_transitions().count();
    assert!(count > 0);
    rebuild_with_leaf_change(a, which % count)
}

fn rebuild_with_leaf_change(a: &TreeAutomaton, which: usize) -> TreeAutomaton {
    let mut out = TreeAutomaton::new(a.n());
    let map: std::collections::BTreeMap<_, _> =
        a.states().into_iter().map(|s| (s, out.fresh_state())).collect();
    for r in a.roots() {
        out.add_root(map[r]);
    }
    for t in a.internal_transitions() {
        out.add_internal_tagged(map[&t.parent], t.symbol, map[&t.left], map[&t.right]);
    }
    for (i, (q, amp)) in a.leaf_transitions().enumerate() {
        let amp = if i == which { amp.add(&AlgebraicAmplitude::one()) } else { amp.clone() };
        out.add_leaf(map[q], amp);
    }
    out.validate().unwrap();
    out
}

/// The exact image of a tree set under a circuit, via matrix simulation.
pub fn matrix_image(
    trees: &BTreeSet<StateTree>,
    c: &QuantumCircuit,
) -> Result<BTreeSet<StateTree>, String> {
    trees
        .iter()
        .map(|t| {
            let v = t.to_vector().map_err(|e| e.to_string())?;
            Ok(apply_circuit_matrix(&v, c).map_err(|e| e.to_string())?.to_tree())
        })
        .collect()
}
