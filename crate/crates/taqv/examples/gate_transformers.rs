//! Gates act directly on state-set automata, not on individual vectors.
//! This example applies one gate to an automaton accepting all four basis
//! states of a 2-qubit register and shows how the whole set moves at once,
//! in both transformer modes.
//!
//! Run with `cargo run --example gate_transformers`.

use taqv::oracle::enumerate_states;
use taqv::{apply_gate, equivalent, ApplyMode, Gate, TreeAutomaton};

fn show(label: &str, a: &TreeAutomaton) {
    println!("{label}: {} states, {} transitions", a.num_states(), a.num_transitions());
    for t in enumerate_states(a, 64).unwrap() {
        println!("    {}", t.dirac());
    }
}

fn main() {
    // All four basis states in one automaton: 2n+1 states, 3n+1 transitions,
    // independent of how many trees (2^n) the language contains.
    let all = TreeAutomaton::all_basis_states(2);
    show("input set {|00>,|01>,|10>,|11>}", &all);

    for g in [Gate::X { t: 1 }, Gate::H { t: 1 }, Gate::Cnot { c: 1, t: 2 }] {
        let hybrid = apply_gate(&all, &g, ApplyMode::Hybrid).unwrap();
        let composed = apply_gate(&all, &g, ApplyMode::Composition).unwrap();
        // The two modes build different intermediate automata but always
        // denote the same language.
        assert!(equivalent(&hybrid, &composed));
        show(&format!("after {g:?}"), &hybrid);
    }

    // A permutation gate on a basis-state set permutes the set; H instead
    // maps each basis state to a superposition, so the language changes
    // from 4 classical states to 4 superposition states, still one tree
    // per input.
}
