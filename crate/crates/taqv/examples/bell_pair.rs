//! The smallest end-to-end verification: prepare a Bell pair and check the
//! result against the expected entangled state, then against a wrong
//! postcondition to see a counterexample witness.
//!
//! Run with `cargo run --example bell_pair`.

use taqv::{
    verify, AlgebraicAmplitude, ApplyMode, CheckKind, Gate, QuantumCircuit, TreeAutomaton,
};

fn main() {
    // {|00>} H(1); CNOT(1,2) {(|00> + |11>)/sqrt(2)}
    let pre = TreeAutomaton::single_basis_state(&[false, false]);
    let epr = QuantumCircuit::from_gates(2, vec![Gate::H { t: 1 }, Gate::Cnot { c: 1, t: 2 }])
        .unwrap();

    // Build the Bell-state automaton by hand: one tree whose leaves are
    // 1/sqrt(2) at |00> and |11>, zero elsewhere.
    let mut post = TreeAutomaton::new(2);
    let root = post.fresh_state();
    let eq = post.fresh_state(); // both qubits equal
    let ne = post.fresh_state(); // both qubits differ
    let half = post.fresh_state(); // leaf 1/sqrt(2)
    let zero = post.fresh_state();
    post.add_root(root);
    post.add_internal(root, 1, eq, ne);
    post.add_internal(eq, 2, half, zero);
    post.add_internal(ne, 2, zero, half);
    post.add_leaf(half, AlgebraicAmplitude::inv_sqrt2_pow(1));
    post.add_leaf(zero, AlgebraicAmplitude::zero());
    post.validate().unwrap();

    for mode in [ApplyMode::Hybrid, ApplyMode::Composition] {
        let report = verify(&pre, &epr, &post, CheckKind::Equivalence, mode).unwrap();
        println!("{mode:?}: holds = {}", report.holds);
    }

    // Against the wrong postcondition {|00>} the check fails and hands back
    // the Bell state as the concrete reachable-but-not-allowed witness.
    let wrong = TreeAutomaton::single_basis_state(&[false, false]);
    let report = verify(&pre, &epr, &wrong, CheckKind::Equivalence, ApplyMode::Hybrid).unwrap();
    assert!(!report.holds);
    let (witness, side) = report.witness.unwrap();
    println!("wrong post: violation, witness on {side:?} side: {}", witness.dirac());
}
