//! Set-based verification of quantum circuits with tree automata.
//!
//! A set of `n`-qubit states is encoded as a finite tree automaton over full
//! binary trees of height `n` whose leaves carry exact algebraic amplitudes.
//! Gates act as automaton transformers, so a Hoare-style triple
//! `{pre} circuit {post}` is decided by running the circuit on the `pre`
//! automaton and comparing languages with `post`; a failed check comes with
//! a concrete witness state. The same machinery drives randomized bug
//! hunting between two circuits that should agree.
//!
//! Start with the runnable examples (`cargo run --example bell_pair`, see the
//! `examples/` directory) or the `taqv` binary for the file-based workflow.

pub mod amplitude;
pub mod automaton;
pub mod circuit;
pub mod driver;
pub mod frontend;
pub mod gates;
pub mod oracle;
pub mod tree;

pub use amplitude::AlgebraicAmplitude;
pub use automaton::inclusion::{diff_witness, equivalent, included, DiffSide};
pub use automaton::TreeAutomaton;
pub use circuit::{Gate, QuantumCircuit};
pub use driver::{run_circuit, verify, CheckKind, VerifyReport};
pub use gates::{apply_gate, ApplyMode};
pub use tree::{StateTree, StateVector, Tag};
