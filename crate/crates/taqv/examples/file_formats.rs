//! The three file formats behind the `taqv` binary: automaton text files,
//! the OpenQASM 2 circuit subset, and the versioned verdict JSON. Everything
//! round-trips, so jobs can be generated, edited, and replayed from disk.
//!
//! Run with `cargo run --example file_formats`.

use taqv::frontend::{qasm, ta_text, verdict};
use taqv::{verify, ApplyMode, CheckKind};

// |00> and |11> as a two-tree language. First qubit outermost; each
// transition `s -x1-> (a, b)` sends the qubit-1 zero branch to `a` and the
// one branch to `b`; leaves carry (a,b,c,d,k) amplitudes.
const PRE: &str = "\
qubits 2
root s
s -x1-> (both0, both1)
both0 -x2-> (one, zero)
both1 -x2-> (zero, one)
one -> (1,0,0,0,0)
zero -> (0,0,0,0,0)
";

const CIRCUIT: &str = "\
OPENQASM 2.0;
// q[0] is the first (outermost) tree qubit
qreg q[2];
x q[1];
cx q[1],q[0];
";

fn main() {
    let pre = ta_text::parse_automaton(PRE).unwrap();
    let circuit = qasm::parse_circuit(CIRCUIT).unwrap();
    println!("parsed automaton: {} states; circuit: {} gates", pre.num_states(), circuit.len());

    // X on q[1] then CNOT(q[1] -> q[0]) maps |00> -> |11> and |11> -> |01>.
    let post = ta_text::parse_automaton(
        "qubits 2\nroot s\ns -x1-> (b0, b1)\nb0 -x2-> (z, o)\nb1 -x2-> (z, o)\no -> (1,0,0,0,0)\nz -> (0,0,0,0,0)\n",
    )
    .unwrap();
    let report =
        verify(&pre, &circuit, &post, CheckKind::Equivalence, ApplyMode::Hybrid).unwrap();

    // The verdict JSON is schema-versioned and stable for scripting.
    let witness = report
        .witness
        .as_ref()
        .map(|(t, side)| verdict::witness_doc(t, verdict::side_str(*side)));
    let stats = verdict::StatsDoc {
        gate_count: circuit.len(),
        per_gate: vec![],
        peak_states: report.stats.peak_states(),
        peak_transitions: report.stats.peak_transitions(),
        wall_ms: report.stats.wall.as_millis() as u64,
        seed: None,
    };
    let outcome = if report.holds { "equal" } else { "violation" };
    print!("{}", verdict::to_json(&verdict::verdict_doc(outcome, witness, stats)));

    // Serialization round-trips: parse(serialize(a)) has the same language,
    // and serializing again is textually stable.
    let text = ta_text::serialize_automaton(&pre).unwrap();
    let reparsed = ta_text::parse_automaton(&text).unwrap();
    assert_eq!(ta_text::serialize_automaton(&reparsed).unwrap(), text);
    println!("automaton round-trip: stable ({} bytes)", text.len());
    let qtext = qasm::serialize_circuit(&circuit);
    assert_eq!(qasm::parse_circuit(&qtext).unwrap().gates(), circuit.gates());
    println!("circuit round-trip: stable ({} bytes)", qtext.len());
}
