//! Benchmark families and random inputs.
//!
//! Each generator returns both the circuit and the matching pre/post
//! conditions, computed analytically from the construction parameters so
//! the engine's answer is checked against an independent prediction:
//!
//! * `generate_bv` — hidden-string circuits whose output is a single known
//!   basis state.
//! * `generate_mctoffoli` — a multi-controlled Toffoli built from a ladder
//!   of plain Toffolis over interleaved work wires; the set of well-formed
//!   basis states is closed under it.
//! * `generate_grover_single` / `generate_grover_all` — fixed-point-free
//!   search circuits checked by amplitude dominance rather than exact
//!   equality; `generate_grover_all` verifies every possible search target
//!   in one run by keeping the target register symbolic in the
//!   precondition.
//! * `generate_random_circuit` / `inject_bug` / `random_automaton` —
//!   seeded random inputs for differential testing.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amplitude::AlgebraicAmplitude;
use crate::automaton::TreeAutomaton;
use crate::circuit::{Gate, QuantumCircuit};
use crate::oracle::{enumerate_states, OracleError};
use crate::tree::{StateTree, StateVector};

/// A ready-to-verify triple.
#[derive(Debug, Clone)]
pub struct GeneratedJob {
    pub pre: TreeAutomaton,
    pub circuit: QuantumCircuit,
    pub post: TreeAutomaton,
}

/// Hidden-string circuit over `hidden.len() + 1` qubits: the data register
/// ends in the hidden string and the helper qubit in `1`, so the
/// postcondition is that exact basis state.
pub fn generate_bv(hidden: &[bool]) -> GeneratedJob {
    let m = hidden.len() as u32;
    assert!(m >= 1, "need a nonempty hidden string");
    let n = m + 1;
    let mut g = Vec::new();
    for q in 1..=n {
        g.push(Gate::H { t: q });
    }
    // The helper starts at |+> after the column of H gates; Z turns it into
    // the phase-kickback state |->.
    g.push(Gate::Z { t: n });
    for (i, &bit) in hidden.iter().enumerate() {
        if bit {
            g.push(Gate::Cnot { c: i as u32 + 1, t: n });
        }
    }
    for q in 1..=n {
        g.push(Gate::H { t: q });
    }
    let mut post_bits: Vec<bool> = hidden.to_vec();
    post_bits.push(true);
    GeneratedJob {
        pre: TreeAutomaton::single_basis_state(&vec![false; n as usize]),
        circuit: QuantumCircuit::from_gates(n, g).expect("generated gates are in range"),
        post: TreeAutomaton::single_basis_state(&post_bits),
    }
}

/// Automaton of all basis states whose non-`free` wires are zero: each
/// accepted tree is one basis state, and free wires take both values.
pub fn free_wires_automaton(n: u32, is_free: impl Fn(u32) -> bool) -> TreeAutomaton {
    let mut a = TreeAutomaton::new(n);
    let mut live = a.fresh_state();
    a.add_root(live);
    let mut zero: Option<crate::automaton::StateId> = None;
    for d in 0..n {
        let q = d + 1;
        let live_next = a.fresh_state();
        let zero_next = a.fresh_state();
        a.add_internal(live, q, live_next, zero_next);
        if is_free(q) {
            a.add_internal(live, q, zero_next, live_next);
        }
        if let Some(z) = zero {
            a.add_internal(z, q, zero_next, zero_next);
        }
        live = live_next;
        zero = Some(zero_next);
    }
    a.add_leaf(live, AlgebraicAmplitude::one());
    a.add_leaf(zero.expect("n >= 1"), AlgebraicAmplitude::zero());
    debug_assert!(a.validate().is_ok());
    a
}

/// A Toffoli ladder computing the conjunction of `controls` into the last
/// work wire: `controls[0] and controls[1]` into `works[0]`, then one more
/// control per step. Needs `controls.len() - 1` work wires.
fn and_ladder(controls: &[u32], works: &[u32]) -> Vec<Gate> {
    let k = controls.len();
    assert!(k >= 2 && works.len() >= k - 1, "ladder needs one work wire per extra control");
    let mut seq = vec![Gate::toffoli(controls[0], controls[1], works[0])];
    for j in 2..k {
        seq.push(Gate::toffoli(works[j - 2], controls[j], works[j - 1]));
    }
    seq
}

/// Flip `target` when all `controls` are set, uncomputing every work wire.
fn mcx(g: &mut Vec<Gate>, controls: &[u32], target: u32, works: &[u32]) {
    match controls {
        [] => g.push(Gate::X { t: target }),
        [c] => g.push(Gate::Cnot { c: *c, t: target }),
        [c1, c2] => g.push(Gate::toffoli(*c1, *c2, target)),
        _ => {
            let ladder = and_ladder(controls, works);
            let top = works[controls.len() - 2];
            g.extend(ladder.iter().copied());
            g.push(Gate::Cnot { c: top, t: target });
            g.extend(ladder.iter().rev().copied());
        }
    }
}

/// Phase-flip the all-ones assignment of `controls + target`.
fn mcz(g: &mut Vec<Gate>, controls: &[u32], target: u32, works: &[u32]) {
    match controls {
        [] => g.push(Gate::Z { t: target }),
        [c] => g.push(Gate::Cz { c: *c, t: target }),
        _ => {
            let ladder = and_ladder(controls, works);
            let top = works[controls.len() - 2];
            g.extend(ladder.iter().copied());
            g.push(Gate::Cz { c: top, t: target });
            g.extend(ladder.iter().rev().copied());
        }
    }
}

/// Multi-controlled Toffoli over `2m` qubits: `m` controls interleaved with
/// `m - 1` work wires, target last. The pre- and postcondition are the same
/// automaton: work wires zero, controls and target free. The circuit
/// permutes that set, so the triple holds as an equivalence.
pub fn generate_mctoffoli(m: u32) -> GeneratedJob {
    assert!(m >= 3, "the ladder shape needs at least three controls");
    let n = 2 * m;
    let mut controls = vec![1, 2];
    controls.extend((3..=m).map(|i| 2 * (i - 1)));
    let works: Vec<u32> = (1..m).map(|i| 2 * i + 1).collect();
    let target = n;
    let mut g = Vec::new();
    mcx(&mut g, &controls, target, &works);
    debug_assert_eq!(g.len(), 2 * (m as usize - 1) + 1);
    let free: BTreeSet<u32> = controls.iter().copied().chain([target]).collect();
    let pre = free_wires_automaton(n, |q| free.contains(&q));
    GeneratedJob {
        pre: pre.clone(),
        circuit: QuantumCircuit::from_gates(n, g).expect("generated gates are in range"),
        post: pre,
    }
}

/// What the search family promises about its output: in every accepted
/// state, one basis value dominates the probability mass.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DominanceShape {
    pub n: u32,
    /// The amplified data register.
    pub x: Vec<u32>,
    /// Wires with a known classical value in the dominant component.
    pub pinned: Vec<(u32, bool)>,
    pub expect: ExpectedX,
    /// Minimum probability gap between the dominant component and any other.
    pub margin: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub enum ExpectedX {
    /// The data register converges to this fixed value.
    Fixed(Vec<bool>),
    /// The data register converges to the value carried (classically) on
    /// these wires, which keep that value themselves.
    CopiedFrom(Vec<u32>),
}

impl DominanceShape {
    /// Checks every state accepted by `a` and returns the worst observed
    /// probability gap, or a description of the first failure.
    pub fn check(&self, a: &TreeAutomaton) -> Result<f64, String> {
        let langs = enumerate_states(a, 4096).map_err(|e: OracleError| e.to_string())?;
        if langs.is_empty() {
            return Err("result language is empty".to_string());
        }
        let mut worst = f64::INFINITY;
        for tree in &langs {
            let v = tree.to_vector().map_err(|e| e.to_string())?;
            assert_eq!(v.n(), self.n);
            let mut probs = Vec::with_capacity(v.amps().len());
            for amp in v.amps() {
                probs.push(amp.norm_sqr().map_err(|e| e.to_string())?);
            }
            let argmax = (0..probs.len())
                .max_by(|&i, &j| probs[i].total_cmp(&probs[j]))
                .expect("nonempty vector");
            if probs[argmax] <= 0.0 {
                return Err("a result component is the zero vector".to_string());
            }
            let mut idx = 0usize;
            for &(q, bit) in &self.pinned {
                idx = StateVector::with_bit(idx, q, self.n, bit);
            }
            let xval: Vec<bool> = match &self.expect {
                ExpectedX::Fixed(bits) => bits.clone(),
                ExpectedX::CopiedFrom(src) => {
                    // The source wires are classical, so any nonzero leaf
                    // (the dominant one included) carries their value.
                    let bits: Vec<bool> =
                        src.iter().map(|&q| StateVector::bit_of(argmax, q, self.n)).collect();
                    for (&q, &b) in src.iter().zip(&bits) {
                        idx = StateVector::with_bit(idx, q, self.n, b);
                    }
                    bits
                }
            };
            for (&q, &b) in self.x.iter().zip(&xval) {
                idx = StateVector::with_bit(idx, q, self.n, b);
            }
            let best_other = (0..probs.len())
                .filter(|&i| i != idx)
                .map(|i| probs[i])
                .fold(0.0f64, f64::max);
            let gap = probs[idx] - best_other;
            if gap < self.margin {
                return Err(format!(
                    "expected component {idx:0width$b} does not dominate: gap {gap:.6} < margin {:.6}",
                    self.margin,
                    width = self.n as usize,
                ));
            }
            worst = worst.min(gap);
        }
        Ok(worst)
    }
}

/// Search for one hidden value (`0101...` over the data register) over `2m`
/// qubits: `m` data wires, one phase helper, `m - 1` work wires. The output
/// concentrates on the hidden value; helper ends at `1`, works at `0`.
pub fn generate_grover_single(m: u32, iters: u32) -> (TreeAutomaton, QuantumCircuit, DominanceShape) {
    assert!(m >= 1);
    let n = 2 * m;
    let xs: Vec<u32> = (1..=m).collect();
    let t = m + 1;
    let ws: Vec<u32> = (m + 2..=n).collect();
    let secret: Vec<bool> = (1..=m).map(|i| i % 2 == 0).collect();

    let mut g = Vec::new();
    for &x in &xs {
        g.push(Gate::H { t: x });
    }
    g.push(Gate::X { t });
    g.push(Gate::H { t });
    for _ in 0..iters {
        oracle_mark(&mut g, &xs, &secret, t, &ws);
        diffusion(&mut g, &xs, &ws);
    }
    g.push(Gate::H { t });

    let pre = TreeAutomaton::single_basis_state(&vec![false; n as usize]);
    let mut pinned = vec![(t, true)];
    pinned.extend(ws.iter().map(|&w| (w, false)));
    let shape = DominanceShape {
        n,
        x: xs,
        pinned,
        expect: ExpectedX::Fixed(secret),
        margin: 1e-6,
    };
    (pre, QuantumCircuit::from_gates(n, g).expect("generated gates are in range"), shape)
}

/// Search with a symbolic target over `3m` qubits: the target register
/// `s` (free in the precondition), the data register `x`, one phase helper,
/// and `m - 1` work wires. One run checks every target at once: in each
/// accepted output state, `x` concentrates on the value held by `s`.
pub fn generate_grover_all(m: u32, iters: u32) -> (TreeAutomaton, QuantumCircuit, DominanceShape) {
    assert!(m >= 1);
    let n = 3 * m;
    let ss: Vec<u32> = (1..=m).collect();
    let xs: Vec<u32> = (m + 1..=2 * m).collect();
    let t = 2 * m + 1;
    let ws: Vec<u32> = (2 * m + 2..=n).collect();

    let mut g = Vec::new();
    for &x in &xs {
        g.push(Gate::H { t: x });
    }
    g.push(Gate::X { t });
    g.push(Gate::H { t });
    for _ in 0..iters {
        // Mark x = s: after X on s and feeding s into x, the data register
        // is all ones exactly when it matched the target.
        for &s in &ss {
            g.push(Gate::X { t: s });
        }
        for i in 0..m as usize {
            g.push(Gate::Cnot { c: ss[i], t: xs[i] });
        }
        mcx(&mut g, &xs, t, &ws);
        for i in 0..m as usize {
            g.push(Gate::Cnot { c: ss[i], t: xs[i] });
        }
        for &s in &ss {
            g.push(Gate::X { t: s });
        }
        diffusion(&mut g, &xs, &ws);
    }
    g.push(Gate::H { t });

    let pre = free_wires_automaton(n, |q| q <= m);
    let mut pinned = vec![(t, true)];
    pinned.extend(ws.iter().map(|&w| (w, false)));
    let shape = DominanceShape {
        n,
        x: xs,
        pinned,
        expect: ExpectedX::CopiedFrom(ss),
        margin: 1e-6,
    };
    (pre, QuantumCircuit::from_gates(n, g).expect("generated gates are in range"), shape)
}

/// Phase-flip the component where the data register equals the secret.
fn oracle_mark(g: &mut Vec<Gate>, xs: &[u32], secret: &[bool], t: u32, ws: &[u32]) {
    for (i, &x) in xs.iter().enumerate() {
        if !secret[i] {
            g.push(Gate::X { t: x });
        }
    }
    mcx(g, xs, t, ws);
    for (i, &x) in xs.iter().enumerate() {
        if !secret[i] {
            g.push(Gate::X { t: x });
        }
    }
}

/// Inversion about the mean on the data register (up to a global phase).
fn diffusion(g: &mut Vec<Gate>, xs: &[u32], ws: &[u32]) {
    for &x in xs {
        g.push(Gate::H { t: x });
    }
    for &x in xs {
        g.push(Gate::X { t: x });
    }
    let (&last, rest) = xs.split_last().expect("nonempty data register");
    mcz(g, rest, last, ws);
    for &x in xs {
        g.push(Gate::X { t: x });
    }
    for &x in xs {
        g.push(Gate::H { t: x });
    }
}

fn random_gate(n: u32, rng: &mut ChaCha8Rng) -> Gate {
    const ARITY: [u32; 12] = [1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 3, 3];
    let eligible: Vec<usize> = (0..ARITY.len()).filter(|&k| ARITY[k] <= n).collect();
    let kind = eligible[rng.gen_range(0..eligible.len())];
    let picked = sample(rng, n as usize, ARITY[kind] as usize);
    let q = |i: usize| picked.index(i) as u32 + 1;
    match kind {
        0 => Gate::X { t: q(0) },
        1 => Gate::Y { t: q(0) },
        2 => Gate::Z { t: q(0) },
        3 => Gate::H { t: q(0) },
        4 => Gate::S { t: q(0) },
        5 => Gate::T { t: q(0) },
        6 => Gate::RxPi2 { t: q(0) },
        7 => Gate::RyPi2 { t: q(0) },
        8 => Gate::Cnot { c: q(0), t: q(1) },
        9 => Gate::Cz { c: q(0), t: q(1) },
        10 => Gate::toffoli(q(0), q(1), q(2)),
        11 => Gate::Fredkin { c: q(0), a: q(1), b: q(2) },
        _ => unreachable!(),
    }
}

/// A seeded random circuit of `3n` gates with uniformly chosen kinds (those
/// that fit the register) and distinct random wires.
pub fn generate_random_circuit(n: u32, seed: u64) -> QuantumCircuit {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gates = (0..3 * n).map(|_| random_gate(n, &mut rng)).collect();
    QuantumCircuit::from_gates(n, gates).expect("random gates are in range")
}

/// A copy of the circuit with one extra random gate spliced in at a random
/// position: the classic off-by-one-gate bug.
pub fn inject_bug(c: &QuantumCircuit, seed: u64) -> QuantumCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pos = rng.gen_range(0..=c.len());
    let extra = random_gate(c.n(), &mut rng);
    let mut gates: Vec<Gate> = c.gates().to_vec();
    gates.insert(pos, extra);
    QuantumCircuit::from_gates(c.n(), gates).expect("original plus one valid gate")
}

fn random_amplitude(rng: &mut ChaCha8Rng) -> AlgebraicAmplitude {
    if rng.gen_bool(0.4) {
        return AlgebraicAmplitude::zero();
    }
    AlgebraicAmplitude::new(
        rng.gen_range(-2i64..=2),
        rng.gen_range(-2i64..=2),
        rng.gen_range(-2i64..=2),
        rng.gen_range(-2i64..=2),
        rng.gen_range(0i64..=2),
    )
}

/// A seeded random automaton accepting up to `max_trees` random states with
/// small algebraic amplitudes. Used as workload for differential tests.
pub fn random_automaton(n: u32, seed: u64, max_trees: usize) -> TreeAutomaton {
    assert!(max_trees >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_trees);
    let mut out = TreeAutomaton::new(n);
    for _ in 0..count {
        let amps: Vec<AlgebraicAmplitude> =
            (0..1usize << n).map(|_| random_amplitude(&mut rng)).collect();
        let tree: StateTree = StateVector::new(n, amps).expect("length matches").to_tree();
        let part = TreeAutomaton::from_tree(&tree, n).expect("trees from vectors are well formed");
        let map = out.import(&part);
        for r in part.roots() {
            out.add_root(map[r]);
        }
    }
    out.reduce();
    out
}
