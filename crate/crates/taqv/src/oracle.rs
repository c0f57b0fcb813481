//! Independent reference semantics: dense state-vector simulation and
//! brute-force language enumeration.
//!
//! Everything here is deliberately naive. The dense path applies the literal
//! unitary matrix of each gate to a `2^n` vector, and enumeration materializes
//! automaton languages tree by tree. The automaton transformers elsewhere in
//! the crate are checked against these semantics, never the other way around.

use crate::amplitude::AlgebraicAmplitude;
use crate::automaton::{StateId, TreeAutomaton};
use crate::circuit::{Gate, QuantumCircuit};
use crate::tree::{StateTree, StateVector};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("language exceeds enumeration limit of {0} trees")]
    LanguageTooLarge(usize),
    #[error("gate uses qubit outside the register: {0}")]
    BadGate(String),
}

/// A gate's unitary as exact amplitudes, row-major over the gate's own
/// qubits in [`Gate::qubits`] order (first listed qubit = most significant
/// bit of the row index).
pub struct GateMatrix {
    arity: u32,
    entries: Vec<AlgebraicAmplitude>,
}

impl GateMatrix {
    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn entry(&self, row: usize, col: usize) -> &AlgebraicAmplitude {
        &self.entries[row * self.dim() + col]
    }
}

/// The exact unitary of a gate kind (qubit numbers are irrelevant here; only
/// the kind and arity matter).
pub fn gate_matrix(g: &Gate) -> GateMatrix {
    let z = AlgebraicAmplitude::zero;
    let o = AlgebraicAmplitude::one;
    let w = AlgebraicAmplitude::omega_pow;
    // 1/sqrt(2) times a power of w.
    let hw = |p: i64| AlgebraicAmplitude::omega_pow(p).div_sqrt2();
    let h = || AlgebraicAmplitude::inv_sqrt2_pow(1);
    let entries: Vec<AlgebraicAmplitude> = match g {
        Gate::X { .. } => vec![z(), o(), o(), z()],
        // Y = i*X*Z with i = w^2.
        Gate::Y { .. } => vec![z(), w(2).negate(), w(2), z()],
        Gate::Z { .. } => vec![o(), z(), z(), o().negate()],
        Gate::H { .. } => vec![h(), h(), h(), h().negate()],
        Gate::S { .. } => vec![o(), z(), z(), w(2)],
        Gate::T { .. } => vec![o(), z(), z(), w(1)],
        Gate::RxPi2 { .. } => vec![h(), hw(2).negate(), hw(2).negate(), h()],
        Gate::RyPi2 { .. } => vec![h(), h().negate(), h(), h()],
        Gate::Cnot { .. } => permutation_matrix(2, &[0, 1, 3, 2]),
        Gate::Cz { .. } => {
            let mut e = identity_entries(2);
            e[15] = o().negate();
            e
        }
        Gate::Toffoli { .. } => permutation_matrix(3, &[0, 1, 2, 3, 4, 5, 7, 6]),
        // |1ab> -> |1ba>.
        Gate::Fredkin { .. } => permutation_matrix(3, &[0, 1, 2, 3, 4, 6, 5, 7]),
    };
    GateMatrix { arity: g.arity(), entries }
}

fn identity_entries(arity: u32) -> Vec<AlgebraicAmplitude> {
    let dim = 1usize << arity;
    let mut e = vec![AlgebraicAmplitude::zero(); dim * dim];
    for i in 0..dim {
        e[i * dim + i] = AlgebraicAmplitude::one();
    }
    e
}

/// Matrix sending basis column `i` to basis row `image[i]`.
fn permutation_matrix(arity: u32, image: &[usize]) -> Vec<AlgebraicAmplitude> {
    let dim = 1usize << arity;
    debug_assert_eq!(image.len(), dim);
    let mut e = vec![AlgebraicAmplitude::zero(); dim * dim];
    for (col, &row) in image.iter().enumerate() {
        e[row * dim + col] = AlgebraicAmplitude::one();
    }
    e
}

/// Multiplies an amplitude by a matrix entry. Entries of supported gates are
/// zero or `±w^p` times a power of `1/sqrt(2)`, so this never needs a general
/// ring product.
fn scale_by_entry(x: &AlgebraicAmplitude, entry: &AlgebraicAmplitude) -> AlgebraicAmplitude {
    if entry.is_zero() || x.is_zero() {
        return AlgebraicAmplitude::zero();
    }
    let (a, b, c, d, k) = entry.parts();
    let coords = [a, b, c, d];
    let pos = coords.iter().position(|v| !v.is_zero()).expect("nonzero entry");
    let coeff = coords[pos];
    debug_assert!(
        coords.iter().enumerate().all(|(i, v)| i == pos || v.is_zero())
            && (coeff.magnitude() == &1u32.into()),
        "matrix entry {entry} is not a monomial"
    );
    let mut out = x.mul_omega_pow(pos as i64);
    if coeff < &0.into() {
        out = out.negate();
    }
    let steps = i64::try_from(k.clone()).expect("entry exponent fits i64");
    for _ in 0..steps.max(0) {
        out = out.div_sqrt2();
    }
    for _ in 0..(-steps).max(0) {
        out = out.mul_sqrt2();
    }
    out
}

/// Applies one gate to a dense vector by direct index arithmetic: for each
/// basis index, the gate's qubits select a matrix row, and the output
/// amplitude sums matrix entries against the column variants of that index.
pub fn apply_gate_matrix(v: &StateVector, g: &Gate) -> Result<StateVector, OracleError> {
    let n = v.n();
    g.validate(n).map_err(|e| OracleError::BadGate(e.to_string()))?;
    let qs = g.qubits();
    let m = gate_matrix(g);
    let dim = m.dim();
    let mut out = Vec::with_capacity(1 << n);
    for idx in 0..1usize << n {
        let mut row = 0usize;
        for &q in &qs {
            row = row << 1 | usize::from(StateVector::bit_of(idx, q, n));
        }
        let mut acc = AlgebraicAmplitude::zero();
        for col in 0..dim {
            let e = m.entry(row, col);
            if e.is_zero() {
                continue;
            }
            let mut src = idx;
            for (pos, &q) in qs.iter().enumerate() {
                let bit = col >> (qs.len() - 1 - pos) & 1 == 1;
                src = StateVector::with_bit(src, q, n, bit);
            }
            acc = acc.add(&scale_by_entry(v.amp(src), e));
        }
        out.push(acc);
    }
    Ok(StateVector::new(n, out).expect("length preserved"))
}

/// Runs a whole circuit through the dense reference semantics.
pub fn apply_circuit_matrix(v: &StateVector, c: &QuantumCircuit) -> Result<StateVector, OracleError> {
    let mut cur = v.clone();
    for g in c.gates() {
        cur = apply_gate_matrix(&cur, g)?;
    }
    Ok(cur)
}

/// Materializes the automaton's language as a set of trees, failing once more
/// than `limit` trees appear at any point. Tags are preserved in the output.
pub fn enumerate_language(
    a: &TreeAutomaton,
    limit: usize,
) -> Result<BTreeSet<StateTree>, OracleError> {
    let n = a.n();
    let mut sets: BTreeMap<StateId, BTreeSet<StateTree>> = BTreeMap::new();
    for (q, amp) in a.leaf_transitions() {
        sets.entry(*q).or_default().insert(StateTree::Leaf(amp.clone()));
    }
    for qubit in (1..=n).rev() {
        // Children of x_qubit transitions already have complete sets: they are
        // leaf states or parents of x_{qubit+1} transitions.
        let mut grown: BTreeMap<StateId, BTreeSet<StateTree>> = BTreeMap::new();
        for t in a.internal_transitions().filter(|t| t.symbol.qubit == qubit) {
            let (Some(ls), Some(rs)) = (sets.get(&t.left), sets.get(&t.right)) else {
                continue;
            };
            let entry = grown.entry(t.parent).or_default();
            for l in ls {
                for r in rs {
                    entry.insert(StateTree::Node {
                        qubit,
                        tag: t.symbol.tag,
                        left: Box::new(l.clone()),
                        right: Box::new(r.clone()),
                    });
                    if entry.len() > limit {
                        return Err(OracleError::LanguageTooLarge(limit));
                    }
                }
            }
        }
        sets.extend(grown);
    }
    let mut lang = BTreeSet::new();
    for r in a.roots() {
        if let Some(s) = sets.get(r) {
            lang.extend(s.iter().cloned());
            if lang.len() > limit {
                return Err(OracleError::LanguageTooLarge(limit));
            }
        }
    }
    Ok(lang)
}

/// Enumerates the language with tags stripped, for value-level comparisons.
pub fn enumerate_states(
    a: &TreeAutomaton,
    limit: usize,
) -> Result<BTreeSet<StateTree>, OracleError> {
    Ok(enumerate_language(a, limit)?.iter().map(StateTree::strip_tags).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const EPS: f64 = 1e-9;

    fn close(x: Complex64, y: Complex64) -> bool {
        (x - y).norm() < EPS
    }

    fn vec_close(v: &StateVector, floats: &[Complex64]) {
        assert_eq!(v.amps().len(), floats.len());
        for (a, f) in v.amps().iter().zip(floats) {
            assert!(close(a.to_complex().unwrap(), *f), "{a} vs {f}");
        }
    }

    #[test]
    fn single_qubit_matrices_are_unitary() {
        for g in [
            Gate::X { t: 1 },
            Gate::Y { t: 1 },
            Gate::Z { t: 1 },
            Gate::H { t: 1 },
            Gate::S { t: 1 },
            Gate::T { t: 1 },
            Gate::RxPi2 { t: 1 },
            Gate::RyPi2 { t: 1 },
        ] {
            let m = gate_matrix(&g);
            let dim = m.dim();
            for i in 0..dim {
                for j in 0..dim {
                    // Row i of M times conjugate row j: delta(i, j).
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..dim {
                        let a = m.entry(i, k).to_complex().unwrap();
                        let b = m.entry(j, k).to_complex().unwrap();
                        acc += a * b.conj();
                    }
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!(close(acc, Complex64::new(expect, 0.0)), "{g:?} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn x_on_first_qubit_swaps_halves() {
        // X on qubit 1 over two qubits maps (c00,c01,c10,c11) to
        // (c10,c11,c00,c01).
        let v = StateVector::new(
            2,
            vec![
                AlgebraicAmplitude::new(1, 0, 0, 0, 0),
                AlgebraicAmplitude::new(2, 0, 0, 0, 0),
                AlgebraicAmplitude::new(3, 0, 0, 0, 0),
                AlgebraicAmplitude::new(4, 0, 0, 0, 0),
            ],
        )
        .unwrap();
        let out = apply_gate_matrix(&v, &Gate::X { t: 1 }).unwrap();
        let expect: Vec<i64> = vec![3, 4, 1, 2];
        for (a, e) in out.amps().iter().zip(expect) {
            assert_eq!(a, &AlgebraicAmplitude::new(e, 0, 0, 0, 0));
        }
    }

    #[test]
    fn hadamard_makes_bell_pair() {
        let v = StateVector::basis_state(&[false, false]);
        let v = apply_gate_matrix(&v, &Gate::H { t: 1 }).unwrap();
        let v = apply_gate_matrix(&v, &Gate::Cnot { c: 1, t: 2 }).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        vec_close(
            &v,
            &[
                Complex64::new(s, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(s, 0.0),
            ],
        );
        // Exact form: both ends carry (1/sqrt 2)^1.
        assert_eq!(v.amp(0), &AlgebraicAmplitude::inv_sqrt2_pow(1));
        assert_eq!(v.amp(3), &AlgebraicAmplitude::inv_sqrt2_pow(1));
    }

    #[test]
    fn y_gate_phases() {
        // Y|0> = w^2|1>, Y|1> = -w^2|0>.
        let v0 = StateVector::basis_state(&[false]);
        let out = apply_gate_matrix(&v0, &Gate::Y { t: 1 }).unwrap();
        assert!(out.amp(0).is_zero());
        assert_eq!(out.amp(1), &AlgebraicAmplitude::omega_pow(2));
        let v1 = StateVector::basis_state(&[true]);
        let out = apply_gate_matrix(&v1, &Gate::Y { t: 1 }).unwrap();
        assert_eq!(out.amp(0), &AlgebraicAmplitude::omega_pow(2).negate());
        assert!(out.amp(1).is_zero());
    }

    #[test]
    fn controlled_gates_on_separated_wires() {
        // CNOT control 3, target 1 over 3 qubits: |001> -> |101>.
        let v = StateVector::basis_state(&[false, false, true]);
        let out = apply_gate_matrix(&v, &Gate::Cnot { c: 3, t: 1 }).unwrap();
        assert_eq!(out, StateVector::basis_state(&[true, false, true]));
        // Control clear: no action.
        let v = StateVector::basis_state(&[false, true, false]);
        let out = apply_gate_matrix(&v, &Gate::Cnot { c: 3, t: 1 }).unwrap();
        assert_eq!(out, StateVector::basis_state(&[false, true, false]));
    }

    #[test]
    fn toffoli_and_fredkin_permute_basis() {
        let v = StateVector::basis_state(&[true, true, false]);
        let out = apply_gate_matrix(&v, &Gate::toffoli(1, 2, 3)).unwrap();
        assert_eq!(out, StateVector::basis_state(&[true, true, true]));
        // Fredkin: |1 0 1> with control 1 swaps qubits 2 and 3.
        let v = StateVector::basis_state(&[true, false, true]);
        let out = apply_gate_matrix(&v, &Gate::Fredkin { c: 1, a: 2, b: 3 }).unwrap();
        assert_eq!(out, StateVector::basis_state(&[true, true, false]));
        // Control clear: identity.
        let v = StateVector::basis_state(&[false, false, true]);
        let out = apply_gate_matrix(&v, &Gate::Fredkin { c: 1, a: 2, b: 3 }).unwrap();
        assert_eq!(out, StateVector::basis_state(&[false, false, true]));
    }

    #[test]
    fn rotation_gates_match_float_matrices() {
        // rx(pi/2) = [[cos, -i sin], [-i sin, cos]] at angle pi/4 each.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = StateVector::basis_state(&[false]);
        let out = apply_gate_matrix(&v, &Gate::RxPi2 { t: 1 }).unwrap();
        vec_close(&out, &[Complex64::new(s, 0.0), Complex64::new(0.0, -s)]);
        let out = apply_gate_matrix(&v, &Gate::RyPi2 { t: 1 }).unwrap();
        vec_close(&out, &[Complex64::new(s, 0.0), Complex64::new(s, 0.0)]);
    }

    #[test]
    fn enumerate_all_basis_states() {
        let a = TreeAutomaton::all_basis_states(3);
        let lang = enumerate_language(&a, 16).unwrap();
        assert_eq!(lang.len(), 8);
        for i in 0..8u32 {
            let bits: Vec<bool> = (0..3).map(|b| i >> (2 - b) & 1 == 1).collect();
            assert!(lang.contains(&StateVector::basis_state(&bits).to_tree()));
        }
    }

    #[test]
    fn enumerate_respects_limit() {
        let a = TreeAutomaton::all_basis_states(5);
        assert_eq!(
            enumerate_language(&a, 7),
            Err(OracleError::LanguageTooLarge(7))
        );
    }
}
