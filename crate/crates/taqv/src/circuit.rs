//! Quantum circuits over the supported gate set.
//!
//! Qubits are numbered 1 through `n`; qubit 1 is the most significant
//! position of a basis bitstring. The register-style index `q[i]` used in
//! circuit files maps to qubit `i + 1`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("gate `{gate}` uses qubit {qubit} outside 1..={n}")]
    QubitOutOfRange { gate: String, qubit: u32, n: u32 },
    #[error("gate `{gate}` repeats qubit {qubit}")]
    RepeatedQubit { gate: String, qubit: u32 },
}

/// One gate application. Rotation gates are fixed at angle pi/2, the only
/// angle under which amplitudes stay in the supported algebraic ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gate {
    X { t: u32 },
    Y { t: u32 },
    Z { t: u32 },
    H { t: u32 },
    S { t: u32 },
    T { t: u32 },
    RxPi2 { t: u32 },
    RyPi2 { t: u32 },
    Cnot { c: u32, t: u32 },
    Cz { c: u32, t: u32 },
    /// Controls are kept sorted; the gate is symmetric in them.
    Toffoli { c1: u32, c2: u32, t: u32 },
    /// Swaps `a` and `b` when `c` is set.
    Fredkin { c: u32, a: u32, b: u32 },
}

impl Gate {
    /// Toffoli with controls in either order.
    pub fn toffoli(ca: u32, cb: u32, t: u32) -> Gate {
        Gate::Toffoli { c1: ca.min(cb), c2: ca.max(cb), t }
    }

    /// Qubits the gate acts on. The order is the row/column order of the
    /// gate's unitary matrix: controls first, then targets.
    pub fn qubits(&self) -> Vec<u32> {
        match *self {
            Gate::X { t }
            | Gate::Y { t }
            | Gate::Z { t }
            | Gate::H { t }
            | Gate::S { t }
            | Gate::T { t }
            | Gate::RxPi2 { t }
            | Gate::RyPi2 { t } => vec![t],
            Gate::Cnot { c, t } | Gate::Cz { c, t } => vec![c, t],
            Gate::Toffoli { c1, c2, t } => vec![c1, c2, t],
            Gate::Fredkin { c, a, b } => vec![c, a, b],
        }
    }

    pub fn arity(&self) -> u32 {
        self.qubits().len() as u32
    }

    pub fn validate(&self, n: u32) -> Result<(), CircuitError> {
        let qs = self.qubits();
        for &q in &qs {
            if q < 1 || q > n {
                return Err(CircuitError::QubitOutOfRange { gate: self.to_string(), qubit: q, n });
            }
        }
        for (i, &q) in qs.iter().enumerate() {
            if qs[..i].contains(&q) {
                return Err(CircuitError::RepeatedQubit { gate: self.to_string(), qubit: q });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    /// Circuit-file syntax with 0-based register indices, e.g. `cx q[0],q[2]`.
    /// Out-of-range gates still render (as `q[-1]`) so error messages can
    /// describe them.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = |x: u32| format!("q[{}]", x as i64 - 1);
        match *self {
            Gate::X { t } => write!(f, "x {}", q(t)),
            Gate::Y { t } => write!(f, "y {}", q(t)),
            Gate::Z { t } => write!(f, "z {}", q(t)),
            Gate::H { t } => write!(f, "h {}", q(t)),
            Gate::S { t } => write!(f, "s {}", q(t)),
            Gate::T { t } => write!(f, "t {}", q(t)),
            Gate::RxPi2 { t } => write!(f, "rx(pi/2) {}", q(t)),
            Gate::RyPi2 { t } => write!(f, "ry(pi/2) {}", q(t)),
            Gate::Cnot { c, t } => write!(f, "cx {},{}", q(c), q(t)),
            Gate::Cz { c, t } => write!(f, "cz {},{}", q(c), q(t)),
            Gate::Toffoli { c1, c2, t } => write!(f, "ccx {},{},{}", q(c1), q(c2), q(t)),
            Gate::Fredkin { c, a, b } => write!(f, "cswap {},{},{}", q(c), q(a), q(b)),
        }
    }
}

/// A gate list over a fixed register width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumCircuit {
    n: u32,
    gates: Vec<Gate>,
}

impl QuantumCircuit {
    pub fn new(n: u32) -> Self {
        QuantumCircuit { n, gates: Vec::new() }
    }

    pub fn push(&mut self, g: Gate) -> Result<(), CircuitError> {
        g.validate(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn from_gates(n: u32, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = QuantumCircuit::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toffoli_controls_sorted() {
        assert_eq!(Gate::toffoli(5, 2, 7), Gate::Toffoli { c1: 2, c2: 5, t: 7 });
    }

    #[test]
    fn validate_rejects_bad_qubits() {
        let mut c = QuantumCircuit::new(3);
        assert!(c.push(Gate::Cnot { c: 1, t: 4 }).is_err());
        assert!(c.push(Gate::Cnot { c: 2, t: 2 }).is_err());
        assert!(c.push(Gate::Cnot { c: 0, t: 2 }).is_err());
        assert!(c.push(Gate::Cnot { c: 3, t: 1 }).is_ok());
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn display_uses_register_indices() {
        assert_eq!(Gate::RxPi2 { t: 4 }.to_string(), "rx(pi/2) q[3]");
        assert_eq!(Gate::toffoli(1, 2, 3).to_string(), "ccx q[0],q[1],q[2]");
    }
}
