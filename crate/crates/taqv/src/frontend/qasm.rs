//! Reader and writer for the supported circuit-file dialect.
//!
//! The accepted language is a small OPENQASM 2.0 subset: an optional version
//! line, `include` lines (accepted and ignored), exactly one `qreg`
//! declaration, then gate statements over `x y z h s t rx(pi/2) ry(pi/2) cx
//! cz ccx cswap`. Rotations only support the angle `pi/2`; measurement and
//! classical registers are rejected up front since the engine verifies
//! unitary circuits over pure states.

use super::ParseError;
use crate::circuit::{Gate, QuantumCircuit};

const SUPPORTED: &str = "x, y, z, h, s, t, rx(pi/2), ry(pi/2), cx, cz, ccx, cswap";

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if ch == '/' {
            // Comment or the '/' of an angle expression.
            let start_col = col;
            chars.next();
            col += 1;
            if chars.peek() == Some(&'/') {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            } else {
                out.push(Token { tok: Tok::Punct('/'), line, col: start_col });
            }
            continue;
        }
        let start_col = col;
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line, col: start_col });
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() || c == '.' {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Number(s), line, col: start_col });
            continue;
        }
        if ch == '"' {
            chars.next();
            col += 1;
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => {
                        col += 1;
                        break;
                    }
                    Some('\n') | None => {
                        return Err(ParseError::new(line, start_col, "unterminated string"));
                    }
                    Some(c) => {
                        s.push(c);
                        col += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), line, col: start_col });
            continue;
        }
        if "()[],;".contains(ch) {
            chars.next();
            col += 1;
            out.push(Token { tok: Tok::Punct(ch), line, col: start_col });
            continue;
        }
        if ch == '-' {
            chars.next();
            col += 1;
            if chars.peek() == Some(&'>') {
                chars.next();
                col += 1;
                out.push(Token { tok: Tok::Punct('>'), line, col: start_col });
                continue;
            }
            return Err(ParseError::new(line, start_col, "unexpected character `-`"));
        }
        return Err(ParseError::new(line, col, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.col))
            .unwrap_or_else(|| {
                self.toks
                    .last()
                    .map(|t| (t.line, t.col + 1))
                    .unwrap_or((1, 1))
            })
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, msg)
    }

    fn expect_punct(&mut self, ch: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Token { tok: Tok::Punct(c), .. }) if *c == ch => {
                self.next();
                Ok(())
            }
            Some(t) => Err(ParseError::new(t.line, t.col, format!("expected `{ch}`"))),
            None => Err(self.err(format!("expected `{ch}`, found end of input"))),
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Number(s), line, col }) => {
                self.next();
                s.parse::<u64>()
                    .map_err(|_| ParseError::new(line, col, format!("expected an integer, found `{s}`")))
            }
            Some(t) => Err(ParseError::new(t.line, t.col, "expected an integer")),
            None => Err(self.err("expected an integer, found end of input")),
        }
    }
}

/// Parses circuit source. On success the circuit is fully validated: known
/// gates, declared register, in-range and distinct qubits.
pub fn parse_circuit(src: &str) -> Result<QuantumCircuit, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };

    if let Some(Token { tok: Tok::Ident(s), .. }) = p.peek() {
        if s == "OPENQASM" {
            p.next();
            match p.next() {
                Some(Token { tok: Tok::Number(v), line, col }) => {
                    if v != "2.0" {
                        return Err(ParseError::new(line, col, format!("unsupported version `{v}`, expected 2.0")));
                    }
                }
                _ => return Err(p.err("expected a version number after OPENQASM")),
            }
            p.expect_punct(';')?;
        }
    }

    let mut reg: Option<(String, u32)> = None;
    let mut circuit: Option<QuantumCircuit> = None;

    while let Some(tok) = p.peek().cloned() {
        let Token { tok: Tok::Ident(word), line, col } = tok else {
            return Err(ParseError::new(tok.line, tok.col, "expected a statement"));
        };
        p.next();
        match word.as_str() {
            "include" => {
                match p.next() {
                    Some(Token { tok: Tok::Str(_), .. }) => {}
                    _ => return Err(p.err("expected a quoted filename after include")),
                }
                p.expect_punct(';')?;
            }
            "qreg" => {
                if reg.is_some() {
                    return Err(ParseError::new(line, col, "only a single qreg declaration is supported"));
                }
                let name = match p.next() {
                    Some(Token { tok: Tok::Ident(n), .. }) => n,
                    _ => return Err(p.err("expected a register name after qreg")),
                };
                p.expect_punct('[')?;
                let n = p.expect_int()?;
                p.expect_punct(']')?;
                p.expect_punct(';')?;
                if n == 0 || n > u32::MAX as u64 {
                    return Err(ParseError::new(line, col, format!("register size {n} out of range")));
                }
                reg = Some((name, n as u32));
                circuit = Some(QuantumCircuit::new(n as u32));
            }
            "creg" => {
                return Err(ParseError::new(
                    line,
                    col,
                    "classical registers are not supported: the engine works with pure states and unitary gates only",
                ));
            }
            "measure" => {
                return Err(ParseError::new(
                    line,
                    col,
                    "measurement is not supported: the engine verifies unitary circuits, not readout",
                ));
            }
            "barrier" => {
                return Err(ParseError::new(line, col, "barrier is not supported"));
            }
            name => {
                let Some((reg_name, n)) = reg.clone() else {
                    return Err(ParseError::new(line, col, "declare a qreg before gate statements"));
                };
                let gate = parse_gate(&mut p, name, &reg_name, n, line, col)?;
                p.expect_punct(';')?;
                circuit
                    .as_mut()
                    .expect("register implies circuit")
                    .push(gate)
                    .map_err(|e| ParseError::new(line, col, e.to_string()))?;
            }
        }
    }

    circuit.ok_or_else(|| p.err("missing qreg declaration"))
}

fn parse_gate(
    p: &mut Parser,
    name: &str,
    reg: &str,
    n: u32,
    line: usize,
    col: usize,
) -> Result<Gate, ParseError> {
    let arity: usize = match name {
        "x" | "y" | "z" | "h" | "s" | "t" => 1,
        "rx" | "ry" => {
            parse_half_pi(p, name)?;
            1
        }
        "cx" | "cz" => 2,
        "ccx" | "cswap" => 3,
        other => {
            return Err(ParseError::new(
                line,
                col,
                format!("unknown gate `{other}`; supported gates: {SUPPORTED}"),
            ));
        }
    };
    let mut qs = Vec::with_capacity(arity);
    for i in 0..arity {
        if i > 0 {
            p.expect_punct(',')?;
        }
        qs.push(parse_qubit(p, reg, n)?);
    }
    Ok(match (name, qs.as_slice()) {
        ("x", [t]) => Gate::X { t: *t },
        ("y", [t]) => Gate::Y { t: *t },
        ("z", [t]) => Gate::Z { t: *t },
        ("h", [t]) => Gate::H { t: *t },
        ("s", [t]) => Gate::S { t: *t },
        ("t", [t]) => Gate::T { t: *t },
        ("rx", [t]) => Gate::RxPi2 { t: *t },
        ("ry", [t]) => Gate::RyPi2 { t: *t },
        ("cx", [c, t]) => Gate::Cnot { c: *c, t: *t },
        ("cz", [c, t]) => Gate::Cz { c: *c, t: *t },
        ("ccx", [c1, c2, t]) => Gate::toffoli(*c1, *c2, *t),
        ("cswap", [c, a, b]) => Gate::Fredkin { c: *c, a: *a, b: *b },
        _ => unreachable!("arity checked"),
    })
}

/// Accepts exactly `(pi/2)`; anything else is an unsupported angle.
fn parse_half_pi(p: &mut Parser, gate: &str) -> Result<(), ParseError> {
    let bad = |p: &Parser| {
        p.err(format!(
            "unsupported angle for `{gate}`: only the quarter-turn rotation {gate}(pi/2) stays within exact amplitudes"
        ))
    };
    p.expect_punct('(')
        .map_err(|_| p.err(format!("`{gate}` requires an angle argument, e.g. {gate}(pi/2)")))?;
    match p.peek() {
        Some(Token { tok: Tok::Ident(s), .. }) if s == "pi" => {
            p.next();
        }
        _ => return Err(bad(p)),
    }
    match p.peek() {
        Some(Token { tok: Tok::Punct('/'), .. }) => {
            p.next();
        }
        _ => return Err(bad(p)),
    }
    match p.peek() {
        Some(Token { tok: Tok::Number(s), .. }) if s == "2" => {
            p.next();
        }
        _ => return Err(bad(p)),
    }
    match p.peek() {
        Some(Token { tok: Tok::Punct(')'), .. }) => {
            p.next();
            Ok(())
        }
        _ => Err(bad(p)),
    }
}

fn parse_qubit(p: &mut Parser, reg: &str, n: u32) -> Result<u32, ParseError> {
    let (name, line, col) = match p.next() {
        Some(Token { tok: Tok::Ident(s), line, col }) => (s, line, col),
        Some(t) => return Err(ParseError::new(t.line, t.col, "expected a qubit argument like q[0]")),
        None => return Err(p.err("expected a qubit argument, found end of input")),
    };
    if name != reg {
        return Err(ParseError::new(line, col, format!("unknown register `{name}`, declared register is `{reg}`")));
    }
    p.expect_punct('[')?;
    let idx = p.expect_int()?;
    p.expect_punct(']')?;
    if idx >= n as u64 {
        return Err(ParseError::new(line, col, format!("qubit index {idx} out of range for {reg}[{n}]")));
    }
    Ok(idx as u32 + 1)
}

/// Writes a circuit back out in the accepted dialect. `parse_circuit` of the
/// output reproduces the circuit.
pub fn serialize_circuit(c: &QuantumCircuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str(&format!("qreg q[{}];\n", c.n()));
    for g in c.gates() {
        out.push_str(&format!("{g};\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_example() {
        let src = r#"
            OPENQASM 2.0;
            include "qelib1.inc";
            qreg q[3];
            h q[0];
            cx q[0], q[1];
            rx(pi/2) q[2];
            ccx q[2], q[0], q[1];
            cswap q[0], q[1], q[2];
        "#;
        let c = parse_circuit(src).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(
            c.gates(),
            &[
                Gate::H { t: 1 },
                Gate::Cnot { c: 1, t: 2 },
                Gate::RxPi2 { t: 3 },
                Gate::toffoli(3, 1, 2),
                Gate::Fredkin { c: 1, a: 2, b: 3 },
            ]
        );
    }

    #[test]
    fn version_line_optional() {
        let c = parse_circuit("qreg r[1]; x r[0];").unwrap();
        assert_eq!(c.gates(), &[Gate::X { t: 1 }]);
    }

    #[test]
    fn comments_ignored() {
        let src = "// header\nqreg q[2]; // register\nx q[1]; // flip\n";
        let c = parse_circuit(src).unwrap();
        assert_eq!(c.gates(), &[Gate::X { t: 2 }]);
    }

    #[test]
    fn unknown_gate_lists_supported() {
        let e = parse_circuit("qreg q[2]; rz(pi/2) q[0];").unwrap_err();
        assert!(e.message.contains("unknown gate `rz`"));
        assert!(e.message.contains("cswap"));
        assert_eq!(e.line, 1);
    }

    #[test]
    fn unsupported_angle_rejected() {
        let e = parse_circuit("qreg q[2];\nrx(pi/3) q[0];").unwrap_err();
        assert!(e.message.contains("unsupported angle"), "{e}");
        assert_eq!(e.line, 2);
        let e = parse_circuit("qreg q[2]; ry q[0];").unwrap_err();
        assert!(e.message.contains("requires an angle"), "{e}");
    }

    #[test]
    fn measure_and_creg_rejected() {
        let e = parse_circuit("qreg q[1]; creg c[1];").unwrap_err();
        assert!(e.message.contains("classical registers"), "{e}");
        let e = parse_circuit("qreg q[1]; measure q[0] -> c[0];").unwrap_err();
        assert!(e.message.contains("measurement"), "{e}");
    }

    #[test]
    fn bad_indices_and_registers() {
        let e = parse_circuit("qreg q[2]; x q[2];").unwrap_err();
        assert!(e.message.contains("out of range"), "{e}");
        let e = parse_circuit("qreg q[2]; x p[0];").unwrap_err();
        assert!(e.message.contains("unknown register"), "{e}");
        let e = parse_circuit("qreg q[2]; cx q[0], q[0];").unwrap_err();
        assert!(e.message.contains("repeats"), "{e}");
        let e = parse_circuit("x q[0];").unwrap_err();
        assert!(e.message.contains("declare a qreg"), "{e}");
    }

    #[test]
    fn round_trip() {
        let src = "OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncx q[0],q[1];\nccx q[0],q[1],q[2];\n";
        let c = parse_circuit(src).unwrap();
        assert_eq!(serialize_circuit(&c), src);
        let again = parse_circuit(&serialize_circuit(&c)).unwrap();
        assert_eq!(again, c);
    }
}
