//! Reader and writer for the automaton text format.
//!
//! A file describes one tree automaton:
//!
//! ```text
//! # basis states |00> and |01>
//! qubits 2
//! root q0
//! q0 -x1-> (q1, q4)
//! q1 -x2-> (q2, q2)
//! q4 -x2-> (q3, q3)
//! q2 -> (1,0,0,0,0)
//! q3 -> (0,0,0,0,0)
//! ```
//!
//! `qubits <n>` comes first, `root` lines list accepting states, internal
//! lines `<s> -x<k>-> (<left>, <right>)` read qubit `k`, and leaf lines
//! `<s> -> (a,b,c,d,k)` assign an amplitude. `#` starts a comment. State
//! names are free identifiers; the writer renames them `q0..` in sorted
//! order. Parsed automata are checked for shape and trimmed, so a
//! successfully loaded automaton is always safe to feed to the engine.

use std::collections::HashMap;



use super::ParseError;
use crate::amplitude::AlgebraicAmplitude;
use crate::automaton::{AutomatonError, StateId, TreeAutomaton};

/// Cursor over one source line, tracking the column for error reports.
struct LineCur<'a> {
    line_no: usize,
    chars: Vec<char>,
    pos: usize,
    raw: &'a str,
}

impl<'a> LineCur<'a> {
    fn new(line_no: usize, raw: &'a str) -> Self {
        LineCur { line_no, chars: raw.chars().collect(), pos: 0, raw }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line_no, self.col(), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{ch}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.err("expected a state name")),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err(format!("number `{s}` out of range")))
    }

    fn rest(&self) -> &'a str {
        let consumed: usize = self.chars[..self.pos].iter().map(|c| c.len_utf8()).sum();
        &self.raw[consumed..]
    }
}

#[derive(Default)]
struct NameTable {
    ids: HashMap<String, StateId>,
    names: Vec<String>,
    first_use: Vec<(usize, usize)>,
}

impl NameTable {
    fn intern(&mut self, a: &mut TreeAutomaton, name: String, line: usize, col: usize) -> StateId {
        if let Some(&id) = self.ids.get(&name) {
            return id;
        }
        let id = a.fresh_state();
        self.ids.insert(name.clone(), id);
        self.names.push(name);
        self.first_use.push((line, col));
        id
    }

    fn name(&self, q: StateId) -> &str {
        &self.names[q.index() as usize]
    }

    fn first_use(&self, q: StateId) -> (usize, usize) {
        self.first_use[q.index() as usize]
    }
}

/// Parses, shape-checks, and trims an automaton description.
pub fn parse_automaton(src: &str) -> Result<TreeAutomaton, ParseError> {
    let mut auto: Option<TreeAutomaton> = None;
    let mut names = NameTable::default();
    let mut internal: Vec<(StateId, u32, StateId, StateId, usize, usize)> = Vec::new();
    let mut leaves: Vec<(StateId, AlgebraicAmplitude, usize, usize)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw_line) in src.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let body = raw_line.split('#').next().unwrap_or("");
        let mut cur = LineCur::new(line_no, body);
        if cur.at_end() {
            continue;
        }
        let word_col = cur.col();
        let word = cur.ident()?;
        match word.as_str() {
            "qubits" => {
                if auto.is_some() {
                    return Err(ParseError::new(line_no, word_col, "duplicate qubits declaration"));
                }
                let n = cur.uint()?;
                if n == 0 || n > u32::MAX as u64 {
                    return Err(cur.err(format!("qubit count {n} out of range")));
                }
                if !cur.at_end() {
                    return Err(cur.err("unexpected trailing input"));
                }
                auto = Some(TreeAutomaton::new(n as u32));
            }
            "root" => {
                let a = auto
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line_no, word_col, "declare `qubits <n>` before root states"))?;
                let mut any = false;
                while !cur.at_end() {
                    let (l, c) = (cur.line_no, cur.col());
                    let name = cur.ident()?;
                    let id = names.intern(a, name, l, c);
                    a.add_root(id);
                    any = true;
                }
                if !any {
                    return Err(cur.err("expected at least one state name after `root`"));
                }
            }
            _ => {
                let a = auto
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line_no, word_col, "declare `qubits <n>` before transitions"))?;
                let parent = names.intern(a, word, line_no, word_col);
                cur.expect('-')?;
                if cur.peek() == Some('x') {
                    cur.pos += 1;
                    let qcol = cur.col();
                    let k = cur.uint()?;
                    if k == 0 || k > a.n() as u64 {
                        return Err(ParseError::new(
                            line_no,
                            qcol,
                            format!("qubit x{k} outside 1..={}", a.n()),
                        ));
                    }
                    cur.expect('-')?;
                    cur.expect('>')?;
                    cur.expect('(')?;
                    let (ll, lc) = (cur.line_no, { cur.skip_ws(); cur.col() });
                    let left = names.intern(a, cur.ident()?, ll, lc);
                    cur.expect(',')?;
                    let (rl, rc) = (cur.line_no, { cur.skip_ws(); cur.col() });
                    let right = names.intern(a, cur.ident()?, rl, rc);
                    cur.expect(')')?;
                    if !cur.at_end() {
                        return Err(cur.err("unexpected trailing input"));
                    }
                    internal.push((parent, k as u32, left, right, line_no, word_col));
                } else {
                    cur.expect('>')?;
                    cur.skip_ws();
                    let amp_col = cur.col();
                    let amp: AlgebraicAmplitude = cur
                        .rest()
                        .trim()
                        .parse()
                        .map_err(|e| ParseError::new(line_no, amp_col, format!("{e}")))?;
                    leaves.push((parent, amp, line_no, word_col));
                }
            }
        }
    }

    let mut a = auto.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing `qubits <n>` declaration"))?;
    if a.roots().is_empty() {
        return Err(ParseError::new(last_line.max(1), 1, "no root states declared"));
    }

    check_shape(&a, &names, &internal, &leaves)?;
    for &(p, k, l, r, _, _) in &internal {
        a.add_internal(p, k, l, r);
    }
    for (q, amp, _, _) in &leaves {
        a.add_leaf(*q, amp.clone());
    }
    debug_assert!(a.validate().is_ok(), "parser admitted a malformed automaton: {:?}", a.validate());
    a.trim();
    Ok(a)
}

/// Depth and well-formedness checks with source positions, mirroring what
/// `TreeAutomaton::validate` enforces but reported against the file.
fn check_shape(
    a: &TreeAutomaton,
    names: &NameTable,
    internal: &[(StateId, u32, StateId, StateId, usize, usize)],
    leaves: &[(StateId, AlgebraicAmplitude, usize, usize)],
) -> Result<(), ParseError> {
    let n = a.n();
    let mut has_leaf: HashMap<StateId, (&AlgebraicAmplitude, usize, usize)> = HashMap::new();
    for (q, amp, line, col) in leaves {
        if let Some((prev, _, _)) = has_leaf.get(q) {
            if *prev != amp {
                return Err(ParseError::new(
                    *line,
                    *col,
                    format!("state `{}` already has a different leaf amplitude", names.name(*q)),
                ));
            }
        } else {
            has_leaf.insert(*q, (amp, *line, *col));
        }
    }
    let mut children: HashMap<StateId, Vec<(u32, StateId, StateId, usize, usize)>> = HashMap::new();
    for &(p, k, l, r, line, col) in internal {
        if has_leaf.contains_key(&p) {
            return Err(ParseError::new(
                line,
                col,
                format!("state `{}` has both internal transitions and a leaf amplitude", names.name(p)),
            ));
        }
        children.entry(p).or_default().push((k, l, r, line, col));
    }

    // Breadth-first depth assignment from the roots; every use of a state
    // must agree on its depth and transitions must read the layer's qubit.
    let mut depth: HashMap<StateId, u32> = HashMap::new();
    let mut queue: Vec<StateId> = Vec::new();
    for &r in a.roots() {
        depth.insert(r, 0);
        queue.push(r);
    }
    while let Some(q) = queue.pop() {
        let d = depth[&q];
        if let Some(outs) = children.get(&q) {
            for &(k, l, r, line, col) in outs {
                if d == n {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("state `{}` sits at the leaf level and cannot branch", names.name(q)),
                    ));
                }
                if k != d + 1 {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!(
                            "state `{}` is at depth {d}, so its transitions must read x{}, found x{k}",
                            names.name(q),
                            d + 1
                        ),
                    ));
                }
                for child in [l, r] {
                    match depth.get(&child) {
                        None => {
                            depth.insert(child, d + 1);
                            queue.push(child);
                        }
                        Some(&dc) if dc != d + 1 => {
                            let (fl, fc) = names.first_use(child);
                            return Err(ParseError::new(
                                fl,
                                fc,
                                format!(
                                    "state `{}` is used at conflicting depths {dc} and {}",
                                    names.name(child),
                                    d + 1
                                ),
                            ));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    for (q, &(_, line, col)) in &has_leaf {
        match depth.get(q) {
            Some(&d) if d != n => {
                return Err(ParseError::new(
                    line,
                    col,
                    format!(
                        "state `{}` has a leaf amplitude but sits at depth {d}, not {n}",
                        names.name(*q)
                    ),
                ));
            }
            _ => {}
        }
    }
    Ok(())
}

/// Writes an automaton in the text format, renaming states to `q0..` in
/// sorted order. Tagged automata have no file syntax and are refused.
pub fn serialize_automaton(a: &TreeAutomaton) -> Result<String, AutomatonError> {
    if a.internal_transitions().any(|t| t.symbol.tag.is_some()) {
        return Err(AutomatonError::AlreadyTagged);
    }
    let rename: HashMap<StateId, usize> =
        a.states().iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let nm = |q: StateId| format!("q{}", rename[&q]);
    let mut out = String::new();
    out.push_str(&format!("qubits {}\n", a.n()));
    let roots: Vec<String> = a.roots().iter().map(|&r| nm(r)).collect();
    out.push_str(&format!("root {}\n", roots.join(" ")));
    for t in a.internal_transitions() {
        out.push_str(&format!(
            "{} -x{}-> ({}, {})\n",
            nm(t.parent),
            t.symbol.qubit,
            nm(t.left),
            nm(t.right)
        ));
    }
    for (q, amp) in a.leaf_transitions() {
        out.push_str(&format!("{} -> {}\n", nm(*q), amp));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::inclusion::equivalent;

    const TWO_STATES: &str = "\
# basis states |00> and |01>
qubits 2
root s
s -x1-> (a, z)
a -x2-> (one, zero)
a -x2-> (zero, one)
z -x2-> (zero, zero)
one -> (1,0,0,0,0)
zero -> (0,0,0,0,0)
";

    #[test]
    fn parses_and_accepts() {
        let a = parse_automaton(TWO_STATES).unwrap();
        assert_eq!(a.n(), 2);
        let b = TreeAutomaton::single_basis_state(&[false, false]);
        assert!(crate::automaton::inclusion::included(&b, &a));
    }

    #[test]
    fn round_trip_preserves_language() {
        let a = parse_automaton(TWO_STATES).unwrap();
        let text = serialize_automaton(&a).unwrap();
        let b = parse_automaton(&text).unwrap();
        assert!(equivalent(&a, &b));
        // A reparse of its own output is textually stable.
        assert_eq!(serialize_automaton(&b).unwrap(), text);
    }

    #[test]
    fn serializes_library_automata() {
        let a = TreeAutomaton::all_basis_states(3);
        let text = serialize_automaton(&a).unwrap();
        let b = parse_automaton(&text).unwrap();
        assert!(equivalent(&a, &b));
    }

    #[test]
    fn rejects_tagged_output() {
        let mut a = TreeAutomaton::all_basis_states(2);
        a.tag().unwrap();
        assert!(matches!(serialize_automaton(&a), Err(AutomatonError::AlreadyTagged)));
    }

    #[test]
    fn reports_layer_conflicts() {
        let e = parse_automaton("qubits 2\nroot s\ns -x2-> (a, a)\na -> (1,0,0,0,0)\n").unwrap_err();
        assert!(e.message.contains("must read x1"), "{e}");
        let e = parse_automaton(
            "qubits 2\nroot s\ns -x1-> (s, a)\na -x2-> (b, b)\nb -> (1,0,0,0,0)\n",
        )
        .unwrap_err();
        assert!(e.message.contains("conflicting depths"), "{e}");
    }

    #[test]
    fn reports_leaf_misuse() {
        let e = parse_automaton(
            "qubits 1\nroot s\ns -x1-> (a, a)\na -> (1,0,0,0,0)\na -> (2,0,0,0,0)\n",
        )
        .unwrap_err();
        assert!(e.message.contains("different leaf amplitude"), "{e}");
        let e = parse_automaton("qubits 2\nroot s\ns -x1-> (a, a)\na -> (1,0,0,0,0)\n").unwrap_err();
        assert!(e.message.contains("depth 1, not 2"), "{e}");
    }

    #[test]
    fn reports_missing_pieces() {
        let e = parse_automaton("root s\n").unwrap_err();
        assert!(e.message.contains("qubits"), "{e}");
        let e = parse_automaton("qubits 2\nq0 -x1-> (a, b)\n").unwrap_err();
        assert!(e.message.contains("no root states"), "{e}");
        let e = parse_automaton("").unwrap_err();
        assert!(e.message.contains("missing `qubits"), "{e}");
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let a = parse_automaton("# file\n\nqubits 1\nroot s # root\ns -x1-> (t, t)\nt -> (1,0,0,0,0)\n")
            .unwrap();
        assert_eq!(a.n(), 1);
        assert_eq!(a.num_states(), 2);
    }

    #[test]
    fn trims_useless_states() {
        // `dead` never reaches an amplitude and is dropped by the load path.
        let a = parse_automaton(
            "qubits 1\nroot s dead\ns -x1-> (t, t)\nt -> (1,0,0,0,0)\n",
        )
        .unwrap();
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.roots().len(), 1);
    }
}
