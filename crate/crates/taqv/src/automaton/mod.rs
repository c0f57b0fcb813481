//! Finite tree automata over full binary trees of height `n`.
//!
//! An automaton represents a *set* of `n`-qubit states: its language is a set
//! of state trees (see [`crate::tree::StateTree`]). Nondeterminism is what
//! buys succinctness; the set of all `2^n` basis states fits in `2n + 1`
//! automaton states.
//!
//! Automata here are layered: a state reachable at depth `d` only fires
//! transitions labelled `x_{d+1}`, and leaf transitions only fire at depth
//! `n`. All ops preserve that invariant, and [`TreeAutomaton::validate`]
//! checks it for parsed input.

use crate::amplitude::AlgebraicAmplitude;
use crate::tree::{StateTree, Tag};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

pub mod inclusion;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error("invalid automaton:\n{}", .0.join("\n"))]
    Invalid(Vec<String>),
    #[error("automaton already carries tags")]
    AlreadyTagged,
    #[error("unresolved merged tag `{0}` survives to output")]
    UnresolvedPairTag(Tag),
}

/// Opaque automaton state identifier, unique within one automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(u32);

impl StateId {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// Internal transition label: the qubit variable, plus an optional tag while
/// structure-tracking ops run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub qubit: u32,
    pub tag: Option<Tag>,
}

impl Symbol {
    pub fn plain(qubit: u32) -> Symbol {
        Symbol { qubit, tag: None }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Some(t) => write!(f, "x{}^[{}]", self.qubit, t),
            None => write!(f, "x{}", self.qubit),
        }
    }
}

/// `parent --symbol--> (left, right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InternalTransition {
    pub parent: StateId,
    pub symbol: Symbol,
    pub left: StateId,
    pub right: StateId,
}

/// A tree automaton over `n`-qubit state trees.
///
/// Stored as sorted sets throughout so that iteration order, and therefore
/// every derived artifact (fresh-state numbering, serialized text, chosen
/// witnesses), is deterministic.
#[derive(Debug, Clone)]
pub struct TreeAutomaton {
    n: u32,
    next_state: u32,
    roots: BTreeSet<StateId>,
    internal: BTreeSet<InternalTransition>,
    leaves: BTreeSet<(StateId, AlgebraicAmplitude)>,
}

impl TreeAutomaton {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "automaton needs at least one qubit");
        TreeAutomaton {
            n,
            next_state: 0,
            roots: BTreeSet::new(),
            internal: BTreeSet::new(),
            leaves: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn fresh_state(&mut self) -> StateId {
        let id = StateId(self.next_state);
        self.next_state += 1;
        id
    }

    pub fn add_root(&mut self, q: StateId) {
        self.roots.insert(q);
    }

    pub fn add_internal(&mut self, parent: StateId, qubit: u32, left: StateId, right: StateId) {
        self.add_internal_tagged(parent, Symbol::plain(qubit), left, right);
    }

    pub fn add_internal_tagged(&mut self, parent: StateId, symbol: Symbol, left: StateId, right: StateId) {
        self.internal.insert(InternalTransition { parent, symbol, left, right });
    }

    pub fn add_leaf(&mut self, q: StateId, amp: AlgebraicAmplitude) {
        self.leaves.insert((q, amp));
    }

    pub fn roots(&self) -> &BTreeSet<StateId> {
        &self.roots
    }

    pub fn internal_transitions(&self) -> impl Iterator<Item = &InternalTransition> {
        self.internal.iter()
    }

    pub fn leaf_transitions(&self) -> impl Iterator<Item = &(StateId, AlgebraicAmplitude)> {
        self.leaves.iter()
    }

    /// The amplitude attached to a leaf state, if any. Unique in a valid
    /// automaton.
    pub fn leaf_amplitude(&self, q: StateId) -> Option<&AlgebraicAmplitude> {
        self.leaves.iter().find(|(p, _)| *p == q).map(|(_, a)| a)
    }

    /// Every state mentioned anywhere in the automaton.
    pub fn states(&self) -> BTreeSet<StateId> {
        let mut s: BTreeSet<StateId> = self.roots.iter().copied().collect();
        for t in &self.internal {
            s.insert(t.parent);
            s.insert(t.left);
            s.insert(t.right);
        }
        for (q, _) in &self.leaves {
            s.insert(*q);
        }
        s
    }

    pub fn num_states(&self) -> usize {
        self.states().len()
    }

    pub fn num_transitions(&self) -> usize {
        self.internal.len() + self.leaves.len()
    }

    pub(crate) fn remove_internal(&mut self, t: &InternalTransition) -> bool {
        self.internal.remove(t)
    }

    /// Rewrites every leaf amplitude through `f`.
    pub(crate) fn map_leaf_amps(&mut self, f: impl Fn(&AlgebraicAmplitude) -> AlgebraicAmplitude) {
        self.leaves = self.leaves.iter().map(|(q, a)| (*q, f(a))).collect();
    }

    /// Copies every state and transition of `other` into `self` under fresh
    /// ids (roots are not copied), returning the id translation. Leaf
    /// amplitudes pass through `leaf_map`.
    pub(crate) fn import_mapped(
        &mut self,
        other: &TreeAutomaton,
        leaf_map: impl Fn(&AlgebraicAmplitude) -> AlgebraicAmplitude,
    ) -> BTreeMap<StateId, StateId> {
        let mut map = BTreeMap::new();
        for q in other.states() {
            let fresh = self.fresh_state();
            map.insert(q, fresh);
        }
        for t in &other.internal {
            self.internal.insert(InternalTransition {
                parent: map[&t.parent],
                symbol: t.symbol,
                left: map[&t.left],
                right: map[&t.right],
            });
        }
        for (q, a) in &other.leaves {
            self.leaves.insert((map[q], leaf_map(a)));
        }
        map
    }

    pub(crate) fn import(&mut self, other: &TreeAutomaton) -> BTreeMap<StateId, StateId> {
        self.import_mapped(other, Clone::clone)
    }

    /// Applies a (possibly partial) state renaming everywhere.
    pub(crate) fn map_states(&mut self, map: &BTreeMap<StateId, StateId>) {
        let rn = |q: StateId| *map.get(&q).unwrap_or(&q);
        self.roots = self.roots.iter().map(|&q| rn(q)).collect();
        self.internal = self
            .internal
            .iter()
            .map(|t| InternalTransition {
                parent: rn(t.parent),
                symbol: t.symbol,
                left: rn(t.left),
                right: rn(t.right),
            })
            .collect();
        self.leaves = self.leaves.iter().map(|(q, a)| (rn(*q), a.clone())).collect();
    }

    /// Structural health check used on parsed input: symbol domain, layering
    /// of reachable states, leaf amplitude uniqueness, presence of roots.
    /// Returns the full list of problems, not just the first.
    pub fn validate(&self) -> Result<(), AutomatonError> {
        let mut bad = Vec::new();
        if self.roots.is_empty() {
            bad.push("automaton has no root states".to_string());
        }
        for t in &self.internal {
            if t.symbol.qubit < 1 || t.symbol.qubit > self.n {
                bad.push(format!(
                    "transition {} -{}-> ({}, {}) uses a qubit outside 1..={}",
                    t.parent, t.symbol, t.left, t.right, self.n
                ));
            }
        }
        // Depth assignment by breadth-first traversal from the roots. A state
        // observed at two different depths breaks layering.
        let mut depth: BTreeMap<StateId, u32> = BTreeMap::new();
        let mut queue: VecDeque<StateId> = VecDeque::new();
        for &r in &self.roots {
            depth.insert(r, 0);
            queue.push_back(r);
        }
        while let Some(q) = queue.pop_front() {
            let d = depth[&q];
            for t in self.internal.iter().filter(|t| t.parent == q) {
                if t.symbol.qubit != d + 1 {
                    bad.push(format!(
                        "state {} at depth {} fires {} (expected x{})",
                        q, d, t.symbol, d + 1
                    ));
                    continue;
                }
                for child in [t.left, t.right] {
                    match depth.get(&child) {
                        None => {
                            depth.insert(child, d + 1);
                            queue.push_back(child);
                        }
                        Some(&dc) if dc != d + 1 => {
                            bad.push(format!(
                                "state {child} appears at depths {dc} and {}",
                                d + 1
                            ));
                        }
                        _ => {}
                    }
                }
            }
        }
        for (q, _) in &self.leaves {
            if let Some(&d) = depth.get(q) {
                if d != self.n {
                    bad.push(format!(
                        "leaf state {q} sits at depth {d}, expected depth {}",
                        self.n
                    ));
                }
            }
        }
        let mut leaf_amp: BTreeMap<StateId, &AlgebraicAmplitude> = BTreeMap::new();
        for (q, a) in &self.leaves {
            if let Some(prev) = leaf_amp.insert(*q, a) {
                if prev != a {
                    bad.push(format!("leaf state {q} carries amplitudes {prev} and {a}"));
                }
            }
        }
        for t in &self.internal {
            if leaf_amp.contains_key(&t.parent) {
                bad.push(format!(
                    "state {} has both an internal transition and a leaf amplitude",
                    t.parent
                ));
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(AutomatonError::Invalid(bad))
        }
    }

    /// Removes states that are unreachable from the roots or that accept no
    /// tree, along with their transitions. Language-preserving.
    pub fn trim(&mut self) {
        // Productive states: least fixpoint upward from the leaves.
        let mut productive: BTreeSet<StateId> = self.leaves.iter().map(|(q, _)| *q).collect();
        loop {
            let mut grew = false;
            for t in &self.internal {
                if !productive.contains(&t.parent)
                    && productive.contains(&t.left)
                    && productive.contains(&t.right)
                {
                    productive.insert(t.parent);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        // Reachability through transitions whose children are all productive.
        let mut reach: BTreeSet<StateId> = self.roots.iter().filter(|q| productive.contains(q)).copied().collect();
        let mut queue: VecDeque<StateId> = reach.iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            for t in self.internal.iter().filter(|t| t.parent == q) {
                if productive.contains(&t.left) && productive.contains(&t.right) {
                    for child in [t.left, t.right] {
                        if reach.insert(child) {
                            queue.push_back(child);
                        }
                    }
                }
            }
        }
        let keep = |q: &StateId| reach.contains(q) && productive.contains(q);
        self.roots.retain(keep);
        self.internal
            .retain(|t| keep(&t.parent) && keep(&t.left) && keep(&t.right));
        self.leaves.retain(|(q, _)| keep(q));
    }

    /// Merges states with identical outgoing behaviour until none remain,
    /// trimming first. Language-preserving, and tag-preserving: states merge
    /// only when their outgoing transition sets (symbols, tags and all) are
    /// identical, so no tree's tag structure changes.
    pub fn reduce(&mut self) {
        self.trim();
        loop {
            type Sig = (Vec<(Symbol, StateId, StateId)>, Vec<AlgebraicAmplitude>);
            let mut sig: BTreeMap<StateId, Sig> = BTreeMap::new();
            for t in &self.internal {
                sig.entry(t.parent).or_default().0.push((t.symbol, t.left, t.right));
            }
            for (q, a) in &self.leaves {
                sig.entry(*q).or_default().1.push(a.clone());
            }
            let mut groups: BTreeMap<Sig, Vec<StateId>> = BTreeMap::new();
            for (q, s) in sig {
                groups.entry(s).or_default().push(q);
            }
            let mut map: BTreeMap<StateId, StateId> = BTreeMap::new();
            for (_, members) in groups {
                if members.len() > 1 {
                    let rep = members[0];
                    for &q in &members[1..] {
                        map.insert(q, rep);
                    }
                }
            }
            if map.is_empty() {
                break;
            }
            self.map_states(&map);
        }
    }

    /// Attaches a distinct [`Tag::Single`] to every internal transition, in
    /// sorted transition order. Fails if any transition is already tagged.
    pub fn tag(&mut self) -> Result<(), AutomatonError> {
        if self.internal.iter().any(|t| t.symbol.tag.is_some()) {
            return Err(AutomatonError::AlreadyTagged);
        }
        let old = std::mem::take(&mut self.internal);
        for (i, mut t) in old.into_iter().enumerate() {
            t.symbol.tag = Some(Tag::Single(i as u64 + 1));
            self.internal.insert(t);
        }
        Ok(())
    }

    /// Removes all tags. Fails if a merged pair tag is still present, which
    /// signals an unfinished swap sequence.
    pub fn untag(&mut self) -> Result<(), AutomatonError> {
        if let Some(t) = self.internal.iter().find(|t| matches!(t.symbol.tag, Some(Tag::Pair(_, _)))) {
            return Err(AutomatonError::UnresolvedPairTag(t.symbol.tag.unwrap()));
        }
        let old = std::mem::take(&mut self.internal);
        for mut t in old {
            t.symbol.tag = None;
            self.internal.insert(t);
        }
        Ok(())
    }

    /// All states that accept the given tree (symbols must match exactly,
    /// tags included).
    fn states_accepting(&self, tree: &StateTree) -> BTreeSet<StateId> {
        match tree {
            StateTree::Leaf(a) => self
                .leaves
                .iter()
                .filter(|(_, la)| la == a)
                .map(|(q, _)| *q)
                .collect(),
            StateTree::Node { qubit, tag, left, right } => {
                let sl = self.states_accepting(left);
                let sr = self.states_accepting(right);
                let sym = Symbol { qubit: *qubit, tag: *tag };
                self.internal
                    .iter()
                    .filter(|t| t.symbol == sym && sl.contains(&t.left) && sr.contains(&t.right))
                    .map(|t| t.parent)
                    .collect()
            }
        }
    }

    /// Language membership.
    pub fn accepts(&self, tree: &StateTree) -> bool {
        let s = self.states_accepting(tree);
        self.roots.iter().any(|r| s.contains(r))
    }

    /// The automaton accepting every computational basis state of `n` qubits:
    /// `2n + 1` states and `3n + 1` transitions.
    pub fn all_basis_states(n: u32) -> TreeAutomaton {
        let mut a = TreeAutomaton::new(n);
        let root = a.fresh_state();
        a.add_root(root);
        // Per layer two states: "still on the chosen path" (one) and "off the
        // path" (zero). The root both branches; deeper layers keep exactly one
        // set bit alive.
        let mut one_prev = root;
        let mut zero_prev = None::<StateId>;
        for k in 1..=n {
            let zero = a.fresh_state();
            let one = a.fresh_state();
            a.add_internal(one_prev, k, one, zero);
            a.add_internal(one_prev, k, zero, one);
            if let Some(z) = zero_prev {
                a.add_internal(z, k, zero, zero);
            }
            one_prev = one;
            zero_prev = Some(zero);
        }
        a.add_leaf(one_prev, AlgebraicAmplitude::one());
        a.add_leaf(zero_prev.unwrap(), AlgebraicAmplitude::zero());
        a
    }

    /// The automaton accepting exactly `|bits>`.
    pub fn single_basis_state(bits: &[bool]) -> TreeAutomaton {
        let n = bits.len() as u32;
        let mut a = TreeAutomaton::new(n);
        let root = a.fresh_state();
        a.add_root(root);
        let mut live = root;
        let mut zero_prev = None::<StateId>;
        for (d, &b) in bits.iter().enumerate() {
            let k = d as u32 + 1;
            let next_live = a.fresh_state();
            let zero = a.fresh_state();
            if b {
                a.add_internal(live, k, zero, next_live);
            } else {
                a.add_internal(live, k, next_live, zero);
            }
            if let Some(z) = zero_prev {
                a.add_internal(z, k, zero, zero);
            }
            live = next_live;
            zero_prev = Some(zero);
        }
        a.add_leaf(live, AlgebraicAmplitude::one());
        a.add_leaf(zero_prev.unwrap(), AlgebraicAmplitude::zero());
        a
    }

    /// The automaton accepting exactly the given tree, shared subtrees
    /// folded into shared states.
    pub fn from_tree(tree: &StateTree, n: u32) -> Result<TreeAutomaton, AutomatonError> {
        tree.check_shape(n)
            .map_err(|e| AutomatonError::Invalid(vec![e.to_string()]))?;
        let mut a = TreeAutomaton::new(n);
        let mut memo: BTreeMap<StateTree, StateId> = BTreeMap::new();
        let root = Self::intern_tree(&mut a, &mut memo, tree);
        a.add_root(root);
        Ok(a)
    }

    fn intern_tree(
        a: &mut TreeAutomaton,
        memo: &mut BTreeMap<StateTree, StateId>,
        tree: &StateTree,
    ) -> StateId {
        if let Some(&q) = memo.get(tree) {
            return q;
        }
        let q = match tree {
            StateTree::Leaf(amp) => {
                let q = a.fresh_state();
                a.add_leaf(q, amp.clone());
                q
            }
            StateTree::Node { qubit, tag, left, right } => {
                let l = Self::intern_tree(a, memo, left);
                let r = Self::intern_tree(a, memo, right);
                let q = a.fresh_state();
                a.add_internal_tagged(q, Symbol { qubit: *qubit, tag: *tag }, l, r);
                q
            }
        };
        memo.insert(tree.clone(), q);
        q
    }
}
