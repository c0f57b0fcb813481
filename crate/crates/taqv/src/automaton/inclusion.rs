//! Language inclusion and equivalence between tree automata, with concrete
//! counterexample trees.
//!
//! The check runs bottom-up over the layered structure. For automaton `A`
//! against `B` it maintains pairs `(q, S)`: `q` accepts some tree which is
//! accepted in `B` by exactly the states in `S`. Only minimal `S` are kept
//! per `q` (an antichain); the "not accepted by `B`" condition is downward
//! closed in `S` and the combine step is monotone, so minimality loses
//! nothing. Inclusion fails exactly when a root pair's `S` misses every root
//! of `B`, and the pair's provenance rebuilds the offending tree.

use super::{InternalTransition, StateId, Symbol, TreeAutomaton};
use crate::amplitude::AlgebraicAmplitude;
use crate::tree::StateTree;
use std::collections::BTreeMap;

/// Which side of an equivalence check a witness tree belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffSide {
    /// Accepted by the computed result, missing from the expected automaton.
    ResultOnly,
    /// Accepted by the expected automaton, missing from the computed result.
    PostOnly,
}

enum Prov {
    Leaf(AlgebraicAmplitude),
    Node { symbol: Symbol, left: usize, right: usize },
}

struct Pair {
    /// Sorted `B`-states accepting the provenance tree.
    set: Vec<StateId>,
    prov: Prov,
}

/// `needle` a subset of `hay`, both sorted ascending.
fn subset(needle: &[StateId], hay: &[StateId]) -> bool {
    let mut it = hay.iter();
    'outer: for x in needle {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn antichain_insert(arena: &mut Vec<Pair>, chain: &mut Vec<usize>, pair: Pair) {
    if chain.iter().any(|&i| subset(&arena[i].set, &pair.set)) {
        return;
    }
    chain.retain(|&i| !subset(&pair.set, &arena[i].set));
    arena.push(pair);
    chain.push(arena.len() - 1);
}

fn rebuild(arena: &[Pair], i: usize) -> StateTree {
    match &arena[i].prov {
        Prov::Leaf(a) => StateTree::Leaf(a.clone()),
        Prov::Node { symbol, left, right } => StateTree::Node {
            qubit: symbol.qubit,
            tag: symbol.tag,
            left: Box::new(rebuild(arena, *left)),
            right: Box::new(rebuild(arena, *right)),
        },
    }
}

/// Some tree accepted by `a` but not by `b`, or `None` if `L(a) ⊆ L(b)`.
/// Deterministic: the same inputs always yield the same witness.
pub fn counterexample(a: &TreeAutomaton, b: &TreeAutomaton) -> Option<StateTree> {
    debug_assert_eq!(a.n(), b.n(), "inclusion requires equal qubit counts");
    let n = a.n();

    let mut b_by_symbol: BTreeMap<Symbol, Vec<&InternalTransition>> = BTreeMap::new();
    for t in b.internal_transitions() {
        b_by_symbol.entry(t.symbol).or_default().push(t);
    }
    let mut b_leaves: BTreeMap<&AlgebraicAmplitude, Vec<StateId>> = BTreeMap::new();
    for (q, amp) in b.leaf_transitions() {
        b_leaves.entry(amp).or_default().push(*q);
    }
    for states in b_leaves.values_mut() {
        states.sort_unstable();
    }

    let mut arena: Vec<Pair> = Vec::new();
    // Pairs for the current layer, keyed by the A-state.
    let mut layer: BTreeMap<StateId, Vec<usize>> = BTreeMap::new();
    for (q, amp) in a.leaf_transitions() {
        let set = b_leaves.get(amp).cloned().unwrap_or_default();
        let pair = Pair { set, prov: Prov::Leaf(amp.clone()) };
        antichain_insert(&mut arena, layer.entry(*q).or_default(), pair);
    }

    for qubit in (1..=n).rev() {
        let mut next: BTreeMap<StateId, Vec<usize>> = BTreeMap::new();
        for t in a.internal_transitions().filter(|t| t.symbol.qubit == qubit) {
            let (Some(lp), Some(rp)) = (layer.get(&t.left), layer.get(&t.right)) else {
                continue;
            };
            let b_candidates = b_by_symbol.get(&t.symbol).map(Vec::as_slice).unwrap_or(&[]);
            for &pl in lp {
                for &pr in rp {
                    let mut set: Vec<StateId> = b_candidates
                        .iter()
                        .filter(|bt| {
                            arena[pl].set.binary_search(&bt.left).is_ok()
                                && arena[pr].set.binary_search(&bt.right).is_ok()
                        })
                        .map(|bt| bt.parent)
                        .collect();
                    set.sort_unstable();
                    set.dedup();
                    let pair = Pair {
                        set,
                        prov: Prov::Node { symbol: t.symbol, left: pl, right: pr },
                    };
                    antichain_insert(&mut arena, next.entry(t.parent).or_default(), pair);
                }
            }
        }
        layer = next;
    }

    for r in a.roots() {
        let Some(pairs) = layer.get(r) else { continue };
        for &p in pairs {
            if !arena[p].set.iter().any(|q| b.roots().contains(q)) {
                return Some(rebuild(&arena, p));
            }
        }
    }
    None
}

/// `L(a) ⊆ L(b)`.
pub fn included(a: &TreeAutomaton, b: &TreeAutomaton) -> bool {
    counterexample(a, b).is_none()
}

/// `L(a) = L(b)`.
pub fn equivalent(a: &TreeAutomaton, b: &TreeAutomaton) -> bool {
    included(a, b) && included(b, a)
}

/// A tree distinguishing the two languages, if any, labelled with the side
/// that accepts it. The result side is tried first.
pub fn diff_witness(result: &TreeAutomaton, post: &TreeAutomaton) -> Option<(StateTree, DiffSide)> {
    if let Some(t) = counterexample(result, post) {
        return Some((t, DiffSide::ResultOnly));
    }
    counterexample(post, result).map(|t| (t, DiffSide::PostOnly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::StateVector;

    fn basis(bits: &[bool]) -> StateTree {
        StateVector::basis_state(bits).to_tree()
    }

    #[test]
    fn single_included_in_all() {
        for n in 1..=4u32 {
            let all = TreeAutomaton::all_basis_states(n);
            let bits: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
            let one = TreeAutomaton::single_basis_state(&bits);
            assert!(included(&one, &all), "n={n}");
            assert!(!included(&all, &one), "n={n}");
            assert!(!equivalent(&all, &one), "n={n}");
            let w = counterexample(&all, &one).unwrap();
            assert!(all.accepts(&w));
            assert!(!one.accepts(&w));
        }
    }

    #[test]
    fn equivalence_of_rebuilt_automaton() {
        let a = TreeAutomaton::all_basis_states(3);
        let mut b = a.clone();
        b.reduce();
        assert!(equivalent(&a, &b));
    }

    #[test]
    fn witness_is_deterministic() {
        let all = TreeAutomaton::all_basis_states(3);
        let one = TreeAutomaton::single_basis_state(&[false, false, false]);
        let w1 = counterexample(&all, &one).unwrap();
        let w2 = counterexample(&all, &one).unwrap();
        assert_eq!(w1, w2);
    }

    #[test]
    fn leaf_perturbation_detected() {
        let a = TreeAutomaton::single_basis_state(&[true, false]);
        let mut b = a.clone();
        b.map_leaf_amps(|amp| {
            if amp.is_zero() {
                amp.clone()
            } else {
                amp.div_sqrt2()
            }
        });
        assert!(!included(&a, &b));
        assert!(!included(&b, &a));
        let (w, side) = diff_witness(&a, &b).unwrap();
        assert_eq!(side, DiffSide::ResultOnly);
        assert_eq!(w, basis(&[true, false]));
    }

    #[test]
    fn empty_language_edges() {
        let mut empty = TreeAutomaton::new(2);
        empty.trim();
        let bell_like = TreeAutomaton::single_basis_state(&[false, false]);
        assert!(included(&empty, &bell_like));
        assert!(included(&empty, &empty));
        assert!(!included(&bell_like, &empty));
        assert!(counterexample(&bell_like, &empty).is_some());
    }

    #[test]
    fn post_only_side_reported() {
        let small = TreeAutomaton::single_basis_state(&[false, false]);
        let all = TreeAutomaton::all_basis_states(2);
        let (w, side) = diff_witness(&small, &all).unwrap();
        assert_eq!(side, DiffSide::PostOnly);
        assert!(all.accepts(&w));
        assert!(!small.accepts(&w));
    }
}
