//! Language-level building blocks and the generic gate pipeline.
//!
//! Every supported gate's action on a tree `T` is a fixed arithmetic
//! combination of three primitive tree operators:
//!
//! * `restrict(A, t, b)`: zero out the `x_t = !b` subtree of every tree
//!   (multiplication by the branch indicator of `x_t = b`);
//! * `project(A, t, b)`: substitute the constant `b` for `x_t`, keeping the
//!   tree full by duplicating the chosen subtree over both branches;
//! * `binary_op(A1, A2, ±)`: leafwise sum or difference of structurally
//!   synchronized trees.
//!
//! Synchronization is what the tags are for: the pipeline first gives every
//! transition of the (trimmed, reduced) input a distinct tag, derives each
//! term of a gate's formula from that one tagged automaton, and lets
//! `binary_op` pair only transitions carrying equal tags, so each input tree
//! combines with its own transformed self and never with a different member
//! of a nondeterministic language. Tags also steer projection: pushing `x_t`
//! down one level temporarily merges two levels under a `Pair` tag, and the
//! matching unswap restores them.

use crate::amplitude::AlgebraicAmplitude;
use crate::automaton::{InternalTransition, StateId, Symbol, TreeAutomaton};
use crate::circuit::Gate;
use crate::tree::Tag;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::GateError;

/// Leafwise combination for [`binary_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
}

/// Constant scalar for [`mult_const`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstFactor {
    OmegaPow(i64),
    InvSqrt2,
}

fn level_transitions(a: &TreeAutomaton, t: u32) -> Vec<InternalTransition> {
    a.internal_transitions().filter(|tr| tr.symbol.qubit == t).copied().collect()
}

fn children_of(a: &TreeAutomaton, q: StateId) -> Vec<InternalTransition> {
    a.internal_transitions().filter(|tr| tr.parent == q).copied().collect()
}

/// Zeroes the `x_t = !b` branch of every accepted tree: the discarded branch
/// is rerouted into a copy of the automaton whose leaves are all zero.
/// Tag-preserving.
pub fn restrict(a: &TreeAutomaton, t: u32, b: bool) -> TreeAutomaton {
    let mut out = a.clone();
    let map = out.import_mapped(a, |_| AlgebraicAmplitude::zero());
    let targets = level_transitions(a, t);
    for tr in &targets {
        out.remove_internal(tr);
    }
    for tr in &targets {
        if b {
            out.add_internal_tagged(tr.parent, tr.symbol, map[&tr.left], tr.right);
        } else {
            out.add_internal_tagged(tr.parent, tr.symbol, tr.left, map[&tr.right]);
        }
    }
    out.trim();
    out
}

/// Multiplies every accepted tree by a constant scalar, as a rewrite of leaf
/// amplitudes. Tag-preserving.
pub fn mult_const(a: &TreeAutomaton, f: ConstFactor) -> TreeAutomaton {
    let mut out = a.clone();
    out.map_leaf_amps(|amp| match f {
        ConstFactor::OmegaPow(p) => amp.mul_omega_pow(p),
        ConstFactor::InvSqrt2 => amp.div_sqrt2(),
    });
    out
}

/// Pushes the `x_t` level one level down by exchanging it with the level
/// below. Each `x_t` transition and each pair of transitions below it fuse:
/// the lower symbol moves on top under a `Pair` tag recording the two lower
/// tags, and two fresh states re-fire `x_t` underneath. Requires singly
/// tagged transitions below `x_t`.
pub(super) fn fswap(a: &TreeAutomaton, t: u32, budget: usize) -> Result<TreeAutomaton, GateError> {
    let mut out = a.clone();
    let mut to_remove: BTreeSet<InternalTransition> = BTreeSet::new();
    let mut to_add: Vec<InternalTransition> = Vec::new();
    // Pushed-down states are determined by their single outgoing transition,
    // so identical ones are shared instead of re-created; on nondeterministic
    // automata this keeps the repeated-swap cascade from exploding.
    let mut shared: BTreeMap<(Symbol, StateId, StateId), StateId> = BTreeMap::new();
    for t0 in level_transitions(a, t) {
        let below_l = children_of(a, t0.left);
        let below_r = children_of(a, t0.right);
        if below_l.is_empty() || below_r.is_empty() {
            return Err(GateError::SwapPastBottom(t));
        }
        for t1 in &below_l {
            for t2 in &below_r {
                let (Some(Tag::Single(i)), Some(Tag::Single(j))) = (t1.symbol.tag, t2.symbol.tag)
                else {
                    return Err(GateError::SwapNeedsSingleTags(t));
                };
                if t1.symbol.qubit != t2.symbol.qubit {
                    return Err(GateError::MalformedSwapStructure(t));
                }
                let f0 = *shared
                    .entry((t0.symbol, t1.left, t2.left))
                    .or_insert_with(|| out.fresh_state());
                let f1 = *shared
                    .entry((t0.symbol, t1.right, t2.right))
                    .or_insert_with(|| out.fresh_state());
                let merged = Symbol { qubit: t1.symbol.qubit, tag: Some(Tag::Pair(i, j)) };
                to_add.push(InternalTransition { parent: t0.parent, symbol: merged, left: f0, right: f1 });
                to_add.push(InternalTransition { parent: f0, symbol: t0.symbol, left: t1.left, right: t2.left });
                to_add.push(InternalTransition { parent: f1, symbol: t0.symbol, left: t1.right, right: t2.right });
                to_remove.insert(*t1);
                to_remove.insert(*t2);
                if to_add.len() > budget.saturating_mul(3) {
                    return Err(GateError::BudgetExceeded(budget));
                }
            }
        }
        to_remove.insert(t0);
    }
    for tr in &to_remove {
        out.remove_internal(tr);
    }
    for tr in to_add {
        out.add_internal_tagged(tr.parent, tr.symbol, tr.left, tr.right);
    }
    out.trim();
    Ok(out)
}

/// Replaces each `x_t` transition at the bottom level by one copying the
/// chosen branch (`b` selects the right child) to both children. This is
/// substitution of the constant `b` for `x_t` once `x_t` has been swapped all
/// the way down.
pub(super) fn scopy(a: &TreeAutomaton, t: u32, b: bool) -> Result<TreeAutomaton, GateError> {
    let mut out = a.clone();
    let targets = level_transitions(a, t);
    for tr in &targets {
        if a.leaf_amplitude(tr.left).is_none() || a.leaf_amplitude(tr.right).is_none() {
            return Err(GateError::CopyNotAtBottom(t));
        }
    }
    for tr in &targets {
        out.remove_internal(tr);
    }
    for tr in &targets {
        let kept = if b { tr.right } else { tr.left };
        out.add_internal_tagged(tr.parent, tr.symbol, kept, kept);
    }
    out.trim();
    Ok(out)
}

/// Inverse of [`fswap`]: resolves each `Pair`-tagged transition whose
/// children fire `x_t`, lifting `x_t` back above the two recorded original
/// levels. `Pair` transitions whose children do not fire `x_t` yet are left
/// for a later pass.
pub(super) fn bswap(a: &TreeAutomaton, t: u32, budget: usize) -> Result<TreeAutomaton, GateError> {
    let mut out = a.clone();
    let mut to_remove: BTreeSet<InternalTransition> = BTreeSet::new();
    let mut to_add: Vec<InternalTransition> = Vec::new();
    // Same sharing as in fswap: a lifted state is determined by its single
    // outgoing transition.
    let mut shared: BTreeMap<(Symbol, StateId, StateId), StateId> = BTreeMap::new();
    let pair_transitions: Vec<InternalTransition> = a
        .internal_transitions()
        .filter(|tr| matches!(tr.symbol.tag, Some(Tag::Pair(_, _))))
        .copied()
        .collect();
    for tp in pair_transitions {
        let Some(Tag::Pair(i, j)) = tp.symbol.tag else { unreachable!() };
        let l_trans: Vec<_> =
            children_of(a, tp.left).into_iter().filter(|tr| tr.symbol.qubit == t).collect();
        let r_trans: Vec<_> =
            children_of(a, tp.right).into_iter().filter(|tr| tr.symbol.qubit == t).collect();
        if l_trans.is_empty() && r_trans.is_empty() {
            continue;
        }
        if l_trans.is_empty() || r_trans.is_empty() {
            return Err(GateError::MalformedSwapStructure(t));
        }
        let mut matched = false;
        for t1 in &l_trans {
            for t2 in &r_trans {
                if t1.symbol != t2.symbol {
                    continue;
                }
                if !matches!(t1.symbol.tag, Some(Tag::Single(_))) {
                    return Err(GateError::SwapNeedsSingleTags(t));
                }
                matched = true;
                let sym0 = Symbol { qubit: tp.symbol.qubit, tag: Some(Tag::Single(i)) };
                let sym1 = Symbol { qubit: tp.symbol.qubit, tag: Some(Tag::Single(j)) };
                let g0 =
                    *shared.entry((sym0, t1.left, t2.left)).or_insert_with(|| out.fresh_state());
                let g1 =
                    *shared.entry((sym1, t1.right, t2.right)).or_insert_with(|| out.fresh_state());
                to_add.push(InternalTransition { parent: tp.parent, symbol: t1.symbol, left: g0, right: g1 });
                to_add.push(InternalTransition { parent: g0, symbol: sym0, left: t1.left, right: t2.left });
                to_add.push(InternalTransition { parent: g1, symbol: sym1, left: t1.right, right: t2.right });
                to_remove.insert(*t1);
                to_remove.insert(*t2);
                if to_add.len() > budget.saturating_mul(3) {
                    return Err(GateError::BudgetExceeded(budget));
                }
            }
        }
        if !matched {
            return Err(GateError::MalformedSwapStructure(t));
        }
        to_remove.insert(tp);
    }
    for tr in &to_remove {
        out.remove_internal(tr);
    }
    for tr in to_add {
        out.add_internal_tagged(tr.parent, tr.symbol, tr.left, tr.right);
    }
    out.trim();
    Ok(out)
}

/// Substitutes the constant `b` for `x_t`: every accepted tree's `x_t` level
/// collapses to two copies of its `b` branch. On a tagged automaton the tag
/// structure of the surviving levels is preserved. For `t < n` the input must
/// carry distinct `Single` tags (see [`TreeAutomaton::tag`]); swaps move
/// `x_t` to the bottom, the copy substitutes it, swaps move it back up.
pub fn project(a: &TreeAutomaton, t: u32, b: bool) -> Result<TreeAutomaton, GateError> {
    project_budgeted(a, t, b, usize::MAX)
}

pub(super) fn project_budgeted(
    a: &TreeAutomaton,
    t: u32,
    b: bool,
    budget: usize,
) -> Result<TreeAutomaton, GateError> {
    let n = a.n();
    let mut cur = a.clone();
    for _ in t..n {
        cur = fswap(&cur, t, budget)?;
        cur.reduce();
        check_budget(&cur, budget)?;
    }
    cur = scopy(&cur, t, b)?;
    cur.reduce();
    for _ in t..n {
        cur = bswap(&cur, t, budget)?;
        cur.reduce();
        check_budget(&cur, budget)?;
    }
    Ok(cur)
}

fn check_budget(a: &TreeAutomaton, budget: usize) -> Result<(), GateError> {
    if a.num_transitions() > budget {
        return Err(GateError::BudgetExceeded(budget));
    }
    Ok(())
}

/// Synchronized product computing `{combine(T1, T2)}` over pairs of trees
/// with identical internal structure (symbols and tags both): leaf pairs
/// combine by `op`, internal transitions pair only when their symbols match
/// exactly. With the tag discipline of the pipeline this pairs each tree with
/// its own counterpart.
pub fn binary_op(a1: &TreeAutomaton, a2: &TreeAutomaton, op: BinOp) -> Result<TreeAutomaton, GateError> {
    binary_op_budgeted(a1, a2, op, usize::MAX)
}

pub(super) fn binary_op_budgeted(
    a1: &TreeAutomaton,
    a2: &TreeAutomaton,
    op: BinOp,
    budget: usize,
) -> Result<TreeAutomaton, GateError> {
    if a1.n() != a2.n() {
        return Err(GateError::SizeMismatch(a1.n(), a2.n()));
    }
    let mut by_parent1: BTreeMap<StateId, Vec<&InternalTransition>> = BTreeMap::new();
    for t in a1.internal_transitions() {
        by_parent1.entry(t.parent).or_default().push(t);
    }
    let mut by_parent2: BTreeMap<StateId, Vec<&InternalTransition>> = BTreeMap::new();
    for t in a2.internal_transitions() {
        by_parent2.entry(t.parent).or_default().push(t);
    }

    fn intern(
        pair_id: &mut BTreeMap<(StateId, StateId), StateId>,
        queue: &mut VecDeque<(StateId, StateId)>,
        out: &mut TreeAutomaton,
        p: StateId,
        q: StateId,
    ) -> StateId {
        *pair_id.entry((p, q)).or_insert_with(|| {
            queue.push_back((p, q));
            out.fresh_state()
        })
    }

    let mut out = TreeAutomaton::new(a1.n());
    let mut pair_id: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
    let mut queue: VecDeque<(StateId, StateId)> = VecDeque::new();

    for &r1 in a1.roots() {
        for &r2 in a2.roots() {
            let id = intern(&mut pair_id, &mut queue, &mut out, r1, r2);
            out.add_root(id);
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        let id = pair_id[&(p, q)];
        if out.num_transitions() > budget {
            return Err(GateError::BudgetExceeded(budget));
        }
        let empty = Vec::new();
        for t1 in by_parent1.get(&p).unwrap_or(&empty) {
            for t2 in by_parent2.get(&q).unwrap_or(&empty) {
                if t1.symbol != t2.symbol {
                    continue;
                }
                let l = intern(&mut pair_id, &mut queue, &mut out, t1.left, t2.left);
                let r = intern(&mut pair_id, &mut queue, &mut out, t1.right, t2.right);
                out.add_internal_tagged(id, t1.symbol, l, r);
            }
        }
        if let (Some(m1), Some(m2)) = (a1.leaf_amplitude(p), a2.leaf_amplitude(q)) {
            let amp = match op {
                BinOp::Add => m1.add(m2),
                BinOp::Sub => m1.sub(m2),
            };
            out.add_leaf(id, amp);
        }
    }
    out.trim();
    Ok(out)
}

/// The generic pipeline: trims, reduces and tags the input, derives each term
/// of the gate's formula, combines them, then untags and reduces the result.
pub(super) fn apply_composition(
    a: &TreeAutomaton,
    g: &Gate,
    budget: usize,
) -> Result<TreeAutomaton, GateError> {
    let mut base = a.clone();
    base.reduce();
    base.tag()?;

    // Shorthands carrying the budget; sums are reduced right away so later
    // stages start from the smallest equivalent form.
    let prj = |t: u32, b: bool| project_budgeted(&base, t, b, budget);
    let bin = |x: &TreeAutomaton, y: &TreeAutomaton, op: BinOp| {
        let mut r = binary_op_budgeted(x, y, op, budget)?;
        r.reduce();
        Ok::<TreeAutomaton, GateError>(r)
    };

    let result = match *g {
        // X swaps the branch contents: take each projection and keep it only
        // on the opposite branch.
        Gate::X { t } => {
            let keep1 = restrict(&prj(t, false)?, t, true);
            let keep0 = restrict(&prj(t, true)?, t, false);
            bin(&keep1, &keep0, BinOp::Add)?
        }
        // Y is X followed by the phases i and -i on the two branches.
        Gate::Y { t } => {
            let keep1 = mult_const(&restrict(&prj(t, false)?, t, true), ConstFactor::OmegaPow(2));
            let keep0 = mult_const(&restrict(&prj(t, true)?, t, false), ConstFactor::OmegaPow(2));
            bin(&keep1, &keep0, BinOp::Sub)?
        }
        Gate::Z { t } => bin(&restrict(&base, t, false), &restrict(&base, t, true), BinOp::Sub)?,
        Gate::H { t } => {
            let spread = prj(t, false)?;
            let flip = restrict(&prj(t, true)?, t, false);
            let neg = restrict(&base, t, true);
            let sum = bin(&bin(&spread, &flip, BinOp::Add)?, &neg, BinOp::Sub)?;
            mult_const(&sum, ConstFactor::InvSqrt2)
        }
        Gate::S { t } => {
            let phased = mult_const(&restrict(&base, t, true), ConstFactor::OmegaPow(2));
            bin(&restrict(&base, t, false), &phased, BinOp::Add)?
        }
        Gate::T { t } => {
            let phased = mult_const(&restrict(&base, t, true), ConstFactor::OmegaPow(1));
            bin(&restrict(&base, t, false), &phased, BinOp::Add)?
        }
        Gate::RxPi2 { t } => {
            let swapped = bin(
                &restrict(&prj(t, false)?, t, true),
                &restrict(&prj(t, true)?, t, false),
                BinOp::Add,
            )?;
            let phased = mult_const(&swapped, ConstFactor::OmegaPow(2));
            let diff = bin(&base, &phased, BinOp::Sub)?;
            mult_const(&diff, ConstFactor::InvSqrt2)
        }
        Gate::RyPi2 { t } => {
            let spread = prj(t, false)?;
            let keep1 = restrict(&base, t, true);
            let flip = restrict(&prj(t, true)?, t, false);
            let sum = bin(&bin(&spread, &keep1, BinOp::Add)?, &flip, BinOp::Sub)?;
            mult_const(&sum, ConstFactor::InvSqrt2)
        }
        Gate::Cnot { c, t } => {
            let flipped = bin(
                &restrict(&prj(t, true)?, t, false),
                &restrict(&prj(t, false)?, t, true),
                BinOp::Add,
            )?;
            bin(&restrict(&base, c, false), &restrict(&flipped, c, true), BinOp::Add)?
        }
        Gate::Cz { c, t } => {
            let zed = bin(&restrict(&base, t, false), &restrict(&base, t, true), BinOp::Sub)?;
            bin(&restrict(&base, c, false), &restrict(&zed, c, true), BinOp::Add)?
        }
        Gate::Toffoli { c1, c2, t } => {
            let flipped = bin(
                &restrict(&prj(t, true)?, t, false),
                &restrict(&prj(t, false)?, t, true),
                BinOp::Add,
            )?;
            let inner = bin(&restrict(&base, c2, false), &restrict(&flipped, c2, true), BinOp::Add)?;
            bin(&restrict(&base, c1, false), &restrict(&inner, c1, true), BinOp::Add)?
        }
        Gate::Fredkin { .. } => unreachable!("applied as a gate sequence"),
    };

    let mut result = result;
    result.untag()?;
    result.reduce();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Symbol;
    use crate::oracle::enumerate_language;
    use crate::tree::StateTree;

    fn amp(a: i64, k: i64) -> AlgebraicAmplitude {
        AlgebraicAmplitude::new(a, 0, 0, 0, k)
    }

    /// The running two-qubit example: language {|00>, |01>} with a
    /// deterministic first split and a nondeterministic second level, tags
    /// 1..=4 in sorted transition order.
    fn tagged_example() -> (TreeAutomaton, [StateId; 5]) {
        let mut a = TreeAutomaton::new(2);
        let root = a.fresh_state();
        let ql = a.fresh_state();
        let qr = a.fresh_state();
        let q0 = a.fresh_state();
        let q1 = a.fresh_state();
        a.add_root(root);
        a.add_internal(root, 1, ql, qr);
        a.add_internal(ql, 2, q1, q0);
        a.add_internal(ql, 2, q0, q1);
        a.add_internal(qr, 2, q0, q0);
        a.add_leaf(q0, amp(0, 0));
        a.add_leaf(q1, amp(1, 0));
        a.tag().unwrap();
        (a, [root, ql, qr, q0, q1])
    }

    fn tag_of(a: &TreeAutomaton, parent: StateId, left: StateId, right: StateId) -> Tag {
        a.internal_transitions()
            .find(|t| t.parent == parent && t.left == left && t.right == right)
            .and_then(|t| t.symbol.tag)
            .expect("transition present and tagged")
    }

    #[test]
    fn tagging_is_deterministic_and_distinct() {
        let (a, _) = tagged_example();
        let tags: BTreeSet<_> = a.internal_transitions().map(|t| t.symbol.tag.unwrap()).collect();
        assert_eq!(tags.len(), 4);
        assert_eq!(
            tags,
            BTreeSet::from([Tag::Single(1), Tag::Single(2), Tag::Single(3), Tag::Single(4)])
        );
    }

    /// The full push-down / substitute / pull-up cycle on the worked
    /// two-qubit example, checked structurally at every stage.
    #[test]
    fn projection_stages_match_worked_example() {
        let (a, [root, ql, qr, q0, q1]) = tagged_example();
        let h1 = tag_of(&a, root, ql, qr);
        let t_on0 = tag_of(&a, ql, q1, q0);
        let t_on1 = tag_of(&a, ql, q0, q1);
        let t_zero = tag_of(&a, qr, q0, q0);
        // Sorted transition order: (q0,q1) sorts before (q1,q0).
        assert_eq!((h1, t_on1, t_on0, t_zero), (Tag::Single(1), Tag::Single(2), Tag::Single(3), Tag::Single(4)));

        // Push x1 below the second level: two merged transitions from the
        // root, each re-firing x1 underneath.
        let sw = fswap(&a, 1, usize::MAX).unwrap();
        let pairs: Vec<_> = sw
            .internal_transitions()
            .filter(|t| matches!(t.symbol.tag, Some(Tag::Pair(_, _))))
            .copied()
            .collect();
        assert_eq!(pairs.len(), 2);
        let find_pair = |i: u64, j: u64| {
            pairs
                .iter()
                .find(|t| t.symbol.tag == Some(Tag::Pair(i, j)))
                .copied()
                .unwrap_or_else(|| panic!("missing pair {i},{j}"))
        };
        let p24 = find_pair(2, 4);
        let p34 = find_pair(3, 4);
        assert_eq!(p24.symbol.qubit, 2);
        assert_eq!(p24.parent, root);
        assert_eq!(p34.parent, root);
        // Pair (2,4) merges the |01>-shaped transition (q0, q1) with the zero
        // branch (q0, q0): pushed-down lefts (q0, q0), rights (q1, q0).
        let under = |q: StateId| {
            let ts: Vec<_> = sw.internal_transitions().filter(|t| t.parent == q).collect();
            assert_eq!(ts.len(), 1);
            (ts[0].symbol, ts[0].left, ts[0].right)
        };
        let (s, l, r) = under(p24.left);
        assert_eq!((s.qubit, s.tag), (1, Some(Tag::Single(1))));
        assert_eq!((l, r), (q0, q0));
        let (_, l, r) = under(p24.right);
        assert_eq!((l, r), (q1, q0));
        let (_, l, r) = under(p34.left);
        assert_eq!((l, r), (q1, q0));
        let (_, l, r) = under(p34.right);
        assert_eq!((l, r), (q0, q0));

        // Substitute x1 := 1: copy right children over both branches.
        let copied = scopy(&sw, 1, true).unwrap();
        for t in copied.internal_transitions().filter(|t| t.symbol.qubit == 1) {
            assert_eq!(t.left, t.right);
            assert_eq!(copied.leaf_amplitude(t.left), Some(&amp(0, 0)));
        }

        // Pull x1 back up; x2 recovers its original single tags.
        let back = bswap(&copied, 1, usize::MAX).unwrap();
        let roots: Vec<_> = back.roots().iter().copied().collect();
        assert_eq!(roots.len(), 1);
        let top: Vec<_> = back.internal_transitions().filter(|t| t.parent == roots[0]).collect();
        assert_eq!(top.len(), 2);
        for t in &top {
            assert_eq!((t.symbol.qubit, t.symbol.tag), (1, Some(Tag::Single(1))));
        }
        let mut second_tags = BTreeSet::new();
        for t in &top {
            for side in [t.left, t.right] {
                for tr in back.internal_transitions().filter(|tr| tr.parent == side) {
                    assert_eq!(tr.symbol.qubit, 2);
                    assert_eq!(tr.left, tr.right);
                    second_tags.insert(tr.symbol.tag.unwrap());
                }
            }
        }
        assert_eq!(
            second_tags,
            BTreeSet::from([Tag::Single(2), Tag::Single(3), Tag::Single(4)])
        );

        // Language check: both surviving trees are |0>-collapsed on qubit 1
        // with the original second-level structure substituted to zeros.
        let zz = StateTree::Leaf(amp(0, 0));
        let langs = enumerate_language(&back, 8).unwrap();
        assert_eq!(langs.len(), 2);
        let mk = |left_tag: u64, right_tag: u64| {
            StateTree::tagged_node(
                1,
                Tag::Single(1),
                StateTree::tagged_node(2, Tag::Single(left_tag), zz.clone(), zz.clone()),
                StateTree::tagged_node(2, Tag::Single(right_tag), zz.clone(), zz.clone()),
            )
        };
        assert!(langs.contains(&mk(2, 4)));
        assert!(langs.contains(&mk(3, 4)));
    }

    #[test]
    fn projection_language_semantics() {
        // project substitutes a constant: on {|00>, |01>} substituting
        // x2 := 1 turns |00> into x2-both-branches of its 1-branch, etc.
        let (a, _) = tagged_example();
        let p = project(&a, 2, true).unwrap();
        let lang: BTreeSet<StateTree> =
            enumerate_language(&p, 8).unwrap().iter().map(StateTree::strip_tags).collect();
        // |00> has 1-branch amplitude 0 at x2: becomes the all-zero tree.
        // |01> has 1-branch amplitude 1: both branches become 1.
        let zero = StateTree::Leaf(amp(0, 0));
        let one = StateTree::Leaf(amp(1, 0));
        let t_zero = StateTree::node(1, StateTree::node(2, zero.clone(), zero.clone()), StateTree::node(2, zero.clone(), zero.clone()));
        let t_one = StateTree::node(1, StateTree::node(2, one.clone(), one.clone()), StateTree::node(2, zero.clone(), zero.clone()));
        assert_eq!(lang, BTreeSet::from([t_zero, t_one]));
    }

    #[test]
    fn restrict_zeroes_the_discarded_branch() {
        let (a, _) = tagged_example();
        let r = restrict(&a, 2, false);
        let lang: BTreeSet<StateTree> =
            enumerate_language(&r, 8).unwrap().iter().map(StateTree::strip_tags).collect();
        let zero = StateTree::Leaf(amp(0, 0));
        let one = StateTree::Leaf(amp(1, 0));
        // |00> keeps its 0-branch (amplitude 1 at x2=0); |01> loses its only
        // nonzero leaf.
        let kept = StateTree::node(1, StateTree::node(2, one, zero.clone()), StateTree::node(2, zero.clone(), zero.clone()));
        let zeroed = StateTree::node(1, StateTree::node(2, zero.clone(), zero.clone()), StateTree::node(2, zero.clone(), zero));
        assert_eq!(lang, BTreeSet::from([kept, zeroed]));
    }

    #[test]
    fn binary_op_pairs_by_tag() {
        let (a, _) = tagged_example();
        // A - A pairs each tree with itself: the all-zero tree, twice the
        // structure, once per nondeterministic branch.
        let d = binary_op(&a, &a, BinOp::Sub).unwrap();
        let lang = enumerate_language(&d, 8).unwrap();
        assert_eq!(lang.len(), 2, "two tag-structures survive");
        for t in &lang {
            for leaf in t.amplitudes() {
                assert!(leaf.is_zero());
            }
        }
    }

    #[test]
    fn binary_op_disjoint_tags_empty() {
        let (a, _) = tagged_example();
        // The same automaton with tags 5..=8: no symbol ever matches.
        let mut c = TreeAutomaton::new(2);
        let map = c.import(&a);
        for &r in a.roots() {
            c.add_root(map[&r]);
        }
        let shifted: Vec<_> = c.internal_transitions().copied().collect();
        for t in &shifted {
            c.remove_internal(t);
        }
        for t in &shifted {
            let Some(Tag::Single(i)) = t.symbol.tag else { panic!() };
            c.add_internal_tagged(
                t.parent,
                Symbol { qubit: t.symbol.qubit, tag: Some(Tag::Single(i + 4)) },
                t.left,
                t.right,
            );
        }
        let d = binary_op(&a, &c, BinOp::Add).unwrap();
        assert_eq!(enumerate_language(&d, 8).unwrap().len(), 0);
    }

    #[test]
    fn size_mismatch_rejected() {
        let a = TreeAutomaton::all_basis_states(2);
        let b = TreeAutomaton::all_basis_states(3);
        assert_eq!(binary_op(&a, &b, BinOp::Add).unwrap_err(), GateError::SizeMismatch(2, 3));
    }

    #[test]
    fn untagged_projection_below_bottom_errors() {
        let mut a = TreeAutomaton::all_basis_states(2);
        a.reduce();
        // Projection of x1 over n=2 needs one swap; untagged input cannot.
        assert_eq!(project(&a, 1, false).unwrap_err(), GateError::SwapNeedsSingleTags(1));
        // Bottom-level projection needs no tags at all.
        assert!(project(&a, 2, false).is_ok());
    }
}
