//! Full binary trees as concrete quantum states.
//!
//! An `n`-qubit state is a full binary tree of height `n`: internal nodes at
//! depth `d` are labelled with variable `x_{d+1}` (qubit `d+1`, with qubit 1
//! the most significant position), the left child is the `x = 0` branch, and
//! each of the `2^n` leaves carries the exact amplitude of one computational
//! basis state. Reading the branch choices from root to leaf spells the basis
//! bitstring most-significant-bit first, which matches the indexing of
//! [`StateVector`].

use crate::amplitude::AlgebraicAmplitude;
use std::fmt;

/// Auxiliary marker attached to internal symbols while structure-preserving
/// operations run. `Single` marks one original tree level; `Pair` records two
/// levels merged during a swap and is always resolved before results surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Single(u64),
    Pair(u64, u64),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Single(i) => write!(f, "{i}"),
            Tag::Pair(i, j) => write!(f, "{i},{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("tree node for qubit {found} where qubit {expected} was expected")]
    MisplacedNode { expected: u32, found: u32 },
    #[error("tree leaf at depth {depth}, expected depth {expected}")]
    MisplacedLeaf { depth: u32, expected: u32 },
    #[error("vector length {0} is not a power of two")]
    BadVectorLength(usize),
}

/// A concrete state tree: leaves hold amplitudes, internal nodes are labelled
/// by qubit (and possibly a [`Tag`]).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateTree {
    Leaf(AlgebraicAmplitude),
    Node {
        qubit: u32,
        tag: Option<Tag>,
        left: Box<StateTree>,
        right: Box<StateTree>,
    },
}

impl StateTree {
    pub fn leaf(amp: AlgebraicAmplitude) -> Self {
        StateTree::Leaf(amp)
    }

    pub fn node(qubit: u32, left: StateTree, right: StateTree) -> Self {
        StateTree::Node {
            qubit,
            tag: None,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn tagged_node(qubit: u32, tag: Tag, left: StateTree, right: StateTree) -> Self {
        StateTree::Node {
            qubit,
            tag: Some(tag),
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Checks that this is a well-formed `n`-qubit state tree: each internal
    /// node at depth `d` is labelled `x_{d+1}` and all leaves sit at depth `n`.
    pub fn check_shape(&self, n: u32) -> Result<(), TreeError> {
        self.check_at(0, n)
    }

    fn check_at(&self, depth: u32, n: u32) -> Result<(), TreeError> {
        match self {
            StateTree::Leaf(_) => {
                if depth == n {
                    Ok(())
                } else {
                    Err(TreeError::MisplacedLeaf { depth, expected: n })
                }
            }
            StateTree::Node { qubit, left, right, .. } => {
                if *qubit != depth + 1 {
                    return Err(TreeError::MisplacedNode { expected: depth + 1, found: *qubit });
                }
                left.check_at(depth + 1, n)?;
                right.check_at(depth + 1, n)
            }
        }
    }

    /// The same tree with all tags removed.
    pub fn strip_tags(&self) -> StateTree {
        match self {
            StateTree::Leaf(a) => StateTree::Leaf(a.clone()),
            StateTree::Node { qubit, left, right, .. } => {
                StateTree::node(*qubit, left.strip_tags(), right.strip_tags())
            }
        }
    }

    /// All tags in the tree, in root-to-leaf, left-to-right order.
    pub fn tags(&self) -> Vec<Tag> {
        let mut out = Vec::new();
        self.collect_tags(&mut out);
        out
    }

    fn collect_tags(&self, out: &mut Vec<Tag>) {
        if let StateTree::Node { tag, left, right, .. } = self {
            if let Some(t) = tag {
                out.push(*t);
            }
            left.collect_tags(out);
            right.collect_tags(out);
        }
    }

    /// Leaf amplitudes in left-to-right order, one per basis bitstring in
    /// ascending order.
    pub fn amplitudes(&self) -> Vec<AlgebraicAmplitude> {
        let mut out = Vec::new();
        self.collect_amps(&mut out);
        out
    }

    fn collect_amps(&self, out: &mut Vec<AlgebraicAmplitude>) {
        match self {
            StateTree::Leaf(a) => out.push(a.clone()),
            StateTree::Node { left, right, .. } => {
                left.collect_amps(out);
                right.collect_amps(out);
            }
        }
    }

    /// Converts to a dense vector; fails if the shape is not a well-formed
    /// `n`-qubit tree for some `n`. Tags are ignored.
    pub fn to_vector(&self) -> Result<StateVector, TreeError> {
        let n = self.depth_of_first_leaf();
        self.check_shape(n)?;
        Ok(StateVector { n, amps: self.amplitudes() })
    }

    fn depth_of_first_leaf(&self) -> u32 {
        match self {
            StateTree::Leaf(_) => 0,
            StateTree::Node { left, .. } => 1 + left.depth_of_first_leaf(),
        }
    }

    /// Renders the nonzero part in Dirac notation, e.g.
    /// `1/sqrt(2)*1|00> + 1/sqrt(2)*1|11>`, or `0` for the zero vector.
    pub fn dirac(&self) -> String {
        let amps = self.amplitudes();
        let n = self.depth_of_first_leaf() as usize;
        let mut terms = Vec::new();
        for (i, a) in amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let bits: String = (0..n).rev().map(|b| if i >> b & 1 == 1 { '1' } else { '0' }).collect();
            terms.push(format!("{}|{}>", a.pretty(), bits));
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for StateTree {
    /// Functional rendering, e.g. `x1(x2((0,0,0,0,0),(1,0,0,0,0)),x2(...))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateTree::Leaf(a) => write!(f, "{a}"),
            StateTree::Node { qubit, tag, left, right } => {
                match tag {
                    Some(t) => write!(f, "x{qubit}^[{t}]({left},{right})"),
                    None => write!(f, "x{qubit}({left},{right})"),
                }
            }
        }
    }
}

/// Dense state vector over `n` qubits; index bits read qubit 1 first
/// (most-significant-bit first), so `|q1 q2 ... qn>` sits at index
/// `q1*2^(n-1) + ... + qn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    n: u32,
    amps: Vec<AlgebraicAmplitude>,
}

impl StateVector {
    pub fn new(n: u32, amps: Vec<AlgebraicAmplitude>) -> Result<Self, TreeError> {
        if amps.len() != 1usize << n {
            return Err(TreeError::BadVectorLength(amps.len()));
        }
        Ok(StateVector { n, amps })
    }

    /// The basis state `|bits>`, with `bits[0]` the value of qubit 1.
    pub fn basis_state(bits: &[bool]) -> Self {
        let n = bits.len() as u32;
        let mut amps = vec![AlgebraicAmplitude::zero(); 1 << n];
        let mut idx = 0usize;
        for &b in bits {
            idx = idx << 1 | usize::from(b);
        }
        amps[idx] = AlgebraicAmplitude::one();
        StateVector { n, amps }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn amps(&self) -> &[AlgebraicAmplitude] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> &AlgebraicAmplitude {
        &self.amps[index]
    }

    /// Value of 1-based `qubit` in basis index `index`.
    pub fn bit_of(index: usize, qubit: u32, n: u32) -> bool {
        debug_assert!(qubit >= 1 && qubit <= n);
        index >> (n - qubit) & 1 == 1
    }

    /// Basis `index` with 1-based `qubit` forced to `value`.
    pub fn with_bit(index: usize, qubit: u32, n: u32, value: bool) -> usize {
        let mask = 1usize << (n - qubit);
        if value {
            index | mask
        } else {
            index & !mask
        }
    }

    /// Builds the untagged state tree for this vector: the first half of the
    /// indices (qubit 1 equal to 0) becomes the left subtree.
    pub fn to_tree(&self) -> StateTree {
        Self::build_tree(&self.amps, 1)
    }

    fn build_tree(slice: &[AlgebraicAmplitude], qubit: u32) -> StateTree {
        if slice.len() == 1 {
            return StateTree::Leaf(slice[0].clone());
        }
        let mid = slice.len() / 2;
        StateTree::node(
            qubit,
            Self::build_tree(&slice[..mid], qubit + 1),
            Self::build_tree(&slice[mid..], qubit + 1),
        )
    }
}
