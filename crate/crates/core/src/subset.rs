//! Subsets of the simple-root index set `{0, .., r-1}` as bitmasks.

use std::fmt;

/// Largest rank a [`NodeSet`] can index.
pub const MAX_NODES: usize = 32;

/// A subset of simple-root indices. Indices are 0-based in the API; reports
/// print them 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSet(u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn full(r: usize) -> NodeSet {
        assert!(r <= MAX_NODES, "rank {r} exceeds {MAX_NODES}");
        if r == MAX_NODES {
            NodeSet(u32::MAX)
        } else {
            NodeSet((1u32 << r) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> NodeSet {
        NodeSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(i: usize) -> NodeSet {
        assert!(i < MAX_NODES);
        NodeSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> NodeSet {
        indices
            .into_iter()
            .fold(NodeSet::EMPTY, |s, i| s.union(NodeSet::singleton(i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_NODES && self.0 & (1 << i) != 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: NodeSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_NODES).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based member list, as printed in reports.
    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Complement inside `{0, .., r-1}`.
    pub fn complement(self, r: usize) -> NodeSet {
        NodeSet::full(r).difference(self)
    }

    /// All `2^r` subsets of `{0, .., r-1}` in increasing bitmask order.
    pub fn all(r: usize) -> impl Iterator<Item = NodeSet> {
        assert!(r < MAX_NODES, "cannot enumerate subsets of rank {r}");
        (0..1u32 << r).map(NodeSet)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(NodeSet(cur))
        })
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}
