use std::fmt;

use crate::error::{Result, RzfError};

/// Dense vertex identifier in `[0, n)`.
pub type VertexId = usize;

/// A set of vertices of a fixed-order graph, stored as a bitmask.
///
/// This is the Markov state of the process: the currently blue vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlueSet {
    n: usize,
    words: Vec<u64>,
}

impl BlueSet {
    pub fn empty(n: usize) -> Self {
        BlueSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut set = BlueSet::empty(n);
        for v in 0..n {
            set.insert(v);
        }
        set
    }

    pub fn singleton(n: usize, v: VertexId) -> Result<Self> {
        Self::from_vertices(n, [v])
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut set = BlueSet::empty(n);
        for v in vertices {
            if v >= n {
                return Err(RzfError::VertexOutOfRange { vertex: v, n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Builds a set from the low `n` bits of `mask`. Bits at or above `n` are ignored.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut set = BlueSet::empty(n);
        if n > 0 {
            let keep = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
            set.words[0] = mask & keep;
        }
        set
    }

    /// The bitmask form, available when the order fits in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Order of the ambient graph.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        let word = &mut self.words[v / 64];
        let bit = 1u64 << (v % 64);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        if v >= self.n {
            return false;
        }
        let word = &mut self.words[v / 64];
        let bit = 1u64 << (v % 64);
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn is_subset(&self, other: &BlueSet) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BlueSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &BlueSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn complement(&self) -> BlueSet {
        let mut out = BlueSet::full(self.n);
        for (a, b) in out.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        out
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    /// Non-members in ascending order.
    pub fn iter_white(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(move |&v| !self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl fmt::Debug for BlueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
