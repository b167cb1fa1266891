//! Ground sets and subsets.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Finite universe with labels in a fixed index order.
///
/// Index order never changes after construction; every tie-break in the
/// crate is by smallest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Arc<GroundSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(GroundSet { labels, index }))
    }

    /// Ground set labelled `"0"`, `"1"`, ...
    pub fn indexed(n: usize) -> Arc<GroundSet> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index = labels.iter().cloned().zip(0..).collect();
        Arc::new(GroundSet { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset<I: IntoIterator<Item = usize>>(&self, elems: I) -> Result<Subset> {
        Subset::from_indices(self.len(), elems)
    }
}

/// Membership bitset over a universe `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: FixedBitSet,
}

impl Subset {
    pub fn empty(n: usize) -> Subset {
        Subset { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Subset {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Subset { bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> Result<Subset> {
        let mut s = Subset::empty(n);
        for e in elems {
            if e >= n {
                return Err(Error::IndexOutOfRange { index: e, n });
            }
            s.bits.insert(e);
        }
        Ok(s)
    }

    /// Bit `i` of `mask` is element `i`. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Subset {
        debug_assert!(n <= 64 && (n == 64 || mask >> n == 0));
        let mut s = Subset::empty(n);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s.bits.insert(i);
            m &= m - 1;
        }
        s
    }

    /// Inverse of [`Subset::from_mask`]; `None` if the universe exceeds 64.
    pub fn to_mask(&self) -> Option<u64> {
        if self.universe() > 64 {
            return None;
        }
        Some(self.bits.ones().fold(0u64, |m, i| m | (1 << i)))
    }

    /// Size of the universe this subset lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn with(&self, i: usize) -> Subset {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Subset {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    /// `self ∪ {add} ∖ {drop}`.
    pub fn swap(&self, add: usize, drop: usize) -> Subset {
        let mut s = self.clone();
        s.remove(drop);
        s.insert(add);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subset { bits }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset { bits }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Subset { bits }
    }

    pub fn complement(&self) -> Subset {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Subset { bits }
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.bits.ones())
    }
}

/// Iterates all `k`-element masks over `n <= 63` bits in increasing order.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(cur)
    })
}
