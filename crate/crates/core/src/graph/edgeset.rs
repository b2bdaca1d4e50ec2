use std::fmt;

use super::EdgeId;

/// A set of edge ids over a fixed universe `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    universe: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(universe: usize) -> Self {
        EdgeSet { universe, words: vec![0; universe.div_ceil(64)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for e in 0..universe {
            s.insert(e);
        }
        s
    }

    pub fn from_edges<I: IntoIterator<Item = EdgeId>>(universe: usize, edges: I) -> Self {
        let mut s = Self::new(universe);
        for e in edges {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `e`, returning whether it was newly added.
    ///
    /// Panics if `e` is outside the universe.
    pub fn insert(&mut self, e: EdgeId) -> bool {
        assert!(e < self.universe, "edge {e} outside universe {}", self.universe);
        let (w, b) = (e / 64, e % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        if e >= self.universe {
            return false;
        }
        let (w, b) = (e / 64, e % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.universe && self.words[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let universe = self.universe.max(other.universe);
        let mut out = EdgeSet::new(universe);
        for (i, w) in out.words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0);
        }
        out
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::new(self.universe);
        for (i, w) in out.words.iter_mut().enumerate() {
            *w = self.words[i] & other.words.get(i).copied().unwrap_or(0);
        }
        out
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = self.clone();
        for (i, w) in out.words.iter_mut().enumerate() {
            *w &= !other.words.get(i).copied().unwrap_or(0);
        }
        out
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a = EdgeSet::from_edges(130, [0, 5, 64, 129]);
        let b = EdgeSet::from_edges(130, [5, 6]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.to_vec(), vec![0, 5, 64, 129]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 64, 129]);
        assert!(!a.is_disjoint(&b));
        assert!(EdgeSet::from_edges(130, [5]).is_subset(&b));
    }

    #[test]
    fn insert_remove() {
        let mut s = EdgeSet::new(3);
        assert!(s.is_empty());
        assert!(s.insert(2));
        assert!(!s.insert(2));
        assert!(s.remove(2));
        assert!(!s.contains(2));
        assert_eq!(EdgeSet::full(3).len(), 3);
    }
}
