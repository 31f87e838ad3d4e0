//! Handle-indexed binary min-heap of per-pair candidate edges.

use std::cmp::Ordering;

/// A candidate edge `(u, v)` with `u < v`, ordered by length and then by
/// endpoint indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateKey {
    pub length: f64,
    pub u: u32,
    pub v: u32,
}

impl CandidateKey {
    pub fn new(length: f64, a: usize, b: usize) -> Self {
        CandidateKey { length, u: a.min(b) as u32, v: a.max(b) as u32 }
    }

    #[inline]
    pub fn order(&self, other: &Self) -> Ordering {
        self.length.total_cmp(&other.length).then(self.u.cmp(&other.u)).then(self.v.cmp(&other.v))
    }
}

/// Queue entry: the current candidate of one well-separated pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateEntry {
    pub pair: u32,
    pub key: CandidateKey,
}

impl CandidateEntry {
    #[inline]
    fn order(&self, other: &Self) -> Ordering {
        self.key.order(&other.key).then(self.pair.cmp(&other.pair))
    }

    #[inline]
    fn less(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Less
    }
}

const ABSENT: u32 = u32::MAX;

/// Min-heap holding at most one entry per pair index in `0..capacity`.
#[derive(Debug, Clone)]
pub struct PairQueue {
    heap: Vec<CandidateEntry>,
    pos: Vec<u32>,
}

impl PairQueue {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity < ABSENT as usize, "too many pairs for u32 handles");
        PairQueue { heap: Vec::new(), pos: vec![ABSENT; capacity] }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, pair: usize) -> bool {
        self.pos[pair] != ABSENT
    }

    pub fn get(&self, pair: usize) -> Option<&CandidateEntry> {
        let p = self.pos[pair];
        (p != ABSENT).then(|| &self.heap[p as usize])
    }

    pub fn peek_min(&self) -> Option<&CandidateEntry> {
        self.heap.first()
    }

    /// Live entries in heap order (not sorted).
    pub fn entries(&self) -> &[CandidateEntry] {
        &self.heap
    }

    pub fn insert(&mut self, entry: CandidateEntry) {
        let pair = entry.pair as usize;
        assert!(!self.contains(pair), "pair {pair} already queued");
        self.heap.push(entry);
        let i = self.heap.len() - 1;
        self.pos[pair] = i as u32;
        self.sift_up(i);
    }

    pub fn extract_min(&mut self) -> Option<CandidateEntry> {
        if self.heap.is_empty() {
            return None;
        }
        Some(self.take(0))
    }

    /// Replaces the candidate of `pair`. Keys may only grow.
    pub fn increase_key(&mut self, pair: usize, key: CandidateKey) {
        let i = self.pos[pair];
        assert!(i != ABSENT, "pair {pair} not queued");
        let i = i as usize;
        let old = self.heap[i].key;
        debug_assert!(old.order(&key) != Ordering::Greater, "key of pair {pair} decreased from {old:?} to {key:?}");
        self.heap[i].key = key;
        self.sift_down(i);
        self.sift_up(self.pos[pair] as usize);
    }

    pub fn remove(&mut self, pair: usize) -> Option<CandidateEntry> {
        let i = self.pos[pair];
        (i != ABSENT).then(|| self.take(i as usize))
    }

    fn take(&mut self, i: usize) -> CandidateEntry {
        let last = self.heap.len() - 1;
        self.swap(i, last);
        let out = self.heap.pop().unwrap();
        self.pos[out.pair as usize] = ABSENT;
        if i < self.heap.len() {
            self.sift_down(i);
            self.sift_up(i);
        }
        out
    }

    #[inline]
    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i].pair as usize] = i as u32;
        self.pos[self.heap[j].pair as usize] = j as u32;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.heap[i].less(&self.heap[parent]) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && self.heap[r].less(&self.heap[l]) { r } else { l };
            if self.heap[c].less(&self.heap[i]) {
                self.swap(i, c);
                i = c;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn entry(pair: u32, length: f64) -> CandidateEntry {
        CandidateEntry { pair, key: CandidateKey::new(length, 0, 1) }
    }

    #[test]
    fn extracts_minimum() {
        let mut q = PairQueue::new(3);
        q.insert(entry(0, 3.0));
        q.insert(entry(1, 1.0));
        q.insert(entry(2, 2.0));
        assert_eq!(q.extract_min().unwrap().key.length, 1.0);
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn increase_key_of_minimum() {
        let mut q = PairQueue::new(3);
        q.insert(entry(0, 3.0));
        q.insert(entry(1, 1.0));
        q.insert(entry(2, 2.0));
        q.increase_key(1, CandidateKey::new(5.0, 0, 1));
        assert_eq!(q.extract_min().unwrap().pair, 2);
        assert_eq!(q.extract_min().unwrap().pair, 0);
        assert_eq!(q.extract_min().unwrap().pair, 1);
        assert!(q.extract_min().is_none());
    }

    #[test]
    fn ties_break_by_endpoints_then_pair() {
        let mut q = PairQueue::new(4);
        q.insert(CandidateEntry { pair: 3, key: CandidateKey::new(1.0, 5, 2) });
        q.insert(CandidateEntry { pair: 1, key: CandidateKey::new(1.0, 2, 7) });
        q.insert(CandidateEntry { pair: 0, key: CandidateKey::new(1.0, 2, 5) });
        q.insert(CandidateEntry { pair: 2, key: CandidateKey::new(1.0, 2, 5) });
        let order: Vec<u32> = std::iter::from_fn(|| q.extract_min()).map(|e| e.pair).collect();
        assert_eq!(order, vec![0, 2, 3, 1]);
    }

    #[test]
    #[should_panic(expected = "decreased")]
    #[cfg(debug_assertions)]
    fn decreasing_key_is_rejected() {
        let mut q = PairQueue::new(1);
        q.insert(entry(0, 3.0));
        q.increase_key(0, CandidateKey::new(1.0, 0, 1));
    }

    #[test]
    fn remove_and_contains() {
        let mut q = PairQueue::new(3);
        q.insert(entry(0, 1.0));
        q.insert(entry(2, 2.0));
        assert!(q.contains(2) && !q.contains(1));
        assert_eq!(q.remove(0).unwrap().pair, 0);
        assert!(q.remove(0).is_none());
        assert_eq!(q.peek_min().unwrap().pair, 2);
    }

    /// Random operation sequences checked against a sorted vector.
    #[test]
    fn matches_sorted_list_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let cap = 200;
        let mut q = PairQueue::new(cap);
        let mut oracle: Vec<CandidateEntry> = Vec::new();
        for _ in 0..10_000 {
            let pair = rng.random_range(0..cap);
            match rng.random_range(0..4) {
                0 | 1 if !q.contains(pair) => {
                    let e = CandidateEntry {
                        pair: pair as u32,
                        key: CandidateKey::new(rng.random_range(0..50) as f64, rng.random_range(0..5), 9),
                    };
                    q.insert(e);
                    oracle.push(e);
                }
                2 if q.contains(pair) => {
                    let old = q.get(pair).unwrap().key;
                    let key = CandidateKey::new(old.length + rng.random_range(0..3) as f64, old.u as usize, 9);
                    let key = if key.order(&old) == Ordering::Less { old } else { key };
                    q.increase_key(pair, key);
                    oracle.iter_mut().find(|e| e.pair as usize == pair).unwrap().key = key;
                }
                3 if q.contains(pair) => {
                    q.remove(pair);
                    oracle.retain(|e| e.pair as usize != pair);
                }
                _ => {
                    oracle.sort_by(|a, b| a.order(b));
                    let expected = (!oracle.is_empty()).then(|| oracle.remove(0));
                    assert_eq!(q.extract_min(), expected);
                }
            }
            assert_eq!(q.len(), oracle.len());
        }
    }
}
