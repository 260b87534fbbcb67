//! Fixed-universe bit set over vertex ids `0..n`.
//!
//! All set-valued computations in this crate (neighborhoods, components,
//! partition blocks) run on this type; it stays cheap even when the graph
//! itself is stored as adjacency lists.

/// Bit set over a fixed universe `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VertexSet(|{}| of {}: ", self.count(), self.n)?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}

impl VertexSet {
    /// Empty set over universe `0..n`.
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    /// Full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for w in &mut s.words {
            *w = !0;
        }
        s.mask_tail();
        s
    }

    pub fn from_slice(n: usize, vs: &[u32]) -> Self {
        let mut s = Self::new(n);
        for &v in vs {
            s.insert(v as usize);
        }
        s
    }

    fn mask_tail(&mut self) {
        let used = self.n % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.n == 0 {
            self.words.clear();
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    /// Inserts `v`; returns true if it was not present.
    pub fn insert(&mut self, v: usize) -> bool {
        debug_assert!(v < self.n);
        let (w, b) = (v / 64, v % 64);
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] |= 1 << b;
        !had
    }

    /// Removes `v`; returns true if it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        debug_assert!(v < self.n);
        let (w, b) = (v / 64, v % 64);
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        had
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn clear(&mut self) {
        for w in &mut self.words {
            *w = 0;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn invert(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        self.mask_tail();
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Ascending iterator over elements.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let b = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    /// Ascending `Vec<u32>` of elements.
    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().map(|v| v as u32).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    /// Collects from an iterator; the universe is sized to the largest element.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let vs: Vec<usize> = iter.into_iter().collect();
        let n = vs.iter().max().map_or(0, |&m| m + 1);
        let mut s = Self::new(n);
        for v in vs {
            s.insert(v);
        }
        s
    }
}
