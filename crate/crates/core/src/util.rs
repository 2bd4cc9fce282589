//! Small deterministic helpers shared across modules and tests.

/// SplitMix64 pseudo-random generator.
///
/// Used wherever the library needs seeded, platform-independent sampling
/// (float-mode unitaries, test relabelings). Not cryptographic.
#[derive(Clone, Debug)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `0..bound` (`bound > 0`).
    pub fn next_below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i + 1);
            items.swap(i, j);
        }
    }

    /// A random permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}

// Fixed-width bitset rows used by the poset order matrices.

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn bit_get(row: &[u64], i: usize) -> bool {
    row[i >> 6] & (1u64 << (i & 63)) != 0
}

pub(crate) fn bit_set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1u64 << (i & 63);
}

pub(crate) fn row_popcount(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// Popcount of `a & b` without materializing the intersection.
pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Is `a` a subset of `b`?
pub(crate) fn row_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Indices of set bits, ascending, skipping zero words.
pub(crate) fn row_iter(row: &[u64], n: usize) -> BitIter<'_> {
    BitIter {
        row,
        next_word: 0,
        current: 0,
        base: 0,
        limit: n,
    }
}

pub(crate) struct BitIter<'a> {
    row: &'a [u64],
    next_word: usize,
    current: u64,
    base: usize,
    limit: usize,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let offset = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                let index = self.base + offset;
                // Rows never carry bits at or beyond the element count.
                return (index < self.limit).then_some(index);
            }
            if self.next_word >= self.row.len() {
                return None;
            }
            self.current = self.row[self.next_word];
            self.base = self.next_word * 64;
            self.next_word += 1;
        }
    }
}
