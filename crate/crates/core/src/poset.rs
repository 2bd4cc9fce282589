//! Finite posets with a dense order matrix.
//!
//! `FinitePoset` stores the full order relation as bitset rows (one down-set
//! and one up-set per element), which keeps meets, joins, intervals and cover
//! computations cheap at desk scale (a few thousand elements). All values are
//! immutable after construction and every operation is a pure function.

use crate::error::{Error, Result};
use crate::util::{
    and_popcount, bit_get, bit_set, row_iter, row_popcount, row_subset, words_for,
};

/// A finite partially ordered set on elements `0..size`.
///
/// The order matrix is validated on construction: reflexive, antisymmetric,
/// transitive. Labels are opaque strings carried through for output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    words: usize,
    /// `down[j]` is the bitset of `{i : i <= j}`.
    down: Vec<u64>,
    /// `up[i]` is the bitset of `{j : i <= j}`.
    up: Vec<u64>,
    labels: Option<Vec<String>>,
}

/// The unique rank function of a graded poset.
///
/// Ranks start at 1 on minimal elements, are strictly monotone, and increase
/// by exactly 1 along covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    ranks: Vec<u32>,
}

impl RankFunction {
    pub fn rank(&self, element: usize) -> u32 {
        self.ranks[element]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Number of elements at each rank, indexed by `rank - 1`.
    pub fn profile(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.max_rank() as usize];
        for &r in &self.ranks {
            counts[(r - 1) as usize] += 1;
        }
        counts
    }
}

impl FinitePoset {
    /// Builds a poset from a predicate `le(i, j)` meaning `i <= j`.
    pub fn from_le_fn<F>(size: usize, le: F, labels: Option<Vec<String>>) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let words = words_for(size);
        let mut down = vec![0u64; size * words];
        let mut up = vec![0u64; size * words];
        for i in 0..size {
            for j in 0..size {
                if le(i, j) {
                    bit_set(&mut down[j * words..(j + 1) * words], i);
                    bit_set(&mut up[i * words..(i + 1) * words], j);
                }
            }
        }
        Self::from_parts(size, words, down, up, labels)
    }

    /// Builds a poset as the reflexive-transitive closure of a cover relation.
    ///
    /// Fails if the covers contain a cycle (the closure would not be
    /// antisymmetric) or an out-of-range index.
    pub fn from_covers(
        size: usize,
        covers: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let words = words_for(size);
        for &(lo, hi) in covers {
            for ix in [lo, hi] {
                if ix >= size {
                    return Err(Error::IndexOutOfRange {
                        index: ix,
                        size,
                    });
                }
            }
            if lo == hi {
                return Err(Error::NotAPartialOrder(format!(
                    "cover ({lo}, {hi}) is a self-loop"
                )));
            }
        }
        // Kahn topological order over the cover DAG; leftovers mean a cycle.
        let mut lower_of: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut upper_of: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut indeg = vec![0usize; size];
        for &(lo, hi) in covers {
            lower_of[hi].push(lo);
            upper_of[lo].push(hi);
            indeg[hi] += 1;
        }
        let mut queue: Vec<usize> = (0..size).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(size);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            order.push(v);
            for &w in &upper_of[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if order.len() != size {
            return Err(Error::NotAPartialOrder(
                "cover relation contains a cycle".into(),
            ));
        }
        let mut down = vec![0u64; size * words];
        for &v in &order {
            let mut row = vec![0u64; words];
            bit_set(&mut row, v);
            for &lo in &lower_of[v] {
                for w in 0..words {
                    row[w] |= down[lo * words + w];
                }
            }
            down[v * words..(v + 1) * words].copy_from_slice(&row);
        }
        let mut up = vec![0u64; size * words];
        for j in 0..size {
            let row = &down[j * words..(j + 1) * words];
            for i in row_iter(row, size) {
                bit_set(&mut up[i * words..(i + 1) * words], j);
            }
        }
        Self::from_parts(size, words, down, up, labels)
    }

    fn from_parts(
        size: usize,
        words: usize,
        down: Vec<u64>,
        up: Vec<u64>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(ls) = &labels {
            if ls.len() != size {
                return Err(Error::NotAPartialOrder(format!(
                    "{} labels for {} elements",
                    ls.len(),
                    size
                )));
            }
        }
        let poset = FinitePoset {
            size,
            words,
            down,
            up,
            labels,
        };
        poset.validate()?;
        Ok(poset)
    }

    /// Checks reflexivity, antisymmetry, and transitivity of the stored order.
    fn validate(&self) -> Result<()> {
        for i in 0..self.size {
            if !self.le(i, i) {
                return Err(Error::NotAPartialOrder(format!(
                    "relation is not reflexive at element {i}"
                )));
            }
        }
        for i in 0..self.size {
            for j in row_iter(self.up_row(i), self.size) {
                if j != i && self.le(j, i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "relation is not antisymmetric on ({i}, {j})"
                    )));
                }
                // Transitivity: i <= j forces down(i) ⊆ down(j).
                if !row_subset(self.down_row(i), self.down_row(j)) {
                    return Err(Error::NotAPartialOrder(format!(
                        "relation is not transitive through ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_le_fn(n, |i, j| i <= j, None).expect("chain is a poset")
    }

    /// An antichain on `n` points.
    pub fn antichain(n: usize) -> Self {
        Self::from_le_fn(n, |i, j| i == j, None).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, element: usize) -> Option<&str> {
        self.labels.as_ref().map(|ls| ls[element].as_str())
    }

    /// Returns a copy with the given labels (or none).
    pub fn with_labels(&self, labels: Option<Vec<String>>) -> Result<Self> {
        Self::from_parts(
            self.size,
            self.words,
            self.down.clone(),
            self.up.clone(),
            labels,
        )
    }

    pub(crate) fn down_row(&self, j: usize) -> &[u64] {
        &self.down[j * self.words..(j + 1) * self.words]
    }

    pub(crate) fn up_row(&self, i: usize) -> &[u64] {
        &self.up[i * self.words..(i + 1) * self.words]
    }

    /// Is `a <= b`?
    pub fn le(&self, a: usize, b: usize) -> bool {
        bit_get(self.down_row(b), a)
    }

    /// Is `a < b`?
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.size {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.size,
            });
        }
        Ok(())
    }

    /// Elements of the down-set of `j`, ascending.
    pub fn down_set(&self, j: usize) -> Vec<usize> {
        row_iter(self.down_row(j), self.size).collect()
    }

    /// Elements of the up-set of `i`, ascending.
    pub fn up_set(&self, i: usize) -> Vec<usize> {
        row_iter(self.up_row(i), self.size).collect()
    }

    pub fn down_size(&self, j: usize) -> usize {
        row_popcount(self.down_row(j))
    }

    pub fn up_size(&self, i: usize) -> usize {
        row_popcount(self.up_row(i))
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Result<Option<usize>> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.meet_idx(a, b))
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Result<Option<usize>> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.join_idx(a, b))
    }

    /// Meet without index validation. `None` when the common lower bounds
    /// have no greatest element.
    pub(crate) fn meet_idx(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<u64> = self
            .down_row(a)
            .iter()
            .zip(self.down_row(b))
            .map(|(x, y)| x & y)
            .collect();
        // Single pass keeps the running candidate; if a greatest element
        // exists, every earlier candidate lies below it, so the pass ends
        // there. A final subset check rejects non-lattices.
        let mut best: Option<usize> = None;
        for g in row_iter(&lower, self.size) {
            match best {
                None => best = Some(g),
                Some(m) => {
                    if self.le(m, g) {
                        best = Some(g);
                    }
                }
            }
        }
        let m = best?;
        if row_subset(&lower, self.down_row(m)) {
            Some(m)
        } else {
            None
        }
    }

    pub(crate) fn join_idx(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<u64> = self
            .up_row(a)
            .iter()
            .zip(self.up_row(b))
            .map(|(x, y)| x & y)
            .collect();
        let mut best: Option<usize> = None;
        for g in row_iter(&upper, self.size) {
            match best {
                None => best = Some(g),
                Some(m) => {
                    if self.le(g, m) {
                        best = Some(g);
                    }
                }
            }
        }
        let m = best?;
        if row_subset(&upper, self.up_row(m)) {
            Some(m)
        } else {
            None
        }
    }

    /// Elements with no strictly larger element.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| self.up_size(i) == 1).collect()
    }

    /// Elements with no strictly smaller element.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&j| self.down_size(j) == 1).collect()
    }

    /// The least element, if the poset has one.
    pub fn least_element(&self) -> Option<usize> {
        let mins = self.minimal_elements();
        match mins.as_slice() {
            [z] if self.up_size(*z) == self.size => Some(*z),
            _ => None,
        }
    }

    /// The greatest element, if the poset has one.
    pub fn greatest_element(&self) -> Option<usize> {
        let maxs = self.maximal_elements();
        match maxs.as_slice() {
            [t] if self.down_size(*t) == self.size => Some(*t),
            _ => None,
        }
    }

    /// The induced subposet on the given elements.
    ///
    /// `elements` must be strictly increasing; the result uses positions in
    /// `elements` as its indices and inherits labels.
    pub fn induced(&self, elements: &[usize]) -> Result<Self> {
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotAPartialOrder(
                    "induced subposet needs strictly increasing indices".into(),
                ));
            }
        }
        if let Some(&last) = elements.last() {
            self.check_index(last)?;
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| elements.iter().map(|&e| ls[e].clone()).collect());
        Self::from_le_fn(
            elements.len(),
            |i, j| self.le(elements[i], elements[j]),
            labels,
        )
    }

    /// The interval `[a, b]` as an induced subposet.
    pub fn interval(&self, a: usize, b: usize) -> Result<Self> {
        self.induced(&self.interval_elements(a, b)?)
    }

    /// Original indices of the elements of `[a, b]`, ascending.
    pub fn interval_elements(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.check_index(a)?;
        self.check_index(b)?;
        if !self.le(a, b) {
            return Err(Error::EmptyInterval { lower: a, upper: b });
        }
        let members: Vec<u64> = self
            .up_row(a)
            .iter()
            .zip(self.down_row(b))
            .map(|(x, y)| x & y)
            .collect();
        Ok(row_iter(&members, self.size).collect())
    }

    /// Cartesian product with componentwise order.
    ///
    /// Element `x` of the product decomposes row-major: the first factor is
    /// the most significant digit. Labels combine as `(l1,l2,...)` when every
    /// factor is labeled.
    pub fn product(factors: &[&FinitePoset]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyProduct);
        }
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let sizes: Vec<usize> = factors.iter().map(|p| p.size()).collect();
        let total: usize = sizes.iter().product();
        let decode = |mut x: usize| -> Vec<usize> {
            let mut digits = vec![0usize; sizes.len()];
            for f in (0..sizes.len()).rev() {
                digits[f] = x % sizes[f];
                x /= sizes[f];
            }
            digits
        };
        let coords: Vec<Vec<usize>> = (0..total).map(decode).collect();
        let labels = if factors.iter().all(|p| p.labels().is_some()) {
            Some(
                coords
                    .iter()
                    .map(|digits| {
                        let parts: Vec<&str> = digits
                            .iter()
                            .enumerate()
                            .map(|(f, &d)| factors[f].label(d).unwrap())
                            .collect();
                        format!("({})", parts.join(","))
                    })
                    .collect(),
            )
        } else {
            None
        };
        Self::from_le_fn(
            total,
            |x, y| {
                coords[x]
                    .iter()
                    .zip(&coords[y])
                    .enumerate()
                    .all(|(f, (&a, &b))| factors[f].le(a, b))
            },
            labels,
        )
    }

    /// Cover pairs `(lower, upper)` of the Hasse diagram, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in row_iter(self.up_row(i), self.size) {
                if j != i && and_popcount(self.up_row(i), self.down_row(j)) == 2 {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Evaluates `f` at every element after all strictly smaller elements.
    ///
    /// `f` receives the element and a slice of already-computed values;
    /// entries for all elements strictly below are guaranteed to be `Some`.
    pub fn well_founded_fold<T, F>(&self, mut f: F) -> Vec<T>
    where
        F: FnMut(usize, &[Option<T>]) -> T,
    {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| (self.down_size(i), i));
        let mut values: Vec<Option<T>> = (0..self.size).map(|_| None).collect();
        for &i in &order {
            let v = f(i, &values);
            values[i] = Some(v);
        }
        values.into_iter().map(|v| v.unwrap()).collect()
    }

    /// The unique rank function if the poset is graded, else `None`.
    ///
    /// The candidate is computed bottom-up (`1 +` the maximum over strictly
    /// smaller elements); the cover condition is then verified on every
    /// comparable pair.
    pub fn rank_function(&self) -> Option<RankFunction> {
        if self.size == 0 {
            return None;
        }
        let ranks_vec = self.well_founded_fold(|i, values| {
            let mut r = 1u32;
            for x in row_iter(self.down_row(i), self.size) {
                if x != i {
                    if let Some(Some(v)) = values.get(x) {
                        r = r.max(v + 1);
                    }
                }
            }
            r
        });
        // Minimality and strict monotonicity hold by construction; the cover
        // condition (covers raise rank by exactly one, and rank steps of one
        // only occur along covers) must be checked.
        for i in 0..self.size {
            for j in row_iter(self.up_row(i), self.size) {
                if j == i {
                    continue;
                }
                let is_cover = and_popcount(self.up_row(i), self.down_row(j)) == 2;
                let step_one = ranks_vec[j] == ranks_vec[i] + 1;
                if is_cover != step_one {
                    return None;
                }
            }
        }
        Some(RankFunction { ranks: ranks_vec })
    }

    /// Length (element count) of a longest chain.
    pub fn height(&self) -> usize {
        if self.size == 0 {
            return 0;
        }
        let heights = self.well_founded_fold(|i, values| {
            let mut h = 1usize;
            for x in row_iter(self.down_row(i), self.size) {
                if x != i {
                    if let Some(Some(v)) = values.get(x) {
                        h = h.max(v + 1);
                    }
                }
            }
            h
        });
        heights.into_iter().max().unwrap()
    }

    /// Applies a permutation to the element indices.
    ///
    /// Element `i` of the original becomes `perm[i]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.size {
            return Err(Error::NotAPartialOrder(
                "permutation length does not match poset size".into(),
            ));
        }
        let mut inverse = vec![usize::MAX; self.size];
        for (i, &p) in perm.iter().enumerate() {
            if p >= self.size || inverse[p] != usize::MAX {
                return Err(Error::NotAPartialOrder("not a permutation".into()));
            }
            inverse[p] = i;
        }
        let labels = self.labels.as_ref().map(|ls| {
            (0..self.size)
                .map(|new| ls[inverse[new]].clone())
                .collect()
        });
        Self::from_le_fn(
            self.size,
            |i, j| self.le(inverse[i], inverse[j]),
            labels,
        )
    }
}
