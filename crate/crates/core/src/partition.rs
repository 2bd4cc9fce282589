//! Set partitions as commutative subalgebras of a diagonal algebra.
//!
//! A partition of the spectrum `{0..n-1}` encodes the subalgebra of functions
//! constant on each block. The order convention, fixed here once and enforced
//! everywhere, is the subalgebra order: a *finer* partition is a *larger*
//! element. The least element is the one-block partition (the scalars) and,
//! when the whole algebra is commutative, the greatest is the partition into
//! singletons.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Default bound on the number of spectrum points accepted by the
/// combinatorial constructors (Bell(7) = 877 elements per copy).
pub const DEFAULT_POINT_GUARD: usize = 7;

/// A set partition of `{0..size-1}` in canonical form.
///
/// Stored as a restricted growth string: `block_of[x]` is the block index of
/// point `x`, and block indices appear in increasing order of their first
/// point. This makes structural equality canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    size: usize,
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from explicit blocks, validating that they are
    /// nonempty, disjoint, and cover the spectrum.
    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block_of = vec![usize::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            for &x in block {
                if x >= size {
                    return Err(Error::MalformedPartition(format!(
                        "point {x} outside spectrum of {size} points"
                    )));
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::MalformedPartition(format!(
                        "point {x} appears in two blocks"
                    )));
                }
                block_of[x] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::MalformedPartition(
                "blocks do not cover the spectrum".into(),
            ));
        }
        Ok(Self::from_raw_assignment(size, &block_of))
    }

    /// Canonicalizes an arbitrary block assignment into a restricted growth
    /// string.
    fn from_raw_assignment(size: usize, assignment: &[usize]) -> Self {
        let cap = assignment.iter().copied().max().map_or(0, |m| m + 1);
        let mut relabel: Vec<Option<usize>> = vec![None; cap];
        let mut next = 0usize;
        let mut block_of = Vec::with_capacity(size);
        for &raw in assignment {
            let id = match relabel[raw] {
                Some(id) => id,
                None => {
                    let id = next;
                    relabel[raw] = Some(id);
                    next += 1;
                    id
                }
            };
            block_of.push(id);
        }
        Partition { size, block_of }
    }

    /// The one-block partition (the scalar subalgebra; the least element).
    pub fn one_block(size: usize) -> Self {
        Partition {
            size,
            block_of: vec![0; size],
        }
    }

    /// The partition into singletons (the full diagonal; the greatest
    /// element).
    pub fn singletons(size: usize) -> Self {
        Partition {
            size,
            block_of: (0..size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    /// Blocks as sorted point lists, ordered by least point.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// Is every block of `self` contained in a block of `coarser`?
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        if self.size != coarser.size {
            return Err(Error::SpectrumMismatch(self.size, coarser.size));
        }
        let mut image = vec![usize::MAX; self.block_count()];
        for x in 0..self.size {
            let b = self.block_of[x];
            let c = coarser.block_of[x];
            if image[b] == usize::MAX {
                image[b] = c;
            } else if image[b] != c {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Partition {
    /// Blocks as comma-joined points separated by `|`, e.g. `0,1|2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        let rendered: Vec<String> = blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rendered.join("|"))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            size: usize,
            blocks: Vec<Vec<usize>>,
        }
        Repr {
            size: self.size,
            blocks: self.blocks(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            size: usize,
            blocks: Vec<Vec<usize>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Partition::from_blocks(repr.size, &repr.blocks).map_err(serde::de::Error::custom)
    }
}

/// Subalgebra order: `p <= q` iff `q` refines `p` (finer partition = larger
/// subalgebra).
pub fn subalgebra_leq(p: &Partition, q: &Partition) -> Result<bool> {
    q.refines(p)
}

/// Meet of two partition subalgebras: the intersection of the subalgebras,
/// i.e. the finest common coarsening (connected components of the merged
/// block graphs).
pub fn meet_partitions(p: &Partition, q: &Partition) -> Result<Partition> {
    if p.size != q.size {
        return Err(Error::SpectrumMismatch(p.size, q.size));
    }
    let n = p.size;
    // Union-find over points, merging within each block of both partitions.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for part in [p, q] {
        for block in part.blocks() {
            for w in block.windows(2) {
                let a = find(&mut parent, w[0]);
                let b = find(&mut parent, w[1]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let assignment: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Ok(Partition::from_raw_assignment(n, &assignment))
}

/// Join of two partition subalgebras: the generated subalgebra, i.e. the
/// common refinement (nonempty pairwise block intersections).
pub fn join_partitions(p: &Partition, q: &Partition) -> Result<Partition> {
    if p.size != q.size {
        return Err(Error::SpectrumMismatch(p.size, q.size));
    }
    let n = p.size;
    let mut pair_id: Vec<Vec<Option<usize>>> =
        vec![vec![None; q.block_count()]; p.block_count()];
    let mut next = 0usize;
    let mut assignment = Vec::with_capacity(n);
    for x in 0..n {
        let slot = &mut pair_id[p.block_of[x]][q.block_of[x]];
        let id = match slot {
            Some(id) => *id,
            None => {
                *slot = Some(next);
                next += 1;
                next - 1
            }
        };
        assignment.push(id);
    }
    Ok(Partition::from_raw_assignment(n, &assignment))
}

/// All partitions of `{0..n-1}` in restricted-growth-string lexicographic
/// order (so the one-block partition comes first and singletons last).
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition {
            size: 0,
            block_of: vec![],
        });
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Partition {
            size: n,
            block_of: rgs.clone(),
        });
        // Next restricted growth string in lexicographic order.
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for slot in rgs.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// The poset of commutative subalgebras of the `n`-point diagonal algebra:
/// all partitions of `n` points under the subalgebra order. Element count is
/// the Bell number of `n`.
pub fn partition_lattice(n: usize) -> Result<FinitePoset> {
    partition_lattice_with_guard(n, DEFAULT_POINT_GUARD)
}

pub fn partition_lattice_with_guard(n: usize, guard: usize) -> Result<FinitePoset> {
    if n == 0 {
        return Err(Error::MalformedSpec(
            "partition lattice needs at least one point".into(),
        ));
    }
    if n > guard {
        return Err(Error::GuardExceeded {
            requested: n,
            guard,
        });
    }
    let parts = enumerate_partitions(n);
    let labels: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    FinitePoset::from_le_fn(
        parts.len(),
        |i, j| parts[j].refines(&parts[i]).unwrap(),
        Some(labels),
    )
}

/// A matrix-block size signature `(n_1, ..., n_k)`, stored sorted descending.
/// Serializes as the plain descending integer array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct AlgebraSpec {
    sizes: Vec<usize>,
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let sizes = Vec::<usize>::deserialize(deserializer)?;
        AlgebraSpec::new(&sizes).map_err(serde::de::Error::custom)
    }
}

impl AlgebraSpec {
    pub fn new(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::MalformedSpec("no block sizes".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::MalformedSpec("block size zero".into()));
        }
        let mut sizes = sizes.to_vec();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AlgebraSpec { sizes })
    }

    /// Parses `"2,1"` style comma-separated sizes.
    pub fn parse(text: &str) -> Result<Self> {
        let sizes: std::result::Result<Vec<usize>, _> =
            text.split(',').map(|t| t.trim().parse::<usize>()).collect();
        match sizes {
            Ok(sizes) => Self::new(&sizes),
            Err(e) => Err(Error::MalformedSpec(format!("{text:?}: {e}"))),
        }
    }

    /// Block sizes, descending.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of matrix blocks `k`.
    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    /// Total spectrum size `N` (sum of the block sizes).
    pub fn total_points(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Ambient dimension over the block-diagonal support.
    pub fn dimension(&self) -> usize {
        self.sizes.iter().map(|n| n * n).sum()
    }

    pub fn is_commutative(&self) -> bool {
        self.sizes.iter().all(|&n| n == 1)
    }

    /// Spectrum point ranges of the blocks, flattened row-major.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut offset = 0;
        for &n in &self.sizes {
            out.push(offset..offset + n);
            offset += n;
        }
        out
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The partition corresponding to the center: blocks are exactly the matrix
/// block index sets.
pub fn central_partition(spec: &AlgebraSpec) -> Partition {
    let n = spec.total_points();
    let mut assignment = vec![0usize; n];
    for (b, range) in spec.block_ranges().into_iter().enumerate() {
        for x in range {
            assignment[x] = b;
        }
    }
    Partition::from_raw_assignment(n, &assignment)
}

/// Is every block of `p` a union of matrix blocks?
pub fn is_central(spec: &AlgebraSpec, p: &Partition) -> Result<bool> {
    central_partition(spec).refines(p)
}

/// All transversal complements of `p`: for each choice of one representative
/// per block, the partition with that transversal as its single non-trivial
/// block.
///
/// Errors when `p` is the one-block partition or the singletons partition
/// (their complements are the top and bottom themselves, and no transversal
/// construction applies).
pub fn transversal_complements(p: &Partition) -> Result<Vec<Partition>> {
    let blocks = p.blocks();
    if blocks.len() < 2 {
        return Err(Error::NoTransversalComplement(
            "the one-block partition is the least element".into(),
        ));
    }
    if blocks.len() == p.size {
        return Err(Error::NoTransversalComplement(
            "the singletons partition is the greatest element".into(),
        ));
    }
    // Mixed-radix enumeration over representatives, ascending per block.
    let radices: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let count: usize = radices.iter().product();
    let mut out = Vec::with_capacity(count);
    for mut code in 0..count {
        let mut transversal = Vec::with_capacity(blocks.len());
        for (block, &r) in blocks.iter().zip(&radices).rev() {
            transversal.push(block[code % r]);
            code /= r;
        }
        transversal.reverse();
        let mut assignment = vec![usize::MAX; p.size];
        for &x in &transversal {
            assignment[x] = 0;
        }
        let mut next = 1usize;
        for slot in assignment.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        out.push(Partition::from_raw_assignment(p.size, &assignment));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Assembles per-block partitions into one partition of the full spectrum
/// (the direct-sum embedding of subalgebra tuples).
pub fn assemble_blocks(spec: &AlgebraSpec, parts: &[Partition]) -> Result<Partition> {
    if parts.len() != spec.block_count() {
        return Err(Error::MalformedPartition(format!(
            "{} parts for {} blocks",
            parts.len(),
            spec.block_count()
        )));
    }
    let n = spec.total_points();
    let mut assignment = vec![0usize; n];
    let mut next = 0usize;
    for (part, range) in parts.iter().zip(spec.block_ranges()) {
        if part.size() != range.len() {
            return Err(Error::SpectrumMismatch(part.size(), range.len()));
        }
        for (local, x) in range.enumerate() {
            assignment[x] = next + part.block_of(local);
        }
        next += part.block_count();
    }
    Ok(Partition::from_raw_assignment(n, &assignment))
}

/// Restricts a partition of the full spectrum to each matrix block (the
/// blockwise projection of a subalgebra).
pub fn restrict_blocks(spec: &AlgebraSpec, p: &Partition) -> Result<Vec<Partition>> {
    if p.size() != spec.total_points() {
        return Err(Error::SpectrumMismatch(p.size(), spec.total_points()));
    }
    let mut out = Vec::with_capacity(spec.block_count());
    for range in spec.block_ranges() {
        let local: Vec<usize> = range.map(|x| p.block_of(x)).collect();
        out.push(Partition::from_raw_assignment(local.len(), &local));
    }
    Ok(out)
}

/// The interval above the center in the subalgebra poset: all block-respecting
/// partitions, order-isomorphic to the product of the per-block partition
/// lattices.
pub fn interval_above_center(spec: &AlgebraSpec) -> Result<FinitePoset> {
    interval_above_center_with_guard(spec, DEFAULT_POINT_GUARD)
}

pub fn interval_above_center_with_guard(
    spec: &AlgebraSpec,
    guard: usize,
) -> Result<FinitePoset> {
    let n = spec.total_points();
    if n > guard {
        return Err(Error::GuardExceeded {
            requested: n,
            guard,
        });
    }
    // Enumerate tuples of per-block partitions row-major (last block fastest)
    // and assemble each tuple.
    let per_block: Vec<Vec<Partition>> = spec
        .sizes()
        .iter()
        .map(|&n_i| enumerate_partitions(n_i))
        .collect();
    let mut elements: Vec<Partition> = Vec::new();
    let counts: Vec<usize> = per_block.iter().map(|v| v.len()).collect();
    let total: usize = counts.iter().product();
    for mut code in 0..total {
        let mut tuple = vec![0usize; counts.len()];
        for f in (0..counts.len()).rev() {
            tuple[f] = code % counts[f];
            code /= counts[f];
        }
        let parts: Vec<Partition> = tuple
            .iter()
            .enumerate()
            .map(|(f, &ix)| per_block[f][ix].clone())
            .collect();
        elements.push(assemble_blocks(spec, &parts)?);
    }
    let labels: Vec<String> = elements.iter().map(|p| p.to_string()).collect();
    FinitePoset::from_le_fn(
        elements.len(),
        |i, j| elements[j].refines(&elements[i]).unwrap(),
        Some(labels),
    )
}
