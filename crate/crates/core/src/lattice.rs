//! Bounded lattices: complements and direct-product factorization.
//!
//! `factorize` splits a finite bounded lattice into directly indecomposable
//! factors by scanning complemented pairs `(a, b)` in increasing size of the
//! lower interval of `a` and accepting the first pair for which
//! `x ↦ (x ∧ a, x ∧ b)` is an order isomorphism onto the product of the two
//! lower intervals (with inverse `(p, q) ↦ p ∨ q`), then recursing. The
//! factor multiset is unique up to order and isomorphism, so the greedy scan
//! order does not affect the result.

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::util::{and_popcount, row_popcount};

/// A finite bounded lattice: a poset with bottom, top, and all pairwise meets
/// and joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLattice {
    poset: FinitePoset,
    bottom: usize,
    top: usize,
}

/// A direct-product factorization into directly indecomposable factors.
///
/// One-point factors are dropped. `iso[x]` is the index of element `x` in the
/// row-major product of `factors` (most significant factor first); for an
/// empty factor list the product is the one-point lattice.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<BoundedLattice>,
    pub iso: Vec<usize>,
}

impl BoundedLattice {
    /// Validates that the poset is a bounded lattice.
    pub fn try_new(poset: FinitePoset) -> Result<Self> {
        if poset.is_empty() {
            return Err(Error::NotALattice("empty poset".into()));
        }
        let bottom = poset
            .least_element()
            .ok_or_else(|| Error::NotALattice("no least element".into()))?;
        let top = poset
            .greatest_element()
            .ok_or_else(|| Error::NotALattice("no greatest element".into()))?;
        for a in 0..poset.size() {
            for b in (a + 1)..poset.size() {
                if poset.meet_idx(a, b).is_none() {
                    return Err(Error::NotALattice(format!(
                        "elements {a} and {b} have no meet"
                    )));
                }
                if poset.join_idx(a, b).is_none() {
                    return Err(Error::NotALattice(format!(
                        "elements {a} and {b} have no join"
                    )));
                }
            }
        }
        Ok(BoundedLattice { poset, bottom, top })
    }

    /// Wraps a poset already known to be a bounded lattice (lower intervals
    /// of a validated lattice, products of validated lattices).
    fn trusted(poset: FinitePoset) -> Self {
        let bottom = poset.least_element().expect("trusted lattice has bottom");
        let top = poset.greatest_element().expect("trusted lattice has top");
        BoundedLattice { poset, bottom, top }
    }

    /// Product lattice with componentwise operations.
    pub fn product_of(factors: &[&BoundedLattice]) -> Result<Self> {
        let posets: Vec<&FinitePoset> = factors.iter().map(|l| l.poset()).collect();
        Ok(Self::trusted(FinitePoset::product(&posets)?))
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet in a validated lattice (always defined).
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.poset.meet_idx(a, b).expect("lattice has all meets")
    }

    /// Join in a validated lattice (always defined).
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.poset.join_idx(a, b).expect("lattice has all joins")
    }

    /// All complements of `x`: elements `y` with `x ∧ y = 0` and `x ∨ y = 1`.
    pub fn complements_of(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: x,
                size: self.size(),
            });
        }
        let mut out = Vec::new();
        for y in 0..self.size() {
            // Bottom is in every down-set and top in every up-set, so a
            // singleton intersection pins the meet (join) to bottom (top).
            if and_popcount(self.poset.down_row(x), self.poset.down_row(y)) == 1
                && and_popcount(self.poset.up_row(x), self.poset.up_row(y)) == 1
            {
                out.push(y);
            }
        }
        Ok(out)
    }

    /// True when no nontrivial direct-product decomposition exists.
    pub fn is_directly_indecomposable(&self) -> bool {
        self.find_split().is_none()
    }

    /// The complemented pair witnessing the first direct splitting, if any.
    pub fn direct_split_pair(&self) -> Option<(usize, usize)> {
        self.find_split().map(|s| s.pair)
    }

    /// Scans complemented pairs for a valid direct splitting.
    ///
    /// Pairs are visited with `a` in increasing `|down(a)|` (ties by index)
    /// and `b` ascending; the divisibility and complement filters only skip
    /// pairs that cannot split, so the first valid split found is also the
    /// first in that order.
    fn find_split(&self) -> Option<Split> {
        let n = self.size();
        if n <= 2 {
            return None;
        }
        let down_sizes: Vec<usize> = (0..n)
            .map(|x| row_popcount(self.poset.down_row(x)))
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (down_sizes[x], x));
        for &a in &order {
            if a == self.bottom || a == self.top {
                continue;
            }
            let da = down_sizes[a];
            if !n.is_multiple_of(da) {
                continue;
            }
            let needed = n / da;
            for (b, &db) in down_sizes.iter().enumerate() {
                if db != needed || b == self.bottom || b == self.top {
                    continue;
                }
                if and_popcount(self.poset.down_row(a), self.poset.down_row(b)) != 1 {
                    continue;
                }
                if and_popcount(self.poset.up_row(a), self.poset.up_row(b)) != 1 {
                    continue;
                }
                if let Some(split) = self.try_split(a, b) {
                    return Some(split);
                }
            }
        }
        None
    }

    /// Tests whether `x ↦ (x ∧ a, x ∧ b)` is an order isomorphism onto
    /// `[0,a] × [0,b]` with inverse `(p,q) ↦ p ∨ q`.
    fn try_split(&self, a: usize, b: usize) -> Option<Split> {
        let n = self.size();
        let ia = self.poset.down_set(a);
        let ib = self.poset.down_set(b);
        debug_assert_eq!(ia.len() * ib.len(), n);
        let mut pos_a = vec![usize::MAX; n];
        for (p, &x) in ia.iter().enumerate() {
            pos_a[x] = p;
        }
        let mut pos_b = vec![usize::MAX; n];
        for (q, &x) in ib.iter().enumerate() {
            pos_b[x] = q;
        }
        let mut code_of = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        for (x, slot) in code_of.iter_mut().enumerate() {
            let p = self.meet(x, a);
            let q = self.meet(x, b);
            // Both maps are monotone; the composite must be the identity and
            // the pair map injective for a genuine splitting.
            if self.join(p, q) != x {
                return None;
            }
            let code = pos_a[p] * ib.len() + pos_b[q];
            if seen[code] {
                return None;
            }
            seen[code] = true;
            *slot = code;
        }
        Some(Split {
            pair: (a, b),
            lower_a: ia,
            lower_b: ib,
            code_of,
        })
    }

    /// Factorizes into directly indecomposable factors.
    pub fn factorize(&self) -> Factorization {
        if self.size() == 1 {
            return Factorization {
                factors: Vec::new(),
                iso: vec![0],
            };
        }
        match self.find_split() {
            None => Factorization {
                factors: vec![self.clone()],
                iso: (0..self.size()).collect(),
            },
            Some(split) => {
                let sub_a = Self::trusted(
                    self.poset
                        .induced(&split.lower_a)
                        .expect("down-set is increasing"),
                );
                let sub_b = Self::trusted(
                    self.poset
                        .induced(&split.lower_b)
                        .expect("down-set is increasing"),
                );
                let fact_a = sub_a.factorize();
                let fact_b = sub_b.factorize();
                let size_b = sub_b.size();
                let iso = split
                    .code_of
                    .iter()
                    .map(|&code| {
                        let (p, q) = (code / split.lower_b.len(), code % split.lower_b.len());
                        fact_a.iso[p] * size_b + fact_b.iso[q]
                    })
                    .collect();
                let mut factors = fact_a.factors;
                factors.extend(fact_b.factors);
                Factorization { factors, iso }
            }
        }
    }
}

impl Factorization {
    /// The product of the recovered factors as a poset (one point when there
    /// are no factors).
    pub fn product_poset(&self) -> FinitePoset {
        if self.factors.is_empty() {
            return FinitePoset::chain(1);
        }
        let posets: Vec<&FinitePoset> = self.factors.iter().map(|l| l.poset()).collect();
        FinitePoset::product(&posets).expect("nonempty factor list")
    }

    /// Factor heights (longest-chain element counts), descending.
    pub fn heights(&self) -> Vec<usize> {
        let mut hs: Vec<usize> = self.factors.iter().map(|f| f.poset().height()).collect();
        hs.sort_unstable_by(|a, b| b.cmp(a));
        hs
    }
}

struct Split {
    pair: (usize, usize),
    lower_a: Vec<usize>,
    lower_b: Vec<usize>,
    code_of: Vec<usize>,
}
