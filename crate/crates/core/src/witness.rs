//! Finite witness truncations of the commutative-subalgebra poset.
//!
//! For a noncommutative block-diagonal algebra the full subalgebra poset is
//! infinite (a continuum of conjugated diagonals). The witness poset models
//! the union of the down-sets of `m` generic maximal subalgebras: `m` labeled
//! copies of the partition lattice of the spectrum, amalgamated along the
//! central (block-respecting-by-unions) partitions, which generic maximal
//! subalgebras share pairwise.
//!
//! Cross-copy comparability uses centrality of the smaller element only: an
//! element below two distinct maximal subalgebras lies in their intersection,
//! which is the center. That single modeling rule forces the whole order.

use crate::error::{Error, Result};
use crate::partition::{
    central_partition, enumerate_partitions, AlgebraSpec, Partition, DEFAULT_POINT_GUARD,
};
use crate::poset::FinitePoset;

/// One element of a witness poset: a partition living in one copy, or a
/// central partition shared by every copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessElement {
    /// Copy index `1..=m`, or `None` for shared central elements.
    pub copy: Option<usize>,
    pub partition: Partition,
}

impl WitnessElement {
    /// Label rendered into the poset: `t:P` for copy elements, `c:P` for
    /// shared central elements.
    pub fn label(&self) -> String {
        match self.copy {
            Some(t) => format!("{t}:{}", self.partition),
            None => format!("c:{}", self.partition),
        }
    }
}

/// A witness truncation together with its construction data.
#[derive(Clone, Debug)]
pub struct WitnessPoset {
    pub poset: FinitePoset,
    pub spec: AlgebraSpec,
    /// Effective number of copies (forced to 1 for commutative specs).
    pub copies: usize,
    elements: Vec<WitnessElement>,
}

impl WitnessPoset {
    pub fn elements(&self) -> &[WitnessElement] {
        &self.elements
    }
}

/// The element layout shared by the combinatorial construction and the
/// matrix-oracle realization: all central partitions first, then the
/// non-central partitions of each copy, everything in enumeration order.
pub(crate) fn witness_layout(spec: &AlgebraSpec, copies: usize) -> Vec<WitnessElement> {
    let n = spec.total_points();
    let central = central_partition(spec);
    let mut elements = Vec::new();
    let all = enumerate_partitions(n);
    for p in &all {
        if central.refines(p).unwrap() {
            elements.push(WitnessElement {
                copy: None,
                partition: p.clone(),
            });
        }
    }
    for t in 1..=copies {
        for p in &all {
            if !central.refines(p).unwrap() {
                elements.push(WitnessElement {
                    copy: Some(t),
                    partition: p.clone(),
                });
            }
        }
    }
    elements
}

/// Resolves the effective copy count: commutative specs collapse to one copy,
/// noncommutative specs need at least two.
pub(crate) fn effective_copies(spec: &AlgebraSpec, copies: usize) -> Result<usize> {
    if spec.is_commutative() {
        Ok(1)
    } else if copies < 2 {
        Err(Error::NotEnoughCopies)
    } else {
        Ok(copies)
    }
}

/// Order between two witness elements.
///
/// `x <= y` iff `y`'s partition refines `x`'s, and either both live in the
/// same copy or `x` is central (hence shared by all copies).
fn witness_le(x: &WitnessElement, y: &WitnessElement) -> bool {
    let refines = y.partition.refines(&x.partition).unwrap();
    if !refines {
        return false;
    }
    match (x.copy, y.copy) {
        (None, _) => true,
        (Some(_), None) => {
            // A non-central element below a central one would make the
            // non-central partition a coarsening of a central partition,
            // hence central itself; `refines` already rules this out unless
            // the partitions coincide, which cannot happen across kinds.
            false
        }
        (Some(s), Some(t)) => s == t,
    }
}

/// Builds the witness poset of a spec with `m` copies.
pub fn witness_poset(spec: &AlgebraSpec, copies: usize) -> Result<WitnessPoset> {
    witness_poset_with_guard(spec, copies, DEFAULT_POINT_GUARD)
}

pub fn witness_poset_with_guard(
    spec: &AlgebraSpec,
    copies: usize,
    guard: usize,
) -> Result<WitnessPoset> {
    let n = spec.total_points();
    if n > guard {
        return Err(Error::GuardExceeded {
            requested: n,
            guard,
        });
    }
    let copies = effective_copies(spec, copies)?;
    let elements = witness_layout(spec, copies);
    let labels: Vec<String> = elements.iter().map(|e| e.label()).collect();
    let poset = FinitePoset::from_le_fn(
        elements.len(),
        |i, j| witness_le(&elements[i], &elements[j]),
        Some(labels),
    )?;
    Ok(WitnessPoset {
        poset,
        spec: spec.clone(),
        copies,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{is_central, meet_partitions, partition_lattice};

    fn spec(sizes: &[usize]) -> AlgebraSpec {
        AlgebraSpec::new(sizes).unwrap()
    }

    /// Greatest central partition below `p` in the subalgebra order: central
    /// partitions are closed under join, so the join of all central lower
    /// bounds is itself a central lower bound.
    fn centralization(s: &AlgebraSpec, p: &Partition) -> Partition {
        enumerate_partitions(p.size())
            .into_iter()
            .filter(|c| is_central(s, c).unwrap() && p.refines(c).unwrap())
            .fold(Partition::one_block(p.size()), |acc, c| {
                crate::partition::join_partitions(&acc, &c).unwrap()
            })
    }

    #[test]
    fn commutative_specs_collapse_to_partition_lattice() {
        for copies in [1, 2, 5] {
            let w = witness_poset(&spec(&[1, 1]), copies).unwrap();
            assert_eq!(w.copies, 1);
            assert_eq!(w.poset.size(), 2);
            assert!(w.poset.le(0, 1));
        }
        // Independence of m for all-ones specs, and agreement with the
        // partition lattice order.
        let w2 = witness_poset(&spec(&[1, 1, 1]), 2).unwrap();
        let w3 = witness_poset(&spec(&[1, 1, 1]), 3).unwrap();
        let lat = partition_lattice(3).unwrap();
        assert_eq!(w2.poset.size(), lat.size());
        for i in 0..lat.size() {
            for j in 0..lat.size() {
                assert_eq!(w2.poset.le(i, j), lat.le(i, j));
                assert_eq!(w3.poset.le(i, j), lat.le(i, j));
            }
        }
    }

    #[test]
    fn single_block_two_copies() {
        // Spec (2): bottom plus two incomparable maximal atoms.
        let w = witness_poset(&spec(&[2]), 2).unwrap();
        assert_eq!(w.poset.size(), 3);
        assert_eq!(w.poset.maximal_elements().len(), 2);
        assert_eq!(w.poset.least_element(), Some(0));
        let maxes = w.poset.maximal_elements();
        assert!(!w.poset.le(maxes[0], maxes[1]));
        assert!(!w.poset.le(maxes[1], maxes[0]));
    }

    #[test]
    fn two_one_witness_shape() {
        // Spec (2,1) with two copies: 5 + 5 - 2 shared central elements.
        let w = witness_poset(&spec(&[2, 1]), 2).unwrap();
        assert_eq!(w.poset.size(), 8);
        let maxes = w.poset.maximal_elements();
        assert_eq!(maxes.len(), 2);
        // Each maximal down-set is a copy of the 5-element partition lattice.
        let lat = partition_lattice(3).unwrap();
        for &m in &maxes {
            let down = w.poset.down_set(m);
            assert_eq!(down.len(), 5);
            let sub = w.poset.induced(&down).unwrap();
            assert!(sub.isomorphism_to(&lat).is_some());
        }
        // The interval from the shared center to a maximal element is the
        // two-chain (the block-respecting partitions of one copy).
        let center = maxes
            .iter()
            .copied()
            .reduce(|a, b| w.poset.meet(a, b).unwrap().unwrap())
            .unwrap();
        let interval = w.poset.interval(center, maxes[0]).unwrap();
        assert_eq!(interval.size(), 2);
        assert!(interval.isomorphism_to(&FinitePoset::chain(2)).is_some());
    }

    #[test]
    fn needs_two_copies_when_noncommutative() {
        assert!(witness_poset(&spec(&[2]), 1).is_err());
        assert!(witness_poset(&spec(&[2]), 0).is_err());
    }

    #[test]
    fn guard_is_enforced() {
        assert!(witness_poset(&spec(&[8]), 2).is_err());
        assert!(witness_poset_with_guard(&spec(&[4, 4]), 2, 8).is_ok());
    }

    #[test]
    fn maximal_count_and_ranks() {
        for (s, m) in [(spec(&[2, 1]), 2), (spec(&[3]), 3), (spec(&[2, 2]), 2)] {
            let w = witness_poset(&s, m).unwrap();
            assert_eq!(w.poset.maximal_elements().len(), m);
            let d = w.poset.rank_function().expect("witness posets are graded");
            let n = s.total_points();
            for &mx in &w.poset.maximal_elements() {
                assert_eq!(d.rank(mx) as usize, n);
            }
            // Rank equals block count everywhere.
            for (i, e) in w.elements().iter().enumerate() {
                assert_eq!(d.rank(i) as usize, e.partition.block_count());
            }
        }
    }

    #[test]
    fn witness_is_meet_closed_with_central_cross_meets() {
        let s = spec(&[2, 1]);
        let w = witness_poset(&s, 2).unwrap();
        let p = &w.poset;
        for i in 0..p.size() {
            for j in 0..p.size() {
                let m = p.meet(i, j).unwrap().expect("witness poset is meet-closed");
                let ei = &w.elements()[i];
                let ej = &w.elements()[j];
                if ei.copy.is_some() && ej.copy.is_some() && ei.copy != ej.copy {
                    // Cross-copy meets are central and equal the meet of the
                    // centralizations.
                    let em = &w.elements()[m];
                    assert_eq!(em.copy, None);
                    let expected = meet_partitions(
                        &centralization(&s, &ei.partition),
                        &centralization(&s, &ej.partition),
                    )
                    .unwrap();
                    assert_eq!(em.partition, expected);
                }
            }
        }
    }

    #[test]
    fn labels_are_copy_tagged() {
        let w = witness_poset(&spec(&[2]), 2).unwrap();
        let labels = w.poset.labels().unwrap();
        assert_eq!(labels[0], "c:0,1");
        assert_eq!(labels[1], "1:0|1");
        assert_eq!(labels[2], "2:0|1");
    }
}
