//! Property tests for the order-theoretic core: lattice-operation laws on
//! random posets, rank-function uniqueness, rank transport along
//! isomorphisms, and product grading.
#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use cposet_core::poset::FinitePoset;
use cposet_core::util::SplitMix64;
use cposet_core::witness::witness_poset;
use cposet_core::{partition_lattice, AlgebraSpec};

/// Random poset: a random upward edge set on `n` nodes, closed transitively.
fn arb_poset(max_n: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n.saturating_sub(1)) / 2).prop_map(
            move |bits| {
                let mut covers = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        if bits[k] {
                            covers.push((i, j));
                        }
                        k += 1;
                    }
                }
                FinitePoset::from_covers(n, &covers, None).expect("upward edges are acyclic")
            },
        )
    })
}

/// Independent check of the three rank-function conditions.
fn is_rank_function(p: &FinitePoset, d: &[u32]) -> bool {
    let covers = p.covers();
    for &m in &p.minimal_elements() {
        if d[m] != 1 {
            return false;
        }
    }
    for i in 0..p.size() {
        for j in 0..p.size() {
            if p.lt(i, j) {
                if d[i] >= d[j] {
                    return false;
                }
                let is_cover = covers.contains(&(i, j));
                if is_cover != (d[j] == d[i] + 1) {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #[test]
    fn meet_and_join_are_commutative(p in arb_poset(7)) {
        for a in 0..p.size() {
            for b in 0..p.size() {
                prop_assert_eq!(p.meet(a, b).unwrap(), p.meet(b, a).unwrap());
                prop_assert_eq!(p.join(a, b).unwrap(), p.join(b, a).unwrap());
            }
        }
    }

    #[test]
    fn meet_is_associative_where_defined(p in arb_poset(6)) {
        for a in 0..p.size() {
            for b in 0..p.size() {
                for c in 0..p.size() {
                    let left = p.meet(a, b).unwrap().and_then(|ab| p.meet(ab, c).unwrap());
                    let right = p.meet(b, c).unwrap().and_then(|bc| p.meet(a, bc).unwrap());
                    if let (Some(l), Some(r)) = (left, right) {
                        prop_assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn absorption_where_both_exist(p in arb_poset(7)) {
        for a in 0..p.size() {
            for b in 0..p.size() {
                if let Some(m) = p.meet(a, b).unwrap() {
                    if let Some(j) = p.join(a, m).unwrap() {
                        prop_assert_eq!(j, a);
                    }
                }
                if let Some(j) = p.join(a, b).unwrap() {
                    if let Some(m) = p.meet(a, j).unwrap() {
                        prop_assert_eq!(m, a);
                    }
                }
            }
        }
    }

    #[test]
    fn meet_matches_brute_force_scan(p in arb_poset(7)) {
        for a in 0..p.size() {
            for b in 0..p.size() {
                let lower: Vec<usize> = (0..p.size())
                    .filter(|&x| p.le(x, a) && p.le(x, b))
                    .collect();
                let brute = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&x| p.le(x, g)));
                prop_assert_eq!(p.meet(a, b).unwrap(), brute);
            }
        }
    }

    #[test]
    fn meets_plus_top_give_all_joins(p in arb_poset(7)) {
        // A finite poset with all pairwise meets and a greatest element is a
        // lattice: the join is the meet of the common upper bounds.
        let has_top = p.greatest_element().is_some();
        let all_meets = (0..p.size())
            .all(|a| (0..p.size()).all(|b| p.meet(a, b).unwrap().is_some()));
        if has_top && all_meets {
            for a in 0..p.size() {
                for b in 0..p.size() {
                    let join = p.join(a, b).unwrap();
                    prop_assert!(join.is_some());
                    let uppers: Vec<usize> = (0..p.size())
                        .filter(|&x| p.le(a, x) && p.le(b, x))
                        .collect();
                    let via_meet = uppers
                        .iter()
                        .copied()
                        .reduce(|x, y| p.meet(x, y).unwrap().unwrap());
                    prop_assert_eq!(join, via_meet);
                }
            }
        }
    }

    #[test]
    fn rank_function_satisfies_and_pins_the_conditions(p in arb_poset(7)) {
        if let Some(d) = p.rank_function() {
            let ranks = d.ranks().to_vec();
            prop_assert!(is_rank_function(&p, &ranks));
            // Uniqueness: any single-point perturbation breaks a condition.
            for e in 0..p.size() {
                for delta in [-1i64, 1] {
                    let perturbed_rank = ranks[e] as i64 + delta;
                    if perturbed_rank < 1 {
                        continue;
                    }
                    let mut perturbed = ranks.clone();
                    perturbed[e] = perturbed_rank as u32;
                    prop_assert!(
                        !is_rank_function(&p, &perturbed),
                        "perturbing element {} by {} went unnoticed",
                        e,
                        delta
                    );
                }
            }
        }
    }

    #[test]
    fn isomorphism_search_finds_relabelings_and_transports_ranks(
        p in arb_poset(7),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let perm = rng.permutation(p.size());
        let q = p.relabel(&perm).unwrap();
       let map = p.isomorphism_to(&q).expect("relabeled poset is isomorphic");
        for i in 0..p.size() {
            for j in 0..p.size() {
                prop_assert_eq!(p.le(i, j), q.le(map[i], map[j]));
            }
        }
        if let (Some(dp), Some(dq)) = (p.rank_function(), q.rank_function()) {
            for i in 0..p.size() {
                prop_assert_eq!(dp.rank(i), dq.rank(map[i]));
            }
        }
    }

    #[test]
    fn products_of_graded_posets_are_graded_with_shifted_rank_sum(
        pair in (arb_poset(5), arb_poset(5)),
    ) {
        let (a, b) = pair;
        let (Some(da), Some(db)) = (a.rank_function(), b.rank_function()) else {
            return Ok(());
        };
        let product = FinitePoset::product(&[&a, &b]).unwrap();
        let dp = product.rank_function();
        prop_assert!(dp.is_some(), "product of graded posets must be graded");
        let dp = dp.unwrap();
        // Element x of the product decodes row-major over (a, b).
        for x in 0..product.size() {
            let (xa, xb) = (x / b.size(), x % b.size());
            prop_assert_eq!(
                dp.rank(x),
                da.rank(xa) + db.rank(xb) - 1,
                "rank at product element {}",
                x
            );
        }
    }
}

#[test]
fn witness_posets_are_graded_meet_closed_and_reconstructible() {
    // Deterministic sweep over the small specs; the acceptance suite covers
    // the full ranges.
    for sizes in [vec![2], vec![2, 1], vec![3], vec![2, 2], vec![1, 1, 1]] {
        let spec = AlgebraSpec::new(&sizes).unwrap();
        let w = witness_poset(&spec, 2).unwrap();
        let p = &w.poset;
        assert!(p.rank_function().is_some(), "witness of {spec} not graded");
        for a in 0..p.size() {
            for b in 0..p.size() {
                assert!(p.meet(a, b).unwrap().is_some());
            }
        }
        let report = cposet_core::reconstruct(p, true);
        assert_eq!(report.spec.unwrap(), spec);
    }
}

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<FinitePoset>();
    assert_send_sync::<cposet_core::RankFunction>();
    assert_send_sync::<cposet_core::BoundedLattice>();
    assert_send_sync::<cposet_core::Partition>();
    assert_send_sync::<AlgebraSpec>();
    assert_send_sync::<cposet_core::WitnessPoset>();
    assert_send_sync::<cposet_core::ReconstructionReport>();
    assert_send_sync::<cposet_core::oracle::Ambient>();
    assert_send_sync::<
        cposet_core::oracle::SubalgebraSpan<cposet_core::oracle::scalar::RatComplex>,
    >();
}

#[test]
fn partition_lattice_is_a_lattice_with_unique_rank() {
    for n in 1..=5 {
        let p = partition_lattice(n).unwrap();
        let lattice = cposet_core::BoundedLattice::try_new(p).unwrap();
        let d = lattice.poset().rank_function().unwrap();
        assert!(is_rank_function(lattice.poset(), d.ranks()));
        assert_eq!(d.max_rank() as usize, n);
    }
}
