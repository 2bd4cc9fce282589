//! Order-isomorphism testing.
//!
//! The search prunes with structural invariants first (size, gradedness and
//! rank profile, cover-degree sequences, then iterated neighborhood-color
//! refinement on the cover graph) and falls back to backtracking inside the
//! surviving color classes. Worst-case exponential, fine at desk scale.
//!
//! Determinism: source elements are processed sorted by
//! `(rank, down-cover degree, up-cover degree, label, index)` and target
//! candidates are tried in increasing index, so the returned bijection is the
//! first — hence lexicographically least over that processing order — that
//! the search encounters. Labels take part in the ordering only; matching
//! ignores them.

use std::collections::BTreeMap;

use crate::poset::FinitePoset;

struct SearchSide {
    covers_down: Vec<Vec<usize>>,
    covers_up: Vec<Vec<usize>>,
    colors: Vec<usize>,
}

fn cover_adjacency(p: &FinitePoset) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = p.size();
    let mut down = vec![Vec::new(); n];
    let mut up = vec![Vec::new(); n];
    for (lo, hi) in p.covers() {
        up[lo].push(hi);
        down[hi].push(lo);
    }
    (down, up)
}

/// Assigns joint colors from a list of per-element keys on each side; `None`
/// when the class sizes disagree (no isomorphism can exist).
fn color_by_keys<K: Ord>(ka: Vec<K>, kb: Vec<K>) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut palette: BTreeMap<&K, usize> = BTreeMap::new();
    for k in ka.iter().chain(kb.iter()) {
        let next = palette.len();
        palette.entry(k).or_insert(next);
    }
    let ca: Vec<usize> = ka.iter().map(|k| palette[k]).collect();
    let cb: Vec<usize> = kb.iter().map(|k| palette[k]).collect();
    let mut count_a = vec![0usize; palette.len()];
    let mut count_b = vec![0usize; palette.len()];
    for &c in &ca {
        count_a[c] += 1;
    }
    for &c in &cb {
        count_b[c] += 1;
    }
    if count_a == count_b {
        Some((ca, cb))
    } else {
        None
    }
}

/// Iterated color refinement over both posets jointly, so the two sides
/// share one palette and class sizes can be compared after every round.
fn refine_colors(
    a: &FinitePoset,
    b: &FinitePoset,
    a_adj: &(Vec<Vec<usize>>, Vec<Vec<usize>>),
    b_adj: &(Vec<Vec<usize>>, Vec<Vec<usize>>),
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = a.size();
    let rank_a = a.rank_function();
    let rank_b = b.rank_function();
    match (&rank_a, &rank_b) {
        (Some(da), Some(db)) => {
            // Isomorphisms transport ranks, so the per-rank counts must agree.
            if da.profile() != db.profile() {
                return None;
            }
        }
        (None, None) => {}
        _ => return None,
    }
    let initial = |p: &FinitePoset,
                   d: &Option<crate::poset::RankFunction>,
                   adj: &(Vec<Vec<usize>>, Vec<Vec<usize>>)| {
        (0..n)
            .map(|i| {
                (
                    d.as_ref().map_or(0, |d| d.rank(i)),
                    p.down_size(i),
                    p.up_size(i),
                    adj.0[i].len(),
                    adj.1[i].len(),
                )
            })
            .collect::<Vec<_>>()
    };
    let (mut ca, mut cb) = color_by_keys(initial(a, &rank_a, a_adj), initial(b, &rank_b, b_adj))?;
    loop {
        // New key: old color plus sorted neighbor colors along covers.
        let next_keys = |colors: &[usize], adj: &(Vec<Vec<usize>>, Vec<Vec<usize>>)| {
            (0..n)
                .map(|i| {
                    let mut lows: Vec<usize> = adj.0[i].iter().map(|&x| colors[x]).collect();
                    let mut highs: Vec<usize> = adj.1[i].iter().map(|&x| colors[x]).collect();
                    lows.sort_unstable();
                    highs.sort_unstable();
                    (colors[i], lows, highs)
                })
                .collect::<Vec<_>>()
        };
        let before = ca.iter().copied().collect::<std::collections::BTreeSet<_>>().len();
        let (na, nb) = color_by_keys(next_keys(&ca, a_adj), next_keys(&cb, b_adj))?;
        let after = na.iter().copied().collect::<std::collections::BTreeSet<_>>().len();
        ca = na;
        cb = nb;
        if after == before {
            return Some((ca, cb));
        }
    }
}

impl FinitePoset {
    /// Searches for an order isomorphism onto `other`.
    ///
    /// Returns a bijection `map` with `map[i]` the image of element `i`, such
    /// that `i <= j` iff `map[i] <= map[j]`, or `None` when no isomorphism
    /// exists. The result's existence is deterministic; the particular
    /// bijection returned is the canonical one described in the module docs.
    pub fn isomorphism_to(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        if self.size() != other.size() {
            return None;
        }
        let n = self.size();
        if n == 0 {
            return Some(Vec::new());
        }
        let a_adj = cover_adjacency(self);
        let b_adj = cover_adjacency(other);
        let (colors_a, colors_b) = refine_colors(self, other, &a_adj, &b_adj)?;
        let a_side = SearchSide {
            covers_down: a_adj.0,
            covers_up: a_adj.1,
            colors: colors_a,
        };
        let b_side = SearchSide {
            covers_down: b_adj.0,
            covers_up: b_adj.1,
            colors: colors_b,
        };

        // Deterministic processing order for the source elements.
        let rank = self.rank_function();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| {
            let key = |i: usize| {
                (
                    rank.as_ref().map_or(0, |d| d.rank(i)),
                    a_side.covers_down[i].len(),
                    a_side.covers_up[i].len(),
                    self.label(i).unwrap_or(""),
                    i,
                )
            };
            key(x).cmp(&key(y))
        });

        // Candidate lists per color class on the target side, ascending.
        let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for j in 0..n {
            by_color.entry(b_side.colors[j]).or_default().push(j);
        }

        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.backtrack(other, &a_side, &b_side, &by_color, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        &self,
        other: &FinitePoset,
        a_side: &SearchSide,
        b_side: &SearchSide,
        by_color: &BTreeMap<usize, Vec<usize>>,
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        let Some(candidates) = by_color.get(&a_side.colors[x]) else {
            return false;
        };
        'candidate: for &y in candidates {
            if used[y] {
                continue;
            }
            // Consistency with everything already placed, both directions.
            for &prev in &order[..depth] {
                let py = map[prev];
                if self.le(x, prev) != other.le(y, py) || self.le(prev, x) != other.le(py, y) {
                    continue 'candidate;
                }
            }
            // Cover degrees must survive (cheap local filter).
            if a_side.covers_down[x].len() != b_side.covers_down[y].len()
                || a_side.covers_up[x].len() != b_side.covers_up[y].len()
            {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.backtrack(other, a_side, b_side, by_color, order, depth + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partition_lattice;
    use crate::util::SplitMix64;

    fn assert_is_isomorphism(p: &FinitePoset, q: &FinitePoset, map: &[usize]) {
        let mut seen = vec![false; q.size()];
        for &m in map {
            assert!(!seen[m]);
            seen[m] = true;
        }
        for i in 0..p.size() {
            for j in 0..p.size() {
                assert_eq!(p.le(i, j), q.le(map[i], map[j]));
            }
        }
    }

    #[test]
    fn poset_is_isomorphic_to_random_relabelings_of_itself() {
        let p = partition_lattice(4).unwrap();
        let mut rng = SplitMix64::new(42);
        for _ in 0..5 {
            let perm = rng.permutation(p.size());
            let q = p.relabel(&perm).unwrap();
            let map = p.isomorphism_to(&q).expect("relabeling is isomorphic");
            assert_is_isomorphism(&p, &q, &map);
        }
    }

    #[test]
    fn size_mismatch_is_absent() {
        let p = partition_lattice(3).unwrap();
        let two = FinitePoset::chain(2);
        let grid = FinitePoset::product(&[&two, &two]).unwrap();
        assert!(p.isomorphism_to(&grid).is_none());
    }

    #[test]
    fn chain_vs_antichain() {
        let c = FinitePoset::chain(3);
        let a = FinitePoset::antichain(3);
        assert!(c.isomorphism_to(&a).is_none());
    }

    #[test]
    fn same_size_witnesses_of_different_specs_are_distinguished() {
        // Both have 28 elements and the same rank profile; the search must
        // still refute the isomorphism.
        use crate::partition::AlgebraSpec;
        use crate::witness::witness_poset;
        let a = witness_poset(&AlgebraSpec::new(&[2, 2]).unwrap(), 2).unwrap();
        let b = witness_poset(&AlgebraSpec::new(&[3, 1]).unwrap(), 2).unwrap();
        assert_eq!(a.poset.size(), b.poset.size());
        assert!(a.poset.isomorphism_to(&b.poset).is_none());
    }

    #[test]
    fn grid_is_isomorphic_to_square_of_chain() {
        let two = FinitePoset::chain(2);
        let grid = FinitePoset::product(&[&two, &two]).unwrap();
        let other = FinitePoset::from_covers(4, &[(3, 1), (3, 2), (1, 0), (2, 0)], None).unwrap();
        let map = grid.isomorphism_to(&other).unwrap();
        assert_is_isomorphism(&grid, &other, &map);
    }

    #[test]
    fn rank_transport_along_isomorphisms() {
        // Any isomorphism between graded posets carries rank to rank.
        let p = partition_lattice(4).unwrap();
        let mut rng = SplitMix64::new(7);
        let perm = rng.permutation(p.size());
        let q = p.relabel(&perm).unwrap();
        let map = p.isomorphism_to(&q).unwrap();
        let dp = p.rank_function().unwrap();
        let dq = q.rank_function().unwrap();
        for i in 0..p.size() {
            assert_eq!(dp.rank(i), dq.rank(map[i]));
        }
    }

    #[test]
    fn returned_bijection_is_deterministic() {
        let p = partition_lattice(4).unwrap();
        let mut rng = SplitMix64::new(3);
        let perm = rng.permutation(p.size());
        let q = p.relabel(&perm).unwrap();
        let m1 = p.isomorphism_to(&q).unwrap();
        let m2 = p.isomorphism_to(&q).unwrap();
        assert_eq!(m1, m2);
    }
}
