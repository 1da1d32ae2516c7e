//! Exhaustive search for the largest number of intersecting pairs among small
//! families of bounded depth.
//!
//! Intersection patterns of intervals depend only on the order type of their
//! endpoints, so it suffices to enumerate closed intervals whose `2n` distinct
//! endpoints are `1..=2n`: the perfect matchings of those positions into
//! `(lo, hi)` pairs. There are `(2n - 1)!!` of them.

use crate::depth::max_depth;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{AxisBox, BoxFamily, Interval};
use crate::rational::int;

pub const MAX_N_1D: usize = 7;
pub const MAX_N_MULTI: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub max_pairs: u64,
    pub witness: BoxFamily,
    /// Number of candidate families examined.
    pub enumerated: u64,
}

/// A family of intervals on positions `0..2n`, as `(lo, hi)` sorted by `lo`.
type Matching = Vec<(u8, u8)>;

/// Visits every matching whose first interval is `(0, first_hi)`, in
/// lexicographic order.
fn for_each_matching(n: usize, first_hi: usize, visit: &mut impl FnMut(&Matching)) {
    fn rec(used: &mut [bool], current: &mut Matching, visit: &mut impl FnMut(&Matching)) {
        let Some(lo) = used.iter().position(|u| !u) else {
            visit(current);
            return;
        };
        used[lo] = true;
        for hi in (lo + 1)..used.len() {
            if !used[hi] {
                used[hi] = true;
                current.push((lo as u8, hi as u8));
                rec(used, current, visit);
                current.pop();
                used[hi] = false;
            }
        }
        used[lo] = false;
    }
    let mut used = vec![false; 2 * n];
    used[0] = true;
    used[first_hi] = true;
    let mut current = vec![(0u8, first_hi as u8)];
    rec(&mut used, &mut current, visit);
}

fn all_matchings(n: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    for first_hi in 1..2 * n {
        for_each_matching(n, first_hi, &mut |m| out.push(m.clone()));
    }
    out
}

/// `(depth, pairs)` of closed intervals with distinct endpoints.
fn sweep_stats(n: usize, intervals: &Matching) -> (usize, u64) {
    let mut kind = vec![0i8; 2 * n];
    for &(lo, hi) in intervals {
        kind[lo as usize] = 1;
        kind[hi as usize] = -1;
    }
    let (mut active, mut depth, mut pairs) = (0usize, 0usize, 0u64);
    for k in kind {
        if k > 0 {
            pairs += active as u64;
            active += 1;
            depth = depth.max(active);
        } else {
            active -= 1;
        }
    }
    (depth, pairs)
}

fn closed_interval(lo: u8, hi: u8) -> Interval {
    Interval::closed(int(lo as i64 + 1), int(hi as i64 + 1)).expect("lo < hi")
}

fn family_from_axes(n: usize, axes: &[Vec<(u8, u8)>]) -> Result<BoxFamily> {
    let boxes = (0..n)
        .map(|i| AxisBox::new(axes.iter().map(|a| closed_interval(a[i].0, a[i].1)).collect()))
        .collect::<Result<_>>()?;
    BoxFamily::new(axes.len(), boxes)
}

/// Maximum pairs over all interval families of `n` members with depth at most
/// `k`; the witness is the lexicographically first maximizer.
pub fn search_extremal_1d(n: usize, k: usize) -> Result<SearchResult> {
    search_extremal_1d_with(n, k, Exec::default())
}

pub fn search_extremal_1d_with(n: usize, k: usize, exec: Exec) -> Result<SearchResult> {
    if n == 0 || n > MAX_N_1D {
        return Err(Error::LimitExceeded(format!("1-D search supports 1 <= n <= {MAX_N_1D}, got {n}")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let branches = exec.map_range(1..2 * n, |first_hi| {
        let mut best: Option<(u64, Matching)> = None;
        let mut count = 0u64;
        for_each_matching(n, first_hi, &mut |m| {
            count += 1;
            let (depth, pairs) = sweep_stats(n, m);
            if depth <= k && best.as_ref().is_none_or(|(p, _)| pairs > *p) {
                best = Some((pairs, m.clone()));
            }
        });
        (best, count)
    });
    let enumerated = branches.iter().map(|(_, c)| c).sum();
    let (max_pairs, matching) = branches
        .into_iter()
        .filter_map(|(b, _)| b)
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("pairwise disjoint intervals always qualify");
    let witness = family_from_axes(n, &[matching])?
        .with_label(format!("extremal 1-D n={n} k={k}"));
    Ok(SearchResult { max_pairs, witness, enumerated })
}

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    // index of pair (i, j), i < j, in row-major order
    let idx = i * n - i * (i + 1) / 2 + (j - i - 1);
    1 << idx
}

fn intersection_mask(n: usize, intervals: &[(u8, u8)]) -> u32 {
    let mut mask = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (intervals[i], intervals[j]);
            if a.0.max(b.0) <= a.1.min(b.1) {
                mask |= pair_bit(n, i, j);
            }
        }
    }
    mask
}

fn clique_number(n: usize, mask: u32) -> usize {
    (1u32..(1 << n))
        .filter(|subset| {
            (0..n).all(|i| {
                (i + 1..n).all(|j| {
                    subset & (1 << i) == 0 || subset & (1 << j) == 0 || mask & pair_bit(n, i, j) != 0
                })
            })
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// First configuration of each distinct intersection mask, in enumeration
/// order.
fn distinct_masks(n: usize, configs: impl Iterator<Item = Vec<(u8, u8)>>) -> Vec<(u32, Vec<(u8, u8)>)> {
    let mut seen = std::collections::HashSet::new();
    configs
        .map(|c| (intersection_mask(n, &c), c))
        .filter(|(m, _)| seen.insert(*m))
        .collect()
}

/// Lower-bound probe for `d in {2, 3}`: the Cartesian product of per-axis
/// endpoint order types, with boxes labelled by their order on the first axis.
///
/// Box intersection is the conjunction of the per-axis interval intersections,
/// so only the distinct per-axis intersection graphs need combining. Depth is
/// read off as the clique number of the combined graph (pairwise intersecting
/// boxes share a point); the returned witness is rechecked with [`max_depth`].
pub fn search_extremal_d(n: usize, k: usize, d: usize) -> Result<SearchResult> {
    search_extremal_d_with(n, k, d, Exec::default())
}

pub fn search_extremal_d_with(n: usize, k: usize, d: usize, exec: Exec) -> Result<SearchResult> {
    if !(2..=3).contains(&d) {
        return Err(Error::LimitExceeded(format!("multi-dimensional search supports d in {{2, 3}}, got {d}")));
    }
    if n == 0 || n > MAX_N_MULTI {
        return Err(Error::LimitExceeded(format!(
            "multi-dimensional search supports 1 <= n <= {MAX_N_MULTI}, got {n}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let matchings = all_matchings(n);
    let perms = permutations(n);
    let first_axis = distinct_masks(n, matchings.iter().cloned());
    let labelled = distinct_masks(
        n,
        matchings.iter().flat_map(|m| {
            perms.iter().map(move |p| {
                let mut c = vec![(0u8, 0u8); n];
                for (slot, &label) in p.iter().enumerate() {
                    c[label] = m[slot];
                }
                c
            })
        }),
    );
    let cliques: Vec<usize> = (0..1u32 << (n * (n - 1) / 2)).map(|m| clique_number(n, m)).collect();
    let enumerated = (matchings.len() * (matchings.len() * perms.len()).pow(d as u32 - 1)) as u64;

    let branches = exec.map(&first_axis, |(mask0, _)| {
        let mut best: Option<(u64, Vec<usize>)> = None;
        let mut consider = |mask: u32, combo: Vec<usize>| {
            let pairs = mask.count_ones() as u64;
            if cliques[mask as usize] <= k && best.as_ref().is_none_or(|(p, _)| pairs > *p) {
                best = Some((pairs, combo));
            }
        };
        for (i1, (mask1, _)) in labelled.iter().enumerate() {
            if d == 2 {
                consider(mask0 & mask1, vec![i1]);
            } else {
                for (i2, (mask2, _)) in labelled.iter().enumerate() {
                    consider(mask0 & mask1 & mask2, vec![i1, i2]);
                }
            }
        }
        best
    });
    let (idx0, (max_pairs, rest)) = branches
        .into_iter()
        .enumerate()
        .filter_map(|(i, b)| b.map(|b| (i, b)))
        .reduce(|a, b| if b.1 .0 > a.1 .0 { b } else { a })
        .expect("pairwise disjoint boxes always qualify");
    let mut axes = vec![first_axis[idx0].1.clone()];
    axes.extend(rest.iter().map(|&i| labelled[i].1.clone()));
    let witness = family_from_axes(n, &axes)?
        .with_label(format!("extremal probe n={n} k={k} d={d}"));
    debug_assert!(max_depth(&witness)?.depth <= k);
    Ok(SearchResult { max_pairs, witness, enumerated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::count_pairs_naive;

    fn double_factorial_odd(n: usize) -> u64 {
        (1..=n as u64).map(|i| 2 * i - 1).product()
    }

    #[test]
    fn matching_counts() {
        for n in 1..=6 {
            assert_eq!(all_matchings(n).len() as u64, double_factorial_odd(n));
        }
        assert_eq!(search_extremal_1d(7, 7).unwrap().enumerated, 135_135);
    }

    #[test]
    fn matchings_come_in_lexicographic_order() {
        let ms = all_matchings(4);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_1d_examples() {
        assert_eq!(search_extremal_1d(3, 1).unwrap().max_pairs, 0);
        assert_eq!(search_extremal_1d(4, 2).unwrap().max_pairs, 3);
        assert_eq!(search_extremal_1d(5, 3).unwrap().max_pairs, 7);
    }

    #[test]
    fn witness_matches_reported_pairs() {
        let r = search_extremal_1d(5, 2).unwrap();
        assert_eq!(count_pairs_naive(&r.witness).pairs, r.max_pairs);
        assert!(max_depth(&r.witness).unwrap().depth <= 2);
    }

    #[test]
    fn limits() {
        assert!(matches!(search_extremal_1d(8, 2), Err(Error::LimitExceeded(_))));
        assert!(matches!(search_extremal_1d(0, 1), Err(Error::LimitExceeded(_))));
        assert!(matches!(search_extremal_d(5, 2, 2), Err(Error::LimitExceeded(_))));
        assert!(matches!(search_extremal_d(3, 2, 4), Err(Error::LimitExceeded(_))));
        assert!(matches!(search_extremal_d(3, 2, 1), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn multi_dimensional_examples() {
        assert_eq!(search_extremal_d(2, 1, 2).unwrap().max_pairs, 0);
        let r = search_extremal_d(3, 2, 2).unwrap();
        assert!(r.max_pairs >= 2);
        assert_eq!(count_pairs_naive(&r.witness).pairs, r.max_pairs);
        assert!(max_depth(&r.witness).unwrap().depth <= 2);
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(3, 0), 1);
        assert_eq!(clique_number(3, 0b111), 3);
        assert_eq!(clique_number(4, pair_bit(4, 0, 1) | pair_bit(4, 2, 3)), 2);
    }

    #[test]
    fn modes_agree() {
        let a = search_extremal_1d_with(6, 3, Exec::Sequential).unwrap();
        let b = search_extremal_1d_with(6, 3, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        let a = search_extremal_d_with(4, 2, 2, Exec::Sequential).unwrap();
        let b = search_extremal_d_with(4, 2, 2, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
