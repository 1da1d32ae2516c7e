//! Intersection-graph statistics: pair counts, the intersecting fraction,
//! degrees and edge lists.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{boxes_intersect, BoxFamily, Key};
use crate::rational::{serde_str_opt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub n: usize,
    pub pairs: u64,
    /// `pairs / C(n, 2)`; absent when `n < 2`.
    #[serde(with = "serde_str_opt")]
    pub alpha: Option<Rational>,
    pub degrees: Vec<usize>,
}

impl PairReport {
    fn from_degrees(pairs: u64, degrees: Vec<usize>) -> Self {
        let n = degrees.len();
        PairReport { n, pairs, alpha: pair_fraction(pairs, n), degrees }
    }

    /// Degree histogram as `(degree, count)` in ascending degree order.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for &d in &self.degrees {
            *hist.entry(d).or_insert(0usize) += 1;
        }
        hist.into_iter().collect()
    }
}

pub fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

pub fn pair_fraction(pairs: u64, n: usize) -> Option<Rational> {
    (n >= 2).then(|| Rational::new(pairs as i128, choose2(n) as i128))
}

fn neighbours_above(f: &BoxFamily, i: usize) -> Vec<usize> {
    let boxes = f.boxes();
    ((i + 1)..boxes.len())
        .filter(|&j| boxes_intersect(&boxes[i], &boxes[j]).expect("family boxes share a dimension"))
        .collect()
}

/// Intersecting pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn edge_list(f: &BoxFamily) -> Vec<(usize, usize)> {
    edge_list_with(f, Exec::default())
}

pub fn edge_list_with(f: &BoxFamily, exec: Exec) -> Vec<(usize, usize)> {
    exec.map_range(0..f.len(), |i| neighbours_above(f, i))
        .into_iter()
        .enumerate()
        .flat_map(|(i, js)| js.into_iter().map(move |j| (i, j)))
        .collect()
}

/// Tests every unordered pair.
pub fn count_pairs_naive(f: &BoxFamily) -> PairReport {
    count_pairs_naive_with(f, Exec::default())
}

pub fn count_pairs_naive_with(f: &BoxFamily, exec: Exec) -> PairReport {
    let rows = exec.map_range(0..f.len(), |i| neighbours_above(f, i));
    let mut degrees = vec![0usize; f.len()];
    let mut pairs = 0u64;
    for (i, js) in rows.iter().enumerate() {
        pairs += js.len() as u64;
        degrees[i] += js.len();
        for &j in js {
            degrees[j] += 1;
        }
    }
    PairReport::from_degrees(pairs, degrees)
}

/// Endpoint-event sweep for one-dimensional families, `O(n log n)`.
///
/// Starts are processed before ends at equal keys; each start meets every
/// interval still active. Degrees come from rank counts:
/// `deg(i) = #{j : start_j <= end_i} - #{j : end_j < start_i} - 1`.
pub fn count_pairs_sweep_1d(f: &BoxFamily) -> Result<PairReport> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim() });
    }
    let intervals = f.project(0);
    let starts: Vec<Key> = intervals.iter().map(|iv| iv.start_key()).collect();
    let ends: Vec<Key> = intervals.iter().map(|iv| iv.end_key()).collect();

    // (key, 0 = start / 1 = end)
    let mut events: Vec<(Key, u8)> = starts
        .iter()
        .map(|k| (*k, 0))
        .chain(ends.iter().map(|k| (*k, 1)))
        .collect();
    events.sort_unstable();
    let mut active = 0u64;
    let mut pairs = 0u64;
    for (_, kind) in &events {
        if *kind == 0 {
            pairs += active;
            active += 1;
        } else {
            active -= 1;
        }
    }

    let mut sorted_starts = starts.clone();
    sorted_starts.sort_unstable();
    let mut sorted_ends = ends.clone();
    sorted_ends.sort_unstable();
    let degrees = starts
        .iter()
        .zip(&ends)
        .map(|(s, e)| {
            let began = sorted_starts.partition_point(|x| x <= e);
            let finished = sorted_ends.partition_point(|x| x < s);
            began - finished - 1
        })
        .collect();
    Ok(PairReport::from_degrees(pairs, degrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{AxisBox, Interval};
    use crate::rational::int;

    fn family_1d(ivs: &[(i64, i64)], open: bool) -> BoxFamily {
        let boxes = ivs
            .iter()
            .map(|&(a, b)| {
                let iv = if open {
                    Interval::open(int(a), int(b))
                } else {
                    Interval::closed(int(a), int(b))
                };
                AxisBox::new(vec![iv.unwrap()]).unwrap()
            })
            .collect();
        BoxFamily::new(1, boxes).unwrap()
    }

    #[test]
    fn identical_boxes_form_a_complete_graph() {
        let f = family_1d(&[(0, 1); 5], true);
        let r = count_pairs_naive(&f);
        assert_eq!(r.pairs, 10);
        assert_eq!(r.alpha, Some(Rational::from_integer(1)));
        assert_eq!(r.degrees, vec![4; 5]);
        assert_eq!(count_pairs_sweep_1d(&f).unwrap(), r);
        assert_eq!(edge_list(&f).len(), 10);
    }

    #[test]
    fn disjoint_and_touching() {
        let open = family_1d(&[(0, 1), (1, 2), (2, 3)], true);
        assert_eq!(count_pairs_sweep_1d(&open).unwrap().pairs, 0);
        assert!(edge_list(&open).is_empty());
        let closed = family_1d(&[(0, 1), (1, 2), (2, 3)], false);
        let r = count_pairs_sweep_1d(&closed).unwrap();
        assert_eq!(r.pairs, 2);
        assert_eq!(r.degrees, vec![1, 2, 1]);
        assert_eq!(r, count_pairs_naive(&closed));
    }

    #[test]
    fn alpha_absent_below_two_boxes() {
        let f = family_1d(&[(0, 1)], true);
        let r = count_pairs_naive(&f);
        assert_eq!((r.pairs, r.alpha), (0, None));
        let empty = BoxFamily::new(2, vec![]).unwrap();
        assert_eq!(count_pairs_naive(&empty).alpha, None);
    }

    #[test]
    fn sweep_rejects_higher_dimensions() {
        let f = BoxFamily::new(2, vec![]).unwrap();
        assert!(count_pairs_sweep_1d(&f).is_err());
    }

    #[test]
    fn histogram_counts_degrees() {
        let f = family_1d(&[(0, 1), (1, 2), (2, 3)], false);
        assert_eq!(count_pairs_naive(&f).degree_histogram(), vec![(1, 2), (2, 1)]);
    }
}
