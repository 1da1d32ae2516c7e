//! Maximum point depth with a witness.
//!
//! Each axis is compressed into atoms: the distinct endpoint values, the open
//! gaps between consecutive values, and the two unbounded end gaps. Box
//! membership is constant on an atom, so scanning one representative per atom
//! per axis is exhaustive. The scan intersects per-atom membership bitsets
//! axis by axis and prunes once the running popcount cannot beat the best.

use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{boxes_intersect, BoxFamily, Interval, Key, RPoint};
use crate::rational::{midpoint, serde_str_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthWitness {
    #[serde(with = "point_serde")]
    pub point: RPoint,
    pub depth: usize,
    /// Indices of the boxes containing `point`, ascending.
    pub members: Vec<usize>,
}

mod point_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &RPoint, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_str_vec::serialize(p.coords(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RPoint, D::Error> {
        serde_str_vec::deserialize(d).map(RPoint::new)
    }
}

impl DepthWitness {
    /// Re-tests every box against the witness point.
    pub fn validate(&self, f: &BoxFamily) -> Result<bool> {
        let members = f.members_at(&self.point)?;
        Ok(members == self.members && self.depth == members.len())
    }
}

/// Compressed atoms of one axis.
struct AxisAtoms {
    values: Vec<Rational>,
    /// `(atom index, membership)` for nonempty memberships, first occurrence
    /// of each distinct membership only, in atom order.
    candidates: Vec<(usize, FixedBitSet)>,
}

impl AxisAtoms {
    fn build(intervals: &[Interval]) -> Self {
        let n = intervals.len();
        let mut values: Vec<Rational> = intervals
            .iter()
            .flat_map(|iv| [*iv.lo().value(), *iv.hi().value()])
            .collect();
        values.sort_unstable();
        values.dedup();

        // atom 2r is the gap before value r, atom 2r + 1 is value r
        let atom_count = 2 * values.len() + 1;
        let mut sets = vec![FixedBitSet::with_capacity(n); atom_count];
        for (i, iv) in intervals.iter().enumerate() {
            let r = values.binary_search(iv.lo().value()).unwrap();
            let s = values.binary_search(iv.hi().value()).unwrap();
            let first = if iv.lo().is_open() { 2 * r + 2 } else { 2 * r + 1 };
            let last = if iv.hi().is_open() { 2 * s } else { 2 * s + 1 };
            for set in &mut sets[first..=last] {
                set.insert(i);
            }
        }

        let mut seen = std::collections::HashSet::new();
        let candidates = sets
            .into_iter()
            .enumerate()
            .filter(|(_, set)| !set.is_clear() && seen.insert(set.clone()))
            .collect();
        AxisAtoms { values, candidates }
    }

    fn representative(&self, atom: usize) -> Rational {
        let m = self.values.len();
        if atom % 2 == 1 {
            self.values[atom / 2]
        } else if atom == 0 {
            self.values[0] - 1
        } else if atom == 2 * m {
            self.values[m - 1] + 1
        } else {
            midpoint(&self.values[atom / 2 - 1], &self.values[atom / 2])
        }
    }
}

struct Best {
    depth: usize,
    combo: Vec<usize>,
}

fn scan(
    axes: &[AxisAtoms],
    level: usize,
    current: &FixedBitSet,
    combo: &mut Vec<usize>,
    scratch: &mut [FixedBitSet],
    best: &mut Option<Best>,
    floor: &AtomicUsize,
) {
    let count = current.count_ones(..);
    let local = best.as_ref().map_or(0, |b| b.depth);
    if count <= local || count < floor.load(Ordering::Relaxed) {
        return;
    }
    if level == axes.len() {
        *best = Some(Best { depth: count, combo: combo.clone() });
        floor.fetch_max(count, Ordering::Relaxed);
        return;
    }
    let (head, rest) = scratch.split_first_mut().unwrap();
    for (atom, set) in &axes[level].candidates {
        head.clone_from(current);
        head.intersect_with(set);
        combo.push(*atom);
        scan(axes, level + 1, head, combo, rest, best, floor);
        combo.pop();
    }
}

/// Deepest point of the family; ties go to the first atom combination in
/// axis-major scan order.
pub fn max_depth(f: &BoxFamily) -> Result<DepthWitness> {
    max_depth_with(f, Exec::default())
}

pub fn max_depth_with(f: &BoxFamily, exec: Exec) -> Result<DepthWitness> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = f.len();
    let d = f.dim();
    let axes: Vec<AxisAtoms> = (0..d).map(|a| AxisAtoms::build(&f.project(a))).collect();

    // Seed the floor with the point built from each axis's deepest atom; it is
    // achievable, so nothing at the optimum is ever pruned.
    let mut seed = FixedBitSet::with_capacity(n);
    seed.insert_range(..);
    for axis in &axes {
        let deepest = axis
            .candidates
            .iter()
            .max_by_key(|(atom, set)| (set.count_ones(..), std::cmp::Reverse(*atom)))
            .map(|(_, set)| set)
            .expect("nonempty family has a nonempty atom on every axis");
        seed.intersect_with(deepest);
    }
    let floor = AtomicUsize::new(seed.count_ones(..));

    let results = exec.map(&axes[0].candidates, |(atom, set)| {
        let mut best = None;
        let mut combo = vec![*atom];
        let mut scratch = vec![FixedBitSet::with_capacity(n); d - 1];
        scan(&axes, 1, set, &mut combo, &mut scratch, &mut best, &floor);
        best
    });
    let best = results
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.depth > a.depth { b } else { a })
        .expect("the seeded floor is always reachable");

    let point = RPoint::new(
        best.combo
            .iter()
            .zip(&axes)
            .map(|(&atom, axis)| axis.representative(atom))
            .collect(),
    );
    let members = f.members_at(&point)?;
    debug_assert_eq!(members.len(), best.depth);
    Ok(DepthWitness { point, depth: members.len(), members })
}

/// Endpoint-event sweep over intervals. Returns the leftmost point at which
/// the number of covering intervals peaks.
pub fn max_depth_1d(intervals: &[Interval]) -> Result<DepthWitness> {
    if intervals.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut events: Vec<(Key, u8)> = intervals
        .iter()
        .flat_map(|iv| [(iv.start_key(), 0), (iv.end_key(), 1)])
        .collect();
    events.sort_unstable();

    let mut active = 0usize;
    let mut peak = 0usize;
    let mut peak_key = events[0].0;
    for (key, kind) in &events {
        if *kind == 0 {
            active += 1;
            if active > peak {
                peak = active;
                peak_key = *key;
            }
        } else {
            active -= 1;
        }
    }

    let x = if peak_key.side == 0 {
        peak_key.value
    } else {
        // an open start at v: the peak region is the gap right after v
        let next = events
            .iter()
            .map(|(k, _)| k.value)
            .filter(|v| *v > peak_key.value)
            .min()
            .expect("an interval opening at v ends beyond v");
        midpoint(&peak_key.value, &next)
    };
    let members: Vec<usize> = intervals
        .iter()
        .enumerate()
        .filter(|(_, iv)| iv.contains(&x))
        .map(|(i, _)| i)
        .collect();
    debug_assert_eq!(members.len(), peak);
    Ok(DepthWitness { point: RPoint::new(vec![x]), depth: members.len(), members })
}

pub const MAX_CLIQUE_LIMIT: usize = 16;

/// Clique number of the intersection graph by branch and bound, for
/// families of at most [`MAX_CLIQUE_LIMIT`] boxes.
pub fn max_clique_bruteforce(f: &BoxFamily) -> Result<usize> {
    max_clique_bruteforce_limited(f, MAX_CLIQUE_LIMIT)
}

pub fn max_clique_bruteforce_limited(f: &BoxFamily, limit: usize) -> Result<usize> {
    let n = f.len();
    if n > limit || n > 64 {
        return Err(Error::LimitExceeded(format!(
            "clique search over {n} boxes exceeds the limit of {}",
            limit.min(64)
        )));
    }
    let boxes = f.boxes();
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if boxes_intersect(&boxes[i], &boxes[j])? {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    grow_clique(&adj, 0, all, &mut best);
    Ok(best)
}

fn grow_clique(adj: &[u64], size: usize, mut candidates: u64, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    while candidates != 0 {
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= !(1 << v);
        grow_clique(adj, size + 1, candidates & adj[v], best);
    }
}
