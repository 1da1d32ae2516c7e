//! Deep-point extraction by independent one-dimensional stabbing.
//!
//! Every axis projection of the family is an interval family; stab each at its
//! deepest point `c_i` and take the point `(c_1, ..., c_d)`. A box misses that
//! point iff some projection misses its `c_i`, so the point's depth is at least
//! `n - sum_i |D_i|` where `D_i` is the set of boxes whose `i`-th projection
//! misses `c_i`. If an `alpha` fraction of pairs intersect, each projection
//! family has at least that fraction too, which caps `|D_i|` at
//! `sqrt(1 - alpha) n`.

use serde::{Deserialize, Serialize};

use crate::depth::{max_depth, max_depth_1d, DepthWitness};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{BoxFamily, RPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub witness: DepthWitness,
    /// `|D_i|`: boxes whose `i`-th projection misses the stab coordinate.
    pub miss_sizes: Vec<usize>,
}

pub fn extract(f: &BoxFamily) -> Result<Extraction> {
    extract_with(f, Exec::default())
}

pub fn extract_with(f: &BoxFamily, exec: Exec) -> Result<Extraction> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let axes: Vec<usize> = (0..f.dim()).collect();
    let stabs = exec
        .map(&axes, |&axis| max_depth_1d(&f.project(axis)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let miss_sizes = stabs.iter().map(|w| f.len() - w.depth).collect();
    let point = RPoint::new(stabs.iter().map(|w| w.point.coords()[0]).collect());
    let members = f.members_at(&point)?;
    Ok(Extraction {
        witness: DepthWitness { point, depth: members.len(), members },
        miss_sizes,
    })
}

pub fn extract_deep_point(f: &BoxFamily) -> Result<DepthWitness> {
    extract(f).map(|e| e.witness)
}

/// `(extracted depth, optimal depth)`.
pub fn extraction_gap(f: &BoxFamily) -> Result<(usize, usize)> {
    Ok((extract_deep_point(f)?.depth, max_depth(f)?.depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_turan_family;
    use crate::geometry::{AxisBox, Interval};
    use crate::rational::int;

    #[test]
    fn identical_boxes_are_all_hit() {
        let b = AxisBox::new(vec![Interval::open(int(0), int(2)).unwrap(); 3]).unwrap();
        let f = BoxFamily::new(3, vec![b; 7]).unwrap();
        let e = extract(&f).unwrap();
        assert_eq!(e.witness.depth, 7);
        assert_eq!(e.miss_sizes, vec![0, 0, 0]);
        assert_eq!(extraction_gap(&f).unwrap(), (7, 7));
    }

    #[test]
    fn turan_family_reaches_one_per_class() {
        let f = gen_turan_family(6, 3).unwrap();
        let e = extract(&f).unwrap();
        assert_eq!(e.witness.depth, 3);
        assert!(e.witness.validate(&f).unwrap());
        assert_eq!(extraction_gap(&f).unwrap(), (3, 3));
    }

    #[test]
    fn empty_family_errors() {
        assert_eq!(extract(&BoxFamily::new(2, vec![]).unwrap()), Err(Error::EmptyFamily));
    }

    #[test]
    fn union_of_miss_sets_bounds_depth() {
        let f = gen_turan_family(11, 4).unwrap();
        let e = extract(&f).unwrap();
        assert!(e.witness.depth + e.miss_sizes.iter().sum::<usize>() >= f.len());
    }
}
