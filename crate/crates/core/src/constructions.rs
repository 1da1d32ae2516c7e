//! Generators: the complete multipartite slab construction, the open-interval
//! staircase, and seeded random families on a dyadic grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{AxisBox, BoxFamily, Endpoint, Interval};
use crate::rational::{check_magnitude, int, Rational};

/// Random coordinates are multiples of `1 / GRID_DENOMINATOR`.
pub const GRID_DENOMINATOR: i128 = 1 << 20;

/// Balanced class sizes for splitting `n` items into `m` classes, larger
/// classes first.
pub fn balanced_parts(n: usize, m: usize) -> Vec<usize> {
    let (q, r) = (n / m, n % m);
    (0..m).map(|i| if i < r { q + 1 } else { q }).collect()
}

/// `n` open boxes in `d` classes whose intersection graph is the balanced
/// complete `d`-partite graph.
///
/// The ambient box is `(0, M)^d` with `M = ceil(n / d)`. Box `j` (1-based) of
/// class `i` is `(j - 1, j)` on axis `i` and `(0, M)` on every other axis, so
/// boxes of one class are disjoint slabs and boxes of different classes meet.
/// Boxes are listed class by class.
pub fn gen_turan_family(n: usize, d: usize) -> Result<BoxFamily> {
    if d == 0 || n < d {
        return Err(Error::InvalidParameter(format!(
            "turan family needs n >= d >= 1, got n={n}, d={d}"
        )));
    }
    let m = n.div_ceil(d) as i64;
    let ambient = Interval::open(int(0), int(m))?;
    let mut boxes = Vec::with_capacity(n);
    for (class, size) in balanced_parts(n, d).into_iter().enumerate() {
        for j in 1..=size as i64 {
            let mut intervals = vec![ambient; d];
            intervals[class] = Interval::open(int(j - 1), int(j))?;
            boxes.push(AxisBox::new(intervals)?);
        }
    }
    Ok(BoxFamily::new(d, boxes)?.with_label(format!("turan n={n} d={d}")))
}

/// The open intervals `(i, i + k)` for `i = 1..=n`.
pub fn gen_staircase_family(n: usize, k: usize) -> Result<BoxFamily> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "staircase family needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let boxes = (1..=n as i64)
        .map(|i| AxisBox::new(vec![Interval::open(int(i), int(i + k as i64))?]))
        .collect::<Result<_>>()?;
    Ok(BoxFamily::new(1, boxes)?.with_label(format!("staircase n={n} k={k}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub extent: Rational,
    pub side_min: Rational,
    pub side_max: Rational,
    /// Closed boxes when set, open otherwise.
    pub closed: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { extent: int(100), side_min: int(1), side_max: int(50), closed: true }
    }
}

impl RandomParams {
    pub fn validate(&self) -> Result<()> {
        for r in [&self.extent, &self.side_min, &self.side_max] {
            check_magnitude(r)?;
        }
        let zero = int(0);
        if !(zero < self.side_min && self.side_min <= self.side_max && self.side_max <= self.extent)
        {
            return Err(Error::InvalidParameter(
                "random family needs 0 < side_min <= side_max <= extent".into(),
            ));
        }
        if self.extent > int(1 << 40) {
            return Err(Error::InvalidParameter("extent must not exceed 2^40".into()));
        }
        Ok(())
    }
}

fn to_grid(r: &Rational) -> i128 {
    (r * GRID_DENOMINATOR).round().to_integer()
}

/// Each axis interval has its center uniform on the grid points of
/// `[0, extent]` and its length uniform on the grid points of
/// `[side_min, side_max]` (at least one grid step).
pub fn gen_random_family(n: usize, d: usize, seed: u64, params: &RandomParams) -> Result<BoxFamily> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    params.validate()?;
    let center_max = (params.extent * GRID_DENOMINATOR).floor().to_integer();
    let len_min = to_grid(&params.side_min).max(1);
    let len_max = to_grid(&params.side_max).max(len_min);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut boxes = Vec::with_capacity(n);
    for _ in 0..n {
        let mut intervals = Vec::with_capacity(d);
        for _ in 0..d {
            let center: i128 = rng.random_range(0..=center_max);
            let len: i128 = rng.random_range(len_min..=len_max);
            let lo = center - len / 2;
            let hi = lo + len;
            let open = !params.closed;
            intervals.push(Interval::new(
                Endpoint::new(Rational::new(lo, GRID_DENOMINATOR), open)?,
                Endpoint::new(Rational::new(hi, GRID_DENOMINATOR), open)?,
            )?);
        }
        boxes.push(AxisBox::new(intervals)?);
    }
    Ok(BoxFamily::new(d, boxes)?.with_label(format!("random n={n} d={d} seed={seed}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::count_pairs_naive;
    use crate::depth::max_depth;
    use crate::geometry::boxes_intersect;

    #[test]
    fn balanced_parts_match_ceil_floor_split() {
        assert_eq!(balanced_parts(7, 3), vec![3, 2, 2]);
        assert_eq!(balanced_parts(6, 3), vec![2, 2, 2]);
        assert_eq!(balanced_parts(3, 3), vec![1, 1, 1]);
    }

    #[test]
    fn turan_graph_is_complete_multipartite() {
        let f = gen_turan_family(7, 3).unwrap();
        let class_of = [0, 0, 0, 1, 1, 2, 2];
        for i in 0..7 {
            for j in (i + 1)..7 {
                let meet = boxes_intersect(&f.boxes()[i], &f.boxes()[j]).unwrap();
                assert_eq!(meet, class_of[i] != class_of[j], "{i} {j}");
            }
        }
        assert_eq!(count_pairs_naive(&f).pairs, 16);
    }

    #[test]
    fn turan_with_singleton_classes() {
        for d in 1..=4 {
            let f = gen_turan_family(d, d).unwrap();
            assert_eq!(count_pairs_naive(&f).pairs, (d * (d - 1) / 2) as u64);
            assert_eq!(max_depth(&f).unwrap().depth, d);
        }
    }

    #[test]
    fn turan_rejects_bad_params() {
        assert!(gen_turan_family(2, 3).is_err());
        assert!(gen_turan_family(5, 0).is_err());
    }

    #[test]
    fn staircase_examples() {
        let f = gen_staircase_family(5, 2).unwrap();
        assert_eq!((count_pairs_naive(&f).pairs, max_depth(&f).unwrap().depth), (4, 2));
        let f = gen_staircase_family(6, 1).unwrap();
        assert_eq!((count_pairs_naive(&f).pairs, max_depth(&f).unwrap().depth), (0, 1));
        let f = gen_staircase_family(6, 6).unwrap();
        assert_eq!((count_pairs_naive(&f).pairs, max_depth(&f).unwrap().depth), (15, 6));
        assert!(gen_staircase_family(3, 0).is_err());
        assert!(gen_staircase_family(3, 4).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let p = RandomParams::default();
        let a = gen_random_family(40, 3, 9, &p).unwrap();
        let b = gen_random_family(40, 3, 9, &p).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random_family(40, 3, 10, &p).unwrap());
        assert!(gen_random_family(0, 2, 1, &p).unwrap().is_empty());
    }

    #[test]
    fn full_extent_boxes_pairwise_intersect() {
        let p = RandomParams { extent: int(10), side_min: int(10), side_max: int(10), closed: true };
        let f = gen_random_family(50, 2, 1, &p).unwrap();
        let r = count_pairs_naive(&f);
        assert_eq!(r.alpha, Some(int(1)));
        assert_eq!(max_depth(&f).unwrap().depth, 50);
    }

    #[test]
    fn random_params_are_checked() {
        let bad = RandomParams { extent: int(1), side_min: int(2), side_max: int(3), closed: true };
        assert!(gen_random_family(3, 1, 0, &bad).is_err());
        let zero = RandomParams { side_min: int(0), ..RandomParams::default() };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn random_coordinates_are_on_the_grid() {
        let f = gen_random_family(20, 2, 3, &RandomParams::default()).unwrap();
        for b in f.boxes() {
            for iv in b.intervals() {
                assert_eq!(GRID_DENOMINATOR % iv.lo().value().denom(), 0);
                assert_eq!(GRID_DENOMINATOR % iv.hi().value().denom(), 0);
            }
        }
    }
}
