//! Intervals, boxes, families and points with exact open/closed boundaries.
//!
//! Boundary semantics are decided by comparing [`Key`]s: a boundary at value
//! `v` sits just before `v` (open upper end), at `v` (closed end), or just
//! after `v` (open lower end). An interval is the key range `[start, end]`, and
//! two intervals meet iff `max(start) <= min(end)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{check_magnitude, format_rational, midpoint, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Endpoint {
    value: Rational,
    open: bool,
}

impl Endpoint {
    pub fn new(value: Rational, open: bool) -> Result<Self> {
        check_magnitude(&value)?;
        Ok(Endpoint { value, open })
    }

    pub fn open(value: Rational) -> Result<Self> {
        Self::new(value, true)
    }

    pub fn closed(value: Rational) -> Result<Self> {
        Self::new(value, false)
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn is_open(&self) -> bool {
        self.open
    }
}

/// Position on the line refined by which side of `value` a boundary sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Key {
    pub value: Rational,
    /// -1 just before `value`, 0 at it, +1 just after it.
    pub side: i8,
}

impl Key {
    pub fn at(value: Rational) -> Self {
        Key { value, side: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Endpoint,
    hi: Endpoint,
}

impl Interval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Result<Self> {
        let nonempty = lo.value < hi.value || (lo.value == hi.value && !lo.open && !hi.open);
        if !nonempty {
            return Err(Error::EmptyInterval(describe(&lo, &hi)));
        }
        Ok(Interval { lo, hi })
    }

    pub fn open(a: Rational, b: Rational) -> Result<Self> {
        Self::new(Endpoint::open(a)?, Endpoint::open(b)?)
    }

    pub fn closed(a: Rational, b: Rational) -> Result<Self> {
        Self::new(Endpoint::closed(a)?, Endpoint::closed(b)?)
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub(crate) fn start_key(&self) -> Key {
        Key {
            value: self.lo.value,
            side: if self.lo.open { 1 } else { 0 },
        }
    }

    pub(crate) fn end_key(&self) -> Key {
        Key {
            value: self.hi.value,
            side: if self.hi.open { -1 } else { 0 },
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let k = Key::at(*x);
        self.start_key() <= k && k <= self.end_key()
    }

    /// A point strictly inside, or the single point of a degenerate interval.
    pub fn interior_point(&self) -> Rational {
        midpoint(&self.lo.value, &self.hi.value)
    }

    pub fn translate(&self, by: &Rational) -> Result<Self> {
        Self::new(
            Endpoint::new(self.lo.value + by, self.lo.open)?,
            Endpoint::new(self.hi.value + by, self.hi.open)?,
        )
    }

    /// Applies `x -> scale * x + shift` with `scale > 0`.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> Result<Self> {
        if *scale <= Rational::from_integer(0) {
            return Err(Error::InvalidParameter("affine scale must be positive".into()));
        }
        Self::new(
            Endpoint::new(self.lo.value * scale + shift, self.lo.open)?,
            Endpoint::new(self.hi.value * scale + shift, self.hi.open)?,
        )
    }
}

fn describe(lo: &Endpoint, hi: &Endpoint) -> String {
    format!(
        "{}{}, {}{}",
        if lo.open { '(' } else { '[' },
        format_rational(&lo.value),
        format_rational(&hi.value),
        if hi.open { ')' } else { ']' }
    )
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&describe(&self.lo, &self.hi))
    }
}

pub fn intervals_intersect(a: &Interval, b: &Interval) -> bool {
    a.start_key().max(b.start_key()) <= a.end_key().min(b.end_key())
}

/// Axis-parallel box: the product of one interval per axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisBox {
    intervals: Vec<Interval>,
}

impl AxisBox {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidParameter("a box needs at least one axis".into()));
        }
        Ok(AxisBox { intervals })
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn axis(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    pub fn interior_point(&self) -> RPoint {
        RPoint::new(self.intervals.iter().map(Interval::interior_point).collect())
    }

    pub fn translate(&self, by: &[Rational]) -> Result<Self> {
        check_dim(self.dim(), by.len())?;
        let intervals = self
            .intervals
            .iter()
            .zip(by)
            .map(|(iv, t)| iv.translate(t))
            .collect::<Result<_>>()?;
        Ok(AxisBox { intervals })
    }

    pub fn affine(&self, scale: &[Rational], shift: &[Rational]) -> Result<Self> {
        check_dim(self.dim(), scale.len())?;
        check_dim(self.dim(), shift.len())?;
        let intervals = self
            .intervals
            .iter()
            .zip(scale.iter().zip(shift))
            .map(|(iv, (s, t))| iv.affine(s, t))
            .collect::<Result<_>>()?;
        Ok(AxisBox { intervals })
    }
}

impl fmt::Display for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub fn boxes_intersect(a: &AxisBox, b: &AxisBox) -> Result<bool> {
    check_dim(a.dim(), b.dim())?;
    Ok(a
        .intervals
        .iter()
        .zip(&b.intervals)
        .all(|(x, y)| intervals_intersect(x, y)))
}

pub fn point_in_box(p: &RPoint, b: &AxisBox) -> Result<bool> {
    check_dim(b.dim(), p.dim())?;
    Ok(b.intervals.iter().zip(&p.coords).all(|(iv, x)| iv.contains(x)))
}

/// Componentwise `(max lo, min hi)`; `None` when the boxes share no point.
pub fn intersection_box(boxes: &[AxisBox]) -> Result<Option<AxisBox>> {
    let first = boxes.first().ok_or(Error::EmptyFamily)?;
    let dim = first.dim();
    for b in boxes {
        check_dim(dim, b.dim())?;
    }
    let mut intervals = Vec::with_capacity(dim);
    for axis in 0..dim {
        let lo = boxes
            .iter()
            .map(|b| b.intervals[axis])
            .max_by_key(|iv| iv.start_key())
            .map(|iv| iv.lo)
            .unwrap();
        let hi = boxes
            .iter()
            .map(|b| b.intervals[axis])
            .min_by_key(|iv| iv.end_key())
            .map(|iv| iv.hi)
            .unwrap();
        match Interval::new(lo, hi) {
            Ok(iv) => intervals.push(iv),
            Err(_) => return Ok(None),
        }
    }
    Ok(Some(AxisBox { intervals }))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RPoint {
    coords: Vec<Rational>,
}

impl RPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

impl fmt::Display for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(c))?;
        }
        f.write_str(")")
    }
}

/// An ordered family of boxes of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxFamily {
    dim: usize,
    boxes: Vec<AxisBox>,
    label: Option<String>,
}

impl BoxFamily {
    pub fn new(dim: usize, boxes: Vec<AxisBox>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        for b in &boxes {
            check_dim(dim, b.dim())?;
        }
        Ok(BoxFamily { dim, boxes, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn push(&mut self, b: AxisBox) -> Result<()> {
        check_dim(self.dim, b.dim())?;
        self.boxes.push(b);
        Ok(())
    }

    /// The `axis`-th coordinate projections, one interval per box.
    pub fn project(&self, axis: usize) -> Vec<Interval> {
        self.boxes.iter().map(|b| b.intervals[axis]).collect()
    }

    /// The indices of boxes containing `p`, ascending.
    pub fn members_at(&self, p: &RPoint) -> Result<Vec<usize>> {
        check_dim(self.dim, p.dim())?;
        Ok(self
            .boxes
            .iter()
            .enumerate()
            .filter(|(_, b)| b.intervals.iter().zip(&p.coords).all(|(iv, x)| iv.contains(x)))
            .map(|(i, _)| i)
            .collect())
    }

    /// Reorders the boxes: the result's `i`-th box is `self.boxes[order[i]]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        BoxFamily {
            dim: self.dim,
            boxes: order.iter().map(|&i| self.boxes[i].clone()).collect(),
            label: self.label.clone(),
        }
    }

    pub fn affine(&self, scale: &[Rational], shift: &[Rational]) -> Result<Self> {
        let boxes = self
            .boxes
            .iter()
            .map(|b| b.affine(scale, shift))
            .collect::<Result<_>>()?;
        Ok(BoxFamily { dim: self.dim, boxes, label: self.label.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn open(a: i64, b: i64) -> Interval {
        Interval::open(int(a), int(b)).unwrap()
    }

    fn closed(a: i64, b: i64) -> Interval {
        Interval::closed(int(a), int(b)).unwrap()
    }

    fn mixed(a: i64, lo_open: bool, b: i64, hi_open: bool) -> Interval {
        Interval::new(
            Endpoint::new(int(a), lo_open).unwrap(),
            Endpoint::new(int(b), hi_open).unwrap(),
        )
        .unwrap()
    }

    fn bx(ivs: &[Interval]) -> AxisBox {
        AxisBox::new(ivs.to_vec()).unwrap()
    }

    #[test]
    fn interval_predicate_table() {
        assert!(intervals_intersect(&open(0, 3), &open(1, 4)));
        assert!(!intervals_intersect(&open(0, 1), &open(1, 2)));
        assert!(intervals_intersect(&closed(0, 1), &closed(1, 2)));
        // touching with one side open
        assert!(!intervals_intersect(&closed(0, 1), &mixed(1, true, 2, false)));
        assert!(!intervals_intersect(&mixed(0, false, 1, true), &closed(1, 2)));
        assert!(intervals_intersect(&mixed(0, true, 1, false), &mixed(1, false, 2, true)));
    }

    #[test]
    fn empty_intervals_are_rejected() {
        assert!(Interval::open(int(1), int(1)).is_err());
        assert!(Interval::closed(int(2), int(1)).is_err());
        assert!(Interval::new(Endpoint::closed(int(1)).unwrap(), Endpoint::open(int(1)).unwrap())
            .is_err());
        assert!(Interval::closed(int(1), int(1)).is_ok());
    }

    #[test]
    fn degenerate_interval_meets_closed_neighbours_only() {
        let point = closed(1, 1);
        assert!(intervals_intersect(&point, &closed(0, 1)));
        assert!(!intervals_intersect(&point, &open(0, 1)));
        assert!(intervals_intersect(&point, &open(0, 2)));
    }

    #[test]
    fn box_predicates() {
        let a = bx(&[closed(0, 2), closed(0, 2)]);
        let b = bx(&[closed(1, 3), closed(1, 3)]);
        assert!(boxes_intersect(&a, &b).unwrap());
        let c = bx(&[open(0, 1), open(0, 1)]);
        let d = bx(&[open(1, 2), open(0, 1)]);
        assert!(!boxes_intersect(&c, &d).unwrap());
        assert!(boxes_intersect(&c, &c).unwrap());
        let e = bx(&[closed(0, 1)]);
        assert_eq!(
            boxes_intersect(&a, &e),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn point_membership() {
        let p11 = RPoint::new(vec![int(1), int(1)]);
        let p00 = RPoint::new(vec![int(0), int(0)]);
        assert!(point_in_box(&p11, &bx(&[closed(0, 2), closed(0, 2)])).unwrap());
        assert!(!point_in_box(&p00, &bx(&[open(0, 1), open(0, 1)])).unwrap());
        assert!(point_in_box(&p00, &bx(&[closed(0, 1), closed(0, 1)])).unwrap());
        assert!(point_in_box(&RPoint::new(vec![int(0)]), &bx(&[closed(0, 1), closed(0, 1)])).is_err());
    }

    #[test]
    fn intersection_box_examples() {
        let w = intersection_box(&[bx(&[closed(0, 2)]), bx(&[closed(1, 3)])]).unwrap();
        assert_eq!(w, Some(bx(&[closed(1, 2)])));
        let none = intersection_box(&[bx(&[open(0, 1)]), bx(&[open(1, 2)])]).unwrap();
        assert_eq!(none, None);
        let single = bx(&[mixed(0, true, 5, false), closed(-1, 1)]);
        assert_eq!(intersection_box(std::slice::from_ref(&single)).unwrap(), Some(single));
        assert_eq!(intersection_box(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn intersection_box_keeps_tighter_flags() {
        // [0,2) and (0,2]: result is (0,2)
        let w = intersection_box(&[bx(&[mixed(0, false, 2, true)]), bx(&[mixed(0, true, 2, false)])])
            .unwrap()
            .unwrap();
        assert_eq!(w, bx(&[open(0, 2)]));
    }

    #[test]
    fn interior_points_are_inside() {
        let b = bx(&[open(0, 1), closed(3, 3), mixed(-2, true, 5, false)]);
        let p = b.interior_point();
        assert_eq!(p.coords(), &[ratio(1, 2), int(3), ratio(3, 2)]);
        assert!(point_in_box(&p, &b).unwrap());
    }

    #[test]
    fn family_rejects_wrong_dimension() {
        let err = BoxFamily::new(2, vec![bx(&[closed(0, 1)])]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
        assert!(BoxFamily::new(0, vec![]).is_err());
    }
}
