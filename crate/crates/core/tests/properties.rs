//! Property tests for the geometric predicates, pair counting and depth.
//!
//! Families use small integer endpoints with random open/closed flags so that
//! touching boundaries are common. Every arrangement atom of such a family
//! contains an integer or half-integer point, which gives an independent
//! grid-scan oracle for depth.

use boxhelly::analytics::{count_pairs_naive, count_pairs_sweep_1d, edge_list};
use boxhelly::depth::{max_clique_bruteforce, max_depth, max_depth_1d};
use boxhelly::extraction::extract_deep_point;
use boxhelly::geometry::{
    boxes_intersect, intersection_box, point_in_box, AxisBox, BoxFamily, Endpoint, Interval, RPoint,
};
use boxhelly::rational::{int, ratio, Rational};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval> {
    (-6i64..6, 0i64..6, any::<bool>(), any::<bool>()).prop_map(|(lo, len, lo_open, hi_open)| {
        let (lo_open, hi_open) = if len == 0 { (false, false) } else { (lo_open, hi_open) };
        Interval::new(
            Endpoint::new(int(lo), lo_open).unwrap(),
            Endpoint::new(int(lo + len), hi_open).unwrap(),
        )
        .unwrap()
    })
}

fn axis_box(d: usize) -> impl Strategy<Value = AxisBox> {
    prop::collection::vec(interval(), d).prop_map(|ivs| AxisBox::new(ivs).unwrap())
}

fn family(d: usize, max_n: usize) -> impl Strategy<Value = BoxFamily> {
    prop::collection::vec(axis_box(d), 1..=max_n).prop_map(move |bs| BoxFamily::new(d, bs).unwrap())
}

fn any_family(max_n: usize) -> impl Strategy<Value = BoxFamily> {
    (1usize..=3).prop_flat_map(move |d| family(d, max_n))
}

fn box_pair() -> impl Strategy<Value = (AxisBox, AxisBox)> {
    (1usize..=3).prop_flat_map(|d| (axis_box(d), axis_box(d)))
}

/// Brute-force depth over the half-integer grid covering every endpoint.
fn grid_depth(f: &BoxFamily) -> usize {
    let axis_grid: Vec<Vec<Rational>> = (0..f.dim())
        .map(|_| (-14..=26).map(|h| ratio(h, 2)).collect())
        .collect();
    let mut best = 0;
    let mut idx = vec![0usize; f.dim()];
    loop {
        let p = RPoint::new(idx.iter().zip(&axis_grid).map(|(&i, g)| g[i]).collect());
        best = best.max(f.members_at(&p).unwrap().len());
        let mut axis = 0;
        loop {
            if axis == idx.len() {
                return best;
            }
            idx[axis] += 1;
            if idx[axis] < axis_grid[axis].len() {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn intersection_is_symmetric((a, b) in box_pair()) {
        prop_assert_eq!(boxes_intersect(&a, &b).unwrap(), boxes_intersect(&b, &a).unwrap());
        prop_assert!(boxes_intersect(&a, &a).unwrap());
    }

    #[test]
    fn intersection_box_agrees_with_predicate((a, b) in box_pair()) {
        let w = intersection_box(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(w.is_some(), boxes_intersect(&a, &b).unwrap());
        if let Some(w) = w {
            let p = w.interior_point();
            prop_assert!(point_in_box(&p, &a).unwrap());
            prop_assert!(point_in_box(&p, &b).unwrap());
        }
    }

    #[test]
    fn translation_keeps_intersection((a, b) in box_pair(), shift in prop::collection::vec((-50i64..50, 1i64..8), 3)) {
        let t: Vec<Rational> = shift[..a.dim()].iter().map(|&(p, q)| ratio(p, q)).collect();
        prop_assert_eq!(
            boxes_intersect(&a.translate(&t).unwrap(), &b.translate(&t).unwrap()).unwrap(),
            boxes_intersect(&a, &b).unwrap()
        );
    }

    #[test]
    fn sweep_matches_naive(f in family(1, 40)) {
        prop_assert_eq!(count_pairs_sweep_1d(&f).unwrap(), count_pairs_naive(&f));
    }

    #[test]
    fn report_invariants(f in any_family(20)) {
        let r = count_pairs_naive(&f);
        prop_assert_eq!(r.degrees.iter().sum::<usize>() as u64, 2 * r.pairs);
        prop_assert!(r.pairs <= (f.len() * (f.len() - 1) / 2) as u64);
        prop_assert_eq!(edge_list(&f).len() as u64, r.pairs);
        if let Some(a) = r.alpha {
            prop_assert!(a >= int(0) && a <= int(1));
        }
    }

    #[test]
    fn permutation_permutes_degrees(f in any_family(15), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..f.len()).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let g = f.permuted(&order);
        let (rf, rg) = (count_pairs_naive(&f), count_pairs_naive(&g));
        prop_assert_eq!(rf.pairs, rg.pairs);
        prop_assert_eq!(rf.alpha, rg.alpha);
        for (i, &o) in order.iter().enumerate() {
            prop_assert_eq!(rg.degrees[i], rf.degrees[o]);
        }
        prop_assert_eq!(max_depth(&f).unwrap().depth, max_depth(&g).unwrap().depth);
    }

    #[test]
    fn affine_rescaling_keeps_everything(
        f in any_family(15),
        coeffs in prop::collection::vec((1i64..9, 1i64..5, -20i64..20), 3),
    ) {
        let d = f.dim();
        let scale: Vec<Rational> = coeffs[..d].iter().map(|&(p, q, _)| ratio(p, q)).collect();
        let shift: Vec<Rational> = coeffs[..d].iter().map(|&(_, q, t)| ratio(t, q + 1)).collect();
        let g = f.affine(&scale, &shift).unwrap();
        prop_assert_eq!(count_pairs_naive(&f), count_pairs_naive(&g));
        let w = max_depth(&f).unwrap();
        let wg = max_depth(&g).unwrap();
        prop_assert_eq!(w.depth, wg.depth);
        let moved = RPoint::new(
            w.point.coords().iter().zip(scale.iter().zip(&shift)).map(|(x, (s, t))| x * s + t).collect(),
        );
        prop_assert_eq!(g.members_at(&moved).unwrap(), w.members);
    }

    #[test]
    fn depth_matches_grid_oracle_and_clique(f in any_family(9)) {
        let w = max_depth(&f).unwrap();
        prop_assert!(w.validate(&f).unwrap());
        prop_assert_eq!(w.depth, grid_depth(&f));
        prop_assert_eq!(w.depth, max_clique_bruteforce(&f).unwrap());
    }

    #[test]
    fn one_dimensional_depth_agrees(f in family(1, 30)) {
        let w1 = max_depth_1d(&f.project(0)).unwrap();
        let w = max_depth(&f).unwrap();
        prop_assert_eq!(w1.depth, w.depth);
        prop_assert_eq!(w1.depth, grid_depth(&f));
        prop_assert!(w1.validate(&f).unwrap());
    }

    #[test]
    fn appending_never_lowers_depth(f in any_family(10), extra in prop::collection::vec(interval(), 3)) {
        let before = max_depth(&f).unwrap().depth;
        let mut g = f.clone();
        g.push(AxisBox::new(extra[..f.dim()].to_vec()).unwrap()).unwrap();
        prop_assert!(max_depth(&g).unwrap().depth >= before);
    }

    #[test]
    fn extraction_is_sound_and_dominated(f in any_family(12)) {
        let e = extract_deep_point(&f).unwrap();
        prop_assert!(e.validate(&f).unwrap());
        prop_assert!(e.depth <= max_depth(&f).unwrap().depth);
    }
}

#[test]
fn turan_n4_d2_edges_are_the_four_cross_pairs() {
    let f = boxhelly::gen_turan_family(4, 2).unwrap();
    let brute: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
        .filter(|&(i, j)| boxes_intersect(&f.boxes()[i], &f.boxes()[j]).unwrap())
        .collect();
    assert_eq!(brute, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    assert_eq!(edge_list(&f), brute);
}

#[test]
fn clique_oracle_examples() {
    let f = boxhelly::gen_turan_family(6, 2).unwrap();
    assert_eq!(max_clique_bruteforce(&f).unwrap(), 2);
    let s = boxhelly::gen_staircase_family(6, 3).unwrap();
    assert_eq!(max_clique_bruteforce(&s).unwrap(), 3);
}
