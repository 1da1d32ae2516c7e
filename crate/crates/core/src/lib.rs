//! Exact analytics for finite families of axis-parallel boxes.
//!
//! Counts intersecting pairs, finds deepest points with witnesses, builds the
//! extremal slab and staircase families, evaluates the fractional Helly-type
//! bounds for boxes, and extracts deep points by per-axis stabbing.
//!
//! Coordinates are exact rationals and every boundary is individually open or
//! closed. Data-parallel kernels take an [`Exec`] mode; with the default
//! `parallel` feature they run on rayon, without it everything is sequential.

pub mod analytics;
pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod depth;
pub mod error;
pub mod exec;
pub mod extraction;
pub mod geometry;
pub mod io;
pub mod rational;
pub mod search;

pub use analytics::{count_pairs_naive, count_pairs_sweep_1d, edge_list, PairReport};
pub use bounds::{BoundsReport, Verdict};
pub use constructions::{gen_random_family, gen_staircase_family, gen_turan_family, RandomParams};
pub use depth::{max_clique_bruteforce, max_depth, max_depth_1d, DepthWitness};
pub use error::{Error, Result};
pub use exec::Exec;
pub use extraction::{extract_deep_point, extraction_gap};
pub use geometry::{
    boxes_intersect, intersection_box, intervals_intersect, point_in_box, AxisBox, BoxFamily,
    Endpoint, Interval, RPoint,
};
pub use rational::Rational;
pub use search::{search_extremal_1d, search_extremal_d, SearchResult};
