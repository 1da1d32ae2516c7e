//! JSON family files.
//!
//! ```json
//! {"dim": 1, "boxes": [[{"lo": "1", "hi": "7/2", "lo_open": true, "hi_open": false}]]}
//! ```
//!
//! Rationals are strings: `p/q` or an integer on output, and additionally
//! finite decimals on input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AxisBox, BoxFamily, Endpoint, Interval};
use crate::rational::{serde_str, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    #[serde(with = "serde_str")]
    pub lo: Rational,
    #[serde(with = "serde_str")]
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub dim: usize,
    pub boxes: Vec<Vec<IntervalRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl From<&BoxFamily> for FamilyFile {
    fn from(f: &BoxFamily) -> Self {
        let boxes = f
            .boxes()
            .iter()
            .map(|b| {
                b.intervals()
                    .iter()
                    .map(|iv| IntervalRecord {
                        lo: *iv.lo().value(),
                        hi: *iv.hi().value(),
                        lo_open: iv.lo().is_open(),
                        hi_open: iv.hi().is_open(),
                    })
                    .collect()
            })
            .collect();
        FamilyFile { dim: f.dim(), boxes, label: f.label().map(str::to_owned) }
    }
}

impl TryFrom<FamilyFile> for BoxFamily {
    type Error = Error;

    fn try_from(file: FamilyFile) -> Result<Self> {
        let boxes = file
            .boxes
            .into_iter()
            .map(|records| {
                let intervals = records
                    .into_iter()
                    .map(|r| {
                        Interval::new(Endpoint::new(r.lo, r.lo_open)?, Endpoint::new(r.hi, r.hi_open)?)
                    })
                    .collect::<Result<_>>()?;
                AxisBox::new(intervals)
            })
            .collect::<Result<_>>()?;
        let family = BoxFamily::new(file.dim, boxes)?;
        Ok(match file.label {
            Some(l) => family.with_label(l),
            None => family,
        })
    }
}

pub fn family_to_json(f: &BoxFamily) -> String {
    let mut s = serde_json::to_string_pretty(&FamilyFile::from(f)).expect("family serializes");
    s.push('\n');
    s
}

pub fn family_from_json(text: &str) -> Result<BoxFamily> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.try_into().map_err(|e: Error| match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    })
}

/// Edge list as a JSON array of `[i, j]` pairs.
pub fn edges_to_json(edges: &[(usize, usize)]) -> String {
    let mut s = serde_json::to_string(edges).expect("edges serialize");
    s.push('\n');
    s
}

/// Edge list as `i j` lines.
pub fn edges_to_lines(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(i, j)| format!("{i} {j}\n")).collect()
}
