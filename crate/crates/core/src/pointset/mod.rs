//! Exact point sets and the lower-bound constructions.

mod constructions;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::cyclotomic::{CycNum, MAX_CONDUCTOR};
use crate::error::{Error, Result};
use crate::serial::{parse_rational, rational_to_string};

pub use constructions::{
    erdos_purdy, parallel_lines, rational_candidates, square_grid, DoublingStep,
    DEFAULT_LEVEL_CAP, DEFAULT_POINT_BUDGET,
};

pub const POINTSET_FORMAT_VERSION: u32 = 1;

/// Where a point set came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub name: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
}

impl Provenance {
    pub fn new(name: &str, seed: u64) -> Provenance {
        Provenance {
            name: name.to_string(),
            params: BTreeMap::new(),
            seed,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Provenance {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// A finite set of pairwise distinct points sharing one conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    conductor: u32,
    points: Vec<CycNum>,
    provenance: Provenance,
}

impl PointSet {
    /// Lifts every point to the lcm of their conductors and checks that the
    /// points are distinct.
    pub fn new(points: Vec<CycNum>, provenance: Provenance) -> Result<PointSet> {
        let conductor = points
            .iter()
            .fold(1u64, |acc, p| lcm(acc, u64::from(p.conductor())));
        if conductor > u64::from(MAX_CONDUCTOR) {
            return Err(Error::ConductorTooLarge {
                requested: conductor,
                limit: MAX_CONDUCTOR,
            });
        }
        PointSet::with_conductor(conductor as u32, points, provenance)
    }

    /// Like [`PointSet::new`] but with an explicit conductor (a multiple of
    /// every point's conductor).
    pub fn with_conductor(conductor: u32, points: Vec<CycNum>, provenance: Provenance) -> Result<PointSet> {
        let points = points
            .into_iter()
            .map(|p| p.change_conductor(conductor))
            .collect::<Result<Vec<_>>>()?;
        let mut seen: HashMap<&CycNum, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&j) = seen.get(p) {
                return Err(Error::PointsNotDistinct(j, i));
            }
            seen.insert(p, i);
        }
        Ok(PointSet {
            conductor,
            points,
            provenance,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn points(&self) -> &[CycNum] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The sub-configuration on the given indices (in that order).
    pub fn subset(&self, indices: &[usize]) -> Result<PointSet> {
        let points = indices
            .iter()
            .map(|&i| self.points.get(i).cloned().ok_or(Error::VertexOutOfRange(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSet {
            conductor: self.conductor,
            points,
            provenance: self.provenance.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let file = PointSetFile {
            format_version: POINTSET_FORMAT_VERSION,
            conductor: self.conductor,
            provenance: self.provenance.clone(),
            points: self
                .points
                .iter()
                .map(|p| p.coeffs().iter().map(rational_to_string).collect())
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<PointSet> {
        let file: PointSetFile = serde_json::from_str(text)?;
        if file.format_version != POINTSET_FORMAT_VERSION {
            return Err(Error::FormatVersion {
                found: file.format_version,
                expected: POINTSET_FORMAT_VERSION,
            });
        }
        let points = file
            .points
            .iter()
            .map(|coeffs| {
                let coeffs = coeffs
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>>>()?;
                CycNum::from_coeffs(file.conductor, &coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::with_conductor(file.conductor, points, file.provenance)
    }
}

#[derive(Serialize, Deserialize)]
struct PointSetFile {
    format_version: u32,
    conductor: u32,
    provenance: Provenance,
    points: Vec<Vec<String>>,
}
