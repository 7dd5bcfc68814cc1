//! JSON file formats for spaces, measures and results, and the `--t-grid`
//! spec syntax. Reading and writing files is left to callers.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::log_grid;
use crate::measure::Measure;
use crate::prokhorov::{Method, ProkhorovResult};
use crate::space::{FuzzySpace, Generator, TimeScale};

/// On-disk form of a [`FuzzySpace`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpaceFile {
    Standard { labels: Vec<String>, dist: Vec<Vec<f64>> },
    Exponential { labels: Vec<String>, dist: Vec<Vec<f64>> },
    Table { labels: Vec<String>, t_grid: Vec<f64>, values: BTreeMap<String, Vec<f64>> },
}

impl SpaceFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("space file: {e}")))
    }

    pub fn into_space(self) -> Result<FuzzySpace> {
        match self {
            SpaceFile::Standard { labels, dist } => FuzzySpace::standard(labels, dist),
            SpaceFile::Exponential { labels, dist } => FuzzySpace::exponential(labels, dist),
            SpaceFile::Table { labels, t_grid, values } => {
                let mut pairs = BTreeMap::new();
                for (key, series) in values {
                    pairs.insert(parse_pair(&key, labels.len())?, series);
                }
                FuzzySpace::table(labels, t_grid, &pairs)
            }
        }
    }

    pub fn from_space(space: &FuzzySpace) -> Self {
        let labels = space.labels().to_vec();
        match space.generator() {
            Generator::Standard(d) => SpaceFile::Standard { labels, dist: d.clone() },
            Generator::Exponential(d) => SpaceFile::Exponential { labels, dist: d.clone() },
            Generator::Table { t_grid, values } => {
                let n = labels.len();
                let keys = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| format!("{i},{j}")));
                SpaceFile::Table { labels, t_grid: t_grid.clone(), values: keys.zip(values.iter().cloned()).collect() }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("space file serializes") + "\n"
    }
}

fn parse_pair(key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("values key `{key}` is not of the form \"i,j\" with indices below {n}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i >= n || j >= n {
        return Err(bad());
    }
    Ok((i, j))
}

pub fn parse_space(json: &str) -> Result<FuzzySpace> {
    SpaceFile::parse(json)?.into_space()
}

pub fn space_to_json(space: &FuzzySpace) -> String {
    SpaceFile::from_space(space).to_json()
}

/// Where a measure file says its space lives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceFile),
}

/// On-disk form of a [`Measure`]; weights are keyed by point label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceRef>,
    pub weights: BTreeMap<String, f64>,
}

impl MeasureFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("measure file: {e}")))
    }

    /// Resolves labels against `space`.
    pub fn to_measure(&self, space: Arc<FuzzySpace>) -> Result<Measure> {
        Measure::from_labels(space, self.weights.iter().map(|(l, &w)| (l.as_str(), w)))
    }

    pub fn from_measure(mu: &Measure) -> Self {
        let weights = mu.atoms().iter().map(|&(i, w)| (mu.space().label(i).to_string(), w)).collect();
        Self { space: None, weights }
    }
}

/// JSON form of a [`ProkhorovResult`], with the witness given by labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultJson {
    pub value: f64,
    pub r_star: f64,
    pub method: Method,
    pub witness: Option<Vec<String>>,
}

impl ResultJson {
    pub fn new(result: &ProkhorovResult, space: &FuzzySpace) -> Self {
        Self {
            value: result.value,
            r_star: result.r_star,
            method: result.method,
            witness: result
                .witness
                .as_ref()
                .map(|w| w.points.iter().map(|&i| space.label(i).to_string()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

/// Parses `log:<min>:<max>:<count>` or a comma-separated list of increasing
/// positive time scales.
pub fn parse_t_grid(spec: &str) -> Result<Vec<TimeScale>> {
    let bad = |why: &str| Error::Parse(format!("t grid `{spec}`: {why}"));
    if let Some(rest) = spec.strip_prefix("log:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(bad("expected log:<min>:<max>:<count>"));
        };
        let min: f64 = min.parse().map_err(|_| bad("min is not a number"))?;
        let max: f64 = max.parse().map_err(|_| bad("max is not a number"))?;
        let count: usize = count.parse().map_err(|_| bad("count is not an integer"))?;
        return log_grid(min, max, count);
    }
    let grid = spec
        .split(',')
        .map(|s| {
            let t: f64 = s.trim().parse().map_err(|_| bad(&format!("`{s}` is not a number")))?;
            TimeScale::new(t)
        })
        .collect::<Result<Vec<_>>>()?;
    if grid.windows(2).any(|w| w[1].get() <= w[0].get()) {
        return Err(bad("values must be strictly increasing"));
    }
    Ok(grid)
}
