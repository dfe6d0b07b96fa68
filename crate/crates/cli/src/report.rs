//! Machine-readable records and small formatting helpers.
//!
//! Every JSON document carries a `"schema"` field (`fcrystal.<command>.v1`);
//! field order is fixed by the struct definitions, so identical jobs produce
//! byte-identical output.

use fcrystal_core::{FCyclicCrystal, OrbitData};
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

pub fn schema(command: &str) -> String {
    format!("fcrystal.{command}.v1")
}

#[derive(Clone, Debug, Serialize)]
pub struct CrystalEcho {
    pub r: usize,
    /// Cycle form, fixed points omitted.
    pub perm: String,
    /// One-line form `π(1), .., π(r)`.
    pub images: Vec<usize>,
    pub slopes: Vec<u32>,
    pub dieudonne: bool,
    pub f_circular: bool,
}

impl From<&FCyclicCrystal> for CrystalEcho {
    fn from(c: &FCyclicCrystal) -> Self {
        CrystalEcho {
            r: c.rank(),
            perm: c.permutation().to_string(),
            images: c.permutation().images(),
            slopes: c.slopes().to_vec(),
            dieudonne: c.is_dieudonne(),
            f_circular: c.is_f_circular(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub level: usize,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub points: Vec<[usize; 2]>,
    pub length: usize,
    pub epsilon: Vec<i64>,
    pub normalized_length: usize,
    /// Nonzero `a_λ` up to the requested level.
    pub census: Vec<CensusEntry>,
    pub circular_level: Option<u64>,
}

impl From<&OrbitData> for OrbitRecord {
    fn from(d: &OrbitData) -> Self {
        OrbitRecord {
            points: d.orbit.points().iter().map(|&(i, j)| [i, j]).collect(),
            length: d.orbit.len(),
            epsilon: d.epsilon.entries().to_vec(),
            normalized_length: d.normalized.len(),
            census: d
                .census
                .iter()
                .map(|(level, count)| CensusEntry { level, count })
                .collect(),
            circular_level: d.level,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `1,2,3`
pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
