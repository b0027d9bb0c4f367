//! The serialized result of one computation.

use std::fmt;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::scan::ScanReport;

pub const DOC_VERSION: &str = "detchern-doc/1";

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Kind {
    Cm,
    Csm,
    CsmOpen,
    Eu,
    Fulton,
    Milnor,
    Conormal,
    Charcycle,
    CharcycleOpen,
    Polar,
    Ged,
    Microlocal,
    Amatrix,
    DualCheck,
    Symmetry,
    Scan,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Cm => "cm",
            Kind::Csm => "csm",
            Kind::CsmOpen => "csm_open",
            Kind::Eu => "eu",
            Kind::Fulton => "fulton",
            Kind::Milnor => "milnor",
            Kind::Conormal => "conormal",
            Kind::Charcycle => "charcycle",
            Kind::CharcycleOpen => "charcycle_open",
            Kind::Polar => "polar",
            Kind::Ged => "ged",
            Kind::Microlocal => "microlocal",
            Kind::Amatrix => "amatrix",
            Kind::DualCheck => "dual_check",
            Kind::Symmetry => "symmetry",
            Kind::Scan => "scan",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How `labels`/`coefficients` (or `rows`) should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `[P^0] .. [P^N]`
    Points,
    /// `h1^N h2 .. h1 h2^N`
    Bidegree,
    /// Values indexed by strata or polar index.
    Sequence,
    Scalar,
    Matrix,
    Checks,
    Scan,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub version: String,
    pub kind: Kind,
    pub title: String,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub basis: Basis,
    pub labels: Vec<String>,
    pub coefficients: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanReport>,
    pub meta: Meta,
}

impl OutputDocument {
    pub fn new(
        kind: Kind,
        title: String,
        m: usize,
        n: usize,
        k: Option<usize>,
        basis: Basis,
    ) -> Self {
        OutputDocument {
            version: DOC_VERSION.to_string(),
            kind,
            title,
            m,
            n,
            k,
            basis,
            labels: Vec::new(),
            coefficients: Vec::new(),
            rows: None,
            checks: Vec::new(),
            scan: None,
            meta: Meta {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                elapsed_ms: None,
            },
        }
    }

    pub fn with_values(mut self, labels: Vec<String>, values: &[BigInt]) -> Self {
        assert_eq!(labels.len(), values.len());
        self.labels = labels;
        self.coefficients = values.iter().map(BigInt::to_string).collect();
        self
    }

    /// Coefficients parsed back into integers.
    pub fn values(&self) -> Result<Vec<BigInt>, String> {
        self.coefficients
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|e| format!("bad coefficient {s:?}: {e}"))
            })
            .collect()
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// `P^0 .. P^N`
pub fn point_labels(ambient_dim: usize) -> Vec<String> {
    (0..=ambient_dim).map(|l| format!("P^{l}")).collect()
}

/// `h1^N h2 .. h1 h2^N`
pub fn bidegree_labels(ambient_dim: usize) -> Vec<String> {
    (1..=ambient_dim)
        .map(|b| {
            let a = ambient_dim + 1 - b;
            let h1 = if a == 1 {
                "h1".to_string()
            } else {
                format!("h1^{a}")
            };
            let h2 = if b == 1 {
                "h2".to_string()
            } else {
                format!("h2^{b}")
            };
            format!("{h1} {h2}")
        })
        .collect()
}
