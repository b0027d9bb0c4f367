//! On-disk cache for Littlewood-Richardson products and Chern-Mather classes.
//!
//! Each file carries a format tag and a SHA-256 checksum of its payload. A
//! file with a different tag is ignored; one that fails to parse or verify is
//! reported and ignored. Either way the data is recomputed and rewritten.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use detchern_core::classes::{cm_cache_seed, cm_cache_snapshot, ProjClass};
use detchern_core::schubert::{lr_cache_seed, lr_cache_snapshot, Partition};
use detchern_core::Tau;
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_FORMAT: &str = "detchern-cache/1";

const LR_FILE: &str = "lr.json";
const CM_FILE: &str = "cm.json";

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    format: String,
    checksum: String,
    payload: T,
}

#[derive(Serialize, Deserialize)]
struct LrEntry {
    a: Vec<usize>,
    b: Vec<usize>,
    terms: Vec<(Vec<usize>, String)>,
}

#[derive(Serialize, Deserialize)]
struct CmEntry {
    m: usize,
    n: usize,
    k: usize,
    points: Vec<String>,
}

/// What happened when loading one cache file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadOutcome {
    Missing,
    Loaded(usize),
    /// Written by another cache format; ignored.
    Stale(String),
    /// Unreadable or failed verification; ignored.
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
    loaded_lr: usize,
    loaded_cm: usize,
}

fn checksum<T: Serialize>(payload: &T) -> String {
    let bytes = serde_json::to_vec(payload).expect("cache payloads serialize");
    hex::encode(Sha256::digest(&bytes))
}

fn read_envelope<T: Serialize + DeserializeOwned>(path: &Path) -> Result<Option<T>, LoadOutcome> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(LoadOutcome::Corrupt(e.to_string())),
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| LoadOutcome::Corrupt(e.to_string()))?;
    match value.get("format").and_then(|f| f.as_str()) {
        Some(CACHE_FORMAT) => {}
        Some(other) => return Err(LoadOutcome::Stale(other.to_string())),
        None => return Err(LoadOutcome::Corrupt("no format tag".into())),
    }
    let env: Envelope<T> =
        serde_json::from_value(value).map_err(|e| LoadOutcome::Corrupt(e.to_string()))?;
    if checksum(&env.payload) != env.checksum {
        return Err(LoadOutcome::Corrupt("checksum mismatch".into()));
    }
    Ok(Some(env.payload))
}

fn write_envelope<T: Serialize>(path: &Path, payload: T) -> io::Result<()> {
    let env = Envelope {
        format: CACHE_FORMAT.to_string(),
        checksum: checksum(&payload),
        payload,
    };
    let text = serde_json::to_string(&env).expect("cache payloads serialize");
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn parse_ints(v: &[String]) -> Option<Vec<BigInt>> {
    v.iter().map(|s| s.parse().ok()).collect()
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: dir.into(),
            loaded_lr: 0,
            loaded_cm: 0,
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Seeds the in-process caches from disk.
    pub fn load(&mut self) -> (LoadOutcome, LoadOutcome) {
        let lr = match read_envelope::<Vec<LrEntry>>(&self.dir.join(LR_FILE)) {
            Ok(None) => LoadOutcome::Missing,
            Ok(Some(entries)) => match decode_lr(entries) {
                Some(decoded) => {
                    self.loaded_lr = decoded.len();
                    lr_cache_seed(decoded);
                    LoadOutcome::Loaded(self.loaded_lr)
                }
                None => LoadOutcome::Corrupt("malformed entry".into()),
            },
            Err(outcome) => outcome,
        };
        let cm = match read_envelope::<Vec<CmEntry>>(&self.dir.join(CM_FILE)) {
            Ok(None) => LoadOutcome::Missing,
            Ok(Some(entries)) => match decode_cm(entries) {
                Some(decoded) => {
                    self.loaded_cm = decoded.len();
                    cm_cache_seed(decoded);
                    LoadOutcome::Loaded(self.loaded_cm)
                }
                None => LoadOutcome::Corrupt("malformed entry".into()),
            },
            Err(outcome) => outcome,
        };
        (lr, cm)
    }

    /// Writes the in-process caches back if they grew since [`Cache::load`].
    pub fn store(&self) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let lr = lr_cache_snapshot();
        if lr.len() != self.loaded_lr || !self.dir.join(LR_FILE).exists() {
            let entries: Vec<LrEntry> = lr
                .iter()
                .map(|((a, b), terms)| LrEntry {
                    a: a.parts().to_vec(),
                    b: b.parts().to_vec(),
                    terms: terms
                        .iter()
                        .map(|(nu, c)| (nu.parts().to_vec(), c.to_string()))
                        .collect(),
                })
                .collect();
            write_envelope(&self.dir.join(LR_FILE), entries)?;
        }
        let cm = cm_cache_snapshot();
        if cm.len() != self.loaded_cm || !self.dir.join(CM_FILE).exists() {
            let entries: Vec<CmEntry> = cm
                .iter()
                .map(|(t, c)| CmEntry {
                    m: t.m(),
                    n: t.n(),
                    k: t.k(),
                    points: c.points().iter().map(BigInt::to_string).collect(),
                })
                .collect();
            write_envelope(&self.dir.join(CM_FILE), entries)?;
        }
        Ok(())
    }
}

type LrSeed = (Partition, Partition, Vec<(Partition, BigInt)>);

fn decode_lr(entries: Vec<LrEntry>) -> Option<Vec<LrSeed>> {
    entries
        .into_iter()
        .map(|e| {
            let terms = e
                .terms
                .into_iter()
                .map(|(nu, c)| Some((Partition::new(nu).ok()?, c.parse().ok()?)))
                .collect::<Option<Vec<_>>>()?;
            Some((Partition::new(e.a).ok()?, Partition::new(e.b).ok()?, terms))
        })
        .collect()
}

fn decode_cm(entries: Vec<CmEntry>) -> Option<Vec<(Tau, ProjClass)>> {
    entries
        .into_iter()
        .map(|e| {
            let t = Tau::new(e.m, e.n, e.k).ok()?;
            let points = parse_ints(&e.points)?;
            if points.len() != t.ambient_dim() + 1 {
                return None;
            }
            Some((t, ProjClass::from_points(points)))
        })
        .collect()
}
