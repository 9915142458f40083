//! Append-only cache of component dimensions (and S_n multiplicities),
//! one JSON record per line.
//!
//! A series is served from the cache only when every sorted multidegree it
//! needs is present for the current engine version; otherwise it is
//! recomputed in full, since the engine builds each component from the
//! bases one degree below and the cache keeps dimensions only.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use diagharm::groups::{GeneratorPolicy, GroupSpec};
use diagharm::harmonics::{sorted_degrees, GradedSeries, ENGINE_VERSION};
use diagharm::symfunc::Partition;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache {path}, line {line}: {source}")]
    Parse { path: PathBuf, line: usize, source: serde_json::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupKey {
    pub m: u32,
    pub p: u32,
    pub n: usize,
}

impl From<GroupSpec> for GroupKey {
    fn from(g: GroupSpec) -> Self {
        GroupKey { m: g.m(), p: g.p(), n: g.n() }
    }
}

/// Identifies one component computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JobKey {
    pub group: GroupSpec,
    pub sets: usize,
    pub policy: GeneratorPolicy,
    pub degree: Vec<usize>,
}

impl JobKey {
    /// Canonical text such as `G(1,1,3)/2/polarized/[2,1]`.
    pub fn canonical(&self) -> String {
        let d: Vec<String> = self.degree.iter().map(ToString::to_string).collect();
        format!(
            "G({},{},{})/{}/{}/[{}]",
            self.group.m(),
            self.group.p(),
            self.group.n(),
            self.sets,
            self.policy,
            d.join(",")
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Record {
    pub version: String,
    pub key: String,
    pub group: GroupKey,
    pub sets: usize,
    pub policy: String,
    pub degree: Vec<usize>,
    pub dim: u64,
    /// Multiplicities keyed by partition text such as `[2,1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<BTreeMap<String, u64>>,
    /// Wall time of the series run that produced the record.
    pub run_seconds: f64,
}

struct Entry {
    dim: u64,
    multiplicities: Option<BTreeMap<Partition, u64>>,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, Entry>,
}

fn parse_partition(s: &str) -> Option<Partition> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Partition::empty());
    }
    let parts = inner.split(',').map(|x| x.parse().ok()).collect::<Option<Vec<usize>>>()?;
    Partition::new(parts).ok()
}

impl Cache {
    /// Loads the records of the current engine version; a missing file is an
    /// empty cache.
    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let mut entries = HashMap::new();
        let io = |source| CacheError::Io { path: path.to_path_buf(), source };
        match File::open(path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(io)?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let rec: Record = serde_json::from_str(&line).map_err(|source| CacheError::Parse {
                        path: path.to_path_buf(),
                        line: i + 1,
                        source,
                    })?;
                    if rec.version != ENGINE_VERSION {
                        continue;
                    }
                    let multiplicities = rec
                        .multiplicities
                        .map(|m| m.into_iter().filter_map(|(k, v)| parse_partition(&k).map(|p| (p, v))).collect());
                    entries.insert(rec.key, Entry { dim: rec.dim, multiplicities });
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(io(e)),
        }
        Ok(Cache { path: path.to_path_buf(), entries })
    }

    /// Sorted multidegrees a series through `top` depends on, including the
    /// level above the bound that certifies vanishing when `top` reaches it.
    fn needed(g: &GroupSpec, sets: usize, top: usize) -> Vec<Vec<usize>> {
        let last = if top == g.degree_bound() { top + 1 } else { top };
        (0..=last).flat_map(|t| sorted_degrees(t, sets)).collect()
    }

    /// The series if every component it needs is cached.
    pub fn lookup(
        &self,
        g: &GroupSpec,
        sets: usize,
        policy: GeneratorPolicy,
        top: usize,
        frobenius: bool,
    ) -> Option<GradedSeries> {
        let mut dims = Vec::new();
        let mut frob = Vec::new();
        for d in Self::needed(g, sets, top) {
            let key = JobKey { group: *g, sets, policy, degree: d.clone() };
            let e = self.entries.get(&key.canonical())?;
            if d.iter().sum::<usize>() > top {
                if e.dim > 0 {
                    return None;
                }
                continue;
            }
            if frobenius {
                frob.push((d.clone(), e.multiplicities.clone()?));
            }
            dims.push((d, e.dim));
        }
        let complete = top == g.degree_bound();
        let mut series = GradedSeries::from_sorted_dims(*g, sets, policy, top, complete, dims);
        if frobenius {
            series.set_frobenius(frob);
        }
        Some(series)
    }

    /// Appends one record per component of `series` in a single write.
    pub fn store(&mut self, series: &GradedSeries, run_seconds: f64) -> Result<(), CacheError> {
        let g = series.group();
        let sets = series.r();
        let policy = series.policy();
        let top = series.max_tdeg();
        let mut out = String::new();
        for d in Self::needed(&g, sets, top) {
            if d.iter().sum::<usize>() > top && !series.is_complete() {
                continue;
            }
            let key = JobKey { group: g, sets, policy, degree: d.clone() };
            let dim = series.dim(&d);
            let multiplicities = series.frobenius().map(|f| f.get(&d).cloned().unwrap_or_default());
            let rec = Record {
                version: ENGINE_VERSION.to_string(),
                key: key.canonical(),
                group: g.into(),
                sets,
                policy: policy.to_string(),
                degree: d.clone(),
                dim,
                multiplicities: multiplicities.as_ref().map(|m| m.iter().map(|(p, v)| (p.to_string(), *v)).collect()),
                run_seconds,
            };
            out.push_str(&serde_json::to_string(&rec).expect("records serialize"));
            out.push('\n');
            self.entries.insert(rec.key, Entry { dim, multiplicities });
        }
        let io = |source| CacheError::Io { path: self.path.clone(), source };
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        f.write_all(out.as_bytes()).map_err(io)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use diagharm::harmonics::{frobenius_series, EngineConfig};

    #[test]
    fn canonical_keys_are_explicit() {
        let key =
            JobKey { group: "S3".parse().unwrap(), sets: 2, policy: GeneratorPolicy::Polarized, degree: vec![2, 1] };
        assert_eq!(key.canonical(), "G(1,1,3)/2/polarized/[2,1]");
    }

    #[test]
    fn round_trip_reproduces_the_series() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.ndjson");
        let g: GroupSpec = "S3".parse().unwrap();
        let s = frobenius_series(&g, 2, &EngineConfig::default()).unwrap();
        let mut cache = Cache::open(&path).unwrap();
        assert!(cache.lookup(&g, 2, s.policy(), 3, true).is_none());
        cache.store(&s, 0.0).unwrap();
        let reopened = Cache::open(&path).unwrap();
        assert_eq!(reopened.lookup(&g, 2, s.policy(), 3, true).unwrap(), s);
        assert_eq!(reopened.lookup(&g, 2, s.policy(), 3, false).unwrap().dims(), s.dims());
        assert!(reopened.lookup(&g, 2, GeneratorPolicy::Reynolds, 3, false).is_none());
    }

    #[test]
    fn other_versions_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.ndjson");
        let rec = Record {
            version: "0.0.0".into(),
            key: "G(1,1,1)/1/polarized/[0]".into(),
            group: GroupKey { m: 1, p: 1, n: 1 },
            sets: 1,
            policy: "polarized".into(),
            degree: vec![0],
            dim: 1,
            multiplicities: None,
            run_seconds: 0.0,
        };
        std::fs::write(&path, serde_json::to_string(&rec).unwrap() + "\n").unwrap();
        assert!(Cache::open(&path).unwrap().entries.is_empty());
    }
}
