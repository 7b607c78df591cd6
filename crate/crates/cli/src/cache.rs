//! On-disk cache of optimized points and run manifests.
//!
//! Each point is one JSON document keyed by kind, charge and a hash of the
//! quadrature settings. Writes go to a temporary file that is renamed into
//! place, so readers never see a partial document.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use helionics_core::{MeasureReport, OptimizationResult, QuadSpec, StateKind, SweepRow};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "HELIONICS_CACHE";

pub const DEFAULT_CACHE_DIR: &str = ".helionics-cache";

fn sha_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn spec_fingerprint(spec: &QuadSpec) -> String {
    format!(
        "rel={:e};abs={:e};max={};map={};v={}",
        spec.rel_tol,
        spec.abs_tol,
        spec.max_panels,
        spec.mapping.id(),
        ARTIFACT_VERSION
    )
}

/// Short hash of the tolerances and code version.
pub fn tolerance_hash(spec: &QuadSpec) -> String {
    sha_hex(&spec_fingerprint(spec))[..16].to_string()
}

/// Hash identifying a sweep: kind, exact charges and tolerances.
pub fn input_hash(kind: StateKind, zs: &[f64], spec: &QuadSpec) -> String {
    let charges: Vec<String> = zs.iter().map(|z| format!("{:016x}", z.to_bits())).collect();
    sha_hex(&format!(
        "kind={};z={};{}",
        kind.as_str(),
        charges.join(","),
        spec_fingerprint(spec)
    ))
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(path, e));
    }
    Ok(())
}

/// Cache document for one optimized point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CachedPoint {
    pub key: String,
    pub optimization: OptimizationResult,
    pub report: MeasureReport,
}

impl CachedPoint {
    pub fn to_row(&self) -> SweepRow {
        SweepRow {
            z_nuclear: self.optimization.z_nuclear,
            kind: self.optimization.kind,
            params: self.optimization.params,
            energy: self.optimization.energy,
            report: self.report.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `flag`, then the environment variable, then `configured`, then the
    /// default directory.
    pub fn resolve_dir(flag: Option<PathBuf>, configured: Option<PathBuf>) -> PathBuf {
        flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or(configured)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn point_key(kind: StateKind, z: f64, spec: &QuadSpec) -> String {
        format!("{}-z{}-{}", kind.as_str(), z, tolerance_hash(spec))
    }

    pub fn point_path(&self, kind: StateKind, z: f64, spec: &QuadSpec) -> PathBuf {
        self.dir
            .join("points")
            .join(format!("{}.json", Self::point_key(kind, z, spec)))
    }

    /// The cached row, if present and matching the key. Unreadable entries
    /// count as misses.
    pub fn load(&self, kind: StateKind, z: f64, spec: &QuadSpec) -> Option<SweepRow> {
        let text = fs::read_to_string(self.point_path(kind, z, spec)).ok()?;
        let point: CachedPoint = serde_json::from_str(&text).ok()?;
        let matches = point.key == Self::point_key(kind, z, spec)
            && point.optimization.kind == kind
            && point.optimization.z_nuclear == z;
        matches.then(|| point.to_row())
    }

    pub fn store(&self, row: &SweepRow, spec: &QuadSpec) -> CliResult<()> {
        let point = CachedPoint {
            key: Self::point_key(row.kind, row.z_nuclear, spec),
            optimization: OptimizationResult {
                kind: row.kind,
                z_nuclear: row.z_nuclear,
                params: row.params,
                energy: row.energy,
                iterations: 0,
                evaluations: 0,
                converged: true,
            },
            report: row.report.clone(),
        };
        let json = serde_json::to_string_pretty(&point)?;
        write_atomic(&self.point_path(row.kind, row.z_nuclear, spec), json.as_bytes())
    }

    pub fn manifest_path(&self, hash: &str) -> PathBuf {
        self.dir.join("runs").join(format!("{hash}.json"))
    }
}

pub fn unix_time() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

/// Record of one command invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config: BTreeMap<String, String>,
    pub quad_spec: QuadSpec,
    pub artifact_version: String,
    pub input_hash: String,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub outputs: Vec<String>,
    pub cache_hits: usize,
    pub computed: usize,
}

impl RunManifest {
    pub fn write(&self, cache: &Cache) -> CliResult<PathBuf> {
        let path = cache.manifest_path(&self.input_hash);
        write_atomic(&path, serde_json::to_string_pretty(self)?.as_bytes())?;
        Ok(path)
    }
}
