//! On-disk cache of analysis documents keyed by the SHA-256 of the schema
//! version and the coefficient sequence.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use tracegenus::{analyze, IntPoly, Result};

use crate::doc::{AnalysisDocument, InputEcho, SCHEMA_VERSION};

pub const CACHE_ENV: &str = "TRACEGENUS_CACHE_DIR";

pub const CORRUPT_WARNING: &str = "corrupt cache entry was recomputed";

#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    /// Set once when the directory proves unusable.
    pub warning: Option<String>,
}

#[derive(Debug)]
pub enum Lookup {
    Hit(Box<AnalysisDocument>),
    Miss,
    Corrupt,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

pub fn cache_key(f: &IntPoly) -> String {
    let mut h = Sha256::new();
    h.update(format!("tracegenus-analysis/v{SCHEMA_VERSION}\n"));
    for c in f.coeffs() {
        h.update(c.to_string());
        h.update(",");
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None, warning: None }
    }

    /// Opens (creating if needed) a cache directory; an unusable directory
    /// disables caching with a warning.
    pub fn open(dir: &Path) -> Self {
        match fs::create_dir_all(dir) {
            Ok(()) => Cache { dir: Some(dir.to_path_buf()), warning: None },
            Err(e) => Cache {
                dir: None,
                warning: Some(format!("cache directory {} unusable ({e}); running uncached", dir.display())),
            },
        }
    }

    /// The directory from the environment, or the user cache directory.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os(CACHE_ENV) {
            return Some(PathBuf::from(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(PathBuf::from(d).join("tracegenus"));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("tracegenus"))
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path(&self, f: &IntPoly) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", cache_key(f))))
    }

    pub fn lookup(&self, f: &IntPoly) -> Lookup {
        let Some(path) = self.path(f) else { return Lookup::Miss };
        let Ok(bytes) = fs::read(&path) else { return Lookup::Miss };
        match serde_json::from_slice::<AnalysisDocument>(&bytes) {
            Ok(doc)
                if doc.schema_version == SCHEMA_VERSION
                    && doc.input.coefficients == InputEcho::new(f, None).coefficients
                    && doc.input.label.is_none()
                    && doc.cache_warning.is_none() =>
            {
                Lookup::Hit(Box::new(doc))
            }
            _ => Lookup::Corrupt,
        }
    }

    /// Atomic write through a temporary file in the same directory.
    pub fn store(&self, f: &IntPoly, doc: &AnalysisDocument) -> std::io::Result<()> {
        let Some(path) = self.path(f) else { return Ok(()) };
        let dir = path.parent().expect("cache entries live in a directory");
        let tmp = dir.join(format!(
            ".{}.{}.{}.tmp",
            cache_key(f),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut file = fs::File::create(&tmp)?;
        file.write_all(&serde_json::to_vec(doc).expect("documents serialize"))?;
        file.sync_all()?;
        drop(file);
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }

    /// Returns the analysis document for `f`, computing and storing it on a
    /// miss. Write failures are reported on stderr and otherwise ignored.
    pub fn analyze(&self, f: &IntPoly, label: Option<String>) -> Result<AnalysisDocument> {
        let corrupt = match self.lookup(f) {
            Lookup::Hit(mut doc) => {
                doc.input.label = label;
                return Ok(*doc);
            }
            Lookup::Miss => false,
            Lookup::Corrupt => true,
        };
        let a = analyze(f)?;
        let doc = AnalysisDocument::from_analysis(&a, None);
        if let Err(e) = self.store(f, &doc) {
            eprintln!("warning: could not write cache entry: {e}");
        }
        let mut doc = doc;
        doc.input.label = label;
        if corrupt {
            doc.cache_warning = Some(CORRUPT_WARNING.to_string());
        }
        Ok(doc)
    }
}
