//! On-disk cache for Schur-element tables, keyed by a content hash.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use hecke_core::charshur::{MatrixRep, SchurTable};
use sha2::{Digest, Sha256};

/// Bump to invalidate every cached table.
const CACHE_FORMAT: &str = "schur-v1";

/// Hash of the datum and the generator images of every representation.
pub fn schur_key(reps: &[MatrixRep]) -> String {
    let mut h = Sha256::new();
    h.update(CACHE_FORMAT);
    h.update(env!("CARGO_PKG_VERSION"));
    if let Some(first) = reps.first() {
        let spec = serde_json::to_string(&first.datum().spec()).expect("spec serializes");
        h.update(spec);
    }
    for rep in reps {
        h.update(format!("\n{}:{}", rep.name(), rep.dim()));
        for s in 0..rep.datum().rank() {
            let m = rep.generator_image(s);
            for i in 0..m.size() {
                for j in 0..m.size() {
                    h.update(format!(";{}", m.get(i, j)));
                }
            }
        }
    }
    hex::encode(h.finalize())
}

pub struct SchurCache {
    dir: PathBuf,
}

impl SchurCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("schur-{key}.json"))
    }

    /// A cached table, if present and readable. Corrupt entries count as
    /// misses and are overwritten by the next store.
    pub fn load(&self, key: &str) -> Option<SchurTable> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, table: &SchurTable) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(key);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string_pretty(table).expect("table serializes");
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}
