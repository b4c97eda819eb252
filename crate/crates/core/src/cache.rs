//! On-disk cache of enumeration snapshots, keyed by a hash of the canonical presentation.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::algebra::Algebra;
use crate::catalog::{Catalog, Snapshot};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// A corrupt entry was discarded and rebuilt.
    Recovered,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// Hex SHA-256 of the canonical text, which includes the field line.
pub fn cache_key(alg: &Algebra) -> String {
    let digest = Sha256::digest(alg.presentation().to_text().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, alg: &Algebra) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(alg)))
    }

    pub fn store(&self, cat: &Catalog) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(cat.algebra());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&cat.snapshot())?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` on a miss, `CacheCorrupt` when the entry cannot be used.
    pub fn load(&self, alg: &Arc<Algebra>) -> Result<Option<Catalog>> {
        let path = self.path(alg);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let snap: Snapshot = serde_json::from_slice(&bytes).map_err(|e| Error::CacheCorrupt(e.to_string()))?;
        Catalog::from_snapshot(alg, &snap).map(Some)
    }

    pub fn load_or_build(&self, alg: &Arc<Algebra>, budget: usize) -> Result<(Arc<Catalog>, CacheOutcome)> {
        let outcome = match self.load(alg) {
            Ok(Some(cat)) if cat.len() <= budget => return Ok((Arc::new(cat), CacheOutcome::Hit)),
            Ok(Some(_)) => return Err(Error::BudgetExceeded(budget)),
            Ok(None) => CacheOutcome::Miss,
            Err(Error::CacheCorrupt(_)) => CacheOutcome::Recovered,
            Err(e) => return Err(e),
        };
        let cat = Catalog::build(alg, budget)?;
        self.store(&cat)?;
        Ok((Arc::new(cat), outcome))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arquiver::DEFAULT_BUDGET;
    use crate::field::Field;
    use crate::module::tests::{alg, LAMBDA9};

    #[test]
    fn round_trip_and_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let a = alg(LAMBDA9);
        let (built, o1) = cache.load_or_build(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(o1, CacheOutcome::Miss);
        let (loaded, o2) = cache.load_or_build(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(o2, CacheOutcome::Hit);
        assert_eq!(built.labels(), loaded.labels());
        assert_eq!(serde_json::to_string(&built.snapshot()).unwrap(), serde_json::to_string(&loaded.snapshot()).unwrap());

        let other = alg("vertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 3\n");
        assert_ne!(cache_key(&other), cache_key(&a));
        assert!(cache.load(&other).unwrap().is_none());

        let fp = Algebra::build(a.presentation().with_field(Field::prime(101).unwrap())).unwrap();
        assert_ne!(cache.path(&fp), cache.path(&a));
    }

    #[test]
    fn corrupt_entry_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let a = alg(LAMBDA9);
        fs::create_dir_all(dir.path()).unwrap();
        fs::write(cache.path(&a), b"{ not json").unwrap();
        assert!(matches!(cache.load(&a), Err(Error::CacheCorrupt(_))));
        let (cat, o) = cache.load_or_build(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(o, CacheOutcome::Recovered);
        assert_eq!(cat.len(), 9);
        assert!(cache.load(&a).unwrap().is_some());
    }
}
