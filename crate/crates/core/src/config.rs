//! Run configuration: search caps, parallelism, output location and seed.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::DEFAULT_SUBMODULE_CAP;
use crate::congruence::DEFAULT_LATTICE_CAP;
use crate::error::{Error, Result};
use crate::iso::DEFAULT_AUT_CAP;
use crate::perm::DEFAULT_GROUP_CAP;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable overriding caps, e.g. `submodule=5000,lattice=2000`.
pub const CAPS_ENV: &str = "QFORGE_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest module carrier scanned for submodules.
    pub submodule: usize,
    /// Largest materialised permutation group.
    pub group: usize,
    /// Largest congruence lattice.
    pub lattice: usize,
    /// Largest summand for which isomorphisms are enumerated.
    pub aut: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            submodule: DEFAULT_SUBMODULE_CAP,
            group: DEFAULT_GROUP_CAP,
            lattice: DEFAULT_LATTICE_CAP,
            aut: DEFAULT_AUT_CAP,
        }
    }
}

impl Caps {
    /// Applies `key=value` overrides separated by commas.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("cap override {item:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|e| Error::Format(format!("cap {key}: {e}")))?;
            if value == 0 {
                return Err(Error::Format(format!("cap {key} must be positive")));
            }
            match key.trim() {
                "submodule" => self.submodule = value,
                "group" => self.group = value,
                "lattice" => self.lattice = value,
                "aut" => self.aut = value,
                other => return Err(Error::Format(format!("unknown cap {other:?}"))),
            }
        }
        Ok(())
    }

    /// Defaults overridden by `QFORGE_CAPS` when set.
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps::default();
        if let Ok(spec) = std::env::var(CAPS_ENV) {
            caps.apply_overrides(&spec)?;
        }
        Ok(caps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[derive(Default)]
pub struct RunConfig {
    pub caps: Caps,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub outdir: Option<PathBuf>,
    pub seed: u64,
}


impl RunConfig {
    /// Hex SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serialises");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Runs `f` on a pool with `jobs` threads (or the global pool).
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.jobs {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut caps = Caps::default();
        caps.apply_overrides("lattice=7, aut=9").unwrap();
        assert_eq!(caps.lattice, 7);
        assert_eq!(caps.aut, 9);
        assert_eq!(caps.group, DEFAULT_GROUP_CAP);
        assert!(caps.apply_overrides("lattice=0").is_err());
        assert!(caps.apply_overrides("bogus=1").is_err());
        assert!(caps.apply_overrides("lattice").is_err());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = RunConfig::default();
        assert_eq!(a.hash(), RunConfig::default().hash());
        assert_eq!(a.hash().len(), 64);
        let b = RunConfig {
            seed: 1,
            ..RunConfig::default()
        };
        assert_ne!(a.hash(), b.hash());
    }
}
