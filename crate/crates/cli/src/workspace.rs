//! `orthopack.toml`: declared symbols, default truncation and output folder.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

use orthopack_core::{QuadraticSurd, SymbolWitness};

pub const CONFIG_FILE: &str = "orthopack.toml";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Workspace {
    /// Default ambient dimension for `construct lattice` and `construct empty`.
    pub dimension: usize,
    pub symbols: BTreeMap<String, QuadraticSurd>,
    pub window: i64,
    pub kmax: i64,
    pub output_dir: PathBuf,
}

impl Default for Workspace {
    fn default() -> Self {
        let symbols = SymbolWitness::default()
            .iter()
            .map(|(k, v)| (k.as_str().to_owned(), *v))
            .collect();
        Workspace {
            dimension: 3,
            symbols,
            window: 5,
            kmax: 5,
            output_dir: PathBuf::from("."),
        }
    }
}

impl Workspace {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("workspace serializes")
    }

    /// Loads `path`, or the default file in the current directory when it
    /// exists, or the built-in defaults.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let path = match path {
            Some(p) => p.to_path_buf(),
            None if Path::new(CONFIG_FILE).exists() => PathBuf::from(CONFIG_FILE),
            None => return Ok(Workspace::default()),
        };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        Workspace::from_toml(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn witness(&self) -> SymbolWitness {
        let mut w = SymbolWitness::empty();
        for (k, v) in &self.symbols {
            w.set(k.as_str(), *v);
        }
        w
    }

    /// Resolves a relative output path against the output folder.
    pub fn output_path(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.output_dir.join(p)
        }
    }
}
