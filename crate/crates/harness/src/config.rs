use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Per-check tolerance overrides, keyed by the full check name
/// (`presymp[tn].closedness_delta`) or by the bare check name
/// (`closedness_delta`). The full name wins.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Config {
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl Config {
    pub fn from_json(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        if let Some(t) = self.tolerances.get(name) {
            return *t;
        }
        let bare = name.rsplit('.').next().unwrap_or(name);
        self.tolerances.get(bare).copied().unwrap_or(default)
    }
}
