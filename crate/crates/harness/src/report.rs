use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    /// Non-finite residuals (failed evaluations) serialize as `null`.
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub samples: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub os: String,
    pub arch: String,
    pub debug_assertions: bool,
}

impl Environment {
    pub fn current() -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            debug_assertions: cfg!(debug_assertions),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entry: String,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub fault_injected: bool,
    pub pass: bool,
    /// Sorted by name.
    pub checks: Vec<CheckRow>,
    pub timing_ms: u128,
    pub environment: Environment,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRow> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The residual table alone, which is reproducible given entry, suite,
    /// seed and samples.
    pub fn table_json(&self) -> String {
        serde_json::to_string(&self.checks).expect("rows serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text table for the terminal.
    pub fn render(&self) -> String {
        let mut out = format!("{} / {} (seed {}, samples {})\n", self.entry, self.suite, self.seed, self.samples);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<width$}  {:>10.3e}  tol {:>8.1e}  n={:<4} {}",
                c.name,
                c.residual,
                c.tol,
                c.samples,
                if c.pass { "ok" } else { "FAIL" },
            ));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {failed} failed, {} ms\n", self.checks.len(), self.timing_ms));
        out
    }
}
