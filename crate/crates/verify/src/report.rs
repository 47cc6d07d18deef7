use std::fmt::{self, Display};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim_id: String,
    /// Short pointer to the statement being checked.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(claim_id: &str, anchor: &str, expected: impl Display, computed: impl Display) -> Check {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check { claim_id: claim_id.into(), anchor: anchor.into(), pass: expected == computed, expected, computed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Seconds; only filled in when timing was requested, so that reports
    /// are otherwise reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        let w = self.checks.iter().map(|c| c.claim_id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{tag}  {:w$}  expected {}  computed {}", c.claim_id, c.expected, c.computed)?;
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        write!(f, "{passed}/{} checks pass", self.checks.len())?;
        if let Some(t) = self.wall_time {
            write!(f, " in {t:.2}s")?;
        }
        writeln!(f)
    }
}
