//! Structured verdicts returned by the axiom checkers.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// How many random products the checkers sample on top of the exact
/// generator-level checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub samples: usize,
    pub max_len: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            seed: DEFAULT_SEED,
            samples: 200,
            max_len: 6,
        }
    }
}

impl Sampling {
    pub fn with_samples(samples: usize) -> Self {
        Sampling {
            samples,
            ..Sampling::default()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub description: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Number of cases examined (generator combinations plus samples).
    pub cases: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            checks: Vec::new(),
            sampling: None,
        }
    }

    pub fn sampled(subject: impl Into<String>, sampling: Sampling) -> Self {
        CheckReport {
            sampling: Some(sampling),
            ..CheckReport::new(subject)
        }
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.checks.push(entry);
    }

    /// Records an entry from a check outcome: `Ok(cases)` on success,
    /// `Err(witness)` on the first failure.
    pub fn record(
        &mut self,
        id: &str,
        description: &str,
        outcome: std::result::Result<usize, String>,
    ) {
        let (passed, witness, cases) = match outcome {
            Ok(n) => (true, None, n),
            Err(w) => (false, Some(w), 0),
        };
        self.push(CheckEntry {
            id: id.to_string(),
            description: description.to_string(),
            passed,
            witness,
            cases,
        });
    }

    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.checks {
            e.id = format!("{prefix}.{}", e.id);
            self.checks.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn entry(&self, id: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        if let Some(s) = &self.sampling {
            writeln!(
                f,
                "  sampling: seed {}, {} random products of length <= {}",
                s.seed, s.samples, s.max_len
            )?;
        }
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            write!(f, "  [{mark}] {:<28} {} ({} cases)", c.id, c.description, c.cases)?;
            if let Some(w) = &c.witness {
                write!(f, "\n         witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "  verdict: {}",
            if self.passed() { "all checks pass" } else { "some checks fail" }
        )
    }
}
