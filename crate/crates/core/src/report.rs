use std::fmt::Write;

/// Whether a checker collects every violation or stops at the first one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CheckMode {
    #[default]
    Full,
    FastFail,
}

/// One violated law together with the tuple of element indices that violates it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Failure {
    pub axiom: String,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub verdict: bool,
    pub failures: Vec<Failure>,
}

impl AxiomReport {
    pub fn from_failures(failures: Vec<Failure>) -> Self {
        AxiomReport {
            verdict: failures.is_empty(),
            failures,
        }
    }

    pub fn passed() -> Self {
        Self::from_failures(Vec::new())
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = Vec::new();
        for f in &self.failures {
            if !ids.contains(&f.axiom.as_str()) {
                ids.push(&f.axiom);
            }
        }
        ids
    }

    pub fn first(&self, axiom: &str) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    pub fn contains(&self, axiom: &str, witness: &[usize]) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom && f.witness == witness)
    }

    /// Concatenates two reports; the verdict is the conjunction.
    pub fn merge(mut self, other: AxiomReport) -> Self {
        self.failures.extend(other.failures);
        self.verdict = self.verdict && other.verdict;
        self
    }

    /// Human-readable listing. At most `limit` failures are printed per report.
    pub fn render(&self, title: &str, names: &[String], limit: usize) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{title}: {}", if self.verdict { "pass" } else { "FAIL" });
        for f in self.failures.iter().take(limit) {
            let w: Vec<&str> = f.witness.iter().map(|&i| names[i].as_str()).collect();
            let _ = writeln!(out, "  {} at ({})", f.axiom, w.join(", "));
        }
        if self.failures.len() > limit {
            let _ = writeln!(out, "  ... {} more", self.failures.len() - limit);
        }
        out
    }
}
