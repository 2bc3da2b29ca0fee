//! Structured pass/fail reports with witnesses, shared by the checkers.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// The check passed but decides only a finite shadow of an unbounded
    /// property; the notes say which.
    PassApproximate,
    Fail,
    /// A resource bound stopped the check before a verdict.
    Inconclusive,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::PassApproximate)
    }

    /// Conjunction, propagating failure over inconclusiveness and
    /// inconclusiveness over approximate passes.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (PassApproximate, _) | (_, PassApproximate) => PassApproximate,
            (Pass, Pass) => Pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Result of one condition check: per-probe outcomes with witnesses,
/// an overall verdict (their conjunction), and resource notes.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub subject: String,
    pub probes: Vec<ProbeResult>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str, subject: &str) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            subject: subject.to_string(),
            probes: Vec::new(),
            verdict: Verdict::Pass,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, probe: &str, verdict: Verdict, witness: Option<String>) {
        self.verdict = self.verdict.and(verdict);
        self.probes.push(ProbeResult {
            probe: probe.to_string(),
            verdict,
            witness,
        });
    }

    pub fn note(&mut self, note: &str) {
        self.notes.push(note.to_string());
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// The first failing probe, if any.
    pub fn first_failure(&self) -> Option<&ProbeResult> {
        self.probes.iter().find(|p| p.verdict == Verdict::Fail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_conjunction() {
        use Verdict::*;
        assert_eq!(Pass.and(Pass), Pass);
        assert_eq!(Pass.and(PassApproximate), PassApproximate);
        assert_eq!(PassApproximate.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Fail), Fail);
        assert_eq!(Fail.and(Pass), Fail);
        assert!(PassApproximate.passed());
        assert!(!Inconclusive.passed());
    }

    #[test]
    fn report_conjunction_and_first_failure() {
        let mut r = CheckReport::new("demo", "subject");
        r.push("a", Verdict::Pass, None);
        r.push("b", Verdict::Fail, Some("witness".into()));
        r.push("c", Verdict::Pass, None);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().probe, "b");
    }
}
