//! Machine-readable verification records.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detail {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

/// Counterexample data attached to a failed assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub class_representative: Option<String>,
    pub divisor_pair: Option<(u64, u64)>,
}

impl Witness {
    pub fn label(label: impl Into<String>) -> Self {
        Witness {
            label: label.into(),
            class_representative: None,
            divisor_pair: None,
        }
    }

    pub fn pair(label: impl Into<String>, pair: (u64, u64)) -> Self {
        Witness {
            divisor_pair: Some(pair),
            ..Witness::label(label)
        }
    }

    pub fn with_class(mut self, representative: impl Into<String>) -> Self {
        self.class_representative = Some(representative.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub subject: String,
    pub passed: bool,
    pub details: Vec<Detail>,
    pub witnesses: Option<Vec<Witness>>,
}

impl VerificationReport {
    pub fn builder(check_name: impl Into<String>, subject: impl Into<String>) -> ReportBuilder {
        ReportBuilder {
            check_name: check_name.into(),
            subject: subject.into(),
            details: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| d.expected != d.actual)
    }

    /// `passed` agrees with the detail rows.
    pub fn is_consistent(&self) -> bool {
        self.passed == self.details.iter().all(|d| d.expected == d.actual)
    }
}

#[derive(Debug)]
pub struct ReportBuilder {
    check_name: String,
    subject: String,
    details: Vec<Detail>,
    witnesses: Vec<Witness>,
}

impl ReportBuilder {
    /// Records `expected == actual`, with a bare witness on mismatch.
    pub fn check(&mut self, label: impl Into<String>, expected: impl Display, actual: impl Display) -> bool {
        let label = label.into();
        let witness = Witness::label(label.clone());
        self.check_with(label, expected, actual, || witness)
    }

    /// Records `expected == actual`; `witness` is built only on mismatch.
    pub fn check_with(
        &mut self,
        label: impl Into<String>,
        expected: impl Display,
        actual: impl Display,
        witness: impl FnOnce() -> Witness,
    ) -> bool {
        let detail = Detail {
            label: label.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        };
        let ok = detail.expected == detail.actual;
        if !ok {
            self.witnesses.push(witness());
        }
        self.details.push(detail);
        ok
    }

    /// A boolean assertion, recorded as `true` vs the observed value.
    pub fn assert(&mut self, label: impl Into<String>, holds: bool) -> bool {
        self.check(label, true, holds)
    }

    pub fn finish(self) -> VerificationReport {
        let passed = self.details.iter().all(|d| d.expected == d.actual);
        VerificationReport {
            check_name: self.check_name,
            subject: self.subject,
            passed,
            details: self.details,
            witnesses: (!self.witnesses.is_empty()).then_some(self.witnesses),
        }
    }
}

/// Sorts by `(check_name, subject)`; the sort is stable so equal keys keep
/// their relative order.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| (&a.check_name, &a.subject).cmp(&(&b.check_name, &b.subject)));
}

pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    let mut sorted = reports.to_vec();
    sort_reports(&mut sorted);
    serde_json::to_string_pretty(&sorted).expect("reports serialize")
}

pub fn reports_from_json(text: &str) -> serde_json::Result<Vec<VerificationReport>> {
    serde_json::from_str(text)
}
