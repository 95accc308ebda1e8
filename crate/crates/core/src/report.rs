//! Deterministic verdict lists shared by every checker.

use serde::{Deserialize, Serialize};

use crate::polyring::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub template: String,
    /// 1-based basis indices of the failing tuple, followed by the output
    /// coordinate when the entry is a residual.
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<Polynomial>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl ReportEntry {
    pub fn residual(template: impl Into<String>, witness: Vec<usize>, residual: Polynomial) -> Self {
        ReportEntry {
            template: template.into(),
            witness,
            residual: Some(residual),
            detail: None,
        }
    }

    pub fn violation(template: impl Into<String>, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        ReportEntry {
            template: template.into(),
            witness,
            residual: None,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A list of failures; passes iff empty. Entries are kept sorted by
/// `(template, witness)` so equal inputs serialize to equal bytes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(mut entries: Vec<ReportEntry>) -> Self {
        sort_entries(&mut entries);
        Report { entries }
    }

    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
        sort_entries(&mut self.entries);
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
        sort_entries(&mut self.entries);
    }

    /// Merges another report, prefixing its template ids.
    pub fn merge_prefixed(&mut self, prefix: &str, other: Report) {
        self.entries.extend(other.entries.into_iter().map(|mut e| {
            e.template = format!("{prefix}{}", e.template);
            e
        }));
        sort_entries(&mut self.entries);
    }

    pub fn entries(&self) -> &[ReportEntry] {
        &self.entries
    }

    pub fn passed(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct template ids that produced entries.
    pub fn failed_templates(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.entries.iter().map(|e| e.template.as_str()).collect();
        ids.dedup();
        ids
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status(),
            "entries": self.entries,
        })
    }
}

fn sort_entries(entries: &mut [ReportEntry]) {
    entries.sort_by(|a, b| {
        a.template
            .cmp(&b.template)
            .then_with(|| a.witness.cmp(&b.witness))
            .then_with(|| a.detail.cmp(&b.detail))
    });
}

impl Serialize for Report {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Report", 2)?;
        st.serialize_field("status", &self.status())?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Report {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            entries: Vec<ReportEntry>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Report::from_entries(raw.entries))
    }
}
