use serde::Serialize;

/// One named parameter condition with the value it was decided on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, value: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            value,
            detail: detail.into(),
        }
    }
}

/// Outcome of a parameter validation. Validation never fails; it reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mapped: Option<Box<ValidationReport>>,
    pub valid: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>, checks: Vec<Check>) -> Self {
        let valid = checks.iter().all(|c| c.pass);
        ValidationReport {
            subject: subject.into(),
            checks,
            mapped: None,
            valid,
            notes: Vec::new(),
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
