//! Outcome of an exhaustive verification run.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// First failing case of a verification, with enough detail to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    /// Number of individual identities checked before stopping.
    pub checked: usize,
    pub failure: Option<Witness>,
    /// Free-form remarks, e.g. normalization scalars.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report {
            name: name.into(),
            checked: 0,
            failure: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Record one check; returns `false` once a failure has been recorded.
    pub(crate) fn check(
        &mut self,
        ok: bool,
        case: impl FnOnce() -> String,
        detail: impl FnOnce() -> String,
    ) -> bool {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Witness {
                case: case(),
                detail: detail(),
            });
        }
        self.failure.is_none()
    }

    pub(crate) fn fail(&mut self, case: String, detail: String) {
        if self.failure.is_none() {
            self.failure = Some(Witness { case, detail });
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Report {
        self.notes.push(note.into());
        self
    }

    /// Merge several reports into one that passes iff all of them pass.
    pub fn combine(name: impl Into<String>, parts: impl IntoIterator<Item = Report>) -> Report {
        let mut out = Report::new(name);
        for part in parts {
            out.checked += part.checked;
            if let Some(w) = part.failure {
                out.fail(
                    alloc::format!("{}: {}", part.name, w.case),
                    w.detail,
                );
            }
            out.notes.extend(part.notes);
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.name, self.checked)?,
            Some(w) => write!(
                f,
                "FAIL {} after {} checks; witness {}: {}",
                self.name, self.checked, w.case, w.detail
            )?,
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
