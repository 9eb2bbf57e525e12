//! Line-oriented check reports: `check <name> pass|fail <value> <tolerance>`.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), pass, value, tolerance }
    }

    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value <= tolerance, value, tolerance)
    }

    /// Passes when `value ≥ tolerance`.
    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value >= tolerance, value, tolerance)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name: String = self.name.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
        write!(f, "check {} {} {:e} {:e}", name, if self.pass { "pass" } else { "fail" }, self.value, self.tolerance)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Free-form `# ...` lines printed ahead of the checks.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            for line in n.lines() {
                writeln!(f, "# {line}")?;
            }
        }
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        let c = Check::at_most("tail error", 1e-9, 1e-8);
        assert_eq!(c.to_string(), "check tail_error pass 1e-9 1e-8");
        let mut r = Report::new();
        r.note("two\nlines");
        r.push(c);
        r.push(Check::at_least("gap", -1.0, 0.0));
        assert!(!r.passed());
        assert_eq!(r.to_string(), "# two\n# lines\ncheck tail_error pass 1e-9 1e-8\ncheck gap fail -1e0 0e0\n");
    }
}
