use std::fmt;

use fullgroup::report::Checks;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Field {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
}

/// What a subcommand prints: echoed inputs, computed details, named checks,
/// written files, and an overall outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Vec<Field>,
    pub outcome: String,
    pub checks: Vec<CheckLine>,
    pub details: Vec<Field>,
    pub artifacts: Vec<String>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl CommandReport {
    pub fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            inputs: Vec::new(),
            outcome: "PASS".into(),
            checks: Vec::new(),
            details: Vec::new(),
            artifacts: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.push(Field {
            key: key.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn detail(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.details.push(Field {
            key: key.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn checks(&mut self, checks: &Checks) -> &mut Self {
        self.checks.extend(checks.iter().map(|c| CheckLine {
            name: c.name.clone(),
            passed: c.passed,
        }));
        if !checks.all_passed() {
            self.fail();
        }
        self
    }

    pub fn check(&mut self, name: &str, passed: bool) -> &mut Self {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
        });
        if !passed {
            self.fail();
        }
        self
    }

    pub fn artifact(&mut self, path: impl ToString) -> &mut Self {
        self.artifacts.push(path.to_string());
        self
    }

    pub fn verdict(&mut self, verdict: impl ToString) -> &mut Self {
        self.outcome = verdict.to_string();
        self
    }

    pub fn fail(&mut self) {
        self.outcome = "FAIL".into();
        self.exit_code = 1;
    }

    pub fn error(command: &str, message: impl ToString) -> Self {
        let mut r = CommandReport::new(command);
        r.outcome = "ERROR".into();
        r.exit_code = 1;
        r.detail("ERROR", message);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn write_field(f: &mut fmt::Formatter<'_>, key: &str, value: &str) -> fmt::Result {
    let mut lines = value.lines();
    match (lines.next(), value.lines().count()) {
        (None, _) => writeln!(f, "{key}: "),
        (Some(line), 1) => writeln!(f, "{key}: {line}"),
        (Some(_), _) => {
            writeln!(f, "{key}:")?;
            for line in value.lines() {
                writeln!(f, "  {line}")?;
            }
            Ok(())
        }
    }
}

/// `KEY: value` lines; multi-line values continue on lines indented by two
/// spaces.
impl fmt::Display for CommandReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "COMMAND: {}", self.command)?;
        for i in &self.inputs {
            write_field(f, &format!("INPUT {}", i.key), &i.value)?;
        }
        for d in &self.details {
            write_field(f, &d.key, &d.value)?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "CHECK {}: {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
        }
        for a in &self.artifacts {
            writeln!(f, "ARTIFACT: {a}")?;
        }
        writeln!(f, "OUTCOME: {}", self.outcome)
    }
}
