use std::fmt::Display;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

/// The outcome of a command: text lines, a JSON object with the same
/// content, and files for `--out`.
#[derive(Clone, Debug)]
pub struct Report {
    pub lines: Vec<String>,
    pub json: Map<String, Value>,
    /// False when a checked property fails.
    pub holds: bool,
    pub artifacts: Vec<(String, String)>,
    pub dot: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut json = Map::new();
        json.insert("command".into(), Value::String(command.into()));
        Report { lines: Vec::new(), json, holds: true, artifacts: Vec::new(), dot: None }
    }

    pub fn line(&mut self, text: String) {
        self.lines.push(text);
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    /// A text line `key: value` and the JSON entry under `key`.
    pub fn field(&mut self, key: &str, text: impl Display, value: Value) {
        self.lines.push(format!("{key}: {text}"));
        self.json.insert(key.replace(' ', "_"), value);
    }

    pub fn artifact(&mut self, file: String, contents: String) {
        self.artifacts.push((file, contents));
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Object(self.json.clone())).expect("values serialize");
        s.push('\n');
        s
    }

    /// Writes `report.json` and every artifact into `dir`.
    pub fn write_to(&self, dir: &Path) -> CliResult<()> {
        let io = |path: &Path| {
            let path = path.display().to_string();
            move |source| CliError::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let target = dir.join("report.json");
        std::fs::write(&target, self.json_text()).map_err(io(&target))?;
        for (name, contents) in &self.artifacts {
            let target = dir.join(name);
            std::fs::write(&target, contents).map_err(io(&target))?;
        }
        Ok(())
    }
}
