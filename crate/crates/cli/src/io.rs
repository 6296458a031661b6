//! File formats. Every object is a JSON document whose keys identify its kind.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub carrier: Vec<String>,
    pub base: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MSetFile {
    pub monoid: String,
    pub carrier: Vec<String>,
    pub action: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceFile {
    pub monoid: String,
    pub classes: Vec<Vec<String>>,
}

/// A filter generator: a reference to a congruence or its classes inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generator {
    Named(String),
    Classes(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterFile {
    pub monoid: String,
    pub generators: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Monoid(MonoidFile),
    Topology(TopologyFile),
    MSet(MSetFile),
    Hom(HomFile),
    Congruence(CongruenceFile),
    Filter(FilterFile),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::Topology(_) => "topology",
            Document::MSet(_) => "mset",
            Document::Hom(_) => "hom",
            Document::Congruence(_) => "congruence",
            Document::Filter(_) => "filter",
        }
    }

    /// Fields in declaration order, each on one line; tables one row per line.
    pub fn to_json(&self) -> String {
        let fields: Vec<(&str, Value)> = match self {
            Document::Monoid(d) => {
                vec![("elements", val(&d.elements)), ("identity", val(&d.identity)), ("table", val(&d.table))]
            }
            Document::Topology(d) => vec![("carrier", val(&d.carrier)), ("base", val(&d.base))],
            Document::MSet(d) => {
                vec![("monoid", val(&d.monoid)), ("carrier", val(&d.carrier)), ("action", val(&d.action))]
            }
            Document::Hom(d) => vec![("source", val(&d.source)), ("target", val(&d.target)), ("map", val(&d.map))],
            Document::Congruence(d) => vec![("monoid", val(&d.monoid)), ("classes", val(&d.classes))],
            Document::Filter(d) => vec![("monoid", val(&d.monoid)), ("generators", val(&d.generators))],
        };
        let compact = |x: &Value| serde_json::to_string(x).expect("values serialize");
        let body: Vec<String> = fields
            .iter()
            .map(|(k, x)| match x {
                Value::Array(rows) if rows.iter().any(|r| r.is_array()) => {
                    let rows: Vec<String> = rows.iter().map(|r| format!("    {}", compact(r))).collect();
                    format!("  \"{k}\": [\n{}\n  ]", rows.join(",\n"))
                }
                _ => format!("  \"{k}\": {}", compact(x)),
            })
            .collect();
        format!("{{\n{}\n}}\n", body.join(",\n"))
    }
}

fn val<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("file fields serialize")
}

fn typed<T: for<'de> Deserialize<'de>>(path: &str, text: &str, v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| {
        let msg = e.to_string();
        let line = msg.split('`').nth(1).and_then(|field| line_of(text, field)).unwrap_or(1);
        CliError::Parse { path: path.into(), line, message: msg }
    })
}

/// Parses a document, telling kinds apart by their keys.
pub fn parse_document(path: &str, text: &str) -> Result<Document, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.into(),
        line: e.line(),
        message: e.to_string(),
    })?;
    let Some(obj) = v.as_object() else {
        return Err(CliError::Parse { path: path.into(), line: 1, message: "expected a JSON object".into() });
    };
    let has = |k: &str| obj.contains_key(k);
    if has("table") {
        Ok(Document::Monoid(typed(path, text, v)?))
    } else if has("action") {
        Ok(Document::MSet(typed(path, text, v)?))
    } else if has("map") {
        Ok(Document::Hom(typed(path, text, v)?))
    } else if has("classes") {
        Ok(Document::Congruence(typed(path, text, v)?))
    } else if has("generators") {
        Ok(Document::Filter(typed(path, text, v)?))
    } else if has("base") {
        Ok(Document::Topology(typed(path, text, v)?))
    } else {
        Err(CliError::Parse {
            path: path.into(),
            line: 1,
            message:
                "cannot tell the object kind: expected one of the keys table, base, action, map, classes, generators"
                    .into(),
        })
    }
}

/// First line mentioning `"token"`, 1-based.
pub fn line_of(text: &str, token: &str) -> Option<usize> {
    let quoted = format!("\"{token}\"");
    text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_detected() {
        let m = r#"{"elements": ["0"], "identity": "0", "table": [["0"]]}"#;
        assert_eq!(parse_document("m", m).unwrap().kind(), "monoid");
        let t = r#"{"carrier": ["a"], "base": [["a"]]}"#;
        assert_eq!(parse_document("t", t).unwrap().kind(), "topology");
        let f = r#"{"monoid": "C4", "generators": ["c", [["0", "2"], ["1", "3"]]]}"#;
        match parse_document("f", f).unwrap() {
            Document::Filter(f) => assert_eq!(f.generators.len(), 2),
            d => panic!("parsed as {}", d.kind()),
        }
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let err = parse_document("bad.json", "{\n  \"elements\": [\n  ,\n}").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = "{\n \"carrier\": [\"a\"],\n \"base\": [],\n \"extra\": 1\n}";
        let err = parse_document("t.json", text).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }), "{err}");
    }
}
