//! Collection files and JSON report envelopes.
//!
//! A collection file lists one `(i,j;l)` per line; `#` starts a comment and
//! an optional `quiver +-+-` line names the orientation.
//! JSON input is accepted as either an array of such strings or an object
//! `{"quiver": "+-+-", "modules": [...]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::quiver::Orientation;
use crate::strings::StringModule;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: cannot parse {token:?}")]
    Token { line: usize, token: String },
    #[error("invalid JSON collection: {0}")]
    Json(String),
    #[error("module {module} out of range for a quiver with {n} vertices")]
    OutOfRange { module: String, n: usize },
    #[error("collection is empty")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<String>,
    pub modules: Vec<StringModule>,
}

fn parse_module(token: &str, line: usize) -> Result<StringModule, IoError> {
    token.parse().map_err(|_| IoError::Token { line, token: token.to_string() })
}

/// Parses a collection file, text or JSON. Modules are kept in file order.
pub fn parse_collection(text: &str) -> Result<Collection, IoError> {
    let trimmed = text.trim_start();
    let c = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        match v {
            Value::Array(_) => Collection {
                quiver: None,
                modules: serde_json::from_value(v).map_err(|e| IoError::Json(e.to_string()))?,
            },
            _ => serde_json::from_value(v).map_err(|e| IoError::Json(e.to_string()))?,
        }
    } else {
        let (mut quiver, mut modules) = (None, Vec::new());
        for (k, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if let Some(eps) = body.strip_prefix("quiver ") {
                if quiver.is_some() {
                    return Err(IoError::Token { line: k + 1, token: body.to_string() });
                }
                quiver = Some(eps.trim().to_string());
            } else if !body.is_empty() {
                modules.push(parse_module(body, k + 1)?);
            }
        }
        Collection { quiver, modules }
    };
    if c.modules.is_empty() {
        return Err(IoError::Empty);
    }
    Ok(c)
}

/// Parses a single command-line module argument.
pub fn parse_module_arg(token: &str) -> Result<StringModule, IoError> {
    parse_module(token, 0)
}

pub fn check_range(q: &Orientation, ms: &[StringModule]) -> Result<(), IoError> {
    for m in ms {
        StringModule::new(q, m.i, m.j, m.l).map_err(|_| IoError::OutOfRange { module: m.to_string(), n: q.n() })?;
    }
    Ok(())
}

/// Canonical text form: one module per line.
pub fn format_collection(ms: &[StringModule]) -> String {
    ms.iter().map(|m| format!("{m}\n")).collect()
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with `schema_version` and `command` fields added at the top.
pub fn report<T: Serialize>(command: &str, body: &T) -> String {
    serde_json::to_string_pretty(&Envelope { schema_version: SCHEMA_VERSION, command, body })
        .expect("report bodies serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_with_comments() {
        let c = parse_collection("# simples\n(4,1;0)\n(1,2;0)  # S2\n\n(2,3;0)\n").unwrap();
        assert_eq!(format_collection(&c.modules), "(4,1;0)\n(1,2;0)\n(2,3;0)\n");
        assert_eq!(c.quiver, None);
        let c = parse_collection("quiver +++-  # the orientation\n(4,1;0)\n").unwrap();
        assert_eq!(c.quiver.as_deref(), Some("+++-"));
    }

    #[test]
    fn json_forms() {
        let a = parse_collection(r#"["(1,2;0)", "(2,1;1)"]"#).unwrap();
        let b = parse_collection(r#"{"quiver": "+-", "modules": ["(1,2;0)", "(2,1;1)"]}"#).unwrap();
        assert_eq!(a.modules, b.modules);
        assert_eq!(b.quiver.as_deref(), Some("+-"));
    }

    #[test]
    fn bad_token_is_named() {
        let e = parse_collection("(1,2;0)\n(1,3)\n").unwrap_err();
        assert_eq!(e, IoError::Token { line: 2, token: "(1,3)".into() });
        assert_eq!(parse_collection("# nothing\n"), Err(IoError::Empty));
    }

    #[test]
    fn range_is_checked() {
        let q: Orientation = "+-".parse().unwrap();
        assert!(check_range(&q, &["(1,3;0)".parse().unwrap()]).is_err());
    }

    #[test]
    fn envelope_has_version() {
        #[derive(Serialize)]
        struct Dim {
            dim: usize,
        }
        let v: Value = serde_json::from_str(&report("hom", &Dim { dim: 1 })).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["dim"], 1);
    }
}
