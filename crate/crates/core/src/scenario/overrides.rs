//! `path=value` edits on scenario documents.
//!
//! Paths are dotted. Array elements are addressed by index, and elements of
//! `nodes` may also be addressed by their `id`: `nodes.tag1.position.0`.

use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Override {
    pub path: String,
    pub value: Value,
}

impl Override {
    pub fn new(path: impl Into<String>, value: impl Into<Value>) -> Self {
        Override {
            path: path.into(),
            value: value.into(),
        }
    }

    fn spec(&self) -> String {
        format!("{}={}", self.path, self.value)
    }
}

impl FromStr for Override {
    type Err = Error;

    /// The value is read as JSON when it parses, otherwise as a string.
    fn from_str(s: &str) -> Result<Self> {
        let (path, raw) = s.split_once('=').ok_or_else(|| Error::Override {
            spec: s.into(),
            message: "expected PATH=VALUE".into(),
        })?;
        let path = path.trim();
        if path.is_empty() || path.split('.').any(str::is_empty) {
            return Err(Error::Override {
                spec: s.into(),
                message: "empty path segment".into(),
            });
        }
        let value = serde_json::from_str(raw.trim()).unwrap_or_else(|_| Value::String(raw.into()));
        Ok(Override {
            path: path.into(),
            value,
        })
    }
}

fn element_index(items: &[Value], seg: &str) -> Option<usize> {
    items
        .iter()
        .position(|v| v.get("id").and_then(Value::as_str) == Some(seg))
        .or_else(|| seg.parse::<usize>().ok().filter(|&i| i < items.len()))
}

/// Looks up a dotted path.
pub fn lookup<'a>(mut v: &'a Value, path: &str) -> Option<&'a Value> {
    for seg in path.split('.') {
        v = match v {
            Value::Object(m) => m.get(seg)?,
            Value::Array(items) => &items[element_index(items, seg)?],
            _ => return None,
        };
    }
    Some(v)
}

/// Sets a dotted path in `doc`. Members missing from `doc`, or present only
/// in shorthand form (a preset name where `resolved` has an object), are
/// first copied over from `resolved`.
fn set(doc: &mut Value, resolved: &Value, path: &str, new: Value) -> std::result::Result<(), String> {
    let segs: Vec<&str> = path.split('.').collect();
    let mut cur = doc;
    let mut shadow = Some(resolved);
    for (k, seg) in segs.iter().enumerate() {
        let last = k + 1 == segs.len();
        let next_shadow = shadow.and_then(|s| lookup(s, seg));
        cur = match cur {
            Value::Object(m) => {
                if last {
                    m.insert((*seg).into(), new);
                    return Ok(());
                }
                let slot = m.entry(*seg).or_insert(Value::Null);
                let is_container = matches!(slot, Value::Object(_) | Value::Array(_));
                if !is_container {
                    match next_shadow {
                        Some(s) if s.is_object() || s.is_array() => *slot = s.clone(),
                        _ => *slot = Value::Object(Map::new()),
                    }
                }
                slot
            }
            Value::Array(items) => {
                let i = element_index(items, seg)
                    .ok_or_else(|| format!("no element `{seg}` in `{}`", segs[..k].join(".")))?;
                if last {
                    items[i] = new;
                    return Ok(());
                }
                &mut items[i]
            }
            _ => return Err(format!("`{}` is not an object or array", segs[..k].join("."))),
        };
        shadow = next_shadow;
    }
    Ok(())
}

/// Applies overrides to the raw `doc`. Each path must exist in `resolved`,
/// the fully defaulted form of the same document, so that typos are caught
/// even for fields the raw document leaves out.
pub fn apply_overrides(doc: &mut Value, resolved: &Value, overrides: &[Override]) -> Result<()> {
    for o in overrides {
        if lookup(resolved, &o.path).is_none() {
            return Err(Error::Override {
                spec: o.spec(),
                message: format!("`{}` is not a scenario field", o.path),
            });
        }
        set(doc, resolved, &o.path, o.value.clone()).map_err(|message| Error::Override {
            spec: o.spec(),
            message,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parse_values() {
        let o: Override = "seed=7".parse().unwrap();
        assert_eq!(o.value, json!(7));
        let o: Override = "name=hello world".parse().unwrap();
        assert_eq!(o.value, json!("hello world"));
        let o: Override = "nodes.c1.position=[1,2,3]".parse().unwrap();
        assert_eq!(o.value, json!([1, 2, 3]));
        assert!("seed".parse::<Override>().is_err());
        assert!("a..b=1".parse::<Override>().is_err());
    }

    #[test]
    fn lookup_by_id_and_index() {
        let v = json!({"nodes": [{"id": "a", "position": [0, 1, 2]}, {"id": "b"}]});
        assert_eq!(lookup(&v, "nodes.a.position.1"), Some(&json!(1)));
        assert_eq!(lookup(&v, "nodes.1.id"), Some(&json!("b")));
        assert_eq!(lookup(&v, "nodes.c"), None);
    }

    #[test]
    fn unknown_path_is_rejected() {
        let resolved = json!({"seed": 1, "packet": {"window_packets": 20}});
        let mut doc = json!({"seed": 1});
        let err = apply_overrides(&mut doc, &resolved, &[Override::new("sead", 3)]).unwrap_err();
        assert!(err.to_string().contains("sead"));
        apply_overrides(&mut doc, &resolved, &[Override::new("packet.window_packets", 10)]).unwrap();
        assert_eq!(doc, json!({"seed": 1, "packet": {"window_packets": 10}}));
    }
}
