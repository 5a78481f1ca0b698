//! Plain reports: an ordered list of key/value pairs rendered either for
//! people (`key: value`) or machines (`key = value`, lists as repeated keys).

use std::fmt::{self, Display};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Kv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "kv" => Ok(Format::Kv),
            _ => Err(Error::Parse(format!("format must be text or kv, got `{s}`"))),
        }
    }
}

impl Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Kv => "kv",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            entries: Vec::new(),
        }
    }

    /// Appends one pair. Newlines in the value are flattened to `; `.
    pub fn push(&mut self, key: &str, value: impl Display) -> &mut Self {
        let v = value.to_string();
        let v = if v.contains('\n') {
            v.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join("; ")
        } else {
            v
        };
        self.entries.push((key.to_string(), v));
        self
    }

    pub fn push_all<I, D>(&mut self, key: &str, values: I) -> &mut Self
    where
        I: IntoIterator<Item = D>,
        D: Display,
    {
        for v in values {
            self.push(key, v);
        }
        self
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all(&self, key: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                out.push_str(&format!("{}\n", self.command));
                for (k, v) in &self.entries {
                    out.push_str(&format!("  {k}: {v}\n"));
                }
            }
            Format::Kv => {
                out.push_str(&format!("command = {}\n", self.command));
                for (k, v) in &self.entries {
                    out.push_str(&format!("{k} = {v}\n"));
                }
            }
        }
        out
    }
}

/// Reads `key = value` lines back; blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(" = ")
            .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", k + 1)))?;
        out.push((key.to_string(), value.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let mut r = Report::new("idempotents");
        r.push("count", 3)
            .push_all("idempotent", ["a0", "a1", "a2"])
            .push("matrix", "[1 0]\n[0 1]");
        let text = r.render(Format::Kv);
        assert_eq!(
            text,
            "command = idempotents\ncount = 3\nidempotent = a0\nidempotent = a1\nidempotent = a2\nmatrix = [1 0]; [0 1]\n"
        );
        let back = parse_kv(&text).unwrap();
        assert_eq!(back.len(), 6);
        assert_eq!(back[2], ("idempotent".to_string(), "a0".to_string()));
        assert_eq!(r.get_all("idempotent"), ["a0", "a1", "a2"]);
        assert!(r.render(Format::Text).starts_with("idempotents\n  count: 3\n"));
    }

    #[test]
    fn malformed_kv() {
        assert!(parse_kv("no equals sign").is_err());
    }
}
