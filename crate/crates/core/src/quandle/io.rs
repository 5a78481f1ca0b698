//! The plain-text table format.
//!
//! ```text
//! # comments run to the end of the line
//! 3
//! 0 0 1
//! 1 1 0
//! 2 2 2
//! labels: x y z
//! ```

use super::{verify_quandle, FiniteQuandle};
use crate::error::{Error, Result};

pub fn parse_table_file(text: &str) -> Result<FiniteQuandle> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines.next().ok_or_else(|| Error::Parse("empty quandle file".into()))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::Parse(format!("line {ln}: expected the element count")))?;
    if n == 0 {
        return Err(Error::MalformedTable("a quandle needs at least one element".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} table rows")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("line {ln}: bad entry `{t}`")))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    let mut q = verify_quandle(&rows)?;
    if let Some((ln, line)) = lines.next() {
        let rest = line
            .strip_prefix("labels:")
            .ok_or_else(|| Error::Parse(format!("line {ln}: unexpected content")))?;
        let labels: Vec<&str> = rest.split_whitespace().collect();
        q = q.with_labels(&labels)?;
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse(format!("line {ln}: trailing content")));
        }
    }
    Ok(q)
}

/// Writes the canonical form; labels appear only when they were set.
pub fn write_table_file(q: &FiniteQuandle) -> String {
    let mut out = format!("{}\n", q.order());
    for i in 0..q.order() {
        let row: Vec<String> = q.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if q.has_custom_labels() {
        out.push_str("labels: ");
        out.push_str(&q.labels().join(" "));
        out.push('\n');
    }
    out
}
