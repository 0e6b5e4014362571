//! Atomic file output and text rendering of verdicts.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use tgclaims::{OrderVerdict, TheoremVerdict, Witness};

/// Writes `contents` to a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let name = path
        .file_name()
        .with_context(|| format!("{} has no file name", path.display()))?;
    let tmp = path.with_file_name(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    std::fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

/// CSV with a header row and LF line endings.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    write_atomic(path, s.as_bytes())
}

fn witness(w: &Option<Witness>) -> String {
    match w {
        None => String::new(),
        Some(Witness::Point { x }) => format!(", first violation at x = {x}"),
        Some(Witness::Pair { alpha, beta }) => {
            format!(", first violation at (α, β) = ({alpha}, {beta})")
        }
    }
}

pub fn order_line(v: &OrderVerdict) -> String {
    format!(
        "{} check {}: margin {:.3e} over {} points{}",
        v.order_kind,
        if v.holds { "holds" } else { "fails" },
        v.margin,
        v.grid.evaluated_points,
        witness(&v.witness)
    )
}

pub fn checklist(v: &TheoremVerdict) -> String {
    let mut s = String::new();
    let title = match &v.implied_order {
        Some(o) => o.statement.clone(),
        None => "hypotheses not met".into(),
    };
    let _ = writeln!(s, "[{}] {title}", v.theorem_id);
    for c in &v.conditions {
        let mark = if c.holds { "x" } else { " " };
        let _ = writeln!(s, "  [{mark}] {}: {}", c.name, c.detail);
    }
    match &v.numeric_confirmation {
        Some(n) => {
            let tag = if v.exploratory { " (exploratory)" } else { "" };
            let _ = writeln!(s, "  numeric {}{tag}", order_line(n));
        }
        None => {
            let _ = writeln!(s, "  numeric check not run");
        }
    }
    if v.counterexample() {
        let _ = writeln!(s, "  WARNING: implied ordering refuted numerically");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_write_csv_format() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        write_csv(&p, &["x", "sf"], &[vec![0.0, 1.0], vec![0.5, 0.25]]).unwrap();
        assert_eq!(
            std::fs::read_to_string(&p).unwrap(),
            "x,sf\n0,1\n0.5,0.25\n"
        );
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
