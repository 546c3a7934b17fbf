//! Learning curves as CSV.
//!
//! Header `iteration,<algo>_mse,<algo>_mse_db,...`, one row per iteration,
//! LF line endings, floats in shortest round-trip form.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::LearningCurve;

pub fn render_csv(curves: &[LearningCurve]) -> Result<String> {
    let Some(first) = curves.first() else {
        return Err(Error::NoCurves);
    };
    let n = first.len();
    if let Some(bad) = curves.iter().find(|c| c.len() != n || c.mse_db.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: bad.len(),
        });
    }

    let mut out = String::from("iteration");
    for c in curves {
        let label = c.algorithm.label();
        write!(out, ",{label}_mse,{label}_mse_db").unwrap();
    }
    out.push('\n');
    for i in 0..n {
        write!(out, "{i}").unwrap();
        for c in curves {
            write!(out, ",{},{}", c.mse_linear[i], c.mse_db[i]).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

fn io_error(path: &Path, err: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    }
}

/// Writes the CSV to a temporary file next to `path`, then renames it into
/// place. `path` is never left holding a partial file.
pub fn emit_csv(curves: &[LearningCurve], path: &Path) -> Result<()> {
    let text = render_csv(curves)?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(path, e))?;
    tmp.write_all(text.as_bytes()).map_err(|e| io_error(path, e))?;
    tmp.as_file().sync_all().map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}
