//! Matrix list I/O: one matrix per line as four whitespace-separated
//! integers ("a b c d"), `#` starting a comment, blank lines skipped. The
//! same shape `sample` emits, so outputs pipe straight into `certify` and
//! `relate`.

use anyhow::{bail, Context, Result};
use sl2free::Mat2;
use std::io::Read;
use std::path::Path;

pub fn read_matrices(path: Option<&Path>) -> Result<Vec<Mat2>> {
    let text = match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .with_context(|| format!("reading matrices from {}", p.display()))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading matrices from stdin")?;
            buf
        }
    };
    parse_matrix_lines(&text)
}

pub fn parse_matrix_lines(text: &str) -> Result<Vec<Mat2>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let m: Mat2 = line
            .parse()
            .map_err(|e| anyhow::anyhow!("line {}: {e}", idx + 1))?;
        out.push(m);
    }
    if out.is_empty() {
        bail!("no matrices in input");
    }
    Ok(out)
}
