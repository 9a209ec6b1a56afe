//! key=value configuration file: digits, oracle_cap, kappa_safety.

use std::path::Path;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    pub digits: Option<u32>,
    pub oracle_cap: Option<u64>,
    pub kappa_safety: Option<f64>,
}

fn value<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T, String> {
    v.parse().map_err(|_| format!("line {line}: bad value {v:?} for {key}"))
}

/// Parses the file text. Blank lines and lines starting with '#' are skipped.
pub fn parse(text: &str) -> Result<FileConfig, String> {
    let mut cfg = FileConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "digits" => cfg.digits = Some(value(k, v, i + 1)?),
            "oracle_cap" => cfg.oracle_cap = Some(value(k, v, i + 1)?),
            "kappa_safety" => cfg.kappa_safety = Some(value(k, v, i + 1)?),
            _ => return Err(format!("line {}: unknown key {k:?}", i + 1)),
        }
    }
    Ok(cfg)
}

pub fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text)
}
