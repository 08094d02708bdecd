//! Flat `key = value` configuration files mirroring the command line flags.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Parses `key = value` lines. Blank lines and lines starting with `#` are skipped; keys may
/// be written with or without the leading `--`.
pub fn parse_config(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (ix, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: ix + 1,
                msg: format!("expected key=value, got '{line}'"),
            });
        };
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: ix + 1,
                msg: "empty key".into(),
            });
        }
        pairs.push((key.to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Vec<(String, String)>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, path)
}

/// Turns config pairs into `--key value` arguments.
pub fn config_to_args(pairs: &[(String, String)]) -> Vec<String> {
    pairs.iter().flat_map(|(k, v)| [format!("--{k}"), v.clone()]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let text = "# bench setup\nobjective = cut\n--k=5,10\n\nreps= 3\n";
        let pairs = parse_config(text, Path::new("bench.conf")).unwrap();
        assert_eq!(
            pairs,
            vec![
                ("objective".to_string(), "cut".to_string()),
                ("k".to_string(), "5,10".to_string()),
                ("reps".to_string(), "3".to_string()),
            ]
        );
        assert_eq!(config_to_args(&pairs[..1]), vec!["--objective", "cut"]);
    }

    #[test]
    fn rejects_lines_without_equals() {
        let err = parse_config("objective cut\n", Path::new("x")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
