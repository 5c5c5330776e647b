//! Plain-text vector files and family directories.
//!
//! One vector per line, 24 signed decimal integers in the `×√8` scaling.
//! Blank lines and lines starting with `#` are ignored. Commas and square
//! brackets are accepted as separators when importing foreign files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{Configuration, FamilyOfSubsets};
use crate::error::{Error, Result};
use crate::leech::{LeechVector, MinimalVectorSet, DIM, MIN_NORM};

/// Parses raw integer rows. Non-integer tokens are rejected.
pub fn parse_rows(text: &str) -> Result<Vec<(usize, Vec<i64>)>> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cleaned: String = line
            .chars()
            .map(|c| if matches!(c, ',' | '[' | ']' | '(' | ')') { ' ' } else { c })
            .collect();
        let row = cleaned
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    line: n + 1,
                    message: format!("not an integer: {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.is_empty() {
            continue;
        }
        rows.push((n + 1, row));
    }
    Ok(rows)
}

/// Parses vectors already in the `×√8` scaling.
pub fn parse_vectors(text: &str) -> Result<Vec<LeechVector>> {
    parse_rows(text)?
        .into_iter()
        .map(|(line, row)| {
            if row.len() != DIM {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {DIM} coordinates, found {}", row.len()),
                });
            }
            LeechVector::from_i64(&row).ok_or_else(|| Error::Parse {
                line,
                message: "coordinate out of range".into(),
            })
        })
        .collect()
}

/// Parses integer vectors of unknown scaling. All rows must share one
/// squared norm `n`; they are multiplied by the `s` with `n·s² = 32`.
/// Returns the vectors and `s`.
pub fn parse_vectors_autoscale(text: &str) -> Result<(Vec<LeechVector>, i64)> {
    let rows = parse_rows(text)?;
    let Some((_, first)) = rows.first() else {
        return Ok((Vec::new(), 1));
    };
    let norm: i64 = first.iter().map(|x| x * x).sum();
    let factor = [1i64, 2, 4]
        .into_iter()
        .find(|s| norm * s * s == i64::from(MIN_NORM))
        .ok_or_else(|| Error::Parse {
            line: rows[0].0,
            message: format!("squared norm {norm} matches no supported scaling"),
        })?;
    let vectors = rows
        .into_iter()
        .map(|(line, row)| {
            if row.len() != DIM {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {DIM} coordinates, found {}", row.len()),
                });
            }
            let n: i64 = row.iter().map(|x| x * x).sum();
            if n != norm {
                return Err(Error::Parse {
                    line,
                    message: format!("squared norm {n} differs from first row ({norm})"),
                });
            }
            let scaled: Vec<i64> = row.iter().map(|x| x * factor).collect();
            LeechVector::from_i64(&scaled).ok_or_else(|| Error::Parse {
                line,
                message: "coordinate out of range".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((vectors, factor))
}

pub fn format_vectors<'a>(vectors: impl IntoIterator<Item = &'a LeechVector>) -> String {
    let mut out = String::new();
    for v in vectors {
        let mut first = true;
        for c in v.0 {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_vectors<'a>(path: &Path, vectors: impl IntoIterator<Item = &'a LeechVector>) -> Result<()> {
    fs::write(path, format_vectors(vectors))?;
    Ok(())
}

/// Maps vectors to indices, failing on the first vector that is not minimal.
pub fn to_indices(vectors: &[LeechVector], set: &MinimalVectorSet) -> Result<Vec<u32>> {
    vectors
        .iter()
        .map(|v| set.index_of(v).ok_or_else(|| Error::NotMinimal(v.to_i64().to_vec())))
        .collect()
}

pub fn read_configuration(path: &Path, set: &MinimalVectorSet) -> Result<Configuration> {
    let (vectors, _) = parse_vectors_autoscale(&fs::read_to_string(path)?)?;
    let indices = to_indices(&vectors, set)?;
    let n = indices.len();
    let conf = Configuration::new(indices, false);
    if conf.len() != n {
        return Err(Error::InvalidConfiguration(format!(
            "{} contains duplicate vectors",
            path.display()
        )));
    }
    let antipodal = crate::config::is_antipodal(&conf, set);
    let mut conf = conf;
    conf.set_antipodal_flag(antipodal);
    Ok(conf)
}

pub fn write_configuration(path: &Path, conf: &Configuration, set: &MinimalVectorSet) -> Result<()> {
    write_vectors(path, conf.members().iter().map(|&i| set.get(i)))
}

/// `manifest.json` of a family directory.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyManifest {
    pub sizes: Vec<usize>,
    pub seed: Option<u64>,
    pub notes: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<serde_json::Value>,
}

pub fn subset_file(dir: &Path, i: usize) -> PathBuf {
    dir.join(format!("S_{i}.txt"))
}

pub fn write_family(
    dir: &Path,
    family: &FamilyOfSubsets,
    set: &MinimalVectorSet,
    manifest: &FamilyManifest,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (i, s) in family.subsets.iter().enumerate() {
        write_configuration(&subset_file(dir, i + 1), s, set)?;
    }
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(manifest)?)?;
    Ok(())
}

/// Reads `S_1.txt`, `S_2.txt`, … until the first missing index. The manifest
/// is optional.
pub fn read_family(dir: &Path, set: &MinimalVectorSet) -> Result<(FamilyOfSubsets, Option<FamilyManifest>)> {
    let mut subsets = Vec::new();
    let mut i = 1;
    loop {
        let path = subset_file(dir, i);
        if !path.exists() {
            break;
        }
        subsets.push(read_configuration(&path, set)?);
        i += 1;
    }
    if subsets.is_empty() {
        return Err(Error::InvalidConfiguration(format!(
            "no S_1.txt found in {}",
            dir.display()
        )));
    }
    let manifest_path = dir.join("manifest.json");
    let manifest = if manifest_path.exists() {
        Some(serde_json::from_str(&fs::read_to_string(manifest_path)?)?)
    } else {
        None
    };
    Ok((FamilyOfSubsets::new(subsets), manifest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "# header\n\n4 4 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n";
        let v = parse_vectors(text).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].norm(), 32);
    }

    #[test]
    fn rejects_non_integers() {
        let text = "1.5 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n";
        assert!(matches!(parse_vectors(text), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(parse_vectors("1 2 3\n").is_err());
    }

    #[test]
    fn autoscale_detects_halved_coordinates() {
        let text = "[2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]\n\
                    2 -2 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n";
        let (v, s) = parse_vectors_autoscale(text).unwrap();
        assert_eq!(s, 2);
        assert_eq!(v[0].0[0], 4);
        assert_eq!(v[1].0[1], -4);
    }

    #[test]
    fn autoscale_rejects_fractions() {
        let mut row = vec!["1"; DIM];
        row[0] = "-1.5";
        assert!(matches!(parse_vectors_autoscale(&row.join(" ")), Err(Error::Parse { .. })));
    }

    #[test]
    fn format_roundtrip() {
        let mut a = [1i8; DIM];
        a[5] = -3;
        let v = LeechVector(a);
        assert_eq!(parse_vectors(&format_vectors([&v])).unwrap(), vec![v]);
    }
}
