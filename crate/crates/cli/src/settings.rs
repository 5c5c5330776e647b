//! `key=value` config files. Keys are long flag names without the dashes;
//! values from the file are spliced in after the subcommand so that flags
//! given on the command line win.

use std::ffi::OsString;
use std::fs;

use clap::{ArgAction, Command};

use crate::CliError;

pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", n + 1)))?;
        out.push((k.trim().replace('_', "-"), v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

/// Returns `args` with the config file entries inserted after the
/// subcommand name.
pub fn merge(cmd: &Command, args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.to_string_lossy())))?;
    let entries = parse(&text)?;
    let Some(pos) = args
        .iter()
        .position(|a| cmd.get_subcommands().any(|s| a.to_str() == Some(s.get_name())))
    else {
        return Ok(args);
    };
    let sub = cmd.find_subcommand(args[pos].to_str().unwrap()).unwrap();
    let mut extra = Vec::new();
    for (key, value) in entries {
        let arg = sub
            .get_arguments()
            .chain(cmd.get_arguments())
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| CliError::usage(format!("config key `{key}` is not an option of `{}`", sub.get_name())))?;
        if key == "config" {
            continue;
        }
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" | "1" | "yes" => extra.push(format!("--{key}").into()),
                "false" | "0" | "no" => {}
                _ => return Err(CliError::usage(format!("config key `{key}` expects true or false"))),
            }
        } else {
            extra.push(format!("--{key}={value}").into());
        }
    }
    let mut out = args[..=pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[pos + 1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_underscores() {
        let e = parse("# run\nseed = 5\n\nt_max=100\n").unwrap();
        assert_eq!(e, [("seed".into(), "5".into()), ("t-max".into(), "100".into())]);
        assert!(parse("seed 5").is_err());
    }
}
