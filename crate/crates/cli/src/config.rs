//! `--config` files: `key=value` lines merged into the argument list before
//! parsing. Keys are long flag names without the dashes; a key already given
//! on the command line keeps its command-line value.

use std::collections::BTreeSet;
use std::path::Path;

use clap::CommandFactory;

use crate::args::Cli;
use crate::error::CliError;

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {}: expected key=value, found `{line}`", n + 1)));
        };
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", n + 1)));
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<(usize, String)> {
    args.iter().enumerate().find_map(|(i, a)| {
        if a == "--config" {
            args.get(i + 1).map(|p| (i, p.clone()))
        } else {
            a.strip_prefix("--config=").map(|p| (i, p.to_string()))
        }
    })
}

fn given_flags(args: &[String]) -> BTreeSet<String> {
    args.iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect()
}

/// Returns `args` with the entries of the `--config` file (if any) inserted
/// after the subcommand name.
pub fn merge_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some((_, path)) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::flag("config", format!("cannot read {path}: {e}")))?;
    let entries = parse_config(&text)?;
    let Some(sub_pos) = args.iter().skip(1).position(|a| !a.starts_with('-')).map(|p| p + 1) else {
        return Ok(args);
    };
    let root = Cli::command();
    let Some(sub) = root.find_subcommand(&args[sub_pos]) else {
        // let clap report the unknown subcommand
        return Ok(args);
    };
    let given = given_flags(&args);
    let mut inserted = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err(CliError::Usage("config files cannot include other config files".into()));
        }
        let Some(arg) = sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) else {
            return Err(CliError::Usage(format!("unknown key `{key}` in {path} for `{}`", sub.get_name())));
        };
        if given.contains(&key) {
            continue;
        }
        if arg.get_action().takes_values() {
            inserted.push(format!("--{key}"));
            inserted.push(value);
        } else {
            match value.as_str() {
                "true" | "1" | "yes" => inserted.push(format!("--{key}")),
                "false" | "0" | "no" => {}
                other => return Err(CliError::Usage(format!("key `{key}` in {path} is a switch; got `{other}`"))),
            }
        }
    }
    let mut out = args[..=sub_pos].to_vec();
    out.extend(inserted);
    out.extend_from_slice(&args[sub_pos + 1..]);
    Ok(out)
}
