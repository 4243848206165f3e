use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Turns `key=value` lines into `--key value` arguments. Blank lines and
/// lines starting with `#` are skipped; `key=true` becomes a bare `--key`.
pub fn parse_config(text: &str) -> Result<Vec<OsString>> {
    let mut args = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key=value, got `{line}`", number + 1);
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            bail!("config line {}: invalid key `{key}`", number + 1);
        }
        args.push(format!("--{key}").into());
        match value {
            "true" => {}
            "false" => {
                args.pop();
            }
            v => args.push(v.into()),
        }
    }
    Ok(args)
}

/// Expands `--config PATH` (or `--config=PATH`) in `argv`. The file's flags
/// go right after the subcommand so explicit flags override them.
pub fn expand_config_args(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut iter = argv.into_iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            path = Some(iter.next().context("--config needs a path")?);
        } else if let Some(p) = text.strip_prefix("--config=") {
            path = Some(OsString::from(p));
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let path = Path::new(&path);
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    let extra = parse_config(&text)?;
    let subcommand =
        rest.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')).map_or(rest.len(), |i| i + 2);
    rest.splice(subcommand..subcommand, extra);
    Ok(rest)
}
