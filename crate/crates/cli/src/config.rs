//! Flat `key=value` config files, layered underneath command-line flags.

use std::ffi::OsString;
use std::fs;

/// Pulls `--config FILE` out of `args` and splices the file's settings in
/// right after the subcommand, so flags given on the command line win.
pub fn layer(mut args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some((pos, path, width)) = find_config(&args) else {
        return Ok(args);
    };
    args.drain(pos..pos + width);
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let extra = parse(&text).map_err(|e| format!("{path}: {e}"))?;
    let sub = args
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|i| i + 2)
        .ok_or_else(|| "a subcommand is required".to_string())?;
    args.splice(sub..sub, extra);
    Ok(args)
}

fn find_config(args: &[OsString]) -> Option<(usize, String, usize)> {
    for (i, a) in args.iter().enumerate() {
        let a = a.to_string_lossy();
        if let Some(v) = a.strip_prefix("--config=") {
            return Some((i, v.to_string(), 1));
        }
        if a == "--config" {
            let v = args.get(i + 1)?.to_string_lossy().into_owned();
            return Some((i, v, 2));
        }
    }
    None
}

/// Each non-blank, non-`#` line is `key = value`; keys are flag names
/// without the leading dashes. `true`/`false` toggle switches.
pub fn parse(text: &str) -> Result<Vec<OsString>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", n + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k == "config" {
            return Err(format!("line {}: invalid key {k:?}", n + 1));
        }
        match v {
            "true" => out.push(format!("--{k}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{k}").into());
                out.push(v.into());
            }
        }
    }
    Ok(out)
}
