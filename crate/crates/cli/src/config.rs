//! `--config` files: flat `key = value` lines, or the header of a previous
//! output file, spliced into the argument list ahead of the explicit flags.

use std::ffi::OsString;
use std::path::Path;

use crate::error::{CliError, Result};

/// First line of every CSV output; marks a file whose header can be replayed.
pub const MAGIC: &str = "# cohprobe";

/// Keys that are bookkeeping rather than flags.
const COMMAND_KEY: &str = "command";

pub fn load(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return from_json(trimmed, path);
    }
    let replay = text.starts_with(MAGIC);
    let mut pairs = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let body = if replay {
            // the header ends at the first data line; `#!` lines are informational
            match line.strip_prefix('#') {
                Some(rest) if !rest.starts_with('!') => rest,
                Some(_) => continue,
                None => break,
            }
        } else {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            line
        };
        if replay && no == 0 {
            continue;
        }
        let Some((k, v)) = body.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{}:{}: expected key = value",
                path.display(),
                no + 1
            )));
        };
        pairs.push((k.trim().replace('_', "-"), v.trim().to_string()));
    }
    Ok(pairs)
}

fn from_json(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let doc: serde_json::Value = serde_json::from_str(text)?;
    let flags = doc
        .get("flags")
        .and_then(|f| f.as_object())
        .ok_or_else(|| CliError::Usage(format!("{}: no \"flags\" object", path.display())))?;
    Ok(flags
        .iter()
        .map(|(k, v)| {
            let v = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            (k.replace('_', "-"), v)
        })
        .collect())
}

/// Expands `--config FILE` (or `--config=FILE`) into flags placed right after
/// the subcommand, so that flags on the command line override them.
pub fn inject(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        match a.to_str() {
            Some("--config") => {
                path = Some(
                    it.next()
                        .ok_or_else(|| CliError::Usage("--config needs a file".into()))?,
                );
            }
            Some(s) if s.starts_with("--config=") => path = Some(OsString::from(&s["--config=".len()..])),
            _ => rest.push(a),
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    if rest.len() < 2 {
        return Err(CliError::Usage("--config must follow a subcommand".into()));
    }
    let sub = rest[1].to_string_lossy().into_owned();
    let mut flags = Vec::new();
    for (k, v) in load(Path::new(&path))? {
        if k == COMMAND_KEY {
            if v != sub {
                return Err(CliError::Usage(format!("config is for `{v}`, not `{sub}`")));
            }
            continue;
        }
        flags.push(OsString::from(format!("--{k}={v}")));
    }
    rest.splice(2..2, flags);
    Ok(rest)
}
