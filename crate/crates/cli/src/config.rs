//! Settings merged from a `key=value` file, the environment and flags.

use std::fs;
use std::path::{Path, PathBuf};

use thetadelta::coeffring::Mode;

use crate::fail::Failure;

pub const CACHE_ENV: &str = "THETADELTA_CACHE_DIR";

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub max_degree: usize,
    /// `None` leaves the choice to the command.
    pub mode: Option<Mode>,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: u64,
    pub json: bool,
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { max_degree: 8, mode: None, cache_dir: None, threads: None, seed: 0, json: false, timings: false }
    }
}

/// Values given on the command line; unset fields fall back to the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_degree: Option<usize>,
    pub mode: Option<Mode>,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub json: bool,
    pub timings: bool,
}

pub fn parse_mode(s: &str) -> Result<Mode, String> {
    match s {
        "exact" => Ok(Mode::Exact),
        "evaluated" => Ok(Mode::Evaluated),
        _ => Err(format!("unknown mode `{s}`; expected exact or evaluated")),
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("expected true or false, got `{s}`")),
    }
}

/// Parses a configuration file. Blank lines and lines starting with `#`
/// are ignored.
pub fn parse_file(text: &str, origin: &Path) -> Result<Settings, Failure> {
    let mut s = Settings::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| Failure::Usage(format!("{}:{}: {msg}", origin.display(), i + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| at("expected key=value".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let num = |v: &str| v.parse::<u64>().map_err(|e| at(format!("{key}: {e}")));
        match key {
            "max_degree" => s.max_degree = num(value)? as usize,
            "mode" => s.mode = Some(parse_mode(value).map_err(at)?),
            "cache_dir" => s.cache_dir = Some(PathBuf::from(value)),
            "threads" => s.threads = Some(num(value)? as usize),
            "seed" => s.seed = num(value)?,
            "json" => s.json = parse_bool(value).map_err(at)?,
            "timings" => s.timings = parse_bool(value).map_err(at)?,
            _ => return Err(at(format!("unknown key `{key}`"))),
        }
    }
    Ok(s)
}

/// Flags override the file; the cache directory falls back to the
/// environment variable.
pub fn resolve(file: Option<&Path>, flags: Overrides, env_cache: Option<String>) -> Result<Settings, Failure> {
    let mut s = match file {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            parse_file(&text, p)?
        }
        None => Settings::default(),
    };
    if let Some(v) = flags.max_degree {
        s.max_degree = v;
    }
    if flags.mode.is_some() {
        s.mode = flags.mode;
    }
    if flags.cache_dir.is_some() {
        s.cache_dir = flags.cache_dir;
    }
    if s.cache_dir.is_none() {
        s.cache_dir = env_cache.filter(|v| !v.is_empty()).map(PathBuf::from);
    }
    if flags.threads.is_some() {
        s.threads = flags.threads;
    }
    if let Some(v) = flags.seed {
        s.seed = v;
    }
    s.json |= flags.json;
    s.timings |= flags.timings;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = parse_file("# defaults\nmax_degree = 6\nmode=evaluated\nseed=4\n", Path::new("cfg")).unwrap();
        assert_eq!(file.max_degree, 6);
        assert_eq!(file.mode, Some(Mode::Evaluated));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg");
        fs::write(&path, "max_degree=6\nseed=4\ncache_dir=/from/file\n").unwrap();
        let flags = Overrides { seed: Some(9), ..Default::default() };
        let s = resolve(Some(&path), flags, Some("/from/env".into())).unwrap();
        assert_eq!((s.max_degree, s.seed), (6, 9));
        assert_eq!(s.cache_dir, Some(PathBuf::from("/from/file")));
        let s = resolve(None, Overrides::default(), Some("/from/env".into())).unwrap();
        assert_eq!(s.cache_dir, Some(PathBuf::from("/from/env")));
    }

    #[test]
    fn bad_lines_are_usage_errors() {
        assert!(matches!(parse_file("max_degree\n", Path::new("c")), Err(Failure::Usage(_))));
        assert!(matches!(parse_file("colour=red\n", Path::new("c")), Err(Failure::Usage(_))));
        assert!(matches!(parse_file("mode=fast\n", Path::new("c")), Err(Failure::Usage(_))));
    }
}
