use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

/// Keys accepted in a config file; they match the long flag names.
const KNOWN_KEYS: &[&str] = &[
    "beta",
    "c2",
    "checkpoint",
    "compare-exact",
    "courant",
    "dir",
    "dt",
    "dx",
    "every",
    "f0",
    "fhat",
    "filter-hp2",
    "init",
    "k",
    "kind",
    "length",
    "levels",
    "mesh",
    "mesh-kind",
    "n",
    "ngrid",
    "output",
    "quad-degree",
    "samples",
    "seed",
    "steps",
    "tol",
    "write-checkpoint",
];

/// `key = value` lines; `#` starts a comment. Values override built-in
/// defaults and are in turn overridden by command-line flags.
#[derive(Clone, Debug, Default)]
pub struct Config {
    values: BTreeMap<String, (String, usize)>,
    origin: String,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{origin}:{}: expected `key = value`", i + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            if !KNOWN_KEYS.contains(&key) {
                bail!("{origin}:{}: unknown key `{key}`", i + 1);
            }
            if values.insert(key.to_string(), (value.to_string(), i + 1)).is_some() {
                bail!("{origin}:{}: duplicate key `{key}`", i + 1);
            }
        }
        Ok(Self { values, origin: origin.to_string() })
    }

    /// Parsed value of `key`, if present.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some((v, line)) => match v.parse() {
                Ok(x) => Ok(Some(x)),
                Err(e) => bail!("{}:{line}: bad value for `{key}`: {e}", self.origin),
            },
        }
    }

    /// Flag value, else config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T::Err: Display,
    {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        Ok(match flag {
            Some(v) => Some(v),
            None => self.get(key)?,
        })
    }

    /// A switch is on if given on the command line or set true in the file.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool> {
        Ok(flag || self.get::<bool>(key)?.unwrap_or(false))
    }
}
