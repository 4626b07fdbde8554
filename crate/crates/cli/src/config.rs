//! `key = value` config files. A file can set anything a flag can; explicit
//! flags (and their env fallbacks) win over the file, the file wins over
//! built-in defaults. Keys the current subcommand does not use are kept for
//! the manifest snapshot but never interpreted.

use anyhow::{anyhow, bail, Context, Result};
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Default)]
pub struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("config line {}: expected `key = value`, got {:?}", idx + 1, raw);
            };
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Config { map })
    }

    pub fn snapshot(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    fn lookup<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.map
            .get(key)
            .map(|s| {
                s.parse()
                    .map_err(|e| anyhow!("config key `{key}` = {s:?}: {e}"))
            })
            .transpose()
    }

    /// flag > config > default.
    pub fn resolve<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.resolve_opt(flag, key)?.unwrap_or(default))
    }

    pub fn resolve_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.lookup(key),
        }
    }

    pub fn resolve_required<T>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.resolve_opt(flag, key)?
            .ok_or_else(|| anyhow!("missing --{key} (pass the flag or set `{key} = ...` in the config file)"))
    }

    /// Set-true flags: the flag can only turn the value on, the file can
    /// preset it either way.
    pub fn resolve_switch(&self, flag: bool, key: &str) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        Ok(self.lookup::<bool>(key)?.unwrap_or(false))
    }

    /// Comma-separated integer grids, e.g. `X-grid = 100,200,400`.
    pub fn resolve_grid(&self, flag: Option<Vec<i64>>, key: &str) -> Result<Option<Vec<i64>>> {
        if let Some(v) = flag {
            return Ok(Some(v));
        }
        match self.map.get(key) {
            None => Ok(None),
            Some(s) => {
                let vals: Result<Vec<i64>, _> =
                    s.split(',').map(|t| t.trim().parse::<i64>()).collect();
                Ok(Some(vals.map_err(|e| anyhow!("config key `{key}` = {s:?}: {e}"))?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_precedence() {
        let cfg = Config::parse("X = 10\n# comment\nseed = 7  # trailing\n\nQ=3\n").unwrap();
        assert_eq!(cfg.resolve(None::<i64>, "X", 1).unwrap(), 10);
        assert_eq!(cfg.resolve(Some(99i64), "X", 1).unwrap(), 99);
        assert_eq!(cfg.resolve(None::<u64>, "seed", 0).unwrap(), 7);
        assert_eq!(cfg.resolve(None::<i64>, "Q", 1).unwrap(), 3);
        assert_eq!(cfg.resolve(None::<i64>, "missing", 42).unwrap(), 42);
        assert!(cfg.resolve_required(None::<i64>, "missing").is_err());
        assert!(Config::parse("no equals sign").is_err());
    }

    #[test]
    fn switches_and_grids() {
        let cfg = Config::parse("json = true\nX-grid = 1, 2,3\n").unwrap();
        assert!(cfg.resolve_switch(false, "json").unwrap());
        assert!(cfg.resolve_switch(true, "absent").unwrap());
        assert!(!cfg.resolve_switch(false, "absent").unwrap());
        assert_eq!(
            cfg.resolve_grid(None, "X-grid").unwrap(),
            Some(vec![1, 2, 3])
        );
        assert_eq!(
            cfg.resolve_grid(Some(vec![9]), "X-grid").unwrap(),
            Some(vec![9])
        );
        assert_eq!(cfg.resolve_grid(None, "Q-grid").unwrap(), None);
    }
}
