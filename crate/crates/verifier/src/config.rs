//! `key = value` configuration files. Keys use the flag names.

use std::path::Path;

use thiserror::Error;

use crate::Format;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("empty window {0}:{1}")]
    EmptyWindow(i64, i64),
    #[error("invalid value for {0}: {1}")]
    Invalid(String, String),
    #[error("unknown key {0:?} on line {1}")]
    UnknownKey(String, usize),
    #[error("line {0} is not of the form key = value")]
    Syntax(usize),
    #[error("cannot read {0}: {1}")]
    Io(String, String),
}

/// Settings from a file or the command line; unset fields fall back.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub prime: Option<u64>,
    pub window: Option<(i64, i64)>,
    pub torsion_bound: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::Invalid(key.into(), v.into()))
}

/// Parses `lo:hi`.
pub fn parse_window(v: &str) -> Result<(i64, i64), ConfigError> {
    let (lo, hi) = v.split_once(':').ok_or_else(|| ConfigError::Invalid("window".into(), v.into()))?;
    let w = (num("window", lo.trim())?, num("window", hi.trim())?);
    if w.0 > w.1 {
        return Err(ConfigError::EmptyWindow(w.0, w.1));
    }
    Ok(w)
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax(i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "prime" => c.prime = Some(num(k, v)?),
                "window" => c.window = Some(parse_window(v)?),
                "torsion-bound" => c.torsion_bound = Some(num(k, v)?),
                "samples" => c.samples = Some(num(k, v)?),
                "seed" => c.seed = Some(num(k, v)?),
                "format" => {
                    c.format = Some(match v {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        _ => return Err(ConfigError::Invalid(k.into(), v.into())),
                    })
                }
                _ => return Err(ConfigError::UnknownKey(k.into(), i + 1)),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    /// `self` with unset fields taken from `base`.
    pub fn over(self, base: Config) -> Config {
        Config {
            prime: self.prime.or(base.prime),
            window: self.window.or(base.window),
            torsion_bound: self.torsion_bound.or(base.torsion_bound),
            samples: self.samples.or(base.samples),
            seed: self.seed.or(base.seed),
            format: self.format.or(base.format),
        }
    }

    pub fn scenario(&self, name: crate::ScenarioName) -> crate::Scenario {
        let mut s = crate::Scenario::new(name, self.prime.unwrap_or(2));
        if let Some(w) = self.window {
            s.window = w;
        }
        if let Some(k) = self.torsion_bound {
            s.torsion_bound = k;
        }
        if let Some(n) = self.samples {
            s.samples = n;
        }
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let file = Config::parse("# defaults\nprime = 3\nwindow = -2:4\nseed=9\nformat = json\n").unwrap();
        assert_eq!(file.window, Some((-2, 4)));
        let flags = Config { prime: Some(5), ..Config::default() };
        let c = flags.over(file);
        assert_eq!((c.prime, c.seed, c.format), (Some(5), Some(9), Some(Format::Json)));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Config::parse("colour = red"), Err(ConfigError::UnknownKey("colour".into(), 1)));
        assert_eq!(Config::parse("prime 3"), Err(ConfigError::Syntax(1)));
        assert_eq!(parse_window("3:1"), Err(ConfigError::EmptyWindow(3, 1)));
        assert!(Config::parse("samples = many").is_err());
    }
}
