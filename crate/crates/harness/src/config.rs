use clap::ValueEnum;
use serde::Serialize;
use u21_core::fields::{build_tower, FieldTower};
use u21_core::group::KTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum TagChoice {
    #[value(name = "K0")]
    K0,
    #[value(name = "K1")]
    K1,
    #[value(name = "both")]
    #[serde(rename = "both")]
    Both,
}

impl TagChoice {
    pub fn tags(self) -> Vec<KTag> {
        match self {
            TagChoice::K0 => vec![KTag::K0],
            TagChoice::K1 => vec![KTag::K1],
            TagChoice::Both => KTag::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Notation,
    Hecke,
    Appendix,
    Section3,
    Degenerate,
    Regular,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Notation,
        Suite::Hecke,
        Suite::Appendix,
        Suite::Section3,
        Suite::Degenerate,
        Suite::Regular,
    ];

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub p: u32,
    pub f: u32,
    #[serde(rename = "K")]
    pub tags: TagChoice,
    pub prec: i32,
    pub nmax: i32,
    pub suite: Suite,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { p: 3, f: 1, tags: TagChoice::Both, prec: 16, nmax: 4, suite: Suite::All, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Checks the invariants and builds the residue tower.
    pub fn validate(&self) -> Result<FieldTower, ConfigError> {
        if self.nmax < 1 {
            return Err(ConfigError(format!("nmax must be positive, got {}", self.nmax)));
        }
        if 2 * self.nmax + 4 > self.prec {
            return Err(ConfigError(format!(
                "precision {} is too small for nmax {} (need 2·nmax + 4 ≤ prec)",
                self.prec, self.nmax
            )));
        }
        build_tower(self.p, self.f).map_err(|e| ConfigError(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert_eq!(RunConfig::default().validate().unwrap().q(), 3);
    }

    #[test]
    fn rejects_bad_configs() {
        let even = RunConfig { p: 2, ..RunConfig::default() };
        assert!(even.validate().is_err());
        let tight = RunConfig { prec: 10, ..RunConfig::default() };
        assert!(tight.validate().is_err());
        let composite = RunConfig { p: 9, ..RunConfig::default() };
        assert!(composite.validate().is_err());
    }

    #[test]
    fn all_expands_to_every_suite() {
        assert_eq!(Suite::All.expand().len(), 6);
        assert_eq!(Suite::Hecke.expand(), vec![Suite::Hecke]);
    }
}
