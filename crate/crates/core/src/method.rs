//! Named computation routes for `chi`, so callers can pick one at runtime.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formulas::{chi_bos, chi_det, chi_explicit, chi_wall};
use crate::lgv::{lgv_chi, LgvError};
use crate::oracle::{enumerate_chi, OracleError};
use crate::partition::{ConfigError, PitConfig};
use crate::qseries::QSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MethodError {
    #[error("unknown method `{0}` (expected det, bos, explicit, oracle, wall or lgv)")]
    Unknown(String),
    #[error("the wall formula needs m = 0, got m = {0}")]
    WallNeedsNoColumns(usize),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Lgv(#[from] LgvError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Det,
    Bos,
    Explicit,
    Oracle,
    Wall,
    Lgv,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::Det, Method::Bos, Method::Explicit, Method::Oracle, Method::Wall, Method::Lgv];

    pub fn name(self) -> &'static str {
        match self {
            Method::Det => "det",
            Method::Bos => "bos",
            Method::Explicit => "explicit",
            Method::Oracle => "oracle",
            Method::Wall => "wall",
            Method::Lgv => "lgv",
        }
    }

    /// Whether the route accepts this configuration.
    pub fn applies_to(self, config: &PitConfig) -> bool {
        self != Method::Wall || config.m() == 0
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = MethodError;

    fn from_str(s: &str) -> Result<Method, MethodError> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| MethodError::Unknown(s.to_string()))
    }
}

/// `chi` through `q^order` by the chosen route.
pub fn compute(method: Method, config: &PitConfig, order: i64) -> Result<QSeries, MethodError> {
    match method {
        Method::Det => Ok(chi_det(config, order)),
        Method::Bos => Ok(chi_bos(config, order)),
        Method::Explicit => Ok(chi_explicit(config, order)),
        Method::Oracle => Ok(enumerate_chi(config, order)?),
        Method::Wall if config.m() == 0 => Ok(chi_wall(config.n(), config.nu(), config.lambda(), order)?),
        Method::Wall => Err(MethodError::WallNeedsNoColumns(config.m())),
        Method::Lgv => Ok(lgv_chi(config, order)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>(), Ok(m));
        }
        assert!(matches!("nope".parse::<Method>(), Err(MethodError::Unknown(_))));
    }

    #[test]
    fn routes_agree_on_a_small_config() {
        let c = PitConfig::new(2, 1, "2,1".parse().unwrap(), "1".parse().unwrap(), "1".parse().unwrap()).unwrap();
        let reference = compute(Method::Det, &c, 5).unwrap();
        for m in Method::ALL.into_iter().filter(|m| m.applies_to(&c)) {
            assert_eq!(compute(m, &c, 5).unwrap(), reference, "{m}");
        }
        assert_eq!(compute(Method::Wall, &c, 5), Err(MethodError::WallNeedsNoColumns(1)));
    }
}
