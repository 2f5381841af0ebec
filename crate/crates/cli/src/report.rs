//! Serializable reports. Coefficients are arbitrary-precision JSON numbers.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Number;

use pitgf::{PitConfig, QSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub m: usize,
    pub nu: String,
    pub mu: String,
    pub lambda: String,
}

impl From<&PitConfig> for ConfigEcho {
    fn from(c: &PitConfig) -> ConfigEcho {
        ConfigEcho {
            n: c.n(),
            m: c.m(),
            nu: c.nu().to_string(),
            mu: c.mu().to_string(),
            lambda: c.lambda().to_string(),
        }
    }
}

/// Dense coefficients from `low` through `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficients {
    pub low: i64,
    pub order: i64,
    pub coefficients: Vec<Number>,
}

impl Coefficients {
    pub fn of(series: &QSeries) -> Coefficients {
        let order = series.order();
        let low = series.valuation().unwrap_or(0).min(order);
        let coefficients = series
            .dense(low, order)
            .iter()
            .map(|c| Number::from_str(&c.to_string()).expect("integers are JSON numbers"))
            .collect();
        Coefficients { low, order, coefficients }
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for (k, c) in self.coefficients.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.low + k as i64, c));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiReport {
    pub config: ConfigEcho,
    pub method: String,
    pub series: Coefficients,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pair: (String, String),
    pub agree: bool,
    pub first_divergence: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigVerdicts {
    pub config: ConfigEcho,
    pub verdicts: Vec<Verdict>,
}

impl ConfigVerdicts {
    pub fn agree(&self) -> bool {
        self.verdicts.iter().all(|v| v.agree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub methods: Vec<String>,
    pub order: i64,
    pub configs: usize,
    pub agree: bool,
    pub divergent: Vec<ConfigVerdicts>,
    pub minimal_counterexample: Option<ConfigVerdicts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrionCheck {
    pub name: String,
    pub agree: bool,
    pub first_divergence: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inside_window: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrionReport {
    pub config: ConfigEcho,
    #[serde(rename = "H")]
    pub cols: i64,
    #[serde(rename = "Hp")]
    pub rows: i64,
    pub base: i64,
    pub series: Coefficients,
    pub checks: Vec<BrionCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u128>,
}

impl BrionReport {
    pub fn agree(&self) -> bool {
        self.checks.iter().all(|c| c.agree || c.inside_window == Some(false))
    }
}
