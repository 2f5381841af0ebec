//! Partitions, pit configurations and their derived shifted coordinates.
//!
//! Indices in public accessors are 1-based (`part(1)` is the largest part);
//! storage is 0-based.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::qseries::{det, QSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, but part {index} ({value}) exceeds part {prev_index} ({prev})")]
    NotDecreasing { index: usize, value: u32, prev_index: usize, prev: u32 },
    #[error("cannot parse partition part {0:?}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("nu has {len} nonzero parts but n = {n}; part nu_{len} must vanish")]
    NuTooLong { len: usize, n: usize },
    #[error("mu has {len} nonzero parts but m = {m}; part mu_{len} must vanish")]
    MuTooLong { len: usize, m: usize },
    #[error("lambda_{index} = {value} exceeds m = {m}")]
    LambdaTooWide { index: usize, value: u32, m: usize },
}

/// A weakly decreasing finite sequence of nonnegative integers, stored
/// without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition, PartitionError> {
        for i in 1..parts.len() {
            if parts[i] > parts[i - 1] {
                return Err(PartitionError::NotDecreasing {
                    index: i + 1,
                    value: parts[i],
                    prev_index: i,
                    prev: parts[i - 1],
                });
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Part `i` (1-based); zero beyond the length.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 {
            panic!("partition parts are 1-based");
        }
        self.0.get(i - 1).copied().unwrap_or(0) as i64
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// `lambda'_j = #{i : lambda_i >= j}`.
    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Whether the cell in row `row`, column `col` (both 1-based) lies in the diagram.
    pub fn contains(&self, row: i64, col: i64) -> bool {
        row >= 1 && col >= 1 && self.part(row as usize) >= col
    }

    /// Whether every cell of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Partition) -> bool {
        (1..=self.len()).all(|i| self.part(i) <= other.part(i))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Comma-separated parts; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Partition, PartitionError> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| PartitionError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Boundary data of a plane partition with a pit at `(n+1, m+1)`: rows tend
/// to `nu`, columns tend to `mu`, and the cells of `lambda` are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PitConfig {
    n: usize,
    m: usize,
    nu: Partition,
    mu: Partition,
    lambda: Partition,
}

impl PitConfig {
    /// Checks `l(nu) <= n`, `l(mu) <= m` and `lambda_{n+1} <= m`.
    pub fn new(n: usize, m: usize, nu: Partition, mu: Partition, lambda: Partition) -> Result<PitConfig, ConfigError> {
        if nu.len() > n {
            return Err(ConfigError::NuTooLong { len: nu.len(), n });
        }
        if mu.len() > m {
            return Err(ConfigError::MuTooLong { len: mu.len(), m });
        }
        let beyond = lambda.part(n + 1);
        if beyond > m as i64 {
            return Err(ConfigError::LambdaTooWide { index: n + 1, value: beyond as u32, m });
        }
        Ok(PitConfig { n, m, nu, mu, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nu(&self) -> &Partition {
        &self.nu
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// The same configuration with the roles of rows and columns exchanged.
    pub fn transpose(&self) -> PitConfig {
        PitConfig {
            n: self.m,
            m: self.n,
            nu: self.mu.clone(),
            mu: self.nu.clone(),
            lambda: self.lambda.conjugate(),
        }
    }
}

impl fmt::Display for PitConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={} nu=({}) mu=({}) lambda=({})", self.n, self.m, self.nu, self.mu, self.lambda)
    }
}

/// Shifted coordinates derived from a [`PitConfig`].
///
/// Sequences are stored 0-based: `nu_shifted[i-1]` is `N_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    /// Degree of atypicality `r`: the number of diagonal cells of the
    /// `n x m` corner missing from `lambda`.
    pub atypicality: usize,
    /// `pi_i = lambda_i - (m - r)` for `i <= n - r`.
    pub row_excess: Vec<i64>,
    /// `kappa_j = lambda'_j - (n - r)` for `j <= m - r`.
    pub col_excess: Vec<i64>,
    /// `N_i = nu_i + n - i`.
    pub nu_shifted: Vec<i64>,
    /// `M_j = mu_j + m - j`.
    pub mu_shifted: Vec<i64>,
    /// `P_i = pi_i + (n - r) - i`.
    pub row_arms: Vec<i64>,
    /// `Q_j = kappa_j + (m - r) - j`.
    pub col_arms: Vec<i64>,
    /// `Delta = sum_j M_j Q_j + sum_i N_i (P_i + 1)`.
    pub grading_shift: i64,
    lambda: Partition,
    n: usize,
    m: usize,
}

impl FrobeniusData {
    pub fn new(config: &PitConfig) -> FrobeniusData {
        let (n, m) = (config.n, config.m);
        let lambda = config.lambda.clone();
        let conj = lambda.conjugate();
        let r = atypicality(config);
        debug_assert_eq!(r, atypicality_by_staircase(config));
        let row_excess: Vec<i64> = (1..=n - r).map(|i| lambda.part(i) - (m - r) as i64).collect();
        let col_excess: Vec<i64> = (1..=m - r).map(|j| conj.part(j) - (n - r) as i64).collect();
        let nu_shifted: Vec<i64> = (1..=n).map(|i| config.nu.part(i) + (n - i) as i64).collect();
        let mu_shifted: Vec<i64> = (1..=m).map(|j| config.mu.part(j) + (m - j) as i64).collect();
        let row_arms: Vec<i64> = row_excess.iter().enumerate().map(|(k, p)| p + (n - r) as i64 - (k as i64 + 1)).collect();
        let col_arms: Vec<i64> = col_excess.iter().enumerate().map(|(k, c)| c + (m - r) as i64 - (k as i64 + 1)).collect();
        let grading_shift = mu_shifted.iter().zip(&col_arms).map(|(mj, qj)| mj * qj).sum::<i64>()
            + nu_shifted.iter().zip(&row_arms).map(|(ni, pi)| ni * (pi + 1)).sum::<i64>();
        FrobeniusData {
            atypicality: r,
            row_excess,
            col_excess,
            nu_shifted,
            mu_shifted,
            row_arms,
            col_arms,
            grading_shift,
            lambda,
            n,
            m,
        }
    }

    /// `L_s = lambda_s - s + n - m + 1` for any `s >= 1`.
    pub fn lambda_particle(&self, s: usize) -> i64 {
        self.lambda.part(s) - s as i64 + self.n as i64 - self.m as i64 + 1
    }
}

/// `r = min{t : t = n or lambda_{n-t} >= m - t}`.
pub fn atypicality(config: &PitConfig) -> usize {
    let (n, m) = (config.n as i64, config.m as i64);
    (0..=config.n)
        .find(|&t| {
            let t = t as i64;
            t == n || config.lambda.part((n - t) as usize) >= m - t
        })
        .unwrap_or(config.n)
}

/// Atypicality counted along the staircase from `(n, m)` towards `(0, 0)`:
/// the diagonal cells `(n - t, m - t)` lying outside `lambda`.
pub fn atypicality_by_staircase(config: &PitConfig) -> usize {
    let (n, m) = (config.n as i64, config.m as i64);
    (0..n.min(m)).filter(|&t| !config.lambda.contains(n - t, m - t)).count()
}

/// The particle positions `lambda_i - i + shift`, `i = 1, 2, ...` (infinite, decreasing).
pub fn particles(lambda: &Partition, shift: i64) -> impl Iterator<Item = i64> + '_ {
    (1..).map(move |i: usize| lambda.part(i) - i as i64 + shift)
}

/// The hole positions complementary to [`particles`]: `j - lambda'_j - 1 + shift`
/// (infinite, increasing).
pub fn holes(lambda: &Partition, shift: i64) -> impl Iterator<Item = i64> {
    let conj = lambda.conjugate();
    (1..).map(move |j: usize| j as i64 - conj.part(j) - 1 + shift)
}

/// Partitions with at most `rows` parts, each at most `max_part`, in
/// lexicographic order.
pub fn partitions_in_box(rows: usize, max_part: u32) -> Vec<Partition> {
    fn extend(prefix: &mut Vec<u32>, rows: usize, cap: u32, out: &mut Vec<Partition>) {
        out.push(Partition(prefix.clone()));
        if prefix.len() == rows {
            return;
        }
        for v in 1..=cap {
            prefix.push(v);
            extend(prefix, rows, v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), rows, max_part, &mut out);
    out.sort();
    out
}

/// Every valid configuration with `n <= max_n`, `m <= max_m` and `nu`, `mu`,
/// `lambda` inside `max_part x max_part` boxes (with `l(nu) <= n`,
/// `l(mu) <= m`), in canonical order. Negative bounds give an empty battery.
pub fn config_battery(max_n: i64, max_m: i64, max_part: u32) -> Vec<PitConfig> {
    let mut out = Vec::new();
    let shapes = partitions_in_box(max_part as usize, max_part);
    for n in 0..=max_n {
        for m in 0..=max_m {
            let (n, m) = (n as usize, m as usize);
            for nu in partitions_in_box(n.min(max_part as usize), max_part) {
                for mu in partitions_in_box(m.min(max_part as usize), max_part) {
                    for lambda in &shapes {
                        if let Ok(c) = PitConfig::new(n, m, nu.clone(), mu.clone(), lambda.clone()) {
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// `det(q^(args_i * exponents_j))`, the evaluation of an antisymmetric polynomial
/// at powers of `q`. Repeated exponents give the zero polynomial.
///
/// # Panics
/// If the lengths differ or exceed the determinant cap.
pub fn a_shifted(exponents: &[i64], args: &[i64]) -> QSeries {
    assert_eq!(exponents.len(), args.len(), "a_shifted needs equally many exponents and args");
    let matrix: Vec<Vec<QSeries>> = args
        .iter()
        .map(|a| exponents.iter().map(|e| QSeries::polynomial(a * e, vec![BigInt::one()])).collect())
        .collect();
    det(&matrix).expect("a_shifted matrix is square and within the cap")
}
