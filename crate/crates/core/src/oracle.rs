//! Brute-force enumeration oracles.
//!
//! [`enumerate_chi`] counts plane partitions with a pit inside a finite
//! window, graded by the staircase rule: a cell `(i, j)` with
//! `i - n <= j - m` is measured against its row limit `nu_i`, every other
//! cell against its column limit `mu_j`.
//!
//! [`enumerate_v_partitions`] counts V-shaped arrays (one stem and two
//! weakly decreasing arms), the `n = m = 1`, `lambda = ∅` building block.

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::partition::PitConfig;
use crate::qseries::QSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("window is {rows}x{cols} but the configuration needs at least {min_rows}x{min_cols}")]
    WindowTooSmall { rows: usize, cols: usize, min_rows: usize, min_cols: usize },
    #[error("cell ({row},{col}) is {found} but must be {expected}")]
    Pinned { row: usize, col: usize, found: String, expected: String },
    #[error("entries ({row},{col}) and ({next_row},{next_col}) increase")]
    NotMonotone { row: usize, col: usize, next_row: usize, next_col: usize },
    #[error("window has {len} entries, expected {rows}x{cols}")]
    Shape { len: usize, rows: usize, cols: usize },
    #[error("cell ({row},{col}) next to the window edge deviates from its limit; enlarge the window")]
    EdgeDeviation { row: usize, col: usize },
}

/// A window entry: a nonnegative integer or the infinite marker of a cell of `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Infinite,
    Finite(u64),
}

impl Entry {
    fn at_least(self, other: Entry) -> bool {
        match (self, other) {
            (Entry::Infinite, _) => true,
            (Entry::Finite(_), Entry::Infinite) => false,
            (Entry::Finite(a), Entry::Finite(b)) => a >= b,
        }
    }
}

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Entry::Infinite => write!(f, "inf"),
            Entry::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A finite `rows x cols` section of a plane partition. The last column
/// carries the row limits and the last row the column limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
}

impl Window {
    /// Row-major entries; `entries[(i-1)*cols + (j-1)]` is cell `(i, j)`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Entry>) -> Result<Window, OracleError> {
        if entries.len() != rows * cols {
            return Err(OracleError::Shape { len: entries.len(), rows, cols });
        }
        Ok(Window { rows, cols, entries })
    }

    /// The pointwise-minimal window: `max(nu_i, mu_j)` off `lambda`.
    pub fn minimal(config: &PitConfig, rows: usize, cols: usize) -> Window {
        let entries = (1..=rows)
            .flat_map(|i| (1..=cols).map(move |j| (i, j)))
            .map(|(i, j)| {
                if config.lambda().contains(i as i64, j as i64) {
                    Entry::Infinite
                } else {
                    Entry::Finite(config.nu().part(i).max(config.mu().part(j)) as u64)
                }
            })
            .collect();
        Window { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(row, col)`, 1-based.
    pub fn get(&self, row: usize, col: usize) -> Entry {
        self.entries[(row - 1) * self.cols + (col - 1)]
    }

    /// Extends the window by repeating its last column and last row.
    pub fn enlarged(&self, rows: usize, cols: usize) -> Window {
        let entries = (1..=rows)
            .flat_map(|i| (1..=cols).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i.min(self.rows), j.min(self.cols)))
            .collect();
        Window { rows, cols, entries }
    }
}

fn minimal_rows_cols(config: &PitConfig) -> (usize, usize) {
    let lambda = config.lambda();
    let rows = (lambda.conjugate().part(1) as usize).max(config.n()) + 1;
    let cols = (lambda.part(1) as usize).max(config.m()) + 1;
    (rows, cols)
}

/// Whether cell `(i, j)` is measured against its row limit.
fn row_graded(config: &PitConfig, i: usize, j: usize) -> bool {
    i as i64 - config.n() as i64 <= j as i64 - config.m() as i64
}

/// The limit a cell is measured against in the grading.
fn subtracted(config: &PitConfig, i: usize, j: usize) -> i64 {
    if row_graded(config, i, j) {
        config.nu().part(i)
    } else {
        config.mu().part(j)
    }
}

/// The grading of a window, after checking monotonicity, the infinite cells,
/// the pit and the pinned boundary.
pub fn weight(config: &PitConfig, window: &Window) -> Result<i64, OracleError> {
    let (min_rows, min_cols) = minimal_rows_cols(config);
    let (rows, cols) = (window.rows, window.cols);
    if rows < min_rows || cols < min_cols {
        return Err(OracleError::WindowTooSmall { rows, cols, min_rows, min_cols });
    }
    let pinned = |row: usize, col: usize, expected: Entry| -> Result<(), OracleError> {
        let found = window.get(row, col);
        if found == expected {
            Ok(())
        } else {
            Err(OracleError::Pinned { row, col, found: found.to_string(), expected: expected.to_string() })
        }
    };
    for i in 1..=rows {
        for j in 1..=cols {
            let in_lambda = config.lambda().contains(i as i64, j as i64);
            match (window.get(i, j), in_lambda) {
                (Entry::Infinite, false) => {
                    return Err(OracleError::Pinned {
                        row: i,
                        col: j,
                        found: Entry::Infinite.to_string(),
                        expected: "a finite value".to_string(),
                    })
                }
                (Entry::Finite(_), true) => pinned(i, j, Entry::Infinite)?,
                _ => {}
            }
            if j < cols && !window.get(i, j).at_least(window.get(i, j + 1)) {
                return Err(OracleError::NotMonotone { row: i, col: j, next_row: i, next_col: j + 1 });
            }
            if i < rows && !window.get(i, j).at_least(window.get(i + 1, j)) {
                return Err(OracleError::NotMonotone { row: i, col: j, next_row: i + 1, next_col: j });
            }
        }
    }
    for i in 1..=rows {
        pinned(i, cols, Entry::Finite(config.nu().part(i) as u64))?;
    }
    for j in 1..=cols {
        pinned(rows, j, Entry::Finite(config.mu().part(j) as u64))?;
    }
    pinned(config.n() + 1, config.m() + 1, Entry::Finite(0))?;
    let mut total = 0i64;
    for i in 1..=rows {
        for j in 1..=cols {
            if let Entry::Finite(v) = window.get(i, j) {
                total += v as i64 - subtracted(config, i, j);
            }
        }
    }
    Ok(total)
}

/// Weight of the pointwise-minimal configuration, i.e. the lowest exponent of `chi`.
///
/// It is positive whenever some row-graded cell is forced above its row limit
/// by a larger column limit (or the reverse).
pub fn minimal_weight(config: &PitConfig) -> i64 {
    let (rows, cols) = minimal_rows_cols(config);
    let window = Window::minimal(config, rows, cols);
    weight(config, &window).expect("the minimal window is valid")
}

/// Coefficients of `chi` through `q^order` by depth-first enumeration over a
/// window of `H = max(lambda_1 + n, m) + order + 2` columns and
/// `H' = max(lambda'_1 + m, n) + order + 2` rows.
///
/// A configuration of weight `k` can reach `k` cells past the corner, so the
/// cells `order + 1` away from the corner are the last that can deviate; one
/// more row and column keeps the edge check meaningful.
pub fn enumerate_chi(config: &PitConfig, order: i64) -> Result<QSeries, OracleError> {
    let lambda = config.lambda();
    let extra = order.max(0) as usize + 2;
    let cols = (lambda.part(1) as usize + config.n()).max(config.m()) + extra;
    let rows = (lambda.conjugate().part(1) as usize + config.m()).max(config.n()) + extra;
    enumerate_chi_in_window(config, order, rows, cols)
}

struct Search<'a> {
    grid: Vec<i64>,
    stride: usize,
    cells: &'a [(usize, usize)],
    minimal: &'a [i64],
    edge: &'a [bool],
    edge_hits: Vec<usize>,
}

impl Search<'_> {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.stride + j
    }

    fn floor(&self, k: usize) -> i64 {
        let (i, j) = self.cells[k];
        self.grid[self.idx(i + 1, j)].max(self.grid[self.idx(i, j + 1)])
    }

    /// Counts completions of cells `k..` with total deviation `<= budget`,
    /// indexed by the deviation already used.
    fn run(&mut self, k: usize, used: usize, budget: usize, counts: &mut [u64]) -> Result<(), OracleError> {
        if k == self.cells.len() {
            if let Some(&hit) = self.edge_hits.first() {
                let (row, col) = self.cells[hit];
                return Err(OracleError::EdgeDeviation { row, col });
            }
            counts[used] += 1;
            return Ok(());
        }
        let (i, j) = self.cells[k];
        let base = self.minimal[k];
        let lo = self.floor(k);
        let spare = (budget - used) as i64;
        if lo - base > spare {
            return Ok(());
        }
        let at = self.idx(i, j);
        for value in lo..=base + spare {
            let hit = value > base && self.edge[k];
            if hit {
                self.edge_hits.push(k);
            }
            self.grid[at] = value;
            self.run(k + 1, used + (value - base) as usize, budget, counts)?;
            if hit {
                self.edge_hits.pop();
            }
        }
        self.grid[at] = base;
        Ok(())
    }
}

/// [`enumerate_chi`] over an explicit window of `rows x cols` cells whose
/// last row and column are pinned to the limits.
pub fn enumerate_chi_in_window(config: &PitConfig, order: i64, rows: usize, cols: usize) -> Result<QSeries, OracleError> {
    let (min_rows, min_cols) = minimal_rows_cols(config);
    if rows < min_rows || cols < min_cols {
        return Err(OracleError::WindowTooSmall { rows, cols, min_rows, min_cols });
    }
    let base_weight = minimal_weight(config);
    if order < base_weight {
        return Ok(QSeries::zero_to(order));
    }
    let budget = (order - base_weight) as usize;
    let (n, m) = (config.n(), config.m());
    let stride = cols + 2;
    let mut grid = vec![0i64; (rows + 2) * stride];
    for i in 1..=rows {
        for j in 1..=cols {
            grid[i * stride + j] = config.nu().part(i).max(config.mu().part(j));
        }
    }
    let mut cells = Vec::new();
    for i in (1..rows).rev() {
        for j in (1..cols).rev() {
            let free = (i <= n || j <= m) && !config.lambda().contains(i as i64, j as i64);
            if free {
                cells.push((i, j));
            }
        }
    }
    let minimal: Vec<i64> = cells.iter().map(|&(i, j)| grid[i * stride + j]).collect();
    let edge: Vec<bool> = cells.iter().map(|&(i, j)| (j == cols - 1 && i <= n) || (i == rows - 1 && j <= m)).collect();

    let split = cells.len().min(3);
    let mut prefixes: Vec<(Vec<i64>, usize)> = vec![(Vec::new(), 0)];
    for k in 0..split {
        let mut next = Vec::new();
        for (values, used) in prefixes {
            let mut search = Search { grid: grid.clone(), stride, cells: &cells, minimal: &minimal, edge: &edge, edge_hits: Vec::new() };
            for (kk, &v) in values.iter().enumerate() {
                let (i, j) = cells[kk];
                let at = search.idx(i, j);
                search.grid[at] = v;
            }
            let lo = search.floor(k);
            let base = minimal[k];
            for value in lo..=base + (budget - used) as i64 {
                let mut extended = values.clone();
                extended.push(value);
                next.push((extended, used + (value - base) as usize));
            }
        }
        prefixes = next;
    }

    let partials: Vec<Result<Vec<u64>, OracleError>> = prefixes
        .par_iter()
        .map(|(values, used)| {
            let mut search = Search { grid: grid.clone(), stride, cells: &cells, minimal: &minimal, edge: &edge, edge_hits: Vec::new() };
            for (k, &v) in values.iter().enumerate() {
                let (i, j) = cells[k];
                let at = search.idx(i, j);
                search.grid[at] = v;
                if v > minimal[k] && edge[k] {
                    search.edge_hits.push(k);
                }
            }
            let mut counts = vec![0u64; budget + 1];
            search.run(split, *used, budget, &mut counts)?;
            Ok(counts)
        })
        .collect();
    let mut totals = vec![0u64; budget + 1];
    for partial in partials {
        for (t, c) in totals.iter_mut().zip(partial?) {
            *t += c;
        }
    }
    Ok(QSeries::from_coeffs(base_weight, totals.into_iter().map(BigInt::from).collect(), order))
}

/// Counts of partitions with parts at most `max_part`, by size, through `limit`.
fn bounded_partition_counts(max_part: i64, limit: usize) -> Vec<u64> {
    fn rec(remaining: usize, cap: i64, size: usize, counts: &mut [u64]) {
        counts[size] += 1;
        for part in 1..=cap.min(remaining as i64) {
            rec(remaining - part as usize, part, size + part as usize, counts);
        }
    }
    let mut counts = vec![0u64; limit + 1];
    rec(limit, max_part, 0, &mut counts);
    counts
}

/// Generating function of V-partitions with arm limits `nu1` and `mu1`
/// through `q^order`: a stem `a_0 >= max(nu1, mu1)` and arms
/// `a_0 >= a_1 >= ... -> nu1`, `a_0 >= b_1 >= ... -> mu1`, of weight
/// `sum_{i>=0} (a_i - nu1) + sum_{j>=1} (b_j - mu1)`.
pub fn enumerate_v_partitions(nu1: i64, mu1: i64, order: i64) -> QSeries {
    if order < 0 {
        return QSeries::zero_to(order);
    }
    let limit = order as usize;
    let mut totals = vec![0u64; limit + 1];
    let mut stem = nu1.max(mu1);
    while stem - nu1 <= order {
        let stem_weight = (stem - nu1) as usize;
        let room = limit - stem_weight;
        let left = bounded_partition_counts(stem - nu1, room);
        let right = bounded_partition_counts(stem - mu1, room);
        for (a, ca) in left.iter().enumerate() {
            for (b, cb) in right.iter().enumerate().take(room + 1 - a) {
                totals[stem_weight + a + b] += ca * cb;
            }
        }
        stem += 1;
    }
    QSeries::from_coeffs(0, totals.into_iter().map(BigInt::from).collect(), order)
}
