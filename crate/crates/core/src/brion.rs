//! Lattice points of the finitized pit polyhedron and their Brion vertex sums.
//!
//! The polyhedron lives on the cells `(i, j)` of the `Hp x H` rectangle
//! outside `lambda`: entries weakly decrease along rows and columns, the last
//! column is pinned to `nu`, the last row to `mu`, and every cell below and to
//! the right of `(n + 1, m + 1)` is zero. Points are weighted by `q^(sum t)`,
//! so every series here has absolute exponents.
//!
//! Acyclic vertices correspond to decompositions of the free region into
//! ribbons, one per pinned end box; each ribbon is a simple cone whose
//! `q`-specialized generating function is a single signed monomial over
//! `(q)_(h-1)`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::partition::{FrobeniusData, Partition, PitConfig};
use crate::perm;
use crate::qseries::{inverse_pochhammer_product, QSeries, Sign};
use crate::ribbon::{is_ribbon_cells, ribbon_decompositions, Cell};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrionError {
    #[error("window {rows}x{cols} is too small: need more than {min_rows} rows and {min_cols} columns")]
    WindowTooSmall { rows: i64, cols: i64, min_rows: i64, min_cols: i64 },
    #[error("{which} must be strictly decreasing")]
    NotStrict { which: &'static str },
    #[error("every nu_i must exceed every mu_j")]
    NotInterlacing,
    #[error("cells do not form a ribbon")]
    NotRibbon,
    #[error("interleaving order must list nu_1..nu_n and mu_1..mu_m once each, in index order")]
    BadOrder,
}

/// Which boundary a ribbon is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Contains a pinned box `(i, H)` of the last column; numbered from the bottom-left.
    Row,
    /// Contains a pinned box `(Hp, j)` of the last row; numbered from the upper right.
    Column,
}

/// `sign * q^delta / prod (q)_k` for `k` in `denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexContribution {
    pub sign: Sign,
    pub delta: i64,
    pub denom: Vec<u64>,
}

impl VertexContribution {
    pub fn one() -> VertexContribution {
        VertexContribution { sign: Sign::Plus, delta: 0, denom: Vec::new() }
    }

    /// Product of two cone contributions.
    pub fn times(&self, other: &VertexContribution) -> VertexContribution {
        let mut denom = self.denom.clone();
        denom.extend(&other.denom);
        denom.sort_unstable();
        VertexContribution { sign: self.sign * other.sign, delta: self.delta + other.delta, denom }
    }

    pub fn to_series(&self, order: i64) -> QSeries {
        inverse_pochhammer_product(&self.denom, self.delta, order).signed(self.sign)
    }
}

fn sum_contributions(terms: &[VertexContribution], order: i64) -> QSeries {
    terms
        .par_iter()
        .map(|t| t.to_series(order))
        .reduce(|| QSeries::zero_to(order), |a, b| a + b)
}

fn nu_at(config: &PitConfig, i: i64) -> i64 {
    config.nu().part(i as usize)
}

fn mu_at(config: &PitConfig, j: i64) -> i64 {
    config.mu().part(j as usize)
}

fn check_window(config: &PitConfig, cols: i64, rows: i64) -> Result<(), BrionError> {
    let min_cols = config.lambda().part(1).max(config.m() as i64);
    let min_rows = config.lambda().conjugate().part(1).max(config.n() as i64);
    if cols <= min_cols || rows <= min_rows {
        return Err(BrionError::WindowTooSmall { rows, cols, min_rows, min_cols });
    }
    Ok(())
}

fn window_cells(config: &PitConfig, cols: i64, rows: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
    (1..=rows).flat_map(move |i| (1..=cols).map(move |j| (i, j))).filter(move |&(i, j)| !config.lambda().contains(i, j))
}

/// `sum max(nu_i, mu_j)` over the window cells outside `lambda`: the exponent
/// of the pointwise-minimal point. Truncation orders below are relative to it.
pub fn window_base(config: &PitConfig, cols: i64, rows: i64) -> i64 {
    window_cells(config, cols, rows).map(|(i, j)| nu_at(config, i).max(mu_at(config, j))).sum()
}

/// `Delta^(H,Hp)`: the asymptote subtracted from each window cell by the
/// plane-partition grading, summed.
pub fn window_grading_shift(config: &PitConfig, cols: i64, rows: i64) -> i64 {
    let (n, m) = (config.n() as i64, config.m() as i64);
    window_cells(config, cols, rows)
        .map(|(i, j)| if i - n <= j - m { nu_at(config, i) } else { mu_at(config, j) })
        .sum()
}

/// Lattice-point generating function of the finitized polyhedron, by direct
/// enumeration. Exact through `q^(window_base + order)`.
pub fn sq_direct(config: &PitConfig, cols: i64, rows: i64, order: i64) -> Result<QSeries, BrionError> {
    check_window(config, cols, rows)?;
    let (n, m) = (config.n() as i64, config.m() as i64);
    let base = window_base(config, cols, rows);
    let width = cols as usize + 2;
    let idx = |i: i64, j: i64| i as usize * width + j as usize;
    let mut grid = vec![0i64; (rows as usize + 2) * width];
    let mut free = Vec::new();
    for (i, j) in window_cells(config, cols, rows) {
        if j == cols {
            grid[idx(i, j)] = nu_at(config, i);
        } else if i == rows {
            grid[idx(i, j)] = mu_at(config, j);
        } else if i <= n || j <= m {
            free.push((i, j));
        }
    }
    free.sort_by_key(|&(i, j)| (-i, -j));
    let mut counts = vec![BigInt::zero(); order.max(-1) as usize + 1];
    if order >= 0 {
        fill(config, &free, 0, 0, order, &mut grid, &idx, &mut counts);
    }
    Ok(QSeries::from_coeffs(base, counts, base + order))
}

#[allow(clippy::too_many_arguments)]
fn fill(
    config: &PitConfig,
    free: &[(i64, i64)],
    k: usize,
    spent: i64,
    budget: i64,
    grid: &mut [i64],
    idx: &dyn Fn(i64, i64) -> usize,
    counts: &mut [BigInt],
) {
    if k == free.len() {
        counts[spent as usize] += 1;
        return;
    }
    let (i, j) = free[k];
    let floor = nu_at(config, i).max(mu_at(config, j));
    let low = grid[idx(i + 1, j)].max(grid[idx(i, j + 1)]);
    for value in low.. {
        let cost = spent + value - floor;
        if cost > budget {
            break;
        }
        grid[idx(i, j)] = value;
        fill(config, free, k + 1, cost, budget, grid, idx, counts);
    }
    grid[idx(i, j)] = 0;
}

/// Positions `s` (1-based) of the edges `e_s = -(1,...,1,0,...,0)` of a ribbon cone.
pub fn negative_edges(cells: &[Cell], orientation: Orientation) -> Result<Vec<i64>, BrionError> {
    if !is_ribbon_cells(cells) {
        return Err(BrionError::NotRibbon);
    }
    let mut boxes = cells.to_vec();
    match orientation {
        Orientation::Row => boxes.sort_by_key(|c| c.col - c.row),
        Orientation::Column => boxes.sort_by_key(|c| c.row - c.col),
    }
    Ok(boxes
        .windows(2)
        .enumerate()
        .filter(|(_, w)| match orientation {
            Orientation::Row => w[1].row == w[0].row - 1,
            Orientation::Column => w[1].col == w[0].col - 1,
        })
        .map(|(s, _)| s as i64 + 1)
        .collect())
}

/// The `q`-specialized cone of a ribbon whose entries all equal `value`:
/// `q^(value h) / prod_s (1 - q^(+-s))`, with each `1/(1 - q^-s)` rewritten
/// as `-q^s/(1 - q^s)`.
pub fn ribbon_cone_contribution(cells: &[Cell], value: i64, orientation: Orientation) -> Result<VertexContribution, BrionError> {
    let minus = negative_edges(cells, orientation)?;
    let h = cells.len() as i64;
    Ok(VertexContribution {
        sign: Sign::from_parity(minus.len() as i64),
        delta: value * h + minus.iter().sum::<i64>(),
        denom: vec![h as u64 - 1],
    })
}

fn check_strict(p: &Partition, len: usize, which: &'static str) -> Result<(), BrionError> {
    let parts: Vec<i64> = (1..=len).map(|i| p.part(i)).collect();
    if parts.windows(2).all(|w| w[0] > w[1]) {
        Ok(())
    } else {
        Err(BrionError::NotStrict { which })
    }
}

/// `Delta^{sigma,(H)} = sum (H nu_i - i lambda_i - i nu_i + i^2) - sum (lambda_i - i)(nu_sigma(i) - sigma(i))`.
fn wall_vertex_exponent(nu: &Partition, lambda: &Partition, sigma: &[usize], cols: i64) -> i64 {
    (1..=sigma.len())
        .map(|i| {
            let ii = i as i64;
            let s = sigma[i - 1] as i64 + 1;
            cols * nu.part(i) - ii * lambda.part(i) - ii * nu.part(i) + ii * ii - (lambda.part(i) - ii) * (nu.part(s as usize) - s)
        })
        .sum()
}

/// Vertex contributions of the `m = 0` polyhedron, one per permutation.
pub fn wall_vertices(n: usize, nu: &Partition, lambda: &Partition, cols: i64) -> Vec<VertexContribution> {
    perm::permutations(n)
        .into_iter()
        .map(|sigma| {
            let denom = (1..=n).map(|i| (cols - sigma[i - 1] as i64 - 1 - lambda.part(i) + i as i64 - 1) as u64).collect();
            VertexContribution { sign: perm::sign(&sigma), delta: wall_vertex_exponent(nu, lambda, &sigma, cols), denom }
        })
        .collect()
}

/// `sum_sigma (-1)^|sigma| q^(Delta^{sigma,(H)}) / prod_i (q)_(H - sigma(i) - lambda_i + i - 1)`,
/// exact through `q^(window_base + order)`.
pub fn vertex_sum_m0(n: usize, nu: &Partition, lambda: &Partition, cols: i64, order: i64) -> Result<QSeries, BrionError> {
    check_strict(nu, n, "nu")?;
    let config = PitConfig::new(n, 0, nu.clone(), Partition::empty(), lambda.clone()).map_err(|_| BrionError::NotStrict { which: "nu" })?;
    if cols <= lambda.part(1) + n as i64 - 1 {
        return Err(BrionError::WindowTooSmall { rows: n as i64 + 1, cols, min_rows: n as i64, min_cols: lambda.part(1) + n as i64 - 1 });
    }
    let target = window_base(&config, cols, n as i64 + 1) + order;
    Ok(sum_contributions(&wall_vertices(n, nu, lambda, cols), target))
}

/// Vertex contributions of the general polyhedron under `nu_1 > ... > nu_n > mu_1 > ... > mu_m`,
/// one per `(sigma, admissible tau, A)`.
pub fn interlacing_vertices(config: &PitConfig, cols: i64, rows: i64) -> Vec<VertexContribution> {
    let frob = FrobeniusData::new(config);
    let (n, m, r) = (config.n(), config.m(), frob.atypicality);
    let (ni, mi) = (n as i64, m as i64);
    let (nn, mm) = (&frob.nu_shifted, &frob.mu_shifted);
    let candidates: Vec<i64> = (n - r + 1..).map(|s| -frob.lambda_particle(s)).take_while(|&a| a < rows - ni + mi).collect();
    let mut tuples = Vec::new();
    choose_decreasing(&candidates, r, &mut Vec::new(), &mut tuples);
    let boundary: i64 = (1..=n).map(|i| nu_at(config, i as i64) * (cols + ni - mi - i as i64 + 1)).sum::<i64>()
        + (1..=m).map(|j| mu_at(config, j as i64) * (rows + mi - ni - j as i64)).sum::<i64>();
    let mut out = Vec::new();
    for a in &tuples {
        let b: Vec<i64> = frob.row_arms.iter().map(|p| p + 1).chain(a.iter().rev().map(|x| -x)).collect();
        let c: Vec<i64> = frob.col_arms.iter().copied().chain(a.iter().copied()).collect();
        let a_sign: i64 = a.iter().enumerate().map(|(i, x)| x - i as i64).sum();
        for sigma in perm::permutations(n) {
            for tau in perm::permutations(m) {
                let denom: Vec<i64> = (0..n)
                    .map(|i| cols - (sigma[i] as i64 + 1) + ni - mi - b[i])
                    .chain((0..m).map(|j| rows - (tau[j] as i64 + 1) + mi - ni - c[j] - 1))
                    .collect();
                if denom.iter().any(|&k| k < 0) {
                    continue;
                }
                let atypical: i64 = a
                    .iter()
                    .enumerate()
                    .map(|(i, x)| x * (x + 1) / 2 + x * (nn[sigma[n - 1 - i]] - mm[tau[m - r + i]]))
                    .sum();
                let rows_part: i64 = frob.row_arms.iter().enumerate().map(|(i, p)| (p + 1) * (ni - i as i64 - 1 - nn[sigma[i]])).sum();
                let cols_part: i64 = frob.col_arms.iter().enumerate().map(|(j, q)| q * (mi - j as i64 - 1 - mm[tau[j]])).sum();
                let sign = perm::sign(&sigma) * perm::sign(&tau) * Sign::from_parity(a_sign);
                out.push(VertexContribution {
                    sign,
                    delta: atypical + rows_part + cols_part + boundary,
                    denom: denom.into_iter().map(|k| k as u64).collect(),
                });
            }
        }
    }
    out
}

fn choose_decreasing(pool: &[i64], k: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if current.len() == k {
        let mut t = current.clone();
        t.sort_unstable_by(|a, b| b.cmp(a));
        out.push(t);
        return;
    }
    for (idx, &v) in pool.iter().enumerate() {
        current.push(v);
        choose_decreasing(&pool[idx + 1..], k, current, out);
        current.pop();
    }
}

fn check_interlacing(config: &PitConfig) -> Result<(), BrionError> {
    let (n, m) = (config.n(), config.m());
    check_strict(config.nu(), n, "nu")?;
    check_strict(config.mu(), m, "mu")?;
    if n > 0 && m > 0 && config.nu().part(n) <= config.mu().part(1) {
        return Err(BrionError::NotInterlacing);
    }
    Ok(())
}

/// Brion sum of the general polyhedron under interlacing, exact through
/// `q^(window_base + order)`.
pub fn vertex_sum_general(config: &PitConfig, cols: i64, rows: i64, order: i64) -> Result<QSeries, BrionError> {
    check_interlacing(config)?;
    check_window(config, cols, rows)?;
    let (n, m) = (config.n() as i64, config.m() as i64);
    if cols <= config.lambda().part(1) + n - 1 || rows <= config.lambda().conjugate().part(1) + m - 1 {
        return Err(BrionError::WindowTooSmall {
            rows,
            cols,
            min_rows: config.lambda().conjugate().part(1) + m - 1,
            min_cols: config.lambda().part(1) + n - 1,
        });
    }
    let target = window_base(config, cols, rows) + order;
    Ok(sum_contributions(&interlacing_vertices(config, cols, rows), target))
}

/// One of the asymptotes `nu_i` or `mu_j` (0-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Asymptote {
    Nu(usize),
    Mu(usize),
}

/// A strict total order on `{nu_i, mu_j}`, largest first, refining
/// `nu_1 > ... > nu_n` and `mu_1 > ... > mu_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingOrder(Vec<Asymptote>);

impl InterleavingOrder {
    pub fn new(order: Vec<Asymptote>, n: usize, m: usize) -> Result<InterleavingOrder, BrionError> {
        let nus: Vec<usize> = order.iter().filter_map(|a| if let Asymptote::Nu(i) = a { Some(*i) } else { None }).collect();
        let mus: Vec<usize> = order.iter().filter_map(|a| if let Asymptote::Mu(j) = a { Some(*j) } else { None }).collect();
        if nus != (0..n).collect::<Vec<_>>() || mus != (0..m).collect::<Vec<_>>() {
            return Err(BrionError::BadOrder);
        }
        Ok(InterleavingOrder(order))
    }

    /// `nu_1 > ... > nu_n > mu_1 > ... > mu_m`.
    pub fn nu_first(n: usize, m: usize) -> InterleavingOrder {
        InterleavingOrder((0..n).map(Asymptote::Nu).chain((0..m).map(Asymptote::Mu)).collect())
    }

    /// `mu_1 > ... > mu_m > nu_1 > ... > nu_n`.
    pub fn mu_first(n: usize, m: usize) -> InterleavingOrder {
        InterleavingOrder((0..m).map(Asymptote::Mu).chain((0..n).map(Asymptote::Nu)).collect())
    }

    fn rank(&self, a: Asymptote) -> usize {
        self.0.iter().position(|&x| x == a).expect("order lists every asymptote")
    }
}

/// Ribbon decompositions of the free region compatible with `order`, each
/// with the product of its ribbon cones.
pub fn ordered_vertices(config: &PitConfig, cols: i64, rows: i64, order: &InterleavingOrder) -> Result<Vec<VertexContribution>, BrionError> {
    check_window(config, cols, rows)?;
    let (n, m) = (config.n(), config.m());
    let mut parts = vec![cols as u32; n];
    parts.extend(std::iter::repeat_n(m as u32, rows as usize - n));
    let outer = Partition::new(parts).expect("rectangle plus strip is a partition");
    let ends: Vec<Cell> = (1..=n as i64).map(|i| Cell::new(i, cols)).chain((1..=m as i64).map(|j| Cell::new(rows, j))).collect();
    let labels: Vec<Asymptote> = (0..n).map(Asymptote::Nu).chain((0..m).map(Asymptote::Mu)).collect();
    let decompositions = ribbon_decompositions(&outer, config.lambda(), &ends).expect("lambda fits inside the window");
    let mut out = Vec::new();
    for ribbons in decompositions {
        if !compatible(&ribbons, &labels, order) {
            continue;
        }
        let mut total = VertexContribution::one();
        for (k, cells) in ribbons.iter().enumerate() {
            let (value, orientation) = match labels[k] {
                Asymptote::Nu(i) => (nu_at(config, i as i64 + 1), Orientation::Row),
                Asymptote::Mu(j) => (mu_at(config, j as i64 + 1), Orientation::Column),
            };
            total = total.times(&ribbon_cone_contribution(cells, value, orientation)?);
        }
        out.push(total);
    }
    Ok(out)
}

fn compatible(ribbons: &[Vec<Cell>], labels: &[Asymptote], order: &InterleavingOrder) -> bool {
    for (a, ra) in ribbons.iter().enumerate() {
        for (b, rb) in ribbons.iter().enumerate() {
            if a == b {
                continue;
            }
            let above = ra.iter().any(|x| rb.iter().any(|y| x.row <= y.row && x.col <= y.col));
            if above && order.rank(labels[a]) > order.rank(labels[b]) {
                return false;
            }
        }
    }
    true
}

/// Brion sum over the ribbon decompositions compatible with `order`, exact
/// through `q^(window_base + order_exp)`.
pub fn ordered_vertex_sum(config: &PitConfig, cols: i64, rows: i64, order: &InterleavingOrder, order_exp: i64) -> Result<QSeries, BrionError> {
    let target = window_base(config, cols, rows) + order_exp;
    Ok(sum_contributions(&ordered_vertices(config, cols, rows, order)?, target))
}

/// The two `n = m = 1`, `lambda = empty` Brion sums, for `nu_1 > mu_1` and for
/// `mu_1 > nu_1`, through `q^target` (absolute).
pub fn two_order_formulas(nu1: i64, mu1: i64, cols: i64, rows: i64, target: i64) -> (QSeries, QSeries) {
    let first: Vec<VertexContribution> = (0..=rows - 2)
        .map(|a| VertexContribution {
            sign: Sign::from_parity(a),
            delta: a * (a + 1) / 2 + (cols + a) * nu1 + (rows - a - 1) * mu1,
            denom: vec![(cols + a - 1) as u64, (rows - a - 2) as u64],
        })
        .collect();
    let second: Vec<VertexContribution> = (0..=cols - 2)
        .map(|b| VertexContribution {
            sign: Sign::from_parity(b),
            delta: b * (b + 1) / 2 + (cols - b - 1) * nu1 + (rows + b) * mu1,
            denom: vec![(cols - b - 2) as u64, (rows + b - 1) as u64],
        })
        .collect();
    (sum_contributions(&first, target), sum_contributions(&second, target))
}

/// Both Brion sums of an order-independence check, and whether
/// `n + 1 - Hp <= nu_i - mu_j <= H - m - 1` holds for every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComparison {
    pub first: QSeries,
    pub second: QSeries,
    pub inside_window: bool,
}

impl OrderComparison {
    pub fn agree(&self) -> bool {
        self.first == self.second
    }
}

pub fn inside_order_window(config: &PitConfig, cols: i64, rows: i64) -> bool {
    let (n, m) = (config.n() as i64, config.m() as i64);
    (1..=n).all(|i| {
        (1..=m).all(|j| {
            let d = nu_at(config, i) - mu_at(config, j);
            n + 1 - rows <= d && d <= cols - m - 1
        })
    })
}

/// Evaluates the Brion sum under two interleaving orders. For `n = m = 1`,
/// `lambda = empty` and the two extreme orders the closed sums are used.
pub fn order_independence_check(
    config: &PitConfig,
    cols: i64,
    rows: i64,
    order_exp: i64,
    first: &InterleavingOrder,
    second: &InterleavingOrder,
) -> Result<OrderComparison, BrionError> {
    check_window(config, cols, rows)?;
    let (n, m) = (config.n(), config.m());
    let inside_window = inside_order_window(config, cols, rows);
    let target = window_base(config, cols, rows) + order_exp;
    let extreme = |o: &InterleavingOrder| {
        if *o == InterleavingOrder::nu_first(1, 1) {
            Some(0)
        } else if *o == InterleavingOrder::mu_first(1, 1) {
            Some(1)
        } else {
            None
        }
    };
    if n == 1 && m == 1 && config.lambda().is_empty() {
        if let (Some(a), Some(b)) = (extreme(first), extreme(second)) {
            let (s, s_prime) = two_order_formulas(nu_at(config, 1), mu_at(config, 1), cols, rows, target);
            let pick = |k| if k == 0 { s.clone() } else { s_prime.clone() };
            return Ok(OrderComparison { first: pick(a), second: pick(b), inside_window });
        }
    }
    Ok(OrderComparison {
        first: ordered_vertex_sum(config, cols, rows, first, order_exp)?,
        second: ordered_vertex_sum(config, cols, rows, second, order_exp)?,
        inside_window,
    })
}

/// Kind of the internal edge cutting a two-ended ribbon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Shared side is horizontal; the split occurs under `nu > mu`.
    Horizontal,
    /// Shared side is vertical; the split occurs under `mu > nu`.
    Vertical,
}

/// All ways to cut a ribbon running from a last-row box to a last-column box
/// into a column ribbon (valued `mu`) and a row ribbon (valued `nu`).
pub fn edge_splits(cells: &[Cell], nu: i64, mu: i64) -> Result<Vec<(EdgeKind, VertexContribution)>, BrionError> {
    if !is_ribbon_cells(cells) {
        return Err(BrionError::NotRibbon);
    }
    let mut boxes = cells.to_vec();
    boxes.sort_by_key(|c| c.col - c.row);
    let mut out = Vec::new();
    for k in 1..boxes.len() {
        let kind = if boxes[k].row == boxes[k - 1].row - 1 { EdgeKind::Horizontal } else { EdgeKind::Vertical };
        let column = ribbon_cone_contribution(&boxes[..k], mu, Orientation::Column)?;
        let row = ribbon_cone_contribution(&boxes[k..], nu, Orientation::Row)?;
        out.push((kind, column.times(&row)));
    }
    Ok(out)
}

/// `(sum over horizontal cuts, sum over vertical cuts)` through `q^target`.
pub fn split_sums(cells: &[Cell], nu: i64, mu: i64, target: i64) -> Result<(QSeries, QSeries), BrionError> {
    let mut horizontal = QSeries::zero_to(target);
    let mut vertical = QSeries::zero_to(target);
    for (kind, c) in edge_splits(cells, nu, mu)? {
        match kind {
            EdgeKind::Horizontal => horizontal = horizontal + c.to_series(target),
            EdgeKind::Vertical => vertical = vertical + c.to_series(target),
        }
    }
    Ok((horizontal, vertical))
}

/// `prod_{i=1}^{count} (1 - q^(start + i))` as an exact Laurent polynomial.
pub fn shifted_product(start: i64, count: i64) -> QSeries {
    (1..=count)
        .map(|i| QSeries::one() - QSeries::exact_monomial(Sign::Plus, start + i))
        .product()
}

/// Cells of a skew shape listed by rows, for ribbons given as `outer / inner`.
pub fn skew_ribbon(outer: &Partition, inner: &Partition) -> Result<Vec<Cell>, BrionError> {
    let cells = crate::ribbon::skew_cells(outer, inner).map_err(|_| BrionError::NotRibbon)?;
    if is_ribbon_cells(&cells) {
        Ok(cells)
    } else {
        Err(BrionError::NotRibbon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{chi_det, chi_wall};
    use crate::qseries::inverse_qpochhammer;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn cfg(n: usize, m: usize, nu: &str, mu: &str, lambda: &str) -> PitConfig {
        PitConfig::new(n, m, p(nu), p(mu), p(lambda)).unwrap()
    }

    #[test]
    fn single_free_cell_is_geometric() {
        let c = cfg(1, 0, "", "", "");
        let s = sq_direct(&c, 2, 2, 10).unwrap();
        assert_eq!(s, inverse_qpochhammer(1, 10));
        assert_eq!(vertex_sum_m0(1, &p(""), &p(""), 2, 10).unwrap(), s);
    }

    #[test]
    fn single_box_cone() {
        let c = ribbon_cone_contribution(&[Cell::new(2, 3)], 5, Orientation::Row).unwrap();
        assert_eq!(c, VertexContribution { sign: Sign::Plus, delta: 5, denom: vec![0] });
    }

    #[test]
    fn seven_box_ribbon_edge_signs() {
        // rows 1..4 of (4,2,1,1)/(1), read from the bottom-left box
        let cells = skew_ribbon(&p("4,2,1,1"), &p("1")).unwrap();
        assert_eq!(cells.len(), 7);
        assert_eq!(negative_edges(&cells, Orientation::Row).unwrap(), vec![1, 2, 4]);
        let shape = skew_ribbon(&p("4,3,3,1"), &p("2,2")).unwrap();
        assert_eq!(shape.len(), 7);
        assert_eq!(negative_edges(&shape, Orientation::Row).unwrap(), vec![1, 4, 5]);
    }

    #[test]
    fn negative_edges_are_overtakings() {
        for (n, lam, cols) in [(3usize, "2,1", 6i64), (4, "2,2", 7), (3, "", 5)] {
            let lambda = p(lam);
            let outer = Partition::new(vec![cols as u32; n]).unwrap();
            let ends: Vec<Cell> = (1..=n as i64).map(|i| Cell::new(i, cols)).collect();
            for ribbons in ribbon_decompositions(&outer, &lambda, &ends).unwrap() {
                let start_of = |cells: &Vec<Cell>| {
                    let c = cells.iter().map(|c| c.col - c.row).min().unwrap();
                    (1..=n).find(|&i| lambda.part(i) - i as i64 + 1 == c).unwrap()
                };
                let sigma: Vec<usize> = {
                    let mut s = vec![0; n];
                    for (k, cells) in ribbons.iter().enumerate() {
                        s[start_of(cells) - 1] = k;
                    }
                    s
                };
                for cells in &ribbons {
                    let i = start_of(cells);
                    let mut expected: Vec<i64> = (1..i)
                        .filter(|&j| sigma[j - 1] > sigma[i - 1])
                        .map(|j| lambda.part(j) - j as i64 - lambda.part(i) + i as i64)
                        .collect();
                    expected.sort_unstable();
                    assert_eq!(negative_edges(cells, Orientation::Row).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn wall_vertex_sums_match_direct_enumeration() {
        for (n, nu, lam, cols) in [(1usize, "2", "", 3i64), (2, "3,1", "1", 5), (3, "4,2,1", "", 5), (2, "2,0", "", 4)] {
            let c = PitConfig::new(n, 0, p(nu), Partition::empty(), p(lam)).unwrap();
            let direct = sq_direct(&c, cols, n as i64 + 1, 8).unwrap();
            assert_eq!(vertex_sum_m0(n, &p(nu), &p(lam), cols, 8).unwrap(), direct, "n={n} nu={nu}");
            let geometric = ordered_vertex_sum(&c, cols, n as i64 + 1, &InterleavingOrder::nu_first(n, 0), 8).unwrap();
            assert_eq!(geometric, direct);
            let count: usize = (1..=n).product();
            assert_eq!(ordered_vertices(&c, cols, n as i64 + 1, &InterleavingOrder::nu_first(n, 0)).unwrap().len(), count);
        }
    }

    #[test]
    fn wall_limit_is_the_wall_formula() {
        let (nu, lam) = (p("3,1"), p("1"));
        let c = PitConfig::new(2, 0, nu.clone(), Partition::empty(), lam.clone()).unwrap();
        let cols = 16;
        let shift = window_grading_shift(&c, cols, 3);
        assert_eq!(shift, 3 * 15 + 16);
        let s = vertex_sum_m0(2, &nu, &lam, cols, 8).unwrap();
        let base = window_base(&c, cols, 3);
        assert_eq!(s.shift(-shift).truncate(base - shift + 8), chi_wall(2, &nu, &lam, base - shift + 8).unwrap());
    }

    #[test]
    fn interlacing_vertex_sums_match_direct_enumeration() {
        for (n, m, nu, mu, lam, cols, rows) in [
            (1usize, 1usize, "3", "", "", 6i64, 6i64),
            (1, 1, "2", "1", "", 4, 5),
            (1, 1, "3", "1", "1", 4, 4),
            (2, 1, "4,2", "1", "1", 5, 4),
            (1, 2, "3", "2", "", 4, 4),
            (2, 2, "5,3", "2", "1", 4, 4),
        ] {
            let c = cfg(n, m, nu, mu, lam);
            let direct = sq_direct(&c, cols, rows, 6).unwrap();
            assert_eq!(vertex_sum_general(&c, cols, rows, 6).unwrap(), direct, "{c}");
            let geometric = ordered_vertex_sum(&c, cols, rows, &InterleavingOrder::nu_first(n, m), 6).unwrap();
            assert_eq!(geometric, direct, "{c}");
        }
    }

    #[test]
    fn interlacing_limit_is_the_determinant() {
        let c = cfg(3, 2, "6,5,4", "2", "2,1,1");
        let (cols, rows) = (12, 11);
        let order = 5;
        let shift = window_grading_shift(&c, cols, rows);
        let base = window_base(&c, cols, rows);
        let s = vertex_sum_general(&c, cols, rows, order).unwrap();
        let rel = base - shift + order;
        assert_eq!(s.shift(-shift).truncate(rel), chi_det(&c, rel));
    }

    #[test]
    fn the_two_order_sums_agree_inside_their_window() {
        for (nu, mu) in [(1, 0), (3, 0), (0, 2), (2, 2)] {
            let c = cfg(1, 1, &nu.to_string(), &mu.to_string(), "");
            let (cols, rows) = (4, 4);
            let cmp = order_independence_check(&c, cols, rows, 8, &InterleavingOrder::nu_first(1, 1), &InterleavingOrder::mu_first(1, 1)).unwrap();
            assert_eq!(cmp.inside_window, (2 - rows..=cols - 2).contains(&(nu - mu)));
            if cmp.inside_window {
                assert!(cmp.agree(), "nu={nu} mu={mu}");
            }
            let target = window_base(&c, cols, rows) + 8;
            let geometric_first = ordered_vertex_sum(&c, cols, rows, &InterleavingOrder::nu_first(1, 1), 8).unwrap();
            let geometric_second = ordered_vertex_sum(&c, cols, rows, &InterleavingOrder::mu_first(1, 1), 8).unwrap();
            assert_eq!((geometric_first, geometric_second), two_order_formulas(nu, mu, cols, rows, target));
        }
    }

    #[test]
    fn outside_the_window_the_orders_disagree() {
        let c = cfg(1, 1, "5", "", "");
        let cmp = order_independence_check(&c, 4, 4, 8, &InterleavingOrder::nu_first(1, 1), &InterleavingOrder::mu_first(1, 1)).unwrap();
        assert!(!cmp.inside_window);
        assert!(!cmp.agree());
    }

    #[test]
    fn seven_box_split_identity() {
        let cells = skew_ribbon(&p("4,2,1,1"), &p("1")).unwrap();
        let splits = edge_splits(&cells, 0, 0).unwrap();
        let kinds: Vec<EdgeKind> = splits.iter().map(|s| s.0).collect();
        use EdgeKind::*;
        assert_eq!(kinds, vec![Horizontal, Horizontal, Vertical, Horizontal, Vertical, Vertical]);
        for nu in 0..=6i64 {
            for mu in 0..=6i64 {
                let target = 7 * nu.max(mu) + 12;
                let (h, v) = split_sums(&cells, nu, mu, target).unwrap();
                let slack = (nu - mu + 2).max(0) * 5;
                let closed = (shifted_product(mu - nu - 3, 5) * inverse_pochhammer_product(&[5], 6 * nu + mu + 4, target + slack)).truncate(target);
                assert_eq!(&h - &v, closed, "nu={nu} mu={mu}");
                if (-2..=2).contains(&(nu - mu)) {
                    assert!(closed.is_zero());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let c = cfg(1, 1, "3", "", "");
        assert!(matches!(sq_direct(&c, 1, 4, 3), Err(BrionError::WindowTooSmall { .. })));
        assert!(matches!(vertex_sum_general(&cfg(2, 0, "1,1", "", ""), 4, 3, 3), Err(BrionError::NotStrict { .. })));
        assert!(matches!(vertex_sum_general(&cfg(1, 1, "1", "2", ""), 4, 4, 3), Err(BrionError::NotInterlacing)));
        assert!(matches!(InterleavingOrder::new(vec![Asymptote::Nu(1), Asymptote::Nu(0)], 2, 0), Err(BrionError::BadOrder)));
        assert!(ribbon_cone_contribution(&[Cell::new(1, 1), Cell::new(2, 2)], 0, Orientation::Row).is_err());
    }
}
