//! Lattice paths on the strip graph and the Lindström-Gessel-Viennot check.
//!
//! Vertices sit at `(a + 1/2, y)` for columns `xmin <= a < xmax` and heights
//! `0 <= y <= ymax`. Horizontal edges go right; the edge entering column `a`
//! crosses the line `x = a` and at height `y` weighs `q^y`. Vertical edges go
//! up in columns `a < 0` and down in columns `a >= 0`.
//!
//! Infinitely remote terminals are realized by truncation plus
//! renormalization: a path from `(-inf, b)` pays `q^(-b)` for every crossing
//! `x = i < 0`, and a path to `(+inf, b)` pays `q^(-b)` for every crossing
//! `x = i >= 0`. Crossings that the path never makes are charged as a constant
//! offset, so straight paths at the terminal height weigh `q^0`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::formulas::r_series;
use crate::partition::{FrobeniusData, PitConfig};
use crate::perm;
use crate::qseries::{det, inverse_qpochhammer_infinite, qbinom, QSeries, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LgvError {
    #[error("terminal {0:?} lies outside the strip")]
    Outside(Terminal),
    #[error("top terminal at column {col} cannot be a {role}")]
    TopDirection { col: i64, role: &'static str },
    #[error("strip is too {side} to hold every path of weight <= {order}")]
    StripTooSmall { side: &'static str, order: i64 },
    #[error("no closed form for {0:?} -> {1:?}")]
    Unsupported(Terminal, Terminal),
    #[error("expected {expected} sources and targets, got {sources} and {targets}")]
    Arity { expected: usize, sources: usize, targets: usize },
}

/// The truncated strip `xmin <= a < xmax`, `0 <= y <= ymax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StripGraph {
    pub xmin: i64,
    pub xmax: i64,
    pub ymax: i64,
}

/// A path endpoint. Columns are the integer part `a` of the abscissa `a + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Terminal {
    /// The vertex `(col + 1/2, height)`.
    Finite { col: i64, height: i64 },
    /// `(-inf, height)`; sources only.
    LeftInfinity(i64),
    /// `(+inf, height)`; targets only.
    RightInfinity(i64),
    /// `(col + 1/2, +inf)`: a source for `col >= 0`, a target for `col < 0`.
    Top(i64),
}

type Vertex = (i64, i64);

impl StripGraph {
    /// A strip wide and tall enough for every path of weight `<= order`
    /// between the given terminals, also when that path belongs to a family
    /// whose other members have negative weight.
    pub fn covering(sources: &[Terminal], targets: &[Terminal], order: i64) -> StripGraph {
        let mut min_col = -1;
        let mut max_col = 0;
        let mut top = 0;
        let mut low_offset = 0;
        for t in sources.iter().chain(targets) {
            match *t {
                Terminal::Finite { col, height } => {
                    min_col = min_col.min(col);
                    max_col = max_col.max(col);
                    top = top.max(height);
                }
                Terminal::LeftInfinity(h) | Terminal::RightInfinity(h) => {
                    top = top.max(h);
                }
                Terminal::Top(col) => {
                    min_col = min_col.min(col);
                    max_col = max_col.max(col);
                }
            }
        }
        for s in sources {
            for t in targets {
                low_offset += offset(s, t).min(0);
            }
        }
        let budget = (order - low_offset).max(0);
        StripGraph { xmin: min_col - budget - 2, xmax: max_col + budget + 3, ymax: top + budget + 2 }
    }

    fn contains(&self, (a, y): Vertex) -> bool {
        a >= self.xmin && a < self.xmax && (0..=self.ymax).contains(&y)
    }
}

fn column_of(t: &Terminal) -> Option<i64> {
    match *t {
        Terminal::Finite { col, .. } | Terminal::Top(col) => Some(col),
        _ => None,
    }
}

/// Constant weight of the crossings a renormalized path never makes.
fn offset(s: &Terminal, t: &Terminal) -> i64 {
    let mut total = 0;
    if let (Terminal::LeftInfinity(b), Some(ct)) = (s, column_of(t)) {
        total -= b * (-1 - ct).max(0);
    }
    if let (Some(cs), Terminal::RightInfinity(b)) = (column_of(s), t) {
        total -= b * (cs + 1).max(0);
    }
    total
}

/// Renormalized exponent of the edge entering column `i` at height `y`.
fn edge_exponent(s: &Terminal, t: &Terminal, i: i64, y: i64) -> i64 {
    let mut e = y;
    if let Terminal::LeftInfinity(b) = s {
        if i < 0 {
            e -= b;
        }
    }
    if let Terminal::RightInfinity(b) = t {
        if i >= 0 {
            e -= b;
        }
    }
    e
}

fn source_vertex(g: &StripGraph, s: &Terminal) -> Result<Vertex, LgvError> {
    let v = match *s {
        Terminal::Finite { col, height } => (col, height),
        Terminal::LeftInfinity(b) => (g.xmin, b),
        Terminal::Top(col) if col >= 0 => (col, g.ymax),
        Terminal::Top(col) => return Err(LgvError::TopDirection { col, role: "source" }),
        Terminal::RightInfinity(_) => return Err(LgvError::Outside(*s)),
    };
    if g.contains(v) {
        Ok(v)
    } else {
        Err(LgvError::Outside(*s))
    }
}

fn target_vertex(g: &StripGraph, t: &Terminal) -> Result<Vertex, LgvError> {
    let v = match *t {
        Terminal::Finite { col, height } => (col, height),
        Terminal::RightInfinity(b) => (g.xmax - 1, b),
        Terminal::Top(col) if col < 0 => (col, g.ymax),
        Terminal::Top(col) => return Err(LgvError::TopDirection { col, role: "target" }),
        Terminal::LeftInfinity(_) => return Err(LgvError::Outside(*t)),
    };
    if g.contains(v) {
        Ok(v)
    } else {
        Err(LgvError::Outside(*t))
    }
}

/// Checks that no path of weight `<= order` leaves the strip.
fn check_coverage(g: &StripGraph, s: &Terminal, t: &Terminal, order: i64) -> Result<(), LgvError> {
    let budget = order - offset(s, t);
    let base = [s, t]
        .iter()
        .filter_map(|x| match **x {
            Terminal::Finite { height, .. } | Terminal::LeftInfinity(height) | Terminal::RightInfinity(height) => Some(height),
            Terminal::Top(_) => None,
        })
        .max()
        .unwrap_or(0);
    if g.ymax + 1 - base <= budget {
        return Err(LgvError::StripTooSmall { side: "short", order });
    }
    if matches!(s, Terminal::LeftInfinity(_)) {
        let right_end = column_of(t).unwrap_or(0).min(-1);
        if g.xmin > right_end - budget - 1 {
            return Err(LgvError::StripTooSmall { side: "narrow on the left", order });
        }
    }
    if matches!(t, Terminal::RightInfinity(_)) {
        let left_end = column_of(s).map_or(0, |c| (c + 1).max(0));
        if g.xmax - left_end < budget + 1 {
            return Err(LgvError::StripTooSmall { side: "narrow on the right", order });
        }
    }
    Ok(())
}

/// Generating function `P(s -> t)` of renormalized path weights through `q^order`.
pub fn path_gf(g: &StripGraph, s: &Terminal, t: &Terminal, order: i64) -> Result<QSeries, LgvError> {
    let start = source_vertex(g, s)?;
    let end = target_vertex(g, t)?;
    check_coverage(g, s, t, order)?;
    let shift = offset(s, t);
    let budget = order - shift;
    if budget < 0 || end.0 < start.0 {
        return Ok(QSeries::zero_to(order));
    }
    let len = budget as usize + 1;
    let height = g.ymax as usize + 1;
    let mut column: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); len]; height];
    for a in start.0..=end.0 {
        if a > start.0 {
            let mut next = vec![vec![BigInt::zero(); len]; height];
            for y in 0..height {
                let e = edge_exponent(s, t, a, y as i64);
                if e < 0 || e as usize >= len {
                    continue;
                }
                let e = e as usize;
                for k in 0..len - e {
                    if !column[y][k].is_zero() {
                        next[y][k + e] += &column[y][k];
                    }
                }
            }
            column = next;
        }
        if a == start.0 {
            column[start.1 as usize][0] += 1;
        }
        if a < 0 {
            for y in 1..height {
                let (lower, upper) = column.split_at_mut(y);
                for (u, l) in upper[0].iter_mut().zip(&lower[y - 1]) {
                    *u += l;
                }
            }
        } else {
            for y in (0..height - 1).rev() {
                let (lower, upper) = column.split_at_mut(y + 1);
                for (l, u) in lower[y].iter_mut().zip(&upper[0]) {
                    *l += u;
                }
            }
        }
    }
    let values = std::mem::take(&mut column[end.1 as usize]);
    Ok(QSeries::from_coeffs(shift, values, order))
}

/// Closed forms for the terminal pairs of the strip graph.
pub fn closed_form(s: &Terminal, t: &Terminal, order: i64) -> Result<QSeries, LgvError> {
    let young = |shift: i64| {
        let inv = inverse_qpochhammer_infinite(1, order - shift.min(0));
        inv.shift(shift).truncate(order)
    };
    match (*s, *t) {
        (Terminal::LeftInfinity(b), Terminal::Top(col)) if col < 0 => Ok(young(-(-col - 1) * b)),
        (Terminal::Top(col), Terminal::RightInfinity(b)) if col >= 0 => Ok(young(-(col + 1) * b)),
        (Terminal::LeftInfinity(b), Terminal::RightInfinity(a)) => Ok(r_series(a - b, order)),
        (Terminal::Finite { col: 0, height: b }, Terminal::Finite { col: a, height: 0 }) if a >= 0 && b >= 0 => {
            Ok(qbinom(a + b, b).truncate(order))
        }
        _ => Err(LgvError::Unsupported(*s, *t)),
    }
}

/// Sources, targets and the matching permutation for a pit configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub sources: Vec<Terminal>,
    pub targets: Vec<Terminal>,
    /// `sigma[k]` is the target index (0-based) reached from source `k`.
    pub sigma: Vec<usize>,
}

/// `s_i = (-inf, M_i)` for `i <= m`, `(P_{i-m} + 1/2, +inf)` afterwards;
/// `t_j = (+inf, N_j)` for `j <= n`, `(-Q_{j-n} - 1/2, +inf)` afterwards; and
/// the block permutation matching them in non-intersecting families.
pub fn source_target_layout(config: &PitConfig) -> Layout {
    let frob = FrobeniusData::new(config);
    let (n, m, r) = (config.n(), config.m(), frob.atypicality);
    let sources = frob
        .mu_shifted
        .iter()
        .map(|&b| Terminal::LeftInfinity(b))
        .chain(frob.row_arms.iter().map(|&p| Terminal::Top(p)))
        .collect();
    let targets = frob
        .nu_shifted
        .iter()
        .map(|&b| Terminal::RightInfinity(b))
        .chain(frob.col_arms.iter().map(|&q| Terminal::Top(-q - 1)))
        .collect();
    let sigma = (0..m + n - r)
        .map(|k| {
            if k < m - r {
                n + k
            } else if k < m {
                k + n - m
            } else {
                k - m
            }
        })
        .collect();
    Layout { sources, targets, sigma }
}

/// `(-1)^|sigma| det(P(s_i -> t_j))` with every entry on its own covering
/// strip, known through `q^order`.
pub fn signed_path_determinant(sources: &[Terminal], targets: &[Terminal], sigma: &[usize], order: i64) -> Result<QSeries, LgvError> {
    let k = sources.len();
    if targets.len() != k || sigma.len() != k {
        return Err(LgvError::Arity { expected: k, sources: k, targets: targets.len() });
    }
    let mut working = order;
    loop {
        let mut matrix = Vec::with_capacity(k);
        for s in sources {
            let mut row = Vec::with_capacity(k);
            for t in targets {
                let g = StripGraph::covering(std::slice::from_ref(s), std::slice::from_ref(t), working);
                row.push(path_gf(&g, s, t, working)?);
            }
            matrix.push(row);
        }
        let d = det(&matrix).expect("path matrix is square and within the cap");
        if d.order() >= order {
            return Ok(d.signed(perm::sign(sigma)).truncate(order));
        }
        working += order - d.order();
    }
}

/// `q^Delta (-1)^|sigma| det(P(s_i -> t_j))` over the configuration layout;
/// equals the determinant formula.
pub fn lgv_chi(config: &PitConfig, order: i64) -> Result<QSeries, LgvError> {
    let layout = source_target_layout(config);
    let delta = FrobeniusData::new(config).grading_shift;
    let d = signed_path_determinant(&layout.sources, &layout.targets, &layout.sigma, order - delta)?;
    Ok(d.shift(delta))
}

/// All paths `s -> t` of weight `<= budget`, as vertex lists with their weight.
pub fn enumerate_paths(g: &StripGraph, s: &Terminal, t: &Terminal, budget: i64) -> Result<Vec<(i64, Vec<Vertex>)>, LgvError> {
    let start = source_vertex(g, s)?;
    let end = target_vertex(g, t)?;
    check_coverage(g, s, t, budget)?;
    let shift = offset(s, t);
    let width = (g.xmax - g.xmin) as usize;
    let height = g.ymax as usize + 1;
    let idx = |(a, y): Vertex| (a - g.xmin) as usize * height + y as usize;
    const UNREACHABLE: i64 = i64::MAX / 4;
    let mut remaining = vec![UNREACHABLE; width * height];
    for a in (g.xmin..g.xmax).rev() {
        let ys: Vec<i64> = if a < 0 { (0..=g.ymax).rev().collect() } else { (0..=g.ymax).collect() };
        for y in ys {
            let v = (a, y);
            if v == end {
                remaining[idx(v)] = 0;
                continue;
            }
            let mut best = UNREACHABLE;
            let vertical = if a < 0 { y + 1 } else { y - 1 };
            if (0..=g.ymax).contains(&vertical) {
                best = best.min(remaining[idx((a, vertical))]);
            }
            if a + 1 < g.xmax {
                let e = edge_exponent(s, t, a + 1, y);
                if e >= 0 {
                    best = best.min(remaining[idx((a + 1, y))].saturating_add(e));
                }
            }
            remaining[idx(v)] = best;
        }
    }
    let mut out = Vec::new();
    let mut path = vec![start];
    walk(g, s, t, end, budget - shift, 0, &remaining, &idx, &mut path, &mut out);
    Ok(out.into_iter().map(|(w, p)| (w + shift, p)).collect())
}

#[allow(clippy::too_many_arguments)]
fn walk(
    g: &StripGraph,
    s: &Terminal,
    t: &Terminal,
    end: Vertex,
    budget: i64,
    spent: i64,
    remaining: &[i64],
    idx: &dyn Fn(Vertex) -> usize,
    path: &mut Vec<Vertex>,
    out: &mut Vec<(i64, Vec<Vertex>)>,
) {
    let here = *path.last().unwrap();
    if here == end {
        out.push((spent, path.clone()));
        return;
    }
    let (a, y) = here;
    let vertical = if a < 0 { y + 1 } else { y - 1 };
    let mut moves = Vec::with_capacity(2);
    if (0..=g.ymax).contains(&vertical) {
        moves.push(((a, vertical), 0));
    }
    if a + 1 < g.xmax {
        let e = edge_exponent(s, t, a + 1, y);
        if e >= 0 {
            moves.push(((a + 1, y), e));
        }
    }
    for (next, cost) in moves {
        if spent + cost + remaining[idx(next)] <= budget {
            path.push(next);
            walk(g, s, t, end, budget, spent + cost, remaining, idx, path, out);
            path.pop();
        }
    }
}

/// Generating function of vertex-disjoint families `s_k -> t_{sigma(k)}`
/// through `q^order`, by direct enumeration.
pub fn non_crossing_families(g: &StripGraph, sources: &[Terminal], targets: &[Terminal], sigma: &[usize], order: i64) -> Result<QSeries, LgvError> {
    let k = sources.len();
    if targets.len() != k || sigma.len() != k {
        return Err(LgvError::Arity { expected: k, sources: k, targets: targets.len() });
    }
    let floors: Vec<i64> = (0..k).map(|i| offset(&sources[i], &targets[sigma[i]])).collect();
    let floor_total: i64 = floors.iter().sum();
    let mut per_pair = Vec::with_capacity(k);
    for i in 0..k {
        let own_budget = order - (floor_total - floors[i]);
        let mut paths = enumerate_paths(g, &sources[i], &targets[sigma[i]], own_budget)?;
        paths.sort_by_key(|(w, _)| *w);
        per_pair.push(paths);
    }
    let min_weights: Vec<i64> = per_pair.iter().map(|p| p.first().map_or(i64::MAX / 4, |x| x.0)).collect();
    let mut suffix = vec![0i64; k + 1];
    for i in (0..k).rev() {
        suffix[i] = suffix[i + 1].saturating_add(min_weights[i]);
    }
    let low = suffix[0].min(0);
    let mut counts = vec![BigInt::zero(); (order - low + 1).max(0) as usize];
    let mut used: HashSet<Vertex> = HashSet::new();
    combine(&per_pair, 0, 0, order, low, &suffix, &mut used, &mut counts);
    Ok(QSeries::from_coeffs(low, counts, order))
}

#[allow(clippy::too_many_arguments)]
fn combine(
    per_pair: &[Vec<(i64, Vec<Vertex>)>],
    i: usize,
    spent: i64,
    order: i64,
    low: i64,
    suffix: &[i64],
    used: &mut HashSet<Vertex>,
    counts: &mut [BigInt],
) {
    if i == per_pair.len() {
        counts[(spent - low) as usize] += 1;
        return;
    }
    for (w, path) in &per_pair[i] {
        if spent + w + suffix[i + 1] > order {
            break;
        }
        if path.iter().any(|v| used.contains(v)) {
            continue;
        }
        used.extend(path.iter().copied());
        combine(per_pair, i + 1, spent + w, order, low, suffix, used, counts);
        for v in path {
            used.remove(v);
        }
    }
}

/// Both sides of the Lindström-Gessel-Viennot identity for the permutation
/// `sigma`: the enumerated non-crossing families and `(-1)^|sigma| det P`.
pub fn lgv_check(g: &StripGraph, sources: &[Terminal], targets: &[Terminal], sigma: &[usize], order: i64) -> Result<(QSeries, QSeries), LgvError> {
    let lhs = non_crossing_families(g, sources, targets, sigma, order)?;
    let rhs = signed_path_determinant(sources, targets, sigma, order)?;
    Ok((lhs, rhs))
}

/// Permutations admitting at least one non-crossing family of weight `<= order`.
pub fn contributing_permutations(g: &StripGraph, sources: &[Terminal], targets: &[Terminal], order: i64) -> Result<Vec<Vec<usize>>, LgvError> {
    let mut out = Vec::new();
    for pi in perm::permutations(sources.len()) {
        if !non_crossing_families(g, sources, targets, &pi, order)?.is_zero() {
            out.push(pi);
        }
    }
    Ok(out)
}

/// Sign of a layout permutation; kept next to the layout for the inversion count check.
pub fn layout_sign(layout: &Layout) -> Sign {
    perm::sign(&layout.sigma)
}
