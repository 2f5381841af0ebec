//! Ribbons (border strips) and decompositions of skew shapes into ribbons.
//!
//! A skew shape `outer - inner` is a ribbon when it is edge-connected and
//! contains no 2x2 block; equivalently, the particle sets `{outer_i - i}` and
//! `{inner_i - i}` differ by a single particle jump.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("inner shape ({inner}) is not contained in outer shape ({outer})")]
    NotContained { outer: Partition, inner: Partition },
}

/// A cell `(row, col)`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
}

impl Cell {
    pub fn new(row: i64, col: i64) -> Cell {
        Cell { row, col }
    }
}

/// Cells of `outer - inner` in reading order.
pub fn skew_cells(outer: &Partition, inner: &Partition) -> Result<Vec<Cell>, RibbonError> {
    if !inner.is_subset_of(outer) {
        return Err(RibbonError::NotContained { outer: outer.clone(), inner: inner.clone() });
    }
    Ok((1..=outer.len())
        .flat_map(|i| (inner.part(i) + 1..=outer.part(i)).map(move |j| Cell::new(i as i64, j)))
        .collect())
}

/// Shape test: nonempty, edge-connected and free of 2x2 blocks.
pub fn is_ribbon(outer: &Partition, inner: &Partition) -> Result<bool, RibbonError> {
    let cells = skew_cells(outer, inner)?;
    Ok(is_ribbon_cells(&cells))
}

pub fn is_ribbon_cells(cells: &[Cell]) -> bool {
    if cells.is_empty() {
        return false;
    }
    let set: BTreeSet<Cell> = cells.iter().copied().collect();
    let has_block = set.iter().any(|c| {
        [Cell::new(c.row + 1, c.col), Cell::new(c.row, c.col + 1), Cell::new(c.row + 1, c.col + 1)]
            .iter()
            .all(|d| set.contains(d))
    });
    if has_block {
        return false;
    }
    let mut seen = BTreeSet::from([cells[0]]);
    let mut stack = vec![cells[0]];
    while let Some(c) = stack.pop() {
        for d in [(0, 1), (0, -1), (1, 0), (-1, 0)] {
            let next = Cell::new(c.row + d.0, c.col + d.1);
            if set.contains(&next) && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.len() == set.len()
}

fn particle_set(p: &Partition, rows: usize) -> BTreeSet<i64> {
    (1..=rows).map(|i| p.part(i) - i as i64).collect()
}

/// The jump `(from, to)` of the single particle that turns `inner` into
/// `outer`, if the two particle sets differ by exactly one particle.
pub fn particle_jump(outer: &Partition, inner: &Partition) -> Option<(i64, i64)> {
    let rows = outer.len().max(inner.len()) + 1;
    let a = particle_set(outer, rows);
    let b = particle_set(inner, rows);
    let gained: Vec<i64> = a.difference(&b).copied().collect();
    let lost: Vec<i64> = b.difference(&a).copied().collect();
    match (lost.as_slice(), gained.as_slice()) {
        ([from], [to]) if to > from => Some((*from, *to)),
        _ => None,
    }
}

/// Ribbon test through the particle-jump criterion.
pub fn is_ribbon_by_jump(outer: &Partition, inner: &Partition) -> Result<bool, RibbonError> {
    if !inner.is_subset_of(outer) {
        return Err(RibbonError::NotContained { outer: outer.clone(), inner: inner.clone() });
    }
    Ok(particle_jump(outer, inner).is_some())
}

/// One ribbon of a decomposition, with the jump that adds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonStep {
    pub cells: Vec<Cell>,
    pub from: i64,
    pub to: i64,
}

/// Every partition obtained from `current` by adding one ribbon while staying
/// inside `bound`, with the added ribbon.
pub fn ribbon_extensions(current: &Partition, bound: &Partition) -> Vec<(Partition, RibbonStep)> {
    let rows = bound.len();
    let positions: Vec<i64> = (1..=rows).map(|i| current.part(i) - i as i64).collect();
    let occupied: BTreeSet<i64> = positions.iter().copied().collect();
    let top = bound.part(1) - 1;
    let mut out = Vec::new();
    for (idx, &from) in positions.iter().enumerate() {
        for to in from + 1..=top {
            if occupied.contains(&to) {
                continue;
            }
            let mut moved = positions.clone();
            moved[idx] = to;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let parts: Vec<u32> = moved.iter().enumerate().map(|(k, x)| (x + k as i64 + 1) as u32).collect();
            let next = Partition::new(parts).expect("particle configurations give partitions");
            if !next.is_subset_of(bound) {
                continue;
            }
            let cells = skew_cells(&next, current).expect("extension contains the current shape");
            out.push((next, RibbonStep { cells, from, to }));
        }
    }
    out
}

/// All ways to tile `outer - inner` by ribbons, each containing exactly one of
/// `end_boxes`, with one ribbon per end box. Exponential; for small shapes.
///
/// Each decomposition is returned as a list of cell sets, one per end box in
/// the order given.
pub fn ribbon_decompositions(
    outer: &Partition,
    inner: &Partition,
    end_boxes: &[Cell],
) -> Result<Vec<Vec<Vec<Cell>>>, RibbonError> {
    skew_cells(outer, inner)?;
    let mut found: BTreeSet<Vec<Vec<Cell>>> = BTreeSet::new();
    let mut assigned: Vec<Option<Vec<Cell>>> = vec![None; end_boxes.len()];
    decompose(outer, inner, end_boxes, &mut assigned, &mut found);
    Ok(found.into_iter().collect())
}

fn decompose(
    outer: &Partition,
    current: &Partition,
    end_boxes: &[Cell],
    assigned: &mut Vec<Option<Vec<Cell>>>,
    found: &mut BTreeSet<Vec<Vec<Cell>>>,
) {
    if current == outer {
        if assigned.iter().all(Option::is_some) {
            found.insert(assigned.iter().map(|a| a.clone().unwrap()).collect());
        }
        return;
    }
    for (next, step) in ribbon_extensions(current, outer) {
        let hits: Vec<usize> = end_boxes
            .iter()
            .enumerate()
            .filter(|(_, e)| step.cells.contains(e))
            .map(|(k, _)| k)
            .collect();
        let [k] = hits.as_slice() else { continue };
        if assigned[*k].is_some() {
            continue;
        }
        let mut cells = step.cells.clone();
        cells.sort_unstable();
        assigned[*k] = Some(cells);
        decompose(outer, &next, end_boxes, assigned, found);
        assigned[*k] = None;
    }
}
