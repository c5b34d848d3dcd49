//! Brute-force enumeration of tree-like tableaux, plain and symmetric.
//!
//! A tableau here is a Ferrers shape together with a set of pointed cells
//! obeying three rules: the top-left cell is pointed; every row and every
//! column holds at least one point; and every non-root point has all cells
//! above it empty or all cells to its left empty, but not both. Exhaustive
//! enumeration over these definitions is the independent oracle that the
//! generating polynomials produced by the recurrences are checked against.

use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::moments::{MomentError, Pmf};
use crate::par::map_items;

/// Widest shape representable by the per-row bitmasks.
const MAX_COLS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauxError {
    #[error("size {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("size must be at least 1")]
    SizeTooSmall,
    #[error("half-perimeter must be at least 2, got {0}")]
    HalfPerimeterTooSmall(usize),
    #[error("row lengths must be positive, weakly decreasing, and at most {MAX_COLS} wide")]
    InvalidShape,
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
}

/// A left-aligned diagram of cells with weakly decreasing row lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FerrersShape {
    row_lengths: Vec<usize>,
}

impl FerrersShape {
    pub fn new(row_lengths: Vec<usize>) -> Result<Self, TableauxError> {
        if row_lengths.is_empty()
            || row_lengths.windows(2).any(|w| w[1] > w[0])
            || *row_lengths.last().unwrap() == 0
            || row_lengths[0] > MAX_COLS
        {
            return Err(TableauxError::InvalidShape);
        }
        Ok(FerrersShape { row_lengths })
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    pub fn rows(&self) -> usize {
        self.row_lengths.len()
    }

    pub fn cols(&self) -> usize {
        self.row_lengths[0]
    }

    /// Rows plus columns; equals the number of border edges.
    pub fn half_perimeter(&self) -> usize {
        self.rows() + self.cols()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row < self.rows() && col < self.row_lengths[row]
    }

    /// Number of cells in the given column.
    pub fn col_length(&self, col: usize) -> usize {
        self.row_lengths.iter().take_while(|&&len| len > col).count()
    }

    pub fn conjugate(&self) -> FerrersShape {
        let row_lengths = (0..self.cols()).map(|j| self.col_length(j)).collect();
        FerrersShape { row_lengths }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Cells whose right and bottom edges are both border edges: the last
    /// cell of every row that is strictly longer than the next one.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &len) in self.row_lengths.iter().enumerate() {
            let next = self.row_lengths.get(i + 1).copied().unwrap_or(0);
            if len > next {
                out.push((i, len - 1));
            }
        }
        out
    }

    /// Number of cells (i, i) lying inside the shape.
    pub fn diagonal_cells(&self) -> usize {
        self.row_lengths
            .iter()
            .enumerate()
            .filter(|&(i, &len)| len > i)
            .count()
    }
}

/// All shapes with the given half-perimeter, in descending lexicographic
/// order on row lengths. There are 2^(h-2) of them.
pub fn enumerate_shapes(half_perimeter: usize) -> Result<Vec<FerrersShape>, TableauxError> {
    if half_perimeter < 2 {
        return Err(TableauxError::HalfPerimeterTooSmall(half_perimeter));
    }
    let mut out = Vec::new();
    // the first row length determines the number of rows
    for first in (1..half_perimeter).rev() {
        let rows = half_perimeter - first;
        let mut prefix = vec![first];
        extend_shape(&mut prefix, rows - 1, &mut out);
    }
    Ok(out)
}

fn extend_shape(prefix: &mut Vec<usize>, rows_left: usize, out: &mut Vec<FerrersShape>) {
    if rows_left == 0 {
        out.push(FerrersShape {
            row_lengths: prefix.clone(),
        });
        return;
    }
    let max = *prefix.last().unwrap();
    for len in (1..=max).rev() {
        prefix.push(len);
        extend_shape(prefix, rows_left - 1, out);
        prefix.pop();
    }
}

/// A shape with pointed cells, stored as one bitmask per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    shape: FerrersShape,
    rows: Vec<u64>,
}

/// Counts over one tableau: borders, points on borders, diagonal cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableauStats {
    pub size: usize,
    pub corners: usize,
    pub occupied_corners: usize,
    pub diagonal_cells: usize,
}

impl Tableau {
    /// Builds a tableau from explicit points and validates it fully.
    pub fn new(shape: FerrersShape, points: &[(usize, usize)]) -> Result<Self, TableauxError> {
        let mut rows = vec![0u64; shape.rows()];
        for &(i, j) in points {
            if !shape.contains(i, j) {
                return Err(TableauxError::InvalidTableau(format!(
                    "point ({i}, {j}) lies outside the shape"
                )));
            }
            rows[i] |= 1 << j;
        }
        let t = Tableau { shape, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn shape(&self) -> &FerrersShape {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_pointed(&self, row: usize, col: usize) -> bool {
        self.shape.contains(row, col) && self.rows[row] >> col & 1 == 1
    }

    /// All pointed cells in row-major order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &mask) in self.rows.iter().enumerate() {
            let mut m = mask;
            while m != 0 {
                out.push((i, m.trailing_zeros() as usize));
                m &= m - 1;
            }
        }
        out
    }

    /// One line of row lengths, then one '.'/'•' line per row.
    pub fn to_text(&self) -> String {
        let mut s = self
            .shape
            .row_lengths
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        s.push('\n');
        for (i, &len) in self.shape.row_lengths.iter().enumerate() {
            for j in 0..len {
                s.push(if self.rows[i] >> j & 1 == 1 { '•' } else { '.' });
            }
            s.push('\n');
        }
        s
    }

    /// Checks every defining rule directly against the stored points.
    /// Written independently of the enumeration pruning so that generator
    /// bugs cannot hide behind their own shortcuts.
    pub fn validate(&self) -> Result<(), TableauxError> {
        let shape = &self.shape;
        for (i, &mask) in self.rows.iter().enumerate() {
            if mask >> shape.row_lengths[i] != 0 {
                return Err(TableauxError::InvalidTableau(format!(
                    "row {i} has points beyond its length"
                )));
            }
        }
        if self.rows[0] & 1 == 0 {
            return Err(TableauxError::InvalidTableau(
                "the top-left cell must be pointed".into(),
            ));
        }
        for (i, &mask) in self.rows.iter().enumerate() {
            if mask == 0 {
                return Err(TableauxError::InvalidTableau(format!("row {i} has no point")));
            }
        }
        for j in 0..shape.cols() {
            if !(0..shape.col_length(j)).any(|i| self.rows[i] >> j & 1 == 1) {
                return Err(TableauxError::InvalidTableau(format!(
                    "column {j} has no point"
                )));
            }
        }
        for (i, j) in self.points() {
            if i == 0 && j == 0 {
                continue;
            }
            let above_empty = (0..i).all(|r| self.rows[r] >> j & 1 == 0);
            let left_empty = self.rows[i] & ((1u64 << j) - 1) == 0;
            if above_empty == left_empty {
                return Err(TableauxError::InvalidTableau(format!(
                    "point ({i}, {j}) must have exactly one of its column-above \
                     and row-left regions empty"
                )));
            }
        }
        if self.size() != shape.half_perimeter() - 1 {
            return Err(TableauxError::InvalidTableau(format!(
                "{} points on a shape of half-perimeter {}",
                self.size(),
                shape.half_perimeter()
            )));
        }
        Ok(())
    }

    pub fn stats(&self) -> TableauStats {
        let corners = self.shape.corners();
        let occupied = corners
            .iter()
            .filter(|&&(i, j)| self.is_pointed(i, j))
            .count();
        TableauStats {
            size: self.size(),
            corners: corners.len(),
            occupied_corners: occupied,
            diagonal_cells: self.shape.diagonal_cells(),
        }
    }
}

/// Upper bounds on enumeration size, to guard against the factorial blowup.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub plain: usize,
    pub symmetric: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            plain: 7,
            symmetric: 4,
        }
    }
}

/// Enumerates all tableaux of the given size; there are n! of them.
/// Shape-level work runs in parallel when the `parallel` feature is on;
/// output order is by canonical shape order, then search order, either way.
pub fn enumerate_tableaux(n: usize, caps: &Caps) -> Result<Vec<Tableau>, TableauxError> {
    if n == 0 {
        return Err(TableauxError::SizeTooSmall);
    }
    if n > caps.plain {
        return Err(TableauxError::CapExceeded {
            requested: n,
            cap: caps.plain,
        });
    }
    let shapes = enumerate_shapes(n + 1)?;
    Ok(map_items(&shapes, tableaux_of_shape)
        .into_iter()
        .flatten()
        .collect())
}

/// Same enumeration forced onto one thread, kept for benchmarking the
/// parallel split against.
pub fn enumerate_tableaux_sequential(n: usize, caps: &Caps) -> Result<Vec<Tableau>, TableauxError> {
    if n == 0 {
        return Err(TableauxError::SizeTooSmall);
    }
    if n > caps.plain {
        return Err(TableauxError::CapExceeded {
            requested: n,
            cap: caps.plain,
        });
    }
    let shapes = enumerate_shapes(n + 1)?;
    Ok(shapes.iter().flat_map(tableaux_of_shape).collect())
}

/// Backtracking search over one shape. Cells are decided in row-major
/// order, so the cells above and to the left of the current one are always
/// settled: the exactly-one rule is checked exactly, not approximated.
/// Row and column coverage is enforced by forcing a point onto the last
/// undecided cell of any still-empty row or column.
fn tableaux_of_shape(shape: &FerrersShape) -> Vec<Tableau> {
    let mut rows = vec![0u64; shape.rows()];
    let mut out = Vec::new();
    let cells: Vec<(usize, usize)> = (0..shape.rows())
        .flat_map(|i| (0..shape.row_lengths()[i]).map(move |j| (i, j)))
        .collect();
    search_plain(shape, &cells, 0, &mut rows, &mut out);
    out
}

fn search_plain(
    shape: &FerrersShape,
    cells: &[(usize, usize)],
    idx: usize,
    rows: &mut Vec<u64>,
    out: &mut Vec<Tableau>,
) {
    if idx == cells.len() {
        out.push(Tableau {
            shape: shape.clone(),
            rows: rows.clone(),
        });
        return;
    }
    let (i, j) = cells[idx];
    let above_empty = (0..i).all(|r| rows[r] >> j & 1 == 0);
    let left_empty = rows[i] & ((1u64 << j) - 1) == 0;
    let root = i == 0 && j == 0;
    let can_place = root || (above_empty != left_empty);
    let row_needs = j == shape.row_lengths()[i] - 1 && rows[i] == 0;
    let col_needs = i == shape.col_length(j) - 1 && above_empty;
    let must_place = root || row_needs || col_needs;
    if can_place {
        rows[i] |= 1 << j;
        search_plain(shape, cells, idx + 1, rows, out);
        rows[i] &= !(1 << j);
    }
    if !must_place {
        search_plain(shape, cells, idx + 1, rows, out);
    }
}

/// Enumerates all symmetric tableaux of size 2m+1: point sets invariant
/// under reflection across the main diagonal, on self-conjugate shapes.
/// There are 2^m * m! of them.
pub fn enumerate_symmetric(m: usize, caps: &Caps) -> Result<Vec<Tableau>, TableauxError> {
    if m == 0 {
        return Err(TableauxError::SizeTooSmall);
    }
    if m > caps.symmetric {
        return Err(TableauxError::CapExceeded {
            requested: m,
            cap: caps.symmetric,
        });
    }
    let shapes: Vec<FerrersShape> = enumerate_shapes(2 * m + 2)?
        .into_iter()
        .filter(FerrersShape::is_self_conjugate)
        .collect();
    Ok(map_items(&shapes, symmetric_of_shape)
        .into_iter()
        .flatten()
        .collect())
}

/// One-thread variant of `enumerate_symmetric`, for benchmarks.
pub fn enumerate_symmetric_sequential(m: usize, caps: &Caps) -> Result<Vec<Tableau>, TableauxError> {
    if m == 0 {
        return Err(TableauxError::SizeTooSmall);
    }
    if m > caps.symmetric {
        return Err(TableauxError::CapExceeded {
            requested: m,
            cap: caps.symmetric,
        });
    }
    let shapes: Vec<FerrersShape> = enumerate_shapes(2 * m + 2)?
        .into_iter()
        .filter(FerrersShape::is_self_conjugate)
        .collect();
    Ok(shapes.iter().flat_map(symmetric_of_shape).collect())
}

/// Search over the free cells (i, j) with i <= j; the mirror cell is set
/// together with each one, so candidates are symmetric by construction.
/// A point that already has points both above and to its left can never
/// recover, which prunes most of the tree; every completed assignment is
/// run through the full validator before being kept.
fn symmetric_of_shape(shape: &FerrersShape) -> Vec<Tableau> {
    let mut rows = vec![0u64; shape.rows()];
    let free: Vec<(usize, usize)> = (0..shape.rows())
        .flat_map(|i| (i..shape.row_lengths()[i]).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    search_symmetric(shape, &free, 0, &mut rows, &mut out);
    out
}

fn search_symmetric(
    shape: &FerrersShape,
    free: &[(usize, usize)],
    idx: usize,
    rows: &mut Vec<u64>,
    out: &mut Vec<Tableau>,
) {
    if idx == free.len() {
        let t = Tableau {
            shape: shape.clone(),
            rows: rows.clone(),
        };
        if t.validate().is_ok() {
            out.push(t);
        }
        return;
    }
    let (i, j) = free[idx];
    let root = i == 0 && j == 0;
    rows[i] |= 1 << j;
    if i < j {
        rows[j] |= 1 << i;
    }
    if !doubly_blocked(rows) {
        search_symmetric(shape, free, idx + 1, rows, out);
    }
    rows[i] &= !(1 << j);
    if i < j {
        rows[j] &= !(1 << i);
    }
    if !root {
        search_symmetric(shape, free, idx + 1, rows, out);
    }
}

/// True if some non-root point already has a point above it and a point
/// to its left; adding more points cannot repair that.
fn doubly_blocked(rows: &[u64]) -> bool {
    for (i, &mask) in rows.iter().enumerate() {
        let mut m = mask;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            if i == 0 && j == 0 {
                continue;
            }
            let above = (0..i).any(|r| rows[r] >> j & 1 == 1);
            let left = rows[i] & ((1u64 << j) - 1) != 0;
            if above && left {
                return true;
            }
        }
    }
    false
}

/// Statistics whose exact distribution over the enumerated tableaux can
/// be tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    OccupiedCorners,
    Corners,
    DiagonalCells,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::OccupiedCorners => "occupied_corners",
            Statistic::Corners => "corners",
            Statistic::DiagonalCells => "diagonal_cells",
        }
    }

    fn of(self, stats: &TableauStats) -> usize {
        match self {
            Statistic::OccupiedCorners => stats.occupied_corners,
            Statistic::Corners => stats.corners,
            Statistic::DiagonalCells => stats.diagonal_cells,
        }
    }
}

impl FromStr for Statistic {
    type Err = TableauxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "occupied_corners" => Ok(Statistic::OccupiedCorners),
            "corners" => Ok(Statistic::Corners),
            "diagonal_cells" => Ok(Statistic::DiagonalCells),
            other => Err(TableauxError::InvalidTableau(format!(
                "unknown statistic '{other}'"
            ))),
        }
    }
}

/// Exact histogram of a statistic over an enumerated family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub statistic: String,
    pub n: usize,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("histogram serializes")
    }

    /// Normalizes the counts into a probability mass function.
    pub fn pmf(&self) -> Result<Pmf, MomentError> {
        Pmf::from_counts(&self.counts)
    }
}

/// Tabulates the exact distribution of a statistic. The occupied-corner
/// and corner statistics range over plain tableaux of size n; diagonal
/// cells range over symmetric tableaux of size 2n+1.
pub fn statistic_distribution(
    statistic: Statistic,
    n: usize,
    caps: &Caps,
) -> Result<Histogram, TableauxError> {
    let tableaux = match statistic {
        Statistic::DiagonalCells => enumerate_symmetric(n, caps)?,
        _ => enumerate_tableaux(n, caps)?,
    };
    let values: Vec<usize> = tableaux.iter().map(|t| statistic.of(&t.stats())).collect();
    let max = values.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0u64; max + 1];
    for v in values {
        counts[v] += 1;
    }
    Ok(Histogram {
        statistic: statistic.name().to_string(),
        n,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(lengths: &[usize]) -> FerrersShape {
        FerrersShape::new(lengths.to_vec()).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn shape_construction_rejects_bad_rows() {
        assert_eq!(FerrersShape::new(vec![]), Err(TableauxError::InvalidShape));
        assert_eq!(
            FerrersShape::new(vec![2, 3]),
            Err(TableauxError::InvalidShape)
        );
        assert_eq!(
            FerrersShape::new(vec![2, 0]),
            Err(TableauxError::InvalidShape)
        );
        assert!(FerrersShape::new(vec![3, 3, 1]).is_ok());
    }

    #[test]
    fn shapes_of_small_half_perimeter() {
        assert_eq!(
            enumerate_shapes(1),
            Err(TableauxError::HalfPerimeterTooSmall(1))
        );
        assert_eq!(enumerate_shapes(2).unwrap(), vec![shape(&[1])]);
        assert_eq!(
            enumerate_shapes(3).unwrap(),
            vec![shape(&[2]), shape(&[1, 1])]
        );
    }

    #[test]
    fn shapes_of_half_perimeter_five_in_order() {
        let got = enumerate_shapes(5).unwrap();
        let want: Vec<FerrersShape> = [
            vec![4],
            vec![3, 3],
            vec![3, 2],
            vec![3, 1],
            vec![2, 2, 2],
            vec![2, 2, 1],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ]
        .into_iter()
        .map(|v| FerrersShape::new(v).unwrap())
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn shape_count_doubles_with_half_perimeter() {
        for h in 2..=9 {
            assert_eq!(enumerate_shapes(h).unwrap().len(), 1 << (h - 2));
        }
    }

    #[test]
    fn conjugation_transposes_the_shape() {
        assert_eq!(shape(&[3, 2]).conjugate(), shape(&[2, 2, 1]));
        assert_eq!(shape(&[3, 2]).conjugate().conjugate(), shape(&[3, 2]));
        assert!(shape(&[6, 5, 4, 3, 2, 1]).is_self_conjugate());
        assert!(shape(&[5, 5, 5, 5, 5]).is_self_conjugate());
        assert!(!shape(&[3, 2]).is_self_conjugate());
    }

    #[test]
    fn corners_and_diagonal_cells_of_known_shapes() {
        let s = shape(&[7, 7, 5, 5, 2, 2, 1]);
        assert_eq!(s.half_perimeter(), 14);
        assert_eq!(s.corners(), vec![(1, 6), (3, 4), (5, 1), (6, 0)]);
        let stair = shape(&[6, 5, 4, 3, 2, 1]);
        assert_eq!(stair.corners().len(), 6);
        assert_eq!(stair.diagonal_cells(), 3);
        assert_eq!(shape(&[1]).corners(), vec![(0, 0)]);
        assert_eq!(shape(&[1]).diagonal_cells(), 1);
    }

    #[test]
    fn single_cell_tableau() {
        let caps = Caps::default();
        let all = enumerate_tableaux(1, &caps).unwrap();
        assert_eq!(all.len(), 1);
        let t = &all[0];
        assert_eq!(t.size(), 1);
        let stats = t.stats();
        assert_eq!(stats.corners, 1);
        assert_eq!(stats.occupied_corners, 1);
        assert_eq!(t.to_text(), "1\n•\n");
    }

    #[test]
    fn plain_counts_are_factorials() {
        let caps = Caps::default();
        for n in 1..=6 {
            assert_eq!(enumerate_tableaux(n, &caps).unwrap().len(), factorial(n));
        }
    }

    #[test]
    fn two_by_two_square_admits_exactly_three_tableaux() {
        // of the four point sets covering every row and column, the one
        // with all four cells pointed breaks the exactly-one rule, and the
        // diagonal-only one has a point with both regions empty
        let caps = Caps::default();
        let square = shape(&[2, 2]);
        let on_square: Vec<Tableau> = enumerate_tableaux(3, &caps)
            .unwrap()
            .into_iter()
            .filter(|t| *t.shape() == square)
            .collect();
        assert_eq!(on_square.len(), 3);
        for t in &on_square {
            assert_ne!(t.points(), vec![(0, 0), (1, 1)]);
        }
    }

    #[test]
    fn every_emitted_tableau_validates() {
        let caps = Caps::default();
        for n in 1..=5 {
            for t in enumerate_tableaux(n, &caps).unwrap() {
                t.validate().unwrap();
                assert_eq!(t.size(), n);
            }
        }
        for m in 1..=3 {
            for t in enumerate_symmetric(m, &caps).unwrap() {
                t.validate().unwrap();
                assert_eq!(t.size(), 2 * m + 1);
            }
        }
    }

    #[test]
    fn symmetric_counts_match_the_closed_form() {
        let caps = Caps::default();
        for m in 1..=3 {
            let count = enumerate_symmetric(m, &caps).unwrap().len();
            assert_eq!(count, (1 << m) * factorial(m));
        }
    }

    #[test]
    fn symmetric_tableaux_are_reflection_invariant() {
        let caps = Caps::default();
        for m in 1..=3 {
            for t in enumerate_symmetric(m, &caps).unwrap() {
                assert!(t.shape().is_self_conjugate());
                for (i, j) in t.points() {
                    assert!(t.is_pointed(j, i), "mirror of ({i}, {j}) missing");
                }
            }
        }
    }

    #[test]
    fn occupied_corner_histograms_for_small_sizes() {
        let caps = Caps::default();
        let h1 = statistic_distribution(Statistic::OccupiedCorners, 1, &caps).unwrap();
        assert_eq!(h1.counts, vec![0, 1]);
        let h2 = statistic_distribution(Statistic::OccupiedCorners, 2, &caps).unwrap();
        assert_eq!(h2.counts, vec![0, 2]);
        let h3 = statistic_distribution(Statistic::OccupiedCorners, 3, &caps).unwrap();
        assert_eq!(h3.counts, vec![1, 4, 1]);
        assert_eq!(h3.statistic, "occupied_corners");
        assert_eq!(h3.n, 3);
    }

    #[test]
    fn diagonal_cell_histograms_for_small_sizes() {
        let caps = Caps::default();
        let h1 = statistic_distribution(Statistic::DiagonalCells, 1, &caps).unwrap();
        assert_eq!(h1.counts, vec![0, 1, 1]);
        let h2 = statistic_distribution(Statistic::DiagonalCells, 2, &caps).unwrap();
        assert_eq!(h2.counts, vec![0, 1, 4, 3]);
    }

    #[test]
    fn corner_histogram_totals_match_the_enumeration() {
        let caps = Caps::default();
        let h = statistic_distribution(Statistic::Corners, 4, &caps).unwrap();
        assert_eq!(h.counts.iter().sum::<u64>(), factorial(4) as u64);
        // a corner count of zero is impossible: the last cell of the
        // bottom row is always a corner
        assert_eq!(h.counts[0], 0);
    }

    #[test]
    fn thirteen_point_tableau_statistics() {
        let s = shape(&[7, 7, 5, 5, 2, 2, 1]);
        let points = [
            (0, 0),
            (0, 1),
            (0, 3),
            (0, 6),
            (1, 1),
            (1, 5),
            (2, 1),
            (3, 0),
            (3, 2),
            (3, 4),
            (4, 1),
            (5, 0),
            (6, 0),
        ];
        let t = Tableau::new(s, &points).unwrap();
        let stats = t.stats();
        assert_eq!(stats.size, 13);
        assert_eq!(stats.corners, 4);
        assert_eq!(stats.occupied_corners, 2);
    }

    #[test]
    fn staircase_eleven_point_tableau_statistics() {
        let s = shape(&[6, 5, 4, 3, 2, 1]);
        let points = [
            (0, 0),
            (0, 1),
            (0, 4),
            (0, 5),
            (1, 0),
            (1, 3),
            (2, 3),
            (3, 1),
            (3, 2),
            (4, 0),
            (5, 0),
        ];
        let t = Tableau::new(s, &points).unwrap();
        for (i, j) in t.points() {
            assert!(t.is_pointed(j, i));
        }
        let stats = t.stats();
        assert_eq!(stats.size, 11);
        assert_eq!(stats.corners, 6);
        assert_eq!(stats.occupied_corners, 4);
        assert_eq!(stats.diagonal_cells, 3);
    }

    #[test]
    fn construction_rejects_rule_breakers() {
        // all four cells pointed: both regions of (1,1) are occupied
        assert!(Tableau::new(shape(&[2, 2]), &[(0, 0), (0, 1), (1, 0), (1, 1)]).is_err());
        // missing root
        assert!(Tableau::new(shape(&[2]), &[(0, 1)]).is_err());
        // column 1 empty
        assert!(Tableau::new(shape(&[2, 2]), &[(0, 0), (1, 0)]).is_err());
        // point outside the shape
        assert!(Tableau::new(shape(&[2, 1]), &[(0, 0), (1, 1)]).is_err());
        // right count, wrong placement: (1,1) sees nothing above or left
        assert!(Tableau::new(shape(&[2, 2]), &[(0, 0), (1, 1)]).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps {
            plain: 3,
            symmetric: 2,
        };
        assert_eq!(
            enumerate_tableaux(4, &caps),
            Err(TableauxError::CapExceeded {
                requested: 4,
                cap: 3
            })
        );
        assert_eq!(
            enumerate_symmetric(3, &caps),
            Err(TableauxError::CapExceeded {
                requested: 3,
                cap: 2
            })
        );
        assert_eq!(enumerate_tableaux(0, &caps), Err(TableauxError::SizeTooSmall));
        assert_eq!(enumerate_symmetric(0, &caps), Err(TableauxError::SizeTooSmall));
        assert!(enumerate_tableaux(3, &caps).is_ok());
    }

    #[test]
    fn parallel_and_sequential_enumerations_agree() {
        let caps = Caps::default();
        assert_eq!(
            enumerate_tableaux(5, &caps).unwrap(),
            enumerate_tableaux_sequential(5, &caps).unwrap()
        );
        assert_eq!(
            enumerate_symmetric(3, &caps).unwrap(),
            enumerate_symmetric_sequential(3, &caps).unwrap()
        );
    }

    #[test]
    fn statistic_names_parse_back() {
        for stat in [
            Statistic::OccupiedCorners,
            Statistic::Corners,
            Statistic::DiagonalCells,
        ] {
            assert_eq!(stat.name().parse::<Statistic>().unwrap(), stat);
        }
        assert_eq!(
            "occupied-corners".parse::<Statistic>().unwrap(),
            Statistic::OccupiedCorners
        );
        assert!("area".parse::<Statistic>().is_err());
    }

    #[test]
    fn histogram_json_shape() {
        let caps = Caps::default();
        let h = statistic_distribution(Statistic::OccupiedCorners, 3, &caps).unwrap();
        let v: serde_json::Value = serde_json::from_str(&h.to_json()).unwrap();
        assert_eq!(v["statistic"], "occupied_corners");
        assert_eq!(v["n"], 3);
        assert_eq!(v["counts"][1], 4);
        let pmf = h.pmf().unwrap();
        assert_eq!(pmf.probabilities().len(), 3);
    }
}
