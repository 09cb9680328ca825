//! Monotone grid classes.
//!
//! Cells are addressed as `(col, row)` with both indices 0-based, columns
//! counted from the left and rows from the *bottom*, so that a cell's
//! coordinates agree with the diagram of a permutation. The text form lists
//! rows top to bottom, the way grid classes are drawn.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Symmetry};

pub type Cell = (usize, usize);

/// A matrix over {-1, 0, 1}; some nonzero cells may be limited to one point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GriddingMatrix {
    cols: usize,
    rows: usize,
    /// `entries[row * cols + col]`, row 0 at the bottom
    entries: Vec<i8>,
    dots: Vec<Cell>,
}

impl GriddingMatrix {
    /// Builds a matrix from rows listed top to bottom.
    pub fn from_rows(rows_top_down: &[Vec<i8>]) -> Result<Self> {
        let rows = rows_top_down.len();
        if rows == 0 {
            return Err(Error::InvalidMatrix("no rows".into()));
        }
        let cols = rows_top_down[0].len();
        if cols == 0 {
            return Err(Error::InvalidMatrix("empty row".into()));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, r) in rows_top_down.iter().rev().enumerate() {
            if r.len() != cols {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {cols}",
                    rows - i,
                    r.len()
                )));
            }
            for &e in r {
                if !(-1..=1).contains(&e) {
                    return Err(Error::InvalidMatrix(format!("entry {e} not in {{-1,0,1}}")));
                }
                entries.push(e);
            }
        }
        Ok(GriddingMatrix {
            cols,
            rows,
            entries,
            dots: Vec::new(),
        })
    }

    /// Limits `cell` to at most one point.
    pub fn with_dot(mut self, cell: Cell) -> Result<Self> {
        if cell.0 >= self.cols || cell.1 >= self.rows || self.entry(cell) == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dot cell {cell:?} is outside the matrix or empty"
            )));
        }
        if !self.dots.contains(&cell) {
            self.dots.push(cell);
            self.dots.sort();
        }
        Ok(self)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn entry(&self, (c, r): Cell) -> i8 {
        self.entries[r * self.cols + c]
    }

    pub fn is_dot(&self, cell: Cell) -> bool {
        self.dots.contains(&cell)
    }

    pub fn dots(&self) -> &[Cell] {
        &self.dots
    }

    /// Nonzero cells ordered by column, then row.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for c in 0..self.cols {
            for r in 0..self.rows {
                if self.entry((c, r)) != 0 {
                    out.push((c, r));
                }
            }
        }
        out
    }

    /// The matrix whose class is the image of this class under `sym`.
    pub fn apply(&self, sym: Symmetry) -> Self {
        let (w, h) = (self.cols, self.rows);
        let (nc, nr) = if sym.transposes() { (h, w) } else { (w, h) };
        let flip = matches!(
            sym,
            Symmetry::Reverse
                | Symmetry::Complement
                | Symmetry::InverseReverse
                | Symmetry::ReverseInverse
        );
        let mut entries = vec![0i8; nc * nr];
        for c in 0..w {
            for r in 0..h {
                let (c2, r2) = sym.map_point(c, r, w, h);
                let e = self.entry((c, r));
                entries[r2 * nc + c2] = if flip { -e } else { e };
            }
        }
        let mut dots: Vec<Cell> = self
            .dots
            .iter()
            .map(|&(c, r)| sym.map_point(c, r, w, h))
            .collect();
        dots.sort();
        GriddingMatrix {
            cols: nc,
            rows: nr,
            entries,
            dots,
        }
    }

    pub fn transpose(&self) -> Self {
        self.apply(Symmetry::Inverse)
    }

    /// Edges between nonzero cells sharing a row or column with no nonzero
    /// cell between them.
    pub fn cell_graph(&self) -> Vec<(Cell, Cell)> {
        let mut edges = Vec::new();
        for c in 0..self.cols {
            let col: Vec<Cell> = (0..self.rows)
                .map(|r| (c, r))
                .filter(|&x| self.entry(x) != 0)
                .collect();
            edges.extend(col.windows(2).map(|w| (w[0], w[1])));
        }
        for r in 0..self.rows {
            let row: Vec<Cell> = (0..self.cols)
                .map(|c| (c, r))
                .filter(|&x| self.entry(x) != 0)
                .collect();
            edges.extend(row.windows(2).map(|w| (w[0], w[1])));
        }
        edges
    }

    /// Whether the cell graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let idx = |(c, r): Cell| r * self.cols + c;
        let mut parent: Vec<usize> = (0..self.entries.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in self.cell_graph() {
            let (ra, rb) = (find(&mut parent, idx(a)), find(&mut parent, idx(b)));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Searches for a gridding of `p`, returning the one with the
    /// lexicographically least column cuts, ties broken on row cuts.
    pub fn grid(&self, p: &Permutation) -> Option<Gridding> {
        grid(p, self)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        grid(p, self).is_some()
    }

    /// Every permutation of length `n` in the grid class, sorted.
    pub fn class_members(&self, n: usize) -> Vec<Permutation> {
        class_members(self, n)
    }
}

impl fmt::Display for GriddingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in (0..self.rows).rev() {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.entry((c, r)).to_string())
                .collect();
            write!(f, "{}", row.join(" "))?;
            for &(c, dr) in &self.dots {
                if dr == r {
                    write!(f, " !{},{}", self.rows - r, c + 1)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GriddingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.to_string();
        let rows: Vec<&str> = text.lines().collect();
        write!(f, "GriddingMatrix[{}]", rows.join(" / "))
    }
}

impl FromStr for GriddingMatrix {
    type Err = Error;

    /// Rows top to bottom separated by newlines or `/`; `#` starts a comment;
    /// a token `!r,c` limits the cell in text row `r` (1 = top) and column `c`
    /// (1 = left) to a single point.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<Vec<i8>> = Vec::new();
        let mut dots: Vec<(usize, usize)> = Vec::new();
        for line in s.lines() {
            let line = line.split('#').next().unwrap();
            for chunk in line.split('/') {
                let mut row = Vec::new();
                for tok in chunk.split_whitespace() {
                    if let Some(d) = tok.strip_prefix('!') {
                        let (r, c) = d
                            .split_once(',')
                            .ok_or_else(|| Error::InvalidMatrix(format!("bad dot {tok:?}")))?;
                        let parse = |x: &str| {
                            x.parse::<usize>()
                                .map_err(|_| Error::InvalidMatrix(format!("bad dot {tok:?}")))
                        };
                        dots.push((parse(r)?, parse(c)?));
                    } else {
                        row.push(
                            tok.parse::<i8>()
                                .map_err(|_| Error::InvalidMatrix(format!("bad entry {tok:?}")))?,
                        );
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        let mut m = GriddingMatrix::from_rows(&rows)?;
        for (r, c) in dots {
            if r == 0 || r > m.rows || c == 0 || c > m.cols {
                return Err(Error::InvalidMatrix(format!("dot !{r},{c} outside matrix")));
            }
            let cell = (c - 1, m.rows - r);
            m = m.with_dot(cell)?;
        }
        Ok(m)
    }
}

/// A witness that a permutation lies in a grid class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gridding {
    /// `col_cuts[j]` = number of points in columns `0..=j`, for `j < cols - 1`
    pub col_cuts: Vec<usize>,
    /// `row_cuts[i]` = number of values in rows `0..=i`, for `i < rows - 1`
    pub row_cuts: Vec<usize>,
    /// cell of the point at each position
    pub cells: Vec<Cell>,
}

fn band(cuts: &[usize], n: usize, k: usize) -> (usize, usize) {
    let lo = if k == 0 { 0 } else { cuts[k - 1] };
    let hi = if k == cuts.len() { n } else { cuts[k] };
    (lo, hi)
}

fn monotone(vals: impl Iterator<Item = u8>, sign: i8) -> bool {
    let mut prev: Option<u8> = None;
    for v in vals {
        if let Some(p) = prev {
            if (sign > 0) != (v > p) {
                return false;
            }
        }
        prev = Some(v);
    }
    true
}

/// Columns are fixed; checks row `r` with value band `[lo, hi)` (0-based values).
fn row_ok(
    p: &[u8],
    m: &GriddingMatrix,
    col_cuts: &[usize],
    r: usize,
    lo: usize,
    hi: usize,
) -> bool {
    let n = p.len();
    for c in 0..m.cols {
        let (a, b) = band(col_cuts, n, c);
        let pts = p[a..b].iter().copied().filter(|&v| {
            let v = v as usize - 1;
            v >= lo && v < hi
        });
        let e = m.entry((c, r));
        if e == 0 {
            if pts.count() > 0 {
                return false;
            }
            continue;
        }
        if m.is_dot((c, r)) && pts.clone().count() > 1 {
            return false;
        }
        if !monotone(pts, e) {
            return false;
        }
    }
    true
}

/// Necessary condition on a column segment, independent of row cuts: read
/// by increasing value, its points split into consecutive blocks, one per
/// nonzero cell from the bottom, each monotone in that cell's direction.
/// Taking the longest block each time is optimal since a suffix of a
/// monotone block is monotone.
fn column_ok(seg: &[u8], m: &GriddingMatrix, c: usize) -> bool {
    let mut by_value: Vec<usize> = (0..seg.len()).collect();
    by_value.sort_by_key(|&i| seg[i]);
    let mut rest = &by_value[..];
    for r in (0..m.rows).filter(|&r| m.entry((c, r)) != 0) {
        let cap = if m.is_dot((c, r)) { 1 } else { usize::MAX };
        let up = m.entry((c, r)) > 0;
        let mut k = 0;
        while k < rest.len() && k < cap && (k == 0 || (rest[k] > rest[k - 1]) == up) {
            k += 1;
        }
        rest = &rest[k..];
    }
    rest.is_empty()
}

pub fn grid(p: &Permutation, m: &GriddingMatrix) -> Option<Gridding> {
    let v = p.values();
    let n = v.len();
    let mut col_cuts = Vec::with_capacity(m.cols - 1);

    fn cols_dfs(
        v: &[u8],
        m: &GriddingMatrix,
        col_cuts: &mut Vec<usize>,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = v.len();
        let c = col_cuts.len();
        let start = col_cuts.last().copied().unwrap_or(0);
        if c == m.cols - 1 {
            if !column_ok(&v[start..], m, c) {
                return None;
            }
            let mut row_cuts = Vec::with_capacity(m.rows - 1);
            return rows_dfs(v, m, col_cuts, &mut row_cuts).map(|r| (col_cuts.clone(), r));
        }
        for cut in start..=n {
            if !column_ok(&v[start..cut], m, c) {
                continue;
            }
            col_cuts.push(cut);
            if let Some(found) = cols_dfs(v, m, col_cuts) {
                return Some(found);
            }
            col_cuts.pop();
        }
        None
    }

    fn rows_dfs(
        v: &[u8],
        m: &GriddingMatrix,
        col_cuts: &[usize],
        row_cuts: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let n = v.len();
        let r = row_cuts.len();
        let start = row_cuts.last().copied().unwrap_or(0);
        if r == m.rows - 1 {
            return row_ok(v, m, col_cuts, r, start, n).then(|| row_cuts.clone());
        }
        for cut in start..=n {
            if !row_ok(v, m, col_cuts, r, start, cut) {
                continue;
            }
            row_cuts.push(cut);
            if let Some(found) = rows_dfs(v, m, col_cuts, row_cuts) {
                return Some(found);
            }
            row_cuts.pop();
        }
        None
    }

    let (col_cuts, row_cuts) = cols_dfs(v, m, &mut col_cuts)?;
    let cells = (0..n)
        .map(|i| {
            let c = (0..m.cols).find(|&c| band(&col_cuts, n, c).1 > i).unwrap();
            let val = v[i] as usize - 1;
            let r = (0..m.rows)
                .find(|&r| band(&row_cuts, n, r).1 > val)
                .unwrap();
            (c, r)
        })
        .collect();
    Some(Gridding {
        col_cuts,
        row_cuts,
        cells,
    })
}

/// Checks that `g` is a valid gridding of `p` in `m`.
pub fn is_valid_gridding(p: &Permutation, m: &GriddingMatrix, g: &Gridding) -> bool {
    let n = p.len();
    if g.col_cuts.len() != m.cols - 1 || g.row_cuts.len() != m.rows - 1 || g.cells.len() != n {
        return false;
    }
    let sorted =
        |cuts: &[usize]| cuts.windows(2).all(|w| w[0] <= w[1]) && cuts.iter().all(|&x| x <= n);
    if !sorted(&g.col_cuts) || !sorted(&g.row_cuts) {
        return false;
    }
    (0..m.rows).all(|r| {
        let (lo, hi) = band(&g.row_cuts, n, r);
        row_ok(p.values(), m, &g.col_cuts, r, lo, hi)
    })
}

/// Arrangements of a multiset given by `counts[i]` copies of symbol `i`.
fn interleavings(counts: &[usize]) -> Vec<Vec<u8>> {
    let total: usize = counts.iter().sum();
    let mut out = Vec::new();
    let mut left = counts.to_vec();
    let mut cur = Vec::with_capacity(total);
    fn rec(left: &mut [usize], cur: &mut Vec<u8>, total: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i as u8);
                rec(left, cur, total, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, total, &mut out);
    out
}

fn weak_compositions(n: usize, parts: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(
        n: usize,
        parts: usize,
        caps: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        if i + 1 == parts {
            if n <= caps[i] {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in 0..=n.min(caps[i]) {
            cur.push(k);
            rec(n - k, parts, caps, cur, out);
            cur.pop();
        }
    }
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, parts, caps, &mut cur, &mut out);
    out
}

/// All permutations of length `n` in the class of `m`, built by distributing
/// points over the cells and interleaving cells that share a column or row.
pub fn class_members(m: &GriddingMatrix, n: usize) -> Vec<Permutation> {
    let cells = m.cells();
    let caps: Vec<usize> = cells
        .iter()
        .map(|&c| if m.is_dot(c) { 1 } else { n })
        .collect();
    let col_cells: Vec<Vec<usize>> = (0..m.cols)
        .map(|c| (0..cells.len()).filter(|&i| cells[i].0 == c).collect())
        .collect();
    let row_cells: Vec<Vec<usize>> = (0..m.rows)
        .map(|r| (0..cells.len()).filter(|&i| cells[i].1 == r).collect())
        .collect();

    let comps = weak_compositions(n, cells.len(), &caps);
    let found: HashSet<Permutation> = comps
        .par_iter()
        .flat_map_iter(|counts| {
            let col_opts: Vec<Vec<Vec<u8>>> = col_cells
                .iter()
                .map(|ids| interleavings(&ids.iter().map(|&i| counts[i]).collect::<Vec<_>>()))
                .collect();
            let row_opts: Vec<Vec<Vec<u8>>> = row_cells
                .iter()
                .map(|ids| interleavings(&ids.iter().map(|&i| counts[i]).collect::<Vec<_>>()))
                .collect();
            let mut local = HashSet::new();
            let mut col_pick = vec![0usize; m.cols];
            loop {
                // positions of each cell's points, left to right
                let mut pos: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
                let mut x = 0;
                for (c, ids) in col_cells.iter().enumerate() {
                    for &k in &col_opts[c][col_pick[c]] {
                        pos[ids[k as usize]].push(x);
                        x += 1;
                    }
                }
                let mut row_pick = vec![0usize; m.rows];
                loop {
                    let mut vals: Vec<Vec<u8>> = vec![Vec::new(); cells.len()];
                    let mut y = 1u8;
                    for (r, ids) in row_cells.iter().enumerate() {
                        for &k in &row_opts[r][row_pick[r]] {
                            vals[ids[k as usize]].push(y);
                            y += 1;
                        }
                    }
                    let mut perm = vec![0u8; n];
                    for (i, &cell) in cells.iter().enumerate() {
                        let k = pos[i].len();
                        for (j, &x) in pos[i].iter().enumerate() {
                            perm[x] = if m.entry(cell) > 0 {
                                vals[i][j]
                            } else {
                                vals[i][k - 1 - j]
                            };
                        }
                    }
                    local.insert(Permutation::from_vec_unchecked(perm));
                    if !advance(&mut row_pick, &row_opts) {
                        break;
                    }
                }
                if !advance(&mut col_pick, &col_opts) {
                    break;
                }
            }
            local
        })
        .collect();
    let mut out: Vec<Permutation> = found.into_iter().collect();
    out.sort();
    out
}

/// Odometer step over a product of option lists; false when exhausted.
fn advance(pick: &mut [usize], opts: &[Vec<Vec<u8>>]) -> bool {
    for i in 0..pick.len() {
        pick[i] += 1;
        if pick[i] < opts[i].len() {
            return true;
        }
        pick[i] = 0;
    }
    false
}
