//! Encodings of forest grid classes by words.
//!
//! Each letter names a nonzero cell together with the direction in which the
//! cell's points are read. The `i`-th letter of a word places a point at
//! parameter `i` along its cell's diagonal, so deleting letters deletes points
//! and every subword decodes to a pattern of the decoded permutation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Cell, GriddingMatrix};
use crate::perm::{Permutation, Symmetry};

/// Reading direction within a cell, named by the compass point it heads to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// left to right, bottom to top
    NE,
    /// right to left, top to bottom
    SW,
    /// left to right, top to bottom
    SE,
    /// right to left, bottom to top
    NW,
}

impl Direction {
    pub fn left_to_right(self) -> bool {
        matches!(self, Direction::NE | Direction::SE)
    }

    pub fn bottom_to_top(self) -> bool {
        matches!(self, Direction::NE | Direction::NW)
    }

    fn from_flags(ltr: bool, btt: bool) -> Self {
        match (ltr, btt) {
            (true, true) => Direction::NE,
            (false, false) => Direction::SW,
            (true, false) => Direction::SE,
            (false, true) => Direction::NW,
        }
    }

    /// Sign of the cells this direction can read.
    pub fn sign(self) -> i8 {
        if self.left_to_right() == self.bottom_to_top() {
            1
        } else {
            -1
        }
    }

    /// Image under a symmetry, found by mapping the start and end corners of
    /// the reading path in a unit cell.
    pub fn apply(self, sym: Symmetry) -> Self {
        let start = (
            usize::from(!self.left_to_right()),
            usize::from(!self.bottom_to_top()),
        );
        let end = (1 - start.0, 1 - start.1);
        let s = sym.map_point(start.0, start.1, 2, 2);
        let e = sym.map_point(end.0, end.1, 2, 2);
        Direction::from_flags(e.0 > s.0, e.1 > s.1)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::NE => "ne",
            Direction::SW => "sw",
            Direction::SE => "se",
            Direction::NW => "nw",
        };
        f.write_str(s)
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ne" => Ok(Direction::NE),
            "sw" => Ok(Direction::SW),
            "se" => Ok(Direction::SE),
            "nw" => Ok(Direction::NW),
            _ => Err(Error::InvalidScheme(format!("unknown direction {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub symbol: char,
    pub cell: Cell,
    pub direction: Direction,
}

/// A gridding matrix with one letter per encoded cell. Fixed points are
/// cells holding exactly one point that every word carries implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingScheme {
    matrix: GriddingMatrix,
    letters: Vec<Letter>,
    fixed_points: Vec<Cell>,
}

impl EncodingScheme {
    pub fn new(
        matrix: GriddingMatrix,
        mut letters: Vec<Letter>,
        fixed_points: Vec<Cell>,
    ) -> Result<Self> {
        letters.sort_by_key(|l| l.symbol);
        for w in letters.windows(2) {
            if w[0].symbol == w[1].symbol {
                return Err(Error::InvalidScheme(format!(
                    "letter {} defined twice",
                    w[0].symbol
                )));
            }
        }
        let mut used: Vec<Cell> = Vec::new();
        for l in &letters {
            let (c, r) = l.cell;
            if c >= matrix.cols() || r >= matrix.rows() || matrix.entry(l.cell) == 0 {
                return Err(Error::InvalidScheme(format!(
                    "letter {} sits on an empty or missing cell",
                    l.symbol
                )));
            }
            if matrix.entry(l.cell) != l.direction.sign() {
                return Err(Error::InvalidScheme(format!(
                    "letter {} reads {} across a cell of sign {}",
                    l.symbol,
                    l.direction,
                    matrix.entry(l.cell)
                )));
            }
            if used.contains(&l.cell) {
                return Err(Error::InvalidScheme(format!(
                    "cell of {} has two letters",
                    l.symbol
                )));
            }
            used.push(l.cell);
        }
        for a in &letters {
            for b in &letters {
                if a.cell.0 == b.cell.0
                    && a.direction.left_to_right() != b.direction.left_to_right()
                {
                    return Err(Error::InvalidScheme(format!(
                        "letters {} and {} share a column but not a horizontal direction",
                        a.symbol, b.symbol
                    )));
                }
                if a.cell.1 == b.cell.1
                    && a.direction.bottom_to_top() != b.direction.bottom_to_top()
                {
                    return Err(Error::InvalidScheme(format!(
                        "letters {} and {} share a row but not a vertical direction",
                        a.symbol, b.symbol
                    )));
                }
            }
        }
        for &f in &fixed_points {
            if !matrix.is_dot(f) || used.contains(&f) {
                return Err(Error::InvalidScheme(format!(
                    "fixed point {f:?} is not a free dot cell"
                )));
            }
            let alone = matrix
                .cells()
                .iter()
                .all(|&o| o == f || (o.0 != f.0 && o.1 != f.1));
            if !alone {
                return Err(Error::InvalidScheme(format!(
                    "fixed point {f:?} must be alone in its row and column"
                )));
            }
        }
        Ok(EncodingScheme {
            matrix,
            letters,
            fixed_points,
        })
    }

    pub fn matrix(&self) -> &GriddingMatrix {
        &self.matrix
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn fixed_points(&self) -> &[Cell] {
        &self.fixed_points
    }

    /// Letters in sorted order.
    pub fn alphabet(&self) -> Vec<char> {
        self.letters.iter().map(|l| l.symbol).collect()
    }

    pub fn letter(&self, c: char) -> Option<&Letter> {
        self.letters
            .binary_search_by_key(&c, |l| l.symbol)
            .ok()
            .map(|i| &self.letters[i])
    }

    /// The permutation drawn by `word`; fixed points are added to every word.
    pub fn decode(&self, word: &str) -> Result<Permutation> {
        let n = word.chars().count();
        let scale = n + 1;
        let mut pts: Vec<(usize, usize)> = Vec::with_capacity(n + self.fixed_points.len());
        for (i, ch) in word.chars().enumerate() {
            let l = self.letter(ch).ok_or(Error::UnknownLetter(ch))?;
            let t = i + 1;
            let (c, r) = l.cell;
            let x = c * scale
                + if l.direction.left_to_right() {
                    t
                } else {
                    scale - t
                };
            let y = r * scale
                + if l.direction.bottom_to_top() {
                    t
                } else {
                    scale - t
                };
            pts.push((x, y));
        }
        for &(c, r) in &self.fixed_points {
            pts.push((c * scale, r * scale));
        }
        pts.sort_unstable();
        let ys: Vec<usize> = pts.iter().map(|p| p.1).collect();
        Ok(Permutation::standardize(&ys))
    }

    /// Every word of length `|p|` (fewer the fixed points) that decodes to `p`.
    pub fn encodings_of(&self, p: &Permutation) -> Vec<String> {
        let Some(k) = p.len().checked_sub(self.fixed_points.len()) else {
            return Vec::new();
        };
        let alpha = self.alphabet();
        let total = alpha.len().pow(k as u32);
        let mut out: Vec<String> = (0..total)
            .into_par_iter()
            .filter_map(|mut idx| {
                let mut w = String::with_capacity(k);
                for _ in 0..k {
                    w.push(alpha[idx % alpha.len()]);
                    idx /= alpha.len();
                }
                (self.decode(&w).ok()? == *p).then_some(w)
            })
            .collect();
        out.sort();
        out
    }

    /// Maps each permutation of length `n` that some word decodes to onto
    /// those words.
    pub fn encoding_index(&self, words: &[String]) -> HashMap<Permutation, Vec<String>> {
        let mut index: HashMap<Permutation, Vec<String>> = HashMap::new();
        for w in words {
            if let Ok(p) = self.decode(w) {
                index.entry(p).or_default().push(w.clone());
            }
        }
        index
    }

    /// The scheme whose words decode to the images under `sym`.
    pub fn transform(&self, sym: Symmetry) -> Self {
        let (w, h) = (self.matrix.cols(), self.matrix.rows());
        let letters = self
            .letters
            .iter()
            .map(|l| Letter {
                symbol: l.symbol,
                cell: sym.map_point(l.cell.0, l.cell.1, w, h),
                direction: l.direction.apply(sym),
            })
            .collect();
        let fixed = self
            .fixed_points
            .iter()
            .map(|&(c, r)| sym.map_point(c, r, w, h))
            .collect();
        EncodingScheme::new(self.matrix.apply(sym), letters, fixed)
            .expect("symmetries preserve scheme consistency")
    }
}

impl fmt::Display for EncodingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.matrix.to_string();
        let rows: Vec<&str> = m.lines().collect();
        writeln!(f, "matrix: {}", rows.join(" / "))?;
        let h = self.matrix.rows();
        for l in &self.letters {
            writeln!(
                f,
                "letter {} {},{} {}",
                l.symbol,
                h - l.cell.1,
                l.cell.0 + 1,
                l.direction
            )?;
        }
        for &(c, r) in &self.fixed_points {
            writeln!(f, "fixed {},{}", h - r, c + 1)?;
        }
        Ok(())
    }
}

impl FromStr for EncodingScheme {
    type Err = Error;

    /// Lines `matrix: <rows>`, `letter <ch> <row>,<col> <dir>` and
    /// `fixed <row>,<col>`, with rows counted from the top and both indices
    /// starting at 1, as in the matrix text form. `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut matrix: Option<GriddingMatrix> = None;
        let mut raw_letters: Vec<(char, usize, usize, Direction)> = Vec::new();
        let mut raw_fixed: Vec<(usize, usize)> = Vec::new();
        let bad = |line: &str| Error::InvalidScheme(format!("cannot read line {line:?}"));
        let coords = |t: &str, line: &str| -> Result<(usize, usize)> {
            let (r, c) = t.split_once(',').ok_or_else(|| bad(line))?;
            Ok((
                r.parse().map_err(|_| bad(line))?,
                c.parse().map_err(|_| bad(line))?,
            ))
        };
        for line in s.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("matrix:") {
                matrix = Some(rest.parse()?);
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["letter", sym, pos, dir] => {
                    let mut chars = sym.chars();
                    let ch = chars.next().ok_or_else(|| bad(line))?;
                    if chars.next().is_some() {
                        return Err(bad(line));
                    }
                    let (r, c) = coords(pos, line)?;
                    raw_letters.push((ch, r, c, dir.parse()?));
                }
                ["fixed", pos] => raw_fixed.push(coords(pos, line)?),
                _ => return Err(bad(line)),
            }
        }
        let matrix = matrix.ok_or_else(|| Error::InvalidScheme("no matrix line".into()))?;
        let h = matrix.rows();
        let to_cell = |r: usize, c: usize| -> Result<Cell> {
            if r == 0 || r > h || c == 0 || c > matrix.cols() {
                return Err(Error::InvalidScheme(format!(
                    "cell {r},{c} outside the matrix"
                )));
            }
            Ok((c - 1, h - r))
        };
        let letters = raw_letters
            .into_iter()
            .map(|(symbol, r, c, direction)| {
                Ok(Letter {
                    symbol,
                    cell: to_cell(r, c)?,
                    direction,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let fixed = raw_fixed
            .into_iter()
            .map(|(r, c)| to_cell(r, c))
            .collect::<Result<Vec<_>>>()?;
        EncodingScheme::new(matrix, letters, fixed)
    }
}
