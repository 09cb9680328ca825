//! Point diagrams of permutations, optionally with the cut lines of a gridding.

use std::collections::BTreeSet;

use permgrid::grid::Gridding;
use permgrid::Permutation;

/// Cut positions: a vertical cut `c` lies between positions `c` and `c + 1`,
/// a horizontal cut `r` between values `r` and `r + 1`.
pub struct Cuts {
    pub cols: BTreeSet<usize>,
    pub rows: BTreeSet<usize>,
}

impl From<&Gridding> for Cuts {
    fn from(g: &Gridding) -> Self {
        Cuts {
            cols: g.col_cuts.iter().copied().collect(),
            rows: g.row_cuts.iter().copied().collect(),
        }
    }
}

/// Rows top to bottom: `o` for a point, `.` otherwise, `|` and `-` for cuts.
pub fn ascii(p: &Permutation, cuts: Option<&Cuts>) -> String {
    let n = p.len();
    let v = p.values();
    let col_cut = |i: usize| cuts.is_some_and(|c| c.cols.contains(&i));
    let row_cut = |r: usize| cuts.is_some_and(|c| c.rows.contains(&r));
    let rows: Vec<String> = (1..=n)
        .rev()
        .map(|value| {
            let mut cells: Vec<&str> = Vec::new();
            for (i, &x) in v.iter().enumerate() {
                if col_cut(i) {
                    cells.push("|");
                }
                cells.push(if x as usize == value { "o" } else { "." });
            }
            if col_cut(n) {
                cells.push("|");
            }
            cells.join(" ")
        })
        .collect();
    let rule = "-".repeat(rows.iter().map(|r| r.chars().count()).max().unwrap_or(1));
    let mut out = String::new();
    if row_cut(n) {
        out.push_str(&rule);
        out.push('\n');
    }
    for (row, value) in rows.iter().zip((1..=n).rev()) {
        out.push_str(row);
        out.push('\n');
        if row_cut(value - 1) {
            out.push_str(&rule);
            out.push('\n');
        }
    }
    out
}

const STEP: usize = 20;

pub fn svg(p: &Permutation, cuts: Option<&Cuts>) -> String {
    let n = p.len();
    let size = STEP * (n + 1);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    );
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"none\" stroke=\"#999\"/>\n"
    ));
    if let Some(c) = cuts {
        for &k in &c.cols {
            let x = STEP * k + STEP / 2;
            out.push_str(&format!(
                "  <line x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{size}\" stroke=\"#c33\"/>\n"
            ));
        }
        for &k in &c.rows {
            let y = size - (STEP * k + STEP / 2);
            out.push_str(&format!(
                "  <line x1=\"0\" y1=\"{y}\" x2=\"{size}\" y2=\"{y}\" stroke=\"#c33\"/>\n"
            ));
        }
    }
    for (i, &v) in p.values().iter().enumerate() {
        let x = STEP * (i + 1);
        let y = size - STEP * v as usize;
        out.push_str(&format!("  <circle cx=\"{x}\" cy=\"{y}\" r=\"4\"/>\n"));
    }
    out.push_str("</svg>\n");
    out
}
