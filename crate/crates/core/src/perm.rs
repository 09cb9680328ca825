//! Permutations in one-line notation, pattern containment, simplicity and
//! substitution decomposition.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from 1-based values, checking bijectivity.
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation {
                    input: format!("{values:?}"),
                    reason: format!("{v} is repeated or outside 1..={n}"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u8).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n as u8).rev().collect(),
        }
    }

    /// The pattern formed by an arbitrary sequence of distinct keys.
    pub fn standardize<T: Ord>(seq: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_by(|&a, &b| seq[a].cmp(&seq[b]));
        let mut values = vec![0u8; seq.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank as u8 + 1;
        }
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// 0-based positions indexed by 0-based value.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }

    /// Removes the entry at 0-based position `i` and standardizes.
    pub fn delete(&self, i: usize) -> Self {
        let removed = self.values[i];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Permutation { values }
    }

    /// All distinct one-point deletions.
    pub fn deletions(&self) -> Vec<Self> {
        let mut out: Vec<Self> = (0..self.len()).map(|i| self.delete(i)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Inserts a new maximum at 0-based position `i`.
    pub fn insert_max(&self, i: usize) -> Self {
        let mut values = self.values.clone();
        values.insert(i, self.len() as u8 + 1);
        Permutation { values }
    }

    pub fn contains(&self, needle: &Permutation) -> bool {
        contains(self, needle)
    }

    pub fn avoids_all(&self, basis: &[Permutation]) -> bool {
        avoids_all(self, basis)
    }

    pub fn is_simple(&self) -> bool {
        is_simple(self)
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u8 + 1;
        Permutation {
            values: self.values.iter().map(|&v| n - v).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0u8; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = i as u8 + 1;
        }
        Permutation { values }
    }

    pub fn apply(&self, sym: Symmetry) -> Self {
        sym.apply(self)
    }

    /// `self ⊕ other`
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let k = self.len() as u8;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + k));
        Permutation { values }
    }

    /// `self ⊖ other`
    pub fn skew_sum(&self, other: &Permutation) -> Self {
        let k = other.len() as u8;
        let mut values: Vec<u8> = self.values.iter().map(|&v| v + k).collect();
        values.extend(other.values.iter().copied());
        Permutation { values }
    }
}

impl fmt::Display for Permutation {
    /// Compact digits up to length 9, space separated beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts "2 1 4 3", "2,1,4,3" or the compact "2143" (length ≤ 9).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = |reason: String| Error::InvalidPermutation {
            input: s.to_string(),
            reason,
        };
        let values: Vec<u8> = if t.contains(|c: char| c.is_whitespace() || c == ',') {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .enumerate()
                .map(|(i, w)| {
                    w.parse::<u8>()
                        .map_err(|_| bad(format!("entry {} ({w:?}) is not a number", i + 1)))
                })
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .enumerate()
                .map(|(i, c)| match c.to_digit(10) {
                    Some(d) => Ok(d as u8),
                    None => Err(bad(format!("character {} ({c:?}) is not a digit", i + 1))),
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| match e {
            Error::InvalidPermutation { reason, .. } => bad(reason),
            other => other,
        })
    }
}

/// Parses a whitespace- or comma-separated list of compact permutations.
pub fn parse_list(s: &str) -> Result<Vec<Permutation>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(str::parse)
        .collect()
}

/// Whether some subsequence of `haystack` is order-isomorphic to `needle`.
pub fn contains(haystack: &Permutation, needle: &Permutation) -> bool {
    let k = needle.len();
    if k == 0 {
        return true;
    }
    if k > haystack.len() {
        return false;
    }
    // chosen[j] = haystack position matched to needle entry j; place needle
    // entries left to right and check relative order against all earlier ones.
    let h = haystack.values();
    let nv = needle.values();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    fn extend(h: &[u8], nv: &[u8], chosen: &mut Vec<usize>, start: usize) -> bool {
        let j = chosen.len();
        if j == nv.len() {
            return true;
        }
        let remaining = nv.len() - j;
        for i in start..=h.len() - remaining {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(t, &p)| (nv[t] < nv[j]) == (h[p] < h[i]));
            if ok {
                chosen.push(i);
                if extend(h, nv, chosen, i + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(h, nv, &mut chosen, 0)
}

/// Like [`contains`], restricted to occurrences in which the maximum of
/// `haystack` plays the role of the maximum of `needle`. Used when a new
/// maximum is inserted into a permutation already known to avoid `needle`.
pub fn contains_through_max(haystack: &Permutation, needle: &Permutation) -> bool {
    let k = needle.len();
    if k == 0 || k > haystack.len() {
        return k == 0;
    }
    let h = haystack.values();
    let nv = needle.values();
    let hmax = h.iter().position(|&v| v as usize == h.len()).unwrap();
    let nmax = nv.iter().position(|&v| v as usize == k).unwrap();
    if hmax < nmax || h.len() - hmax < k - nmax {
        return false;
    }
    fn extend(
        h: &[u8],
        nv: &[u8],
        chosen: &mut Vec<usize>,
        start: usize,
        fixed: (usize, usize),
    ) -> bool {
        let j = chosen.len();
        if j == nv.len() {
            return true;
        }
        let remaining = nv.len() - j;
        let (lo, hi) = if j == fixed.1 {
            (fixed.0, fixed.0)
        } else if j < fixed.1 {
            // leave room for the fixed position
            (start, fixed.0 - (fixed.1 - j))
        } else {
            (start, h.len() - remaining)
        };
        if lo > hi {
            return false;
        }
        for i in lo..=hi {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(t, &p)| (nv[t] < nv[j]) == (h[p] < h[i]));
            if ok {
                chosen.push(i);
                if extend(h, nv, chosen, i + 1, fixed) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(k);
    extend(h, nv, &mut chosen, 0, (hmax, nmax))
}

pub fn avoids_all(p: &Permutation, basis: &[Permutation]) -> bool {
    basis.iter().all(|b| !contains(p, b))
}

/// True iff every interval of `p` is trivial.
pub fn is_simple(p: &Permutation) -> bool {
    let n = p.len();
    let v = p.values();
    for i in 0..n {
        let (mut lo, mut hi) = (v[i], v[i]);
        for (j, &x) in v.iter().enumerate().skip(i + 1) {
            lo = lo.min(x);
            hi = hi.max(x);
            let span = j - i;
            if (hi - lo) as usize == span && span + 1 < n {
                return false;
            }
        }
    }
    true
}

/// Whether positions `i..=j` form an interval.
fn is_interval(v: &[u8], i: usize, j: usize) -> bool {
    let lo = v[i..=j].iter().min().unwrap();
    let hi = v[i..=j].iter().max().unwrap();
    (hi - lo) as usize == j - i
}

/// Sum components `α_1, …, α_k` with `p = α_1 ⊕ … ⊕ α_k`, each sum-indecomposable.
pub fn sum_components(p: &Permutation) -> Vec<Permutation> {
    split_components(p, true)
}

/// Skew components, the analog of [`sum_components`] for `⊖`.
pub fn skew_components(p: &Permutation) -> Vec<Permutation> {
    split_components(p, false)
}

fn split_components(p: &Permutation, sum: bool) -> Vec<Permutation> {
    let v = p.values();
    let n = v.len();
    let mut out = Vec::new();
    let mut start = 0;
    let mut extreme = 0u8;
    for (i, &x) in v.iter().enumerate() {
        // for sums, the prefix ending at i is a component when its max equals its
        // right end; for skews, when its min equals n minus its right end
        if sum {
            extreme = extreme.max(x);
            if extreme as usize == i + 1 {
                out.push(Permutation::standardize(&v[start..=i]));
                start = i + 1;
            }
        } else {
            extreme = if i == 0 { x } else { extreme.min(x) };
            if extreme as usize == n - i {
                out.push(Permutation::standardize(&v[start..=i]));
                start = i + 1;
                extreme = u8::MAX;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decomposability {
    SumDecomposable,
    SkewDecomposable,
    StrongIndecomposable,
}

pub fn classify_decomposability(p: &Permutation) -> Decomposability {
    if sum_components(p).len() > 1 {
        Decomposability::SumDecomposable
    } else if skew_components(p).len() > 1 {
        Decomposability::SkewDecomposable
    } else {
        Decomposability::StrongIndecomposable
    }
}

/// `skeleton[blocks]`. The skeleton is non-empty and simple or of length 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionDecomposition {
    pub skeleton: Permutation,
    pub blocks: Vec<Permutation>,
}

impl SubstitutionDecomposition {
    pub fn inflate(&self) -> Result<Permutation> {
        inflate(&self.skeleton, &self.blocks)
    }
}

/// Replaces entry `i` of `skeleton` by an interval order-isomorphic to `blocks[i]`.
pub fn inflate(skeleton: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    if skeleton.len() != blocks.len() {
        return Err(Error::InflationArity {
            skeleton: skeleton.len(),
            blocks: blocks.len(),
        });
    }
    if blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::EmptyBlock);
    }
    // offset of the block at skeleton value v = total size of blocks with smaller values
    let mut offset = vec![0u8; skeleton.len()];
    let pos = skeleton.positions();
    let mut acc = 0u8;
    for &i in &pos {
        offset[i] = acc;
        acc += blocks[i].len() as u8;
    }
    let values = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            let off = offset[i];
            b.values().iter().map(move |&v| v + off)
        })
        .collect();
    Ok(Permutation { values })
}

/// Substitution decomposition. Sum-decomposable permutations split left-greedily
/// as `12[α_1, α_2 ⊕ … ⊕ α_k]` and skew ones likewise; otherwise the skeleton is
/// the simple permutation obtained by contracting maximal proper intervals.
pub fn decompose(p: &Permutation) -> SubstitutionDecomposition {
    let n = p.len();
    if n <= 1 {
        return SubstitutionDecomposition {
            skeleton: p.clone(),
            blocks: vec![p.clone()],
        };
    }
    for (sum, skeleton) in [(true, "12"), (false, "21")] {
        let comps = split_components(p, sum);
        if comps.len() > 1 {
            let first = comps[0].clone();
            let rest = comps[1..].iter().skip(1).fold(comps[1].clone(), |acc, c| {
                if sum {
                    acc.direct_sum(c)
                } else {
                    acc.skew_sum(c)
                }
            });
            return SubstitutionDecomposition {
                skeleton: skeleton.parse().unwrap(),
                blocks: vec![first, rest],
            };
        }
    }
    // Strong-indecomposable: maximal proper intervals partition p into blocks of
    // a simple skeleton. Greedily take the longest interval starting at each point.
    let v = p.values();
    let mut cuts = Vec::new();
    let mut i = 0;
    while i < n {
        let mut best = i;
        for j in i..n {
            if j - i + 1 < n && is_interval(v, i, j) {
                best = j;
            }
        }
        cuts.push((i, best));
        i = best + 1;
    }
    let reps: Vec<u8> = cuts.iter().map(|&(a, _)| v[a]).collect();
    let skeleton = Permutation::standardize(&reps);
    let blocks = cuts
        .iter()
        .map(|&(a, b)| Permutation::standardize(&v[a..=b]))
        .collect();
    SubstitutionDecomposition { skeleton, blocks }
}

/// The eight symmetries of the square acting on permutation diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Reverse,
    Complement,
    Inverse,
    /// reverse then complement, a half turn
    ReverseComplement,
    /// inverse then reverse
    InverseReverse,
    /// reverse then inverse
    ReverseInverse,
    /// reverse, inverse, reverse: reflection in the anti-diagonal
    ReverseInverseReverse,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::Inverse,
        Symmetry::ReverseComplement,
        Symmetry::InverseReverse,
        Symmetry::ReverseInverse,
        Symmetry::ReverseInverseReverse,
    ];

    pub fn apply(self, p: &Permutation) -> Permutation {
        match self {
            Symmetry::Identity => p.clone(),
            Symmetry::Reverse => p.reverse(),
            Symmetry::Complement => p.complement(),
            Symmetry::Inverse => p.inverse(),
            Symmetry::ReverseComplement => p.reverse().complement(),
            Symmetry::InverseReverse => p.inverse().reverse(),
            Symmetry::ReverseInverse => p.reverse().inverse(),
            Symmetry::ReverseInverseReverse => p.reverse().inverse().reverse(),
        }
    }

    /// Map on 0-based diagram coordinates `(x, y)` in an `w × h` box.
    pub fn map_point(self, x: usize, y: usize, w: usize, h: usize) -> (usize, usize) {
        let r = |(x, y): (usize, usize), w: usize| (w - 1 - x, y);
        let c = |(x, y): (usize, usize), h: usize| (x, h - 1 - y);
        let t = |(x, y): (usize, usize)| (y, x);
        match self {
            Symmetry::Identity => (x, y),
            Symmetry::Reverse => r((x, y), w),
            Symmetry::Complement => c((x, y), h),
            Symmetry::Inverse => t((x, y)),
            Symmetry::ReverseComplement => c(r((x, y), w), h),
            Symmetry::InverseReverse => r(t((x, y)), h),
            Symmetry::ReverseInverse => t(r((x, y), w)),
            Symmetry::ReverseInverseReverse => r(t(r((x, y), w)), h),
        }
    }

    /// Whether the symmetry swaps the horizontal and vertical axes.
    pub fn transposes(self) -> bool {
        matches!(
            self,
            Symmetry::Inverse
                | Symmetry::InverseReverse
                | Symmetry::ReverseInverse
                | Symmetry::ReverseInverseReverse
        )
    }

    pub fn inverse(self) -> Symmetry {
        match self {
            Symmetry::InverseReverse => Symmetry::ReverseInverse,
            Symmetry::ReverseInverse => Symmetry::InverseReverse,
            s => s,
        }
    }
}

impl FromStr for Symmetry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "id" | "identity" => Symmetry::Identity,
            "r" | "reverse" => Symmetry::Reverse,
            "c" | "complement" => Symmetry::Complement,
            "i" | "inverse" => Symmetry::Inverse,
            "rc" => Symmetry::ReverseComplement,
            "ir" => Symmetry::InverseReverse,
            "ri" => Symmetry::ReverseInverse,
            "rir" => Symmetry::ReverseInverseReverse,
            _ => return Err(crate::error::parse_err(s, "unknown symmetry")),
        })
    }
}

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation {
            values: cur.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}
