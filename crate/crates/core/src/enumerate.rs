//! Brute-force generation of permutation classes and basis discovery.
//!
//! Members of length `k` are produced by inserting a new maximum into every
//! member of length `k - 1`, which reaches every member because classes are
//! closed under deleting the maximum.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{self, contains_through_max, Decomposability, Permutation};

type Predicate = dyn Fn(&Permutation) -> bool + Send + Sync;

/// A permutation class given by a basis or by a downward-closed predicate.
#[derive(Clone)]
pub enum ClassSpec {
    Basis(Vec<Permutation>),
    Membership(Arc<Predicate>),
}

impl ClassSpec {
    pub fn basis(basis: Vec<Permutation>) -> Self {
        ClassSpec::Basis(basis)
    }

    pub fn membership(f: impl Fn(&Permutation) -> bool + Send + Sync + 'static) -> Self {
        ClassSpec::Membership(Arc::new(f))
    }

    /// Whether `p` belongs to the class.
    pub fn contains(&self, p: &Permutation) -> bool {
        match self {
            ClassSpec::Basis(b) => perm::avoids_all(p, b),
            ClassSpec::Membership(f) => f(p),
        }
    }

    /// Membership test for a one-point extension of a known member by a new maximum.
    fn accepts_extension(&self, child: &Permutation) -> bool {
        match self {
            ClassSpec::Basis(b) => b.iter().all(|q| !contains_through_max(child, q)),
            ClassSpec::Membership(f) => f(child),
        }
    }
}

impl fmt::Debug for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Basis(b) => {
                let parts: Vec<String> = b.iter().map(|p| p.to_string()).collect();
                write!(f, "Av({})", parts.join(","))
            }
            ClassSpec::Membership(_) => write!(f, "ClassSpec::Membership(..)"),
        }
    }
}

/// Extends the sorted level of length `k - 1` members to length `k`.
fn next_level(spec: &ClassSpec, prev: &[Permutation]) -> Result<Vec<Permutation>> {
    let mut level: Vec<Permutation> = prev
        .par_iter()
        .flat_map_iter(|p| {
            (0..=p.len())
                .map(move |i| p.insert_max(i))
                .filter(|c| spec.accepts_extension(c))
        })
        .collect();
    level.par_sort_unstable();
    level.dedup();
    if let ClassSpec::Membership(_) = spec {
        check_downward_closed(prev, &level)?;
    }
    Ok(level)
}

fn check_downward_closed(prev: &[Permutation], level: &[Permutation]) -> Result<()> {
    if prev.is_empty() || prev[0].is_empty() {
        return Ok(());
    }
    let known: HashSet<&Permutation> = prev.iter().collect();
    let bad = level.par_iter().find_map_any(|p| {
        p.deletions()
            .into_iter()
            .find(|d| !known.contains(d))
            .map(|d| (p.clone(), d))
    });
    match bad {
        Some((member, deletion)) => Err(Error::NotDownwardClosed {
            member: member.to_string(),
            deletion: deletion.to_string(),
        }),
        None => Ok(()),
    }
}

/// Members of each length `0..=n_max`, each level in lexicographic order.
pub fn generate_levels(spec: &ClassSpec, n_max: usize) -> Result<Vec<Vec<Permutation>>> {
    let mut levels = vec![vec![Permutation::default()]];
    for _ in 1..=n_max {
        let next = next_level(spec, levels.last().unwrap())?;
        levels.push(next);
    }
    Ok(levels)
}

/// Members of length `n` in lexicographic order.
pub fn generate(spec: &ClassSpec, n: usize) -> Result<Vec<Permutation>> {
    Ok(generate_levels(spec, n)?.pop().unwrap())
}

/// Number of members of each length `1..=n_max`.
pub fn count_series(spec: &ClassSpec, n_max: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(n_max);
    let mut level = vec![Permutation::default()];
    for _ in 1..=n_max {
        level = next_level(spec, &level)?;
        out.push(level.len() as u64);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    Simple,
    SumIndecomposable,
    SkewIndecomposable,
    StrongIndecomposable,
}

impl Filter {
    pub fn matches(self, p: &Permutation) -> bool {
        match self {
            Filter::Simple => perm::is_simple(p),
            Filter::SumIndecomposable => perm::sum_components(p).len() == 1,
            Filter::SkewIndecomposable => perm::skew_components(p).len() == 1,
            Filter::StrongIndecomposable => {
                perm::classify_decomposability(p) == Decomposability::StrongIndecomposable
            }
        }
    }
}

/// Counts of members passing `filter`, lengths `1..=n_max`.
pub fn count_filtered(spec: &ClassSpec, n_max: usize, filter: Filter) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(n_max);
    let mut level = vec![Permutation::default()];
    for _ in 1..=n_max {
        level = next_level(spec, &level)?;
        out.push(level.par_iter().filter(|p| filter.matches(p)).count() as u64);
    }
    Ok(out)
}

/// Minimal non-members of length at most `len_max`, sorted by length then
/// lexicographically. Every element's one-point deletions are members.
pub fn compute_basis(
    membership: impl Fn(&Permutation) -> bool + Send + Sync,
    len_max: usize,
) -> Vec<Permutation> {
    let mut basis = Vec::new();
    let mut prev: Vec<Permutation> = vec![Permutation::default()];
    for _ in 1..=len_max {
        let known: HashSet<&Permutation> = prev.iter().collect();
        let mut candidates: Vec<Permutation> = prev
            .par_iter()
            .flat_map_iter(|p| (0..=p.len()).map(move |i| p.insert_max(i)))
            .collect();
        candidates.par_sort_unstable();
        candidates.dedup();
        let (members, non): (Vec<_>, Vec<_>) =
            candidates.into_par_iter().partition(|c| membership(c));
        let mut minimal: Vec<Permutation> = non
            .into_par_iter()
            .filter(|c| c.deletions().iter().all(|d| known.contains(d)))
            .collect();
        minimal.sort();
        basis.extend(minimal);
        drop(known);
        // non-members with a non-member deletion are not members either, so
        // every member appears among the insertions into members
        prev = members;
    }
    basis
}

/// Basis elements longer than `len`; nonempty means the basis search found
/// something beyond the expected range.
pub fn basis_elements_longer_than(basis: &[Permutation], len: usize) -> Vec<Permutation> {
    basis.iter().filter(|p| p.len() > len).cloned().collect()
}

/// All permutations of length `n` passing `keep`, by filtering `n!` candidates.
pub fn filter_all(n: usize, keep: impl Fn(&Permutation) -> bool + Sync) -> Vec<Permutation> {
    perm::all_permutations(n)
        .into_par_iter()
        .filter(|p| keep(p))
        .collect()
}

/// Golden-file form: one permutation per line, entries space separated.
pub fn write_golden(perms: &[Permutation]) -> String {
    let mut s = String::new();
    for p in perms {
        let parts: Vec<String> = p.values().iter().map(|v| v.to_string()).collect();
        s.push_str(&parts.join(" "));
        s.push('\n');
    }
    s
}

/// Count series as CSV `n,count` with a header line.
pub fn series_csv(counts: &[u64]) -> String {
    let mut s = String::from("n,count\n");
    for (i, c) in counts.iter().enumerate() {
        s.push_str(&format!("{},{}\n", i + 1, c));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_list;

    fn av(s: &str) -> ClassSpec {
        ClassSpec::basis(parse_list(s).unwrap())
    }

    #[test]
    fn small_series() {
        assert_eq!(count_series(&av(""), 4).unwrap(), vec![1, 2, 6, 24]);
        assert_eq!(count_series(&av("21"), 5).unwrap(), vec![1; 5]);
        assert_eq!(
            generate(&av("21"), 5).unwrap(),
            vec!["12345".parse().unwrap()]
        );
        assert_eq!(
            count_series(&av("2143 4321"), 7).unwrap(),
            vec![1, 2, 6, 22, 86, 333, 1235]
        );
    }

    #[test]
    fn generation_matches_filter() {
        for basis in ["2143 4321", "2143 4312", "1324 4312", "123", "2413 3142"] {
            let spec = av(basis);
            let b = parse_list(basis).unwrap();
            let levels = generate_levels(&spec, 7).unwrap();
            for (n, level) in levels.iter().enumerate().skip(1) {
                assert_eq!(level, &filter_all(n, |p| p.avoids_all(&b)), "{basis} n={n}");
            }
        }
    }

    #[test]
    fn predicate_generation() {
        let spec = ClassSpec::membership(|p: &Permutation| !p.contains(&"231".parse().unwrap()));
        // Catalan numbers
        assert_eq!(
            count_series(&spec, 7).unwrap(),
            vec![1, 2, 5, 14, 42, 132, 429]
        );
    }

    #[test]
    fn non_downward_closed_predicate_detected() {
        // members of length 3 whose deletions include 21, which is excluded
        let spec = ClassSpec::membership(|p: &Permutation| p.len() != 2 || p.values() == [1, 2]);
        let err = count_series(&spec, 3).unwrap_err();
        assert!(matches!(err, Error::NotDownwardClosed { .. }));
    }

    #[test]
    fn filters() {
        let all = av("");
        assert_eq!(
            count_filtered(&all, 3, Filter::Simple).unwrap(),
            vec![1, 2, 0]
        );
        assert_eq!(
            count_filtered(&all, 5, Filter::Simple).unwrap()[3..],
            [2, 6]
        );
        // sum-indecomposables: 1, 1, 3, 13, 71
        assert_eq!(
            count_filtered(&all, 5, Filter::SumIndecomposable).unwrap(),
            vec![1, 1, 3, 13, 71]
        );
    }

    #[test]
    fn basis_of_wedge_like_predicate() {
        let b = parse_list("213 312").unwrap();
        let basis = compute_basis(|p: &Permutation| p.avoids_all(&b), 5);
        assert_eq!(basis, b);
        assert!(compute_basis(|_: &Permutation| true, 5).is_empty());
    }

    #[test]
    fn counts_symmetric_under_symmetries() {
        let b = parse_list("2143 4312").unwrap();
        let base = count_series(&av("2143 4312"), 7).unwrap();
        for s in perm::Symmetry::ALL {
            let img: Vec<Permutation> = b.iter().map(|p| s.apply(p)).collect();
            assert_eq!(count_series(&ClassSpec::basis(img), 7).unwrap(), base);
        }
    }

    #[test]
    fn golden_formats() {
        let ps = parse_list("12 21").unwrap();
        assert_eq!(write_golden(&ps), "1 2\n2 1\n");
        assert_eq!(series_csv(&[1, 2]), "n,count\n1,1\n2,2\n");
    }
}
