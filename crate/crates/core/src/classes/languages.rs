//! Regular languages in bijection with the four grid classes whose union is
//! Av(2143, 4321), and with their intersections.

use crate::automata::Dfa;
use crate::enumerate::compute_basis;
use crate::error::Result;
use crate::grid::GriddingMatrix;
use crate::perm::{Permutation, Symmetry};

use super::resources;
use super::scheme::EncodingScheme;

/// Basis search depth. Every basis element of A, B, C and D is much shorter.
pub const BASIS_SEARCH_LEN: usize = 8;

const ABCD: [char; 4] = ['a', 'b', 'c', 'd'];
const ABC: [char; 3] = ['a', 'b', 'c'];

/// How the required pairs `cb` and `ab` must occur in the 321-containing
/// words of B.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairReading {
    /// anywhere, in order
    Subword,
    /// adjacent
    Factor,
}

/// A grid class with a language of unique encodings and its basis.
#[derive(Clone, Debug)]
pub struct ClassLanguage {
    pub name: String,
    pub scheme: EncodingScheme,
    pub dfa: Dfa,
    pub basis: Vec<Permutation>,
}

impl ClassLanguage {
    pub fn decode(&self, word: &str) -> Permutation {
        self.scheme
            .decode(word)
            .expect("language words use the scheme alphabet")
    }
}

fn nonempty(alphabet: &[char]) -> Dfa {
    Dfa::all_words(alphabet, alphabet)
        .difference(&Dfa::all_words(&[], alphabet))
        .unwrap()
}

fn contains(w: &str, alphabet: &[char]) -> Dfa {
    Dfa::subword_containment(w, alphabet).unwrap()
}

/// Words over {b, c} with at least two factors `cb`; these never overlap.
fn two_cb_factors() -> Dfa {
    "alphabet: a b c d
     initial: q0
     accepting: q2
     q0 b q0
     q0 c q0c
     q0c c q0c
     q0c b q1
     q1 b q1
     q1 c q1c
     q1c c q1c
     q1c b q2
     q2 b q2
     q2 c q2"
        .parse()
        .unwrap()
}

fn required_pair(w: &str, reading: PairReading) -> Dfa {
    match reading {
        PairReading::Subword => contains(w, &ABCD),
        PairReading::Factor => Dfa::factor_containment(w, &ABCD).unwrap(),
    }
}

/// The canonical words of B.
///
/// A permutation involving 321 is written in `{a,b,c}* d*` with `c` before
/// some `b`, `a` before some `b` and no factor `ca`. The 321-avoiders lie in
/// the grid class of `(1 1)` (letters a, b) or of its transpose (letters b,
/// c). Increasing ones are `b^n`; others of `(1 1)` use a word containing
/// `ab`; the rest need two descents in the column and so two factors `cb`.
pub fn language_b_dfa(reading: PairReading) -> Dfa {
    let involving = Dfa::star_sequence(&[&ABC, &['d']], &ABCD)
        .intersect(&required_pair("cb", reading))
        .unwrap()
        .intersect(&required_pair("ab", reading))
        .unwrap()
        .difference(&Dfa::factor_containment("ca", &ABCD).unwrap())
        .unwrap();
    let increasing = Dfa::all_words(&['b'], &ABCD);
    let row = Dfa::all_words(&['a', 'b'], &ABCD)
        .intersect(&contains("ab", &ABCD))
        .unwrap();
    let column = Dfa::all_words(&['b', 'c'], &ABCD)
        .intersect(&two_cb_factors())
        .unwrap();
    involving
        .union(&increasing)
        .unwrap()
        .union(&row)
        .unwrap()
        .union(&column)
        .unwrap()
        .intersect(&nonempty(&ABCD))
        .unwrap()
        .minimize()
}

/// Canonical words of the grid class of `(1 1 1)`, the permutations with at
/// most two descents. A word lists values upwards and names their columns;
/// a letter that could move one column left without changing the
/// permutation is pushed there, so a column is used only after a descent
/// into it has been witnessed.
pub fn three_runs_dfa() -> Dfa {
    let identity = Dfa::all_words(&['a'], &ABC);
    let no_c = Dfa::all_words(&['a', 'b'], &ABC);
    let rest = contains("ba", &ABC)
        .intersect(&no_c.union(&contains("cb", &ABC)).unwrap())
        .unwrap();
    identity
        .union(&rest)
        .unwrap()
        .intersect(&nonempty(&ABC))
        .unwrap()
        .minimize()
}

pub fn in_av2143_4321(p: &Permutation) -> bool {
    p.avoids_all(&[
        Permutation::new(vec![2, 1, 4, 3]).unwrap(),
        Permutation::decreasing(4),
    ])
}

pub fn descents(p: &Permutation) -> usize {
    p.values().windows(2).filter(|w| w[0] > w[1]).count()
}

/// Membership in C, the part of Av(2143, 4321) with at most two descents.
pub fn in_c(p: &Permutation) -> bool {
    descents(p) <= 2 && in_av2143_4321(p)
}

pub fn in_d(p: &Permutation) -> bool {
    in_c(&p.inverse())
}

fn grid_basis(m: &GriddingMatrix) -> Vec<Permutation> {
    compute_basis(|p: &Permutation| m.contains(p), BASIS_SEARCH_LEN)
}

pub fn language_b() -> Result<ClassLanguage> {
    let scheme = resources::scheme("B")?;
    let basis = grid_basis(scheme.matrix());
    Ok(ClassLanguage {
        name: "B".into(),
        scheme,
        dfa: language_b_dfa(PairReading::Subword),
        basis,
    })
}

/// A is the half-turn image of B, so B's words serve with a rotated scheme.
pub fn language_a() -> Result<ClassLanguage> {
    let b = language_b()?;
    Ok(ClassLanguage {
        name: "A".into(),
        scheme: b.scheme.transform(Symmetry::ReverseComplement),
        basis: b
            .basis
            .iter()
            .map(|p| p.apply(Symmetry::ReverseComplement))
            .collect(),
        dfa: b.dfa,
    })
}

/// Drops the accepted words with a subword that encodes an element of `basis`.
pub fn restrict(dfa: &Dfa, scheme: &EncodingScheme, basis: &[Permutation]) -> Result<Dfa> {
    let mut patterns: Vec<String> = basis.iter().flat_map(|p| scheme.encodings_of(p)).collect();
    patterns.sort();
    patterns.dedup();
    let forbidden = Dfa::contains_any_subword(&patterns, &scheme.alphabet())?;
    Ok(dfa.difference(&forbidden)?.minimize())
}

pub fn language_c() -> Result<ClassLanguage> {
    let scheme = resources::scheme("one_one_one")?;
    let basis = compute_basis(in_c, BASIS_SEARCH_LEN);
    let dfa = restrict(&three_runs_dfa(), &scheme, &basis)?;
    Ok(ClassLanguage {
        name: "C".into(),
        scheme,
        dfa,
        basis,
    })
}

/// D is the inverse of C.
pub fn language_d() -> Result<ClassLanguage> {
    let c = language_c()?;
    Ok(ClassLanguage {
        name: "D".into(),
        scheme: c.scheme.transform(Symmetry::Inverse),
        basis: c.basis.iter().map(|p| p.inverse()).collect(),
        dfa: c.dfa,
    })
}

pub fn all_languages() -> Result<Vec<ClassLanguage>> {
    Ok(vec![
        language_a()?,
        language_b()?,
        language_c()?,
        language_d()?,
    ])
}

/// Words of the first class whose permutations also lie in the others.
pub fn intersection(classes: &[&ClassLanguage]) -> Result<Dfa> {
    let (first, rest) = classes.split_first().expect("at least one class");
    let basis: Vec<Permutation> = rest.iter().flat_map(|c| c.basis.iter().cloned()).collect();
    restrict(&first.dfa, &first.scheme, &basis)
}
