//! Exhaustive checks: the structure results, bijectivity of every encoding,
//! and brute-force series for the pipeline stages.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::automata::Dfa;
use crate::enumerate::{filter_all, generate_levels, ClassSpec};
use crate::error::Result;
use crate::grid::GriddingMatrix;
use crate::perm::{self, decompose, parse_list, Decomposability, Permutation, Symmetry};

use super::languages;
use super::pipelines::{restrict_ends, Pipeline, PipelineId};
use super::resources;
use super::scheme::EncodingScheme;

/// Simple permutations of length `n`, computed once per length.
pub fn simples_of_length(n: usize) -> Arc<Vec<Permutation>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Permutation>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v = Arc::new(filter_all(n, perm::is_simple));
    cache.lock().unwrap().insert(n, v.clone());
    v
}

type Levels = Arc<Vec<Vec<Permutation>>>;

/// Members of `Av(basis)` by length, computed once per basis and reused for
/// shorter requests.
pub fn class_levels(basis: &str, n_max: usize) -> Result<Levels> {
    static CACHE: OnceLock<Mutex<HashMap<String, Levels>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(basis) {
        if v.len() > n_max {
            return Ok(v.clone());
        }
    }
    let v = Arc::new(generate_levels(
        &ClassSpec::basis(parse_list(basis)?),
        n_max,
    )?);
    cache.lock().unwrap().insert(basis.to_string(), v.clone());
    Ok(v)
}

fn matrix(name: &str) -> Result<GriddingMatrix> {
    resources::matrix(name)
}

/// Grid membership, memoized across all checks: the same permutations are
/// tested against the same matrices many times.
pub fn in_grid(m: &GriddingMatrix, p: &Permutation) -> bool {
    static CACHE: OnceLock<Mutex<HashMap<(String, Permutation), bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (m.to_string(), p.clone());
    if let Some(&b) = cache.lock().unwrap().get(&key) {
        return b;
    }
    let b = m.contains(p);
    cache.lock().unwrap().insert(key, b);
    b
}

fn rir(m: &GriddingMatrix) -> GriddingMatrix {
    m.apply(Symmetry::ReverseInverseReverse)
}

// ---------------------------------------------------------------------------
// structure results

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureTheorem {
    /// Av(2143, 4321) is the union of A, B, C and D
    UnionAbcd,
    /// Av(321, 2143) is the union of Grid(1 1) and its transpose
    Av321_2143,
    /// Av(2143, 4312) is the union of E and F
    EUnionF,
    /// Av(2143, 4312) lies in the 2×2 container
    TwoByTwoContainer,
    /// simples of Av(1324, 4312) lie in T, F, S or X
    SimplesInTfsx,
    /// simples of E ∩ F lie in one of two small classes
    EcapFSimples,
}

impl StructureTheorem {
    pub const ALL: [StructureTheorem; 6] = [
        StructureTheorem::UnionAbcd,
        StructureTheorem::Av321_2143,
        StructureTheorem::EUnionF,
        StructureTheorem::TwoByTwoContainer,
        StructureTheorem::SimplesInTfsx,
        StructureTheorem::EcapFSimples,
    ];

    pub fn key(self) -> &'static str {
        match self {
            StructureTheorem::UnionAbcd => "union_ABCD",
            StructureTheorem::Av321_2143 => "av321_2143",
            StructureTheorem::EUnionF => "E_union_F",
            StructureTheorem::TwoByTwoContainer => "2x2_container",
            StructureTheorem::SimplesInTfsx => "simples_in_TFSX",
            StructureTheorem::EcapFSimples => "EcapF_simples",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            StructureTheorem::UnionAbcd => "Av(2143,4321) = A ∪ B ∪ C ∪ D",
            StructureTheorem::Av321_2143 => "Av(321,2143) = Grid(1 1) ∪ Grid(1 1)ᵀ",
            StructureTheorem::EUnionF => "Av(2143,4312) = E ∪ F",
            StructureTheorem::TwoByTwoContainer => "Av(2143,4312) ⊆ Grid(1 1 / 1 -1)",
            StructureTheorem::SimplesInTfsx => "simples of Av(1324,4312) ⊆ T ∪ F ∪ S ∪ X",
            StructureTheorem::EcapFSimples => "simples of E ∩ F ⊆ two dotted 3×3 classes",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        StructureTheorem::ALL.into_iter().find(|t| t.key() == key)
    }
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub theorem: StructureTheorem,
    pub n_max: usize,
    /// permutations examined per length `0..=n_max`
    pub checked: Vec<usize>,
    pub counterexamples: usize,
    pub first_counterexample: Option<Permutation>,
    /// for equalities: the basis elements found in one of the grid classes,
    /// which would break the reverse inclusion
    pub basis_in_union: Vec<Permutation>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0 && self.basis_in_union.is_empty()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}), n <= {}: {} checked, {} counterexamples",
            self.theorem.key(),
            self.theorem.statement(),
            self.n_max,
            self.checked.iter().sum::<usize>(),
            self.counterexamples
        )?;
        if let Some(p) = &self.first_counterexample {
            write!(f, ", first {p}")?;
        }
        if !self.basis_in_union.is_empty() {
            let s: Vec<String> = self.basis_in_union.iter().map(|p| p.to_string()).collect();
            write!(f, ", basis elements inside the union: {}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Checks `keep(p) ⇒ any(p ∈ m)` over `candidates` by length.
fn containment(
    theorem: StructureTheorem,
    levels: &[Vec<Permutation>],
    n_max: usize,
    keep: impl Fn(&Permutation) -> bool + Sync,
    union: &[GriddingMatrix],
) -> StructureReport {
    let mut checked = Vec::new();
    let mut bad: Vec<Permutation> = Vec::new();
    for level in &levels[..=n_max] {
        let considered: Vec<&Permutation> = level.par_iter().filter(|p| keep(p)).collect();
        checked.push(considered.len());
        let mut misses: Vec<Permutation> = considered
            .into_par_iter()
            .filter(|p| !union.iter().any(|m| in_grid(m, p)))
            .cloned()
            .collect();
        misses.sort();
        bad.extend(misses);
    }
    StructureReport {
        theorem,
        n_max,
        checked,
        counterexamples: bad.len(),
        first_counterexample: bad.into_iter().next(),
        basis_in_union: Vec::new(),
    }
}

/// Grid classes are closed under containment, so the union lies inside
/// `Av(basis)` exactly when no basis element is griddable.
fn basis_in_union(basis: &str, union: &[GriddingMatrix]) -> Result<Vec<Permutation>> {
    Ok(parse_list(basis)?
        .into_iter()
        .filter(|b| union.iter().any(|m| in_grid(m, b)))
        .collect())
}

fn simple_long(p: &Permutation) -> bool {
    p.len() >= 4 && p.is_simple()
}

pub fn verify_structure(theorem: StructureTheorem, n_max: usize) -> Result<StructureReport> {
    use StructureTheorem::*;
    let report = match theorem {
        UnionAbcd => {
            let union = ["A", "B", "C", "D"]
                .map(matrix)
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            let levels = class_levels("2143 4321", n_max)?;
            let mut r = containment(theorem, &levels, n_max, |_| true, &union);
            r.basis_in_union = basis_in_union("2143 4321", &union)?;
            r
        }
        Av321_2143 => {
            let m = matrix("one_one")?;
            let union = vec![m.transpose(), m];
            let levels = class_levels("321 2143", n_max)?;
            let mut r = containment(theorem, &levels, n_max, |_| true, &union);
            r.basis_in_union = basis_in_union("321 2143", &union)?;
            r
        }
        EUnionF => {
            let union = vec![matrix("E")?, matrix("F")?];
            let levels = class_levels("2143 4312", n_max)?;
            let mut r = containment(theorem, &levels, n_max, |_| true, &union);
            r.basis_in_union = basis_in_union("2143 4312", &union)?;
            r
        }
        TwoByTwoContainer => {
            let levels = class_levels("2143 4312", n_max)?;
            containment(theorem, &levels, n_max, |_| true, &[matrix("two_by_two")?])
        }
        SimplesInTfsx => {
            let union = ["T", "4x7", "S", "X"]
                .map(matrix)
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            let levels = class_levels("1324 4312", n_max)?;
            containment(theorem, &levels, n_max, simple_long, &union)
        }
        EcapFSimples => {
            let (e, f) = (matrix("E")?, matrix("F")?);
            let union = vec![matrix("EF_2413")?, matrix("EF_3142")?];
            let levels = class_levels("2143 4312", n_max)?;
            containment(
                theorem,
                &levels,
                n_max,
                |p| simple_long(p) && in_grid(&e, p) && in_grid(&f, p),
                &union,
            )
        }
    };
    Ok(report)
}

// ---------------------------------------------------------------------------
// encodings

/// Where the intended permutations of an encoding are drawn from.
enum Candidates {
    /// members of an avoidance class
    Class(&'static str),
    /// simple permutations of each length
    Simples,
}

type Target = Box<dyn Fn(&Permutation) -> bool + Send + Sync>;

/// An automaton, its scheme and the set it is meant to encode bijectively.
pub struct Encoding {
    pub name: String,
    pub dfa: Dfa,
    pub scheme: EncodingScheme,
    /// shortest permutation length covered; shorter accepted words are
    /// outside the claim
    pub min_len: usize,
    candidates: Candidates,
    target: Target,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingLength {
    /// permutation length
    pub n: usize,
    pub words: usize,
    pub distinct: usize,
    pub outside_target: usize,
    pub target: usize,
    pub series: BigInt,
}

impl EncodingLength {
    pub fn passed(&self) -> bool {
        self.words == self.distinct
            && self.outside_target == 0
            && self.distinct == self.target
            && self.series == BigInt::from(self.words)
    }
}

#[derive(Clone, Debug)]
pub struct EncodingReport {
    pub name: String,
    pub lengths: Vec<EncodingLength>,
}

impl EncodingReport {
    pub fn passed(&self) -> bool {
        self.lengths.iter().all(EncodingLength::passed)
    }
}

impl fmt::Display for EncodingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.lengths.iter().map(|l| l.words.to_string()).collect();
        write!(f, "{}: words {}", self.name, counts.join(","))?;
        for l in self.lengths.iter().filter(|l| !l.passed()) {
            write!(
                f,
                "; n={} words={} distinct={} outside={} target={} series={}",
                l.n, l.words, l.distinct, l.outside_target, l.target, l.series
            )?;
        }
        Ok(())
    }
}

fn simples_in(inside: Vec<GriddingMatrix>, outside: Vec<GriddingMatrix>) -> Target {
    Box::new(move |p| {
        p.len() >= 4
            && inside.iter().all(|m| in_grid(m, p))
            && !outside.iter().any(|m| in_grid(m, p))
    })
}

/// Every automaton of the three enumerations with its intended set.
pub fn encodings() -> Result<Vec<Encoding>> {
    let mut out = Vec::new();
    for lang in languages::all_languages()? {
        let name = format!("language {}", lang.name);
        let target: Target = match lang.name.as_str() {
            "C" => Box::new(languages::in_c),
            "D" => Box::new(languages::in_d),
            _ => {
                let m = lang.scheme.matrix().clone();
                Box::new(move |p| in_grid(&m, p))
            }
        };
        out.push(Encoding {
            name,
            dfa: lang.dfa,
            scheme: lang.scheme,
            min_len: 1,
            candidates: Candidates::Class("2143 4321"),
            target,
        });
    }
    let e = matrix("E")?;
    let e2 = e.clone();
    out.push(Encoding {
        name: "E simples".into(),
        dfa: resources::dfa("E_simples")?,
        scheme: resources::scheme("E")?,
        min_len: 1,
        candidates: Candidates::Simples,
        target: Box::new(move |p| in_grid(&e2, p)),
    });
    let f = matrix("F")?;
    let p2413: Permutation = "2413".parse()?;
    out.push(Encoding {
        name: "E∩F simples containing 2413".into(),
        dfa: resources::dfa("EF_2413")?,
        scheme: resources::scheme("EF_2413")?,
        min_len: 4,
        candidates: Candidates::Simples,
        target: Box::new(move |p| {
            p.len() >= 4 && in_grid(&e, p) && in_grid(&f, p) && p.contains(&p2413)
        }),
    });
    let m24 = matrix("2x4")?;
    let wedge = matrix("wedge_simple")?;
    let simple_encodings = [
        ("T", "T", simples_in(vec![matrix("T")?], vec![])),
        ("2×4", "2x4", simples_in(vec![m24.clone()], vec![])),
        (
            "4×7 without 2×4",
            "4x7",
            simples_in(vec![matrix("4x7")?], vec![m24.clone()]),
        ),
        (
            "3×3 without wedge simples",
            "3x3_w",
            simples_in(vec![matrix("3x3")?], vec![rir(&wedge), wedge]),
        ),
        (
            "6×6",
            "6x6",
            simples_in(vec![matrix("X")?], vec![matrix("3x3")?, rir(&m24), m24]),
        ),
    ];
    for (name, dfa, target) in simple_encodings {
        let scheme = match dfa {
            "3x3_w" => "3x3",
            "6x6" => "X",
            s => s,
        };
        out.push(Encoding {
            name: name.into(),
            dfa: resources::dfa(dfa)?,
            scheme: resources::scheme(scheme)?,
            min_len: 4,
            candidates: Candidates::Simples,
            target,
        });
    }
    Ok(out)
}

pub fn verify_encoding(enc: &Encoding, n_max: usize) -> Result<EncodingReport> {
    let offset = enc.scheme.fixed_points().len();
    let series = enc.dfa.gf().series(n_max)?;
    let levels = match enc.candidates {
        Candidates::Class(basis) => Some(class_levels(basis, n_max)?),
        Candidates::Simples => None,
    };
    let mut lengths = Vec::new();
    for n in enc.min_len.max(offset + 1)..=n_max {
        let words = enc.dfa.words(n - offset);
        let perms: Vec<Permutation> = words
            .par_iter()
            .map(|w| enc.scheme.decode(w))
            .collect::<Result<_>>()?;
        let distinct: HashSet<&Permutation> = perms.iter().collect();
        let outside_target = perms.par_iter().filter(|p| !(enc.target)(p)).count();
        let target = match &levels {
            Some(l) => l[n].par_iter().filter(|p| (enc.target)(p)).count(),
            None => simples_of_length(n)
                .par_iter()
                .filter(|p| (enc.target)(p))
                .count(),
        };
        lengths.push(EncodingLength {
            n,
            words: words.len(),
            distinct: distinct.len(),
            outside_target,
            target,
            series: series[n - offset].clone(),
        });
    }
    Ok(EncodingReport {
        name: enc.name.clone(),
        lengths,
    })
}

// ---------------------------------------------------------------------------
// brute-force series for pipeline stages

/// What a stage counts, phrased without generating functions.
enum Oracle {
    /// members of the pipeline's class
    Class,
    /// members of another avoidance class
    Other(&'static str),
    /// members of another class passing a decomposability filter
    OtherFiltered(&'static str, Shape),
    Shape(Shape),
    /// simple members of the class of length at least 4
    ClassSimples,
    /// members of the class griddable in every listed matrix
    MembersIn(Vec<GriddingMatrix>),
    /// simple permutations of length at least 4 inside all of the first
    /// matrices and none of the second
    SimplesIn(Vec<GriddingMatrix>, Vec<GriddingMatrix>),
    /// members whose simple skeleton (length at least 4) lies in all of the
    /// first matrices and none of the second
    SkeletonIn(Vec<GriddingMatrix>, Vec<GriddingMatrix>),
    /// members whose skeleton is one of the given simples
    SkeletonSet(HashSet<Permutation>),
}

#[derive(Clone, Copy)]
enum Shape {
    SumDecomposable,
    SkewDecomposable,
    SumIndecomposable,
    /// skew-indecomposable, of length at least `min`
    SkewIndecomposable {
        min: usize,
    },
    /// strong-indecomposable of length at least 2
    StrongIndecomposable,
}

impl Shape {
    fn matches(self, p: &Permutation) -> bool {
        match self {
            Shape::SumDecomposable => {
                perm::classify_decomposability(p) == Decomposability::SumDecomposable
            }
            Shape::SkewDecomposable => {
                perm::classify_decomposability(p) == Decomposability::SkewDecomposable
            }
            Shape::SumIndecomposable => perm::sum_components(p).len() == 1,
            Shape::SkewIndecomposable { min } => {
                p.len() >= min && perm::skew_components(p).len() == 1
            }
            Shape::StrongIndecomposable => {
                p.len() >= 2
                    && perm::classify_decomposability(p) == Decomposability::StrongIndecomposable
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesCheck {
    pub name: String,
    pub key: String,
    /// coefficients of `x^1..x^n_max`
    pub series: Vec<BigInt>,
    pub brute: Vec<u64>,
}

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.series.len() == self.brute.len()
            && self
                .series
                .iter()
                .zip(&self.brute)
                .all(|(a, &b)| *a == BigInt::from(b))
    }
}

impl fmt::Display for SeriesCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.series.iter().map(|c| c.to_string()).collect();
        write!(f, "{}: {}", self.key, s.join(","))?;
        if !self.passed() {
            let b: Vec<String> = self.brute.iter().map(|c| c.to_string()).collect();
            write!(f, " (brute force {})", b.join(","))?;
        }
        Ok(())
    }
}

/// Simple permutations encoded by the words of `dfa` that begin with
/// `prefix` and end with `suffix`, of length at least 4 and at most `n_max`.
fn decoded_simples(
    dfa: &Dfa,
    scheme: &EncodingScheme,
    prefix: &str,
    suffix: &str,
    n_max: usize,
) -> Result<HashSet<Permutation>> {
    let d = restrict_ends(dfa, prefix, suffix)?;
    let mut out = HashSet::new();
    for n in 4..=n_max {
        for w in d.words(n) {
            out.insert(scheme.decode(&w)?);
        }
    }
    Ok(out)
}

fn oracles(id: PipelineId, n_max: usize) -> Result<HashMap<String, Oracle>> {
    let mut o: HashMap<String, Oracle> = HashMap::new();
    let mut put = |k: &str, v: Oracle| {
        o.insert(k.to_string(), v);
    };
    match id {
        PipelineId::Av2143_4321 => {
            let names = ["A", "B", "C", "D"];
            let ms = names.map(matrix).into_iter().collect::<Result<Vec<_>>>()?;
            for mask in 1usize..16 {
                let idx: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
                let key: String = idx.iter().map(|&i| names[i]).collect();
                put(
                    &format!("f_{key}"),
                    Oracle::MembersIn(idx.iter().map(|&i| ms[i].clone()).collect()),
                );
            }
            put("f_2143_4321", Oracle::Class);
        }
        PipelineId::Av2143_4312 => {
            let (e, f) = (matrix("E")?, matrix("F")?);
            put("s_E", Oracle::SimplesIn(vec![e.clone()], vec![]));
            put(
                "s_EF",
                Oracle::SimplesIn(vec![e.clone(), f.clone()], vec![]),
            );
            put("s_C", Oracle::ClassSimples);
            put("input_av312_2143", Oracle::Other("312 2143"));
            put(
                "g_skew_indec",
                Oracle::OtherFiltered("312 2143", Shape::SkewIndecomposable { min: 2 }),
            );
            put("f_ind", Oracle::Shape(Shape::StrongIndecomposable));
            put("f_skew_2143_4312", Oracle::Shape(Shape::SkewDecomposable));
            put("f_sum_2143_4312", Oracle::Shape(Shape::SumDecomposable));
            put("f_2143_4312", Oracle::Class);
        }
        PipelineId::Av1324_4312 => {
            let (t, m24, m47, x, m33, m46) = (
                matrix("T")?,
                matrix("2x4")?,
                matrix("4x7")?,
                matrix("X")?,
                matrix("3x3")?,
                matrix("4x6")?,
            );
            let wedge = matrix("wedge_simple")?;
            let wedges = vec![wedge.clone(), rir(&wedge)];
            put("input_av213_312", Oracle::Other("213 312"));
            put("input_av213_4312", Oracle::Other("213 4312"));
            put("input_av312_1324", Oracle::Other("312 1324"));
            put(
                "f_sum_indec_G",
                Oracle::OtherFiltered("213 4312", Shape::SumIndecomposable),
            );
            put("s_T", Oracle::SimplesIn(vec![t.clone()], vec![]));
            put("i_T", Oracle::SkeletonIn(vec![t], vec![]));
            put("s_2x4", Oracle::SimplesIn(vec![m24.clone()], vec![]));
            put("i_2x4", Oracle::SkeletonIn(vec![m24.clone()], vec![]));
            put(
                "s_4x7",
                Oracle::SimplesIn(vec![m47.clone()], vec![m24.clone()]),
            );
            put(
                "i_4x7",
                Oracle::SkeletonIn(vec![m47.clone()], vec![m24.clone()]),
            );
            put("s_F", Oracle::SimplesIn(vec![m47.clone()], vec![]));
            put("i_F", Oracle::SkeletonIn(vec![m47.clone()], vec![]));
            put(
                "s_3x3_w",
                Oracle::SimplesIn(vec![m33.clone()], wedges.clone()),
            );
            put(
                "i_3x3_w",
                Oracle::SkeletonIn(vec![m33.clone()], wedges.clone()),
            );
            let not66 = vec![m33.clone(), m24.clone(), rir(&m24)];
            put("s_6x6", Oracle::SimplesIn(vec![x.clone()], not66.clone()));
            put("i_6x6", Oracle::SkeletonIn(vec![x.clone()], not66));
            put("s_X", Oracle::SimplesIn(vec![x.clone()], vec![]));
            put("i_X", Oracle::SkeletonIn(vec![x.clone()], vec![]));
            put("i_3x3", Oracle::SkeletonIn(vec![m33], vec![]));
            put(
                "s_4x6",
                Oracle::SimplesIn(vec![m46.clone()], vec![m24.clone()]),
            );
            put("i_4x6", Oracle::SkeletonIn(vec![m46], vec![m24]));
            put("i_FX", Oracle::SkeletonIn(vec![m47, x], vec![]));
            // the two varieties of wedge simples
            let w: HashSet<Permutation> = (4..=n_max)
                .flat_map(|n| {
                    simples_of_length(n)
                        .iter()
                        .filter(|p| wedges.iter().any(|m| in_grid(m, p)))
                        .cloned()
                        .collect::<Vec<_>>()
                })
                .collect();
            put("i_W", Oracle::SkeletonSet(w));
            put(
                "i_special",
                Oracle::SkeletonSet(parse_list("2413 3142 24153")?.into_iter().collect()),
            );
            // subtypes are defined by their code words
            let (dt, st) = (resources::dfa("T")?, resources::scheme("T")?);
            for (a, b) in [("c", "a"), ("c", "b"), ("a", "a"), ("a", "b")] {
                put(
                    &format!("i_{a}{b}"),
                    Oracle::SkeletonSet(decoded_simples(&dt, &st, a, b, n_max)?),
                );
            }
            let (d24, s24) = (resources::dfa("2x4")?, resources::scheme("2x4")?);
            for (a, b) in [
                ("aba", "cdc"),
                ("aba", "bc"),
                ("aba", "ac"),
                ("bac", "dc"),
                ("ba", "bc"),
                ("bab", "ac"),
                ("bab", "cdc"),
            ] {
                put(
                    &format!("i_2x4_{a}_{b}"),
                    Oracle::SkeletonSet(decoded_simples(&d24, &s24, a, b, n_max)?),
                );
            }
            let (d33, s33) = (resources::dfa("3x3_w")?, resources::scheme("3x3")?);
            for (a, b) in [("bab", "cd"), ("bab", "dc"), ("aba", "cd"), ("aba", "dc")] {
                put(
                    &format!("i_3x3_{a}_{b}"),
                    Oracle::SkeletonSet(decoded_simples(&d33, &s33, a, b, n_max)?),
                );
            }
            put("i_1324_4312", Oracle::Shape(Shape::StrongIndecomposable));
            put("f_sum_1324_4312", Oracle::Shape(Shape::SumDecomposable));
            put("f_skew_1324_4312", Oracle::Shape(Shape::SkewDecomposable));
            put(
                "f_skew_indec_1324_4312",
                Oracle::Shape(Shape::SkewIndecomposable { min: 1 }),
            );
            put("f_1324_4312", Oracle::Class);
        }
    }
    Ok(o)
}

/// Membership of skeletons in a grid class, memoized: many members share one.
struct SkeletonMemo<'a> {
    inside: &'a [GriddingMatrix],
    outside: &'a [GriddingMatrix],
    seen: Mutex<HashMap<Permutation, bool>>,
}

impl SkeletonMemo<'_> {
    fn holds(&self, p: &Permutation) -> bool {
        if p.len() < 4 {
            return false;
        }
        let s = decompose(p).skeleton;
        if s.len() < 4 {
            return false;
        }
        if let Some(&b) = self.seen.lock().unwrap().get(&s) {
            return b;
        }
        let b = self.inside.iter().all(|m| in_grid(m, &s))
            && !self.outside.iter().any(|m| in_grid(m, &s));
        self.seen.lock().unwrap().insert(s, b);
        b
    }
}

fn count_levels(
    levels: &[Vec<Permutation>],
    n_max: usize,
    keep: impl Fn(&Permutation) -> bool + Sync,
) -> Vec<u64> {
    (1..=n_max)
        .map(|n| levels[n].par_iter().filter(|p| keep(p)).count() as u64)
        .collect()
}

fn brute_force(oracle: &Oracle, levels: &[Vec<Permutation>], n_max: usize) -> Result<Vec<u64>> {
    Ok(match oracle {
        Oracle::Class => count_levels(levels, n_max, |_| true),
        Oracle::Other(basis) => count_levels(&class_levels(basis, n_max)?, n_max, |_| true),
        Oracle::OtherFiltered(basis, shape) => {
            count_levels(&class_levels(basis, n_max)?, n_max, |p| shape.matches(p))
        }
        Oracle::Shape(shape) => count_levels(levels, n_max, |p| shape.matches(p)),
        Oracle::ClassSimples => count_levels(levels, n_max, simple_long),
        Oracle::MembersIn(ms) => count_levels(levels, n_max, |p| ms.iter().all(|m| in_grid(m, p))),
        Oracle::SimplesIn(inside, outside) => (1..=n_max)
            .map(|n| {
                simples_of_length(n)
                    .par_iter()
                    .filter(|p| {
                        p.len() >= 4
                            && inside.iter().all(|m| in_grid(m, p))
                            && !outside.iter().any(|m| in_grid(m, p))
                    })
                    .count() as u64
            })
            .collect(),
        Oracle::SkeletonIn(inside, outside) => {
            let memo = SkeletonMemo {
                inside,
                outside,
                seen: Mutex::new(HashMap::new()),
            };
            count_levels(levels, n_max, |p| memo.holds(p))
        }
        Oracle::SkeletonSet(set) => count_levels(levels, n_max, |p| {
            p.len() >= 4 && set.contains(&decompose(p).skeleton)
        }),
    })
}

/// Compares every stage that has a brute-force meaning with direct counts of
/// lengths `1..=n_max`.
pub fn verify_series(p: &Pipeline, n_max: usize) -> Result<Vec<SeriesCheck>> {
    let oracles = oracles(p.id, n_max)?;
    let levels = class_levels(p.id.basis(), n_max)?;
    let mut out = Vec::new();
    for stage in &p.stages {
        let Some(oracle) = oracles.get(&stage.key) else {
            continue;
        };
        let series = stage.value.series(n_max)?[1..].to_vec();
        out.push(SeriesCheck {
            name: stage.name.clone(),
            key: stage.key.clone(),
            series,
            brute: brute_force(oracle, &levels, n_max)?,
        });
    }
    Ok(out)
}

/// Subtype and table rows that must add up to a whole, as keys.
pub const PARTITIONS: [(&str, &[&str]); 4] = [
    ("s_T", &["s_ca", "s_cb", "s_aa", "s_ab"]),
    (
        "s_2x4",
        &[
            "s_2x4_aba_cdc",
            "s_2x4_aba_bc",
            "s_2x4_aba_ac",
            "s_2x4_bac_dc",
            "s_2x4_ba_bc",
            "s_2x4_bab_ac",
            "s_2x4_bab_cdc",
        ],
    ),
    (
        "s_3x3_w",
        &[
            "s_3x3_bab_cd",
            "s_3x3_bab_dc",
            "s_3x3_aba_cd",
            "s_3x3_aba_dc",
        ],
    ),
    ("s_E", &["s1_E", "s2_E"]),
];

#[derive(Clone, Debug)]
pub struct PartitionCheck {
    pub whole: String,
    pub parts: Vec<String>,
    pub holds: bool,
}

/// Sums of subtype generating functions against the whole, exactly.
pub fn verify_partitions(pipelines: &[Pipeline]) -> Vec<PartitionCheck> {
    let find = |key: &str| {
        pipelines
            .iter()
            .find_map(|p| p.stage(key))
            .map(|s| s.value.clone())
    };
    PARTITIONS
        .iter()
        .filter_map(|(whole, parts)| {
            let w = find(whole)?;
            let sum = parts
                .iter()
                .map(|k| find(k))
                .try_fold(crate::ratfun::RationalFunction::zero(), |acc, v| {
                    v.map(|v| acc.add(&v))
                })?;
            Some(PartitionCheck {
                whole: whole.to_string(),
                parts: parts.iter().map(|s| s.to_string()).collect(),
                holds: sum == w,
            })
        })
        .collect()
}

/// Per length, members split into sum-, skew- and strong-indecomposables,
/// with the last compared to the strong-indecomposable stage plus the
/// single point.
#[derive(Clone, Debug)]
pub struct DecompositionCheck {
    pub id: PipelineId,
    pub total: Vec<u64>,
    pub sum: Vec<u64>,
    pub skew: Vec<u64>,
    pub strong: Vec<u64>,
    pub strong_series: Vec<BigInt>,
}

impl DecompositionCheck {
    pub fn passed(&self) -> bool {
        (0..self.total.len()).all(|i| {
            let expected = if i == 0 {
                BigInt::from(1)
            } else {
                self.strong_series[i].clone()
            };
            self.total[i] == self.sum[i] + self.skew[i] + self.strong[i]
                && BigInt::from(self.strong[i]) == expected
        })
    }
}

pub fn verify_decomposition(p: &Pipeline, n_max: usize) -> Result<Option<DecompositionCheck>> {
    let key = match p.id {
        PipelineId::Av2143_4321 => return Ok(None),
        PipelineId::Av2143_4312 => "f_ind",
        PipelineId::Av1324_4312 => "i_1324_4312",
    };
    let strong_series = p.stage(key).expect("stage exists").value.series(n_max)?[1..].to_vec();
    let levels = class_levels(p.id.basis(), n_max)?;
    let count = |d: Decomposability| {
        count_levels(&levels, n_max, move |q| {
            perm::classify_decomposability(q) == d
        })
    };
    Ok(Some(DecompositionCheck {
        id: p.id,
        total: count_levels(&levels, n_max, |_| true),
        sum: count(Decomposability::SumDecomposable),
        skew: count(Decomposability::SkewDecomposable),
        strong: count(Decomposability::StrongIndecomposable),
        strong_series,
    }))
}
