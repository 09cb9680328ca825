//! The three enumerations as sequences of named generating functions.
//!
//! Every stage is computed from automata, languages and the inflation
//! formula. Closed forms in `resources/gf` are only compared against, except
//! for the input series of the small classes the enumerations lean on (for
//! example `f_E = x/(1-2x)`), which are read from `resources/gf/input_*.gf`
//! and checked against brute force in the test suite.

use std::fmt;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::grid::GriddingMatrix;
use crate::perm::Symmetry;
use crate::ratfun::{Polynomial, RationalFunction};

use super::languages::{self, ClassLanguage};
use super::resources;

/// A generating function with its display name and fixture key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGf {
    pub name: String,
    pub key: String,
    pub value: RationalFunction,
}

impl fmt::Display for NamedGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PipelineId {
    Av2143_4321,
    Av2143_4312,
    Av1324_4312,
}

impl PipelineId {
    pub const ALL: [PipelineId; 3] = [
        PipelineId::Av2143_4321,
        PipelineId::Av2143_4312,
        PipelineId::Av1324_4312,
    ];

    pub fn key(self) -> &'static str {
        match self {
            PipelineId::Av2143_4321 => "av2143_4321",
            PipelineId::Av2143_4312 => "av2143_4312",
            PipelineId::Av1324_4312 => "av1324_4312",
        }
    }

    pub fn basis(self) -> &'static str {
        match self {
            PipelineId::Av2143_4321 => "2143 4321",
            PipelineId::Av2143_4312 => "2143 4312",
            PipelineId::Av1324_4312 => "1324 4312",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        PipelineId::ALL.into_iter().find(|p| p.key() == key)
    }

    pub fn build(self) -> Result<Pipeline> {
        match self {
            PipelineId::Av2143_4321 => build_2143_4321(),
            PipelineId::Av2143_4312 => build_2143_4312(),
            PipelineId::Av1324_4312 => build_1324_4312(),
        }
    }
}

/// All stages of one enumeration; the last stage is the result.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub id: PipelineId,
    pub stages: Vec<NamedGf>,
}

impl Pipeline {
    pub fn result(&self) -> &NamedGf {
        self.stages.last().expect("pipelines have stages")
    }

    pub fn stage(&self, key: &str) -> Option<&NamedGf> {
        self.stages.iter().find(|s| s.key == key)
    }
}

/// Comparison of one stage with its closed form, when there is one.
#[derive(Clone, Debug)]
pub struct StageCheck {
    pub name: String,
    pub key: String,
    pub got: RationalFunction,
    pub expected: Option<RationalFunction>,
}

impl StageCheck {
    pub fn passed(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| *e == self.got)
    }
}

fn fixture_exists(key: &str) -> bool {
    resources::resource_dir()
        .join("gf")
        .join(format!("{key}.gf"))
        .is_file()
}

/// Compares every stage that has a fixture file.
pub fn check_fixtures(p: &Pipeline) -> Result<Vec<StageCheck>> {
    p.stages
        .iter()
        .map(|s| {
            let expected = if fixture_exists(&s.key) {
                Some(resources::gf(&s.key)?)
            } else {
                None
            };
            Ok(StageCheck {
                name: s.name.clone(),
                key: s.key.clone(),
                got: s.value.clone(),
                expected,
            })
        })
        .collect()
}

/// Builds the pipeline and fails on the first stage that disagrees with its
/// closed form.
pub fn run(id: PipelineId) -> Result<Pipeline> {
    let p = id.build()?;
    for c in check_fixtures(&p)? {
        if !c.passed() {
            return Err(Error::Stage {
                stage: c.name,
                detail: format!("got {}, expected {}", c.got, c.expected.unwrap()),
            });
        }
    }
    Ok(p)
}

pub fn pipeline_2143_4321() -> Result<NamedGf> {
    Ok(run(PipelineId::Av2143_4321)?.result().clone())
}

pub fn pipeline_2143_4312() -> Result<NamedGf> {
    Ok(run(PipelineId::Av2143_4312)?.result().clone())
}

pub fn pipeline_1324_4312() -> Result<NamedGf> {
    Ok(run(PipelineId::Av1324_4312)?.result().clone())
}

struct Stages(Vec<NamedGf>);

impl Stages {
    fn push(&mut self, name: &str, key: &str, value: RationalFunction) -> RationalFunction {
        self.0.push(NamedGf {
            name: name.into(),
            key: key.into(),
            value: value.clone(),
        });
        value
    }
}

fn rf(s: &str) -> RationalFunction {
    s.parse().expect("well-formed constant expression")
}

/// Simple permutations counted by an automaton, from length 4 on. The
/// automata of this module also accept the short simples 1, 12, 21 or a
/// spurious word of length 3, and these are cut off here.
pub fn simples_gf(d: &Dfa) -> Result<RationalFunction> {
    d.gf().drop_below(4)
}

/// The words of `d` beginning with `prefix` and ending with `suffix`; the
/// two may overlap.
pub fn restrict_ends(d: &Dfa, prefix: &str, suffix: &str) -> Result<Dfa> {
    let a = d.alphabet().to_vec();
    Ok(d.intersect(&Dfa::with_prefix(prefix, &a)?)?
        .intersect(&Dfa::with_suffix(suffix, &a)?)?
        .minimize())
}

// ---------------------------------------------------------------------------
// Av(2143, 4321)

/// The intersections of A, B, C, D in a fixed order: each nonempty subset as
/// a bit mask over `[A, B, C, D]`.
pub fn subset_name(classes: &[ClassLanguage], mask: usize) -> String {
    let parts: Vec<&str> = (0..classes.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| classes[i].name.as_str())
        .collect();
    parts.join("∩")
}

pub fn build_2143_4321() -> Result<Pipeline> {
    let classes = languages::all_languages()?;
    let mut st = Stages(Vec::new());
    let mut total = RationalFunction::zero();
    for mask in 1usize..16 {
        let members: Vec<&ClassLanguage> = (0..4)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &classes[i])
            .collect();
        let dfa = languages::intersection(&members)?;
        let name = subset_name(&classes, mask);
        let key = format!("f_{}", name.replace('∩', ""));
        let g = st.push(&format!("f_{{{name}}}"), &key, dfa.gf());
        total = if members.len() % 2 == 1 {
            total.add(&g)
        } else {
            total.sub(&g)
        };
    }
    st.push("f_{2143,4321}", "f_2143_4321", total);
    Ok(Pipeline {
        id: PipelineId::Av2143_4321,
        stages: st.0,
    })
}

// ---------------------------------------------------------------------------
// Av(2143, 4312)

pub fn build_2143_4312() -> Result<Pipeline> {
    let x = RationalFunction::x();
    let one = RationalFunction::one();
    let mut st = Stages(Vec::new());

    let e = resources::dfa("E_simples")?;
    let s_e = st.push("s_E", "s_E", simples_gf(&e)?);
    let s1_e = st.push("s¹_E", "s1_E", simples_gf(&e.with_accepting(&["A"])?)?);
    let s2_e = st.push(
        "s²_E",
        "s2_E",
        simples_gf(&e.with_accepting(&["a", "a2", "ab", "dota", "dotab", "AB"])?)?,
    );
    debug_assert_eq!(s1_e.add(&s2_e), s_e);

    // words omit the point of the dot cell; the two diagrams are symmetric
    let ef = resources::dfa("EF_2413")?;
    let two_x = x.scale(2);
    let s_ef = st.push("s_{E∩F}", "s_EF", two_x.mul(&ef.gf()));
    // F is a symmetry of E
    st.push("s_{Av(2143,4312)}", "s_C", s_e.scale(2).sub(&s_ef));
    let s1_ef = st.push(
        "s¹_{E∩F}",
        "s1_EF",
        two_x.mul(&ef.with_accepting(&["a"])?.gf()),
    );
    let s2_ef = st.push(
        "s²_{E∩F}",
        "s2_EF",
        two_x.mul(&ef.with_accepting(&["ab"])?.gf()),
    );

    let g = st.push("g", "input_av312_2143", resources::gf("input_av312_2143")?);
    let type1 = s1_e
        .scale(2)
        .inflation_gf(&[])?
        .sub(&s1_ef.inflation_gf(&[])?);
    let type2 = s2_e
        .scale(2)
        .inflation_gf(std::slice::from_ref(&g))?
        .sub(&s2_ef.inflation_gf(std::slice::from_ref(&g))?);
    let f_ind = st.push("f_ind", "f_ind", type1.add(&type2));
    // skew-indecomposables of length at least 2: a permutation of the class
    // is one of them followed by a decreasing tail
    let g_ni = st.push("g_{⊄⊖}", "g_skew_indec", g.mul(&one.sub(&x)).sub(&x));

    // Nonempty permutations, sum- and skew-decomposables:
    //   f_⊖ = x f + g_⊄⊖ y,  f_⊕ = x f + (f_ind + f_⊖) y,  f = x + f_⊕ + f_⊖ + f_ind
    // with y = x/(1-x). Substituting gives f (1 - 2x - xy) = x + f_ind + (f_ind + c)y + c
    // where c = g_⊄⊖ y.
    let y = x.div(&one.sub(&x))?;
    let c = g_ni.mul(&y);
    let rhs = x.add(&f_ind).add(&f_ind.add(&c).mul(&y)).add(&c);
    let f = rhs.div(&one.sub(&x.scale(2)).sub(&x.mul(&y)))?;
    let f_skew = st.push("f_⊖", "f_skew_2143_4312", x.mul(&f).add(&c));
    st.push(
        "f_⊕",
        "f_sum_2143_4312",
        x.mul(&f).add(&f_ind.add(&f_skew).mul(&y)),
    );
    // the closed form also counts the empty permutation
    st.push("f_{2143,4312}", "f_2143_4312", one.add(&f));
    Ok(Pipeline {
        id: PipelineId::Av2143_4312,
        stages: st.0,
    })
}

// ---------------------------------------------------------------------------
// Av(1324, 4312)

/// A table row: code-word prefix and suffix, and the generating functions of
/// the classes inflating the non-monotone points.
struct Row {
    prefix: &'static str,
    suffix: &'static str,
    factors: &'static [Factor],
}

#[derive(Clone, Copy)]
enum Factor {
    /// a point inflated by a symmetry of Av(213, 312)
    E,
    /// a point inflated by a symmetry of Av(213, 4312)
    G,
    /// a pair of adjacent points inflated by `(G \ I, D)` or `(I, E)`
    Pair,
}

const ROWS_2X4: [Row; 7] = [
    Row {
        prefix: "aba",
        suffix: "cdc",
        factors: &[Factor::E, Factor::E],
    },
    Row {
        prefix: "aba",
        suffix: "bc",
        factors: &[Factor::E, Factor::E],
    },
    Row {
        prefix: "aba",
        suffix: "ac",
        factors: &[Factor::E, Factor::Pair],
    },
    Row {
        prefix: "bac",
        suffix: "dc",
        factors: &[Factor::E, Factor::G],
    },
    Row {
        prefix: "ba",
        suffix: "bc",
        factors: &[Factor::E, Factor::Pair],
    },
    Row {
        prefix: "bab",
        suffix: "ac",
        factors: &[Factor::Pair, Factor::Pair],
    },
    Row {
        prefix: "bab",
        suffix: "cdc",
        factors: &[Factor::E, Factor::Pair],
    },
];

const ROWS_3X3: [Row; 4] = [
    Row {
        prefix: "bab",
        suffix: "cd",
        factors: &[Factor::E, Factor::E],
    },
    Row {
        prefix: "bab",
        suffix: "dc",
        factors: &[Factor::E, Factor::Pair],
    },
    Row {
        prefix: "aba",
        suffix: "cd",
        factors: &[Factor::E, Factor::Pair],
    },
    Row {
        prefix: "aba",
        suffix: "dc",
        factors: &[Factor::Pair, Factor::Pair],
    },
];

/// Display name and fixture key of a table row.
fn row_label(table: &str, row: &Row) -> (String, String) {
    (
        format!("{table} {}⋯{}", row.prefix, row.suffix),
        format!("{}_{}_{}", table.replace('×', "x"), row.prefix, row.suffix),
    )
}

struct Inputs {
    f_e: RationalFunction,
    f_g: RationalFunction,
    pair: RationalFunction,
}

impl Inputs {
    fn get(&self, f: Factor) -> RationalFunction {
        match f {
            Factor::E => self.f_e.clone(),
            Factor::G => self.f_g.clone(),
            Factor::Pair => self.pair.clone(),
        }
    }

    fn factors(&self, fs: &[Factor]) -> Vec<RationalFunction> {
        fs.iter().map(|&f| self.get(f)).collect()
    }
}

/// Simple permutations of length 4 or 5 lying in both the 2×4 class and its
/// image under reverse-inverse-reverse, found by decoding. Longer lengths
/// up to `check_len` are confirmed empty.
pub fn two_by_four_overlap(check_len: usize) -> Result<Vec<crate::perm::Permutation>> {
    let d = resources::dfa("2x4")?;
    let s = resources::scheme("2x4")?;
    let mirror: GriddingMatrix = s.matrix().apply(Symmetry::ReverseInverseReverse);
    let mut out = Vec::new();
    for n in 4..=check_len {
        for w in d.words(n) {
            let p = s.decode(&w)?;
            if mirror.contains(&p) {
                out.push(p);
            }
        }
    }
    if let Some(p) = out.iter().find(|p| p.len() > 5) {
        return Err(Error::Stage {
            stage: "s_{2×4} overlap".into(),
            detail: format!("unexpected common simple {p}"),
        });
    }
    Ok(out)
}

pub fn build_1324_4312() -> Result<Pipeline> {
    let x = RationalFunction::x();
    let one = RationalFunction::one();
    let y = x.div(&one.sub(&x))?;
    let mut st = Stages(Vec::new());

    let f_e = st.push("f_E", "input_av213_312", resources::gf("input_av213_312")?);
    let f_g = st.push(
        "f_G",
        "input_av213_4312",
        resources::gf("input_av213_4312")?,
    );
    let pair = st.push("f_G + f_E - x/(1-x)", "pair_factor", f_g.add(&f_e).sub(&y));
    let inputs = Inputs { f_e, f_g, pair };
    let (ee, eh, he, hh) = (
        inputs.factors(&[Factor::E, Factor::E]),
        inputs.factors(&[Factor::E, Factor::Pair]),
        inputs.factors(&[Factor::Pair, Factor::E]),
        inputs.factors(&[Factor::Pair, Factor::Pair]),
    );

    // T
    let t = resources::dfa("T")?;
    let s_t = st.push("s_T", "s_T", simples_gf(&t)?);
    let mut i_t = RationalFunction::zero();
    let mut sum_sub = RationalFunction::zero();
    for (first, last, factors) in [
        ("c", "a", &ee),
        ("c", "b", &eh),
        ("a", "a", &he),
        ("a", "b", &hh),
    ] {
        let s = simples_gf(&restrict_ends(&t, first, last)?)?;
        let s = st.push(
            &format!("s_{{{first}{last}}}"),
            &format!("s_{first}{last}"),
            s,
        );
        sum_sub = sum_sub.add(&s);
        let i = st.push(
            &format!("i_{{{first}{last}}}"),
            &format!("i_{first}{last}"),
            s.inflation_gf(factors)?,
        );
        i_t = i_t.add(&i);
    }
    debug_assert_eq!(sum_sub, s_t);
    let i_t = st.push("i_T", "i_T", i_t);

    // F: the 2×4 and 4×7 parts
    let d24 = resources::dfa("2x4")?;
    let s_24 = st.push("s_{2×4}", "s_2x4", simples_gf(&d24)?);
    let d47 = resources::dfa("4x7")?;
    let s_47 = st.push("s_{4×7}", "s_4x7", simples_gf(&d47)?);
    st.push("s_F", "s_F", s_24.add(&s_47));
    let i_47 = st.push("i_{4×7}", "i_4x7", s_47.inflation_gf(&ee)?);
    let mut i_24 = RationalFunction::zero();
    for row in &ROWS_2X4 {
        let (name, key) = row_label("2×4", row);
        let s = simples_gf(&restrict_ends(&d24, row.prefix, row.suffix)?)?;
        st.push(&format!("s {name}"), &format!("s_{key}"), s.clone());
        let i = st.push(
            &format!("i {name}"),
            &format!("i_{key}"),
            s.inflation_gf(&inputs.factors(row.factors))?,
        );
        i_24 = i_24.add(&i);
    }
    let i_24 = st.push("i_{2×4}", "i_2x4", i_24);
    let i_f = st.push("i_F", "i_F", i_47.add(&i_24));

    // X: the 6×6 and 3×3 parts, and the simples shared by 2×4 and its mirror
    let d33 = resources::dfa("3x3_w")?;
    let s_33w = st.push("s_{3×3∖W}", "s_3x3_w", simples_gf(&d33)?);
    let s_66 = st.push("s_{6×6}", "s_6x6", simples_gf(&resources::dfa("6x6")?)?);
    let overlap = two_by_four_overlap(9)?;
    let count = |len: usize| overlap.iter().filter(|p| p.len() == len).count() as i64;
    let overlap4 = RationalFunction::x_pow(4).scale(count(4));
    let overlap5 = RationalFunction::x_pow(5).scale(count(5));
    let s_x = s_66
        .add(&s_24.scale(2))
        .add(&s_33w)
        .sub(&overlap4)
        .sub(&overlap5);
    st.push("s_X", "s_X", s_x);
    let i_66 = st.push("i_{6×6}", "i_6x6", s_66.inflation_gf(&ee)?);
    let mut i_33w = RationalFunction::zero();
    for row in &ROWS_3X3 {
        let (name, key) = row_label("3×3", row);
        let s = simples_gf(&restrict_ends(&d33, row.prefix, row.suffix)?)?;
        st.push(&format!("s {name}"), &format!("s_{key}"), s.clone());
        let i = st.push(
            &format!("i {name}"),
            &format!("i_{key}"),
            s.inflation_gf(&inputs.factors(row.factors))?,
        );
        i_33w = i_33w.add(&i);
    }
    let i_33w = st.push("i_{3×3∖W}", "i_3x3_w", i_33w);
    // 2413 and 3142 have one point inflating by E and one pair; 24153 has two pairs
    let special = st.push(
        "i_{2413,3142,24153}",
        "i_special",
        overlap4
            .inflation_gf(&eh)?
            .add(&overlap5.inflation_gf(&hh)?),
    );
    let i_x = st.push(
        "i_X",
        "i_X",
        i_66.add(&i_24.scale(2)).add(&i_33w).sub(&special),
    );

    // wedge simples: per variety two of each length from 4; at even lengths
    // both carry an E point and a pair, at odd lengths one carries two E
    // points and the other two pairs; the varieties share the special three
    let even = rf("2*x^4/(1-x^2)");
    let odd = rf("x^5/(1-x^2)");
    let variety = even
        .inflation_gf(&eh)?
        .add(&odd.inflation_gf(&ee)?)
        .add(&odd.inflation_gf(&hh)?);
    let i_w = st.push("i_W", "i_W", variety.scale(2).sub(&special));
    let i_33 = st.push("i_{3×3}", "i_3x3", i_33w.add(&i_w));

    // F ∩ X: 2×4, or 4×7 without points coded by f
    let no_f = Dfa::all_words(&['a', 'b', 'c', 'd', 'e', 'x'], d47.alphabet());
    let s_46 = st.push("s_{4×6}", "s_4x6", simples_gf(&d47.intersect(&no_f)?)?);
    let i_46 = st.push("i_{4×6}", "i_4x6", s_46.inflation_gf(&ee)?);
    let i_fx = st.push("i_{F∩X}", "i_FX", i_46.add(&i_24));

    // S is the mirror image of F
    let i = st.push(
        "i(x)",
        "i_1324_4312",
        i_t.add(&i_f.scale(2))
            .add(&i_x)
            .sub(&i_33.add(&i_fx.scale(2))),
    );

    // sum-decomposables: (sum-indecomposable of Av(132,4312)) ⊕ 1 ⊕ … ⊕ 1 ⊕
    // (sum-indecomposable of G); G's members are 1 ⊕ … ⊕ 1 ⊕ such a one
    let g_ni = st.push("f_{⊄⊕G}", "f_sum_indec_G", inputs.f_g.mul(&one.sub(&x)));
    let f_sum = st.push("f_⊕", "f_sum_1324_4312", g_ni.pow(2).div(&one.sub(&x))?);
    let f_ni = st.push("f_{⊄⊖}", "f_skew_indec_1324_4312", x.add(&f_sum).add(&i));
    // α₁ ⊖ α₂ with α₁ skew-indecomposable: α₁ increasing and α₂ in
    // Av(312,1324), or α₁ not increasing and α₂ decreasing
    let av312_1324 = st.push(
        "f_{Av(312,1324)}",
        "input_av312_1324",
        resources::gf("input_av312_1324")?,
    );
    let f_skew = st.push(
        "f_⊖",
        "f_skew_1324_4312",
        y.mul(&av312_1324).add(&f_ni.sub(&y).mul(&y)),
    );
    st.push("f_{1324,4312}", "f_1324_4312", f_ni.add(&f_skew));
    Ok(Pipeline {
        id: PipelineId::Av1324_4312,
        stages: st.0,
    })
}

/// Every automaton the three pipelines count words of, by name.
pub fn automata() -> Result<Vec<(String, Dfa)>> {
    let mut out = Vec::new();
    let classes = languages::all_languages()?;
    for mask in 1usize..16 {
        let members: Vec<&ClassLanguage> = (0..4)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &classes[i])
            .collect();
        out.push((
            subset_name(&classes, mask),
            languages::intersection(&members)?,
        ));
    }
    let e = resources::dfa("E_simples")?;
    out.push(("E simples, type 1".into(), e.with_accepting(&["A"])?));
    out.push((
        "E simples, type 2".into(),
        e.with_accepting(&["a", "a2", "ab", "dota", "dotab", "AB"])?,
    ));
    out.push(("E simples".into(), e));
    let ef = resources::dfa("EF_2413")?;
    out.push(("E∩F, type 1".into(), ef.with_accepting(&["a"])?));
    out.push(("E∩F, type 2".into(), ef.with_accepting(&["ab"])?));
    out.push(("E∩F".into(), ef));
    let t = resources::dfa("T")?;
    for (first, last) in [("c", "a"), ("c", "b"), ("a", "a"), ("a", "b")] {
        out.push((format!("T {first}⋯{last}"), restrict_ends(&t, first, last)?));
    }
    out.push(("T".into(), t));
    let d24 = resources::dfa("2x4")?;
    for row in &ROWS_2X4 {
        out.push((
            row_label("2×4", row).0,
            restrict_ends(&d24, row.prefix, row.suffix)?,
        ));
    }
    out.push(("2×4".into(), d24));
    let d33 = resources::dfa("3x3_w")?;
    for row in &ROWS_3X3 {
        out.push((
            row_label("3×3", row).0,
            restrict_ends(&d33, row.prefix, row.suffix)?,
        ));
    }
    out.push(("3×3∖W".into(), d33));
    let d47 = resources::dfa("4x7")?;
    let no_f = Dfa::all_words(&['a', 'b', 'c', 'd', 'e', 'x'], d47.alphabet());
    out.push(("4×6".into(), d47.intersect(&no_f)?));
    out.push(("4×7".into(), d47));
    out.push(("6×6".into(), resources::dfa("6x6")?));
    Ok(out)
}

/// Factors that the closed forms are displayed over.
pub fn display_factors() -> Vec<Polynomial> {
    [
        "1 - x",
        "1 + x",
        "1 - 2*x",
        "1 - 3*x",
        "1 - 3*x + x^2",
        "1 - x - x^2",
        "1 - 2*x^2 - x^3",
        "1 - x - 2*x^2",
    ]
    .iter()
    .map(|s| {
        let r: RationalFunction = s.parse().unwrap();
        r.numerator().clone()
    })
    .collect()
}
