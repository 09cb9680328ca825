//! One PASS/FAIL line per acceptance criterion.
//!
//! Three recorded closed forms disagree with exhaustive enumeration, so
//! criteria 2 and 3 report FAIL. The test itself fails if any other stage
//! disagrees, if those three ever start agreeing, or if the computed
//! functions disagree with brute force.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use permgrid::classes::pipelines::{check_fixtures, Pipeline, PipelineId};
use permgrid::classes::resources;
use permgrid::classes::verify::{encodings, verify_encoding, verify_structure, StructureTheorem};
use permgrid::enumerate::{compute_basis, count_series, ClassSpec};
use permgrid::perm::parse_list;

const REFERENCE: [(PipelineId, [u64; 11]); 3] = [
    (
        PipelineId::Av2143_4321,
        [1, 2, 6, 22, 86, 333, 1235, 4339, 14443, 45770, 138988],
    ),
    (
        PipelineId::Av2143_4312,
        [1, 2, 6, 22, 86, 337, 1295, 4854, 17760, 63594, 223488],
    ),
    (
        PipelineId::Av1324_4312,
        [1, 2, 6, 22, 86, 335, 1266, 4598, 16016, 53579, 172663],
    ),
];

/// Printed closed forms known to be wrong.
const WRONG_FINAL_FORMS: [&str; 2] = ["f_2143_4321", "f_2143_4312"];
const WRONG_STAGE_FORMS: [&str; 1] = ["i_X"];

fn report(k: usize, ok: bool, what: &str) {
    println!("{} criterion {k}: {what}", if ok { "PASS" } else { "FAIL" });
}

/// First coefficient where two power series differ.
fn first_difference(
    a: &permgrid::RationalFunction,
    b: &permgrid::RationalFunction,
) -> Option<usize> {
    let (x, y) = (a.series(30).unwrap(), b.series(30).unwrap());
    (0..=30).find(|&n| x[n] != y[n])
}

fn criterion_1() -> Vec<(PipelineId, Vec<u64>)> {
    let start = Instant::now();
    let mut ok = true;
    let mut out = Vec::new();
    for (id, reference) in REFERENCE {
        let spec = ClassSpec::basis(parse_list(id.basis()).unwrap());
        let got = count_series(&spec, 11).unwrap();
        ok &= got == reference;
        out.push((id, got));
    }
    report(
        1,
        ok,
        &format!(
            "brute-force series n = 1..11 for all three classes ({:.1} s)",
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok, "brute-force series disagree with reference terms");
    out
}

fn criterion_2(pipelines: &[Pipeline], brute: &[(PipelineId, Vec<u64>)]) {
    let mut mismatched = Vec::new();
    for p in pipelines {
        let key = p.result().key.clone();
        let expected = resources::gf(&key).unwrap();
        if expected != p.result().value {
            let n = first_difference(&expected, &p.result().value).unwrap();
            println!("    {key}: recorded form first differs at x^{n}");
            mismatched.push(key);
        }
        // whatever the recorded form says, the computed function must count the class
        let (_, b) = brute.iter().find(|(id, _)| *id == p.id).unwrap();
        let series: Vec<BigInt> = p.result().value.series(11).unwrap()[1..].to_vec();
        let b: Vec<BigInt> = b.iter().map(|&c| c.into()).collect();
        assert_eq!(
            series, b,
            "{:?}: computed function disagrees with brute force",
            p.id
        );
    }
    let what = if mismatched.is_empty() {
        "final functions equal the recorded closed forms".to_string()
    } else {
        format!(
            "final functions differ from the recorded closed forms for {} (the recorded forms miscount; the computed ones match brute force through n = 11)",
            mismatched.join(", ")
        )
    };
    report(2, mismatched.is_empty(), &what);
    assert_eq!(
        mismatched, WRONG_FINAL_FORMS,
        "unexpected change in final-form agreement"
    );
}

fn criterion_3(pipelines: &[Pipeline]) {
    let finals: BTreeSet<String> = pipelines.iter().map(|p| p.result().key.clone()).collect();
    let mut compared = 0;
    let mut mismatched = Vec::new();
    for p in pipelines {
        for c in check_fixtures(p).unwrap() {
            if finals.contains(&c.key) || c.expected.is_none() {
                continue;
            }
            compared += 1;
            if !c.passed() {
                let n = first_difference(c.expected.as_ref().unwrap(), &c.got).unwrap();
                println!("    {}: recorded form first differs at x^{n}", c.key);
                mismatched.push(c.key);
            }
        }
    }
    let what = if mismatched.is_empty() {
        format!("{compared} intermediate functions equal their closed forms")
    } else {
        format!(
            "{} of {compared} intermediate functions equal their closed forms; {} differs (the recorded form miscounts; the computed one matches brute force through n = 9)",
            compared - mismatched.len(),
            mismatched.join(", ")
        )
    };
    report(3, mismatched.is_empty(), &what);
    assert_eq!(
        mismatched, WRONG_STAGE_FORMS,
        "unexpected change in stage agreement"
    );
}

fn criterion_3_oracles(pipelines: &[Pipeline]) {
    // the stages are independently counted, including the one whose closed form is wrong
    for p in pipelines {
        for c in permgrid::classes::verify::verify_series(p, 9).unwrap() {
            assert!(c.passed(), "{c}");
        }
    }
}

fn criterion_4() {
    let start = Instant::now();
    let mut ok = true;
    let encs = encodings().unwrap();
    for enc in &encs {
        let r = verify_encoding(enc, 9).unwrap();
        if !r.passed() {
            println!("{r}");
            ok = false;
        }
    }
    report(
        4,
        ok,
        &format!(
            "{} automata decode bijectively onto their targets for n ≤ 9, counts match series ({:.1} s)",
            encs.len(),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

fn criterion_5() {
    let start = Instant::now();
    let mut ok = true;
    for thm in StructureTheorem::ALL {
        let r = verify_structure(thm, 9).unwrap();
        if !r.passed() {
            println!("{r}");
            ok = false;
        }
    }
    report(
        5,
        ok,
        &format!(
            "{} structure statements hold with zero counterexamples for n ≤ 9 ({:.1} s)",
            StructureTheorem::ALL.len(),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

fn criterion_6() {
    let wedge = resources::matrix("wedge").unwrap();
    let b = resources::matrix("B").unwrap();
    let wedge_basis = compute_basis(|p| wedge.contains(p), 8);
    let b_basis = compute_basis(|p| b.contains(p), 8);
    let ok = wedge_basis == parse_list("213 312").unwrap()
        && b_basis == parse_list("2143 4321 35142 35214 35241 43152 53142").unwrap();
    report(
        6,
        ok,
        "bases of the wedge and of B, nothing further through length 8",
    );
    assert!(ok);
}

fn criterion_7() {
    let suites = [
        ("decompose/inflate round trip", common::round_trip(9)),
        ("DFA algebra laws", common::dfa_laws(12)),
        ("gf against counts", common::gf_matches_counts()),
        (
            "substitute_inflation binomial identity",
            common::binomial_identity(15),
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, outcome) in suites {
        match outcome {
            Ok(summary) => parts.push(format!("{name} ({summary})")),
            Err(e) => {
                ok = false;
                parts.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    report(7, ok, &parts.join("; "));
    assert!(ok);
}

// harness = false so the criteria lines are printed on every run
fn main() {
    let brute = criterion_1();
    let pipelines: Vec<Pipeline> = PipelineId::ALL
        .iter()
        .map(|id| id.build().unwrap())
        .collect();
    criterion_2(&pipelines, &brute);
    criterion_3_oracles(&pipelines);
    criterion_3(&pipelines);
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
}
