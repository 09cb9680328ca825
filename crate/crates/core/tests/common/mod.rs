//! Property suites shared by the property tests and the acceptance report.
//! Each returns a short summary on success and the first violation otherwise.

#![allow(dead_code)]

use num_bigint::BigInt;
use permgrid::automata::Dfa;
use permgrid::classes::pipelines::{automata, PipelineId};
use permgrid::classes::resources;
use permgrid::perm::{all_permutations, decompose, skew_components, sum_components};
use permgrid::{Permutation, RationalFunction};
use rayon::prelude::*;

pub type Outcome = Result<String, String>;

fn check_decomposition(p: &Permutation) -> std::result::Result<(), String> {
    let d = decompose(p);
    let back = d.inflate().map_err(|e| format!("{p}: {e}"))?;
    if back != *p {
        return Err(format!("{p} inflates back to {back}"));
    }
    if d.blocks.len() != d.skeleton.len() {
        return Err(format!(
            "{p}: {} blocks for skeleton {}",
            d.blocks.len(),
            d.skeleton
        ));
    }
    match d.skeleton.values() {
        [1, 2] if sum_components(&d.blocks[0]).len() != 1 => {
            Err(format!("{p}: left block not sum-indecomposable"))
        }
        [2, 1] if skew_components(&d.blocks[0]).len() != 1 => {
            Err(format!("{p}: left block not skew-indecomposable"))
        }
        s if s.len() > 2 && !d.skeleton.is_simple() => {
            Err(format!("{p}: skeleton {} not simple", d.skeleton))
        }
        _ => Ok(()),
    }
}

/// decompose then inflate is the identity on every permutation of length ≤ n.
pub fn round_trip(n_max: usize) -> Outcome {
    let mut total = 0;
    for n in 1..=n_max {
        let perms = all_permutations(n);
        perms.par_iter().try_for_each(check_decomposition)?;
        total += perms.len();
    }
    Ok(format!("{total} permutations"))
}

/// Pairs of constructed automata over a common alphabet, with a
/// containment language added so each alphabet has a partner.
fn automaton_pairs() -> Vec<(String, Dfa, Dfa)> {
    let all = automata().unwrap();
    let mut out = Vec::new();
    for (i, (name, d)) in all.iter().enumerate() {
        let partner = all[i + 1..]
            .iter()
            .find(|(_, e)| e.alphabet() == d.alphabet())
            .map(|(_, e)| e.clone())
            .unwrap_or_else(|| {
                let a = d.alphabet();
                let w: String = [a[0], a[a.len() - 1]].iter().collect();
                Dfa::subword_containment(&w, a).unwrap()
            });
        out.push((name.clone(), d.clone(), partner));
    }
    out
}

/// Complement partition and De Morgan counts for every constructed automaton.
pub fn dfa_laws(n_max: usize) -> Outcome {
    let pairs = automaton_pairs();
    for (name, a, b) in &pairs {
        let k = BigInt::from(a.alphabet().len());
        let ca = a.count_words(n_max);
        let cc = a.complement().count_words(n_max);
        let cb = b.count_words(n_max);
        let i = a
            .intersect(b)
            .map_err(|e| e.to_string())?
            .count_words(n_max);
        let u = a.union(b).map_err(|e| e.to_string())?.count_words(n_max);
        let not_u = a.union(b).unwrap().complement().count_words(n_max);
        let both_not = a
            .complement()
            .intersect(&b.complement())
            .unwrap()
            .count_words(n_max);
        let not_i = a.intersect(b).unwrap().complement().count_words(n_max);
        let either_not = a
            .complement()
            .union(&b.complement())
            .unwrap()
            .count_words(n_max);
        for n in 0..=n_max {
            let all = k.pow(n as u32);
            if &ca[n] + &cc[n] != all {
                return Err(format!("{name}: complement does not partition at n={n}"));
            }
            if &i[n] + &u[n] != &ca[n] + &cb[n] {
                return Err(format!("{name}: inclusion-exclusion fails at n={n}"));
            }
            if not_u[n] != both_not[n] || not_i[n] != either_not[n] {
                return Err(format!("{name}: De Morgan fails at n={n}"));
            }
        }
    }
    Ok(format!("{} automata, n ≤ {n_max}", pairs.len()))
}

/// gf series against direct word counts to 2·|states| + 4 for every
/// constructed automaton and every automaton resource.
pub fn gf_matches_counts() -> Outcome {
    let mut all = automata().map_err(|e| e.to_string())?;
    for name in resources::list("dfa").map_err(|e| e.to_string())? {
        all.push((
            name.clone(),
            resources::dfa(&name).map_err(|e| e.to_string())?,
        ));
    }
    for (name, d) in &all {
        let n = 2 * d.num_states() + 4;
        let series = d.gf().series(n).map_err(|e| e.to_string())?;
        if series != d.count_words(n) {
            return Err(format!("{name}: gf and counts differ below n={n}"));
        }
    }
    Ok(format!("{} automata", all.len()))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n + 1 - k) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `[x^n] r(x/(1-x)) = Σ_k C(n-1, k-1) [x^k] r` for n ≥ 1.
pub fn binomial_identity_holds(
    r: &RationalFunction,
    n_max: usize,
) -> std::result::Result<(), String> {
    let a = r.series(n_max).map_err(|e| e.to_string())?;
    let got = r
        .substitute_inflation()
        .series(n_max)
        .map_err(|e| e.to_string())?;
    if got[0] != a[0] {
        return Err(format!("{r}: constant term"));
    }
    for (n, g) in got.iter().enumerate().skip(1) {
        let c = binomial_row(n - 1);
        let want: BigInt = (1..=n).map(|k| &c[k - 1] * &a[k]).sum();
        if *g != want {
            return Err(format!("{r}: coefficient {n}"));
        }
    }
    Ok(())
}

/// The identity for every closed form on file and every pipeline stage.
pub fn binomial_identity(n_max: usize) -> Outcome {
    let mut count = 0;
    for name in resources::list("gf").map_err(|e| e.to_string())? {
        binomial_identity_holds(&resources::gf(&name).map_err(|e| e.to_string())?, n_max)?;
        count += 1;
    }
    for id in PipelineId::ALL {
        for s in id.build().map_err(|e| e.to_string())?.stages {
            binomial_identity_holds(&s.value, n_max).map_err(|e| format!("{}: {e}", s.key))?;
            count += 1;
        }
    }
    Ok(format!("{count} functions, n ≤ {n_max}"))
}
