use permgrid::perm::{
    all_permutations, classify_decomposability, decompose, inflate, parse_list, Decomposability,
    Symmetry,
};
use permgrid::Permutation;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn ps(s: &str) -> Vec<Permutation> {
    parse_list(s).unwrap()
}

/// Subsets of positions by bit mask, standardized and compared.
fn naive_contains(hay: &Permutation, needle: &Permutation) -> bool {
    let n = hay.len();
    let k = needle.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .any(|m| {
            let sub: Vec<u8> = (0..n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| hay.values()[i])
                .collect();
            Permutation::standardize(&sub) == *needle
        })
}

fn naive_simple(q: &Permutation) -> bool {
    let v = q.values();
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let len = j - i + 1;
            if len == n {
                continue;
            }
            let lo = *v[i..=j].iter().min().unwrap() as usize;
            let hi = *v[i..=j].iter().max().unwrap() as usize;
            if hi - lo + 1 == len {
                return false;
            }
        }
    }
    true
}

#[test]
fn containment_examples() {
    assert!(p("782139645").contains(&p("3142")));
    assert!(p("2143").contains(&p("2143")));
    assert!(!p("4321").contains(&p("2143")));
    assert!(!p("53142").contains(&p("2143")));
    assert!(p("53142").contains(&Permutation::default()));
}

#[test]
fn containment_agrees_with_subset_search() {
    let needles = ps("1 21 132 2143 3142 4312");
    for n in 1..=7 {
        for q in all_permutations(n) {
            for needle in &needles {
                assert_eq!(
                    q.contains(needle),
                    naive_contains(&q, needle),
                    "{q} {needle}"
                );
            }
        }
    }
}

#[test]
fn avoidance_examples() {
    // 2 1 5 3 is a copy of 2143
    assert!(naive_contains(&p("24153"), &p("2143")));
    assert!(!p("24153").avoids_all(&ps("2143 4321")));
    assert!(p("24153").avoids_all(&ps("4321 1234")));
    assert!(p("4321").avoids_all(&[]));
    assert!(!p("2143").avoids_all(&ps("2143 4312")));
}

#[test]
fn simplicity_examples() {
    assert!(p("2413").is_simple());
    assert!(p("3142").is_simple());
    assert!(p("1").is_simple());
    assert!(p("12").is_simple());
    assert!(!p("123").is_simple());
    assert!(!p("782139645").is_simple());
}

#[test]
fn simplicity_agrees_with_interval_scan() {
    for n in 1..=8 {
        for q in all_permutations(n) {
            assert_eq!(q.is_simple(), naive_simple(&q), "{q}");
        }
    }
}

#[test]
fn simple_counts() {
    // lengths 4..8 of the simple permutations: 2, 6, 46, 338, 2926 by scan
    let counts: Vec<usize> = (4..=8)
        .map(|n| {
            all_permutations(n)
                .iter()
                .filter(|q| naive_simple(q))
                .count()
        })
        .collect();
    let fast: Vec<usize> = (4..=8)
        .map(|n| all_permutations(n).iter().filter(|q| q.is_simple()).count())
        .collect();
    assert_eq!(fast, counts);
    assert_eq!(
        all_permutations(3).iter().filter(|q| q.is_simple()).count(),
        0
    );
}

#[test]
fn decomposition_examples() {
    let d = decompose(&p("782139645"));
    assert_eq!(d.skeleton, p("3142"));
    assert_eq!(d.blocks, ps("12 213 1 312"));

    let d = decompose(&p("1"));
    assert_eq!(d.skeleton, p("1"));
    assert_eq!(d.blocks, ps("1"));

    let d = decompose(&p("123"));
    assert_eq!(d.skeleton, p("12"));
    assert_eq!(d.blocks, ps("1 12"));

    let d = decompose(&p("321"));
    assert_eq!(d.skeleton, p("21"));
    assert_eq!(d.blocks, ps("1 21"));
}

#[test]
fn inflation_examples() {
    assert_eq!(
        inflate(&p("3142"), &ps("12 213 1 312")).unwrap(),
        p("782139645")
    );
    assert_eq!(inflate(&p("1"), &ps("2413")).unwrap(), p("2413"));
    assert_eq!(inflate(&p("21"), &ps("1 1")).unwrap(), p("21"));
    assert!(inflate(&p("21"), &ps("1")).is_err());
}

#[test]
fn decomposability_examples() {
    assert_eq!(
        classify_decomposability(&p("123")),
        Decomposability::SumDecomposable
    );
    assert_eq!(
        classify_decomposability(&p("321")),
        Decomposability::SkewDecomposable
    );
    assert_eq!(
        classify_decomposability(&p("2413")),
        Decomposability::StrongIndecomposable
    );
    assert_eq!(
        classify_decomposability(&p("1")),
        Decomposability::StrongIndecomposable
    );
}

#[test]
fn symmetry_examples() {
    assert_eq!(p("2143").reverse(), p("3412"));
    assert_eq!(p("2413").inverse(), p("3142"));
    assert_eq!(p("2413").complement(), p("3142"));
    assert_eq!(Symmetry::ReverseComplement.apply(&p("4312")), p("3421"));
    for s in Symmetry::ALL {
        let q = p("2531746");
        assert_eq!(s.inverse().apply(&s.apply(&q)), q, "{s:?}");
    }
}

#[test]
fn symmetries_preserve_containment() {
    let needle = p("2413");
    for q in all_permutations(6) {
        for s in Symmetry::ALL {
            assert_eq!(q.contains(&needle), s.apply(&q).contains(&s.apply(&needle)));
        }
    }
}

#[test]
fn malformed_input_rejected() {
    assert!("1224".parse::<Permutation>().is_err());
    assert!("2 3".parse::<Permutation>().is_err());
    assert!("1a".parse::<Permutation>().is_err());
    assert_eq!(
        "10 1 2 3 4 5 6 7 8 9".parse::<Permutation>().unwrap().len(),
        10
    );
}
