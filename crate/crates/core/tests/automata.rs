use num_bigint::BigInt;
use permgrid::automata::Dfa;
use permgrid::classes::languages::{language_b, language_b_dfa, PairReading};
use permgrid::classes::resources;
use permgrid::perm::parse_list;
use permgrid::RationalFunction;

const FIB: &str = "\
alphabet: a b c
initial: s
accepting: a ab
s c c
b a a
a c c
ab c c
c b b
b c c
a b ab
ab a a
";

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn fibonacci_automaton() {
    let d: Dfa = FIB.parse().unwrap();
    assert!(d.accepts("cba"));
    assert!(!d.accepts(""));
    assert!(!d.accepts("cbx"));
    assert_eq!(d.count_words(7), ints(&[0, 0, 0, 1, 1, 2, 3, 5]));
    assert_eq!(d.gf(), rf("x^3/(1-x-x^2)"));
    // the E∩F automaton for simples containing 2413 is this one
    assert_eq!(resources::dfa("EF_2413").unwrap().gf(), d.gf());
}

#[test]
fn self_loops() {
    for k in 1..=4usize {
        let letters: Vec<char> = "abcd".chars().take(k).collect();
        let d = Dfa::all_words(&letters, &letters);
        let counts = d.count_words(8);
        for (n, c) in counts.iter().enumerate() {
            assert_eq!(*c, BigInt::from(k).pow(n as u32));
        }
    }
    assert_eq!(Dfa::all_words(&['a'], &['a']).gf(), rf("1/(1-x)"));
}

#[test]
fn simples_automata_against_closed_forms() {
    let e = resources::dfa("E_simples").unwrap();
    let s_e = resources::gf("s_E").unwrap();
    assert_eq!(e.gf().drop_below(4).unwrap(), s_e);
    assert_eq!(&e.count_words(12)[4..], &s_e.series(12).unwrap()[4..]);

    let t = resources::dfa("T").unwrap();
    let s_t = resources::gf("s_T").unwrap();
    assert_eq!(t.gf(), s_t.add(&RationalFunction::x_pow(3)));
    assert_eq!(t.words(3).len(), 1);
}

#[test]
fn language_b_avoids_its_basis() {
    let b = language_b().unwrap();
    // no word of the scheme spells 4321 or 2143, so no product with B can meet them
    for basis in ["4321", "2143"] {
        let q = parse_list(basis).unwrap().remove(0);
        assert!(b.scheme.encodings_of(&q).is_empty(), "{basis}");
    }
    for n in 1..=9 {
        for w in b.dfa.words(n) {
            let q = b.decode(&w);
            assert!(q.avoids_all(&b.basis), "{w} decodes to {q}");
        }
    }
}

#[test]
fn factor_reading_of_b_is_a_sublanguage() {
    let sub = language_b_dfa(PairReading::Subword);
    let fac = language_b_dfa(PairReading::Factor);
    assert!(fac.difference(&sub).unwrap().is_empty());
}

#[test]
fn subword_containment() {
    let ab = Dfa::subword_containment("ab", &['a', 'b']).unwrap();
    for (w, ok) in [
        ("ab", true),
        ("aab", true),
        ("abb", true),
        ("ba", false),
        ("", false),
        ("bbba", false),
    ] {
        assert_eq!(ab.accepts(w), ok, "{w}");
    }
    let a = Dfa::subword_containment("a", &['a', 'b']).unwrap();
    for (n, c) in a.count_words(12).iter().enumerate() {
        assert_eq!(*c, BigInt::from(2).pow(n as u32) - 1);
    }
}

#[test]
fn complement_partitions_resource_automata() {
    for name in resources::list("dfa").unwrap() {
        let d = resources::dfa(&name).unwrap();
        let k = d.alphabet().len();
        let (x, y) = (d.count_words(12), d.complement().count_words(12));
        for n in 0..=12 {
            assert_eq!(&x[n] + &y[n], BigInt::from(k).pow(n as u32), "{name} n={n}");
        }
        assert!(d.intersect(&d.complement()).unwrap().is_empty());
        assert_eq!(d.complement().complement().count_words(12), x);
    }
    let all = Dfa::empty_language(&['a', 'b']).complement();
    assert_eq!(all.count_words(4)[4], BigInt::from(16));
}

#[test]
fn de_morgan() {
    let d = resources::dfa("T").unwrap();
    let alphabet = d.alphabet().to_vec();
    let q = Dfa::factor_containment("ab", &alphabet).unwrap();
    let lhs = d.union(&q).unwrap().complement();
    let rhs = d.complement().intersect(&q.complement()).unwrap();
    assert_eq!(lhs.count_words(12), rhs.count_words(12));
    assert_eq!(lhs.minimize(), rhs.minimize());
    let lhs = d.intersect(&q).unwrap().complement();
    let rhs = d.complement().union(&q.complement()).unwrap();
    assert_eq!(lhs.count_words(12), rhs.count_words(12));
}

#[test]
fn normalize_is_idempotent_and_preserves_counts() {
    for name in resources::list("dfa").unwrap() {
        let d = resources::dfa(&name).unwrap();
        let n = d.normalize();
        assert_eq!(n.normalize(), n, "{name}");
        assert_eq!(n.count_words(12), d.count_words(12), "{name}");
        assert_eq!(d.minimize().count_words(12), d.count_words(12), "{name}");
    }
    let none: Dfa = "alphabet: a\ninitial: s\naccepting:\ns a s\n"
        .parse()
        .unwrap();
    assert!(none.is_empty());
}

#[test]
fn text_round_trip() {
    for name in resources::list("dfa").unwrap() {
        let d = resources::dfa(&name).unwrap();
        let back: Dfa = d.to_text().parse().unwrap();
        assert_eq!(back.count_words(10), d.count_words(10), "{name}");
    }
}

#[test]
fn mismatched_alphabets_rejected() {
    let a = Dfa::all_words(&['a'], &['a']);
    let b = Dfa::all_words(&['a'], &['a', 'b']);
    assert!(a.intersect(&b).is_err());
}
