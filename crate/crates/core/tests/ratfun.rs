use num_bigint::BigInt;
use permgrid::classes::resources;
use permgrid::{Polynomial, RationalFunction};

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn arithmetic_examples() {
    let a = rf("x/(1-2*x)");
    assert_eq!(a.add(&a), rf("2*x/(1-2*x)"));
    assert_eq!(rf("1-x").mul(&rf("1/(1-x)")), RationalFunction::one());
    assert_eq!(a.sub(&a), RationalFunction::zero());
    assert_eq!(a.div(&a).unwrap(), RationalFunction::one());
    assert!(a.div(&RationalFunction::zero()).is_err());
}

#[test]
fn canonical_form_is_structural() {
    // same function written two ways
    let a = rf("(2*x - 2*x^2)/(2 - 6*x + 4*x^2)");
    let b = rf("x/(1-2*x)");
    assert_eq!(a, b);
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(a.denominator().coeff(0), BigInt::from(1));
}

#[test]
fn series_examples() {
    assert_eq!(
        rf("x/(1-2*x)").series(5).unwrap(),
        ints(&[0, 1, 2, 4, 8, 16])
    );
    assert_eq!(rf("1/(1-x)").series(6).unwrap(), ints(&[1; 7]));
    assert_eq!(
        rf("x^3/(1-x-x^2)").series(8).unwrap(),
        ints(&[0, 0, 0, 1, 1, 2, 3, 5, 8])
    );
}

#[test]
fn substitute_inflation_examples() {
    assert_eq!(rf("x/(1-2*x)").substitute_inflation(), rf("x/(1-3*x)"));
    assert_eq!(
        RationalFunction::one().substitute_inflation(),
        RationalFunction::one()
    );
    assert_eq!(rf("x").substitute_inflation(), rf("x/(1-x)"));
}

#[test]
fn inflation_gf_examples() {
    let f_e = rf("x/(1-2*x)");
    let s_ca = rf("x^5*(2+x)/(1-2*x^2-x^3)");
    assert_eq!(
        s_ca.inflation_gf(&[f_e.clone(), f_e.clone()]).unwrap(),
        rf("x^5*(2-x)/((1-2*x)^2*(1-3*x+x^2)*(1-x))")
    );
    let s_4x7 = rf("x^5/(1-x)^3");
    assert_eq!(
        s_4x7.inflation_gf(&[f_e.clone(), f_e]).unwrap(),
        rf("x^5/(1-2*x)^5")
    );
    for k in 1..=4 {
        let xs = vec![RationalFunction::x(); k];
        assert_eq!(
            RationalFunction::x_pow(k).inflation_gf(&xs).unwrap(),
            RationalFunction::x_pow(k)
        );
    }
}

#[test]
fn fixture_closed_forms_parse_and_round_trip() {
    for name in resources::list("gf").unwrap() {
        let g = resources::gf(&name).unwrap();
        let back: RationalFunction = g.to_string().parse().unwrap();
        assert_eq!(back, g, "{name}");
        assert!(g.order().is_none_or(|o| o >= 0), "{name}");
    }
}

#[test]
fn polynomial_gcd_and_exact_division() {
    let a = Polynomial::from_i64s(&[1, -3, 2]); // (1-x)(1-2x)
    let b = Polynomial::from_i64s(&[1, -1]);
    let g = Polynomial::gcd(&a, &b);
    assert_eq!(g.primitive_part(), b.primitive_part());
    assert_eq!(a.div_exact(&b).unwrap(), Polynomial::from_i64s(&[1, -2]));
    assert!(a.div_exact(&Polynomial::from_i64s(&[1, -3])).is_none());
}

#[test]
fn drop_below_removes_low_terms() {
    let g = rf("1/(1-x)").drop_below(3).unwrap();
    assert_eq!(g.series(5).unwrap(), ints(&[0, 0, 0, 1, 1, 1]));
    assert_eq!(g, rf("x^3/(1-x)"));
}
