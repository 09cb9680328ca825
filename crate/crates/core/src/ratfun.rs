//! Exact univariate polynomials and rational functions over the integers.
//!
//! A [`RationalFunction`] is kept in a canonical form: numerator and
//! denominator are coprime, their joint integer content is 1 and the lowest
//! nonzero coefficient of the denominator is positive. For every generating
//! function that occurs in this crate the denominator then has constant term
//! `+1`, so two constructions of the same function compare equal
//! structurally and print in the familiar `(1 - 2*x)` style.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};

/// Dense polynomial, `coeffs[k]` is the coefficient of `x^k`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Polynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `k` with `x^k` dividing `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, computed in Z[x].
    fn pseudo_rem(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = a.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            // r <- lb*r - lr*x^(dr-db)*b
            r = &r.scale(&lb) - &b.scale(&lr).shift(dr - db);
        }
        r
    }

    /// Greatest common divisor in Z[x], primitive with positive leading coefficient.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        let (mut u, mut v) = if a.degree() >= b.degree() {
            (a.primitive_part(), b.primitive_part())
        } else {
            (b.primitive_part(), a.primitive_part())
        };
        while !v.is_zero() {
            let r = Self::pseudo_rem(&u, &v);
            u = v;
            v = r.primitive_part();
        }
        u
    }

    /// Division that must be exact over Z; `None` otherwise.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let dd = d.degree()?;
        let ld = d.leading().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (c, rem) = r.leading().unwrap().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &d.scale(&c).shift(dr - dd);
            q[dr - dd] = c;
        }
        Some(Polynomial::new(q))
    }

    /// Evaluates `self(x/(1-x)) * (1-x)^m` for `m >= deg`.
    fn compose_inflation(&self, m: usize) -> Polynomial {
        let one_minus_x = Polynomial::from_i64s(&[1, -1]);
        let mut acc = Polynomial::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = one_minus_x.pow((m - k) as u32).shift(k).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Quotient of two integer polynomials in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Polynomial::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        let low = &den.coeffs[den.valuation().unwrap()];
        if low.is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::constant(BigInt::from(c)))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// The formal variable `x`.
    pub fn x() -> Self {
        Self::from_poly(Polynomial::monomial(1))
    }

    pub fn x_pow(k: usize) -> Self {
        Self::from_poly(Polynomial::monomial(k))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::canonical(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        self.mul(&Self::from_int(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Order of vanishing at `x = 0` (negative for a pole). `None` for zero.
    pub fn order(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().unwrap() as i64;
        Some(vn - vd)
    }

    /// Taylor coefficients `c_0..=c_{n_max}`.
    pub fn series(&self, n_max: usize) -> Result<Vec<BigInt>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NotAPowerSeries);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = self.num.coeff(n);
            for k in 1..=n.min(self.den.coeffs.len().saturating_sub(1)) {
                acc -= &self.den.coeffs[k] * &out[n - k];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(Error::NonIntegralSeries(n));
            }
            out.push(q);
        }
        Ok(out)
    }

    /// Removes every term of degree below `k` from the expansion.
    pub fn drop_below(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        let head = self.series(k - 1)?;
        Ok(self.sub(&Self::from_poly(Polynomial::new(head))))
    }

    /// Composition with `x/(1-x)`.
    pub fn substitute_inflation(&self) -> Self {
        let m = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        Self::canonical(self.num.compose_inflation(m), self.den.compose_inflation(m))
    }

    /// `s(x/(1-x)) * ((1-x)/x)^k * prod(factors)`: every point of a simple
    /// inflates by a nonempty monotone sequence except `k` distinguished points,
    /// which inflate by the supplied generating functions.
    pub fn inflation_gf(&self, special_factors: &[RationalFunction]) -> Result<Self> {
        let k = special_factors.len();
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let order = self.order().unwrap();
        if order < k as i64 {
            return Err(Error::InflationOrder { order, factors: k });
        }
        let back =
            RationalFunction::canonical(Polynomial::from_i64s(&[1, -1]), Polynomial::monomial(1));
        let mut acc = self.substitute_inflation().mul(&back.pow(k as u32));
        for f in special_factors {
            acc = acc.mul(f);
        }
        if acc.den.coeff(0).is_zero() {
            return Err(Error::NotAPowerSeries);
        }
        Ok(acc)
    }

    /// Renders with the denominator (and numerator) factored over `factors`
    /// when they divide out completely; otherwise falls back to expanded form.
    pub fn display_factored(&self, factors: &[Polynomial]) -> String {
        let den = factor_over(&self.den, factors);
        let num = factor_over(&self.num, factors);
        match (num, den) {
            (Some(n), Some(d)) if !d.is_empty() => format!("{n} / {d}"),
            (Some(n), Some(_)) => n,
            _ => self.to_string(),
        }
    }
}

/// Writes `p` as `c * x^v * rest * prod f_i^e_i`, with whatever is left after
/// dividing out the known factors kept as one parenthesized factor.
fn factor_over(p: &Polynomial, factors: &[Polynomial]) -> Option<String> {
    if p.is_zero() {
        return Some("0".into());
    }
    let v = p.valuation().unwrap();
    let mut rest = Polynomial::new(p.coeffs[v..].to_vec());
    let mut parts: Vec<String> = Vec::new();
    for f in factors {
        let mut e = 0;
        while rest.degree().unwrap_or(0) > 0 {
            match rest.div_exact(f) {
                Some(q) => {
                    rest = q;
                    e += 1;
                }
                None => break,
            }
        }
        if e == 1 {
            parts.push(format!("({f})"));
        } else if e > 1 {
            parts.push(format!("({f})^{e}"));
        }
    }
    let mut head = String::new();
    let rest_is_const = rest.degree() == Some(0);
    if rest_is_const {
        let c = &rest.coeffs[0];
        if !c.is_one() || (v == 0 && parts.is_empty()) {
            if (-c).is_one() && (v > 0 || !parts.is_empty()) {
                head.push('-');
            } else {
                head.push_str(&c.to_string());
            }
        }
    }
    let mut items: Vec<String> = Vec::new();
    if !head.is_empty() && head != "-" {
        items.push(head.clone());
    }
    match v {
        0 => {}
        1 => items.push("x".into()),
        _ => items.push(format!("x^{v}")),
    }
    if !rest_is_const {
        if rest.term_count() == 1 {
            items.push(rest.to_string());
        } else {
            items.push(format!("({rest})"));
        }
    }
    items.extend(parts);
    let body = items.join("*");
    let body = if head == "-" {
        format!("-{body}")
    } else {
        body
    };
    if body.is_empty() || p.is_one() {
        Some(String::new())
    } else {
        Some(body)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Polynomial| {
            if p.term_count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::add(self, rhs)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::sub(self, rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::mul(self, rhs)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::div`] to handle it.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::div(self, rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

impl FromStr for RationalFunction {
    type Err = Error;

    /// Parses arithmetic expressions in `x` with integers, `+ - * / ^` and
    /// parentheses. The expanded output of `Display` is one instance.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = ExprParser {
            src: s,
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let r = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(parse_err(s, format!("unexpected {:?}", p.chars[p.pos])));
        }
        Ok(r)
    }
}

struct ExprParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d)?;
                }
                // implicit multiplication: "2x", "x(1-x)", "(1-x)(1-2x)"
                'x' | '(' => acc = &acc * &self.unary()?,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek() == Some('+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| parse_err(self.src, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err(self.src, format!("expected a number at {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('x') | Some('t') => {
                self.pos += 1;
                Ok(RationalFunction::x())
            }
            Some('(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(parse_err(self.src, "missing ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::from_poly(Polynomial::constant(n)))
            }
            Some(c) => Err(parse_err(self.src, format!("unexpected {c:?}"))),
            None => Err(parse_err(self.src, "unexpected end of input")),
        }
    }
}
