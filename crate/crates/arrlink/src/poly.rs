//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are ordered graded-lexicographically with `x0 > x1 > ...`, and
//! every routine that enumerates monomials of a fixed degree lists them in
//! descending order. That fixed order is what gives oracle matrices their
//! column indexing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{normalize, Rational};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree in `nvars` variables, in descending
/// graded-lex order. There are `C(degree + nvars - 1, nvars - 1)` of them.
pub fn monomial_basis(degree: u32, nvars: usize) -> Vec<Monomial> {
    fn fill(rest: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if slot + 1 == n {
            cur[slot] = rest;
            out.push(Monomial(cur.clone()));
            cur[slot] = 0;
            return;
        }
        for e in (0..=rest).rev() {
            cur[slot] = e;
            fill(rest - e, slot + 1, cur, out);
        }
        cur[slot] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    fill(degree, 0, &mut vec![0; nvars], &mut out);
    out
}

/// Number of monomials of degree `degree` in `nvars` variables, zero for
/// negative degrees.
pub fn count_monomials(degree: i64, nvars: usize) -> u64 {
    if degree < 0 {
        return 0;
    }
    if nvars == 0 {
        return u64::from(degree == 0);
    }
    binomial(degree as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomial basis of one degree together with a reverse lookup table.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    basis: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(degree: u32, nvars: usize) -> Self {
        let basis = monomial_basis(degree, nvars);
        let position = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { basis, position }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }
}

/// A polynomial with rational coefficients. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect(),
        }
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Evaluates at a point with one coordinate per variable.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Coordinates of the degree-`index` part in the given monomial basis.
    /// Terms of other degrees are ignored.
    pub fn coefficient_vector(&self, index: &MonomialIndex) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); index.len()];
        for (m, c) in &self.terms {
            if let Some(i) = index.position(m) {
                v[i] = c.clone();
            }
        }
        v
    }

    pub fn from_coefficient_vector(nvars: usize, index: &MonomialIndex, v: &[Rational]) -> Poly {
        Poly::from_terms(
            nvars,
            index.basis().iter().cloned().zip(v.iter().cloned()),
        )
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = images.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(target);
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::constant(target, Rational::one()), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Parses the textual form produced by `Display`, for example
    /// `2*x0^2*x1 - 1/3*x2^3`.
    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        Parser::new(text, nvars).parse()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                write_rational(f, &abs)?;
                if !factors.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            nvars,
            text,
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse {
            line: 1,
            message: format!("{what} at column {} in {:?}", self.pos + 1, self.text),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>().map_err(|_| self.error("bad integer"))
    }

    fn parse(mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.nvars);
        let mut sign = Rational::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            None => return Err(self.error("empty polynomial")),
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, c * &sign);
            match self.peek() {
                None => break,
                Some('+') => {
                    sign = Rational::one();
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -Rational::one();
                    self.pos += 1;
                }
                Some(_) => return Err(self.error("unexpected character")),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.nvars];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits()?;
                    let mut value = Rational::from_integer(num);
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let den = self.digits()?;
                        if den.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        value /= Rational::from_integer(den);
                    }
                    coeff *= value;
                }
                Some('x') => {
                    self.pos += 1;
                    let idx = self.digits()?;
                    let idx: usize = idx
                        .try_into()
                        .map_err(|_| self.error("variable index too large"))?;
                    if idx >= self.nvars {
                        return Err(self.error(&format!("variable x{idx} out of range")));
                    }
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let p = self.digits()?;
                        e = p.try_into().map_err(|_| self.error("exponent too large"))?;
                    }
                    exps[idx] += e;
                }
                _ => return Err(self.error("expected a number or a variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial(exps), coeff))
    }
}

/// A nonzero linear form `sum a_i x_i`, normalized so that its first nonzero
/// coefficient is one. The same coefficient vector read as projective
/// coordinates is the dual point of the form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let coeffs = normalize(&coeffs).ok_or(Error::ZeroForm)?;
        Ok(LinearForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        LinearForm::new(coeffs.iter().map(|&c| crate::linalg::rat(c)).collect())
    }

    /// The coordinate form `x_i` in `nvars` variables.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); nvars];
        c[i] = Rational::one();
        LinearForm { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// Value of the form at a point (no projective normalization).
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        crate::linalg::dot(&self.coeffs, point)
    }

    /// Forms are normalized, so proportional forms compare equal.
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        self == other
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.coeffs.len();
        Poly::from_terms(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Parses `a` or `a/b` with an optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        line: 1,
        message: format!("not a rational number: {s:?}"),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn render_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Product of linear forms. The result is homogeneous of degree `fs.len()`.
///
/// # Panics
/// Panics on an empty list, since the number of variables is then unknown.
pub fn product(fs: &[LinearForm]) -> Poly {
    let n = fs.first().expect("product of an empty list of forms").nvars();
    fs.iter()
        .fold(Poly::constant(n, Rational::one()), |acc, l| &acc * &l.to_poly())
}

/// Directional derivative `sum a_i df/dx_i` for `l = sum a_i x_i`.
pub fn directional_derivative(f: &Poly, l: &LinearForm) -> Poly {
    let mut out = Poly::zero(f.nvars());
    for (i, a) in l.coeffs().iter().enumerate() {
        if !a.is_zero() {
            out = &out + &f.partial(i).scale(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};
    use proptest::prelude::*;

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::from_i64(c).unwrap()
    }

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    #[test]
    fn products_of_forms() {
        assert_eq!(product(&[lf(&[1, 0, 0])]), p("x0", 3));
        assert_eq!(
            product(&[lf(&[1, 0, 0]), lf(&[0, 1, 0]), lf(&[0, 0, 1])]),
            p("x0*x1*x2", 3)
        );
        assert_eq!(product(&[lf(&[1, 1]), lf(&[1, -1])]), p("x0^2 - x1^2", 2));
    }

    #[test]
    fn directional_derivatives() {
        assert_eq!(directional_derivative(&p("x0^2", 3), &lf(&[1, 0, 0])), p("2*x0", 3));
        assert_eq!(directional_derivative(&p("x0*x1", 3), &lf(&[1, 1, 0])), p("x0 + x1", 3));
        assert_eq!(directional_derivative(&p("x0*x1*x2", 3), &lf(&[1, 0, 0])), p("x1*x2", 3));
        assert!(directional_derivative(&p("5", 3), &lf(&[1, 2, 3])).is_zero());
    }

    #[test]
    fn evaluation() {
        let pt = [rat(1), rat(-1), rat(0)];
        assert_eq!(p("x0 + x1", 3).evaluate(&pt).unwrap(), rat(0));
        assert_eq!(p("x0*x1*x2", 3).evaluate(&[rat(1), rat(1), rat(1)]).unwrap(), rat(1));
        let l = lf(&[1, 2, 5]);
        let g = directional_derivative(&p("x0*x1*x2", 3), &l);
        assert_eq!(g.evaluate(l.coeffs()).unwrap(), rat(30));
    }

    #[test]
    fn monomial_bases() {
        assert_eq!(monomial_basis(0, 3), vec![Monomial::one(3)]);
        assert_eq!(
            monomial_basis(1, 3),
            vec![Monomial::var(3, 0), Monomial::var(3, 1), Monomial::var(3, 2)]
        );
        assert_eq!(monomial_basis(2, 3).len(), 6);
        for d in 0..6 {
            for n in 1..5 {
                assert_eq!(monomial_basis(d, n).len() as u64, count_monomials(d as i64, n));
            }
        }
        let b = monomial_basis(3, 3);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn render_and_parse_round_trip() {
        let f = Poly::from_terms(
            3,
            [
                (Monomial::new(vec![2, 1, 0]), rat(2)),
                (Monomial::new(vec![0, 0, 3]), ratio(-1, 3)),
            ],
        );
        assert_eq!(f.to_string(), "2*x0^2*x1 - 1/3*x2^3");
        assert_eq!(p("2*x0^2*x1 - 1/3*x2^3", 3), f);
        assert_eq!(p("-x0 + 3", 2).to_string(), "-x0 + 3");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(Poly::parse("x3", 3).is_err());
        assert!(Poly::parse("2**x0", 3).is_err());
        assert!(Poly::parse("", 3).is_err());
        assert!(Poly::parse("1/0*x0", 3).is_err());
    }

    #[test]
    fn linear_forms_normalize() {
        let l = lf(&[0, 2, -4]);
        assert_eq!(l.coeffs(), &[rat(0), rat(1), rat(-2)]);
        assert!(l.is_proportional(&lf(&[0, -1, 2])));
        assert_eq!(LinearForm::from_i64(&[0, 0]), Err(Error::ZeroForm));
    }

    fn arb_homogeneous() -> impl Strategy<Value = (Poly, u32)> {
        (1u32..5, prop::collection::vec(-5i64..6, 15)).prop_map(|(d, cs)| {
            let basis = monomial_basis(d, 3);
            let f = Poly::from_terms(
                3,
                basis.into_iter().zip(cs.into_iter().cycle()).map(|(m, c)| (m, rat(c))),
            );
            (f, d)
        })
    }

    proptest! {
        #[test]
        fn euler_relation((f, d) in arb_homogeneous()) {
            let mut euler = Poly::zero(3);
            for i in 0..3 {
                euler = &euler + &(&Poly::var(3, i) * &f.partial(i));
            }
            prop_assert_eq!(euler, f.scale(&rat(d as i64)));
        }

        #[test]
        fn derivative_is_linear_in_the_form(
            (f, _d) in arb_homogeneous(),
            a in prop::collection::vec(-4i64..5, 3),
            b in prop::collection::vec(-4i64..5, 3),
        ) {
            let raw = |c: &[i64]| c.iter().map(|&x| rat(x)).collect::<Vec<_>>();
            let along = |c: &[Rational]| {
                let mut out = Poly::zero(3);
                for (i, x) in c.iter().enumerate() {
                    out = &out + &f.partial(i).scale(x);
                }
                out
            };
            let sum: Vec<Rational> = raw(&a).iter().zip(raw(&b)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(along(&sum), &along(&raw(&a)) + &along(&raw(&b)));
            if let Ok(l) = LinearForm::new(raw(&a)) {
                // Normalization rescales the derivative but not its span.
                let lead = raw(&a).into_iter().find(|x| !x.is_zero()).unwrap();
                prop_assert_eq!(directional_derivative(&f, &l).scale(&lead), along(&raw(&a)));
            }
        }

        #[test]
        fn product_ignores_order(cs in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..5)) {
            let forms: Vec<LinearForm> = cs.iter().filter_map(|c| LinearForm::from_i64(c).ok()).collect();
            prop_assume!(!forms.is_empty());
            let mut rev = forms.clone();
            rev.reverse();
            prop_assert_eq!(product(&forms), product(&rev));
        }

        #[test]
        fn rendering_round_trips((f, _d) in arb_homogeneous()) {
            prop_assert_eq!(Poly::parse(&f.to_string(), 3).unwrap(), f);
        }
    }
}
