//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is the
//! graded lexicographic order with `x0 > x1 > ... > xN`. The map never holds a
//! zero coefficient, so two polynomials are equal exactly when their maps are.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::point::PointQ;
use crate::rational::{format_rational, Rational};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a homogeneity query. The zero polynomial gets its own variant
/// instead of a sentinel degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Homogeneity::Zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::monomial(num_vars, Monomial::one(num_vars), c)
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::monomial(num_vars, Monomial::var(num_vars, i), Rational::one())
    }

    pub fn monomial(num_vars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), num_vars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { num_vars, terms }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut p = MultiPoly::zero(num_vars);
        for (c, e) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Homogeneous(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    /// Degree when homogeneous; `None` for zero or mixed-degree input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneity().degree()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.num_vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn differentiate(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.num_vars {
            return Err(Error::VarIndex {
                index: i,
                num_vars: self.num_vars,
            });
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.terms.insert(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.num_vars)
            .map(|i| self.differentiate(i).expect("index in range"))
            .collect()
    }

    pub fn evaluate(&self, pt: &PointQ) -> Result<Rational> {
        self.evaluate_slice(pt.coords())
    }

    pub fn evaluate_slice(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                got: x.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; self.num_vars];
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &x[i];
                    table.push(next);
                }
                t *= &table[e as usize];
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces variable `i` by `images[i]`. All images must share one
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                got: images.len(),
            });
        }
        let target_vars = images.first().map_or(0, |p| p.num_vars);
        if let Some(bad) = images.iter().find(|p| p.num_vars != target_vars) {
            return Err(Error::Dimension {
                expected: target_vars,
                got: bad.num_vars,
            });
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(target_vars)]; self.num_vars];
        let mut out = MultiPoly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &images[i];
                    table.push(next);
                }
                t = &t * &table[e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact quotient `m / f` if `f` divides `m`, by single-divisor long
    /// division in the graded lexicographic order.
    ///
    /// A single polynomial is a Gröbner basis of the ideal it generates, so a
    /// nonzero remainder certifies non-membership.
    pub fn divides(f: &MultiPoly, m: &MultiPoly) -> Result<Option<MultiPoly>> {
        if f.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if f.num_vars != m.num_vars {
            return Err(Error::Dimension {
                expected: f.num_vars,
                got: m.num_vars,
            });
        }
        let (lm_f, lc_f) = f.leading_term().expect("nonzero");
        let mut rest = m.clone();
        let mut quotient = MultiPoly::zero(m.num_vars);
        while let Some((lm, lc)) = rest.leading_term() {
            let Some(shift) = lm.div(lm_f) else {
                // The leading term of the remainder can never be cancelled later.
                return Ok(None);
            };
            let c = lc / lc_f;
            rest = &rest - &f.mul_term(&shift, &c);
            quotient.add_term(shift, c);
        }
        Ok(Some(quotient))
    }

    /// Canonical text form using the given variable names; terms in
    /// descending monomial order.
    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        self.display_with(vars).to_string()
    }
}

pub fn default_var_names(num_vars: usize) -> Vec<String> {
    (0..num_vars).map(|i| format!("x{i}")).collect()
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                let name = self
                    .vars
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{i}"));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.num_vars);
        write!(f, "{}", self.display_with(&names))
    }
}

fn check_vars(a: &MultiPoly, b: &MultiPoly) {
    assert_eq!(
        a.num_vars, b.num_vars,
        "polynomials over different variable sets"
    );
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        check_vars(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        check_vars(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        check_vars(self, rhs);
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::{rat, ratio};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn quartic() -> (MultiPoly, Vec<String>) {
        let vars = names(&["w0", "w1", "w2", "w3"]);
        let f = parse_poly(
            "w0^2*w3^2 - 6*w0*w1*w2*w3 + 4*w0*w2^3 + 4*w1^3*w3 - 3*w1^2*w2^2",
            &vars,
        )
        .unwrap();
        (f, vars)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![1, 0, 0, 1]);
        let b = Monomial::new(vec![0, 1, 1, 0]);
        let c = Monomial::new(vec![3, 0, 0, 0]);
        assert!(a > b);
        assert!(a < c);
    }

    #[test]
    fn power_rule() {
        let vars = names(&["x0", "x1", "x2", "x3"]);
        let p = parse_poly("x0^2*x3^2", &vars).unwrap();
        let d = p.differentiate(0).unwrap();
        assert_eq!(d, parse_poly("2*x0*x3^2", &vars).unwrap());
        assert!(MultiPoly::constant(4, rat(5)).differentiate(0).unwrap().is_zero());
        assert!(matches!(p.differentiate(4), Err(Error::VarIndex { .. })));
    }

    #[test]
    fn quartic_partial_w0() {
        let (f, vars) = quartic();
        let expected = parse_poly("2*w0*w3^2 - 6*w1*w2*w3 + 4*w2^3", &vars).unwrap();
        assert_eq!(f.differentiate(0).unwrap(), expected);
    }

    #[test]
    fn evaluation() {
        let (f, _) = quartic();
        let e = |v: [i64; 4]| f.evaluate(&PointQ::from_ints(&v)).unwrap();
        assert_eq!(e([1, 0, 0, 0]), rat(0));
        assert_eq!(e([1, 1, 1, 1]), rat(0));
        let vars = names(&["x0", "x1"]);
        let g = parse_poly("x0^2 + x1^2", &vars).unwrap();
        assert_eq!(g.evaluate(&PointQ::from_ints(&[3, 4])).unwrap(), rat(25));
        assert!(matches!(
            g.evaluate(&PointQ::from_ints(&[1, 2, 3])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn homogeneity_cases() {
        let (f, _) = quartic();
        assert_eq!(f.homogeneity(), Homogeneity::Homogeneous(4));
        let vars = names(&["x0", "x1"]);
        let g = parse_poly("x0 + x1^2", &vars).unwrap();
        assert_eq!(g.homogeneous_degree(), None);
        assert_eq!(g.homogeneity(), Homogeneity::Inhomogeneous);
        let z = MultiPoly::zero(2);
        assert_eq!(z.homogeneous_degree(), None);
        assert!(z.homogeneity().is_zero());
    }

    #[test]
    fn division_cases() {
        let vars = names(&["x0", "x1"]);
        let x0 = parse_poly("x0", &vars).unwrap();
        let x0sq = parse_poly("x0^2", &vars).unwrap();
        let x1 = parse_poly("x1", &vars).unwrap();
        assert_eq!(MultiPoly::divides(&x0, &x0sq).unwrap(), Some(x0.clone()));
        assert_eq!(MultiPoly::divides(&x0, &x1).unwrap(), None);
        assert_eq!(
            MultiPoly::divides(&MultiPoly::zero(2), &x1),
            Err(Error::ZeroDivisor)
        );
        // remainder term that sits below the leading term
        let p = parse_poly("x0^2 + x1", &vars).unwrap();
        assert_eq!(MultiPoly::divides(&x0, &p).unwrap(), None);
    }

    #[test]
    fn canonical_display() {
        let vars = names(&["w0", "w1", "w2", "w3"]);
        let p = parse_poly("-6*w1*w2 + 4*w0*w3", &vars).unwrap();
        assert_eq!(p.to_string_with(&vars), "4*w0*w3 - 6*w1*w2");
        let q = MultiPoly::constant(2, ratio(-1, 2)) + parse_poly("x0", &names(&["x0", "x1"])).unwrap();
        assert_eq!(q.to_string(), "x0 - 1/2");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
        let r = parse_poly("-x0^2*x1", &names(&["x0", "x1"])).unwrap();
        assert_eq!(r.to_string(), "-x0^2*x1");
    }

    #[test]
    fn substitution_is_composition() {
        let vars = names(&["x0", "x1"]);
        let p = parse_poly("x0^2 - x1^2", &vars).unwrap();
        let images = vec![
            parse_poly("x0 + x1", &vars).unwrap(),
            parse_poly("x0 - x1", &vars).unwrap(),
        ];
        assert_eq!(
            p.substitute(&images).unwrap(),
            parse_poly("4*x0*x1", &vars).unwrap()
        );
    }

    #[test]
    fn pow_matches_repeated_product() {
        let vars = names(&["x0", "x1"]);
        let p = parse_poly("x0 - 2*x1 + 1/3", &vars).unwrap();
        assert_eq!(p.pow(3), &(&p * &p) * &p);
        assert_eq!(p.pow(0), MultiPoly::one(2));
    }
}
