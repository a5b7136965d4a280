//! Exact integer polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

/// Univariate polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(degree: usize, coeff: i64) -> Self {
        let mut c = vec![0; degree + 1];
        c[degree] = coeff;
        Polynomial::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_term(&mut self, degree: usize, coeff: i64) {
        if self.coeffs.len() <= degree {
            self.coeffs.resize(degree + 1, 0);
        }
        self.coeffs[degree] += coeff;
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    /// Builds the generating function `Σ x^{d}` of a multiset of degrees.
    pub fn from_degrees<I: IntoIterator<Item = usize>>(degrees: I) -> Self {
        let mut p = Polynomial::zero();
        for d in degrees {
            p.add_term(d, 1);
        }
        p
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(u32, u32, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| (d as u32, 0, c))
            .rev()
            .collect();
        write_terms(f, &terms, "x", "")
    }
}

/// Bivariate polynomial in `x` and `y` with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), i64>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn monomial(xdeg: u32, ydeg: u32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(xdeg, ydeg, coeff);
        p
    }

    pub fn add_term(&mut self, xdeg: u32, ydeg: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry((xdeg, ydeg)).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&(xdeg, ydeg));
        }
    }

    pub fn coeff(&self, xdeg: u32, ydeg: u32) -> i64 {
        self.terms.get(&(xdeg, ydeg)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Non-zero terms as `(xdeg, ydeg, coeff)`, sorted by degrees.
    pub fn triples(&self) -> Vec<(u32, u32, i64)> {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c)).collect()
    }

    pub fn from_triples<I: IntoIterator<Item = (u32, u32, i64)>>(triples: I) -> Self {
        let mut p = Self::zero();
        for (a, b, c) in triples {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.terms
            .iter()
            .map(|(&(a, b), &c)| c * x.pow(a) * y.pow(b))
            .sum()
    }

    /// Specialises `x = 1`, leaving a polynomial in `y`.
    pub fn at_x_one(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (&(_, b), &c) in &self.terms {
            p.add_term(b as usize, c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn add_assign(&mut self, rhs: &BivariatePolynomial) {
        for (&(a, b), &c) in &rhs.terms {
            self.add_term(a, b, c);
        }
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples = Vec::<(u32, u32, i64)>::deserialize(d)?;
        Ok(Self::from_triples(triples))
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.triples();
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        write_terms(f, &terms, "x", "y")
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &[(u32, u32, i64)],
    xname: &str,
    yname: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, &(a, b, c)) in terms.iter().enumerate() {
        let sign = if c < 0 { "-" } else { "+" };
        if k == 0 {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        let mag = c.unsigned_abs();
        let mut vars = String::new();
        for (name, e) in [(xname, a), (yname, b)] {
            match e {
                0 => {}
                1 => vars.push_str(name),
                _ => vars.push_str(&format!("{name}^{e}")),
            }
        }
        if vars.is_empty() {
            write!(f, "{mag}")?;
        } else if mag == 1 {
            write!(f, "{vars}")?;
        } else {
            write!(f, "{mag}{vars}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let t = BivariatePolynomial::from_triples([(2, 0, 1), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(t.to_string(), "x^2 + x + y");
        assert_eq!(Polynomial::from_coeffs(vec![2, 1]).to_string(), "x + 2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let xm1 = &BivariatePolynomial::x() + &BivariatePolynomial::monomial(0, 0, -1);
        let sq = xm1.pow(2);
        assert_eq!(sq.triples(), vec![(0, 0, 1), (1, 0, -2), (2, 0, 1)]);
        assert_eq!(sq.eval(3, 7), 4);
        assert!((&sq + &BivariatePolynomial::monomial(0, 0, -1))
            .at_x_one()
            .coeffs()
            .iter()
            .all(|&c| c == -1));
    }

    #[test]
    fn serde_shapes() {
        let p = Polynomial::from_coeffs(vec![2, 1, 0]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1]");
        let t = BivariatePolynomial::from_triples([(0, 1, 1), (2, 0, 1)]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[0,1,1],[2,0,1]]");
        assert_eq!(serde_json::from_str::<BivariatePolynomial>(&s).unwrap(), t);
    }
}
