use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::{self, Write};
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use num_traits::{One, Signed, Zero};

use crate::exactgeom::Rational;

/// Polynomial in `x` and `t` with rational coefficients, keyed by
/// `(x exponent, t exponent)`. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(x_exp: u32, t_exp: u32, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(x_exp, t_exp, coeff);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn t() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn add_term(&mut self, x_exp: u32, t_exp: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((x_exp, t_exp)).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(x_exp, t_exp));
        }
    }

    /// Terms in increasing `(x exponent, t exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, x_exp: u32, t_exp: u32) -> Rational {
        self.terms.get(&(x_exp, t_exp)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BivariatePolynomial { terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational, t: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(i, j), c)| {
            acc + c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(t.clone(), j as usize)
        })
    }

    /// The `x = 0` slice.
    pub fn at_x_zero(&self) -> Self {
        BivariatePolynomial { terms: self.terms.iter().filter(|(e, _)| e.0 == 0).map(|(&e, c)| (e, c.clone())).collect() }
    }

    /// Substitutes `x → −x`.
    pub fn negate_x(&self) -> Self {
        BivariatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j), if i % 2 == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Coefficient of `x^i` as a polynomial in `t` alone.
    pub fn x_coefficient(&self, i: u32) -> Self {
        BivariatePolynomial {
            terms: self.terms.iter().filter(|(e, _)| e.0 == i).map(|(&(_, j), c)| ((0, j), c.clone())).collect(),
        }
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // total degree descending, then t-degree descending
        let mut order: alloc::vec::Vec<_> = self.terms.iter().collect();
        order.sort_by_key(|(&(i, j), _)| (core::cmp::Reverse(i + j), core::cmp::Reverse(j)));
        let mut out = String::new();
        for (k, (&(i, j), c)) in order.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = String::new();
            for (var, e) in [("x", i), ("t", j)] {
                if e == 0 {
                    continue;
                }
                if !factors.is_empty() {
                    factors.push('*');
                }
                factors.push_str(var);
                if e > 1 {
                    write!(factors, "^{e}")?;
                }
            }
            if factors.is_empty() {
                write!(out, "{magnitude}")?;
            } else if magnitude.is_one() {
                out.push_str(&factors);
            } else {
                write!(out, "{magnitude}*{factors}")?;
            }
        }
        f.write_str(&out)
    }
}

impl AddAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn add_assign(&mut self, rhs: &BivariatePolynomial) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
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

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(mut self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        self += &rhs;
        self
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn neg(self) -> BivariatePolynomial {
        -&self
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}
