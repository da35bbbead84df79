//! Stirling numbers, binomial-coefficient polynomials and truncated
//! exponential generating functions in `y` with coefficients in `Q[x, t]`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactgeom::{rational, Rational};
use crate::faces::FaceCountTable;
use crate::poset::BivariatePolynomial;
use crate::{Error, Result};

/// `S(n, l)` for all `0 ≤ l ≤ n ≤ max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    values: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut values: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max_n {
            let prev = &values[n - 1];
            let row = (0..=n)
                .map(|l| {
                    let carry = if l >= 1 { prev[l - 1].clone() } else { BigInt::zero() };
                    let stay = prev.get(l).map(|s| s * BigInt::from(l)).unwrap_or_default();
                    carry + stay
                })
                .collect();
            values.push(row);
        }
        StirlingTable { values }
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize, l: usize) -> Option<&BigInt> {
        self.values.get(n)?.get(l)
    }
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, l: usize) -> Result<BigInt> {
    if l > n {
        return Err(Error::OutOfRange(format!("S({n}, {l}) needs l ≤ n")));
    }
    Ok(StirlingTable::new(n).values[n][l].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomShift {
    /// `C(t, l)`
    None,
    /// `C((t − 1)/2, l)`
    Half,
}

/// `base (base − 1) ⋯ (base − k + 1) / k!`.
pub fn binomial_of(base: &BivariatePolynomial, k: usize) -> BivariatePolynomial {
    let mut out = BivariatePolynomial::one();
    let mut factorial = BigInt::one();
    for i in 0..k {
        out = &out * &(base - &BivariatePolynomial::constant(rational(i as i64)));
        factorial *= BigInt::from(i + 1);
    }
    out.scale(&Rational::new(BigInt::one(), factorial))
}

pub fn binom_poly(l: usize, shift: BinomShift) -> BivariatePolynomial {
    let base = match shift {
        BinomShift::None => BivariatePolynomial::t(),
        BinomShift::Half => {
            let half = Rational::new(1.into(), 2.into());
            &BivariatePolynomial::t().scale(&half) - &BivariatePolynomial::constant(half)
        }
    };
    binomial_of(&base, l)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Exponent of a formal binomial power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    T,
    NegT,
}

/// `Σ_{n ≤ N} c_n y^n / n!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BivariatePolynomial>,
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        TruncatedSeries { coeffs: vec![BivariatePolynomial::zero(); truncation + 1] }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BivariatePolynomial::one();
        s
    }

    /// The series `y`.
    pub fn y(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if truncation >= 1 {
            s.coeffs[1] = BivariatePolynomial::one();
        }
        s
    }

    /// Coefficients `c_0..c_N`; must be nonempty.
    pub fn from_coeffs(coeffs: Vec<BivariatePolynomial>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BivariatePolynomial] {
        &self.coeffs
    }

    /// `c_n`, the coefficient of `y^n / n!`.
    pub fn coeff(&self, n: usize) -> &BivariatePolynomial {
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, c: BivariatePolynomial) {
        self.coeffs[n] = c;
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch { left: self.truncation(), right: other.truncation() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Coefficientwise product by a polynomial in `x, t`.
    pub fn scale(&self, k: &BivariatePolynomial) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// EGF product: `c_n = Σ_k C(n, k) a_k b_{n−k}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = (0..=self.truncation())
            .map(|n| {
                let mut c = BivariatePolynomial::zero();
                for k in 0..=n {
                    if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                        continue;
                    }
                    let weight = Rational::from_integer(binomial(n, k));
                    c += &(&self.coeffs[k] * &other.coeffs[n - k]).scale(&weight);
                }
                c
            })
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn power(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.truncation()), |acc, _| acc.mul(self).expect("same truncation"))
    }

    /// Substitutes `(x, y) → (−x, −y)`: `c_n(x) → (−1)^n c_n(−x)`.
    pub fn negate_xy(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c.negate_x() } else { c.negate_x() })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// The `x = 0` slice.
    pub fn at_x_zero(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(BivariatePolynomial::at_x_zero).collect() }
    }

    /// `(1 + u)^{±t} = Σ_k C(±t, k) u^k` for `self = 1 + u`; the constant
    /// term of `self` must be exactly 1.
    pub fn binomial_power(&self, exponent: Exponent) -> Result<Self> {
        if self.coeffs[0] != BivariatePolynomial::one() {
            return Err(Error::ConstantTerm);
        }
        let n = self.truncation();
        let mut u = self.clone();
        u.coeffs[0] = BivariatePolynomial::zero();
        let base = match exponent {
            Exponent::T => BivariatePolynomial::t(),
            Exponent::NegT => -BivariatePolynomial::t(),
        };
        let mut out = Self::zero(n);
        let mut u_power = Self::one(n);
        for k in 0..=n {
            out = out.add(&u_power.scale(&binomial_of(&base, k)))?;
            u_power = u_power.mul(&u)?;
        }
        Ok(out)
    }
}

/// `F_l` truncated at `N = tables.len()`, where `tables[i]` is the count
/// table of the arrangement in dimension `i + 1`.
pub fn egf_truncated(tables: &[FaceCountTable], l: usize) -> Result<TruncatedSeries> {
    let truncation = tables.len();
    let mut series = TruncatedSeries::zero(truncation);
    for (i, table) in tables.iter().enumerate() {
        let n = i + 1;
        if table.n() != n {
            return Err(Error::MissingTable(n));
        }
        let mut c = BivariatePolynomial::zero();
        for d in l..=n {
            c.add_term((n - d) as u32, 0, Rational::from_integer(BigInt::from(table.f(d, l))));
        }
        series.coeffs[n] = c;
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64) -> Rational {
        rational(n)
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(stirling2(2, 1).unwrap(), BigInt::from(1));
        assert_eq!(stirling2(4, 2).unwrap(), BigInt::from(7));
        assert_eq!(stirling2(0, 0).unwrap(), BigInt::from(1));
        assert!(matches!(stirling2(2, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn binomial_polynomials() {
        assert_eq!(binom_poly(2, BinomShift::None).to_string(), "1/2*t^2 - 1/2*t");
        assert_eq!(binom_poly(1, BinomShift::Half).to_string(), "1/2*t - 1/2");
        assert_eq!(binom_poly(0, BinomShift::Half), BivariatePolynomial::one());
    }

    #[test]
    fn egf_products() {
        let y = TruncatedSeries::y(2);
        assert_eq!(y.power(1), y);
        assert_eq!(y.mul(&y).unwrap().coeff(2), &BivariatePolynomial::constant(q(2)));
        assert!(matches!(y.mul(&TruncatedSeries::y(3)), Err(Error::TruncationMismatch { .. })));
    }

    #[test]
    fn binomial_power_of_one_plus_y() {
        let s = TruncatedSeries::one(2).add(&TruncatedSeries::y(2)).unwrap();
        let p = s.binomial_power(Exponent::T).unwrap();
        let t = BivariatePolynomial::t();
        assert_eq!(p.coeff(0), &BivariatePolynomial::one());
        assert_eq!(p.coeff(1), &t);
        assert_eq!(p.coeff(2), &(&(&t * &t) - &t));
        assert_eq!(TruncatedSeries::y(2).binomial_power(Exponent::T), Err(Error::ConstantTerm));
    }

    #[test]
    fn negation_flips_odd_degrees() {
        let mut s = TruncatedSeries::zero(2);
        s.set_coeff(1, BivariatePolynomial::one());
        s.set_coeff(2, BivariatePolynomial::x());
        let r = s.negate_xy();
        assert_eq!(r.coeff(1), &BivariatePolynomial::constant(q(-1)));
        assert_eq!(r.coeff(2), &-BivariatePolynomial::x());
    }
}
