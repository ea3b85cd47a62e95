//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending order (index `i` holds the
//! coefficient of `x^i`) and trailing zeros are always stripped, so the zero
//! polynomial is the empty vector and structural equality is polynomial
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly;

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign of a rational as an ordering against zero.
pub fn sign(r: &Rational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coefficients(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_coefficients(vec![Rational::zero(), Rational::one()])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::from_coefficients(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn from_coefficients(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Same as [`Polynomial::from_coefficients`] for integer coefficients.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coefficients(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Builds a polynomial from coefficients given highest degree first.
    pub fn from_descending(mut coeffs: Vec<Rational>) -> Self {
        coeffs.reverse();
        Self::from_coefficients(coeffs)
    }

    /// `(x - r)`
    pub fn linear_root(r: Rational) -> Self {
        Self::from_coefficients(vec![-r, Rational::one()])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coefficients(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.coeffs.iter().all(Rational::is_integer) {
            intpoly::sign_at(self.coeffs.iter().rev().map(Rational::numer), x)
        } else {
            intpoly::sign_at(self.integer_coefficients().iter().rev(), x)
        }
    }

    /// Sign of `p(x)` as `x -> +inf`.
    pub fn sign_at_pos_infinity(&self) -> Ordering {
        self.leading_coefficient().map_or(Ordering::Equal, sign)
    }

    /// Sign of `p(x)` as `x -> -inf`.
    pub fn sign_at_neg_infinity(&self) -> Ordering {
        match self.degree() {
            None => Ordering::Equal,
            Some(d) if d % 2 == 0 => self.sign_at_pos_infinity(),
            Some(_) => self.sign_at_pos_infinity().reverse(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coefficients(quot), Self::from_coefficients(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "inexact division {self} / {divisor}");
        Ok(q)
    }

    /// Scales to leading coefficient one. The zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Positive rational multiple with coprime integer coefficients.
    ///
    /// The sign of every coefficient is preserved, which keeps Sturm chains
    /// valid when their members are normalized this way.
    pub fn primitive(&self) -> Self {
        Self::from_integers(self.integer_coefficients())
    }

    /// Coefficients of [`Polynomial::primitive`] as integers.
    pub(crate) fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        intpoly::primitive(scaled)
    }

    pub(crate) fn from_integers(coeffs: Vec<BigInt>) -> Self {
        Self::from_coefficients(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// Monic greatest common divisor, via a primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let g = intpoly::gcd(&self.integer_coefficients(), &other.integer_coefficients());
        Ok(Self::from_integers(g).monic())
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_part"));
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }
}

impl fmt::Display for Polynomial {
    /// Ascending comma-separated coefficients, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_coefficients(s).map(Self::from_coefficients)
    }
}

/// Parses the comma-separated coefficient list without reordering it.
pub fn parse_coefficients(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            Rational::from_str(tok).map_err(|e| Error::Parse(format!("`{tok}`: {e}")))
        })
        .collect()
}

/// Pretty form such as `16x^4 - 16x^2 + 4`, for humans only.
pub fn pretty(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coefficients().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag_str = if mag.is_integer() {
            mag.to_string()
        } else {
            format!("({mag})")
        };
        match i {
            0 => out.push_str(&mag_str),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag_str);
                }
                out.push('x');
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coefficients((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coefficients((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coefficients(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn construction_strips_trailing_zeros() {
        assert_eq!(p(&[1, 0, 1]).degree(), Some(2));
        assert!(p(&[0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
        let q = Polynomial::from_coefficients(vec![int(4), int(0), rat(-80, 5), int(0), int(16)]);
        assert_eq!(q, p(&[4, 0, -16, 0, 16]));
        assert_eq!(q.degree(), Some(4));
    }

    #[test]
    fn derivative_power_rule() {
        assert_eq!(p(&[1, 0, 1]).derivative(), p(&[0, 2]));
        assert_eq!(p(&[1, 0, 0, 0, 1]).derivative(), p(&[0, 0, 0, 4]));
        assert!(p(&[5]).derivative().is_zero());
    }

    #[test]
    fn ring_arithmetic() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[0, 2]).scale(&int(3)), p(&[0, 6]));
        assert!((&p(&[1, 0, 1]) - &p(&[1, 0, 1])).is_zero());
        assert_eq!(&p(&[1, 2]) + &p(&[0, -2, 3]), p(&[1, 0, 3]));
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
        assert_eq!(a.div_rem(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(
            p(&[1, 0, 1]).gcd(&p(&[-1, 0, 1])).unwrap(),
            Polynomial::one()
        );
        // Euclid by hand: 16x^4-80x^2+32 = (-x^2/3 + 5/3)(-48x^2) + 32, so the gcd is 1.
        assert_eq!(
            p(&[0, 0, -48]).gcd(&p(&[32, 0, -80, 0, 16])).unwrap(),
            Polynomial::one()
        );
        assert_eq!(
            Polynomial::zero().gcd(&Polynomial::zero()),
            Err(Error::GcdOfZeros)
        );
        assert_eq!(
            Polynomial::zero().gcd(&p(&[2, 4])).unwrap(),
            Polynomial::from_coefficients(vec![rat(1, 2), int(1)])
        );
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(f.squarefree_part().unwrap(), p(&[-2, 1, 1]));
        assert_eq!(p(&[1, 0, 1]).squarefree_part().unwrap(), p(&[1, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 4]).squarefree_part().unwrap(), Polynomial::x());
        assert!(Polynomial::zero().squarefree_part().is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, 0, 1]).eval(&int(0)), int(1));
        assert_eq!(p(&[-4]).eval(&int(7)), int(-4));
        assert_eq!(p(&[32, 0, -80, 0, 16]).eval(&int(1)), int(-32));
        assert_eq!(p(&[0, 0, 1]).eval(&rat(1, 3)), rat(1, 9));
    }

    #[test]
    fn primitive_preserves_signs() {
        let q = Polynomial::from_coefficients(vec![rat(-3, 4), rat(1, 2), rat(-9, 8)]);
        assert_eq!(q.primitive(), p(&[-6, 4, -9]));
    }

    #[test]
    fn text_format() {
        let q: Polynomial = "4, 0, -80/5, 0, 16".parse().unwrap();
        assert_eq!(q.to_string(), "4,0,-16,0,16");
        assert_eq!(
            "1/2,-3/4".parse::<Polynomial>().unwrap().to_string(),
            "1/2,-3/4"
        );
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert!("1,,2".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
        assert!("1/0".parse::<Polynomial>().is_err());
        assert!("x".parse::<Polynomial>().is_err());
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(pretty(&p(&[4, 0, -16, 0, 16])), "16x^4 - 16x^2 + 4");
        assert_eq!(pretty(&p(&[0, -1])), "-x");
    }
}
