//! Integer-coefficient kernels for the hot paths: pseudo-remainder
//! sequences and sign evaluation at rational points.
//!
//! Vectors are ascending with no trailing zeros, as in [`Polynomial`].
//!
//! [`Polynomial`]: crate::poly::Polynomial

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

fn sign_of(n: &BigInt) -> Ordering {
    if n.is_positive() {
        Ordering::Greater
    } else if n.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Sign of `sum c_i x^i` at `x = a/b`, computed as the sign of
/// `sum c_i a^i b^(d-i)` (the denominator of a `BigRational` is positive).
pub(crate) fn sign_at<'a, I>(descending: I, x: &Rational) -> Ordering
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let (a, b) = (x.numer(), x.denom());
    let mut it = descending.into_iter();
    let Some(lead) = it.next() else {
        return Ordering::Equal;
    };
    let mut h = lead.clone();
    if b.is_one() {
        for c in it {
            h = h * a + c;
        }
    } else {
        let mut pb = BigInt::one();
        for c in it {
            pb *= b;
            h *= a;
            if !c.is_zero() {
                h += c * &pb;
            }
        }
    }
    sign_of(&h)
}

pub(crate) fn sign_at_pos_infinity(c: &[BigInt]) -> Ordering {
    c.last().map_or(Ordering::Equal, sign_of)
}

pub(crate) fn sign_at_neg_infinity(c: &[BigInt]) -> Ordering {
    let s = sign_at_pos_infinity(c);
    if c.len().is_multiple_of(2) {
        s.reverse()
    } else {
        s
    }
}

pub(crate) fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * BigInt::from(i))
        .collect()
}

/// Divides out the positive content and strips trailing zeros.
pub(crate) fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let content = c.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if !content.is_zero() && !content.is_one() {
        for a in &mut c {
            *a /= &content;
        }
    }
    c
}

/// A positive multiple of `a mod b`, made primitive. `b` must be nonzero.
///
/// Each reduction step scales by `|lc(b)|` rather than `lc(b)`, so the sign
/// of the true remainder is kept, as Sturm sequences require.
pub(crate) fn signed_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let abs_lb = lb.abs();
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.pop().expect("r is longer than db");
        let shift = r.len() - db;
        let f = if lb.is_negative() { -lr } else { lr };
        if !abs_lb.is_one() {
            for c in &mut r {
                *c *= &abs_lb;
            }
        }
        for (j, bj) in b[..db].iter().enumerate() {
            r[shift + j] -= &f * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    primitive(r)
}

/// Primitive gcd (up to sign) of two integer polynomials, not both zero.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = (primitive(a.to_vec()), primitive(b.to_vec()));
    while !b.is_empty() {
        let r = signed_prem(&a, &b);
        a = b;
        b = r;
    }
    a
}
