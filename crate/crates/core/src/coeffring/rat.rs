//! The coefficient field `Q(q, t)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::{div_exact, gcd_poly};
use super::poly::{Mono, QtPoly};
use crate::error::{Error, Result};

/// A reduced fraction of polynomials in `Z[q, t]`.
///
/// The numerator and denominator share no non-unit factor (integer content
/// included) and the denominator's grlex-leading coefficient is positive, so
/// equal values have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QtRat {
    num: QtPoly,
    den: QtPoly,
}

fn exact(a: &QtPoly, b: &QtPoly) -> QtPoly {
    div_exact(a, b).expect("gcd divides its arguments")
}

impl QtRat {
    pub fn zero() -> Self {
        QtRat { num: QtPoly::zero(), den: QtPoly::one() }
    }

    pub fn one() -> Self {
        QtRat { num: QtPoly::one(), den: QtPoly::one() }
    }

    pub fn q() -> Self {
        QtPoly::q().into()
    }

    pub fn t() -> Self {
        QtPoly::t().into()
    }

    pub fn from_int(c: i64) -> Self {
        QtPoly::from_int(c).into()
    }

    pub fn from_bigint(c: BigInt) -> Self {
        QtPoly::constant(c).into()
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        // BigRational is already reduced with a positive denominator
        QtRat { num: QtPoly::constant(r.numer().clone()), den: QtPoly::constant(r.denom().clone()) }
    }

    /// `c q^i t^j`
    pub fn monomial(c: i64, i: u32, j: u32) -> Self {
        QtPoly::monomial(BigInt::from(c), Mono::new(i, j)).into()
    }

    /// `q^i t^j` with possibly negative exponents.
    pub fn laurent_monomial(i: i64, j: i64) -> Self {
        let num = Mono::new(i.max(0) as u32, j.max(0) as u32);
        let den = Mono::new((-i).max(0) as u32, (-j).max(0) as u32);
        QtRat {
            num: QtPoly::monomial(BigInt::one(), num),
            den: QtPoly::monomial(BigInt::one(), den),
        }
    }

    pub fn new(num: QtPoly, den: QtPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QtPoly, den: QtPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return QtRat { num, den };
        }
        let g = gcd_poly(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (exact(&num, &g), exact(&den, &g)) };
        Self::sign_fix(num, den)
    }

    fn sign_fix(num: QtPoly, den: QtPoly) -> Self {
        if den.leading_is_negative() {
            QtRat { num: num.neg(), den: den.neg() }
        } else {
            QtRat { num, den }
        }
    }

    pub fn numer(&self) -> &QtPoly {
        &self.num
    }

    pub fn denom(&self) -> &QtPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        QtRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, c, d) = (&self.num, &self.den, &other.num, &other.den);
        if b == d {
            let n = a.add(c);
            return if b.is_one() { QtRat { num: n, den: b.clone() } } else { Self::reduce(n, b.clone()) };
        }
        if b.is_one() {
            return QtRat { num: a.mul(d).add(c), den: d.clone() };
        }
        if d.is_one() {
            return QtRat { num: c.mul(b).add(a), den: b.clone() };
        }
        let g = gcd_poly(b, d);
        if g.is_one() {
            return QtRat { num: a.mul(d).add(&c.mul(b)), den: b.mul(d) };
        }
        let bp = exact(b, &g);
        let dp = exact(d, &g);
        let num = a.mul(&dp).add(&c.mul(&bp));
        if num.is_zero() {
            return Self::zero();
        }
        let den = bp.mul(d);
        let g2 = gcd_poly(&num, &g);
        if g2.is_one() {
            QtRat { num, den }
        } else {
            QtRat { num: exact(&num, &g2), den: exact(&den, &g2) }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b, c, d) = (&self.num, &self.den, &other.num, &other.den);
        if b.is_one() && d.is_one() {
            return QtRat { num: a.mul(c), den: QtPoly::one() };
        }
        let g1 = gcd_poly(a, d);
        let g2 = gcd_poly(c, b);
        let (a, d) = if g1.is_one() { (a.clone(), d.clone()) } else { (exact(a, &g1), exact(d, &g1)) };
        let (c, b) = if g2.is_one() { (c.clone(), b.clone()) } else { (exact(c, &g2), exact(b, &g2)) };
        Self::sign_fix(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::sign_fix(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(QtRat { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.mul(&QtRat::from_int(c))
    }

    /// Adams operation `q -> q^k`, `t -> t^k`.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1, "adams index must be positive");
        if k == 1 {
            return self.clone();
        }
        Self::reduce(self.num.adams(k), self.den.adams(k))
    }

    /// `q -> 1/q`, `t -> 1/t`.
    pub fn invert_vars(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dq = self.num.degree_q().max(self.den.degree_q());
        let dt = self.num.degree_t().max(self.den.degree_t());
        Self::reduce(self.num.reflect(dq, dt), self.den.reflect(dq, dt))
    }

    /// Exact value at rational `q0`, `t0`.
    pub fn eval_at(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let den = eval_poly_rational(&self.den, q0, t0);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(eval_poly_rational(&self.num, q0, t0) / den)
    }

    /// Canonical text `num` or `(num)/(den)` with numerator and denominator in
    /// [`QtPoly::to_canonical_string`] form.
    pub fn to_canonical_string(&self) -> String {
        if self.den.is_one() {
            self.num.to_canonical_string()
        } else {
            format!("({})/({})", self.num.to_canonical_string(), self.den.to_canonical_string())
        }
    }
}

impl QtRat {
    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }
}

pub(crate) fn eval_poly_rational(p: &QtPoly, q0: &BigRational, t0: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    let mut qpow: Vec<BigRational> = vec![BigRational::one()];
    let mut tpow: Vec<BigRational> = vec![BigRational::one()];
    for (m, c) in p.terms() {
        while qpow.len() <= m.q as usize {
            let next = qpow.last().unwrap() * q0;
            qpow.push(next);
        }
        while tpow.len() <= m.t as usize {
            let next = tpow.last().unwrap() * t0;
            tpow.push(next);
        }
        total += BigRational::from_integer(c.clone()) * &qpow[m.q as usize] * &tpow[m.t as usize];
    }
    total
}

impl From<QtPoly> for QtRat {
    fn from(p: QtPoly) -> Self {
        QtRat { num: p, den: QtPoly::one() }
    }
}

impl From<i64> for QtRat {
    fn from(c: i64) -> Self {
        QtRat::from_int(c)
    }
}

impl fmt::Display for QtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &QtPoly| {
            if p.terms().len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for QtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QtRat({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QtRat> for &QtRat {
            type Output = QtRat;
            fn $method(self, rhs: &QtRat) -> QtRat {
                $body(self, rhs)
            }
        }
        impl $tr<QtRat> for QtRat {
            type Output = QtRat;
            fn $method(self, rhs: QtRat) -> QtRat {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &QtRat, b: &QtRat| QtRat::add(a, b));
forward_binop!(Sub, sub, |a: &QtRat, b: &QtRat| QtRat::sub(a, b));
forward_binop!(Mul, mul, |a: &QtRat, b: &QtRat| QtRat::mul(a, b));
forward_binop!(Div, div, |a: &QtRat, b: &QtRat| a.checked_div(b).expect("division by zero"));

impl Neg for &QtRat {
    type Output = QtRat;
    fn neg(self) -> QtRat {
        QtRat::neg(self)
    }
}

impl Neg for QtRat {
    type Output = QtRat;
    fn neg(self) -> QtRat {
        QtRat::neg(&self)
    }
}

fn poly_to_json(p: &QtPoly) -> Vec<(u32, u32, String)> {
    p.terms().iter().map(|(m, c)| (m.q, m.t, c.to_string())).collect()
}

fn poly_from_json(v: Vec<(u32, u32, String)>) -> std::result::Result<QtPoly, String> {
    let mut terms = Vec::with_capacity(v.len());
    for (i, j, c) in v {
        let c: BigInt = c.parse().map_err(|_| format!("bad integer coefficient `{c}`"))?;
        terms.push((i, j, c));
    }
    Ok(QtPoly::from_terms(terms))
}

#[derive(Serialize, Deserialize)]
struct QtRatJson {
    num: Vec<(u32, u32, String)>,
    den: Vec<(u32, u32, String)>,
}

impl Serialize for QtRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QtRatJson { num: poly_to_json(&self.num), den: poly_to_json(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QtRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QtRatJson::deserialize(d)?;
        let num = poly_from_json(raw.num).map_err(D::Error::custom)?;
        let den = poly_from_json(raw.den).map_err(D::Error::custom)?;
        QtRat::new(num, den).map_err(D::Error::custom)
    }
}

impl QtRat {
    /// True when every coefficient of the numerator is non-negative and the
    /// denominator is 1.
    pub fn is_nonnegative_polynomial(&self) -> bool {
        self.den.is_one() && self.num.terms().iter().all(|(_, c)| !c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(terms: &[(u32, u32, i64)]) -> QtRat {
        QtPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c)))).into()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn m_expansion() {
        let m = (QtRat::one() - QtRat::q()) * (QtRat::one() - QtRat::t());
        assert_eq!(m, qt(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]));
    }

    #[test]
    fn cancellation() {
        let a = qt(&[(2, 0, 1), (0, 0, -1)]);
        let b = qt(&[(1, 0, 1), (0, 0, -1)]);
        assert_eq!(a / b, qt(&[(1, 0, 1), (0, 0, 1)]));
    }

    #[test]
    fn denominator_sign_is_normalized() {
        let x = QtRat::new(QtPoly::one(), qt(&[(1, 0, -1), (0, 0, 1)]).numer().clone()).unwrap();
        assert!(!x.denom().leading_is_negative());
        assert_eq!(x.numer(), &QtPoly::from_int(-1));
    }

    #[test]
    fn integer_content_cancels() {
        let x = QtRat::new(QtPoly::from_int(4), QtPoly::from_int(6)).unwrap();
        assert_eq!(x.numer(), &QtPoly::from_int(2));
        assert_eq!(x.denom(), &QtPoly::from_int(3));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(QtRat::one().checked_div(&QtRat::zero()), Err(Error::DivisionByZero)));
        assert!(QtRat::new(QtPoly::one(), QtPoly::zero()).is_err());
    }

    #[test]
    fn adams_examples() {
        let one_minus_q = qt(&[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(one_minus_q.adams(2), qt(&[(0, 0, 1), (2, 0, -1)]));
        let m = &one_minus_q * &qt(&[(0, 0, 1), (0, 1, -1)]);
        let expect = qt(&[(0, 0, 1), (3, 0, -1)]) * qt(&[(0, 0, 1), (0, 3, -1)]);
        assert_eq!(m.adams(3), expect);
    }

    #[test]
    fn invert_vars_examples() {
        assert_eq!(QtRat::q().invert_vars(), QtRat::laurent_monomial(-1, 0));
        let one_minus_q = qt(&[(0, 0, 1), (1, 0, -1)]);
        let expect = (QtRat::q() - QtRat::one()) / QtRat::q();
        assert_eq!(one_minus_q.invert_vars(), expect);
    }

    #[test]
    fn eval_examples() {
        let m = qt(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]);
        assert_eq!(m.eval_at(&r(2, 1), &r(3, 1)).unwrap(), r(2, 1));
        let x = QtRat::q() / qt(&[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(x.eval_at(&r(1, 2), &r(0, 1)).unwrap(), r(1, 1));
        assert!(matches!(x.eval_at(&r(1, 1), &r(0, 1)), Err(Error::Pole)));
    }

    #[test]
    fn json_round_trip() {
        let x = qt(&[(0, 0, 1), (1, 0, -1)]) / qt(&[(0, 1, 2), (0, 0, 3)]);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"num\":[["));
        let y: QtRat = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn canonical_text() {
        let x = QtRat::one() / qt(&[(1, 0, 1), (0, 0, -1)]);
        assert_eq!(x.to_canonical_string(), "(1*q^0*t^0)/(1*q^1*t^0+-1*q^0*t^0)");
    }
}
