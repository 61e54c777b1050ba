//! Dense univariate polynomials over an integral domain, used to compute
//! greatest common divisors in `Z[q, t]` by viewing it as `Z[t][q]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Option<Self>;
    /// Greatest common divisor with non-negative leading sign.
    fn gcd(&self, other: &Self) -> Self;
    fn lead_negative(&self) -> bool;

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn lead_negative(&self) -> bool {
        self.is_negative()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub(crate) struct UPoly<D> {
    // coefficient of x^i at index i; no trailing zeros
    pub(crate) c: Vec<D>,
}

impl<D: Domain> UPoly<D> {
    pub(crate) fn new(mut c: Vec<D>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lc(&self) -> &D {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    fn scale(&self, s: &D) -> Self {
        Self::new(self.c.iter().map(|x| x.mul(s)).collect())
    }

    fn div_coeffs(&self, s: &D) -> Option<Self> {
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x.div_exact(s)?);
        }
        Some(UPoly { c: out })
    }

    pub(crate) fn content(&self) -> D {
        let mut g = D::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let g = self.content();
        self.div_coeffs(&g).expect("content divides every coefficient")
    }

    fn sign_normalized(self) -> Self {
        if self.c.last().is_some_and(|x| x.lead_negative()) {
            UPoly { c: self.c.iter().map(|x| x.neg()).collect() }
        } else {
            self
        }
    }

    /// `self - s * x^shift * other`
    fn sub_shifted(&self, other: &Self, s: &D, shift: usize) -> Self {
        let mut out = self.c.clone();
        if out.len() < other.c.len() + shift {
            out.resize(other.c.len() + shift, D::zero());
        }
        for (i, x) in other.c.iter().enumerate() {
            out[i + shift] = out[i + shift].sub(&x.mul(s));
        }
        Self::new(out)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return self.clone(),
        };
        let lb = b.lc().clone();
        let mut r = self.clone();
        let mut steps = 0usize;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().clone();
            r = r.scale(&lb).sub_shifted(b, &lr, dr - db);
            steps += 1;
        }
        let missing = da - db + 1 - steps;
        if missing > 0 {
            r = r.scale(&lb.pow(missing));
        }
        r
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub(crate) fn div_exact_poly(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let mut r = self.clone();
        let mut quo: Vec<D> = vec![D::zero(); self.c.len().saturating_sub(db).max(1)];
        let lb = b.lc();
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let coef = r.lc().div_exact(lb)?;
            r = r.sub_shifted(b, &coef, dr - db);
            quo[dr - db] = coef;
        }
        Some(Self::new(quo))
    }

    /// Subresultant polynomial remainder sequence gcd.
    pub(crate) fn gcd_poly(&self, other: &Self) -> Self {
        if self.c.is_empty() {
            return other.clone().sign_normalized();
        }
        if other.c.is_empty() {
            return self.clone().sign_normalized();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = D::one();
        let mut h = D::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.prem(&b);
            if r.c.is_empty() {
                break;
            }
            if r.degree() == Some(0) {
                b = UPoly { c: vec![D::one()] };
                break;
            }
            let divisor = g.mul(&h.pow(delta));
            a = b;
            b = r.div_coeffs(&divisor).expect("subresultant division is exact");
            g = a.lc().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                d => g.pow(d).div_exact(&h.pow(d - 1)).expect("subresultant h update is exact"),
            };
        }
        b.primitive_part().scale(&cont).sign_normalized()
    }
}

impl<D: Domain> Domain for UPoly<D> {
    fn zero() -> Self {
        UPoly { c: Vec::new() }
    }
    fn one() -> Self {
        UPoly { c: vec![D::one()] }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let z = D::zero();
        Self::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z).add(other.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let z = D::zero();
        Self::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z).sub(other.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }
    fn mul(&self, other: &Self) -> Self {
        if self.c.is_empty() || other.c.is_empty() {
            return Self::zero();
        }
        let mut out = vec![D::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| x.neg()).collect() }
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.c.len() == 1 {
            return self.div_coeffs(&other.c[0]);
        }
        self.div_exact_poly(other)
    }
    fn gcd(&self, other: &Self) -> Self {
        if self.is_one() || other.is_one() {
            return Self::one();
        }
        self.gcd_poly(other)
    }
    fn lead_negative(&self) -> bool {
        self.c.last().is_some_and(|x| x.lead_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> UPoly<BigInt> {
        UPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn univariate_gcd() {
        // (x-1)(x+1) and (x-1)^2
        let a = zp(&[-1, 0, 1]);
        let b = zp(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), zp(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = zp(&[6, 6]);
        let b = zp(&[4, 4]);
        assert_eq!(a.gcd(&b), zp(&[2, 2]));
    }

    #[test]
    fn exact_division() {
        let a = zp(&[-1, 0, 1]);
        let b = zp(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(zp(&[-1, 1])));
        assert_eq!(zp(&[1, 0, 1]).div_exact(&b), None);
    }

    #[test]
    fn coprime_gives_one() {
        let a = zp(&[1, 0, 1]);
        let b = zp(&[2, 1]);
        assert!(a.gcd(&b).is_one());
    }
}
