//! Symmetric functions stored in the power-sum basis.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::basis::{Basis, BasisCache};
use super::partition::Partition;
use crate::coeffring::Scalar;
use crate::error::{Error, Result};

/// A finite sum `sum_rho c_rho p_rho`.
#[derive(Clone, PartialEq)]
pub struct SymFunc<S> {
    terms: BTreeMap<Partition, S>,
}

pub(crate) fn ratio<S: Scalar>(n: &BigInt) -> S {
    S::from_ratio(&BigRational::from_integer(n.clone()))
}

impl<S: Scalar> SymFunc<S> {
    pub fn zero() -> Self {
        SymFunc { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::p_term(Partition::empty(), c)
    }

    pub fn p(rho: Partition) -> Self {
        Self::p_term(rho, S::one())
    }

    pub fn p_term(rho: Partition, c: S) -> Self {
        let mut f = Self::zero();
        f.add_term(rho, c);
        f
    }

    pub fn from_p_terms<I: IntoIterator<Item = (Partition, S)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (rho, c) in terms {
            f.add_term(rho, c);
        }
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Partition, S> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, rho: &Partition) -> S {
        self.terms.get(rho).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, rho: Partition, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(rho) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Degrees of the non-zero homogeneous components, increasing.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.keys().map(Partition::size).collect();
        out.dedup();
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Partition::size)
    }

    /// The degree if `self` is non-zero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn component(&self, d: usize) -> Self {
        SymFunc {
            terms: self.terms.iter().filter(|(r, _)| r.size() == d).map(|(r, c)| (r.clone(), c.clone())).collect(),
        }
    }

    pub fn components(&self) -> BTreeMap<usize, Self> {
        let mut out: BTreeMap<usize, Self> = BTreeMap::new();
        for (r, c) in &self.terms {
            out.entry(r.size()).or_insert_with(Self::zero).terms.insert(r.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (r, c) in &other.terms {
            self.add_term(r.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(r.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| c.mul(s))
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SymFunc<T> {
        SymFunc::from_p_terms(self.terms.iter().map(|(r, c)| (r.clone(), f(c))))
    }

    pub fn try_map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<SymFunc<T>> {
        let mut out = SymFunc::zero();
        for (r, c) in &self.terms {
            out.add_term(r.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &other.terms {
                out.add_term(ra.union(rb), ca.mul(cb));
            }
        }
        out
    }

    /// Hall scalar product, `<p_rho, p_sigma> = z_rho delta`.
    pub fn hall(&self, other: &Self) -> S {
        let mut acc = S::zero();
        for (r, c) in &self.terms {
            if let Some(d) = other.terms.get(r) {
                acc = acc.add(&c.mul(d).mul(&ratio::<S>(&r.z())));
            }
        }
        acc
    }

    /// `p_k -> (-1)^(k-1) p_k`.
    pub fn omega(&self) -> Self {
        self.map_power_sums(|r| r.sign())
    }

    /// `f[-X]`: `p_k -> -p_k`.
    pub fn negate_alphabet(&self) -> Self {
        self.map_power_sums(|r| if r.len() % 2 == 0 { 1 } else { -1 })
    }

    fn map_power_sums(&self, sign: impl Fn(&Partition) -> i64) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (r.clone(), if sign(r) < 0 { c.neg() } else { c.clone() }))
                .collect(),
        }
    }

    /// `f^perp g`, the adjoint of multiplication by `f`; `p_k^perp` acts as
    /// `k d/dp_k`.
    pub fn perp(f: &Self, g: &Self) -> Self {
        let mut out = Self::zero();
        for (rho, cf) in &f.terms {
            let mr = rho.multiplicities();
            for (sigma, cg) in &g.terms {
                let ms = sigma.multiplicities();
                if mr.len() > ms.len() || mr.iter().zip(&ms).any(|(a, b)| a > b) {
                    continue;
                }
                let mut factor = BigInt::one();
                let mut rest = Vec::with_capacity(sigma.len());
                for (k, &b) in ms.iter().enumerate().skip(1) {
                    let a = mr.get(k).copied().unwrap_or(0);
                    for i in 0..a {
                        factor *= BigInt::from(k) * BigInt::from(b - i);
                    }
                    rest.extend(std::iter::repeat(k as u32).take((b - a) as usize));
                }
                let c = cf.mul(cg).mul(&ratio::<S>(&factor));
                out.add_term(Partition::from_parts(rest), c);
            }
        }
        out
    }

    /// The basis element `b_lambda`.
    pub fn basis_element(bases: &BasisCache, b: Basis, lambda: &Partition) -> Result<Self> {
        if b == Basis::P {
            return Ok(Self::p(lambda.clone()));
        }
        let t = bases.tables(lambda.size())?;
        let i = t.index_of(lambda).expect("partition of the table degree");
        let row = &t.to_p(b)[i];
        Ok(Self::from_p_terms(
            t.parts.iter().zip(row).map(|(rho, c)| (rho.clone(), S::from_ratio(c))),
        ))
    }

    /// `sum_lambda c_lambda b_lambda`.
    pub fn from_basis<'a, I>(bases: &BasisCache, b: Basis, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a Partition, &'a S)>,
        S: 'a,
    {
        let mut out = Self::zero();
        for (lambda, c) in coeffs {
            out.add_assign(&Self::basis_element(bases, b, lambda)?.scale(c));
        }
        Ok(out)
    }

    pub fn e(bases: &BasisCache, n: usize) -> Result<Self> {
        Self::basis_element(bases, Basis::E, &Partition::row(n as u32))
    }

    pub fn h(bases: &BasisCache, n: usize) -> Result<Self> {
        Self::basis_element(bases, Basis::H, &Partition::row(n as u32))
    }

    pub fn s(bases: &BasisCache, lambda: &Partition) -> Result<Self> {
        Self::basis_element(bases, Basis::S, lambda)
    }

    pub fn m(bases: &BasisCache, lambda: &Partition) -> Result<Self> {
        Self::basis_element(bases, Basis::M, lambda)
    }

    /// Expansion in the basis `b`, keyed by partition.
    pub fn to_basis(&self, bases: &BasisCache, b: Basis) -> Result<BTreeMap<Partition, S>> {
        if b == Basis::P {
            return Ok(self.terms.clone());
        }
        let mut out = BTreeMap::new();
        for (d, comp) in self.components() {
            let t = bases.tables(d)?;
            let inv = t.from_p(b);
            let mut acc = vec![S::zero(); t.parts.len()];
            for (rho, c) in &comp.terms {
                let i = t.index_of(rho).expect("partition of the component degree");
                for (j, m) in inv[i].iter().enumerate() {
                    if !num_traits::Zero::is_zero(m) {
                        acc[j] = acc[j].add(&c.mul(&S::from_ratio(m)));
                    }
                }
            }
            for (lambda, c) in t.parts.iter().zip(acc) {
                if !c.is_zero() {
                    out.insert(lambda.clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// Checks that every component is within the degree bound.
    pub fn check_degree(&self, bases: &BasisCache) -> Result<()> {
        match self.max_degree() {
            Some(d) => bases.check_degree(d),
            None => Ok(()),
        }
    }

    pub fn expect_homogeneous(&self, what: &str) -> Result<usize> {
        if self.is_zero() {
            return Ok(0);
        }
        self.homogeneous_degree()
            .ok_or_else(|| Error::domain(format!("{what} must be homogeneous, got degrees {:?}", self.degrees())))
    }
}

impl<S: Scalar> Default for SymFunc<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> fmt::Display for SymFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*p{r}")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for SymFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::QtRat;

    type F = SymFunc<QtRat>;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn power_sums_multiply() {
        assert_eq!(F::p(part(&[2])).mul(&F::p(part(&[1]))), F::p(part(&[2, 1])));
    }

    #[test]
    fn hall_on_power_sums() {
        assert_eq!(F::p(part(&[2])).hall(&F::p(part(&[2]))), QtRat::from_int(2));
        assert_eq!(F::p(part(&[2])).hall(&F::p(part(&[1, 1]))), QtRat::zero());
    }

    #[test]
    fn perp_of_h1_on_h1() {
        let b = BasisCache::new(4);
        let h1 = F::h(&b, 1).unwrap();
        assert_eq!(F::perp(&h1, &h1), F::one());
        for r in 1..4 {
            assert!(F::perp(&F::h(&b, r).unwrap(), &F::one()).is_zero());
        }
        assert_eq!(F::perp(&F::one(), &F::one()), F::one());
    }

    #[test]
    fn omega_sends_e_to_h() {
        let b = BasisCache::new(5);
        for n in 0..=5 {
            assert_eq!(F::e(&b, n).unwrap().omega(), F::h(&b, n).unwrap());
        }
    }

    #[test]
    fn components_split_by_degree() {
        let f = F::p(part(&[2])).add(&F::p(part(&[1]))).add(&F::one());
        assert_eq!(f.degrees(), vec![0, 1, 2]);
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(f.component(1), F::p(part(&[1])));
        assert_eq!(f.components().len(), 3);
    }
}
