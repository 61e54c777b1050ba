//! Sparse polynomials in `q` and `t` with arbitrary-precision integer
//! coefficients.
//!
//! Terms are kept sorted by the graded lexicographic order with `q > t`,
//! greatest monomial first. Zero coefficients are never stored, so two equal
//! polynomials always have identical term vectors.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent pair `q^q t^t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    pub q: u32,
    pub t: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { q: 0, t: 0 };

    pub fn new(q: u32, t: u32) -> Self {
        Mono { q, t }
    }

    pub fn degree(self) -> u32 {
        self.q + self.t
    }

    fn mul(self, other: Mono) -> Mono {
        Mono { q: self.q + other.q, t: self.t + other.t }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.q.cmp(&other.q))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QtPoly {
    // descending grlex, no zero coefficients
    terms: Vec<(Mono, BigInt)>,
}

impl QtPoly {
    pub fn zero() -> Self {
        QtPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, Mono::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn monomial(c: BigInt, m: Mono) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            QtPoly { terms: vec![(m, c)] }
        }
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), Mono::new(1, 0))
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), Mono::new(0, 1))
    }

    /// Builds a polynomial from arbitrary `(q exponent, t exponent, coefficient)`
    /// triples; repeated monomials are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigInt)>,
    {
        let mut v: Vec<(Mono, BigInt)> =
            terms.into_iter().map(|(i, j, c)| (Mono::new(i, j), c)).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QtPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The integer value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn degree_q(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.q).max().unwrap_or(0)
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.t).max().unwrap_or(0)
    }

    pub fn min_mono(&self) -> Mono {
        let q = self.terms.iter().map(|(m, _)| m.q).min().unwrap_or(0);
        let t = self.terms.iter().map(|(m, _)| m.t).min().unwrap_or(0);
        Mono::new(q, t)
    }

    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Self {
        QtPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((*m, if negate { -c } else { c.clone() }));
        }
        QtPoly { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].1, self.terms[0].0);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].1, other.terms[0].0);
        }
        // dense accumulation over the bounding box of the product
        let (qa, ta) = (self.degree_q() as usize, self.degree_t() as usize);
        let (qb, tb) = (other.degree_q() as usize, other.degree_t() as usize);
        let width = ta + tb + 1;
        if let (Some(sa), Some(sb)) = (self.small_coeffs(), other.small_coeffs()) {
            // |c| < 2^40 keeps every partial sum well inside i128
            let mut acc: Vec<i128> = vec![0; (qa + qb + 1) * width];
            for ((ma, _), ca) in self.terms.iter().zip(&sa) {
                for ((mb, _), cb) in other.terms.iter().zip(&sb) {
                    acc[(ma.q + mb.q) as usize * width + (ma.t + mb.t) as usize] += ca * cb;
                }
            }
            let mut out: Vec<(Mono, BigInt)> = Vec::new();
            for (idx, c) in acc.into_iter().enumerate() {
                if c != 0 {
                    out.push((Mono::new((idx / width) as u32, (idx % width) as u32), BigInt::from(c)));
                }
            }
            out.sort_by(|a, b| b.0.cmp(&a.0));
            return QtPoly { terms: out };
        }
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); (qa + qb + 1) * width];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let idx = (ma.q + mb.q) as usize * width + (ma.t + mb.t) as usize;
                acc[idx] += ca * cb;
            }
        }
        let mut out: Vec<(Mono, BigInt)> = Vec::new();
        for (idx, c) in acc.into_iter().enumerate() {
            if !c.is_zero() {
                out.push((Mono::new((idx / width) as u32, (idx % width) as u32), c));
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        QtPoly { terms: out }
    }

    fn small_coeffs(&self) -> Option<Vec<i128>> {
        const BOUND: i64 = 1 << 40;
        self.terms
            .iter()
            .map(|(_, c)| c.to_i64().filter(|v| v.abs() < BOUND).map(i128::from))
            .collect()
    }

    pub fn mul_term(&self, c: &BigInt, m: Mono) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QtPoly { terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(c, Mono::ONE)
    }

    /// Exact division by a non-zero integer; `None` if some coefficient is not
    /// divisible.
    pub fn div_int(&self, c: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, cc) in &self.terms {
            let (quo, rem) = cc.div_rem(c);
            if !rem.is_zero() {
                return None;
            }
            out.push((*m, quo));
        }
        Some(QtPoly { terms: out })
    }

    /// Divides by the monomial `m`, which must divide every term.
    pub fn div_mono(&self, m: Mono) -> Self {
        QtPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (Mono::new(mm.q - m.q, mm.t - m.t), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `q -> q^k`, `t -> t^k`.
    pub fn adams(&self, k: u32) -> Self {
        QtPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.q * k, m.t * k), c.clone()))
                .collect(),
        }
    }

    /// `q^dq t^dt * P(1/q, 1/t)`; requires `dq >= deg_q` and `dt >= deg_t`.
    pub fn reflect(&self, dq: u32, dt: u32) -> Self {
        let mut terms: Vec<(Mono, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (Mono::new(dq - m.q, dt - m.t), c.clone()))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        QtPoly { terms }
    }

    /// Specialization `q = 1`, a polynomial in `t` alone.
    pub fn at_q_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (0, m.t, c.clone())))
    }

    /// Sign of the leading (grlex-greatest) coefficient.
    pub fn leading_is_negative(&self) -> bool {
        self.terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    /// Dense form as coefficients of `q^i`, each a dense polynomial in `t`.
    pub(crate) fn to_dense_q(&self) -> Vec<Vec<BigInt>> {
        let dq = self.degree_q() as usize;
        let mut out: Vec<Vec<BigInt>> = vec![Vec::new(); dq + 1];
        for (m, c) in &self.terms {
            let row = &mut out[m.q as usize];
            if row.len() <= m.t as usize {
                row.resize(m.t as usize + 1, BigInt::zero());
            }
            row[m.t as usize] = c.clone();
        }
        out
    }

    pub(crate) fn from_dense_q(rows: &[Vec<BigInt>]) -> Self {
        let mut terms = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((Mono::new(i as u32, j as u32), c.clone()));
                }
            }
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        QtPoly { terms }
    }

    /// Canonical text: `c*q^i*t^j` terms in descending grlex order joined by
    /// `+`; the zero polynomial prints as `0`.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{}*q^{}*t^{}", c, m.q, m.t))
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl QtPoly {
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            if !abs.is_one() || *m == Mono::ONE {
                out.push_str(&abs.to_string());
            }
            for (v, e) in [("q", m.q), ("t", m.t)] {
                match e {
                    0 => {}
                    1 => out.push_str(v),
                    e => out.push_str(&format!("{v}^{{{e}}}")),
                }
            }
        }
        out
    }
}

impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || *m == Mono::ONE {
                factors.push(abs.to_string());
            }
            match m.q {
                0 => {}
                1 => factors.push("q".into()),
                e => factors.push(format!("q^{e}")),
            }
            match m.t {
                0 => {}
                1 => factors.push("t".into()),
                e => factors.push(format!("t^{e}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QtPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, i64)]) -> QtPoly {
        QtPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))))
    }

    #[test]
    fn grlex_order_puts_q_first() {
        assert!(Mono::new(1, 0) > Mono::new(0, 1));
        assert!(Mono::new(0, 2) > Mono::new(1, 0));
        let x = p(&[(0, 0, 1), (0, 1, 1), (1, 0, 1)]);
        assert_eq!(x.terms()[0].0, Mono::new(1, 0));
    }

    #[test]
    fn expands_m() {
        let a = p(&[(0, 0, 1), (1, 0, -1)]);
        let b = p(&[(0, 0, 1), (0, 1, -1)]);
        assert_eq!(a.mul(&b), p(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]));
    }

    #[test]
    fn from_terms_cancels() {
        assert!(p(&[(1, 1, 2), (1, 1, -2)]).is_zero());
    }

    #[test]
    fn reflect_and_adams() {
        let a = p(&[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(a.adams(2), p(&[(0, 0, 1), (2, 0, -1)]));
        assert_eq!(a.reflect(1, 0), p(&[(1, 0, 1), (0, 0, -1)]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]).to_string(), "q*t - q - t + 1");
        assert_eq!(p(&[(2, 0, 3), (0, 0, -1)]).to_canonical_string(), "3*q^2*t^0+-1*q^0*t^0");
    }
}
