//! Polynomials in named auxiliary variables (`y_1, ..., y_k`, `u`, `v`, `z`)
//! with coefficients in `Q(q, t)`.
//!
//! A variable may carry a truncation order, in which case the polynomial is a
//! truncated power series in it: every product drops the terms whose exponent
//! exceeds the order.

use std::collections::BTreeMap;
use std::fmt;

use super::rat::QtRat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AuxVar {
    pub name: String,
    /// Highest exponent kept, for series variables.
    pub trunc: Option<u32>,
}

impl AuxVar {
    pub fn poly(name: impl Into<String>) -> Self {
        AuxVar { name: name.into(), trunc: None }
    }

    pub fn series(name: impl Into<String>, order: u32) -> Self {
        AuxVar { name: name.into(), trunc: Some(order) }
    }
}

/// `y_1, ..., y_k` as plain polynomial variables.
pub fn y_vars(k: usize) -> Vec<AuxVar> {
    (1..=k).map(|i| AuxVar::poly(format!("y{i}"))).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct AuxPoly {
    vars: Vec<AuxVar>,
    terms: BTreeMap<Vec<u32>, QtRat>,
}

impl AuxPoly {
    pub fn zero(vars: Vec<AuxVar>) -> Self {
        AuxPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<AuxVar>, c: QtRat) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    /// The variable at position `i`.
    pub fn var(vars: Vec<AuxVar>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, QtRat::one())
    }

    pub fn monomial(vars: Vec<AuxVar>, exps: Vec<u32>, c: QtRat) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector does not match variables");
        let mut p = AuxPoly::zero(vars);
        if !c.is_zero() && p.in_range(&exps) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> &[AuxVar] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QtRat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> QtRat {
        self.terms.get(exps).cloned().unwrap_or_else(QtRat::zero)
    }

    /// The coefficient of the empty monomial if that is the only term.
    pub fn as_constant(&self) -> Option<QtRat> {
        match self.terms.len() {
            0 => Some(QtRat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn in_range(&self, exps: &[u32]) -> bool {
        self.vars.iter().zip(exps).all(|(v, &e)| v.trunc.map_or(true, |n| e <= n))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: QtRat) {
        if c.is_zero() || !self.in_range(&exps) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "auxiliary polynomials over different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        AuxPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &QtRat) -> Self {
        if s.is_zero() {
            return Self::zero(self.vars.clone());
        }
        AuxPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Self::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if out.in_range(&e) {
                    out.add_term(e, ca.mul(cb));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), QtRat::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `q -> q^k`, `t -> t^k` and every auxiliary variable raised to the
    /// `k`-th power.
    pub fn adams(&self, k: u32) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.iter().map(|x| x * k).collect(), c.adams(k));
        }
        out
    }

    /// Substitutes the value `x` for the variable at position `i`; the
    /// variable stays declared with exponent zero everywhere.
    pub fn specialize(&self, i: usize, x: &QtRat) -> Result<Self> {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let p = e2[i];
            e2[i] = 0;
            let factor = if p == 0 {
                QtRat::one()
            } else if x.is_zero() {
                QtRat::zero()
            } else {
                x.pow(p as i64)?
            };
            out.add_term(e2, c.mul(&factor));
        }
        Ok(out)
    }

    /// Coefficient extraction with respect to variable `i`: the polynomial
    /// multiplying `var_i^p`.
    pub fn coeff_of(&self, i: usize, p: u32) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == p {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::domain(format!("unknown auxiliary variable `{name}`")))
    }
}

/// The q-rising factorial `(a; q)_n = (1 - a)(1 - q a) ... (1 - q^(n-1) a)`.
pub fn q_pochhammer(a: &AuxPoly, n: u32) -> AuxPoly {
    let one = AuxPoly::constant(a.vars().to_vec(), QtRat::one());
    let mut acc = one.clone();
    for i in 0..n {
        let factor = one.sub(&a.scale(&QtRat::monomial(1, i, 0)));
        acc = acc.mul(&factor);
    }
    acc
}

impl fmt::Display for AuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { v.name.clone() } else { format!("{}^{}", v.name, p) })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Vec<AuxVar> {
        vec![AuxVar::poly("z")]
    }

    #[test]
    fn empty_pochhammer_is_one() {
        let a = AuxPoly::var(z(), 0);
        assert_eq!(q_pochhammer(&a, 0), AuxPoly::constant(z(), QtRat::one()));
    }

    #[test]
    fn q_q_pochhammer() {
        let a = AuxPoly::constant(z(), QtRat::q());
        let want = QtRat::one().sub(&QtRat::q()).mul(&QtRat::one().sub(&QtRat::monomial(1, 2, 0)));
        assert_eq!(q_pochhammer(&a, 2).as_constant(), Some(want));
    }

    #[test]
    fn pochhammer_vanishes_at_negative_powers() {
        // (q^-j; q)_k = 0 for k > j
        let a = AuxPoly::var(z(), 0);
        for j in 0..4i64 {
            for k in 0..6u32 {
                let v = q_pochhammer(&a, k).specialize(0, &QtRat::laurent_monomial(-j, 0)).unwrap();
                assert_eq!(v.is_zero(), k as i64 > j, "j={j} k={k}");
            }
        }
    }

    #[test]
    fn truncation() {
        let vars = vec![AuxVar::series("u", 2)];
        let one_minus_u = AuxPoly::constant(vars.clone(), QtRat::one()).sub(&AuxPoly::var(vars.clone(), 0));
        let cube = one_minus_u.pow(3);
        assert_eq!(cube.coeff(&[2]), QtRat::from_int(3));
        assert_eq!(cube.terms().count(), 3);
    }

    #[test]
    fn adams_raises_variables() {
        let vars = vec![AuxVar::poly("y1")];
        let p = AuxPoly::monomial(vars.clone(), vec![1], QtRat::q().sub(&QtRat::one()));
        let a = p.adams(3);
        assert_eq!(a.coeff(&[3]), QtRat::monomial(1, 3, 0).sub(&QtRat::one()));
    }
}
