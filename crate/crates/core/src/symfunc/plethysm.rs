//! Plethystic substitution and symmetric functions with auxiliary-variable
//! coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::partition::Partition;
use super::sym::SymFunc;
use crate::coeffring::{AuxPoly, AuxVar, QtRat, Scalar, ScalarCtx};
use crate::error::{Error, Result};

/// The alphabet `x * X + extra`, where `x` and `extra` are polynomials in
/// auxiliary variables with `Q(q, t)` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Alphabet {
    pub x: AuxPoly,
    pub extra: AuxPoly,
}

impl Alphabet {
    pub fn new(x: AuxPoly, extra: AuxPoly) -> Result<Self> {
        if x.vars() != extra.vars() {
            return Err(Error::domain("alphabet parts use different auxiliary variables"));
        }
        Ok(Alphabet { x, extra })
    }

    /// `X`.
    pub fn identity() -> Self {
        Self::scaled(QtRat::one())
    }

    /// `c X`.
    pub fn scaled(c: QtRat) -> Self {
        Alphabet { x: AuxPoly::constant(Vec::new(), c), extra: AuxPoly::zero(Vec::new()) }
    }

    /// A finite alphabet with no `X` part, such as `B_mu`.
    pub fn finite(b: QtRat) -> Self {
        Alphabet { x: AuxPoly::zero(Vec::new()), extra: AuxPoly::constant(Vec::new(), b) }
    }

    /// `c X + d * var_i` over the given variables.
    pub fn shifted(vars: Vec<AuxVar>, c: QtRat, i: usize, d: QtRat) -> Self {
        let x = AuxPoly::constant(vars.clone(), c);
        let extra = AuxPoly::var(vars, i).scale(&d);
        Alphabet { x, extra }
    }

    pub fn vars(&self) -> &[AuxVar] {
        self.x.vars()
    }

    /// `p_k[A] = adams_k(x) p_k + adams_k(extra)`.
    pub fn adams(&self, k: u32) -> (AuxPoly, AuxPoly) {
        (self.x.adams(k), self.extra.adams(k))
    }
}

/// Exact expansion of `p_rho[A]` as `(aux exponents, power-sum index, coefficient)`.
pub fn power_sum_plethysm(rho: &Partition, a: &Alphabet) -> Vec<(Vec<u32>, Partition, QtRat)> {
    let n = a.vars().len();
    let mut acc: BTreeMap<(Vec<u32>, Vec<u32>), QtRat> = BTreeMap::new();
    acc.insert((vec![0; n], Vec::new()), QtRat::one());
    let mut adams_cache: HashMap<u32, (AuxPoly, AuxPoly)> = HashMap::new();
    for &k in rho.parts() {
        let (xk, ek) = adams_cache.entry(k).or_insert_with(|| a.adams(k)).clone();
        let mut next: BTreeMap<(Vec<u32>, Vec<u32>), QtRat> = BTreeMap::new();
        let mut push = |key: (Vec<u32>, Vec<u32>), c: QtRat| {
            if c.is_zero() {
                return;
            }
            match next.entry(key) {
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
        };
        for ((e, parts), c) in &acc {
            for (ex, cx) in xk.terms() {
                let e2 = add_exps(e, ex);
                if !in_range(a.vars(), &e2) {
                    continue;
                }
                let mut p2 = parts.clone();
                p2.push(k);
                push((e2, p2), c.mul(cx));
            }
            for (ee, ce) in ek.terms() {
                let e2 = add_exps(e, ee);
                if !in_range(a.vars(), &e2) {
                    continue;
                }
                push((e2, parts.clone()), c.mul(ce));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|((e, parts), c)| (e, Partition::from_parts(parts), c)).collect()
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn in_range(vars: &[AuxVar], e: &[u32]) -> bool {
    vars.iter().zip(e).all(|(v, &x)| v.trunc.map_or(true, |n| x <= n))
}

/// `f[A]` as a polynomial in the auxiliary variables of `A`.
pub fn plethysm<K: ScalarCtx>(ctx: &K, f: &SymFunc<K::S>, a: &Alphabet) -> Result<SymPoly<K::S>> {
    let mut out = SymPoly::zero(a.vars().len());
    for (rho, c) in f.terms() {
        for (e, lambda, coef) in power_sum_plethysm(rho, a) {
            let v = ctx.embed(&coef)?.mul(c);
            out.add_term(e, SymFunc::p_term(lambda, v));
        }
    }
    Ok(out)
}

/// `f[c X]`: `p_rho -> prod adams_k(c) p_rho`.
pub fn scale_alphabet<K: ScalarCtx>(ctx: &K, f: &SymFunc<K::S>, c: &QtRat) -> Result<SymFunc<K::S>> {
    let mut adams: HashMap<u32, K::S> = HashMap::new();
    let mut out = SymFunc::zero();
    for (rho, coef) in f.terms() {
        let mut v = coef.clone();
        for &k in rho.parts() {
            let a = match adams.get(&k) {
                Some(a) => a.clone(),
                None => {
                    let a = ctx.embed(&c.adams(k))?;
                    adams.insert(k, a.clone());
                    a
                }
            };
            v = v.mul(&a);
        }
        out.add_term(rho.clone(), v);
    }
    Ok(out)
}

/// `M = (1 - q)(1 - t)`.
pub fn m_const() -> QtRat {
    (QtRat::one() - QtRat::q()) * (QtRat::one() - QtRat::t())
}

/// `f^* = f[X / M]`.
pub fn star<K: ScalarCtx>(ctx: &K, f: &SymFunc<K::S>) -> Result<SymFunc<K::S>> {
    scale_alphabet(ctx, f, &m_const().inv()?)
}

/// `f[B]` for a finite alphabet `B` given as a Laurent expression in `q`, `t`:
/// `p_k[B] = B(q^k, t^k)`.
pub fn eval_finite(f: &SymFunc<QtRat>, b: &QtRat) -> QtRat {
    let mut adams: HashMap<u32, QtRat> = HashMap::new();
    let mut acc = QtRat::zero();
    for (rho, c) in f.terms() {
        let mut v = c.clone();
        for &k in rho.parts() {
            let a = adams.entry(k).or_insert_with(|| b.adams(k));
            v = v.mul(a);
        }
        acc = acc.add(&v);
    }
    acc
}

/// A polynomial in `k` auxiliary variables with symmetric-function
/// coefficients; the carrier of `V_k = Lambda[y_1, ..., y_k]`.
#[derive(Clone, PartialEq)]
pub struct SymPoly<S> {
    k: usize,
    terms: BTreeMap<Vec<u32>, SymFunc<S>>,
}

impl<S: Scalar> SymPoly<S> {
    pub fn zero(k: usize) -> Self {
        SymPoly { k, terms: BTreeMap::new() }
    }

    /// `f` as a constant in `k` variables.
    pub fn from_sym(k: usize, f: SymFunc<S>) -> Self {
        Self::monomial(vec![0; k], f)
    }

    pub fn one(k: usize) -> Self {
        Self::from_sym(k, SymFunc::one())
    }

    pub fn monomial(exps: Vec<u32>, f: SymFunc<S>) -> Self {
        let mut out = Self::zero(exps.len());
        out.add_term(exps, f);
        out
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &SymFunc<S>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, exps: &[u32]) -> SymFunc<S> {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, f: SymFunc<S>) {
        assert_eq!(exps.len(), self.k, "exponent vector length does not match arity");
        if f.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&f);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.k, other.k, "arity mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (e, f) in &other.terms {
            out.add_term(e.clone(), f.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check_arity(other);
        for (e, f) in &other.terms {
            self.add_term(e.clone(), f.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_sym(|f| f.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.k);
        }
        self.map_sym(|f| f.scale(s))
    }

    pub fn map_sym(&self, g: impl Fn(&SymFunc<S>) -> SymFunc<S>) -> Self {
        let mut out = Self::zero(self.k);
        for (e, f) in &self.terms {
            out.add_term(e.clone(), g(f));
        }
        out
    }

    pub fn try_map_sym(&self, g: impl Fn(&SymFunc<S>) -> Result<SymFunc<S>>) -> Result<Self> {
        let mut out = Self::zero(self.k);
        for (e, f) in &self.terms {
            out.add_term(e.clone(), g(f)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = Self::zero(self.k);
        for (ea, fa) in &self.terms {
            for (eb, fb) in &other.terms {
                out.add_term(add_exps(ea, eb), fa.mul(fb));
            }
        }
        out
    }

    /// Multiplies by the symmetric function `g`.
    pub fn mul_sym(&self, g: &SymFunc<S>) -> Self {
        self.map_sym(|f| f.mul(g))
    }

    /// Multiplies by the monomial `y^exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        let mut out = Self::zero(self.k);
        for (e, f) in &self.terms {
            out.add_term(add_exps(e, exps), f.clone());
        }
        out
    }

    /// The coefficient of the constant monomial, if it is the only term.
    pub fn as_sym(&self) -> Option<SymFunc<S>> {
        if self.terms.keys().all(|e| e.iter().all(|&x| x == 0)) {
            Some(self.get(&vec![0; self.k]))
        } else {
            None
        }
    }

    /// Views a `V_0` element as a symmetric function.
    pub fn into_sym(self) -> Result<SymFunc<S>> {
        self.as_sym().ok_or_else(|| Error::domain("element has positive degree in the auxiliary variables"))
    }

    pub fn max_sym_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(SymFunc::max_degree).max()
    }
}

impl<S: Scalar> fmt::Display for SymPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "y{e:?}*[{s}]")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for SymPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::ExactCtx;
    use crate::symfunc::BasisCache;

    type F = SymFunc<QtRat>;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn adams_rule_on_scaled_alphabet() {
        let one_minus_q = QtRat::one() - QtRat::q();
        for k in 1..5u32 {
            let got = scale_alphabet(&ExactCtx, &F::p(Partition::row(k)), &one_minus_q).unwrap();
            let want = F::p_term(Partition::row(k), QtRat::one() - QtRat::monomial(1, k, 0));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn identity_alphabet() {
        let b = BasisCache::new(4);
        let f = F::s(&b, &part(&[2, 1])).unwrap().add(&F::e(&b, 4).unwrap());
        let g = plethysm(&ExactCtx, &f, &Alphabet::identity()).unwrap().into_sym().unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn shift_by_auxiliary_variable() {
        // p_1[X + (q-1) y] = p_1 + (q-1) y
        let vars = vec![AuxVar::poly("y1")];
        let a = Alphabet::shifted(vars, QtRat::one(), 0, QtRat::q() - QtRat::one());
        let got = plethysm(&ExactCtx, &F::p(part(&[1])), &a).unwrap();
        let mut want = SymPoly::from_sym(1, F::p(part(&[1])));
        want.add_term(vec![1], F::constant(QtRat::q() - QtRat::one()));
        assert_eq!(got, want);
    }

    #[test]
    fn finite_alphabet_values() {
        let b = BasisCache::new(3);
        // e_2[1 + q] = q, e_3[1 + q] = 0
        let bq = QtRat::one() + QtRat::q();
        assert_eq!(eval_finite(&F::e(&b, 2).unwrap(), &bq), QtRat::q());
        assert!(eval_finite(&F::e(&b, 3).unwrap(), &bq).is_zero());
        assert_eq!(eval_finite(&F::h(&b, 2).unwrap(), &bq), QtRat::one() + QtRat::q() + QtRat::monomial(1, 2, 0));
    }
}
