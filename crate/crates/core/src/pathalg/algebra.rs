//! The operators `T_i`, `d_+`, `d_-`, `d_+^*`, `z_1` and `tau_u^*` acting
//! on `V_k = Lambda[y_1, ..., y_k]`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::coeffring::{AuxPoly, QtRat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::symfunc::{
    m_const, omegabar_from_inverted, plethysm, power_sum_plethysm, Alphabet, BasisCache, Composition, Partition,
    SymFunc, SymPoly,
};

use super::mstar::MStarStore;

/// An element of `V_k`.
pub type VkElement<S> = SymPoly<S>;

/// A truncated series in `u` with `V_k` coefficients, indexed by the power
/// of `u`.
pub type USeries<S> = Vec<VkElement<S>>;

/// Image of the new variable `y_{k+1}` under the shift `gamma` in `d_+^*`;
/// the other variables move up by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaConvention {
    /// `y_{k+1} -> t y_1`.
    First,
    /// `y_{k+1} -> t y_k`.
    Last,
}

/// The convention under which the `y_alpha` recursion and the `tau_u^*`
/// relations hold; see the `gamma_convention` integration test.
pub const GAMMA: GammaConvention = GammaConvention::First;

/// Which quadratic relation `T_i` satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeckeNormalization {
    /// `T_i = Upsilon_{y_i y_{i+1}}`, with `(T_i - q)(T_i + 1) = 0` and
    /// `T_i(1) = q`.
    Upsilon,
    /// `T_i = Upsilon_{y_i y_{i+1}} - (q - 1)`, with `(T_i - 1)(T_i + q) = 0`
    /// and `T_i(1) = 1`.
    Unital,
}

/// The normalization under which `d_-^l M_alpha^{*k}` is the path generating
/// function; see the `hecke_normalization` integration test.
pub const HECKE: HeckeNormalization = HeckeNormalization::Unital;

type ShiftTable<S> = Arc<Vec<(u32, Partition, S)>>;

pub struct PathAlgebra<K: ScalarCtx> {
    ctx: K,
    bases: Arc<BasisCache>,
    gamma: GammaConvention,
    hecke: HeckeNormalization,
    q: K::S,
    inv_q_minus_one: K::S,
    // p_rho[X + sign (q-1) y] as (power of y, power-sum index, coefficient)
    shifts: Mutex<HashMap<(Partition, bool), ShiftTable<K::S>>>,
    upsilon: Mutex<HashMap<(u32, u32), Arc<Vec<K::S>>>>,
    tau: Mutex<HashMap<(usize, usize), VkElement<K::S>>>,
    pub(crate) mstar: MStarStore<K::S>,
}

impl<K: ScalarCtx> PathAlgebra<K> {
    pub fn new(ctx: K, bases: Arc<BasisCache>) -> Result<Self> {
        Self::with_options(ctx, bases, GAMMA, None)
    }

    pub fn with_options(
        ctx: K,
        bases: Arc<BasisCache>,
        gamma: GammaConvention,
        cache_dir: Option<&Path>,
    ) -> Result<Self> {
        Self::with_conventions(ctx, bases, gamma, HECKE, cache_dir)
    }

    pub fn with_conventions(
        ctx: K,
        bases: Arc<BasisCache>,
        gamma: GammaConvention,
        hecke: HeckeNormalization,
        cache_dir: Option<&Path>,
    ) -> Result<Self> {
        let q = ctx.q();
        let inv_q_minus_one = ctx.embed(&QtRat::one().checked_div(&(QtRat::q() - QtRat::one()))?)?;
        let mstar = MStarStore::new(cache_dir, format!("{}|gamma={gamma:?}|hecke={hecke:?}", ctx.describe()));
        Ok(PathAlgebra {
            ctx,
            bases,
            gamma,
            hecke,
            q,
            inv_q_minus_one,
            shifts: Mutex::new(HashMap::new()),
            upsilon: Mutex::new(HashMap::new()),
            tau: Mutex::new(HashMap::new()),
            mstar,
        })
    }

    pub fn ctx(&self) -> &K {
        &self.ctx
    }

    pub fn bases(&self) -> &Arc<BasisCache> {
        &self.bases
    }

    pub fn gamma(&self) -> GammaConvention {
        self.gamma
    }

    pub fn hecke(&self) -> HeckeNormalization {
        self.hecke
    }

    fn embed(&self, x: &QtRat) -> Result<K::S> {
        self.ctx.embed(x)
    }

    /// Quotient coefficients `r_0..r_{d-1}` of `Upsilon(u^a v^b)` on
    /// `u^j v^{d-1-j}`, `d = a + b + 1`.
    fn upsilon_coeffs(&self, a: u32, b: u32) -> Result<Arc<Vec<K::S>>> {
        if let Some(v) = self.upsilon.lock().expect("lock poisoned").get(&(a, b)) {
            return Ok(v.clone());
        }
        // numerator (q-1) u^a v^{b+1} + u^b v^{a+1} - q u^{b+1} v^a,
        // stored by the power of u
        let d = (a + b + 1) as usize;
        let mut c = vec![K::S::zero(); d + 1];
        c[a as usize] = c[a as usize].add(&self.q.sub(&K::S::one()));
        c[b as usize] = c[b as usize].add(&K::S::one());
        c[b as usize + 1] = c[b as usize + 1].sub(&self.q);
        let mut r = Vec::with_capacity(d);
        let mut acc = K::S::zero();
        for cj in &c[..d] {
            acc = acc.add(cj);
            r.push(acc.clone());
        }
        if !acc.add(&c[d]).is_zero() {
            return Err(Error::internal(format!("Upsilon numerator of u^{a} v^{b} is not divisible by v - u")));
        }
        let r = Arc::new(r);
        self.upsilon.lock().expect("lock poisoned").insert((a, b), r.clone());
        Ok(r)
    }

    /// `Upsilon_{y_i y_j}` with 1-based `i != j`.
    pub fn upsilon(&self, f: &VkElement<K::S>, i: usize, j: usize) -> Result<VkElement<K::S>> {
        let k = f.k();
        if i == j || i == 0 || j == 0 || i > k || j > k {
            return Err(Error::domain(format!("Upsilon needs distinct variables in 1..={k}, got {i}, {j}")));
        }
        let (iu, iv) = (i - 1, j - 1);
        let mut out = SymPoly::zero(k);
        for (e, sf) in f.terms() {
            let r = self.upsilon_coeffs(e[iu], e[iv])?;
            let d = r.len();
            for (p, rj) in r.iter().enumerate() {
                if rj.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[iu] = p as u32;
                e2[iv] = (d - 1 - p) as u32;
                out.add_term(e2, sf.scale(rj));
            }
        }
        Ok(out)
    }

    /// `T_i` in the chosen normalization, or its inverse from the quadratic
    /// relation: `(T_i + 1 - q) / q` or `(T_i + q - 1) / q`.
    pub fn t_i(&self, f: &VkElement<K::S>, i: usize, inverse: bool) -> Result<VkElement<K::S>> {
        if i == 0 || i >= f.k() {
            return Err(Error::domain(format!("T_{i} is not defined on V_{}", f.k())));
        }
        let q_minus_one = self.q.sub(&K::S::one());
        let mut t = self.upsilon(f, i, i + 1)?;
        let shift = match self.hecke {
            HeckeNormalization::Upsilon => q_minus_one.neg(),
            HeckeNormalization::Unital => {
                t = t.sub(&f.scale(&q_minus_one));
                q_minus_one
            }
        };
        if !inverse {
            return Ok(t);
        }
        Ok(t.add(&f.scale(&shift)).scale(&self.q.inv()?))
    }

    fn shift_table(&self, rho: &Partition, plus: bool) -> Result<ShiftTable<K::S>> {
        let key = (rho.clone(), plus);
        if let Some(v) = self.shifts.lock().expect("lock poisoned").get(&key) {
            return Ok(v.clone());
        }
        let c = QtRat::q() - QtRat::one();
        let c = if plus { c } else { c.neg() };
        let a = Alphabet::shifted(crate::coeffring::y_vars(1), QtRat::one(), 0, c);
        let v: Vec<(u32, Partition, K::S)> = power_sum_plethysm(rho, &a)
            .into_iter()
            .map(|(e, lambda, c)| Ok((e[0], lambda, self.embed(&c)?)))
            .collect::<Result<_>>()?;
        let v = Arc::new(v);
        self.shifts.lock().expect("lock poisoned").insert(key, v.clone());
        Ok(v)
    }

    /// `F[X + sign (q-1) y_var]` in `V_target`, `var` 1-based.
    fn shift(&self, f: &VkElement<K::S>, target: usize, var: usize, plus: bool) -> Result<VkElement<K::S>> {
        let mut out = SymPoly::zero(target);
        for (e, sf) in f.terms() {
            let mut base = e.clone();
            base.resize(target, 0);
            let mut acc: HashMap<u32, SymFunc<K::S>> = HashMap::new();
            for (rho, c) in sf.terms() {
                for (m, lambda, coef) in self.shift_table(rho, plus)?.iter() {
                    acc.entry(*m).or_default().add_term(lambda.clone(), c.mul(coef));
                }
            }
            for (m, g) in acc {
                let mut e2 = base.clone();
                e2[var - 1] += m;
                out.add_term(e2, g);
            }
        }
        Ok(out)
    }

    /// `d_+ F = T_1 T_2 ... T_k (F[X + (q-1) y_{k+1}])`.
    pub fn d_plus(&self, f: &VkElement<K::S>) -> Result<VkElement<K::S>> {
        let k = f.k();
        let mut g = self.shift(f, k + 1, k + 1, true)?;
        for i in (1..=k).rev() {
            g = self.t_i(&g, i, false)?;
        }
        Ok(g)
    }

    /// `d_- F = -F[X - (q-1) y_k] sum_i (-1/y_k)^i e_i[X]`, coefficient of
    /// `1/y_k`.
    pub fn d_minus(&self, f: &VkElement<K::S>) -> Result<VkElement<K::S>> {
        let k = f.k();
        if k == 0 {
            return Err(Error::domain("d_- is not defined on V_0"));
        }
        let g = self.shift(f, k, k, false)?;
        let mut out = SymPoly::zero(k - 1);
        let mut es: HashMap<u32, SymFunc<K::S>> = HashMap::new();
        for (e, sf) in g.terms() {
            let m = e[k - 1];
            if !es.contains_key(&m) {
                es.insert(m, SymFunc::e(&self.bases, m as usize + 1)?);
            }
            let mut term = es[&m].mul(sf);
            if m % 2 == 1 {
                term = term.neg();
            }
            out.add_term(e[..k - 1].to_vec(), term);
        }
        Ok(out)
    }

    /// `d_+^* F = gamma F[X + (q-1) y_{k+1}]`.
    pub fn d_plus_star(&self, f: &VkElement<K::S>) -> Result<VkElement<K::S>> {
        let k = f.k();
        let g = self.shift(f, k + 1, k + 1, true)?;
        let t = self.ctx.t();
        let mut out = SymPoly::zero(k + 1);
        for (e, sf) in g.terms() {
            let last = e[k];
            let mut e2 = vec![0u32; k + 1];
            e2[1..].copy_from_slice(&e[..k]);
            match self.gamma {
                GammaConvention::Last if k > 0 => e2[k] += last,
                _ => e2[0] += last,
            }
            out.add_term(e2, sf.scale(&t.pow(last)));
        }
        Ok(out)
    }

    /// `z_1 = q^{k-1} / (q^{-1} - 1) (d_+^* d_- - d_- d_+^*) T_{k-1}^{-1} ... T_1^{-1}`.
    pub fn z1(&self, f: &VkElement<K::S>) -> Result<VkElement<K::S>> {
        let k = f.k();
        if k == 0 {
            return Err(Error::domain("z_1 is not defined on V_0"));
        }
        let mut g = f.clone();
        for i in 1..k {
            g = self.t_i(&g, i, true)?;
        }
        let comm = self.d_plus_star(&self.d_minus(&g)?)?.sub(&self.d_minus(&self.d_plus_star(&g)?)?);
        let c = QtRat::laurent_monomial(k as i64 - 1, 0).checked_div(&(QtRat::laurent_monomial(-1, 0) - QtRat::one()))?;
        Ok(comm.scale(&self.embed(&c)?))
    }

    /// Multiplication by `y_i^m`.
    pub fn mul_y(&self, f: &VkElement<K::S>, i: usize, m: u32) -> Result<VkElement<K::S>> {
        if i == 0 || i > f.k() {
            return Err(Error::domain(format!("y_{i} is not a variable of V_{}", f.k())));
        }
        let mut e = vec![0; f.k()];
        e[i - 1] = m;
        Ok(f.mul_monomial(&e))
    }

    /// `e_n[(X + (q-1)(y_1 + ... + y_k)) / M]` in `V_k`.
    fn tau_factor(&self, k: usize, n: usize) -> Result<VkElement<K::S>> {
        if let Some(v) = self.tau.lock().expect("lock poisoned").get(&(k, n)) {
            return Ok(v.clone());
        }
        let vars = crate::coeffring::y_vars(k);
        let inv_m = m_const().inv()?;
        let mut ys = AuxPoly::zero(vars.clone());
        for i in 0..k {
            ys = ys.add(&AuxPoly::var(vars.clone(), i));
        }
        let a = Alphabet::new(
            AuxPoly::constant(vars.clone(), inv_m.clone()),
            ys.scale(&(QtRat::q() - QtRat::one()).mul(&inv_m)),
        )?;
        let v = plethysm(&self.ctx, &SymFunc::e(&self.bases, n)?, &a)?;
        self.tau.lock().expect("lock poisoned").insert((k, n), v.clone());
        Ok(v)
    }

    /// `tau_u^* F = sum_n (-u)^n e_n[(X + (q-1) sum y_i) / M] F`, through
    /// `u^order`.
    pub fn tau_star(&self, f: &VkElement<K::S>, order: usize) -> Result<USeries<K::S>> {
        (0..=order)
            .map(|n| {
                let g = self.tau_factor(f.k(), n)?.mul(f);
                Ok(if n % 2 == 1 { g.neg() } else { g })
            })
            .collect()
    }

    /// `tau_u^*` on a series, truncated at the length of `s`.
    pub fn tau_star_series(&self, s: &USeries<K::S>) -> Result<USeries<K::S>> {
        let order = s.len().saturating_sub(1);
        let mut out: USeries<K::S> = s.iter().map(|f| SymPoly::zero(f.k())).collect();
        for (i, f) in s.iter().enumerate() {
            for (j, g) in self.tau_star(f, order - i)?.into_iter().enumerate() {
                out[i + j].add_assign(&g);
            }
        }
        Ok(out)
    }

    /// Multiplication by `1 - u y_1` on a series.
    pub fn one_minus_u_y1(&self, s: &USeries<K::S>) -> Result<USeries<K::S>> {
        let mut out = s.clone();
        for i in 1..s.len() {
            out[i] = out[i].sub(&self.mul_y(&s[i - 1], 1, 1)?);
        }
        Ok(out)
    }

    /// `d_+^l (1)` followed by `y_1^{alpha_1 - 1} ... y_l^{alpha_l - 1}`.
    pub fn y_alpha(&self, alpha: &Composition) -> Result<VkElement<K::S>> {
        let mut g = SymPoly::one(0);
        for _ in 0..alpha.len() {
            g = self.d_plus(&g)?;
        }
        let e: Vec<u32> = alpha.parts().iter().map(|a| a - 1).collect();
        Ok(g.mul_monomial(&e))
    }

    pub fn d_minus_pow(&self, f: &VkElement<K::S>, times: usize) -> Result<VkElement<K::S>> {
        let mut g = f.clone();
        for _ in 0..times {
            g = self.d_minus(&g)?;
        }
        Ok(g)
    }

    /// `[d_-, d_+] = d_- d_+ - d_+ d_-`.
    pub fn commutator(&self, f: &VkElement<K::S>) -> Result<VkElement<K::S>> {
        Ok(self.d_minus(&self.d_plus(f)?)?.sub(&self.d_plus(&self.d_minus(f)?)?))
    }

    /// `F / (q - 1)`, checking in exact mode that `F` vanishes at `q = 1`.
    pub fn div_q_minus_one(&self, f: &VkElement<K::S>) -> Result<VkElement<K::S>> {
        for (e, sf) in f.terms() {
            if let Some((rho, c)) = sf.terms().find(|(_, c)| !self.ctx.vanishes_at_q_one(c)) {
                return Err(Error::internal(format!(
                    "division by q - 1 is not exact: coefficient {c} of p{rho} y^{e:?}"
                )));
            }
        }
        Ok(f.scale(&self.inv_q_minus_one))
    }

    /// `C_alpha = (-1)^|alpha| q^{l - |alpha|} omega-bar(d_-^l y_alpha)`.
    pub fn c_alpha_bridge(&self, alpha: &Composition) -> Result<SymFunc<K::S>> {
        let inv = PathAlgebra::with_conventions(self.ctx.inverted(), self.bases.clone(), self.gamma, self.hecke, None)?;
        let inner = inv.d_minus_pow(&inv.y_alpha(alpha)?, alpha.len())?.into_sym()?;
        let g = omegabar_from_inverted(&self.ctx, &inner);
        let n = alpha.size() as i64;
        let l = alpha.len() as i64;
        let c = QtRat::laurent_monomial(l - n, 0).scale_int(if n % 2 == 0 { 1 } else { -1 });
        Ok(g.scale(&self.embed(&c)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::ExactCtx;

    type V = VkElement<QtRat>;

    fn alg() -> PathAlgebra<ExactCtx> {
        PathAlgebra::new(ExactCtx, Arc::new(BasisCache::new(6))).unwrap()
    }

    fn y(k: usize, e: Vec<u32>) -> V {
        assert_eq!(e.len(), k);
        SymPoly::monomial(e, SymFunc::one())
    }

    #[test]
    fn upsilon_values() {
        let a = alg();
        let q = QtRat::q();
        assert_eq!(a.upsilon(&y(2, vec![0, 0]), 1, 2).unwrap(), SymPoly::one(2).scale(&q));
        assert_eq!(a.upsilon(&y(2, vec![1, 0]), 1, 2).unwrap(), y(2, vec![0, 1]));
        let sym = y(2, vec![1, 0]).add(&y(2, vec![0, 1]));
        assert_eq!(a.upsilon(&sym, 1, 2).unwrap(), sym.scale(&q));
    }

    #[test]
    fn d_plus_and_d_minus_small() {
        let a = alg();
        let b = a.bases().clone();
        assert_eq!(a.d_plus(&SymPoly::one(0)).unwrap(), SymPoly::one(1));
        let e1 = SymPoly::from_sym(0, SymFunc::e(&b, 1).unwrap());
        let want = SymPoly::from_sym(1, SymFunc::e(&b, 1).unwrap()).add(&y(1, vec![1]).scale(&(QtRat::q() - QtRat::one())));
        assert_eq!(a.d_plus(&e1).unwrap(), want);
        assert_eq!(a.d_minus(&SymPoly::one(1)).unwrap(), e1);
        assert_eq!(a.d_minus(&y(1, vec![1])).unwrap(), SymPoly::from_sym(0, SymFunc::e(&b, 2).unwrap().neg()));
        assert_eq!(a.d_minus(&a.d_plus(&SymPoly::one(0)).unwrap()).unwrap(), e1);
        assert_eq!(a.d_plus_star(&SymPoly::one(0)).unwrap(), SymPoly::one(1));
        assert!(a.d_minus(&SymPoly::one(0)).is_err());
    }

    #[test]
    fn inverse_and_range() {
        let a = alg();
        let f = y(3, vec![2, 0, 1]).add(&SymPoly::from_sym(3, SymFunc::e(a.bases(), 2).unwrap()).mul_monomial(&[0, 1, 0]));
        for i in 1..3 {
            let g = a.t_i(&a.t_i(&f, i, true).unwrap(), i, false).unwrap();
            assert_eq!(g, f);
        }
        assert!(a.t_i(&f, 3, false).is_err());
        assert!(a.t_i(&f, 0, false).is_err());
    }

    #[test]
    fn y_alpha_small() {
        let a = alg();
        let one = |e: Vec<u32>| Composition::new(e).unwrap();
        assert_eq!(a.y_alpha(&one(vec![1])).unwrap(), SymPoly::one(1));
        assert_eq!(a.y_alpha(&one(vec![2])).unwrap(), y(1, vec![1]));
        // T_1(1) = 1 in the unital normalization
        assert_eq!(a.y_alpha(&one(vec![1, 1])).unwrap(), SymPoly::one(2));
    }

    #[test]
    fn tau_first_terms() {
        let a = alg();
        let s = a.tau_star(&SymPoly::one(0), 1).unwrap();
        assert_eq!(s[0], SymPoly::one(0));
        let e1m = crate::symfunc::star(&ExactCtx, &SymFunc::e(a.bases(), 1).unwrap()).unwrap();
        assert_eq!(s[1], SymPoly::from_sym(0, e1m.neg()));
    }

    #[test]
    fn bridge_for_one_part() {
        let a = alg();
        let c = a.c_alpha_bridge(&Composition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(c, SymFunc::h(a.bases(), 1).unwrap());
    }
}
