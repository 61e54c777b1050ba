//! Eigenoperators of the modified Macdonald basis.

use std::any::Any;
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::coeffring::{QtRat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::symfunc::{partitions, scale_alphabet, star, Basis, BasisCache, Composition, Partition, SymFunc};

use super::constants::{mac_constants, qpoch};
use super::htilde::HtildeStore;
use super::starform::StarDegree;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub max_degree: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_degree: 8, cache_dir: None }
    }
}

/// Coefficients of a homogeneous function in the `H~_mu` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MacExpansion<S> {
    pub degree: usize,
    pub coeffs: BTreeMap<Partition, S>,
}

type Matrix<S> = Vec<Vec<S>>;

/// Per-degree change of basis between power sums and `H~_mu`.
struct MacDegree<S> {
    parts: Vec<Partition>,
    // hp[mu][rho]: coefficient of p_rho in H~_mu
    hp: Matrix<S>,
    // hinv[rho][mu]: coefficient of H~_mu in p_rho
    hinv: Matrix<S>,
}

type OpKey = (String, usize);

pub struct Engine<K: ScalarCtx> {
    ctx: K,
    bases: Arc<BasisCache>,
    store: Arc<HtildeStore>,
    degrees: Mutex<HashMap<usize, Arc<MacDegree<K::S>>>>,
    stars: Mutex<HashMap<usize, Arc<StarDegree>>>,
    ops: Mutex<HashMap<OpKey, Arc<Matrix<K::S>>>>,
    calpha: Mutex<HashMap<Composition, SymFunc<K::S>>>,
}

fn dot_row<S: Scalar>(f: &SymFunc<S>, t: &crate::symfunc::DegreeTables, m: &Matrix<S>) -> Vec<S> {
    let mut out = vec![S::zero(); t.parts.len()];
    for (rho, c) in f.terms() {
        let i = t.index_of(rho).expect("partition of the component degree");
        for (j, v) in m[i].iter().enumerate() {
            if !v.is_zero() {
                out[j] = out[j].add(&c.mul(v));
            }
        }
    }
    out
}

fn as_exact<T: Any, U: Any>(x: &T) -> Option<&U> {
    (x as &dyn Any).downcast_ref::<U>()
}

fn from_exact<T: Any, U: Any>(x: T) -> U {
    *(Box::new(x) as Box<dyn Any>).downcast::<U>().expect("exact scalars on the exact path")
}

impl<K: ScalarCtx> Engine<K> {
    pub fn new(ctx: K, cfg: &EngineConfig) -> Self {
        let bases = Arc::new(BasisCache::new(cfg.max_degree));
        let store = Arc::new(HtildeStore::new(bases.clone(), cfg.cache_dir.as_deref()));
        Self::with_shared(ctx, bases, store)
    }

    /// An engine reusing another engine's basis tables and `H~` store.
    pub fn with_shared(ctx: K, bases: Arc<BasisCache>, store: Arc<HtildeStore>) -> Self {
        Engine {
            ctx,
            bases,
            store,
            degrees: Mutex::new(HashMap::new()),
            stars: Mutex::new(HashMap::new()),
            ops: Mutex::new(HashMap::new()),
            calpha: Mutex::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &K {
        &self.ctx
    }

    pub fn bases(&self) -> &Arc<BasisCache> {
        &self.bases
    }

    pub fn store(&self) -> &Arc<HtildeStore> {
        &self.store
    }

    pub fn max_degree(&self) -> usize {
        self.bases.max_degree()
    }

    pub fn embed(&self, x: &QtRat) -> Result<K::S> {
        self.ctx.embed(x)
    }

    pub fn embed_sym(&self, f: &SymFunc<QtRat>) -> Result<SymFunc<K::S>> {
        f.try_map_coeffs(|c| self.ctx.embed(c))
    }

    pub fn e(&self, n: usize) -> Result<SymFunc<K::S>> {
        SymFunc::e(&self.bases, n)
    }

    pub fn h(&self, n: usize) -> Result<SymFunc<K::S>> {
        SymFunc::h(&self.bases, n)
    }

    pub fn s(&self, lambda: &Partition) -> Result<SymFunc<K::S>> {
        SymFunc::s(&self.bases, lambda)
    }

    pub fn htilde_exact(&self, mu: &Partition) -> Result<Arc<SymFunc<QtRat>>> {
        self.store.get(mu)
    }

    pub fn htilde(&self, mu: &Partition) -> Result<SymFunc<K::S>> {
        self.embed_sym(&*self.store.get(mu)?)
    }

    fn degree(&self, n: usize) -> Result<Arc<MacDegree<K::S>>> {
        if let Some(d) = self.degrees.lock().expect("engine lock poisoned").get(&n) {
            return Ok(d.clone());
        }
        let d = Arc::new(self.build_degree(n)?);
        self.degrees.lock().expect("engine lock poisoned").insert(n, d.clone());
        Ok(d)
    }

    fn star_degree(&self, n: usize) -> Result<Arc<StarDegree>> {
        if let Some(d) = self.stars.lock().expect("engine lock poisoned").get(&n) {
            return Ok(d.clone());
        }
        let t = self.bases.tables(n)?;
        let d = Arc::new(StarDegree::new(&t, &|mu| Ok((*self.store.get(mu)?).clone()))?);
        self.stars.lock().expect("engine lock poisoned").insert(n, d.clone());
        Ok(d)
    }

    fn build_degree(&self, n: usize) -> Result<MacDegree<K::S>> {
        let t = self.bases.tables(n)?;
        let parts = t.parts.clone();
        let len = parts.len();
        let mut hp = Vec::with_capacity(len);
        for mu in &parts {
            let h = self.htilde(mu)?;
            hp.push(parts.iter().map(|rho| h.coeff(rho)).collect::<Vec<_>>());
        }
        // H~_mu[X(1-q)] in Schur coordinates is upper triangular in the
        // ascending partition order; solve against it.
        let p1: Vec<K::S> = parts
            .iter()
            .map(|rho| {
                let v = rho.parts().iter().fold(QtRat::one(), |acc, &k| acc.mul(&(QtRat::one() - QtRat::monomial(1, k, 0))));
                self.ctx.embed(&v)
            })
            .collect::<Result<_>>()?;
        let sinv: Matrix<K::S> =
            t.from_p(Basis::S).iter().map(|row| row.iter().map(K::S::from_ratio).collect()).collect();
        let mut a = vec![vec![K::S::zero(); len]; len];
        for (mu_i, row) in hp.iter().enumerate() {
            for (rho_i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let w = c.mul(&p1[rho_i]);
                for (l, s) in sinv[rho_i].iter().enumerate() {
                    if !s.is_zero() {
                        a[mu_i][l] = a[mu_i][l].add(&w.mul(s));
                    }
                }
            }
        }
        for i in 0..len {
            for j in 0..i {
                if !a[i][j].is_zero() {
                    return Err(Error::internal(format!(
                        "H~{}[X(1-q)] has an s{} term below the diagonal",
                        parts[i], parts[j]
                    )));
                }
            }
            if a[i][i].is_zero() {
                return Err(Error::internal(format!("singular Macdonald system at {}", parts[i])));
            }
        }
        let mut x = vec![vec![K::S::zero(); len]; len];
        for j in 0..len {
            x[j][j] = a[j][j].inv()?;
            for i in (0..j).rev() {
                let mut acc = K::S::zero();
                for k in i + 1..=j {
                    if !a[i][k].is_zero() && !x[k][j].is_zero() {
                        acc = acc.add(&a[i][k].mul(&x[k][j]));
                    }
                }
                x[i][j] = acc.neg().div(&a[i][i])?;
            }
        }
        let mut hinv = vec![vec![K::S::zero(); len]; len];
        for rho in 0..len {
            for l in 0..len {
                let s = &sinv[rho][l];
                if s.is_zero() {
                    continue;
                }
                let w = p1[rho].mul(s);
                for mu in l..len {
                    if !x[l][mu].is_zero() {
                        hinv[rho][mu] = hinv[rho][mu].add(&w.mul(&x[l][mu]));
                    }
                }
            }
        }
        Ok(MacDegree { parts, hp, hinv })
    }

    /// Coefficients of a homogeneous `f` in the `H~_mu` basis.
    pub fn expand_macdonald(&self, f: &SymFunc<K::S>) -> Result<MacExpansion<K::S>> {
        let n = f.expect_homogeneous("the function to expand")?;
        // exact coefficients take the fraction-free path
        if let (Some(fx), true) = (as_exact(f), n > 0) {
            let coeffs = self.star_degree(n)?.expand(fx)?;
            let coeffs: BTreeMap<Partition, QtRat> = coeffs.into_iter().collect();
            return Ok(MacExpansion { degree: n, coeffs: from_exact(coeffs) });
        }
        let t = self.bases.tables(n)?;
        let d = self.degree(n)?;
        let c = dot_row(f, &t, &d.hinv);
        let coeffs = d.parts.iter().cloned().zip(c).filter(|(_, v)| !v.is_zero()).collect();
        Ok(MacExpansion { degree: n, coeffs })
    }

    pub fn from_macdonald(&self, e: &MacExpansion<K::S>) -> Result<SymFunc<K::S>> {
        let mut out = SymFunc::zero();
        for (mu, c) in &e.coeffs {
            out.add_assign(&self.htilde(mu)?.scale(c));
        }
        Ok(out)
    }

    /// Applies the operator with eigenvalue `eig(mu)` on `H~_mu`. Matrices
    /// are cached under `key`, which must determine the eigenvalues.
    pub fn apply_eigen(
        &self,
        key: &str,
        f: &SymFunc<K::S>,
        eig: &dyn Fn(&Partition) -> Result<K::S>,
    ) -> Result<SymFunc<K::S>> {
        f.check_degree(&self.bases)?;
        let mut out = SymFunc::zero();
        for (n, comp) in f.components() {
            if n == 0 {
                out.add_assign(&comp.scale(&eig(&Partition::empty())?));
                continue;
            }
            if let Some(cx) = as_exact(&comp) {
                let d = self.star_degree(n)?;
                let ev: Vec<QtRat> = self
                    .bases
                    .tables(n)?
                    .parts
                    .iter()
                    .map(|mu| Ok(as_exact::<_, QtRat>(&eig(mu)?).expect("exact eigenvalue").clone()))
                    .collect::<Result<_>>()?;
                out.add_assign(&from_exact(d.apply(cx, &ev)?));
                continue;
            }
            let m = self.op_matrix(key, n, eig)?;
            let t = self.bases.tables(n)?;
            let v = dot_row(&comp, &t, &m);
            out.add_assign(&SymFunc::from_p_terms(t.parts.iter().cloned().zip(v)));
        }
        Ok(out)
    }

    fn op_matrix(
        &self,
        key: &str,
        n: usize,
        eig: &dyn Fn(&Partition) -> Result<K::S>,
    ) -> Result<Arc<Matrix<K::S>>> {
        let k = (key.to_string(), n);
        if let Some(m) = self.ops.lock().expect("engine lock poisoned").get(&k) {
            return Ok(m.clone());
        }
        let d = self.degree(n)?;
        let len = d.parts.len();
        let ev: Vec<K::S> = d.parts.iter().map(eig).collect::<Result<_>>()?;
        let mut m = vec![vec![K::S::zero(); len]; len];
        for rho in 0..len {
            for mu in 0..len {
                let w = &d.hinv[rho][mu];
                if w.is_zero() || ev[mu].is_zero() {
                    continue;
                }
                let w = w.mul(&ev[mu]);
                for (sigma, h) in d.hp[mu].iter().enumerate() {
                    if !h.is_zero() {
                        m[rho][sigma] = m[rho][sigma].add(&w.mul(h));
                    }
                }
            }
        }
        let m = Arc::new(m);
        self.ops.lock().expect("engine lock poisoned").insert(k, m.clone());
        Ok(m)
    }

    fn maybe_inverse(&self, v: K::S, inverse: bool) -> Result<K::S> {
        if inverse {
            v.inv().map_err(|_| Error::Pole)
        } else {
            Ok(v)
        }
    }

    /// `nabla H~_mu = (-1)^|mu| T_mu H~_mu`.
    pub fn nabla(&self, f: &SymFunc<K::S>, inverse: bool) -> Result<SymFunc<K::S>> {
        self.nabla_with_sign(f, inverse, true)
    }

    /// The traditional `nabla`, without the sign.
    pub fn nabla_unsigned(&self, f: &SymFunc<K::S>, inverse: bool) -> Result<SymFunc<K::S>> {
        self.nabla_with_sign(f, inverse, false)
    }

    fn nabla_with_sign(&self, f: &SymFunc<K::S>, inverse: bool, signed: bool) -> Result<SymFunc<K::S>> {
        let key = format!("nabla:{signed}:{inverse}");
        self.apply_eigen(&key, f, &|mu| {
            let mut v = self.ctx.embed(&mac_constants(mu).t)?;
            if signed && mu.size() % 2 == 1 {
                v = v.neg();
            }
            self.maybe_inverse(v, inverse)
        })
    }

    /// `f[B_mu]`, or `f[B_mu - 1]` when `prime`.
    pub fn delta_eigenvalue(&self, f: &SymFunc<K::S>, mu: &Partition, prime: bool) -> Result<K::S> {
        let mut b = mac_constants(mu).b;
        if prime {
            b = b.sub(&QtRat::one());
        }
        let mut adams: HashMap<u32, K::S> = HashMap::new();
        let mut acc = K::S::zero();
        for (rho, c) in f.terms() {
            let mut v = c.clone();
            for &k in rho.parts() {
                if !adams.contains_key(&k) {
                    adams.insert(k, self.ctx.embed(&b.adams(k))?);
                }
                v = v.mul(&adams[&k]);
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// `Delta_f` (or `Delta'_f`) applied to `g`.
    pub fn delta_op(&self, f: &SymFunc<K::S>, g: &SymFunc<K::S>, prime: bool) -> Result<SymFunc<K::S>> {
        let sig: Vec<String> = f.terms().map(|(r, c)| format!("{r}:{}", c.canonical())).collect();
        let key = format!("delta:{prime}:{}", sig.join(";"));
        self.apply_eigen(&key, g, &|mu| self.delta_eigenvalue(f, mu, prime))
    }

    /// `Pi H~_mu = Pi_mu H~_mu` on positive degrees.
    pub fn bold_pi(&self, f: &SymFunc<K::S>, inverse: bool) -> Result<SymFunc<K::S>> {
        if !f.component(0).is_zero() {
            return Err(Error::domain("Pi is not defined on constants"));
        }
        let key = format!("pi:{inverse}");
        self.apply_eigen(&key, f, &|mu| {
            let pi = mac_constants(mu).pi.ok_or_else(|| Error::domain("Pi is not defined on constants"))?;
            self.maybe_inverse(self.ctx.embed(&pi)?, inverse)
        })
    }

    /// `Theta_f F = Pi f^* Pi^{-1} F` on positive degrees; on constants it
    /// is zero unless `f` is itself a constant.
    pub fn theta_op(&self, f: &SymFunc<K::S>, g: &SymFunc<K::S>) -> Result<SymFunc<K::S>> {
        let k = f.expect_homogeneous("the Theta symbol")?;
        if f.is_zero() {
            return Ok(SymFunc::zero());
        }
        let g0 = g.component(0);
        let rest = g.sub(&g0);
        let mut out = if k == 0 { g0.mul(f) } else { SymFunc::zero() };
        if !rest.is_zero() {
            self.bases.check_degree(rest.max_degree().unwrap_or(0) + k)?;
            let fs = star(&self.ctx, f)?;
            let inner = self.bold_pi(&rest, true)?;
            out.add_assign(&self.bold_pi(&fs.mul(&inner), false)?);
        }
        Ok(out)
    }

    /// `C_m F = (-1/q)^{m-1} sum_r q^{-r} h_{m+r} h_r[X(1-q)]^perp F`.
    pub fn cc_m(&self, m: u32, g: &SymFunc<K::S>) -> Result<SymFunc<K::S>> {
        let top = g.max_degree().unwrap_or(0);
        self.bases.check_degree(top + m as usize)?;
        let one_minus_q = QtRat::one() - QtRat::q();
        let mut out = SymFunc::zero();
        for r in 0..=top {
            let hr = scale_alphabet(&self.ctx, &self.h(r)?, &one_minus_q)?;
            let d = SymFunc::perp(&hr, g);
            if d.is_zero() {
                continue;
            }
            let c = self.ctx.embed(&QtRat::laurent_monomial(-(r as i64), 0))?;
            out.add_assign(&self.h(m as usize + r)?.mul(&d).scale(&c));
        }
        let sign = QtRat::laurent_monomial(1 - m as i64, 0).scale_int(if m % 2 == 0 { -1 } else { 1 });
        Ok(out.scale(&self.ctx.embed(&sign)?))
    }

    /// `C_alpha = C_{alpha_1} ... C_{alpha_l}(1)`, memoized.
    pub fn c_alpha(&self, alpha: &Composition) -> Result<SymFunc<K::S>> {
        if let Some(v) = self.calpha.lock().expect("engine lock poisoned").get(alpha) {
            return Ok(v.clone());
        }
        let v = match alpha.split_first() {
            None => SymFunc::one(),
            Some((a, tail)) => self.cc_m(a, &self.c_alpha(&tail)?)?,
        };
        self.calpha.lock().expect("engine lock poisoned").insert(alpha.clone(), v.clone());
        Ok(v)
    }

    /// `E_{n,1}, ..., E_{n,n}` from
    /// `e_n[X(1-z)/(1-q)] = sum_k (z;q)_k / (q;q)_k E_{n,k}` at `z = q^{-j}`,
    /// where the sum stops at `k = j`.
    pub fn e_nk_all(&self, n: usize) -> Result<Vec<SymFunc<K::S>>> {
        if n == 0 {
            return Err(Error::domain("E_{n,k} needs n >= 1"));
        }
        let en = self.e(n)?;
        let one_minus_q = QtRat::one() - QtRat::q();
        let mut out: Vec<SymFunc<K::S>> = Vec::with_capacity(n);
        for j in 1..=n {
            let z = QtRat::laurent_monomial(-(j as i64), 0);
            let mut rhs = scale_alphabet(&self.ctx, &en, &QtRat::one().sub(&z).checked_div(&one_minus_q)?)?;
            let coef = |k: usize| -> Result<QtRat> { qpoch(&z, k as u32).checked_div(&qpoch(&QtRat::q(), k as u32)) };
            for (k, ek) in out.iter().enumerate() {
                rhs = rhs.sub(&ek.scale(&self.ctx.embed(&coef(k + 1)?)?));
            }
            let lead = self.ctx.embed(&coef(j)?)?.inv().map_err(|_| Error::Pole)?;
            out.push(rhs.scale(&lead));
        }
        Ok(out)
    }

    pub fn e_nk(&self, n: usize, k: usize) -> Result<SymFunc<K::S>> {
        if k == 0 || k > n {
            return Err(Error::domain(format!("E_{{n,k}} needs 1 <= k <= n, got n={n}, k={k}")));
        }
        Ok(self.e_nk_all(n)?.swap_remove(k - 1))
    }

    pub fn partitions(&self, n: usize) -> Vec<Partition> {
        partitions(n)
    }
}
