//! The registered identities, each evaluated into two coefficient maps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use super::report::Sides;
use crate::coeffring::{lcm_poly, QtPoly, QtRat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::macdonald::Engine;
use crate::pathalg::{HeckeNormalization, PathAlgebra, VkElement};
use crate::symfunc::{
    compositions, eval_finite, m_const, partitions, scale_alphabet, star, Basis, Composition, Partition, SymFunc,
    SymPoly,
};

/// `gen_fn_by_dcomp(n, k)` in exact arithmetic.
pub type PathTable = BTreeMap<Composition, SymFunc<QtRat>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    CompDelta,
    DeltaRise,
    Thm21,
    EnkSum,
    ThetaNabla,
    FiveTerm,
    GenSeriesCoeff,
    GenSeries2,
    TauUnit,
    YRecursion,
    TauCommutations,
    CAlphaBridge,
    MacdonaldAxioms,
    Hecke,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::CompDelta,
        CheckId::DeltaRise,
        CheckId::Thm21,
        CheckId::EnkSum,
        CheckId::ThetaNabla,
        CheckId::FiveTerm,
        CheckId::GenSeriesCoeff,
        CheckId::GenSeries2,
        CheckId::TauUnit,
        CheckId::YRecursion,
        CheckId::TauCommutations,
        CheckId::CAlphaBridge,
        CheckId::MacdonaldAxioms,
        CheckId::Hecke,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::CompDelta => "comp_delta",
            CheckId::DeltaRise => "delta_rise",
            CheckId::Thm21 => "thm_2_1",
            CheckId::EnkSum => "enk_sum",
            CheckId::ThetaNabla => "theta_nabla",
            CheckId::FiveTerm => "five_term",
            CheckId::GenSeriesCoeff => "gen_series_coeff",
            CheckId::GenSeries2 => "gen_series_2",
            CheckId::TauUnit => "tau_unit",
            CheckId::YRecursion => "y_recursion",
            CheckId::TauCommutations => "tau_commutations",
            CheckId::CAlphaBridge => "c_alpha_bridge",
            CheckId::MacdonaldAxioms => "macdonald_axioms",
            CheckId::Hecke => "hecke",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CheckId::CompDelta => "(-1)^(n-k) Theta_{e_k} nabla C_alpha = paths with dcomp alpha = d_-^l M_alpha^{*k}",
            CheckId::DeltaRise => "Delta'_{e_{n-k-1}} e_n = paths in LD(n)^{*k} = sum over alpha of the above",
            CheckId::Thm21 => "(-1)^(n-k) Theta_{e_k} nabla e_{n-k} = Delta'_{e_{n-k-1}} e_n",
            CheckId::EnkSum => "sum_k E_{n,k} = e_n, E_{n,k} = sum_{l(alpha)=k} C_alpha, sum_alpha C_alpha = e_n",
            CheckId::ThetaNabla => "Theta_{e_k} nabla = sum_i e_i^* nabla e_{k-i}^* on degree d",
            CheckId::FiveTerm => "T_{1,0} T_{0,1} = T_{0,1} T_{1,1} T_{1,0} with R_{k,k} = (-1)^k nabla e_k^* nabla^{-1}",
            CheckId::GenSeriesCoeff => "Delta_{e_m}(e_k^* f) = sum_i e_{k-i}^* R_{i,i} Delta_{e_{m-i}} f",
            CheckId::GenSeries2 => "Delta(u) tau_v^* = tau_v^* nabla tau_{uv}^* nabla^{-1} Delta(u)",
            CheckId::TauUnit => "1 = tau_v^* nabla tau_v^* (1)",
            CheckId::YRecursion => "y_{(a)alpha} from d_+^* d_- - d_- d_+^* applied to y_{alpha beta}",
            CheckId::TauCommutations => "tau_u^* commutes with d_-, T_i, d_+, y_i; twisted by 1 - u y_1 for d_+^*, z_1",
            CheckId::CAlphaBridge => "(-1)^|alpha| C_alpha = q^{l-|alpha|} omega-bar(d_-^l y_alpha)",
            CheckId::MacdonaldAxioms => "H~_mu triangularity in X(1-q), X(1-t) and <H~_mu, s_n> = 1",
            CheckId::Hecke => "quadratic, inverse and braid relations of T_i on V_3",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Typed access to a check's parameter map.
pub(crate) struct Params<'a>(pub &'a Map<String, Value>);

fn parse_parts(key: &str, v: &Value) -> Result<Vec<u32>> {
    let bad = || Error::domain(format!("parameter `{key}` must be a list of positive integers"));
    match v {
        Value::Array(xs) => xs.iter().map(|x| x.as_u64().map(|x| x as u32).ok_or_else(bad)).collect(),
        Value::Number(n) => Ok(vec![n.as_u64().ok_or_else(bad)? as u32]),
        Value::String(s) => {
            let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
            s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(|x| x.parse().map_err(|_| bad())).collect()
        }
        _ => Err(bad()),
    }
}

impl Params<'_> {
    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        let v = self.get(key).ok_or_else(|| Error::domain(format!("missing parameter `{key}`")))?;
        let n = match v {
            Value::Number(n) => n.as_u64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        };
        n.map(|n| n as usize).ok_or_else(|| Error::domain(format!("parameter `{key}` must be a nonnegative integer")))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        if self.get(key).is_some() {
            self.usize(key)
        } else {
            Ok(default)
        }
    }

    pub fn composition(&self, key: &str) -> Result<Composition> {
        match self.get(key) {
            None => Ok(Composition::empty()),
            Some(v) => Composition::new(parse_parts(key, v)?),
        }
    }

    pub fn partition(&self, key: &str) -> Result<Partition> {
        let v = self.get(key).ok_or_else(|| Error::domain(format!("missing parameter `{key}`")))?;
        Partition::new(parse_parts(key, v)?)
    }
}

/// Fills defaults and validates, returning the parameters as they will be
/// reported.
pub(crate) fn normalize(id: CheckId, raw: &Map<String, Value>, max_degree: usize, seed: u64) -> Result<Map<String, Value>> {
    let p = Params(raw);
    let mut out = Map::new();
    let mut put = |k: &str, v: Value| {
        out.insert(k.to_string(), v);
    };
    let comp_value = |c: &Composition| Value::from(c.parts().to_vec());
    match id {
        CheckId::CompDelta => {
            let (n, k, alpha) = (p.usize("n")?, p.usize("k")?, p.composition("alpha")?);
            if k >= n || alpha.size() != n - k {
                return Err(Error::domain(format!("comp_delta needs 0 <= k < n and alpha of size n - k, got n={n} k={k} alpha={alpha}")));
            }
            put("n", n.into());
            put("k", k.into());
            put("alpha", comp_value(&alpha));
        }
        CheckId::DeltaRise | CheckId::Thm21 => {
            let (n, k) = (p.usize("n")?, p.usize("k")?);
            if k >= n {
                return Err(Error::domain(format!("{id} needs 0 <= k < n, got n={n} k={k}")));
            }
            put("n", n.into());
            put("k", k.into());
        }
        CheckId::EnkSum => {
            let n = p.usize("n")?;
            if n == 0 {
                return Err(Error::domain("enk_sum needs n >= 1"));
            }
            put("n", n.into());
        }
        CheckId::ThetaNabla => {
            put("k", p.usize("k")?.into());
            put("d", p.usize("d")?.into());
        }
        CheckId::FiveTerm | CheckId::GenSeries2 => {
            let d = p.usize("d")?;
            let top = p.usize_or("top", max_degree)?;
            if d > top {
                return Err(Error::domain(format!("d = {d} exceeds top = {top}")));
            }
            put("d", d.into());
            put("order", p.usize_or("order", max_degree + 1)?.into());
            put("top", top.into());
        }
        CheckId::GenSeriesCoeff => {
            put("m", p.usize("m")?.into());
            put("k", p.usize("k")?.into());
            put("d", p.usize("d")?.into());
        }
        CheckId::TauUnit => {
            put("order", p.usize_or("order", max_degree)?.into());
        }
        CheckId::YRecursion => {
            let a = p.usize("a")?;
            if a < 2 {
                return Err(Error::domain("y_recursion needs a >= 2"));
            }
            put("a", a.into());
            put("alpha", comp_value(&p.composition("alpha")?));
        }
        CheckId::TauCommutations => {
            put("k", p.usize("k")?.into());
            put("degree", p.usize_or("degree", 3)?.into());
            put("order", p.usize_or("order", 2)?.into());
            put("seed", p.usize_or("seed", seed as usize)?.into());
        }
        CheckId::CAlphaBridge => {
            let alpha = p.composition("alpha")?;
            if alpha.is_empty() {
                return Err(Error::domain("c_alpha_bridge needs a nonempty composition"));
            }
            put("alpha", comp_value(&alpha));
        }
        CheckId::MacdonaldAxioms => {
            let mu = p.partition("mu")?;
            if mu.is_empty() {
                return Err(Error::domain("macdonald_axioms needs a nonempty partition"));
            }
            put("mu", Value::from(mu.parts().to_vec()));
        }
        CheckId::Hecke => {
            put("degree", p.usize_or("degree", 3)?.into());
            put("seed", p.usize_or("seed", seed as usize)?.into());
        }
    }
    Ok(out)
}

/// The engine and path algebra over one coefficient ring.
pub(crate) struct Env<K: ScalarCtx> {
    pub eng: Engine<K>,
    pub alg: PathAlgebra<K>,
}

type Paths<'a> = &'a (dyn Fn(usize, usize) -> Result<Arc<PathTable>> + Sync);

fn sign<S: Scalar>(f: SymFunc<S>, odd: bool) -> SymFunc<S> {
    if odd {
        f.neg()
    } else {
        f
    }
}

impl<K: ScalarCtx> Env<K> {
    fn c(&self, x: &QtRat) -> Result<K::S> {
        self.eng.embed(x)
    }

    /// `e_i^* f`.
    fn estar(&self, i: usize, f: &SymFunc<K::S>) -> Result<SymFunc<K::S>> {
        if i == 0 {
            return Ok(f.clone());
        }
        self.eng.bases().check_degree(i + f.max_degree().unwrap_or(0))?;
        Ok(star(self.eng.ctx(), &self.eng.e(i)?)?.mul(f))
    }

    fn delta_e(&self, m: usize, f: &SymFunc<K::S>) -> Result<SymFunc<K::S>> {
        if m == 0 {
            return Ok(f.clone());
        }
        // e_m[B_mu] = 0 when |mu| < m
        if f.max_degree().map_or(true, |top| top < m) {
            return Ok(SymFunc::zero());
        }
        self.eng.delta_op(&self.eng.e(m)?, f, false)
    }

    /// `R_{i,i} = (-1)^i nabla e_i^* nabla^{-1}`.
    fn r_ii(&self, i: usize, f: &SymFunc<K::S>) -> Result<SymFunc<K::S>> {
        let g = self.eng.nabla(&self.estar(i, &self.eng.nabla(f, true)?)?, false)?;
        Ok(sign(g, i % 2 == 1))
    }

    /// `(-1)^{n-k} Theta_{e_k} nabla g` with `n - k = deg g`.
    fn theta_nabla(&self, k: usize, g: &SymFunc<K::S>, odd: bool) -> Result<SymFunc<K::S>> {
        Ok(sign(self.eng.theta_op(&self.eng.e(k)?, &self.eng.nabla(g, false)?)?, odd))
    }

    fn schur_basis(&self, d: usize) -> Result<Vec<(Partition, SymFunc<K::S>)>> {
        partitions(d).into_iter().map(|l| Ok((l.clone(), self.eng.s(&l)?))).collect()
    }
}

pub(crate) fn compute<K: ScalarCtx>(env: &Env<K>, paths: Paths, id: CheckId, params: &Map<String, Value>) -> Result<Sides> {
    let p = Params(params);
    let mut sides = Sides::default();
    let eng = &env.eng;
    let alg = &env.alg;
    match id {
        CheckId::CompDelta => {
            let (n, k, alpha) = (p.usize("n")?, p.usize("k")?, p.composition("alpha")?);
            let theta = env.theta_nabla(k, &eng.c_alpha(&alpha)?, (n - k) % 2 == 1)?;
            let table = paths(n, k)?;
            let from_paths = eng.embed_sym(&table.get(&alpha).cloned().unwrap_or_default())?;
            let mstar = alg.m_star_reduced(&alpha, k as i64)?;
            sides.sym("paths", &theta, &from_paths);
            sides.sym("mstar", &theta, &mstar);
        }
        CheckId::DeltaRise => {
            let (n, k) = (p.usize("n")?, p.usize("k")?);
            let lhs = eng.delta_op(&eng.e(n - k - 1)?, &eng.e(n)?, true)?;
            let table = paths(n, k)?;
            let all = table.values().fold(SymFunc::zero(), |acc, f| acc.add(f));
            let mut theta_sum = SymFunc::zero();
            for alpha in compositions(n - k) {
                theta_sum.add_assign(&env.theta_nabla(k, &eng.c_alpha(&alpha)?, (n - k) % 2 == 1)?);
            }
            sides.sym("paths", &lhs, &eng.embed_sym(&all)?);
            sides.sym("theta_sum", &lhs, &theta_sum);
        }
        CheckId::Thm21 => {
            let (n, k) = (p.usize("n")?, p.usize("k")?);
            let lhs = env.theta_nabla(k, &eng.e(n - k)?, (n - k) % 2 == 1)?;
            let rhs = eng.delta_op(&eng.e(n - k - 1)?, &eng.e(n)?, true)?;
            sides.sym("thm", &lhs, &rhs);
        }
        CheckId::EnkSum => {
            let n = p.usize("n")?;
            let en = eng.e(n)?;
            let enk = eng.e_nk_all(n)?;
            let total = enk.iter().fold(SymFunc::zero(), |acc, f| acc.add(f));
            sides.sym("sum_k E", &total, &en);
            let mut by_len: BTreeMap<usize, SymFunc<K::S>> = BTreeMap::new();
            for alpha in compositions(n) {
                by_len.entry(alpha.len()).or_default().add_assign(&eng.c_alpha(&alpha)?);
            }
            for (r, e) in enk.iter().enumerate() {
                let c = by_len.get(&(r + 1)).cloned().unwrap_or_default();
                sides.sym(&format!("E_{},{}", n, r + 1), e, &c);
            }
            let all_c = by_len.values().fold(SymFunc::zero(), |acc, f| acc.add(f));
            sides.sym("sum_alpha C", &all_c, &en);
        }
        CheckId::ThetaNabla => {
            let (k, d) = (p.usize("k")?, p.usize("d")?);
            for (lambda, f) in env.schur_basis(d)? {
                let lhs = eng.theta_op(&eng.e(k)?, &eng.nabla(&f, false)?)?;
                let mut rhs = SymFunc::zero();
                for i in 0..=k {
                    rhs.add_assign(&env.estar(i, &eng.nabla(&env.estar(k - i, &f)?, false)?)?);
                }
                sides.sym(&format!("s{lambda}"), &lhs, &rhs);
            }
        }
        CheckId::FiveTerm => {
            let (d, order, top) = (p.usize("d")?, p.usize("order")?, p.usize("top")?);
            let (ou, ov) = (order, order.min(top - d));
            // L e_j[-1/M], with L the common denominator; both sides carry the factor L
            let minus_inv_m = m_const().inv()?.neg();
            let exact: Vec<QtRat> = (0..=ou)
                .map(|j| Ok(eval_finite(&SymFunc::<QtRat>::e(eng.bases(), j)?, &minus_inv_m)))
                .collect::<Result<_>>()?;
            let l = QtRat::from(exact.iter().fold(QtPoly::one(), |acc, c| lcm_poly(&acc, c.denom())));
            let cm: Vec<K::S> = exact.iter().map(|c| env.c(&c.mul(&l))).collect::<Result<_>>()?;
            // Delta_{e_j[X - 1/M]} = sum_r e_{j-r}[-1/M] Delta_{e_r}, from the list of Delta_{e_r} g
            let shifted = |deltas: &[SymFunc<K::S>], j: usize| -> SymFunc<K::S> {
                let mut out = SymFunc::zero();
                for r in 0..=j {
                    out.add_assign(&deltas[r].scale(&cm[j - r]));
                }
                out
            };
            let deltas = |g: &SymFunc<K::S>| -> Result<Vec<SymFunc<K::S>>> { (0..=ou).map(|r| env.delta_e(r, g)).collect() };
            for (lambda, f) in env.schur_basis(d)? {
                let df = deltas(&f)?;
                // r[i][j] = R_{i,i} Delta_{e_j[X - 1/M]} f
                let mut r: Vec<Vec<SymFunc<K::S>>> = Vec::with_capacity(ov + 1);
                for i in 0..=ov.min(ou) {
                    r.push((0..=ou - i).map(|j| env.r_ii(i, &shifted(&df, j))).collect::<Result<_>>()?);
                }
                for b in 0..=ov {
                    let dg = deltas(&env.estar(b, &f)?)?;
                    for a in 0..=ou {
                        let lhs = sign(shifted(&dg, a), (a + b) % 2 == 1);
                        let mut rhs = SymFunc::zero();
                        for i in 0..=a.min(b) {
                            rhs.add_assign(&env.estar(b - i, &r[i][a - i])?);
                        }
                        let rhs = sign(rhs, (a + b) % 2 == 1);
                        sides.sym(&format!("u^{a} v^{b} s{lambda}"), &lhs, &rhs);
                    }
                }
            }
        }
        CheckId::GenSeriesCoeff => {
            let (m, k, d) = (p.usize("m")?, p.usize("k")?, p.usize("d")?);
            for (lambda, f) in env.schur_basis(d)? {
                let lhs = env.delta_e(m, &env.estar(k, &f)?)?;
                let mut rhs = SymFunc::zero();
                for i in 0..=m.min(k) {
                    rhs.add_assign(&env.estar(k - i, &env.r_ii(i, &env.delta_e(m - i, &f)?)?)?);
                }
                sides.sym(&format!("s{lambda}"), &lhs, &rhs);
            }
        }
        CheckId::GenSeries2 => {
            let (d, order, top) = (p.usize("d")?, p.usize("order")?, p.usize("top")?);
            let (ou, ov) = (order, order.min(top - d));
            type Series<S> = BTreeMap<(usize, usize), SymFunc<S>>;
            let termwise = |s: &Series<K::S>, op: &dyn Fn(&SymFunc<K::S>) -> Result<SymFunc<K::S>>| -> Result<Series<K::S>> {
                s.iter().map(|(key, g)| Ok((*key, op(g)?))).collect()
            };
            // multiplication by tau_w^* with w = u^du v^dv
            let tau = |s: &Series<K::S>, du: usize, dv: usize| -> Result<Series<K::S>> {
                let mut out: Series<K::S> = BTreeMap::new();
                for (&(x, y), g) in s {
                    let mut i = 0;
                    while x + du * i <= ou && y + dv * i <= ov {
                        let term = sign(env.estar(i, g)?, i % 2 == 1);
                        out.entry((x + du * i, y + dv * i)).or_default().add_assign(&term);
                        i += 1;
                    }
                }
                Ok(out)
            };
            for (lambda, f) in env.schur_basis(d)? {
                let mut s: Series<K::S> = BTreeMap::new();
                for j in 0..=ou {
                    s.insert((j, 0), sign(env.delta_e(j, &f)?, j % 2 == 1));
                }
                let s = termwise(&s, &|g| eng.nabla(g, true))?;
                let s = tau(&s, 1, 1)?;
                let s = termwise(&s, &|g| eng.nabla(g, false))?;
                let rhs = tau(&s, 0, 1)?;
                for a in 0..=ou {
                    for b in 0..=ov {
                        let lhs = sign(env.delta_e(a, &env.estar(b, &f)?)?, (a + b) % 2 == 1);
                        let r = rhs.get(&(a, b)).cloned().unwrap_or_default();
                        sides.sym(&format!("u^{a} v^{b} s{lambda}"), &lhs, &r);
                    }
                }
            }
        }
        CheckId::TauUnit => {
            let order = p.usize("order")?.min(eng.max_degree());
            for b in 0..=order {
                let mut lhs = SymFunc::zero();
                for i in 0..=b {
                    let one = SymFunc::one();
                    lhs.add_assign(&env.estar(i, &eng.nabla(&env.estar(b - i, &one)?, false)?)?);
                }
                let lhs = sign(lhs, b % 2 == 1);
                let rhs = if b == 0 { SymFunc::one() } else { SymFunc::zero() };
                sides.sym(&format!("v^{b}"), &lhs, &rhs);
            }
        }
        CheckId::YRecursion => {
            let (a, alpha) = (p.usize("a")?, p.composition("alpha")?);
            let mut sum = SymPoly::zero(alpha.len() + 1);
            for beta in compositions(a - 1) {
                let y = alg.y_alpha(&alpha.concat(&beta))?;
                let w = env.c(&QtRat::laurent_monomial(1 - beta.len() as i64, 0))?;
                sum.add_assign(&alg.d_minus_pow(&y, beta.len() - 1)?.scale(&w));
            }
            let comm = alg.d_plus_star(&alg.d_minus(&sum)?)?.sub(&alg.d_minus(&alg.d_plus_star(&sum)?)?);
            let c = QtRat::laurent_monomial(0, 1 - a as i64).checked_div(&(QtRat::q() - QtRat::one()))?;
            let rhs = comm.scale(&env.c(&c)?);
            let lhs = alg.y_alpha(&alpha.prepend(a as u32))?;
            sides.vk("y", &lhs, &rhs);
        }
        CheckId::TauCommutations => {
            let (k, degree, order, seed) = (p.usize("k")?, p.usize("degree")?, p.usize("order")?, p.usize("seed")?);
            let f: VkElement<K::S> = random_vk(eng, k, degree, seed as u64)?;
            let tau = |g: &VkElement<K::S>| alg.tau_star(g, order);
            let tau_f = tau(&f)?;
            let apply = |s: &[VkElement<K::S>], op: &dyn Fn(&VkElement<K::S>) -> Result<VkElement<K::S>>| -> Result<Vec<VkElement<K::S>>> {
                s.iter().map(op).collect()
            };
            let mut record = |label: &str, l: Vec<VkElement<K::S>>, r: Vec<VkElement<K::S>>| {
                for (j, (x, y)) in l.iter().zip(&r).enumerate() {
                    sides.vk(&format!("{label} u^{j}"), x, y);
                }
            };
            let mut ops: Vec<(String, Box<dyn Fn(&VkElement<K::S>) -> Result<VkElement<K::S>> + '_>)> = Vec::new();
            ops.push(("d+".into(), Box::new(|g| alg.d_plus(g))));
            if k >= 1 {
                ops.push(("d-".into(), Box::new(|g| alg.d_minus(g))));
            }
            for i in 1..k {
                ops.push((format!("T_{i}"), Box::new(move |g| alg.t_i(g, i, false))));
            }
            for i in 1..=k {
                ops.push((format!("y_{i}"), Box::new(move |g| alg.mul_y(g, i, 1))));
            }
            for (label, op) in &ops {
                record(label, apply(&tau_f, op.as_ref())?, tau(&op(&f)?)?);
            }
            let dps = |g: &VkElement<K::S>| alg.d_plus_star(g);
            record("d+*", apply(&tau_f, &dps)?, alg.one_minus_u_y1(&tau(&dps(&f)?)?)?);
            if k >= 1 {
                let z1 = |g: &VkElement<K::S>| alg.z1(g);
                record("z_1", apply(&tau_f, &z1)?, alg.one_minus_u_y1(&tau(&z1(&f)?)?)?);
            }
        }
        CheckId::CAlphaBridge => {
            let alpha = p.composition("alpha")?;
            sides.sym("C", &alg.c_alpha_bridge(&alpha)?, &eng.c_alpha(&alpha)?);
        }
        CheckId::MacdonaldAxioms => {
            let mu = p.partition("mu")?;
            let n = mu.size();
            let h = eng.htilde(&mu)?;
            for (deg, comp) in h.components() {
                if deg != n {
                    sides.lhs.sym(&format!("degree {deg} "), &comp);
                }
            }
            let hn = h.component(n);
            let conj = mu.conjugate();
            for (name, alpha, bound) in [
                ("X(1-q)", QtRat::one() - QtRat::q(), &mu),
                ("X(1-t)", QtRat::one() - QtRat::t(), &conj),
            ] {
                let s = scale_alphabet(eng.ctx(), &hn, &alpha)?.to_basis(eng.bases(), Basis::S)?;
                for (lambda, c) in s.iter().filter(|(l, _)| !l.dominates(bound)) {
                    sides.lhs.scalar(format!("H[{name}] s{lambda}"), c);
                }
            }
            let pairing = hn.hall(&eng.s(&Partition::row(n as u32))?);
            sides.lhs.scalar("<H, s_n>".into(), &pairing);
            sides.rhs.scalar("<H, s_n>".into(), &K::S::one());
        }
        CheckId::Hecke => {
            let (degree, seed) = (p.usize("degree")?, p.usize("seed")?);
            let f: VkElement<K::S> = random_vk(eng, 3, degree, seed as u64)?;
            for hecke in [HeckeNormalization::Upsilon, HeckeNormalization::Unital] {
                let a = PathAlgebra::with_conventions(eng.ctx().clone(), eng.bases().clone(), alg.gamma(), hecke, None)?;
                let (ea, eb) = match hecke {
                    HeckeNormalization::Upsilon => (QtRat::q(), QtRat::one().neg()),
                    HeckeNormalization::Unital => (QtRat::one(), QtRat::q().neg()),
                };
                let (sum, prod) = (env.c(&ea.add(&eb))?, env.c(&ea.mul(&eb))?);
                let label = format!("{hecke:?}").to_lowercase();
                let t = |g: &VkElement<K::S>, i: usize, inv: bool| a.t_i(g, i, inv);
                for i in 1..=2 {
                    let tf = t(&f, i, false)?;
                    let quad = t(&tf, i, false)?.sub(&tf.scale(&sum)).add(&f.scale(&prod));
                    sides.vk(&format!("{label} quadratic T_{i}"), &quad, &SymPoly::zero(3));
                    sides.vk(&format!("{label} inverse T_{i}"), &t(&t(&f, i, true)?, i, false)?, &f);
                }
                let l = t(&t(&t(&f, 1, false)?, 2, false)?, 1, false)?;
                let r = t(&t(&t(&f, 2, false)?, 1, false)?, 2, false)?;
                sides.vk(&format!("{label} braid"), &l, &r);
            }
        }
    }
    Ok(sides)
}

/// A pseudo-random element of `V_k` of total degree at most `degree` with
/// small integer coefficients.
pub(crate) fn random_vk<K: ScalarCtx>(eng: &Engine<K>, k: usize, degree: usize, seed: u64) -> Result<VkElement<K::S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 32));
    let mut f = SymPoly::zero(k);
    for _ in 0..5 {
        let total = rng.gen_range(0..=degree);
        let mut e = vec![0u32; k];
        let mut left = total;
        if k > 0 {
            while left > 0 && rng.gen_bool(0.6) {
                e[rng.gen_range(0..k)] += 1;
                left -= 1;
            }
        }
        let parts = partitions(left);
        let lambda = &parts[rng.gen_range(0..parts.len())];
        let mut c = rng.gen_range(1..=3i64);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let sf = SymFunc::basis_element(eng.bases(), Basis::S, lambda)?.scale(&K::S::from_int(c));
        f.add_term(e, sf);
    }
    Ok(f)
}
