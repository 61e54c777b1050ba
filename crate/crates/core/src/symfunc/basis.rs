//! Transition matrices between the power-sum basis and the classical bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::partition::{partitions, Partition};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S];

    pub fn letter(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "p" => Ok(Basis::P),
            "s" => Ok(Basis::S),
            _ => Err(Error::domain(format!("unknown basis `{s}`"))),
        }
    }
}

pub type RatMatrix = Vec<Vec<BigRational>>;

/// All transition data for one degree.
pub struct DegreeTables {
    pub degree: usize,
    pub parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    pub z: Vec<BigInt>,
    // to_p[b][i][j]: coefficient of p_{parts[j]} in b_{parts[i]}
    to_p: [RatMatrix; 5],
    from_p: [RatMatrix; 5],
}

impl DegreeTables {
    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// Rows are basis elements, columns are power sums.
    pub fn to_p(&self, b: Basis) -> &RatMatrix {
        &self.to_p[b.index()]
    }

    /// Inverse of [`Self::to_p`]: row `rho` holds the expansion of `p_rho`.
    pub fn from_p(&self, b: Basis) -> &RatMatrix {
        &self.from_p[b.index()]
    }

    fn build(n: usize) -> Self {
        let parts = partitions(n);
        let index: HashMap<Partition, usize> =
            parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let z: Vec<BigInt> = parts.iter().map(Partition::z).collect();
        let dense = |m: &BTreeMap<Partition, BigRational>| -> Vec<BigRational> {
            let mut row = vec![BigRational::zero(); parts.len()];
            for (rho, c) in m {
                row[index[rho]] = c.clone();
            }
            row
        };

        let h_single: Vec<PExp> = (0..=n).map(|k| single(k, false)).collect();
        let e_single: Vec<PExp> = (0..=n).map(|k| single(k, true)).collect();
        let product = |singles: &[PExp], lambda: &Partition| -> PExp {
            lambda.parts().iter().fold(unit(), |acc, &k| pmul(&acc, &singles[k as usize]))
        };

        let h: RatMatrix = parts.iter().map(|l| dense(&product(&h_single, l))).collect();
        let e: RatMatrix = parts.iter().map(|l| dense(&product(&e_single, l))).collect();
        let p: RatMatrix = identity(parts.len());
        let s: RatMatrix = parts
            .iter()
            .map(|l| {
                let mut acc: PExp = BTreeMap::new();
                for (mu, c) in jacobi_trudi(l) {
                    let term = product(&h_single, &mu);
                    for (rho, v) in term {
                        add_into(&mut acc, rho, v * BigRational::from_integer(c.clone()));
                    }
                }
                dense(&acc)
            })
            .collect();
        let h_inv = invert(&h);
        // <h_lambda, m_mu> = delta gives M[mu][rho] = Hinv[rho][mu] / z_rho
        let m: RatMatrix = (0..parts.len())
            .map(|mu| {
                (0..parts.len())
                    .map(|rho| &h_inv[rho][mu] / BigRational::from_integer(z[rho].clone()))
                    .collect()
            })
            .collect();
        let m_inv = invert(&m);
        let e_inv = invert(&e);
        let s_inv = invert(&s);
        DegreeTables {
            degree: n,
            parts,
            index,
            z,
            to_p: [m, e, h.clone(), p.clone(), s],
            from_p: [m_inv, e_inv, h_inv, p, s_inv],
        }
    }
}

type PExp = BTreeMap<Partition, BigRational>;

fn unit() -> PExp {
    let mut m = BTreeMap::new();
    m.insert(Partition::empty(), BigRational::one());
    m
}

fn add_into(m: &mut PExp, k: Partition, v: BigRational) {
    use std::collections::btree_map::Entry;
    match m.entry(k) {
        Entry::Vacant(e) => {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn pmul(a: &PExp, b: &PExp) -> PExp {
    let mut out = BTreeMap::new();
    for (ra, ca) in a {
        for (rb, cb) in b {
            add_into(&mut out, ra.union(rb), ca * cb);
        }
    }
    out
}

/// `h_k = sum p_rho / z_rho`, `e_k = sum sign(rho) p_rho / z_rho`.
fn single(k: usize, signed: bool) -> PExp {
    partitions(k)
        .into_iter()
        .map(|rho| {
            let mut c = BigRational::new(BigInt::one(), rho.z());
            if signed && rho.sign() < 0 {
                c = -c;
            }
            (rho, c)
        })
        .collect()
}

/// `s_lambda = det(h_{lambda_i - i + j})` expanded over permutations, as a
/// signed sum of complete homogeneous products.
fn jacobi_trudi(lambda: &Partition) -> BTreeMap<Partition, BigInt> {
    let l = lambda.len();
    let mut out: BTreeMap<Partition, BigInt> = BTreeMap::new();
    let mut used = vec![false; l];
    let mut chosen: Vec<u32> = Vec::with_capacity(l);
    fn rec(
        i: usize,
        lambda: &Partition,
        used: &mut Vec<bool>,
        chosen: &mut Vec<u32>,
        sign: i64,
        out: &mut BTreeMap<Partition, BigInt>,
    ) {
        let l = lambda.len();
        if i == l {
            let mu = Partition::from_parts(chosen.clone());
            *out.entry(mu).or_insert_with(BigInt::zero) += sign;
            return;
        }
        // sign of the permutation tracked by counting inversions as we go
        for j in 0..l {
            if used[j] {
                continue;
            }
            let idx = lambda.part(i) as i64 - i as i64 + j as i64;
            if idx < 0 {
                continue;
            }
            let inversions = used[j + 1..].iter().filter(|&&u| u).count();
            used[j] = true;
            chosen.push(idx as u32);
            let s = if inversions % 2 == 0 { sign } else { -sign };
            rec(i + 1, lambda, used, chosen, s, out);
            chosen.pop();
            used[j] = false;
        }
    }
    rec(0, lambda, &mut used, &mut chosen, 1, &mut out);
    out.retain(|_, c| !c.is_zero());
    out
}

fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

/// Gauss-Jordan inverse; panics on a singular matrix, which would mean a
/// broken basis construction.
pub fn invert(a: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular transition matrix");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let a = &m[col][j] * &f;
                m[r][j] -= a;
                let b = &inv[col][j] * &f;
                inv[r][j] -= b;
            }
        }
    }
    inv
}

/// Lazily built transition tables for every degree up to a bound.
///
/// Each degree is initialized at most once; concurrent readers of a degree
/// under construction wait for it.
pub struct BasisCache {
    max_degree: usize,
    tables: Mutex<HashMap<usize, Arc<OnceLock<Arc<DegreeTables>>>>>,
}

impl BasisCache {
    pub fn new(max_degree: usize) -> Self {
        BasisCache { max_degree, tables: Mutex::new(HashMap::new()) }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            Err(Error::DegreeBound { degree: n, bound: self.max_degree })
        } else {
            Ok(())
        }
    }

    pub fn tables(&self, n: usize) -> Result<Arc<DegreeTables>> {
        self.check_degree(n)?;
        let cell = {
            let mut map = self.tables.lock().expect("basis cache lock poisoned");
            map.entry(n).or_insert_with(|| Arc::new(OnceLock::new())).clone()
        };
        Ok(cell.get_or_init(|| Arc::new(DegreeTables::build(n))).clone())
    }
}

impl fmt::Debug for BasisCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasisCache").field("max_degree", &self.max_degree).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn matrices_invert() {
        let cache = BasisCache::new(6);
        for n in 0..=6 {
            let t = cache.tables(n).unwrap();
            for b in Basis::ALL {
                let a = t.to_p(b);
                let ai = t.from_p(b);
                for i in 0..a.len() {
                    for j in 0..a.len() {
                        let mut s = BigRational::zero();
                        for k in 0..a.len() {
                            s += &a[i][k] * &ai[k][j];
                        }
                        let want = if i == j { BigRational::one() } else { BigRational::zero() };
                        assert_eq!(s, want, "basis {b} degree {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn degree_bound() {
        let cache = BasisCache::new(3);
        assert!(matches!(cache.tables(4), Err(Error::DegreeBound { degree: 4, bound: 3 })));
    }

    #[test]
    fn newton_identity_for_e2() {
        // e_2 = (p_11 - p_2) / 2
        let t = BasisCache::new(2).tables(2).unwrap();
        let e2 = &t.to_p(Basis::E)[t.index_of(&Partition::row(2)).unwrap()];
        assert_eq!(e2[t.index_of(&Partition::new(vec![1, 1]).unwrap()).unwrap()], rat(1, 2));
        assert_eq!(e2[t.index_of(&Partition::row(2)).unwrap()], rat(-1, 2));
    }

    #[test]
    fn jacobi_trudi_two_row() {
        // s_(2,1) = h_2 h_1 - h_3
        let jt = jacobi_trudi(&Partition::new(vec![2, 1]).unwrap());
        assert_eq!(jt.len(), 2);
        assert_eq!(jt[&Partition::new(vec![2, 1]).unwrap()], BigInt::from(1));
        assert_eq!(jt[&Partition::row(3)], BigInt::from(-1));
    }
}
