//! The elements `M_alpha^{*k}` of `V_{l(alpha)}`, memoized in memory and
//! optionally on disk.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::algebra::{PathAlgebra, VkElement};
use crate::coeffring::{QtRat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::symfunc::{compositions, Composition, SymPoly};

pub const MSTAR_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct MStarDoc {
    format_version: u32,
    alpha: Composition,
    k: usize,
    ctx: String,
    value: serde_json::Value,
}

pub(crate) struct MStarStore<S> {
    dir: Option<PathBuf>,
    ctx: String,
    memo: Mutex<HashMap<(Composition, usize), VkElement<S>>>,
}

impl<S: Scalar> MStarStore<S> {
    pub(crate) fn new(cache_dir: Option<&Path>, ctx: String) -> Self {
        MStarStore { dir: cache_dir.map(|d| d.join("mstar")), ctx, memo: Mutex::new(HashMap::new()) }
    }

    fn path_for(&self, alpha: &Composition, k: usize) -> Option<PathBuf> {
        let mut h = Sha256::new();
        h.update(format!("v{MSTAR_FORMAT_VERSION}|{}|{alpha}|{k}", self.ctx).as_bytes());
        let name = hex::encode(h.finalize());
        self.dir.as_ref().map(|d| d.join(format!("{name}.json")))
    }

    fn get(&self, alpha: &Composition, k: usize) -> Result<Option<VkElement<S>>> {
        if let Some(v) = self.memo.lock().expect("lock poisoned").get(&(alpha.clone(), k)) {
            return Ok(Some(v.clone()));
        }
        let Some(path) = self.path_for(alpha, k) else { return Ok(None) };
        if !path.exists() {
            return Ok(None);
        }
        let bad = |reason: String| Error::Cache { path: path.clone(), reason };
        let doc: MStarDoc = serde_json::from_str(&fs::read_to_string(&path)?).map_err(|e| bad(e.to_string()))?;
        if doc.format_version != MSTAR_FORMAT_VERSION || doc.alpha != *alpha || doc.k != k || doc.ctx != self.ctx {
            return Err(bad(format!("does not hold M*{alpha} for k={k} in {}", self.ctx)));
        }
        let v = SymPoly::from_json(&doc.value).map_err(|e| bad(e.to_string()))?;
        if v.k() != alpha.len() {
            return Err(bad("arity does not match the composition".into()));
        }
        self.memo.lock().expect("lock poisoned").insert((alpha.clone(), k), v.clone());
        Ok(Some(v))
    }

    fn put(&self, alpha: &Composition, k: usize, v: &VkElement<S>) -> Result<()> {
        self.memo.lock().expect("lock poisoned").insert((alpha.clone(), k), v.clone());
        let Some(path) = self.path_for(alpha, k) else { return Ok(()) };
        fs::create_dir_all(path.parent().expect("cache file has a parent"))?;
        let doc = MStarDoc {
            format_version: MSTAR_FORMAT_VERSION,
            alpha: alpha.clone(),
            k,
            ctx: self.ctx.clone(),
            value: v.to_json(),
        };
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&doc)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub(crate) fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }
}

impl<K: ScalarCtx> PathAlgebra<K> {
    /// `M_alpha^{*k}`; zero for negative `k`, and `M_()^{*k} = [k = 0]`.
    pub fn m_star(&self, alpha: &Composition, k: i64) -> Result<VkElement<K::S>> {
        let l = alpha.len();
        if k < 0 {
            return Ok(SymPoly::zero(l));
        }
        if alpha.is_empty() {
            return Ok(if k == 0 { SymPoly::one(0) } else { SymPoly::zero(0) });
        }
        let ku = k as usize;
        self.bases().check_degree(alpha.size() + ku)?;
        if let Some(v) = self.mstar.get(alpha, ku)? {
            return Ok(v);
        }
        let (a, rest) = alpha.split_first().expect("nonempty");
        let v = if a == 1 {
            let first = self.d_plus(&self.m_star(&rest, k)?)?;
            let tail = self.m_star(&rest.concat(&Composition::new(vec![1])?), k - 1)?;
            first.add(&self.div_q_minus_one(&self.commutator(&tail)?)?)
        } else {
            let mut inner = SymPoly::zero(l);
            for (size, kk) in [(a - 1, k), (a, k - 1)] {
                for beta in compositions(size as usize) {
                    let m = self.m_star(&rest.concat(&beta), kk)?;
                    inner.add_assign(&self.d_minus_pow(&m, beta.len() - 1)?);
                }
            }
            let ta = self.ctx().embed(&QtRat::monomial(1, 0, a - 1))?;
            self.div_q_minus_one(&self.commutator(&inner)?)?.scale(&ta)
        };
        if v.k() != l {
            return Err(Error::internal(format!("M*{alpha} landed in V_{} instead of V_{l}", v.k())));
        }
        self.mstar.put(alpha, ku, &v)?;
        Ok(v)
    }

    /// `d_-^{l(alpha)} M_alpha^{*k}` as a symmetric function.
    pub fn m_star_reduced(&self, alpha: &Composition, k: i64) -> Result<crate::symfunc::SymFunc<K::S>> {
        self.d_minus_pow(&self.m_star(alpha, k)?, alpha.len())?.into_sym()
    }

    pub fn mstar_cache_dir(&self) -> Option<&Path> {
        self.mstar.dir()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeffring::ExactCtx;
    use crate::symfunc::BasisCache;

    #[test]
    fn initial_values() {
        let a = PathAlgebra::new(ExactCtx, Arc::new(BasisCache::new(6))).unwrap();
        let empty = Composition::empty();
        assert_eq!(a.m_star(&empty, 0).unwrap(), SymPoly::one(0));
        assert!(a.m_star(&empty, 2).unwrap().is_zero());
        let one = Composition::new(vec![1]).unwrap();
        assert_eq!(a.m_star(&one, 0).unwrap(), SymPoly::one(1));
        assert_eq!(a.m_star(&one, -1).unwrap(), SymPoly::zero(1));
    }

    #[test]
    fn persisted_values_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let bases = Arc::new(BasisCache::new(6));
        let alpha = Composition::new(vec![2, 1]).unwrap();
        let first = PathAlgebra::with_options(ExactCtx, bases.clone(), super::super::GAMMA, Some(dir.path())).unwrap();
        let v = first.m_star(&alpha, 1).unwrap();
        let files = fs::read_dir(dir.path().join("mstar")).unwrap().count();
        assert!(files >= 1);
        let second = PathAlgebra::with_options(ExactCtx, bases, super::super::GAMMA, Some(dir.path())).unwrap();
        assert_eq!(second.m_star(&alpha, 1).unwrap(), v);
    }
}
