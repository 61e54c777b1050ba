//! Modified Macdonald polynomials from the fillings formula, with an
//! on-disk cache of their Schur expansions.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeffring::{QtPoly, QtRat};
use crate::error::{Error, Result};
use crate::symfunc::{partitions, scale_alphabet, Basis, BasisCache, Partition, SymFunc};

pub const FORMAT_VERSION: u32 = 1;

struct Cell {
    arm: u32,
    leg: u32,
    // earlier cells (in reading order) attacking this one
    attackers: Vec<usize>,
    // later cell directly above, whose descent is decided when this one is filled
    above: Option<usize>,
}

/// Cells of `mu` in reading order: rows from top to bottom, each row left
/// to right, French convention.
fn reading_cells(mu: &Partition) -> Vec<Cell> {
    let l = mu.len();
    let mut order: Vec<(u32, u32)> = Vec::new();
    for r in (1..=l as u32).rev() {
        for c in 1..=mu.part(r as usize - 1) {
            order.push((r, c));
        }
    }
    let pos: HashMap<(u32, u32), usize> = order.iter().enumerate().map(|(i, &rc)| (rc, i)).collect();
    order
        .iter()
        .map(|&(r, c)| {
            let st = mu.cell_stats((r, c)).expect("cell of mu");
            let mut attackers = Vec::new();
            // same row, to the left
            for c2 in 1..c {
                attackers.push(pos[&(r, c2)]);
            }
            // row above, strictly to the right
            for c2 in c + 1..=mu.part(r as usize) {
                attackers.push(pos[&(r + 1, c2)]);
            }
            Cell {
                arm: st.arm,
                leg: st.leg,
                attackers,
                above: pos.get(&(r + 1, c)).copied(),
            }
        })
        .collect()
}

/// Coefficient of `m_lambda` in `H~_mu`, for every `lambda |- |mu|`: the sum
/// of `q^inv t^maj` over fillings with content `lambda`.
pub fn htilde_monomial(mu: &Partition) -> BTreeMap<Partition, QtPoly> {
    let cells = reading_cells(mu);
    let n = cells.len();
    let mut out = BTreeMap::new();
    for lambda in partitions(n) {
        let mut counts: Vec<u32> = lambda.parts().to_vec();
        let mut filling = vec![0u32; n];
        let mut acc: HashMap<(i64, u32), i64> = HashMap::new();
        fill(&cells, 0, &mut counts, &mut filling, 0, 0, &mut acc);
        let poly = QtPoly::from_terms(acc.into_iter().filter(|(_, c)| *c != 0).map(|((i, m), c)| {
            assert!(i >= 0, "negative inv statistic");
            (i as u32, m, BigInt::from(c))
        }));
        if !poly.is_zero() {
            out.insert(lambda, poly);
        }
    }
    out
}

fn fill(
    cells: &[Cell],
    i: usize,
    counts: &mut [u32],
    filling: &mut [u32],
    inv: i64,
    maj: u32,
    acc: &mut HashMap<(i64, u32), i64>,
) {
    if i == cells.len() {
        *acc.entry((inv, maj)).or_insert(0) += 1;
        return;
    }
    let cell = &cells[i];
    for v in 0..counts.len() {
        if counts[v] == 0 {
            continue;
        }
        let val = v as u32 + 1;
        let mut inv2 = inv;
        let mut maj2 = maj;
        for &a in &cell.attackers {
            if filling[a] > val {
                inv2 += 1;
            }
        }
        if let Some(up) = cell.above {
            if filling[up] > val {
                maj2 += cells[up].leg + 1;
                inv2 -= cells[up].arm as i64;
            }
        }
        counts[v] -= 1;
        filling[i] = val;
        fill(cells, i + 1, counts, filling, inv2, maj2, acc);
        counts[v] += 1;
    }
}

/// `H~_mu` in the power-sum basis.
pub fn compute_htilde(bases: &BasisCache, mu: &Partition) -> Result<SymFunc<QtRat>> {
    bases.check_degree(mu.size())?;
    let mono = htilde_monomial(mu);
    let coeffs: Vec<(Partition, QtRat)> = mono.into_iter().map(|(l, p)| (l, QtRat::from(p))).collect();
    SymFunc::from_basis(bases, Basis::M, coeffs.iter().map(|(l, c)| (l, c)))
}

#[derive(Serialize, Deserialize)]
struct SchurTerm {
    lambda: Partition,
    coeff: QtRat,
}

#[derive(Serialize, Deserialize)]
struct CacheDoc {
    mu: Partition,
    schur: Vec<SchurTerm>,
    format_version: u32,
}

/// Memory and disk cache of `H~_mu`, exact.
pub struct HtildeStore {
    bases: Arc<BasisCache>,
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<Partition, Arc<SymFunc<QtRat>>>>,
}

impl HtildeStore {
    pub fn new(bases: Arc<BasisCache>, cache_dir: Option<&Path>) -> Self {
        HtildeStore { bases, dir: cache_dir.map(|d| d.join("htilde")), mem: Mutex::new(HashMap::new()) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, mu: &Partition) -> Option<PathBuf> {
        let name: Vec<String> = mu.parts().iter().map(u32::to_string).collect();
        self.dir.as_ref().map(|d| d.join(format!("mu_{}.json", name.join("-"))))
    }

    pub fn get(&self, mu: &Partition) -> Result<Arc<SymFunc<QtRat>>> {
        if let Some(h) = self.mem.lock().expect("htilde lock poisoned").get(mu) {
            return Ok(h.clone());
        }
        let h = match self.load(mu)? {
            Some(h) => h,
            None => {
                let h = compute_htilde(&self.bases, mu)?;
                self.save(mu, &h)?;
                h
            }
        };
        let h = Arc::new(h);
        self.mem.lock().expect("htilde lock poisoned").insert(mu.clone(), h.clone());
        Ok(h)
    }

    fn load(&self, mu: &Partition) -> Result<Option<SymFunc<QtRat>>> {
        let Some(path) = self.path_for(mu) else { return Ok(None) };
        if !path.exists() {
            return Ok(None);
        }
        let bad = |reason: String| Error::Cache { path: path.clone(), reason };
        let text = fs::read_to_string(&path)?;
        let doc: CacheDoc = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(bad(format!("format version {} is not {FORMAT_VERSION}", doc.format_version)));
        }
        if doc.mu != *mu {
            return Err(bad(format!("holds {} instead of {mu}", doc.mu)));
        }
        let terms: Vec<(Partition, QtRat)> = doc.schur.into_iter().map(|t| (t.lambda, t.coeff)).collect();
        if terms.iter().any(|(l, _)| l.size() != mu.size()) {
            return Err(bad("Schur term of the wrong degree".into()));
        }
        Ok(Some(SymFunc::from_basis(&self.bases, Basis::S, terms.iter().map(|(l, c)| (l, c)))?))
    }

    fn save(&self, mu: &Partition, h: &SymFunc<QtRat>) -> Result<()> {
        let Some(path) = self.path_for(mu) else { return Ok(()) };
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir)?;
        let doc = CacheDoc {
            mu: mu.clone(),
            schur: h
                .to_basis(&self.bases, Basis::S)?
                .into_iter()
                .map(|(lambda, coeff)| SchurTerm { lambda, coeff })
                .collect(),
            format_version: FORMAT_VERSION,
        };
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&doc)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Cached partitions on disk.
    pub fn list(&self) -> Result<Vec<PathBuf>> {
        let Some(dir) = &self.dir else { return Ok(Vec::new()) };
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize> {
        let files = self.list()?;
        for f in &files {
            fs::remove_file(f)?;
        }
        self.mem.lock().expect("htilde lock poisoned").clear();
        Ok(files.len())
    }
}

/// Violations of the characterization of `H~_mu`: Schur triangularity of
/// `H~_mu[X(1-q)]` and `H~_mu[X(1-t)]` and `<H~_mu, s_(n)> = 1`. Each entry
/// names the first offending coefficient.
pub fn axiom_violations(bases: &BasisCache, mu: &Partition, h: &SymFunc<QtRat>) -> Result<Vec<String>> {
    let ctx = crate::coeffring::ExactCtx;
    let n = mu.size();
    let mut out = Vec::new();
    if h.homogeneous_degree().unwrap_or(n) != n || h.is_zero() {
        out.push(format!("H~{mu} is not homogeneous of degree {n}"));
        return Ok(out);
    }
    let conj = mu.conjugate();
    for (name, alpha, bound) in [
        ("X(1-q)", QtRat::one() - QtRat::q(), mu),
        ("X(1-t)", QtRat::one() - QtRat::t(), &conj),
    ] {
        let s = scale_alphabet(&ctx, h, &alpha)?.to_basis(bases, Basis::S)?;
        if let Some((lambda, c)) = s.iter().find(|(l, _)| !l.dominates(bound)) {
            out.push(format!("H~{mu}[{name}] has s{lambda} coefficient {c}, but {lambda} does not dominate {bound}"));
        }
    }
    let sn = SymFunc::s(bases, &Partition::row(n as u32))?;
    let pairing = h.hall(&sn);
    if !pairing.is_one() {
        out.push(format!("<H~{mu}, s({n})> = {pairing}, expected 1"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn schur(bases: &BasisCache, h: &SymFunc<QtRat>) -> BTreeMap<Partition, QtRat> {
        h.to_basis(bases, Basis::S).unwrap()
    }

    #[test]
    fn one_cell() {
        let b = BasisCache::new(2);
        let h = compute_htilde(&b, &part(&[1])).unwrap();
        assert_eq!(h, SymFunc::s(&b, &part(&[1])).unwrap());
    }

    #[test]
    fn two_cells() {
        let b = BasisCache::new(2);
        let row = schur(&b, &compute_htilde(&b, &part(&[2])).unwrap());
        assert_eq!(row[&part(&[2])], QtRat::one());
        assert_eq!(row[&part(&[1, 1])], QtRat::q());
        let col = schur(&b, &compute_htilde(&b, &part(&[1, 1])).unwrap());
        assert_eq!(col[&part(&[2])], QtRat::one());
        assert_eq!(col[&part(&[1, 1])], QtRat::t());
    }

    #[test]
    fn axioms_hold_through_degree_five() {
        let b = BasisCache::new(5);
        for n in 1..=5 {
            for mu in partitions(n) {
                let h = compute_htilde(&b, &mu).unwrap();
                assert!(axiom_violations(&b, &mu, &h).unwrap().is_empty(), "{mu}");
            }
        }
    }

    #[test]
    fn disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let b = Arc::new(BasisCache::new(4));
        let mu = part(&[2, 1, 1]);
        let first = HtildeStore::new(b.clone(), Some(dir.path())).get(&mu).unwrap();
        let path = HtildeStore::new(b.clone(), Some(dir.path())).path_for(&mu).unwrap();
        assert!(path.exists());
        let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(doc["format_version"], 1);
        assert_eq!(doc["mu"], serde_json::json!([2, 1, 1]));
        let second = HtildeStore::new(b, Some(dir.path())).get(&mu).unwrap();
        assert_eq!(first, second);
    }
}
