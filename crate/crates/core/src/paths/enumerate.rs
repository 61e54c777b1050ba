//! Enumeration of labelled decorated Dyck paths and their generating
//! functions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::path::{area_of, column_strict, dcomp_of, dinv_of, dyck_paths, DecoratedLabelledPath, DyckPath};
use crate::coeffring::{QtPoly, QtRat};
use crate::error::{Error, Result};
use crate::symfunc::{Basis, BasisCache, Composition, Partition, SymFunc};

/// All `k`-subsets of `items`, in lexicographic order.
pub fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Column-strict labellings of `path` with labels in `1..=label_max`, in
/// lexicographic order.
pub fn labellings(path: &DyckPath, label_max: u32) -> Vec<Vec<u32>> {
    fn rec(a: &[u32], label_max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == a.len() {
            out.push(cur.clone());
            return;
        }
        let low = if i > 0 && a[i] == a[i - 1] + 1 { cur[i - 1] + 1 } else { 1 };
        for v in low..=label_max {
            cur.push(v);
            rec(a, label_max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(path.area_word(), label_max, &mut Vec::new(), &mut out);
    debug_assert!(out.iter().all(|w| column_strict(path, w)));
    out
}

fn decorations(path: &DyckPath, k: usize) -> Vec<BTreeSet<usize>> {
    subsets(&path.rises(), k).into_iter().map(|v| v.into_iter().collect()).collect()
}

/// Every element of `LD(n)^{*k}` with labels in `1..=label_max` exactly
/// once, ordered by path, then decoration set, then labelling. With
/// `label_max = 0` the paths are unlabelled, giving `D(n)^{*k}`.
pub fn enumerate(
    n: usize,
    k: usize,
    label_max: u32,
    dcomp_filter: Option<Composition>,
) -> impl Iterator<Item = DecoratedLabelledPath> {
    dyck_paths(n).into_iter().flat_map(move |path| {
        let filter = dcomp_filter.clone();
        let decs: Vec<BTreeSet<usize>> = decorations(&path, k)
            .into_iter()
            .filter(|dr| filter.as_ref().is_none_or(|f| dcomp_of(path.area_word(), dr) == f.parts()))
            .collect();
        let words: Vec<Option<Vec<u32>>> =
            if label_max == 0 { vec![None] } else { labellings(&path, label_max).into_iter().map(Some).collect() };
        decs.into_iter().flat_map(move |dr| {
            let path = path.clone();
            words.clone().into_iter().map(move |w| DecoratedLabelledPath { path: path.clone(), dr: dr.clone(), labels: w })
        })
    })
}

/// `q^dinv t^area` tallies keyed by content vector.
type Tally = HashMap<Vec<u8>, HashMap<(u32, u32), i64>>;

fn merge_into(dst: &mut BTreeMap<Composition, Tally>, src: BTreeMap<Composition, Tally>) {
    for (alpha, t) in src {
        let slot = dst.entry(alpha).or_default();
        for (e, m) in t {
            let inner = slot.entry(e).or_default();
            for (key, c) in m {
                *inner.entry(key).or_insert(0) += c;
            }
        }
    }
}

fn tally_path(path: &DyckPath, n: usize, k: usize) -> BTreeMap<Composition, Tally> {
    let a = path.area_word();
    let mut by_content: HashMap<Vec<u8>, HashMap<u32, i64>> = HashMap::new();
    for w in labellings(path, n as u32) {
        let mut e = vec![0u8; n];
        for &l in &w {
            e[l as usize - 1] += 1;
        }
        *by_content.entry(e).or_default().entry(dinv_of(a, &w)).or_insert(0) += 1;
    }
    let mut out: BTreeMap<Composition, Tally> = BTreeMap::new();
    for dr in decorations(path, k) {
        let area = area_of(a, &dr);
        let alpha = Composition::new(dcomp_of(a, &dr)).expect("positive parts");
        let slot = out.entry(alpha).or_default();
        for (e, m) in &by_content {
            let inner = slot.entry(e.clone()).or_default();
            for (&d, &c) in m {
                *inner.entry((d, area)).or_insert(0) += c;
            }
        }
    }
    out
}

fn poly_of(m: &HashMap<(u32, u32), i64>) -> QtPoly {
    QtPoly::from_terms(m.iter().map(|(&(d, a), &c)| (d, a, BigInt::from(c))))
}

/// Checks that the tally is constant on permutation orbits of content
/// vectors and returns the monomial-basis coefficients.
fn monomial_coeffs(n: usize, tally: &Tally) -> Result<BTreeMap<Partition, QtPoly>> {
    let mut out = BTreeMap::new();
    for (e, m) in tally {
        let mut sorted = e.clone();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        let p = poly_of(m);
        let canon = tally.get(&sorted).map(poly_of).unwrap_or_else(QtPoly::zero);
        if p != canon {
            return Err(Error::internal(format!(
                "path generating function is not symmetric: content {e:?} has {} but {sorted:?} has {}",
                p.to_canonical_string(),
                canon.to_canonical_string()
            )));
        }
        if *e == sorted && !p.is_zero() {
            let lambda = Partition::from_parts(sorted.iter().map(|&x| x as u32).filter(|&x| x > 0).collect());
            debug_assert_eq!(lambda.size(), n);
            out.insert(lambda, p);
        }
    }
    Ok(out)
}

/// `sum q^dinv t^area x^P` over `LD(n)^{*k}`, split by diagonal
/// composition. Labels run over `1..=n`, which determines a symmetric
/// function of degree `n`.
pub fn gen_fn_by_dcomp(bases: &BasisCache, n: usize, k: usize) -> Result<BTreeMap<Composition, SymFunc<QtRat>>> {
    if n == 0 || k >= n {
        return Err(Error::domain(format!("need n > k >= 0, got n={n}, k={k}")));
    }
    bases.check_degree(n)?;
    let tallies = dyck_paths(n)
        .par_iter()
        .map(|p| tally_path(p, n, k))
        .reduce(BTreeMap::new, |mut a, b| {
            merge_into(&mut a, b);
            a
        });
    let mut out = BTreeMap::new();
    for (alpha, tally) in tallies {
        let coeffs: Vec<(Partition, QtRat)> =
            monomial_coeffs(n, &tally)?.into_iter().map(|(l, p)| (l, QtRat::from(p))).collect();
        let f = SymFunc::from_basis(bases, Basis::M, coeffs.iter().map(|(l, c)| (l, c)))?;
        out.insert(alpha, f);
    }
    Ok(out)
}

/// The generating function of `LD(n)^{*k}`, optionally restricted to
/// `dcomp = alpha`.
pub fn gen_fn(bases: &BasisCache, n: usize, k: usize, alpha: Option<&Composition>) -> Result<SymFunc<QtRat>> {
    let all = gen_fn_by_dcomp(bases, n, k)?;
    Ok(match alpha {
        Some(a) => {
            if a.size() != n - k {
                return Err(Error::domain(format!("composition {a} is not of size n - k = {}", n - k)));
            }
            all.get(a).cloned().unwrap_or_default()
        }
        None => all.values().fold(SymFunc::zero(), |acc, f| acc.add(f)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        let one: Vec<_> = enumerate(1, 0, 1, None).collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].labels, Some(vec![1]));
        // NENE: 4 labellings, NNEE: only (1,2)
        assert_eq!(enumerate(2, 0, 2, None).count(), 5);
        assert_eq!(enumerate(2, 1, 2, None).count(), 1);
        assert_eq!(enumerate(2, 2, 2, None).count(), 0);
        assert_eq!(enumerate(3, 0, 0, None).count(), 5);
    }

    #[test]
    fn filter_matches_dcomp() {
        let alpha = Composition::new(vec![1, 2]).unwrap();
        for p in enumerate(4, 1, 0, Some(alpha.clone())) {
            assert_eq!(p.dcomp(), alpha);
        }
    }

    #[test]
    fn single_cell_is_e1() {
        let b = BasisCache::new(2);
        assert_eq!(gen_fn(&b, 1, 0, None).unwrap(), SymFunc::e(&b, 1).unwrap());
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(&[1, 2, 3, 4], 2).len(), 6);
        assert_eq!(subsets(&[1, 2], 0), vec![Vec::<i32>::new()]);
    }
}
