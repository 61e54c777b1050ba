//! Dyck paths with decorated rises and column-strict labels.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symfunc::Composition;

/// A Dyck path stored by its area word: row `i` starts on the diagonal
/// `y = x + a_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DyckPath(Vec<u32>);

impl DyckPath {
    pub fn new(area_word: Vec<u32>) -> Result<Self> {
        if let Some(&a) = area_word.first() {
            if a != 0 {
                return Err(Error::domain(format!("area word {area_word:?} must start with 0")));
            }
        }
        if let Some(i) = (1..area_word.len()).find(|&i| area_word[i] > area_word[i - 1] + 1) {
            return Err(Error::domain(format!("area word {area_word:?} jumps by more than one at row {}", i + 1)));
        }
        Ok(DyckPath(area_word))
    }

    pub fn area_word(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// `a_i` for the 1-based row `i`.
    pub fn a(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// Rows `2 <= i <= n` with `a_i > a_{i-1}`.
    pub fn rises(&self) -> Vec<usize> {
        (2..=self.size()).filter(|&i| self.a(i) > self.a(i - 1)).collect()
    }

    /// Sum of the area word.
    pub fn full_area(&self) -> u32 {
        self.0.iter().sum()
    }

    /// As a string of `N` and `E` steps.
    pub fn to_steps(&self) -> String {
        let mut out = String::new();
        for i in 0..self.size() {
            if i > 0 {
                let drop = self.0[i - 1] + 1 - self.0[i];
                out.extend(std::iter::repeat('E').take(drop as usize));
            }
            out.push('N');
        }
        let rest = self.0.last().map_or(0, |a| a + 1);
        out.extend(std::iter::repeat('E').take(rest as usize));
        out
    }
}

impl TryFrom<Vec<u32>> for DyckPath {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        DyckPath::new(v)
    }
}

impl From<DyckPath> for Vec<u32> {
    fn from(p: DyckPath) -> Self {
        p.0
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath{:?}", self.0)
    }
}

/// All Dyck paths of size `n`, in lexicographic order of area words.
pub fn dyck_paths(n: usize) -> Vec<DyckPath> {
    fn rec(n: usize, cur: &mut Vec<u32>, out: &mut Vec<DyckPath>) {
        if cur.len() == n {
            out.push(DyckPath(cur.clone()));
            return;
        }
        let top = cur.last().map_or(0, |a| a + 1);
        for a in 0..=top {
            cur.push(a);
            rec(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// `(pi, dr, w)`: a Dyck path, a set of decorated rises (1-based rows) and
/// an optional labelling.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DecoratedLabelledPath {
    pub path: DyckPath,
    pub dr: BTreeSet<usize>,
    pub labels: Option<Vec<u32>>,
}

/// Inversion pairs `(i, j)`, 1-based, split by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Inversions {
    pub primary: Vec<(usize, usize)>,
    pub secondary: Vec<(usize, usize)>,
}

impl Inversions {
    pub fn count(&self) -> usize {
        self.primary.len() + self.secondary.len()
    }
}

pub(crate) fn column_strict(path: &DyckPath, w: &[u32]) -> bool {
    (2..=path.size()).all(|i| path.a(i) != path.a(i - 1) + 1 || w[i - 1] > w[i - 2])
}

pub(crate) fn dinv_of(a: &[u32], w: &[u32]) -> u32 {
    let n = a.len();
    let mut d = 0;
    for i in 0..n {
        for j in i + 1..n {
            if (a[i] == a[j] && w[i] < w[j]) || (a[i] == a[j] + 1 && w[i] > w[j]) {
                d += 1;
            }
        }
    }
    d
}

pub(crate) fn area_of(a: &[u32], dr: &BTreeSet<usize>) -> u32 {
    a.iter().enumerate().filter(|(i, _)| !dr.contains(&(i + 1))).map(|(_, &x)| x).sum()
}

pub(crate) fn dcomp_of(a: &[u32], dr: &BTreeSet<usize>) -> Vec<u32> {
    let mut parts: Vec<u32> = Vec::new();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            parts.push(0);
        }
        if !dr.contains(&(i + 1)) {
            *parts.last_mut().expect("row 1 touches the diagonal") += 1;
        }
    }
    parts
}

impl DecoratedLabelledPath {
    pub fn new(path: DyckPath, dr: BTreeSet<usize>, labels: Option<Vec<u32>>) -> Result<Self> {
        let rises = path.rises();
        if let Some(r) = dr.iter().find(|r| !rises.contains(r)) {
            return Err(Error::domain(format!("row {r} is not a rise of {:?}", path.area_word())));
        }
        if let Some(w) = &labels {
            if w.len() != path.size() {
                return Err(Error::domain(format!("{} labels for a path of size {}", w.len(), path.size())));
            }
            if w.contains(&0) {
                return Err(Error::domain("labels must be positive"));
            }
            if !column_strict(&path, w) {
                return Err(Error::domain(format!("labels {w:?} are not strictly increasing up the columns")));
            }
        }
        Ok(DecoratedLabelledPath { path, dr, labels })
    }

    pub fn size(&self) -> usize {
        self.path.size()
    }

    pub fn k(&self) -> usize {
        self.dr.len()
    }

    fn labels_or_err(&self) -> Result<&[u32]> {
        self.labels.as_deref().ok_or_else(|| Error::domain("the path carries no labels"))
    }

    /// Sum of `a_i` over undecorated rows.
    pub fn area(&self) -> u32 {
        area_of(self.path.area_word(), &self.dr)
    }

    pub fn inversions(&self) -> Result<Inversions> {
        let w = self.labels_or_err()?;
        let a = self.path.area_word();
        let mut inv = Inversions::default();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i] == a[j] && w[i] < w[j] {
                    inv.primary.push((i + 1, j + 1));
                } else if a[i] == a[j] + 1 && w[i] > w[j] {
                    inv.secondary.push((i + 1, j + 1));
                }
            }
        }
        Ok(inv)
    }

    pub fn dinv(&self) -> Result<u32> {
        Ok(dinv_of(self.path.area_word(), self.labels_or_err()?))
    }

    /// Undecorated rows between consecutive returns to the main diagonal.
    pub fn dcomp(&self) -> Composition {
        Composition::new(dcomp_of(self.path.area_word(), &self.dr)).expect("each diagonal row is undecorated")
    }

    /// Labels read by increasing diagonal, bottom to top within a diagonal.
    pub fn reading_word(&self) -> Result<Vec<u32>> {
        let w = self.labels_or_err()?;
        let a = self.path.area_word();
        let mut rows: Vec<usize> = (0..a.len()).collect();
        rows.sort_by_key(|&i| (a[i], i));
        Ok(rows.into_iter().map(|i| w[i]).collect())
    }

    pub fn reverse_reading_word(&self) -> Result<Vec<u32>> {
        let mut r = self.reading_word()?;
        r.reverse();
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        let mut c = vec![1usize; n + 1];
        for m in 1..=n {
            c[m] = (0..m).map(|i| c[i] * c[m - 1 - i]).sum();
        }
        c[n]
    }

    #[test]
    fn counts_are_catalan() {
        for n in 1..=8 {
            assert_eq!(dyck_paths(n).len(), catalan(n));
        }
    }

    #[test]
    fn validation() {
        assert!(DyckPath::new(vec![1]).is_err());
        assert!(DyckPath::new(vec![0, 2]).is_err());
        let p = DyckPath::new(vec![0, 1]).unwrap();
        assert!(DecoratedLabelledPath::new(p.clone(), [1].into(), None).is_err());
        assert!(DecoratedLabelledPath::new(p.clone(), BTreeSet::new(), Some(vec![2, 1])).is_err());
        assert!(DecoratedLabelledPath::new(p, BTreeSet::new(), Some(vec![1, 2])).is_ok());
    }

    #[test]
    fn steps() {
        assert_eq!(DyckPath::new(vec![0, 1, 0]).unwrap().to_steps(), "NNEENE");
    }

    #[test]
    fn small_statistics() {
        let nene = DyckPath::new(vec![0, 0]).unwrap();
        let up = DecoratedLabelledPath::new(nene.clone(), BTreeSet::new(), Some(vec![1, 2])).unwrap();
        let down = DecoratedLabelledPath::new(nene, BTreeSet::new(), Some(vec![2, 1])).unwrap();
        assert_eq!((up.dinv().unwrap(), down.dinv().unwrap()), (1, 0));
        let nnee = DecoratedLabelledPath::new(DyckPath::new(vec![0, 1]).unwrap(), [2].into(), None).unwrap();
        assert_eq!(nnee.area(), 0);
        assert!(nnee.dinv().is_err());
        let plain = DecoratedLabelledPath::new(DyckPath::new(vec![0, 1]).unwrap(), BTreeSet::new(), None).unwrap();
        assert_eq!(plain.dcomp(), Composition::new(vec![2]).unwrap());
        assert_eq!(plain.area(), 1);
    }
}
