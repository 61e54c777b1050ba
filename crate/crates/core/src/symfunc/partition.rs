//! Integer partitions and compositions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts.
///
/// Ordered by size first and then lexicographically by parts, so that the
/// partitions of `n` are listed from `(1^n)` up to `(n)` and every
/// homogeneous component of a [`SymFunc`](super::SymFunc) is contiguous.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::domain(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// `n(mu) = sum (i - 1) mu_i`.
    pub fn n_stat(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// Multiplicity of each part size; index `k` holds the multiplicity of `k`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0; self.part(0) as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    /// `z_lambda = prod_k k^(m_k) m_k!`.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (k, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for i in 1..=m {
                acc *= BigInt::from(k) * BigInt::from(i);
            }
        }
        acc
    }

    /// `(-1)^(|lambda| - l(lambda))`.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Dominance order: every partial sum of `self` is at least that of
    /// `other`. Only meaningful for equal sizes.
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..n {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a < b {
                return false;
            }
        }
        true
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            if j == other.len() || (i < self.len() && self.0[i] >= other.0[j]) {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        Partition(out)
    }

    /// Cells as `(row, column)`, both 1-based, row `r` holding `mu_r` cells
    /// (French convention: row 1 at the bottom).
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().enumerate().flat_map(|(r, &len)| (1..=len).map(move |c| (r as u32 + 1, c)))
    }

    pub fn contains_cell(&self, cell: (u32, u32)) -> bool {
        let (r, c) = cell;
        r >= 1 && c >= 1 && self.part(r as usize - 1) >= c
    }

    /// Arm, leg, co-arm and co-leg of a cell: the numbers of cells strictly
    /// to the right, above, to the left and below it.
    pub fn cell_stats(&self, cell: (u32, u32)) -> Result<CellStats> {
        if !self.contains_cell(cell) {
            return Err(Error::domain(format!("cell {cell:?} is not in {self}")));
        }
        let (r, c) = cell;
        let col_height = self.0.iter().filter(|&&p| p >= c).count() as u32;
        Ok(CellStats {
            arm: self.0[r as usize - 1] - c,
            leg: col_height - r,
            coarm: c - 1,
            coleg: r - 1,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellStats {
    pub arm: u32,
    pub leg: u32,
    pub coarm: u32,
    pub coleg: u32,
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, in increasing [`Partition`] order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Ordered list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::domain(format!("composition {parts:?} has a zero part")));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// `(a)` followed by `self`.
    pub fn prepend(&self, a: u32) -> Composition {
        assert!(a > 0, "composition parts are positive");
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Composition(v)
    }

    /// First part and the remaining composition.
    pub fn split_first(&self) -> Option<(u32, Composition)> {
        self.0.split_first().map(|(a, rest)| (*a, Composition(rest.to_vec())))
    }

    pub fn sorted(&self) -> Partition {
        Partition::from_parts(self.0.clone())
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All compositions of `n` in lexicographic order; `n = 0` gives the empty
/// composition alone.
pub fn compositions(n: usize) -> Vec<Composition> {
    fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![part(&[1, 1, 1]), part(&[2, 1]), part(&[3])]);
    }

    #[test]
    fn composition_counts() {
        for n in 1..=7 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(compositions(0), vec![Composition::empty()]);
    }

    #[test]
    fn single_cell_stats() {
        let s = part(&[1]).cell_stats((1, 1)).unwrap();
        assert_eq!(s, CellStats { arm: 0, leg: 0, coarm: 0, coleg: 0 });
    }

    #[test]
    fn square_corner_stats() {
        let s = part(&[2, 2]).cell_stats((1, 1)).unwrap();
        assert_eq!((s.arm, s.leg, s.coarm, s.coleg), (1, 1, 0, 0));
        assert!(part(&[2, 2]).cell_stats((3, 1)).is_err());
    }

    #[test]
    fn stats_partition_the_hook_counts() {
        for mu in partitions(6) {
            let mut cells = 0;
            for c in mu.cells() {
                let s = mu.cell_stats(c).unwrap();
                assert_eq!(s.arm + s.coarm + 1, mu.part(c.0 as usize - 1));
                assert_eq!(s.leg + s.coleg + 1, mu.conjugate().part(c.1 as usize - 1));
                cells += 1;
            }
            assert_eq!(cells, mu.size());
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(part(&[2]).z(), BigInt::from(2));
        assert_eq!(part(&[1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(part(&[2, 2, 1]).z(), BigInt::from(8));
    }

    #[test]
    fn conjugate_and_dominance() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert!(part(&[3, 1]).dominates(&part(&[2, 2])));
        assert!(!part(&[2, 2]).dominates(&part(&[3, 1])));
        assert!(!part(&[3, 1, 1, 1]).dominates(&part(&[2, 2, 2])));
        assert_eq!(part(&[2, 2, 1]).n_stat(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
        let p: std::result::Result<Partition, _> = serde_json::from_str("[1,3]");
        assert!(p.is_err());
    }
}
