//! Cell sums and products attached to a partition.

use serde::Serialize;

use crate::coeffring::QtRat;
use crate::error::{Error, Result};
use crate::symfunc::Partition;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MacConstants {
    pub mu: Partition,
    /// `B_mu = sum over cells of q^coarm t^coleg`.
    pub b: QtRat,
    /// `T_mu = product over cells of q^coarm t^coleg`.
    pub t: QtRat,
    /// `Pi_mu = product over cells other than (1,1) of (1 - q^coarm t^coleg)`;
    /// absent for the empty partition.
    pub pi: Option<QtRat>,
    pub nstat: u64,
}

pub fn mac_constants(mu: &Partition) -> MacConstants {
    let mut b = QtRat::zero();
    let mut pi = QtRat::one();
    let (mut sq, mut st) = (0u32, 0u32);
    for (r, c) in mu.cells() {
        let (a, l) = (c - 1, r - 1);
        let w = QtRat::monomial(1, a, l);
        b = b.add(&w);
        sq += a;
        st += l;
        if (r, c) != (1, 1) {
            pi = pi.mul(&QtRat::one().sub(&w));
        }
    }
    MacConstants {
        mu: mu.clone(),
        b,
        t: QtRat::monomial(1, sq, st),
        pi: if mu.is_empty() { None } else { Some(pi) },
        nstat: mu.n_stat(),
    }
}

pub fn b_mu(mu: &Partition) -> QtRat {
    mac_constants(mu).b
}

pub fn t_mu(mu: &Partition) -> QtRat {
    mac_constants(mu).t
}

pub fn pi_mu(mu: &Partition) -> Result<QtRat> {
    mac_constants(mu).pi.ok_or_else(|| Error::domain("Pi is not defined for the empty partition"))
}

/// `(a; q)_n`.
pub fn qpoch(a: &QtRat, n: u32) -> QtRat {
    (0..n).fold(QtRat::one(), |acc, i| acc.mul(&QtRat::one().sub(&a.mul(&QtRat::monomial(1, i, 0)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{eval_finite, partitions, BasisCache, SymFunc};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_shapes() {
        let one = mac_constants(&part(&[1]));
        assert_eq!((one.b, one.t, one.pi, one.nstat), (QtRat::one(), QtRat::one(), Some(QtRat::one()), 0));
        let two = mac_constants(&part(&[2]));
        assert_eq!(two.b, QtRat::one() + QtRat::q());
        assert_eq!(two.t, QtRat::q());
        assert_eq!(two.pi, Some(QtRat::one() - QtRat::q()));
        assert_eq!(mac_constants(&part(&[2, 2])).t, QtRat::monomial(1, 2, 2));
        assert!(pi_mu(&Partition::empty()).is_err());
        assert_eq!(b_mu(&Partition::empty()), QtRat::zero());
    }

    #[test]
    fn b_and_t_are_elementary_evaluations() {
        let bases = BasisCache::new(6);
        for n in 1..=6 {
            for mu in partitions(n) {
                let c = mac_constants(&mu);
                let e1: SymFunc<QtRat> = SymFunc::e(&bases, 1).unwrap();
                let en: SymFunc<QtRat> = SymFunc::e(&bases, n).unwrap();
                assert_eq!(eval_finite(&e1, &c.b), c.b);
                assert_eq!(eval_finite(&en, &c.b), c.t, "{mu}");
                assert_eq!(c.t, t_mu(&mu));
            }
        }
    }

    #[test]
    fn pochhammer_vanishing() {
        for j in 1..5i64 {
            let z = QtRat::laurent_monomial(-j, 0);
            for k in 0..7u32 {
                assert_eq!(qpoch(&z, k).is_zero(), k as i64 > j);
            }
        }
    }
}
