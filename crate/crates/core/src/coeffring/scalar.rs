//! Coefficient rings the symmetric-function machinery is generic over.
//!
//! A [`Scalar`] is a field element that knows nothing about `q` and `t`; a
//! [`ScalarCtx`] supplies the embedding of exact `Q(q, t)` constants into it.
//! Exact mode uses [`QtRat`] with the trivial embedding; evaluated mode uses
//! [`Fp`] with `q`, `t` specialized to random residues.

use std::fmt;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::modp::Fp;
use super::poly::QtPoly;
use super::rat::QtRat;
use crate::error::{Error, Result};

pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Serialize + DeserializeOwned + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn from_int(v: i64) -> Self;
    fn from_ratio(r: &BigRational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn scale_int(&self, c: i64) -> Self {
        self.mul(&Self::from_int(c))
    }

    /// Deterministic text form used for hashing and reports.
    fn canonical(&self) -> String {
        self.to_string()
    }

    fn latex(&self) -> String {
        self.to_string()
    }
}

impl Scalar for QtRat {
    fn zero() -> Self {
        QtRat::zero()
    }
    fn one() -> Self {
        QtRat::one()
    }
    fn is_zero(&self) -> bool {
        QtRat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        QtRat::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        QtRat::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        QtRat::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        QtRat::mul(self, other)
    }
    fn neg(&self) -> Self {
        QtRat::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        QtRat::inv(self)
    }
    fn from_int(v: i64) -> Self {
        QtRat::from_int(v)
    }
    fn from_ratio(r: &BigRational) -> Self {
        QtRat::from_ratio(r)
    }
    fn canonical(&self) -> String {
        self.to_canonical_string()
    }
    fn latex(&self) -> String {
        self.to_latex()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Evaluated,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Evaluated => "evaluated",
        })
    }
}

/// Embedding of exact `Q(q, t)` constants into a coefficient ring.
pub trait ScalarCtx: Clone + fmt::Debug + Send + Sync + 'static {
    type S: Scalar;

    fn mode(&self) -> Mode;

    fn embed_poly(&self, p: &QtPoly) -> Self::S;

    /// Fails with [`Error::Pole`] when the denominator vanishes.
    fn embed(&self, x: &QtRat) -> Result<Self::S> {
        let den = self.embed_poly(x.denom());
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.embed_poly(x.numer()).mul(&den.inv()?))
    }

    /// The same ring with `q -> 1/q`, `t -> 1/t` applied to every embedded
    /// constant.
    fn inverted(&self) -> Self
    where
        Self: Sized;

    /// Maps a value computed in `self.inverted()` back: `q`, `t` inverted on
    /// the value. Only meaningful when `self.inverted()` is the companion
    /// context the value was computed in.
    fn invert_value(&self, v: &Self::S) -> Self::S;

    fn q(&self) -> Self::S {
        self.embed_poly(&QtPoly::q())
    }

    fn t(&self) -> Self::S {
        self.embed_poly(&QtPoly::t())
    }

    fn int(&self, c: i64) -> Self::S {
        Self::S::from_int(c)
    }

    /// Whether `v` has no pole at `q = 1` after division by `q - 1`, i.e.
    /// whether `v` vanishes at `q = 1`. Evaluated rings cannot tell and
    /// answer `true`.
    fn vanishes_at_q_one(&self, _v: &Self::S) -> bool {
        true
    }

    fn describe(&self) -> String;
}

/// Exact coefficients in `Q(q, t)`.
#[derive(Copy, Clone, Debug, Default)]
pub struct ExactCtx;

impl ScalarCtx for ExactCtx {
    type S = QtRat;

    fn mode(&self) -> Mode {
        Mode::Exact
    }

    fn embed_poly(&self, p: &QtPoly) -> QtRat {
        p.clone().into()
    }

    fn embed(&self, x: &QtRat) -> Result<QtRat> {
        Ok(x.clone())
    }

    fn inverted(&self) -> Self {
        ExactCtx
    }

    fn invert_value(&self, v: &QtRat) -> QtRat {
        v.invert_vars()
    }

    fn vanishes_at_q_one(&self, v: &QtRat) -> bool {
        v.numer().at_q_one().is_zero()
    }

    fn describe(&self) -> String {
        "exact".into()
    }
}

/// `q`, `t` specialized to residues modulo the prime [`Fp::MODULUS`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ModCtx {
    pub q: Fp,
    pub t: Fp,
}

impl ModCtx {
    pub fn new(q: Fp, t: Fp) -> Self {
        ModCtx { q, t }
    }

    /// Point drawn from a seeded generator; `q`, `t` avoid 0 and 1.
    pub fn from_seed(seed: u64) -> Self {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || Fp::new(rng.gen_range(2..Fp::MODULUS - 1));
        let q = draw();
        let t = draw();
        ModCtx { q, t }
    }
}

impl ScalarCtx for ModCtx {
    type S = Fp;

    fn mode(&self) -> Mode {
        Mode::Evaluated
    }

    fn embed_poly(&self, p: &QtPoly) -> Fp {
        let mut total = Fp::zero();
        for (m, c) in p.terms() {
            total = total.add(&Fp::from_bigint(c).mul(&self.q.pow(m.q)).mul(&self.t.pow(m.t)));
        }
        total
    }

    fn inverted(&self) -> Self {
        ModCtx { q: self.q.inv().expect("q is nonzero"), t: self.t.inv().expect("t is nonzero") }
    }

    fn invert_value(&self, v: &Fp) -> Fp {
        *v
    }

    fn describe(&self) -> String {
        format!("q={} t={} mod {}", self.q, self.t, Fp::MODULUS)
    }
}
