//! JSON and LaTeX forms of symmetric functions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::basis::{Basis, BasisCache};
use super::partition::Partition;
use super::plethysm::SymPoly;
use super::sym::SymFunc;
use crate::coeffring::Scalar;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct TermJson<S> {
    lambda: Partition,
    coeff: S,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct SymFuncJson<S> {
    basis: Basis,
    terms: Vec<TermJson<S>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct YTermJson<S> {
    yexp: Vec<u32>,
    sf: SymFuncJson<S>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct SymPolyJson<S> {
    k: usize,
    terms: Vec<YTermJson<S>>,
}

fn encode<S: Scalar>(basis: Basis, terms: BTreeMap<Partition, S>) -> SymFuncJson<S> {
    SymFuncJson { basis, terms: terms.into_iter().map(|(lambda, coeff)| TermJson { lambda, coeff }).collect() }
}

impl<S: Scalar> SymFunc<S> {
    /// JSON in the power-sum basis.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(encode(Basis::P, self.clone().into_terms())).expect("serializable")
    }

    pub fn to_json_in(&self, bases: &BasisCache, basis: Basis) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(encode(basis, self.to_basis(bases, basis)?))?)
    }

    /// Reads the JSON form in any basis; non-power-sum bases need `bases`.
    pub fn from_json(bases: &BasisCache, v: &serde_json::Value) -> Result<Self> {
        let j: SymFuncJson<S> = serde_json::from_value(v.clone())?;
        Self::decode(Some(bases), j)
    }

    /// Reads the power-sum JSON form.
    pub fn from_p_json(v: &serde_json::Value) -> Result<Self> {
        let j: SymFuncJson<S> = serde_json::from_value(v.clone())?;
        Self::decode(None, j)
    }

    fn decode(bases: Option<&BasisCache>, j: SymFuncJson<S>) -> Result<Self> {
        let terms: Vec<(Partition, S)> = j.terms.into_iter().map(|t| (t.lambda, t.coeff)).collect();
        if j.basis == Basis::P {
            return Ok(Self::from_p_terms(terms));
        }
        let bases = bases.ok_or_else(|| Error::domain(format!("expected power-sum JSON, got basis {}", j.basis)))?;
        Self::from_basis(bases, j.basis, terms.iter().map(|(l, c)| (l, c)))
    }

    /// LaTeX of the expansion in `basis`, e.g. `s_{2,1} + (q) s_{1,1,1}`.
    pub fn to_latex(&self, bases: &BasisCache, basis: Basis) -> Result<String> {
        let terms = self.to_basis(bases, basis)?;
        if terms.is_empty() {
            return Ok("0".into());
        }
        let parts: Vec<String> = terms
            .iter()
            .rev()
            .map(|(lambda, c)| {
                let idx: Vec<String> = lambda.parts().iter().map(u32::to_string).collect();
                let sym = if lambda.is_empty() {
                    "1".to_string()
                } else {
                    format!("{}_{{{}}}", basis.letter(), idx.join(","))
                };
                if c.is_one() {
                    sym
                } else {
                    format!("\\left({}\\right) {}", c.latex(), sym)
                }
            })
            .collect();
        Ok(parts.join(" + "))
    }
}

impl<S: Scalar> SymPoly<S> {
    pub fn to_json(&self) -> serde_json::Value {
        let j = SymPolyJson {
            k: self.k(),
            terms: self
                .terms()
                .map(|(e, f)| YTermJson { yexp: e.clone(), sf: encode(Basis::P, f.clone().into_terms()) })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: SymPolyJson<S> = serde_json::from_value(v.clone())?;
        let mut out = SymPoly::zero(j.k);
        for t in j.terms {
            if t.yexp.len() != j.k {
                return Err(Error::domain("y-exponent vector length does not match k"));
            }
            out.add_term(t.yexp, SymFunc::decode(None, t.sf)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::QtRat;

    type F = SymFunc<QtRat>;

    #[test]
    fn json_round_trip_in_every_basis() {
        let b = BasisCache::new(4);
        let f = F::s(&b, &Partition::new(vec![2, 1]).unwrap())
            .unwrap()
            .scale(&(QtRat::q() / (QtRat::one() - QtRat::t())))
            .add(&F::e(&b, 4).unwrap());
        for basis in Basis::ALL {
            let j = f.to_json_in(&b, basis).unwrap();
            assert_eq!(j["basis"], basis.letter());
            assert_eq!(F::from_json(&b, &j).unwrap(), f);
        }
        assert_eq!(F::from_p_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn json_shape() {
        let f = F::p_term(Partition::row(2), QtRat::q());
        let j = f.to_json();
        assert_eq!(j.to_string(), r#"{"basis":"p","terms":[{"coeff":{"den":[[0,0,"1"]],"num":[[1,0,"1"]]},"lambda":[2]}]}"#);
    }

    #[test]
    fn sympoly_round_trip() {
        let mut v = SymPoly::<QtRat>::zero(2);
        v.add_term(vec![1, 0], F::p(Partition::row(1)));
        v.add_term(vec![0, 2], F::constant(QtRat::t()));
        let j = v.to_json();
        assert_eq!(j["k"], 2);
        assert_eq!(SymPoly::from_json(&j).unwrap(), v);
    }

    #[test]
    fn latex_schur() {
        let b = BasisCache::new(2);
        let f = F::s(&b, &Partition::row(2)).unwrap().add(&F::s(&b, &Partition::new(vec![1, 1]).unwrap()).unwrap().scale(&QtRat::q()));
        assert_eq!(f.to_latex(&b, Basis::S).unwrap(), "s_{2} + \\left(q\\right) s_{1,1}");
    }
}
