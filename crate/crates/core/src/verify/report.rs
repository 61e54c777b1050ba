//! Check reports and the coefficient maps they compare.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::coeffring::{Mode, Scalar};
use crate::symfunc::{SymFunc, SymPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The first coefficient, in key order, on which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub key: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Map<String, Value>,
    pub status: Status,
    /// Full coefficient map on failure, `sha256:<hex>` of it on success.
    pub lhs: Value,
    pub rhs: Value,
    pub witness: Option<Witness>,
    /// Error text when the check could not be evaluated.
    pub message: Option<String>,
    pub mode: Mode,
    /// Seeds of the evaluation points used, including the evaluated
    /// pre-pass of an exact run.
    pub seeds: Vec<u64>,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Coefficients keyed by a printable position, zeros omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Terms(pub BTreeMap<String, String>);

impl Terms {
    pub fn scalar<S: Scalar>(&mut self, key: String, c: &S) {
        if !c.is_zero() {
            self.0.insert(key, c.canonical());
        }
    }

    pub fn sym<S: Scalar>(&mut self, prefix: &str, f: &SymFunc<S>) {
        for (rho, c) in f.terms() {
            self.scalar(format!("{prefix}p{rho}"), c);
        }
    }

    pub fn vk<S: Scalar>(&mut self, prefix: &str, f: &SymPoly<S>) {
        for (e, sf) in f.terms() {
            let ys: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            self.sym(&format!("{prefix}y[{}] ", ys.join(",")), sf);
        }
    }

    fn to_value(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
    }

    fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_string(&self.to_value()).expect("maps serialize").as_bytes());
        format!("sha256:{}", hex::encode(h.finalize()))
    }
}

/// Two coefficient maps that a check asserts are equal.
#[derive(Clone, Debug, Default)]
pub struct Sides {
    pub lhs: Terms,
    pub rhs: Terms,
}

impl Sides {
    pub fn sym<S: Scalar>(&mut self, label: &str, l: &SymFunc<S>, r: &SymFunc<S>) {
        self.lhs.sym(&format!("{label} "), l);
        self.rhs.sym(&format!("{label} "), r);
    }

    pub fn vk<S: Scalar>(&mut self, label: &str, l: &SymPoly<S>, r: &SymPoly<S>) {
        self.lhs.vk(&format!("{label} "), l);
        self.rhs.vk(&format!("{label} "), r);
    }

    pub fn witness(&self) -> Option<Witness> {
        let keys = self.lhs.0.keys().chain(self.rhs.0.keys());
        let mut keys: Vec<&String> = keys.collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let l = self.lhs.0.get(k);
            let r = self.rhs.0.get(k);
            (l != r).then(|| Witness {
                key: k.clone(),
                lhs: l.cloned().unwrap_or_else(|| "0".into()),
                rhs: r.cloned().unwrap_or_else(|| "0".into()),
            })
        })
    }

    /// `(lhs, rhs)` report forms: hashes when equal, full maps otherwise.
    pub fn report_forms(&self, equal: bool) -> (Value, Value) {
        if equal {
            (Value::String(self.lhs.hash()), Value::String(self.rhs.hash()))
        } else {
            (self.lhs.to_value(), self.rhs.to_value())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::QtRat;
    use crate::symfunc::Partition;

    #[test]
    fn witness_is_first_differing_key() {
        let p = |v: &[u32]| SymFunc::<QtRat>::p(Partition::new(v.to_vec()).unwrap());
        let mut s = Sides::default();
        s.sym("f", &p(&[2]).add(&p(&[1, 1])), &p(&[2]));
        let w = s.witness().unwrap();
        assert_eq!(w, Witness { key: "f p(1,1)".into(), lhs: "1*q^0*t^0".into(), rhs: "0".into() });
        let mut same = Sides::default();
        same.sym("f", &p(&[2]), &p(&[2]));
        assert!(same.witness().is_none());
        let (l, r) = same.report_forms(true);
        assert_eq!(l, r);
        assert!(l.as_str().unwrap().starts_with("sha256:"));
    }
}
