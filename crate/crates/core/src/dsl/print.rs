use std::fmt;

use num_traits::{One, Signed};

use crate::coeffring::{QtPoly, QtRat};

use super::ast::{Atom, Chain, Expr, SfLit, Sign};

fn poly_text(p: &QtPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        if c.is_negative() {
            out.push_str(if idx == 0 { "-" } else { " - " });
        } else if idx > 0 {
            out.push_str(" + ");
        }
        let mut factors = Vec::new();
        let abs = c.abs();
        if !abs.is_one() || (m.q == 0 && m.t == 0) {
            factors.push(abs.to_string());
        }
        for (v, e) in [("q", m.q), ("t", m.t)] {
            match e {
                0 => {}
                1 => factors.push(v.into()),
                e => factors.push(format!("{v}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Scalar as it appears before `*`: a bare integer, `q`, `t`, or a braced
/// rational expression.
pub fn scalar_text(c: &QtRat) -> String {
    if c.denom().is_one() {
        if let Some(n) = c.numer().as_constant().filter(|n| !n.is_negative()) {
            return n.to_string();
        }
    }
    if *c == QtRat::q() {
        return "q".into();
    }
    if *c == QtRat::t() {
        return "t".into();
    }
    if c.denom().is_one() {
        return format!("{{{}}}", poly_text(c.numer()));
    }
    format!("{{({})/({})}}", poly_text(c.numer()), poly_text(c.denom()))
}

impl fmt::Display for SfLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(f, "{}[{}]", self.name.as_str(), args.join(","))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Op { name, arg: None, .. } => f.write_str(name.as_str()),
            Atom::Op { name, arg: Some(a), .. } => write!(f, "{}({a})", name.as_str()),
            Atom::Lit(l) => write!(f, "{l}"),
            Atom::Scaled { scalar, atom, .. } => write!(f, "{}*{atom}", scalar_text(scalar)),
            Atom::Paren { expr, .. } => write!(f, "({expr})"),
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" . ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.first)?;
        for (s, c) in &self.rest {
            let op = if *s == Sign::Plus { "+" } else { "-" };
            write!(f, " {op} {c}")?;
        }
        Ok(())
    }
}
