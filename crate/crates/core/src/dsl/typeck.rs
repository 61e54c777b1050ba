use std::collections::BTreeSet;
use std::fmt;

use super::ast::{Atom, Chain, Expr, LitName, Loc, OpName, SfLit};
use super::error::{ParseError, ParseErrorKind};

/// Type of a subexpression, with degree information.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ty {
    /// A symmetric function with components in these degrees; empty means
    /// zero.
    Func(BTreeSet<usize>),
    /// A linear operator shifting degrees by these amounts.
    Op(BTreeSet<i64>),
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Func(d) => write!(f, "symmetric function of degree {}", list(d)),
            Ty::Op(_) => f.write_str("operator"),
        }
    }
}

fn list<T: fmt::Display>(s: &BTreeSet<T>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn type_error(loc: Loc, message: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Type,
        line: loc.line,
        column: loc.column,
        message: message.into(),
        expected: Vec::new(),
    }
}

fn apply(shifts: &BTreeSet<i64>, degrees: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &s in shifts {
        for &d in degrees {
            if let Ok(v) = usize::try_from(d as i64 + s) {
                out.insert(v);
            }
        }
    }
    out
}

fn compose(outer: &BTreeSet<i64>, inner: &BTreeSet<i64>) -> BTreeSet<i64> {
    outer.iter().flat_map(|a| inner.iter().map(move |b| a + b)).collect()
}

/// Degree of a literal, after checking its indices.
pub fn literal_degree(l: &SfLit) -> Result<usize, ParseError> {
    let a = &l.args;
    let name = l.name.as_str();
    let total: usize = a.iter().map(|&x| x as usize).sum();
    match l.name {
        LitName::E | LitName::H => {
            if a.len() != 1 {
                return Err(type_error(l.loc, format!("{name}[n] takes one index, got {}", a.len())));
            }
        }
        LitName::P | LitName::S | LitName::M | LitName::Htilde => {
            if a.contains(&0) || a.windows(2).any(|w| w[0] < w[1]) {
                return Err(type_error(l.loc, format!("{name}[...] needs a partition (positive, weakly decreasing)")));
            }
        }
        LitName::C => {
            if a.contains(&0) {
                return Err(type_error(l.loc, "C[...] needs a composition (positive parts)"));
            }
        }
        LitName::Enk => {
            if a.len() != 2 || a[1] == 0 || a[1] > a[0] {
                return Err(type_error(l.loc, "E[n,k] needs two indices with 1 <= k <= n"));
            }
            return Ok(a[0] as usize);
        }
    }
    Ok(total)
}

fn check_atom(a: &Atom) -> Result<Ty, ParseError> {
    match a {
        Atom::Lit(l) => Ok(Ty::Func(BTreeSet::from([literal_degree(l)?]))),
        Atom::Scaled { atom, .. } => check_atom(atom),
        Atom::Paren { expr, .. } => check(expr),
        Atom::Op { name, arg, loc } => {
            let Some(arg) = arg else {
                return Ok(Ty::Op(BTreeSet::from([0])));
            };
            let degrees = match check(arg)? {
                Ty::Func(d) => d,
                Ty::Op(_) => {
                    return Err(type_error(arg.loc, format!("the index of {} must be a symmetric function", name.as_str())))
                }
            };
            Ok(Ty::Op(match name {
                OpName::Theta => {
                    if degrees.len() > 1 {
                        return Err(type_error(
                            arg.loc,
                            format!("Theta needs a homogeneous argument, got degrees {}", list(&degrees)),
                        ));
                    }
                    degrees.iter().map(|&d| d as i64).collect()
                }
                OpName::Perp => degrees.iter().map(|&d| -(d as i64)).collect(),
                OpName::Delta | OpName::DeltaPrime => BTreeSet::from([0]),
                _ => return Err(type_error(*loc, format!("{} takes no argument", name.as_str()))),
            }))
        }
    }
}

fn check_chain(c: &Chain) -> Result<Ty, ParseError> {
    let mut atoms = c.atoms.iter().rev();
    let mut acc = check_atom(atoms.next().expect("chains are nonempty"))?;
    for a in atoms {
        let shifts = match check_atom(a)? {
            Ty::Op(s) => s,
            Ty::Func(_) => {
                return Err(type_error(
                    a.loc(),
                    "a symmetric function can only stand at the right end of a composition",
                ))
            }
        };
        acc = match acc {
            Ty::Func(d) => Ty::Func(apply(&shifts, &d)),
            Ty::Op(s) => Ty::Op(compose(&shifts, &s)),
        };
    }
    Ok(acc)
}

/// Type of an expression; mixing operators and functions in a sum, a
/// function in operator position, or a non-homogeneous `Theta` index are
/// type errors.
pub fn check(e: &Expr) -> Result<Ty, ParseError> {
    let mut acc = check_chain(&e.first)?;
    for (_, c) in &e.rest {
        acc = match (acc, check_chain(c)?) {
            (Ty::Func(a), Ty::Func(b)) => Ty::Func(a.union(&b).copied().collect()),
            (Ty::Op(a), Ty::Op(b)) => Ty::Op(a.union(&b).copied().collect()),
            (a, b) => return Err(type_error(c.loc, format!("cannot add {} and {}", kind(&a), kind(&b)))),
        };
    }
    Ok(acc)
}

fn kind(t: &Ty) -> &'static str {
    match t {
        Ty::Func(_) => "a symmetric function",
        Ty::Op(_) => "an operator",
    }
}
