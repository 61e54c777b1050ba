use std::collections::BTreeSet;

use crate::coeffring::{ExactCtx, QtRat};
use crate::error::{Error, Result};
use crate::macdonald::{Engine, EngineConfig};
use crate::symfunc::{omegabar, Composition, Partition, SymFunc};

use super::ast::{Atom, Chain, Expr, LitName, Loc, OpName, SfLit, Sign};
use super::error::{ParseError, ParseErrorKind};
use super::typeck::{check, Ty};

fn at(loc: Loc, e: Error) -> Error {
    match e {
        e @ (Error::Located { .. } | Error::Parse(_)) => e,
        e => Error::Located { line: loc.line, column: loc.column, source: Box::new(e) },
    }
}

/// Exact evaluator for operator expressions.
pub struct Evaluator {
    eng: Engine<ExactCtx>,
}

impl Evaluator {
    pub fn new(cfg: &EngineConfig) -> Self {
        Evaluator { eng: Engine::new(ExactCtx, cfg) }
    }

    pub fn with_engine(eng: Engine<ExactCtx>) -> Self {
        Evaluator { eng }
    }

    pub fn engine(&self) -> &Engine<ExactCtx> {
        &self.eng
    }

    /// Value of a function-valued expression.
    pub fn eval(&self, e: &Expr) -> Result<SymFunc<QtRat>> {
        let degrees: BTreeSet<usize> = match check(e)? {
            Ty::Func(d) => d,
            Ty::Op(_) => {
                return Err(Error::Parse(ParseError {
                    kind: ParseErrorKind::Type,
                    line: e.loc.line,
                    column: e.loc.column,
                    message: "expression is an operator; apply it to a symmetric function".into(),
                    expected: Vec::new(),
                }))
            }
        };
        if let Some(&d) = degrees.last() {
            self.eng.bases().check_degree(d).map_err(|err| at(e.loc, err))?;
        }
        self.value(e)
    }

    fn value(&self, e: &Expr) -> Result<SymFunc<QtRat>> {
        let mut out = SymFunc::zero();
        for (s, c) in e.chains() {
            let v = self.chain_value(c)?;
            out = if s == Sign::Plus { out.add(&v) } else { out.sub(&v) };
        }
        Ok(out)
    }

    fn chain_value(&self, c: &Chain) -> Result<SymFunc<QtRat>> {
        let (last, ops) = c.atoms.split_last().expect("chains are nonempty");
        let f = self.atom_value(last)?;
        self.apply_atoms(ops, f)
    }

    fn apply_atoms(&self, ops: &[Atom], mut f: SymFunc<QtRat>) -> Result<SymFunc<QtRat>> {
        for a in ops.iter().rev() {
            f = self.apply_atom(a, &f)?;
        }
        Ok(f)
    }

    fn atom_value(&self, a: &Atom) -> Result<SymFunc<QtRat>> {
        match a {
            Atom::Lit(l) => self.literal(l).map_err(|err| at(l.loc, err)),
            Atom::Scaled { scalar, atom, .. } => Ok(self.atom_value(atom)?.scale(scalar)),
            Atom::Paren { expr, .. } => self.value(expr),
            Atom::Op { loc, .. } => Err(at(*loc, Error::internal("operator in value position"))),
        }
    }

    fn apply_atom(&self, a: &Atom, f: &SymFunc<QtRat>) -> Result<SymFunc<QtRat>> {
        match a {
            Atom::Op { name, arg, loc } => {
                let arg = arg.as_ref().map(|x| self.value(x)).transpose()?;
                self.builtin(*name, arg.as_ref(), f).map_err(|err| at(*loc, err))
            }
            Atom::Scaled { scalar, atom, .. } => Ok(self.apply_atom(atom, f)?.scale(scalar)),
            Atom::Paren { expr, .. } => {
                let mut out = SymFunc::zero();
                for (s, c) in expr.chains() {
                    let v = self.apply_atoms(&c.atoms, f.clone())?;
                    out = if s == Sign::Plus { out.add(&v) } else { out.sub(&v) };
                }
                Ok(out)
            }
            Atom::Lit(l) => Err(at(l.loc, Error::internal("function in operator position"))),
        }
    }

    fn builtin(&self, name: OpName, arg: Option<&SymFunc<QtRat>>, f: &SymFunc<QtRat>) -> Result<SymFunc<QtRat>> {
        let arg = || arg.ok_or_else(|| Error::internal(format!("{} without its index", name.as_str())));
        let eng = &self.eng;
        match name {
            OpName::Nabla => eng.nabla(f, false),
            OpName::NablaInv => eng.nabla(f, true),
            OpName::Delta => eng.delta_op(arg()?, f, false),
            OpName::DeltaPrime => eng.delta_op(arg()?, f, true),
            OpName::Theta => eng.theta_op(arg()?, f),
            OpName::Pi => eng.bold_pi(f, false),
            OpName::PiInv => eng.bold_pi(f, true),
            OpName::Omega => Ok(f.omega()),
            OpName::OmegaBar => Ok(omegabar(f)),
            OpName::Perp => Ok(SymFunc::perp(arg()?, f)),
        }
    }

    fn literal(&self, l: &SfLit) -> Result<SymFunc<QtRat>> {
        let a = &l.args;
        let eng = &self.eng;
        let partition = || Partition::new(a.clone());
        match l.name {
            LitName::E => eng.e(a[0] as usize),
            LitName::H => eng.h(a[0] as usize),
            LitName::P => {
                let rho = partition()?;
                eng.bases().check_degree(rho.size())?;
                Ok(SymFunc::p(rho))
            }
            LitName::S => eng.s(&partition()?),
            LitName::M => SymFunc::m(eng.bases(), &partition()?),
            LitName::C => eng.c_alpha(&Composition::new(a.clone())?),
            LitName::Enk => eng.e_nk(a[0] as usize, a[1] as usize),
            LitName::Htilde => eng.htilde(&partition()?),
        }
    }
}
