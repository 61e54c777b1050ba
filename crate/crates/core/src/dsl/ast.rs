use std::fmt;

use crate::coeffring::QtRat;

/// 1-based source position. Positions do not take part in equality, so a
/// reparsed expression compares equal to the original.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Loc {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpName {
    Nabla,
    NablaInv,
    Delta,
    DeltaPrime,
    Theta,
    Pi,
    PiInv,
    Omega,
    OmegaBar,
    Perp,
}

impl OpName {
    pub const ALL: [OpName; 10] = [
        OpName::Nabla,
        OpName::NablaInv,
        OpName::Delta,
        OpName::DeltaPrime,
        OpName::Theta,
        OpName::Pi,
        OpName::PiInv,
        OpName::Omega,
        OpName::OmegaBar,
        OpName::Perp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OpName::Nabla => "nabla",
            OpName::NablaInv => "nabla_inv",
            OpName::Delta => "Delta",
            OpName::DeltaPrime => "DeltaPrime",
            OpName::Theta => "Theta",
            OpName::Pi => "Pi",
            OpName::PiInv => "Pi_inv",
            OpName::Omega => "omega",
            OpName::OmegaBar => "omegabar",
            OpName::Perp => "perp",
        }
    }

    /// Whether the operator is indexed by a symmetric function argument.
    pub fn takes_arg(self) -> bool {
        matches!(self, OpName::Delta | OpName::DeltaPrime | OpName::Theta | OpName::Perp)
    }

    pub fn from_name(s: &str) -> Option<Self> {
        OpName::ALL.into_iter().find(|o| o.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LitName {
    E,
    H,
    P,
    S,
    M,
    C,
    Enk,
    Htilde,
}

impl LitName {
    pub const ALL: [LitName; 8] =
        [LitName::E, LitName::H, LitName::P, LitName::S, LitName::M, LitName::C, LitName::Enk, LitName::Htilde];

    pub fn as_str(self) -> &'static str {
        match self {
            LitName::E => "e",
            LitName::H => "h",
            LitName::P => "p",
            LitName::S => "s",
            LitName::M => "m",
            LitName::C => "C",
            LitName::Enk => "E",
            LitName::Htilde => "Htilde",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        LitName::ALL.into_iter().find(|l| l.as_str() == s)
    }
}

/// `name[i, j, ...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfLit {
    pub name: LitName,
    pub args: Vec<u32>,
    pub loc: Loc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `chain (('+' | '-') chain)*`.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub first: Chain,
    pub rest: Vec<(Sign, Chain)>,
    pub loc: Loc,
}

/// `atom ('.' atom)*`, applied right to left.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub atoms: Vec<Atom>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    Op { name: OpName, arg: Option<Box<Expr>>, loc: Loc },
    Lit(SfLit),
    Scaled { scalar: QtRat, atom: Box<Atom>, loc: Loc },
    Paren { expr: Box<Expr>, loc: Loc },
}

impl Atom {
    pub fn loc(&self) -> Loc {
        match self {
            Atom::Op { loc, .. } | Atom::Scaled { loc, .. } | Atom::Paren { loc, .. } => *loc,
            Atom::Lit(l) => l.loc,
        }
    }
}

impl Expr {
    pub fn chains(&self) -> impl Iterator<Item = (Sign, &Chain)> {
        std::iter::once((Sign::Plus, &self.first)).chain(self.rest.iter().map(|(s, c)| (*s, c)))
    }
}
