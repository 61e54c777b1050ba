//! Operator-expression language.
//!
//! ```text
//! expr  := chain (('+' | '-') chain)*
//! chain := atom ('.' atom)*
//! atom  := opName '(' expr ')' | opName | sfLit | scalar '*' atom | '(' expr ')'
//! sfLit := name '[' intList ']'
//! scalar := INT | 'q' | 't' | '{' rational expression in q, t '}'
//! ```
//!
//! Composition applies right to left, so `Theta(e[1]) . nabla . C[2,1]`
//! applies `nabla` first.

mod ast;
mod error;
mod eval;
mod parser;
mod print;
mod typeck;

pub use ast::{Atom, Chain, Expr, LitName, Loc, OpName, SfLit, Sign};
pub use error::{ParseError, ParseErrorKind};
pub use eval::Evaluator;
pub use parser::parse_untyped;
pub use print::scalar_text;
pub use typeck::{check, literal_degree, Ty};

/// Parses and type checks an expression.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let e = parse_untyped(input)?;
    check(&e)?;
    Ok(e)
}
