use proptest::prelude::*;
use thetadelta::coeffring::QtRat;
use thetadelta::dsl::{
    parse, parse_untyped, Atom, Chain, Evaluator, Expr, LitName, Loc, OpName, ParseErrorKind, SfLit, Sign,
};
use thetadelta::macdonald::EngineConfig;
use thetadelta::symfunc::{Partition, SymFunc};
use thetadelta::Error;

const CORPUS: &str = include_str!("data/expressions.txt");

fn evaluator() -> Evaluator {
    Evaluator::new(&EngineConfig { max_degree: 6, cache_dir: None })
}

#[test]
fn corpus_round_trips() {
    let lines: Vec<&str> = CORPUS.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 100);
    for line in lines {
        let ast = parse(line).unwrap_or_else(|e| panic!("{line}: {e}"));
        let printed = ast.to_string();
        let again = parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(ast, again, "{line}");
        assert_eq!(printed, again.to_string());
    }
}

#[test]
fn documented_parses() {
    let e = parse("Theta(e[1]) . nabla . C[2,1]").unwrap();
    assert!(e.rest.is_empty());
    assert_eq!(e.first.atoms.len(), 3);
    assert!(matches!(&e.first.atoms[0], Atom::Op { name: OpName::Theta, arg: Some(_), .. }));
    assert!(matches!(&e.first.atoms[1], Atom::Op { name: OpName::Nabla, arg: None, .. }));
    assert!(matches!(&e.first.atoms[2], Atom::Lit(SfLit { name: LitName::C, args, .. }) if args == &[2, 1]));

    let e = parse("DeltaPrime(e[2]) . e[4]").unwrap();
    assert_eq!(e.first.atoms.len(), 2);
    assert_eq!(e.to_string(), "DeltaPrime(e[2]) . e[4]");
}

#[test]
fn syntax_errors_are_located() {
    let err = parse("nabla . (").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Syntax);
    assert_eq!((err.line, err.column), (1, 10));
    assert!(err.expected.iter().any(|t| t == "'('"));

    let err = parse("nabla .\n  e[1] +").unwrap_err();
    assert_eq!((err.line, err.column), (2, 9));
    let err = parse("foo . e[1]").unwrap_err();
    assert_eq!((err.kind, err.column), (ParseErrorKind::Syntax, 1));
    let err = parse("e[1] e[2]").unwrap_err();
    assert_eq!(err.column, 6);
    assert!(err.expected.contains(&"end of input".to_string()));
    assert!(parse("s[1,2]").is_err());
}

#[test]
fn type_errors_are_located() {
    let err = parse("Theta(e[1] + e[2]) . e[1]").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Type);
    assert_eq!(err.column, 7);
    assert!(err.message.contains("homogeneous"));

    let err = parse("e[1] . nabla . e[2]").unwrap_err();
    assert_eq!((err.kind, err.column), (ParseErrorKind::Type, 1));
    let err = parse("nabla . e[2] + Pi").unwrap_err();
    assert_eq!((err.kind, err.column), (ParseErrorKind::Type, 16));
    assert!(parse("E[2,3]").is_err());
    // operator-valued expressions parse but do not evaluate
    let op = parse("nabla + Pi").unwrap();
    assert!(matches!(evaluator().eval(&op), Err(Error::Parse(_))));
}

#[test]
fn documented_values() {
    let ev = evaluator();
    let eng = ev.engine();
    let s1 = eng.s(&Partition::new(vec![1]).unwrap()).unwrap();
    assert_eq!(ev.eval(&parse("Theta(e[0]) . nabla . e[1]").unwrap()).unwrap(), s1.neg());
    assert_eq!(ev.eval(&parse("DeltaPrime(e[0]) . e[3]").unwrap()).unwrap(), eng.e(3).unwrap());
    let h3 = eng.h(3).unwrap().scale(&QtRat::laurent_monomial(-2, 0));
    assert_eq!(ev.eval(&parse("C[3]").unwrap()).unwrap(), h3);
}

#[test]
fn operators_and_scalars_compose() {
    let ev = evaluator();
    let eng = ev.engine();
    let val = |s: &str| ev.eval(&parse(s).unwrap()).unwrap();
    let e3 = eng.e(3).unwrap();
    assert_eq!(val("nabla_inv . nabla . e[3]"), e3);
    assert_eq!(val("Pi_inv . Pi . e[3]"), e3);
    assert_eq!(val("omega . e[3]"), eng.h(3).unwrap());
    assert_eq!(val("(nabla + 2*Pi) . e[2]"), val("nabla . e[2] + 2*Pi . e[2]"));
    let half = QtRat::from_int(1).checked_div(&QtRat::from_int(2)).unwrap();
    assert_eq!(val("{1/2 + q - q}*e[2]"), eng.e(2).unwrap().scale(&half));
    // Delta_{e_k} = Delta'_{e_k} + Delta'_{e_{k-1}}
    assert_eq!(val("Delta(e[2]) . s[2,1]"), val("DeltaPrime(e[2]) . s[2,1] + DeltaPrime(e[1]) . s[2,1]"));
    assert_eq!(val("perp(p[1]) . p[2,1]"), SymFunc::p(Partition::new(vec![2]).unwrap()));
}

#[test]
fn degree_bound_errors_carry_locations() {
    let ev = evaluator();
    let err = ev.eval(&parse("nabla . Theta(e[4]) . e[3]").unwrap()).unwrap_err();
    assert!(matches!(err.root(), Error::DegreeBound { .. }), "{err}");
    assert!(matches!(err, Error::Located { line: 1, column: 1, .. }), "{err}");
}

fn lit() -> impl Strategy<Value = Atom> {
    let part = (1u32..4, 0u32..3).prop_map(|(a, b)| if b == 0 { vec![a] } else { vec![a.max(b), a.min(b)] });
    prop_oneof![
        (1u32..5).prop_map(|n| (LitName::E, vec![n])),
        (0u32..5).prop_map(|n| (LitName::H, vec![n])),
        part.clone().prop_map(|p| (LitName::S, p)),
        part.clone().prop_map(|p| (LitName::P, p)),
        part.clone().prop_map(|p| (LitName::Htilde, p)),
        prop::collection::vec(1u32..3, 1..3).prop_map(|c| (LitName::C, c)),
        (1u32..4).prop_flat_map(|n| (Just(n), 1..=n)).prop_map(|(n, k)| (LitName::Enk, vec![n, k])),
    ]
    .prop_map(|(name, args)| Atom::Lit(SfLit { name, args, loc: Loc::default() }))
}

fn scalar() -> impl Strategy<Value = QtRat> {
    (-3i64..4, 0i64..3, -2i64..3, 0u32..3).prop_map(|(c, i, j, d)| {
        let num = QtRat::laurent_monomial(i, j).scale_int(c);
        num.checked_div(&(QtRat::one() + QtRat::q().pow(d as i64).unwrap())).unwrap()
    })
}

fn single(atoms: Vec<Atom>) -> Expr {
    Expr { first: Chain { atoms, loc: Loc::default() }, rest: vec![], loc: Loc::default() }
}

fn operator() -> impl Strategy<Value = Atom> {
    let simple = prop_oneof![
        Just(OpName::Nabla),
        Just(OpName::NablaInv),
        Just(OpName::Pi),
        Just(OpName::PiInv),
        Just(OpName::Omega),
        Just(OpName::OmegaBar)
    ]
    .prop_map(|name| Atom::Op { name, arg: None, loc: Loc::default() });
    let indexed = (
        prop_oneof![Just(OpName::Delta), Just(OpName::DeltaPrime), Just(OpName::Theta), Just(OpName::Perp)],
        lit(),
    )
        .prop_map(|(name, a)| Atom::Op { name, arg: Some(Box::new(single(vec![a]))), loc: Loc::default() });
    let base = prop_oneof![simple, indexed];
    (base, prop::option::of(scalar())).prop_map(|(a, s)| match s {
        Some(scalar) => Atom::Scaled { scalar, atom: Box::new(a), loc: Loc::default() },
        None => a,
    })
}

fn chain() -> impl Strategy<Value = Chain> {
    (prop::collection::vec(operator(), 0..3), lit()).prop_map(|(mut ops, l)| {
        ops.push(l);
        Chain { atoms: ops, loc: Loc::default() }
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = (chain(), prop::collection::vec((any::<bool>(), chain()), 0..3)).prop_map(|(first, rest)| Expr {
        first,
        rest: rest.into_iter().map(|(p, c)| (if p { Sign::Plus } else { Sign::Minus }, c)).collect(),
        loc: Loc::default(),
    });
    leaf.prop_recursive(2, 12, 3, |inner| {
        (prop::collection::vec(operator(), 1..3), inner).prop_map(|(mut ops, e)| {
            ops.push(Atom::Paren { expr: Box::new(e), loc: Loc::default() });
            single(ops)
        })
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(e in expr()) {
        let text = e.to_string();
        let back = parse_untyped(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e);
    }
}
