use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use thetadelta::coeffring::{ExactCtx, QtPoly, QtRat};
use thetadelta::pathalg::{HeckeNormalization, PathAlgebra, VkElement, GAMMA};
use thetadelta::symfunc::{eval_finite, partitions, scale_alphabet, Basis, BasisCache, Partition, SymFunc, SymPoly};

const MAX_DEGREE: usize = 6;

fn bases() -> Arc<BasisCache> {
    static B: OnceLock<Arc<BasisCache>> = OnceLock::new();
    B.get_or_init(|| Arc::new(BasisCache::new(MAX_DEGREE))).clone()
}

fn algebra(h: HeckeNormalization) -> &'static PathAlgebra<ExactCtx> {
    static U: OnceLock<PathAlgebra<ExactCtx>> = OnceLock::new();
    static N: OnceLock<PathAlgebra<ExactCtx>> = OnceLock::new();
    let cell = match h {
        HeckeNormalization::Upsilon => &U,
        HeckeNormalization::Unital => &N,
    };
    cell.get_or_init(|| PathAlgebra::with_conventions(ExactCtx, bases(), GAMMA, h, None).unwrap())
}

fn poly() -> impl Strategy<Value = QtPoly> {
    prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4)
        .prop_map(|terms| QtPoly::from_terms(terms.into_iter().map(|(i, j, c)| (i, j, BigInt::from(c)))))
}

fn rat() -> impl Strategy<Value = QtRat> {
    (poly(), poly()).prop_map(|(n, d)| if d.is_zero() { QtRat::from(n) } else { QtRat::new(n, d).unwrap() })
}

fn nonzero_rat() -> impl Strategy<Value = QtRat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn small_int_rat() -> impl Strategy<Value = QtRat> {
    (-3i64..4, 0u32..2, 0u32..2).prop_map(|(c, i, j)| QtRat::monomial(c, i, j))
}

/// A random homogeneous function of degree `d` in the power-sum basis.
fn sym(d: usize) -> impl Strategy<Value = SymFunc<QtRat>> {
    let parts = partitions(d);
    let n = parts.len();
    prop::collection::vec(small_int_rat(), n).prop_map(move |cs| {
        SymFunc::from_p_terms(parts.iter().cloned().zip(cs).filter(|(_, c)| !c.is_zero()))
    })
}

fn point() -> impl Strategy<Value = (BigRational, BigRational)> {
    (2i64..9, 1i64..5, 2i64..9, 1i64..5).prop_map(|(a, b, c, d)| {
        (BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    })
}

/// A random element of `V_k` with `y` exponents below 3 and symmetric
/// parts of degree at most 2.
fn vk(k: usize) -> impl Strategy<Value = VkElement<QtRat>> {
    let term = (prop::collection::vec(0u32..3, k), 0usize..3).prop_flat_map(|(e, d)| (Just(e), sym(d)));
    prop::collection::vec(term, 1..4).prop_map(move |terms| {
        let mut out = SymPoly::zero(k);
        for (e, f) in terms {
            out.add_term(e, f);
        }
        out
    })
}

fn swap(f: &VkElement<QtRat>, i: usize, j: usize) -> VkElement<QtRat> {
    let mut out = SymPoly::zero(f.k());
    for (e, g) in f.terms() {
        let mut e2 = e.clone();
        e2.swap(i - 1, j - 1);
        out.add_term(e2, g.clone());
    }
    out
}

fn y(k: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    e[i - 1] = 1;
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in rat(), b in rat(), c in rat(), d in nonzero_rat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&d * &d.inv().unwrap()).is_one());
        prop_assert_eq!((&a * &d).checked_div(&d).unwrap(), a.clone());
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QtRat>(&text).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in rat(), b in rat(), (q0, t0) in point()) {
        if let (Ok(x), Ok(y)) = (a.eval_at(&q0, &t0), b.eval_at(&q0, &t0)) {
            prop_assert_eq!((&a * &b).eval_at(&q0, &t0).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).eval_at(&q0, &t0).unwrap(), &x + &y);
        }
    }

    #[test]
    fn basis_round_trips(d in 1usize..6, seed in any::<u64>()) {
        let f = {
            let parts = partitions(d);
            SymFunc::from_p_terms(parts.iter().enumerate().map(|(i, rho)| {
                (rho.clone(), QtRat::from_int(((seed >> (i % 60)) % 7) as i64 - 3))
            }).filter(|(_, c)| !c.is_zero()))
        };
        let b = bases();
        for basis in Basis::ALL {
            let coeffs = f.to_basis(&b, basis).unwrap();
            let back = SymFunc::from_basis(&b, basis, coeffs.iter()).unwrap();
            prop_assert_eq!(&back, &f, "basis {}", basis);
        }
    }

    #[test]
    fn hall_adjointness(f in sym(2), g in sym(3), h in sym(1)) {
        // <f^perp g, h> = <g, f h>
        prop_assert_eq!(SymFunc::perp(&f, &g).hall(&h), g.hall(&f.mul(&h)));
        prop_assert_eq!(f.omega().hall(&f.omega()), f.hall(&f));
    }

    #[test]
    fn schur_functions_are_orthonormal(d in 1usize..5) {
        let b = bases();
        let parts = partitions(d);
        for l in &parts {
            for m in &parts {
                let v = SymFunc::<QtRat>::s(&b, l).unwrap().hall(&SymFunc::s(&b, m).unwrap());
                prop_assert_eq!(v, QtRat::from_int((l == m) as i64));
            }
        }
    }

    #[test]
    fn plethysm_is_a_homomorphism(f in sym(2), g in sym(2), c1 in nonzero_rat(), c2 in small_int_rat(), b in rat()) {
        let ctx = ExactCtx;
        let sub = |x: &SymFunc<QtRat>, c: &QtRat| scale_alphabet(&ctx, x, c).unwrap();
        prop_assert_eq!(sub(&f.mul(&g), &c1), sub(&f, &c1).mul(&sub(&g, &c1)));
        prop_assert_eq!(sub(&f.add(&g), &c1), sub(&f, &c1).add(&sub(&g, &c1)));
        prop_assert_eq!(sub(&sub(&f, &c1), &c2), sub(&f, &(&c1 * &c2)));
        prop_assert_eq!(eval_finite(&f.mul(&g), &b), &eval_finite(&f, &b) * &eval_finite(&g, &b));
        // p_k[c X] = c(q^k, t^k) p_k
        let p2 = SymFunc::p(Partition::new(vec![2]).unwrap());
        prop_assert_eq!(sub(&p2, &c1), p2.scale(&c1.adams(2)));
    }

    #[test]
    fn hecke_relations(f in vk(3)) {
        let q = QtRat::q();
        for h in [HeckeNormalization::Upsilon, HeckeNormalization::Unital] {
            let alg = algebra(h);
            let t = |g: &VkElement<QtRat>, i: usize| alg.t_i(g, i, false).unwrap();
            let (a, b) = match h {
                HeckeNormalization::Upsilon => (q.clone(), QtRat::from_int(-1)),
                HeckeNormalization::Unital => (QtRat::one(), q.neg()),
            };
            for i in [1, 2] {
                // (T - a)(T - b) = 0
                let tb = t(&f, i).sub(&f.scale(&b));
                prop_assert!(t(&tb, i).sub(&tb.scale(&a)).is_zero());
                prop_assert_eq!(alg.t_i(&t(&f, i), i, true).unwrap(), f.clone());
            }
            prop_assert_eq!(t(&t(&t(&f, 1), 2), 1), t(&t(&t(&f, 2), 1), 2));
        }
    }

    #[test]
    fn upsilon_divides_exactly(f in vk(3), (i, j) in (1usize..4, 1usize..4).prop_filter("distinct", |(i, j)| i != j)) {
        let alg = algebra(HeckeNormalization::Upsilon);
        let u = alg.upsilon(&f, i, j).unwrap();
        let q = QtRat::q();
        let (yi, yj) = (y(3, i), y(3, j));
        // (y_j - y_i) Upsilon f = (q - 1) y_j f + (y_j - q y_i) f(y_i <-> y_j)
        let lhs = u.mul_monomial(&yj).sub(&u.mul_monomial(&yi));
        let sw = swap(&f, i, j);
        let rhs = f.mul_monomial(&yj).scale(&(&q - &QtRat::one()))
            .add(&sw.mul_monomial(&yj))
            .sub(&sw.mul_monomial(&yi).scale(&q));
        prop_assert_eq!(lhs, rhs);
    }
}
