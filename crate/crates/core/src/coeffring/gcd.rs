//! GCD and exact division in `Z[q, t]`.
//!
//! The polynomial is viewed as a polynomial in `q` whose coefficients are
//! polynomials in `t`; contents are split off recursively and the primitive
//! parts go through a subresultant remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::poly::{Mono, QtPoly};
use super::upoly::{Domain, UPoly};

fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    Integer::gcd(a, b)
}

type ZtPoly = UPoly<BigInt>;
type ZtqPoly = UPoly<ZtPoly>;

fn to_nested(p: &QtPoly) -> ZtqPoly {
    UPoly::new(p.to_dense_q().into_iter().map(UPoly::new).collect())
}

fn from_nested(p: &ZtqPoly) -> QtPoly {
    let rows: Vec<Vec<BigInt>> = p.c.iter().map(|r| r.c.clone()).collect();
    QtPoly::from_dense_q(&rows)
}

fn sign_normalize(p: QtPoly) -> QtPoly {
    if p.leading_is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Greatest common divisor, including the integer content, normalized so the
/// grlex-leading coefficient is positive. `gcd(0, 0) = 0`.
pub fn gcd_poly(a: &QtPoly, b: &QtPoly) -> QtPoly {
    if a.is_zero() {
        return sign_normalize(b.clone());
    }
    if b.is_zero() {
        return sign_normalize(a.clone());
    }
    let ma = a.min_mono();
    let mb = b.min_mono();
    let mono = Mono::new(ma.q.min(mb.q), ma.t.min(mb.t));
    if a.is_monomial() || b.is_monomial() {
        let c = int_gcd(&a.content(), &b.content());
        return QtPoly::monomial(c, mono);
    }
    let ar = a.div_mono(ma);
    let br = b.div_mono(mb);
    let core = if ar.is_constant() || br.is_constant() {
        QtPoly::constant(int_gcd(&ar.content(), &br.content()))
    } else {
        from_nested(&Domain::gcd(&to_nested(&ar), &to_nested(&br)))
    };
    sign_normalize(core.mul_term(&<BigInt as One>::one(), mono))
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a` in `Z[q, t]`.
pub fn div_exact(a: &QtPoly, b: &QtPoly) -> Option<QtPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(QtPoly::zero());
    }
    if b.is_monomial() {
        let (m, c) = b.leading().unwrap().clone();
        let mm = a.min_mono();
        if mm.q < m.q || mm.t < m.t {
            return None;
        }
        let shifted = a.div_mono(m);
        return if One::is_one(&c) { Some(shifted) } else { shifted.div_int(&c) };
    }
    let mb = b.min_mono();
    let ma = a.min_mono();
    if ma.q < mb.q || ma.t < mb.t {
        return None;
    }
    let quo = to_nested(&a.div_mono(mb)).div_exact(&to_nested(&b.div_mono(mb)))?;
    Some(from_nested(&quo))
}

/// Least common multiple with positive leading coefficient.
pub fn lcm_poly(a: &QtPoly, b: &QtPoly) -> QtPoly {
    if a.is_zero() || b.is_zero() {
        return QtPoly::zero();
    }
    let g = gcd_poly(a, b);
    sign_normalize(div_exact(a, &g).expect("gcd divides").mul(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, i64)]) -> QtPoly {
        QtPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))))
    }

    #[test]
    fn gcd_of_q_squared_minus_one_and_square() {
        let a = p(&[(2, 0, 1), (0, 0, -1)]);
        let b = p(&[(2, 0, 1), (1, 0, -2), (0, 0, 1)]);
        assert_eq!(gcd_poly(&a, &b), p(&[(1, 0, 1), (0, 0, -1)]));
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        let a = p(&[(1, 0, -1), (0, 1, 2)]);
        assert_eq!(gcd_poly(&a, &QtPoly::zero()), a.neg());
    }

    #[test]
    fn bivariate_common_factor() {
        let f = p(&[(1, 0, 1), (0, 1, -1)]); // q - t
        let a = f.mul(&p(&[(2, 0, 1), (0, 1, 3), (0, 0, 1)]));
        let b = f.mul(&p(&[(1, 1, 2), (0, 0, -5)]));
        assert_eq!(gcd_poly(&a, &b), f);
        assert_eq!(div_exact(&a, &f), Some(p(&[(2, 0, 1), (0, 1, 3), (0, 0, 1)])));
    }

    #[test]
    fn monomial_factors() {
        let a = p(&[(3, 1, 2), (2, 2, 4)]);
        let b = p(&[(1, 3, 6), (1, 4, 3)]);
        assert_eq!(gcd_poly(&a, &b), p(&[(1, 1, 1)]));
        assert_eq!(div_exact(&p(&[(1, 0, 1)]), &p(&[(0, 1, 1)])), None);
    }

    #[test]
    fn non_divisible() {
        let a = p(&[(2, 0, 1), (0, 0, 1)]);
        let b = p(&[(1, 0, 1), (0, 0, 1)]);
        assert_eq!(div_exact(&a, &b), None);
    }
}
