//! Exact Macdonald coordinates through the `*`-scalar product.
//!
//! With `<p_rho, p_sigma>_* = delta (-1)^{n - l(rho)} z_rho prod (1 - q^{rho_i})(1 - t^{rho_i})`
//! the `H~_mu` are orthogonal and `<H~_mu, H~_mu>_* = w_mu` with
//! `w_mu = prod_c (q^a - t^{l+1})(t^l - q^{a+1})`. So
//! `f = sum_mu <f, H~_mu>_* / w_mu H~_mu`, and an eigenoperator is applied
//! over the single denominator `W = lcm_mu w_mu`, which is a product of
//! binomials `q^a - t^b`. Only the final coefficients are reduced.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::coeffring::{div_exact, lcm_poly, Mono, QtPoly, QtRat};
use crate::error::{Error, Result};
use crate::symfunc::{DegreeTables, Partition, SymFunc};

/// `q^a - t^b`
fn binomial(a: u32, b: u32) -> QtPoly {
    QtPoly::monomial(BigInt::one(), Mono::new(a, 0)).sub(&QtPoly::monomial(BigInt::one(), Mono::new(0, b)))
}

fn product(factors: &[QtPoly]) -> QtPoly {
    factors.iter().fold(QtPoly::one(), |acc, f| acc.mul(f))
}

/// `w_mu` as a sign and a multiset of binomials `q^a - t^b`.
fn norm_factors(mu: &Partition) -> Result<(bool, BTreeMap<(u32, u32), u32>)> {
    let mut negative = false;
    let mut mult = BTreeMap::new();
    for cell in mu.cells() {
        let st = mu.cell_stats(cell)?;
        *mult.entry((st.arm, st.leg + 1)).or_insert(0) += 1;
        // t^l - q^{a+1} = -(q^{a+1} - t^l)
        *mult.entry((st.arm + 1, st.leg)).or_insert(0) += 1;
        negative = !negative;
    }
    Ok((negative, mult))
}

/// Per-degree data for exact Macdonald coordinates.
pub(crate) struct StarDegree {
    parts: Vec<Partition>,
    z: Vec<BigInt>,
    // hz[mu][rho]: z_rho times the coefficient of p_rho in H~_mu
    hz: Vec<Vec<QtPoly>>,
    // weight[rho] = <p_rho, p_rho>_* / z_rho
    weight: Vec<QtPoly>,
    // binomial factors of w_mu, with multiplicity
    norm: Vec<Vec<(u32, u32)>>,
    negative: Vec<bool>,
    // W / w_mu
    cofactor: Vec<QtPoly>,
    // binomial factors of W, with multiplicity
    common: Vec<(u32, u32)>,
}

impl StarDegree {
    pub(crate) fn new(t: &DegreeTables, htilde: &dyn Fn(&Partition) -> Result<SymFunc<QtRat>>) -> Result<Self> {
        let n = t.degree;
        let parts = t.parts.clone();
        let z = t.z.clone();
        let mut hz = Vec::with_capacity(parts.len());
        for mu in &parts {
            let h = htilde(mu)?;
            let row = parts
                .iter()
                .zip(&z)
                .map(|(rho, zr)| {
                    let c = h.coeff(rho).mul(&QtRat::from_bigint(zr.clone()));
                    if c.is_polynomial() {
                        Ok(c.numer().clone())
                    } else {
                        Err(Error::internal(format!("z_rho times the p{rho} coefficient of H~{mu} is not a polynomial")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            hz.push(row);
        }
        let weight = parts
            .iter()
            .map(|rho| {
                let one = QtPoly::one();
                let w = rho.parts().iter().fold(QtPoly::one(), |acc, &k| {
                    let qk = QtPoly::monomial(BigInt::one(), Mono::new(k, 0));
                    let tk = QtPoly::monomial(BigInt::one(), Mono::new(0, k));
                    acc.mul(&one.sub(&qk)).mul(&one.sub(&tk))
                });
                if (n - rho.len()) % 2 == 1 {
                    w.neg()
                } else {
                    w
                }
            })
            .collect::<Vec<_>>();
        let mut norm = Vec::with_capacity(parts.len());
        let mut signs = Vec::with_capacity(parts.len());
        let mut top: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut mults = Vec::with_capacity(parts.len());
        for mu in &parts {
            let (neg, mult) = norm_factors(mu)?;
            for (&k, &m) in &mult {
                let e = top.entry(k).or_insert(0);
                *e = (*e).max(m);
            }
            let mut fs = Vec::new();
            for (&k, &m) in &mult {
                for _ in 0..m {
                    fs.push(k);
                }
            }
            norm.push(fs);
            signs.push(neg);
            mults.push(mult);
        }
        let mut common = Vec::new();
        for (&k, &m) in &top {
            for _ in 0..m {
                common.push(k);
            }
        }
        let cofactor = mults
            .iter()
            .zip(&signs)
            .map(|(mult, &neg)| {
                let mut fs = Vec::new();
                for (&(a, b), &m) in &top {
                    for _ in 0..m - mult.get(&(a, b)).copied().unwrap_or(0) {
                        fs.push(binomial(a, b));
                    }
                }
                let p = product(&fs);
                if neg {
                    p.neg()
                } else {
                    p
                }
            })
            .collect::<Vec<_>>();
        let d = StarDegree { parts, z, hz, weight, norm, negative: signs, cofactor, common };
        d.check_norms()?;
        Ok(d)
    }

    /// `<H~_mu, H~_mu>_*` computed from the power-sum coefficients must equal
    /// the product formula.
    fn check_norms(&self) -> Result<()> {
        let l = self.z.iter().fold(BigInt::one(), |acc, z| acc.lcm(z));
        for (i, mu) in self.parts.iter().enumerate() {
            let mut direct = QtPoly::zero();
            for (r, zr) in self.z.iter().enumerate() {
                let h = &self.hz[i][r];
                direct = direct.add(&h.mul(h).mul(&self.weight[r]).scale(&(&l / zr)));
            }
            let w = product(&self.norm[i].iter().map(|&(a, b)| binomial(a, b)).collect::<Vec<_>>());
            let w = if self.negative[i] { w.neg() } else { w };
            if direct != w.scale(&l) {
                return Err(Error::internal(format!("<H~{mu}, H~{mu}>_* disagrees with the product formula")));
            }
        }
        Ok(())
    }

    /// Numerator polynomials `F_rho` and common denominator `D` of the
    /// coefficients of `f`, indexed like `parts`.
    fn clear(&self, f: &SymFunc<QtRat>) -> (Vec<QtPoly>, QtPoly) {
        let mut den = QtPoly::one();
        for (_, c) in f.terms() {
            if c.denom() != &den {
                den = lcm_poly(&den, c.denom());
            }
        }
        let nums = self
            .parts
            .iter()
            .map(|rho| {
                let c = f.coeff(rho);
                if c.is_zero() {
                    QtPoly::zero()
                } else if c.denom() == &den {
                    c.numer().clone()
                } else {
                    c.numer().mul(&div_exact(&den, c.denom()).expect("lcm is a multiple"))
                }
            })
            .collect();
        (nums, den)
    }

    /// `D <f, H~_mu>_*` for every `mu`.
    fn pairings(&self, nums: &[QtPoly]) -> Vec<QtPoly> {
        let scaled: Vec<QtPoly> = nums.iter().zip(&self.weight).map(|(f, w)| if f.is_zero() { QtPoly::zero() } else { f.mul(w) }).collect();
        self.hz
            .iter()
            .map(|row| {
                let mut acc = QtPoly::zero();
                for (f, h) in scaled.iter().zip(row) {
                    if !f.is_zero() && !h.is_zero() {
                        acc = acc.add(&f.mul(h));
                    }
                }
                acc
            })
            .collect()
    }

    /// Coefficients of the homogeneous degree-`n` function `f` in the
    /// `H~_mu` basis.
    pub(crate) fn expand(&self, f: &SymFunc<QtRat>) -> Result<Vec<(Partition, QtRat)>> {
        let (nums, den) = self.clear(f);
        let a = self.pairings(&nums);
        let mut out = Vec::new();
        for (i, mu) in self.parts.iter().enumerate() {
            if a[i].is_zero() {
                continue;
            }
            let extra = if self.negative[i] { den.neg() } else { den.clone() };
            out.push((mu.clone(), reduce(a[i].clone(), &self.norm[i], &extra)?));
        }
        Ok(out)
    }

    /// The operator with eigenvalue `ev[mu]` on `H~_mu`, applied to the
    /// homogeneous degree-`n` function `f`.
    pub(crate) fn apply(&self, f: &SymFunc<QtRat>, ev: &[QtRat]) -> Result<SymFunc<QtRat>> {
        let (nums, den) = self.clear(f);
        let a = self.pairings(&nums);
        let mut g = QtPoly::one();
        for e in ev {
            if !e.is_zero() && e.denom() != &g {
                g = lcm_poly(&g, e.denom());
            }
        }
        let mut weighted = Vec::with_capacity(self.parts.len());
        for (i, e) in ev.iter().enumerate() {
            if e.is_zero() || a[i].is_zero() {
                weighted.push(QtPoly::zero());
                continue;
            }
            let en = if e.denom() == &g { e.numer().clone() } else { e.numer().mul(&div_exact(&g, e.denom()).expect("lcm is a multiple")) };
            weighted.push(en.mul(&self.cofactor[i]).mul(&a[i]));
        }
        let den = den.mul(&g);
        let mut out = SymFunc::zero();
        for (s, sigma) in self.parts.iter().enumerate() {
            let mut acc = QtPoly::zero();
            for (w, row) in weighted.iter().zip(&self.hz) {
                if !w.is_zero() && !row[s].is_zero() {
                    acc = acc.add(&w.mul(&row[s]));
                }
            }
            if acc.is_zero() {
                continue;
            }
            let d = den.scale(&self.z[s]);
            out.add_term(sigma.clone(), reduce(acc, &self.common, &d)?);
        }
        Ok(out)
    }
}

/// `num / (prod(factors) * extra)`, dividing out whole binomials first so the
/// final reduction works on small polynomials.
fn reduce(mut num: QtPoly, factors: &[(u32, u32)], extra: &QtPoly) -> Result<QtRat> {
    let mut left = Vec::new();
    for &(a, b) in factors {
        let quo = match div_binomial(&num, a, b) {
            Quotient::Exact(q) => Some(q),
            Quotient::NotDivisible => None,
            Quotient::Overflow => div_exact(&num, &binomial(a, b)),
        };
        match quo {
            Some(q) => num = q,
            None => left.push(binomial(a, b)),
        }
    }
    QtRat::new(num, product(&left).mul(extra))
}

enum Quotient {
    Exact(QtPoly),
    NotDivisible,
    Overflow,
}

/// `p / (q^a - t^b)` by synthetic division in the variable with the
/// positive exponent, on a dense `i128` grid.
fn div_binomial(p: &QtPoly, a: u32, b: u32) -> Quotient {
    // (main, other) exponents of each monomial; the divisor is x^e - y^f up to sign
    let (swap, e, f, negate) = if a > 0 { (false, a, b, false) } else { (true, b, 0, true) };
    let key = |m: &Mono| if swap { (m.t, m.q) } else { (m.q, m.t) };
    let (mut dx, mut dy) = (0u32, 0u32);
    for (m, _) in p.terms() {
        let (x, y) = key(m);
        dx = dx.max(x);
        dy = dy.max(y);
    }
    if dx < e {
        return Quotient::NotDivisible;
    }
    let (dx, dy) = (dx as usize, dy as usize);
    let (e, f) = (e as usize, f as usize);
    // the quotient has y-degree at most dy + f * (dx / e)
    let wy = dy + f * (dx / e) + 1;
    let mut r = vec![0i128; (dx + 1) * wy];
    for (m, c) in p.terms() {
        let Some(v) = c.to_i64() else { return Quotient::Overflow };
        let (x, y) = key(m);
        r[x as usize * wy + y as usize] = v as i128;
    }
    let mut quo = vec![0i128; (dx - e + 1) * wy];
    for x in (e..=dx).rev() {
        for y in 0..wy {
            let c = r[x * wy + y];
            if c == 0 {
                continue;
            }
            quo[(x - e) * wy + y] = c;
            r[x * wy + y] = 0;
            if y + f >= wy {
                return Quotient::Overflow;
            }
            let cell = &mut r[(x - e) * wy + y + f];
            match cell.checked_add(c) {
                Some(v) if v.unsigned_abs() < 1 << 100 => *cell = v,
                _ => return Quotient::Overflow,
            }
        }
    }
    if r.iter().any(|&c| c != 0) {
        return Quotient::NotDivisible;
    }
    let mut terms = Vec::new();
    for (idx, &c) in quo.iter().enumerate() {
        if c != 0 {
            let (x, y) = ((idx / wy) as u32, (idx % wy) as u32);
            let m = if swap { Mono::new(y, x) } else { Mono::new(x, y) };
            terms.push((m.q, m.t, BigInt::from(if negate { -c } else { c })));
        }
    }
    Quotient::Exact(QtPoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::BasisCache;
    use crate::macdonald::compute_htilde;

    fn p(terms: &[(u32, u32, i64)]) -> QtPoly {
        QtPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))))
    }

    #[test]
    fn binomial_division_matches_generic_division() {
        let f = p(&[(3, 1, 2), (0, 2, -1), (1, 0, 5), (2, 3, 1)]);
        for (a, b) in [(1, 1), (2, 1), (0, 3), (3, 0), (1, 2)] {
            let d = binomial(a, b);
            let prod = f.mul(&d);
            match div_binomial(&prod, a, b) {
                Quotient::Exact(q) => assert_eq!(q, f, "({a}, {b})"),
                _ => panic!("({a}, {b}) should divide"),
            }
            let off = prod.add(&QtPoly::one());
            assert!(matches!(div_binomial(&off, a, b), Quotient::NotDivisible));
        }
    }

    #[test]
    fn macdonald_basis_is_star_orthogonal() {
        let bases = BasisCache::new(4);
        let t = bases.tables(4).unwrap();
        let d = StarDegree::new(&t, &|mu| compute_htilde(&bases, mu)).unwrap();
        for (i, mu) in t.parts.iter().enumerate() {
            let h = compute_htilde(&bases, mu).unwrap();
            let e = d.expand(&h).unwrap();
            assert_eq!(e, vec![(mu.clone(), QtRat::one())], "H~{mu}");
            let (nums, _) = d.clear(&h);
            for (j, a) in d.pairings(&nums).iter().enumerate() {
                assert_eq!(a.is_zero(), i != j);
            }
        }
    }
}
