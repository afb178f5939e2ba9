//! Exponent lattices and exact division of polynomial-exponential functions.
//!
//! The exponents occurring in a pair of functions generate a free subgroup of
//! `(ℚ(i), +)` of rank at most two. Writing every exponent in lattice
//! coordinates turns the functions into Laurent polynomials in `X = e^{ω₁x}`,
//! `Y = e^{ω₂x}` over `ℚ(i)[x]`; after clearing monomial factors, exact
//! division is ordinary multivariate division in `ℚ(i)[X, Y, x]` under the
//! lexicographic order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::polyexp::{all_exponents, PolyExp};
use super::scalar::Gq;
use crate::error::{Error, Result};

/// The subgroup of `(ℚ(i), +)` generated by a finite set of exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpLattice {
    basis: Vec<Gq>,
    coords: BTreeMap<Gq, [i64; 2]>,
}

impl ExpLattice {
    /// Generators in Hermite normal form (at most two).
    pub fn basis(&self) -> &[Gq] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of a tracked exponent.
    pub fn coords(&self, lambda: &Gq) -> Option<[i64; 2]> {
        self.coords.get(lambda).copied()
    }

    /// The exponent with the given coordinates.
    pub fn point(&self, c: [i64; 2]) -> Gq {
        let mut out = Gq::zero();
        for (k, w) in self.basis.iter().enumerate() {
            if c[k] != 0 {
                out += &(w * &Gq::from_int(c[k]));
            }
        }
        out
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("lattice coordinate fits in i64")
}

/// Basis of the group generated by `exponents`, via the Hermite normal form
/// of the integer matrix obtained by clearing denominators.
pub fn exponent_lattice(exponents: &[Gq]) -> ExpLattice {
    let den = exponents.iter().fold(BigInt::one(), |acc, e| acc.lcm(&e.denom_lcm()));
    let scale = BigRational::from_integer(den.clone());
    let int_of = |r: &BigRational| -> BigInt { (r * &scale).to_integer() };
    let vecs: Vec<[BigInt; 2]> = exponents.iter().map(|e| [int_of(&e.re()), int_of(&e.im())]).collect();

    // Column 0: fold every row into a single pivot row.
    let mut pivot: Option<[BigInt; 2]> = None;
    let mut rest: Vec<[BigInt; 2]> = Vec::new();
    for v in &vecs {
        if v[0].is_zero() {
            rest.push(v.clone());
            continue;
        }
        match pivot.take() {
            None => pivot = Some(v.clone()),
            Some(p) => {
                let (g, u, w) = ext_gcd(&p[0], &v[0]);
                let np = [&u * &p[0] + &w * &v[0], &u * &p[1] + &w * &v[1]];
                let (pa, va) = (&p[0] / &g, &v[0] / &g);
                rest.push([BigInt::zero(), &va * &p[1] - &pa * &v[1]]);
                pivot = Some(np);
            }
        }
    }
    let g1 = rest.iter().fold(BigInt::zero(), |acc, r| acc.gcd(&r[1]));
    if let Some(p) = pivot.as_mut() {
        if p[0].is_negative() {
            p[0] = -&p[0];
            p[1] = -&p[1];
        }
        if !g1.is_zero() {
            p[1] = p[1].mod_floor(&g1);
        }
    }

    let to_gq = |v: &[BigInt; 2]| {
        Gq::new(
            BigRational::new(v[0].clone(), den.clone()),
            BigRational::new(v[1].clone(), den.clone()),
        )
    };
    let mut basis = Vec::new();
    if let Some(p) = &pivot {
        basis.push(to_gq(p));
    }
    if !g1.is_zero() {
        basis.push(to_gq(&[BigInt::zero(), g1.clone()]));
    }

    let mut coords = BTreeMap::new();
    for (e, v) in exponents.iter().zip(&vecs) {
        let mut c = [0i64; 2];
        let mut slot = 0;
        let mut rem1 = v[1].clone();
        if let Some(p) = &pivot {
            let a = &v[0] / &p[0];
            rem1 -= &a * &p[1];
            c[0] = to_i64(&a);
            slot = 1;
        }
        if !g1.is_zero() {
            c[slot] = to_i64(&(&rem1 / &g1));
        }
        coords.insert(e.clone(), c);
    }
    ExpLattice { basis, coords }
}

type Key = (i64, i64, usize);

/// Laurent image of `f`, shifted so that the smallest exponent in each
/// lattice direction is zero. Returns the terms and the shift.
fn embed(f: &PolyExp, lat: &ExpLattice) -> (BTreeMap<Key, Gq>, [i64; 2]) {
    let mut min = [i64::MAX; 2];
    for l in f.exponents() {
        let c = lat.coords(l).expect("exponent tracked by lattice");
        min[0] = min[0].min(c[0]);
        min[1] = min[1].min(c[1]);
    }
    let mut out = BTreeMap::new();
    for (l, p) in f.terms() {
        let c = lat.coords(l).unwrap();
        for (k, a) in p.coeffs().iter().enumerate() {
            if !a.is_zero() {
                out.insert((c[0] - min[0], c[1] - min[1], k), a.clone());
            }
        }
    }
    (out, min)
}

/// Exact quotient `f / g` in the polynomial-exponential ring.
pub fn exact_divide(f: &PolyExp, g: &PolyExp) -> Result<PolyExp> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.is_zero() {
        return Ok(PolyExp::zero());
    }
    // Single-exponent divisors act componentwise.
    if g.num_terms() == 1 {
        let (mu, p) = g.terms().next().unwrap();
        let mut out = Vec::with_capacity(f.num_terms());
        for (l, q) in f.terms() {
            out.push((l - mu, q.exact_div(p)?));
        }
        return Ok(PolyExp::from_terms(out));
    }
    let exps = all_exponents([f, g]);
    let lat = exponent_lattice(&exps);
    let (mut fm, fshift) = embed(f, &lat);
    let (gm, gshift) = embed(g, &lat);

    let (glt, glc) = gm.iter().next_back().map(|(k, c)| (*k, c.clone())).unwrap();
    let glc_inv = glc.inv()?;
    let mut quo: Vec<(Key, Gq)> = Vec::new();
    while let Some((&m, c)) = fm.iter().next_back() {
        if m.0 < glt.0 || m.1 < glt.1 || m.2 < glt.2 {
            return Err(Error::NotDivisible);
        }
        let t = (m.0 - glt.0, m.1 - glt.1, m.2 - glt.2);
        let tc = c * &glc_inv;
        for (k, a) in &gm {
            let key = (k.0 + t.0, k.1 + t.1, k.2 + t.2);
            let prod = a * &tc;
            let entry = fm.entry(key).or_insert_with(Gq::zero);
            *entry -= &prod;
            if entry.is_zero() {
                fm.remove(&key);
            }
        }
        quo.push((t, tc));
    }

    let shift = [fshift[0] - gshift[0], fshift[1] - gshift[1]];
    let mut by_exp: BTreeMap<Gq, Vec<Gq>> = BTreeMap::new();
    for ((a, b, k), c) in quo {
        let l = lat.point([a + shift[0], b + shift[1]]);
        let v = by_exp.entry(l).or_default();
        if v.len() <= k {
            v.resize(k + 1, Gq::zero());
        }
        v[k] = c;
    }
    Ok(PolyExp::from_terms(by_exp.into_iter().map(|(l, v)| (l, Poly::from_coeffs(v)))))
}
