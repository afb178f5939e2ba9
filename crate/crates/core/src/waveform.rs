//! Closed two-variable forms `(∑ₖ cₖ(x) zᵏ) / (δ(x)·E(z)) · e^{xz}`.
//!
//! Both operator algebras act on this class: operators in `x` change the
//! numerator and `δ`, operators in `z` change the numerator and `E`. The
//! denominator never mixes the two variables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactfield::{cancel_common, Denom, Gq, Poly, PolyExp, RatExp};
use crate::opalgebra_x::DiffOpX;
use crate::opalgebra_z::{RatFunZ, TransDiffOpZ, ZDen};

#[derive(Clone, Debug)]
pub struct WaveForm {
    num: Vec<PolyExp>,
    xden: Denom,
    zden: ZDen,
}

fn trim(v: &mut Vec<PolyExp>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `N(x, z)·p(z)` for a scalar polynomial `p`.
fn mul_zpoly(n: &[PolyExp], p: &Poly) -> Vec<PolyExp> {
    if n.is_empty() || p.is_zero() {
        return Vec::new();
    }
    let mut out = vec![PolyExp::zero(); n.len() + p.coeffs().len() - 1];
    for (i, c) in n.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, a) in p.coeffs().iter().enumerate() {
            if !a.is_zero() {
                out[i + j] = &out[i + j] + &c.scale(a);
            }
        }
    }
    trim(&mut out);
    out
}

fn mul_polyexp(n: &[PolyExp], f: &PolyExp) -> Vec<PolyExp> {
    if f.is_one() {
        return n.to_vec();
    }
    let mut out: Vec<PolyExp> = n.iter().map(|c| c * f).collect();
    trim(&mut out);
    out
}

fn add_vecs(a: &[PolyExp], b: &[PolyExp], neg: bool) -> Vec<PolyExp> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i);
        let y = b.get(i);
        out.push(match (x, y) {
            (Some(x), Some(y)) => {
                if neg {
                    x - y
                } else {
                    x + y
                }
            }
            (Some(x), None) => x.clone(),
            (None, Some(y)) => {
                if neg {
                    -y
                } else {
                    y.clone()
                }
            }
            (None, None) => PolyExp::zero(),
        });
    }
    trim(&mut out);
    out
}

/// `N(x, z + λ)`.
fn translate_z(n: &[PolyExp], lambda: &Gq) -> Vec<PolyExp> {
    if lambda.is_zero() || n.len() <= 1 {
        return n.to_vec();
    }
    let mut c = n.to_vec();
    let len = c.len();
    for i in 0..len {
        for j in (i..len - 1).rev() {
            let t = c[j + 1].scale(lambda);
            c[j] = &c[j] + &t;
        }
    }
    trim(&mut c);
    c
}

/// `N / (z − a)` when `N(x, a) = 0`.
fn div_by_root(n: &[PolyExp], a: &Gq) -> Option<Vec<PolyExp>> {
    let len = n.len();
    if len == 0 {
        return Some(Vec::new());
    }
    if !crate::exactfield::modp::may_vanish_polyexp(n, a) {
        return None;
    }
    let mut q = vec![PolyExp::zero(); len - 1];
    let mut carry = PolyExp::zero();
    for k in (1..len).rev() {
        carry = &n[k] + &carry.scale(a);
        q[k - 1] = carry.clone();
    }
    let rem = &n[0] + &carry.scale(a);
    rem.is_zero().then_some(q)
}

/// `∂_z N`.
fn dz_num(n: &[PolyExp]) -> Vec<PolyExp> {
    let mut out: Vec<PolyExp> = n.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Gq::from_int(k as i64))).collect();
    trim(&mut out);
    out
}

impl WaveForm {
    /// `e^{xz}`.
    pub fn exz() -> Self {
        Self::from_parts(vec![PolyExp::one()], Denom::one(), ZDen::one())
    }

    pub fn zero() -> Self {
        Self::from_parts(Vec::new(), Denom::one(), ZDen::one())
    }

    /// `N / (δ·E) · e^{xz}`.
    pub fn from_parts(mut num: Vec<PolyExp>, xden: Denom, zden: ZDen) -> Self {
        trim(&mut num);
        let mut w = WaveForm { num, xden, zden };
        w.reduce_z();
        w
    }

    /// `N / (δ·E) · e^{xz}` with an arbitrary nonzero polynomial-exponential
    /// `δ` and polynomial `E`.
    pub fn new(num: Vec<PolyExp>, xden: &PolyExp, zden: Poly) -> Result<Self> {
        if zden.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, d) = Denom::split(xden)?;
        let (lc, e) = ZDen::from_poly(&zden);
        let num = num.iter().map(|c| c.exact_div(&unit).map(|q| q.scale(&lc))).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(num, d, e))
    }

    /// Numerator coefficients of `z⁰, z¹, …`.
    pub fn numerator(&self) -> &[PolyExp] {
        &self.num
    }

    pub fn xden(&self) -> &Denom {
        &self.xden
    }

    pub fn zden(&self) -> &ZDen {
        &self.zden
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Scalar polynomials `n_{λ,a}(z)` with `N = ∑ x^a e^{λx} n_{λ,a}(z)`.
    fn scalar_slices(&self) -> BTreeMap<(Gq, usize), Vec<Gq>> {
        let mut out: BTreeMap<(Gq, usize), Vec<Gq>> = BTreeMap::new();
        for (k, c) in self.num.iter().enumerate() {
            for (l, p) in c.terms() {
                for (a, s) in p.coeffs().iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    let v = out.entry((l.clone(), a)).or_default();
                    if v.len() <= k {
                        v.resize(k + 1, Gq::zero());
                    }
                    v[k] = s.clone();
                }
            }
        }
        out
    }

    /// Divides out `gcd(N, E)` over ℚ(i)[z]; exact because the monomials
    /// `x^a e^{λx}` are linearly independent over ℚ(i)(z).
    fn reduce_z(&mut self) {
        if self.num.is_empty() {
            self.zden = ZDen::one();
            self.xden = Denom::one();
            return;
        }
        for (a, e) in self.zden.root_list() {
            for _ in 0..e {
                match div_by_root(&self.num, &a) {
                    Some(q) => {
                        self.num = q;
                        self.zden.decrement(&a);
                    }
                    None => break,
                }
            }
        }
        if self.zden.rest().is_constant() {
            return;
        }
        let mut g = self.zden.rest().clone();
        for (_, v) in self.scalar_slices() {
            g = g.gcd(&Poly::from_coeffs(v));
            if g.is_one() {
                return;
            }
        }
        let mut slices = self.scalar_slices();
        for v in slices.values_mut() {
            *v = Poly::from_coeffs(core::mem::take(v)).exact_div(&g).unwrap().coeffs().to_vec();
        }
        let mut num: Vec<Vec<(Gq, usize, Gq)>> = Vec::new();
        for ((l, a), v) in slices {
            for (k, s) in v.into_iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                if num.len() <= k {
                    num.resize(k + 1, Vec::new());
                }
                num[k].push((l.clone(), a, s));
            }
        }
        self.num = num
            .into_iter()
            .map(|ts| {
                ts.into_iter().fold(PolyExp::zero(), |acc, (l, a, s)| &acc + &PolyExp::monomial(s, a, l))
            })
            .collect();
        trim(&mut self.num);
        let rest = self.zden.rest().exact_div(&g).unwrap().monic();
        self.zden.set_rest(rest);
    }

    /// Also cancels factors of `δ` dividing every numerator coefficient.
    pub fn reduce(mut self) -> Self {
        cancel_common(&mut self.num, &mut self.xden);
        self.reduce_z();
        self
    }

    /// Product of the rational prefactors, with the exponentials multiplied
    /// by the caller.
    pub(crate) fn mul_prefactor(&self, o: &WaveForm) -> WaveForm {
        if self.is_zero() || o.is_zero() {
            return WaveForm::zero();
        }
        let mut n = vec![PolyExp::zero(); self.num.len() + o.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in o.num.iter().enumerate() {
                n[i + j] = &n[i + j] + &(a * b);
            }
        }
        Self::from_parts(n, self.xden.mul(&o.xden), self.zden.mul(&o.zden)).reduce()
    }

    /// Quotient of prefactors by a separable `o = f(x)·s(z)`.
    pub(crate) fn div_prefactor(&self, o: &WaveForm) -> Result<WaveForm> {
        let k0 = o.num.iter().position(|c| !c.is_zero()).ok_or(Error::DivisionByZero)?;
        let f = &o.num[k0];
        let mut s = Vec::with_capacity(o.num.len());
        for c in &o.num {
            if c.is_zero() {
                s.push(Gq::zero());
            } else {
                s.push(c.scalar_ratio(f).ok_or_else(|| {
                    Error::Invalid("divisor is not a product of a function of x and a function of z".into())
                })?);
            }
        }
        let (unit, fden) = Denom::split(f)?;
        let (mu, c) = unit.terms().next().map(|(l, p)| (l.clone(), p.coeff(0))).ok_or(Error::DivisionByZero)?;
        let unit_inv = PolyExp::monomial(c.inv()?, 0, -mu);
        let (lc, sden) = ZDen::from_poly(&Poly::from_coeffs(s));
        let xe = (&o.xden.expand() * &unit_inv).scale(&lc);
        let inv = WaveForm::from_parts(
            o.zden.expand().coeffs().iter().map(|a| xe.scale(a)).collect(),
            fden,
            sden,
        );
        Ok(self.mul_prefactor(&inv))
    }

    /// Multiplies by `f(x)·r(z)`.
    pub fn scale(&self, fx: &RatExp, rz: &RatFunZ) -> Self {
        let n = mul_zpoly(&mul_polyexp(&self.num, fx.num()), rz.num());
        Self::from_parts(n, self.xden.mul(fx.den()), self.zden.mul(rz.den()))
    }

    /// Applies an operator in `x`: `∂_x(c e^{xz}) = (c′ + zc)e^{xz}` plus the
    /// quotient rule against `δ`.
    pub fn apply_x(&self, l: &DiffOpX) -> WaveForm {
        if l.is_zero() || self.is_zero() {
            return WaveForm::zero();
        }
        let r = l.order().unwrap();
        let trivial = self.xden.is_one();
        let (rad, logd) = self.xden.log_derivative();
        let drad = rad.derive();
        // derivatives N_i over δ·R^i
        let mut ders: Vec<Vec<PolyExp>> = vec![self.num.clone()];
        for i in 0..r {
            let n = &ders[i];
            let mut next: Vec<PolyExp> = n.iter().map(|c| c.derive()).collect();
            next = add_vecs(&next, &mul_zpoly(n, &Poly::var()), false);
            if !trivial {
                let corr = &logd + &drad.scale(&Gq::from_int(i as i64));
                next = add_vecs(&mul_polyexp(&next, &rad), &mul_polyexp(n, &corr), true);
            }
            ders.push(next);
        }
        let mut acc: Vec<PolyExp> = Vec::new();
        for (i, a) in l.numerators().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut t = mul_polyexp(&ders[i], a);
            if !trivial && r > i {
                t = mul_polyexp(&t, &rad.pow((r - i) as u32));
            }
            acc = add_vecs(&acc, &t, false);
        }
        let mut den = self.xden.mul(l.den());
        if !trivial {
            den = den.mul(&Denom::from_radical(&self.xden).pow(r as u32));
        }
        WaveForm::from_parts(acc, den, self.zden.clone())
    }

    /// Applies an operator in `z`: `S_λ(c(x) r(z) e^{xz}) = e^{λx}c(x) r(z+λ) e^{xz}`
    /// and `∂_z(c zᵏ e^{xz}) = (k c z^{k−1} + x c zᵏ) e^{xz}`.
    pub fn apply_z(&self, t: &TransDiffOpZ) -> WaveForm {
        if self.is_zero() {
            return WaveForm::zero();
        }
        let mut terms = Vec::new();
        let x = PolyExp::x();
        for (lam, coeffs) in t.terms() {
            let eshift = PolyExp::exp(lam.clone());
            let mut m = mul_polyexp(&translate_z(&self.num, lam), &eshift);
            let mut d = self.zden.shift(lam);
            // ∂_z(M/D) = ((∂_z M + xM)·R − M·S) / (D·R) with D′/D = S/R, or
            // the plain quotient rule when D has non-linear factors
            for (k, r) in coeffs.iter().enumerate() {
                if k > 0 {
                    let dm = add_vecs(&dz_num(&m), &mul_polyexp(&m, &x), false);
                    if d.is_one() {
                        m = dm;
                    } else if d.is_split() {
                        let (rad, s) = d.log_derivative();
                        m = add_vecs(&mul_zpoly(&dm, &rad), &mul_zpoly(&m, &s), true);
                        d = d.mul(&ZDen::from_roots(d.roots().map(|(a, _)| (a.clone(), 1))));
                    } else {
                        let e = d.expand();
                        m = add_vecs(&mul_zpoly(&dm, &e), &mul_zpoly(&m, &e.derivative()), true);
                        d = d.pow(2);
                    }
                    let w = WaveForm::from_parts(m, Denom::one(), d);
                    m = w.num;
                    d = w.zden;
                }
                if r.is_zero() {
                    continue;
                }
                terms.push(WaveForm::from_parts(mul_zpoly(&m, r.num()), self.xden.clone(), d.mul(r.den())));
            }
        }
        sum_forms(terms)
    }

    pub fn eval(&self, x: Complex64, z: Complex64) -> Result<Complex64> {
        let mut n = Complex64::new(0.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for c in &self.num {
            n += c.eval(x)? * zp;
            zp *= z;
        }
        let d = self.xden.eval(x)? * self.zden.eval(z);
        if d.norm() == 0.0 {
            return Err(Error::NearPole);
        }
        let xz = x * z;
        if xz.norm() > crate::exactfield::EXP_BOUND {
            return Err(Error::Overflow);
        }
        Ok(n / d * xz.exp())
    }
}

/// `L[e^{xz}] = (∑ aᵢ(x) zⁱ)·e^{xz}` for `L` with polynomial-exponential
/// coefficients.
pub fn symbol(l: &DiffOpX) -> Result<WaveForm> {
    let l = l.certify_polyexp()?;
    let (nums, den) = l.symbol_parts();
    Ok(WaveForm::from_parts(nums.to_vec(), den.clone(), ZDen::one()))
}

/// Sum of many forms. When all share `δ`, each slice `x^a e^{λx}` is summed
/// as a rational function of `z` and the numerator is rebuilt once over the
/// common denominator of the reduced slices.
fn sum_forms(terms: Vec<WaveForm>) -> WaveForm {
    let terms: Vec<WaveForm> = terms.into_iter().filter(|t| !t.is_zero()).collect();
    let Some(first) = terms.first() else { return WaveForm::zero() };
    let xden = first.xden.clone();
    if terms.iter().any(|t| t.xden != xden) {
        return terms.iter().fold(WaveForm::zero(), |acc, t| &acc + t);
    }
    let mut slices: BTreeMap<(Gq, usize), RatFunZ> = BTreeMap::new();
    for t in &terms {
        for (key, v) in t.scalar_slices() {
            let r = RatFunZ::from_den(Poly::from_coeffs(v), t.zden.clone());
            let e = slices.entry(key).or_insert_with(RatFunZ::zero);
            *e = &*e + &r;
        }
    }
    slices.retain(|_, r| !r.is_zero());
    let den = slices.values().fold(ZDen::one(), |d, r| d.lcm(r.den()).0);
    let mut num: Vec<PolyExp> = Vec::new();
    for ((l, a), r) in slices {
        let p = r.num() * &den.lcm(r.den()).2;
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if num.len() <= k {
                num.resize(k + 1, PolyExp::zero());
            }
            num[k] = &num[k] + &PolyExp::monomial(c.clone(), a, l.clone());
        }
    }
    WaveForm::from_parts(num, xden, den)
}

fn combine(a: &WaveForm, b: &WaveForm, neg: bool) -> WaveForm {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if neg { WaveForm::from_parts(b.num.iter().map(|c| -c).collect(), b.xden.clone(), b.zden.clone()) } else { b.clone() };
    }
    let (xd, ca, cb) = if a.xden == b.xden {
        (a.xden.clone(), PolyExp::one(), PolyExp::one())
    } else {
        let l = a.xden.lcm(&b.xden);
        let ca = l.cofactor(&a.xden);
        let cb = l.cofactor(&b.xden);
        (l, ca, cb)
    };
    let (zd, za, zb) = a.zden.lcm(&b.zden);
    let na = mul_zpoly(&mul_polyexp(&a.num, &ca), &za);
    let nb = mul_zpoly(&mul_polyexp(&b.num, &cb), &zb);
    WaveForm::from_parts(add_vecs(&na, &nb, neg), xd, zd)
}

impl<'a> Add<&'a WaveForm> for &'a WaveForm {
    type Output = WaveForm;
    fn add(self, o: &WaveForm) -> WaveForm {
        combine(self, o, false)
    }
}

impl<'a> Sub<&'a WaveForm> for &'a WaveForm {
    type Output = WaveForm;
    fn sub(self, o: &WaveForm) -> WaveForm {
        combine(self, o, true)
    }
}

/// Cross-multiplication: `N₁·δ₂·E₂ = N₂·δ₁·E₁`.
impl PartialEq for WaveForm {
    fn eq(&self, o: &WaveForm) -> bool {
        (self - o).is_zero()
    }
}

impl Eq for WaveForm {}

#[cfg(test)]
mod tests {
    use super::*;

    fn zpow(k: usize) -> RatFunZ {
        RatFunZ::from_poly(Poly::monomial(Gq::one(), k))
    }

    #[test]
    fn apply_x_examples() {
        let w = WaveForm::exz();
        assert_eq!(w.apply_x(&DiffOpX::d()), w.scale(&RatExp::one(), &RatFunZ::z()));
        let over_z = w.scale(&RatExp::one(), &RatFunZ::z().inv().unwrap());
        assert_eq!(over_z.apply_x(&DiffOpX::d()), w);
        let xd = &DiffOpX::function(PolyExp::x().into()) * &DiffOpX::d();
        assert_eq!(w.apply_x(&xd), w.scale(&PolyExp::x().into(), &RatFunZ::z()));
    }

    #[test]
    fn apply_z_examples() {
        let w = WaveForm::exz();
        let l = Gq::from_frac(7, 3);
        let sl = TransDiffOpZ::shift(l.clone());
        assert_eq!(w.apply_z(&sl), w.scale(&PolyExp::exp(l).into(), &RatFunZ::one()));
        let over_z = w.scale(&RatExp::one(), &RatFunZ::z().inv().unwrap());
        // ∂_z (1/z)e^{xz} = (−1/z² + x/z) e^{xz}
        let expect = &w.scale(&PolyExp::from_int(-1).into(), &zpow(2).inv().unwrap())
            + &w.scale(&PolyExp::x().into(), &zpow(1).inv().unwrap());
        assert_eq!(over_z.apply_z(&TransDiffOpZ::dz()), expect);
    }

    #[test]
    fn quotient_rule_against_x_denominator() {
        // ∂_x[(1/x) e^{xz}] = (−1/x² + z/x) e^{xz}
        let inv_x = RatExp::new(PolyExp::one(), &PolyExp::x()).unwrap();
        let w = WaveForm::exz().scale(&inv_x, &RatFunZ::one());
        let lhs = w.apply_x(&DiffOpX::d());
        let rhs = &WaveForm::exz().scale(&RatExp::new(PolyExp::from_int(-1), &PolyExp::x().pow(2)).unwrap(), &RatFunZ::one())
            + &WaveForm::exz().scale(&inv_x, &RatFunZ::z());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_z_derivative_with_denominator() {
        // ∂_z² [e^{xz}/(z−1)] compared against the product rule by hand
        let e = Poly::from_ints(&[-1, 1]);
        let w = WaveForm::new(vec![PolyExp::one()], &PolyExp::one(), e.clone()).unwrap();
        let dz2 = &TransDiffOpZ::dz() * &TransDiffOpZ::dz();
        let lhs = w.apply_z(&dz2);
        // x²/(z−1) − 2x/(z−1)² + 2/(z−1)³
        let mk = |c: PolyExp, k: u32| WaveForm::new(vec![c], &PolyExp::one(), e.pow(k)).unwrap();
        let rhs = &(&mk(PolyExp::x().pow(2), 1) - &mk(PolyExp::x().scale(&Gq::from_int(2)), 2)) + &mk(PolyExp::from_int(2), 3);
        assert_eq!(lhs, rhs);
        let z = Complex64::new(0.3, 0.7);
        let x = Complex64::new(-0.4, 0.2);
        assert!((lhs.eval(x, z).unwrap() - rhs.eval(x, z).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn z_derivative_with_irreducible_denominator() {
        // ∂_z [e^{xz}/(z²+2)] = (x(z²+2) − 2z)/(z²+2)² e^{xz}
        let e = Poly::from_ints(&[2, 0, 1]);
        let w = WaveForm::new(vec![PolyExp::one()], &PolyExp::one(), e.clone()).unwrap();
        let lhs = w.apply_z(&TransDiffOpZ::dz());
        let x = PolyExp::x();
        let num = vec![x.scale(&Gq::from_int(2)), PolyExp::from_int(-2), x];
        let rhs = WaveForm::new(num, &PolyExp::one(), e.pow(2)).unwrap();
        assert_eq!(lhs, rhs);
        let shifted = w.apply_z(&TransDiffOpZ::shift(Gq::one()));
        let expect = WaveForm::new(vec![PolyExp::exp(Gq::one())], &PolyExp::one(), Poly::from_ints(&[3, 2, 1])).unwrap();
        assert_eq!(shifted, expect);
    }

    #[test]
    fn symbol_examples() {
        let d = DiffOpX::d();
        assert_eq!(symbol(&(&d * &d)).unwrap(), WaveForm::exz().scale(&RatExp::one(), &zpow(2)));
        let xd = &DiffOpX::function(PolyExp::x().into()) * &d;
        assert_eq!(symbol(&xd).unwrap(), WaveForm::exz().scale(&PolyExp::x().into(), &RatFunZ::z()));
    }

    #[test]
    fn scale_identity_and_eval() {
        let w = WaveForm::exz();
        assert_eq!(w.scale(&RatExp::one(), &RatFunZ::one()), w);
        let v = w.eval(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - core::f64::consts::E).abs() < 1e-12);
    }
}
