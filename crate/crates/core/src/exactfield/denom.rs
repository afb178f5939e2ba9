//! Factored denominators.
//!
//! Denominators built during operator arithmetic are products of a few
//! recurring functions (the tau function, powers of `x`, ...). Keeping them as
//! a product of normalized factors lets cancellation and common denominators
//! work by matching factors, without a GCD in the polynomial-exponential ring.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::polyexp::PolyExp;
use super::scalar::Gq;
use crate::error::{Error, Result};

/// A product `∏ fⱼ^{eⱼ}` of normalized, non-unit polynomial-exponential
/// factors. A factor is normalized when its smallest exponent is 0, the
/// leading coefficient of the polynomial at that exponent is 1, and it is
/// either `x` itself or not divisible by `x`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Denom {
    factors: BTreeMap<PolyExp, u32>,
}

/// Writes `f = c·e^{μx}·x^k·core` with `core` normalized. Returns
/// `(c·e^{μx}, k, core)`.
fn normalize(f: &PolyExp) -> Result<(PolyExp, usize, PolyExp)> {
    let mu = f.min_exponent().ok_or(Error::DivisionByZero)?.clone();
    let k = f.x_valuation();
    let lowest = f.poly_at(&mu).unwrap();
    let c = lowest.lc().unwrap().clone();
    let core = f.divide_x_power(k).shift_exponents(&-&mu).scale(&c.inv()?);
    Ok((PolyExp::monomial(c, 0, mu), k, core))
}

impl Denom {
    pub fn one() -> Self {
        Denom { factors: BTreeMap::new() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&PolyExp, u32)> {
        self.factors.iter().map(|(f, e)| (f, *e))
    }

    /// Splits `f` into a unit and a denominator: `f = unit · denom`.
    pub fn split(f: &PolyExp) -> Result<(PolyExp, Denom)> {
        let (unit, k, core) = normalize(f)?;
        let mut d = Denom::one();
        if k > 0 {
            d.insert_normalized(PolyExp::x(), k as u32);
        }
        if !core.is_one() {
            d.insert(core, 1);
        }
        Ok((unit, d))
    }

    /// Inserts an already normalized factor, splitting it against existing
    /// factors when one divides the other.
    fn insert(&mut self, f: PolyExp, e: u32) {
        if f.is_one() || e == 0 {
            return;
        }
        if let Some(n) = self.factors.get_mut(&f) {
            *n += e;
            return;
        }
        let existing: Vec<PolyExp> = self.factors.keys().cloned().collect();
        for h in existing {
            if h.num_terms() <= f.num_terms() {
                if let Ok(q) = f.exact_div(&h) {
                    *self.factors.get_mut(&h).unwrap() += e;
                    self.insert_unnormalized(&q, e);
                    return;
                }
            } else if let Ok(q) = h.exact_div(&f) {
                let eh = self.factors.remove(&h).unwrap();
                self.factors.insert(f.clone(), e + eh);
                self.insert_unnormalized(&q, eh);
                return;
            }
        }
        self.factors.insert(f, e);
    }

    fn insert_unnormalized(&mut self, q: &PolyExp, e: u32) {
        if q.is_unit() {
            return;
        }
        // Quotients of normalized factors are normalized up to a unit, and the
        // unit is 1 because lowest terms divide lowest terms.
        let (unit, k, core) = normalize(q).expect("nonzero quotient");
        debug_assert!(unit.is_one());
        if k > 0 {
            self.insert_normalized(PolyExp::x(), e * k as u32);
        }
        self.insert(core, e);
    }

    fn insert_normalized(&mut self, f: PolyExp, e: u32) {
        *self.factors.entry(f).or_insert(0) += e;
    }

    /// Single normalized factor `f^e`.
    pub fn factor(f: PolyExp, e: u32) -> Denom {
        let mut d = Denom::one();
        d.insert_normalized(f, e);
        d
    }

    pub fn expand(&self) -> PolyExp {
        self.factors.iter().fold(PolyExp::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Product of the distinct factors.
    pub fn radical(&self) -> PolyExp {
        self.factors.keys().fold(PolyExp::one(), |acc, f| &acc * f)
    }

    pub fn mul(&self, other: &Denom) -> Denom {
        let mut out = self.clone();
        for (f, e) in &other.factors {
            out.insert_normalized(f.clone(), *e);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Denom {
        Denom {
            factors: self.factors.iter().filter(|_| e > 0).map(|(f, k)| (f.clone(), k * e)).collect(),
        }
    }

    /// Factorwise maximum.
    pub fn lcm(&self, other: &Denom) -> Denom {
        let mut out = self.clone();
        for (f, e) in &other.factors {
            let v = out.factors.entry(f.clone()).or_insert(0);
            *v = (*v).max(*e);
        }
        out
    }

    /// Expansion of `self / sub`, where `sub` divides `self` factorwise.
    pub fn cofactor(&self, sub: &Denom) -> PolyExp {
        let mut acc = PolyExp::one();
        for (f, e) in &self.factors {
            let s = sub.factors.get(f).copied().unwrap_or(0);
            debug_assert!(s <= *e);
            if *e > s {
                acc = &acc * &f.pow(e - s);
            }
        }
        acc
    }

    pub fn exponent_of(&self, f: &PolyExp) -> u32 {
        self.factors.get(f).copied().unwrap_or(0)
    }

    /// Removes one power of `f`.
    pub(crate) fn decrement(&mut self, f: &PolyExp) {
        if let Some(e) = self.factors.get_mut(f) {
            *e -= 1;
            if *e == 0 {
                self.factors.remove(f);
            }
        }
    }

    /// Logarithmic-derivative numerator: `D·R·(D⁻¹)′ = −∑ eⱼ fⱼ′ R/fⱼ` where
    /// `R` is the radical. Returns `(R, ∑ eⱼ fⱼ′ R/fⱼ)`.
    pub(crate) fn log_derivative(&self) -> (PolyExp, PolyExp) {
        let fs: Vec<(&PolyExp, u32)> = self.factors().collect();
        let mut sum = PolyExp::zero();
        for (j, (f, e)) in fs.iter().enumerate() {
            let mut term = f.derive().scale(&Gq::from_int(*e as i64));
            for (k, (g, _)) in fs.iter().enumerate() {
                if k != j {
                    term = &term * *g;
                }
            }
            sum = &sum + &term;
        }
        (self.radical(), sum)
    }

    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for (f, e) in &self.factors {
            acc *= f.eval(x)?.powu(*e);
        }
        Ok(acc)
    }
}

/// Divides every numerator by the factors of `den` as far as exact division
/// allows, shrinking `den` accordingly.
pub(crate) fn cancel_common(nums: &mut [PolyExp], den: &mut Denom) {
    if nums.iter().all(|n| n.is_zero()) {
        *den = Denom::one();
        return;
    }
    let fs: Vec<PolyExp> = den.factors.keys().cloned().collect();
    for f in fs {
        while den.exponent_of(&f) > 0 {
            let mut out = Vec::with_capacity(nums.len());
            let mut ok = true;
            for n in nums.iter() {
                match n.exact_div(&f) {
                    Ok(q) => out.push(q),
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            for (n, q) in nums.iter_mut().zip(out) {
                *n = q;
            }
            den.decrement(&f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Poly;

    #[test]
    fn split_extracts_units_and_x_powers() {
        // 2·x²·e^{x}·(1 + e^{2x})
        let f = PolyExp::from_terms([
            (Gq::one(), Poly::from_ints(&[0, 0, 2])),
            (Gq::from_int(3), Poly::from_ints(&[0, 0, 2])),
        ]);
        let (unit, d) = Denom::split(&f).unwrap();
        assert_eq!(unit, PolyExp::monomial(Gq::from_int(2), 0, Gq::one()));
        assert_eq!(&unit * &d.expand(), f);
        assert_eq!(d.exponent_of(&PolyExp::x()), 2);
    }

    #[test]
    fn insert_splits_against_existing_factor() {
        let a = PolyExp::from_terms([(Gq::zero(), Poly::one()), (Gq::one(), Poly::one())]);
        let (_, mut d) = Denom::split(&a).unwrap();
        let (_, d2) = Denom::split(&(&a * &a)).unwrap();
        // a² normalizes to a single factor; inserting it merges into `a`.
        for (f, e) in d2.factors() {
            d.insert(f.clone(), e);
        }
        assert_eq!(d.exponent_of(&a), 3);
    }

    #[test]
    fn cancel_removes_divisible_factors() {
        let a = PolyExp::from_terms([(Gq::zero(), Poly::one()), (Gq::one(), Poly::one())]);
        let mut den = Denom::factor(a.clone(), 2);
        let mut nums = [&a * &PolyExp::x(), a.clone()];
        cancel_common(&mut nums, &mut den);
        assert_eq!(den.exponent_of(&a), 1);
        assert_eq!(nums[1], PolyExp::one());
    }
}
