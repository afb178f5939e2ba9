//! The ring of operators `∑ P_λ(z, ∂_z)·S_λ` with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::ratfun::RatFunZ;
use crate::error::Result;
use crate::exactfield::{Gq, Poly};
use crate::opalgebra_x::{binomial, DiffOpX};

/// Normal form: for each shift `λ`, the coefficients `r_{λ,k}(z)` of
/// `∑ₖ r_{λ,k}(z)∂_zᵏ` standing to the left of `S_λ`. Entries whose
/// differential part vanishes are dropped, so structural equality is equality
/// in the ring.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TransDiffOpZ {
    terms: BTreeMap<Gq, Vec<RatFunZ>>,
}

fn trim(v: &mut Vec<RatFunZ>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl TransDiffOpZ {
    pub fn zero() -> Self {
        TransDiffOpZ { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::function(RatFunZ::one())
    }

    /// Multiplication by `r(z)`.
    pub fn function(r: RatFunZ) -> Self {
        Self::term(Gq::zero(), vec![r])
    }

    pub fn z() -> Self {
        Self::function(RatFunZ::z())
    }

    /// `∂_z`.
    pub fn dz() -> Self {
        Self::term(Gq::zero(), vec![RatFunZ::zero(), RatFunZ::one()])
    }

    /// `S_λ : f(z) ↦ f(z+λ)`.
    pub fn shift(lambda: Gq) -> Self {
        Self::term(lambda, vec![RatFunZ::one()])
    }

    /// `(∑ₖ cₖ ∂_zᵏ)·S_λ`.
    pub fn term(lambda: Gq, mut coeffs: Vec<RatFunZ>) -> Self {
        trim(&mut coeffs);
        let mut terms = BTreeMap::new();
        if !coeffs.is_empty() {
            terms.insert(lambda, coeffs);
        }
        TransDiffOpZ { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Gq, &[RatFunZ])> {
        self.terms.iter().map(|(l, v)| (l, v.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shifts occurring with a nonzero coefficient.
    pub fn shifts(&self) -> impl Iterator<Item = &Gq> {
        self.terms.keys()
    }

    /// True when the operator is an ordinary differential operator (`S₀` only).
    pub fn is_shift_free(&self) -> bool {
        self.terms.keys().all(|l| l.is_zero())
    }

    /// Highest power of `∂_z` over all shifts.
    pub fn dz_order(&self) -> Option<usize> {
        self.terms.values().map(|v| v.len() - 1).max()
    }

    fn add_into(&mut self, lambda: &Gq, k: usize, c: &RatFunZ) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(lambda.clone()).or_default();
        if v.len() <= k {
            v.resize(k + 1, RatFunZ::zero());
        }
        v[k] = &v[k] + c;
        trim(v);
        if v.is_empty() {
            self.terms.remove(lambda);
        }
    }

    pub fn scale(&self, c: &Gq) -> Self {
        let mut out = Self::zero();
        for (l, v) in &self.terms {
            for (k, r) in v.iter().enumerate() {
                out.add_into(l, k, &r.scale(c));
            }
        }
        out
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &TransDiffOpZ) -> TransDiffOpZ {
        &(self * other) - &(other * self)
    }
}

impl<'a> Mul<&'a TransDiffOpZ> for &'a TransDiffOpZ {
    type Output = TransDiffOpZ;
    /// `(r ∂ᵏ S_λ)(s ∂ʲ S_μ) = r ∑ᵢ C(k,i) s(z+λ)^{(i)} ∂^{k−i+j} S_{λ+μ}`.
    fn mul(self, o: &TransDiffOpZ) -> TransDiffOpZ {
        let mut out = TransDiffOpZ::zero();
        for (lam, rs) in &self.terms {
            let kmax = rs.len() - 1;
            for (mu, ss) in &o.terms {
                let shifted: Vec<Vec<RatFunZ>> = ss
                    .iter()
                    .map(|s| {
                        let mut d = Vec::with_capacity(kmax + 1);
                        let mut cur = s.shift(lam);
                        for i in 0..=kmax {
                            if i > 0 {
                                cur = cur.derivative();
                            }
                            d.push(cur.clone());
                        }
                        d
                    })
                    .collect();
                let total = lam + mu;
                for (k, r) in rs.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    for i in 0..=k {
                        let c = binomial(k, i);
                        for (j, ds) in shifted.iter().enumerate() {
                            if ds[i].is_zero() {
                                continue;
                            }
                            out.add_into(&total, k - i + j, &(r * &ds[i]).scale(&c));
                        }
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a TransDiffOpZ> for &'a TransDiffOpZ {
    type Output = TransDiffOpZ;
    fn add(self, o: &TransDiffOpZ) -> TransDiffOpZ {
        let mut out = self.clone();
        for (l, v) in &o.terms {
            for (k, r) in v.iter().enumerate() {
                out.add_into(l, k, r);
            }
        }
        out
    }
}

impl<'a> Sub<&'a TransDiffOpZ> for &'a TransDiffOpZ {
    type Output = TransDiffOpZ;
    fn sub(self, o: &TransDiffOpZ) -> TransDiffOpZ {
        self + &-o
    }
}

impl Neg for &TransDiffOpZ {
    type Output = TransDiffOpZ;
    fn neg(self) -> TransDiffOpZ {
        TransDiffOpZ {
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v.iter().map(|r| -r).collect())).collect(),
        }
    }
}

/// The anti-isomorphism `b`: `x^a e^{λx} ∂ʲ ↦ zʲ ∂_zᵃ S_λ`, characterized by
/// `L[e^{xz}] = b(L)[e^{xz}]`. Fails with `NotPolyExp` when a coefficient of
/// `L` is not polynomial-exponential.
pub fn b_map(l: &DiffOpX) -> Result<TransDiffOpZ> {
    let l = l.certify_polyexp()?;
    // (λ, a) ↦ polynomial in z collecting c·zʲ
    let mut acc: BTreeMap<(Gq, usize), Vec<Gq>> = BTreeMap::new();
    for (j, coeff) in l.numerators().iter().enumerate() {
        for (lam, p) in coeff.terms() {
            for (a, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let v = acc.entry((lam.clone(), a)).or_default();
                if v.len() <= j {
                    v.resize(j + 1, Gq::zero());
                }
                v[j] = c.clone();
            }
        }
    }
    let mut out = TransDiffOpZ::zero();
    for ((lam, a), zs) in acc {
        out.add_into(&lam, a, &RatFunZ::from_poly(Poly::from_coeffs(zs)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PolyExp, RatExp};

    fn zf(p: &[i64]) -> TransDiffOpZ {
        TransDiffOpZ::function(RatFunZ::from_poly(Poly::from_ints(p)))
    }

    #[test]
    fn rewrite_rules() {
        let s1 = TransDiffOpZ::shift(Gq::one());
        let z = TransDiffOpZ::z();
        assert_eq!(&s1 * &z, &zf(&[1, 1]) * &s1);
        let dz = TransDiffOpZ::dz();
        assert_eq!(&dz * &z, &(&z * &dz) + &TransDiffOpZ::one());
        let sm1 = TransDiffOpZ::shift(Gq::from_int(-1));
        assert_eq!(&(&z * &s1) * &(&z * &sm1), zf(&[0, 1, 1]));
        assert_eq!(&s1 * &sm1, TransDiffOpZ::one());
    }

    #[test]
    fn b_map_examples() {
        let d = DiffOpX::d();
        assert_eq!(b_map(&d).unwrap(), TransDiffOpZ::z());
        let x = DiffOpX::function(PolyExp::x().into());
        assert_eq!(b_map(&x).unwrap(), TransDiffOpZ::dz());
        let l = Gq::from_frac(-2, 3);
        let el = DiffOpX::function(PolyExp::exp(l.clone()).into());
        assert_eq!(b_map(&el).unwrap(), TransDiffOpZ::shift(l));
        let z = TransDiffOpZ::z();
        let dz = TransDiffOpZ::dz();
        assert_eq!(b_map(&(&x * &d)).unwrap(), &z * &dz);
        assert_eq!(b_map(&(&d * &x)).unwrap(), &(&z * &dz) + &TransDiffOpZ::one());
        let bad = DiffOpX::function(RatExp::new(PolyExp::one(), &PolyExp::x()).unwrap());
        assert!(b_map(&bad).is_err());
    }

    #[test]
    fn differential_subring_closed() {
        let a = &TransDiffOpZ::dz() * &zf(&[1, 0, 2]);
        let b = &zf(&[0, 3]) * &(&TransDiffOpZ::dz() * &TransDiffOpZ::dz());
        assert!((&a * &b).is_shift_free());
    }
}
