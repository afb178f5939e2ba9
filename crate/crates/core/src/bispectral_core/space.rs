//! Finitely supported distributions `∑ c·Δ(λ, n)` and condition spaces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::linalg;
use crate::error::{Error, Result};
use crate::exactfield::{Gq, Poly, PolyExp};
use crate::opalgebra_x::binomial;

/// `∑ c·Δ(λ, n)` where `Δ(λ, n)[f] = f⁽ⁿ⁾(λ)`. Keys `(λ, n)` are ordered by
/// `λ` (lexicographic on `(re, im)`) and then by `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Distribution {
    terms: BTreeMap<(Gq, u32), Gq>,
}

impl Distribution {
    pub fn zero() -> Self {
        Distribution { terms: BTreeMap::new() }
    }

    /// `Δ(λ, n)`.
    pub fn delta(lambda: Gq, n: u32) -> Self {
        Self::from_terms([(lambda, n, Gq::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Gq, u32, Gq)>>(it: I) -> Self {
        let mut d = Distribution::zero();
        for (l, n, c) in it {
            d.add_term(l, n, &c);
        }
        d
    }

    fn add_term(&mut self, lambda: Gq, n: u32, c: &Gq) {
        if c.is_zero() {
            return;
        }
        let key = (lambda, n);
        let v = self.terms.entry(key.clone()).or_insert_with(Gq::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Gq, u32, &Gq)> {
        self.terms.iter().map(|((l, n), c)| (l, *n, c))
    }

    pub fn coeff(&self, lambda: &Gq, n: u32) -> Gq {
        self.terms.get(&(lambda.clone(), n)).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> BTreeSet<Gq> {
        self.terms.keys().map(|(l, _)| l.clone()).collect()
    }

    /// Highest derivative order taken at `λ`.
    pub fn order_at(&self, lambda: &Gq) -> Option<u32> {
        self.terms.keys().filter(|(l, _)| l == lambda).map(|(_, n)| *n).max()
    }

    pub fn add(&self, o: &Distribution) -> Distribution {
        let mut out = self.clone();
        for ((l, n), c) in &o.terms {
            out.add_term(l.clone(), *n, c);
        }
        out
    }

    pub fn scale(&self, c: &Gq) -> Distribution {
        Distribution::from_terms(self.terms.iter().map(|((l, n), v)| (l.clone(), *n, v * c)))
    }

    /// `c(e^{xz})`: `Δ(λ, n) ↦ xⁿ e^{λx}`.
    pub fn apply_to_exp(&self) -> PolyExp {
        self.terms
            .iter()
            .map(|((l, n), c)| PolyExp::monomial(c.clone(), *n as usize, l.clone()))
            .sum()
    }

    /// `c ∘ p`, the distribution `g ↦ c(p·g)`, by the Leibniz rule
    /// `Δ(λ, n)∘p = ∑ₖ C(n,k)·p⁽ᵏ⁾(λ)·Δ(λ, n−k)`.
    pub fn compose_poly(&self, p: &Poly) -> Distribution {
        let mut out = Distribution::zero();
        for ((l, n), c) in &self.terms {
            let mut dp = p.clone();
            for k in 0..=*n {
                if k > 0 {
                    dp = dp.derivative();
                }
                if dp.is_zero() {
                    break;
                }
                let v = &(c * &binomial(*n as usize, k as usize)) * &dp.eval(l);
                out.add_term(l.clone(), n - k, &v);
            }
        }
        out
    }
}

/// A finite-dimensional subspace of distributions, stored by a basis in
/// reduced echelon form: each basis element has coefficient 1 at its
/// smallest key, and no other basis element uses that key.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionSpace {
    basis: Vec<Distribution>,
}

impl ConditionSpace {
    /// Spans the given distributions; fails when they are dependent.
    pub fn new(gens: Vec<Distribution>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Invalid("a condition space needs at least one distribution".into()));
        }
        let keys: Vec<(Gq, u32)> = gens
            .iter()
            .flat_map(|d| d.terms.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows: Vec<Vec<Gq>> = gens.iter().map(|d| keys.iter().map(|(l, n)| d.coeff(l, *n)).collect()).collect();
        let (rows, _) = linalg::rref(rows, keys.len());
        if rows.len() < gens.len() {
            return Err(Error::Degenerate("the distributions are linearly dependent".into()));
        }
        let basis = rows
            .into_iter()
            .map(|r| Distribution::from_terms(keys.iter().zip(r).map(|((l, n), c)| (l.clone(), *n, c))))
            .collect();
        Ok(ConditionSpace { basis })
    }

    pub fn basis(&self) -> &[Distribution] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn support(&self) -> BTreeSet<Gq> {
        self.basis.iter().flat_map(|d| d.support()).collect()
    }

    /// `m_λ`: highest derivative taken at `λ` by any element.
    pub fn max_order_at(&self, lambda: &Gq) -> Option<u32> {
        self.basis.iter().filter_map(|d| d.order_at(lambda)).max()
    }

    /// `c_i(e^{xz})` for the basis.
    pub fn kernel_functions(&self) -> Vec<PolyExp> {
        self.basis.iter().map(|d| d.apply_to_exp()).collect()
    }

    fn pivot(d: &Distribution) -> (Gq, u32) {
        d.terms.keys().next().cloned().expect("nonzero basis element")
    }

    /// Reduces `d` modulo the space; zero iff `d ∈ C`.
    pub fn reduce(&self, d: &Distribution) -> Distribution {
        let mut r = d.clone();
        for b in &self.basis {
            let (l, n) = Self::pivot(b);
            let c = r.coeff(&l, n);
            if !c.is_zero() {
                r = r.add(&b.scale(&-c));
            }
        }
        r
    }

    pub fn contains(&self, d: &Distribution) -> bool {
        self.reduce(d).is_zero()
    }

    /// All keys used by the basis, in order.
    pub(crate) fn keys(&self) -> Vec<(Gq, u32)> {
        self.basis
            .iter()
            .flat_map(|d| d.terms.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> Gq {
        Gq::from_int(n)
    }

    #[test]
    fn apply_to_exp_examples() {
        assert_eq!(Distribution::delta(g(1), 0).apply_to_exp(), PolyExp::exp(g(1)));
        assert_eq!(Distribution::delta(g(0), 1).apply_to_exp(), PolyExp::x());
        let d = Distribution::delta(g(1), 0).add(&Distribution::delta(g(-1), 0));
        assert_eq!(d.apply_to_exp(), &PolyExp::exp(g(1)) + &PolyExp::exp(g(-1)));
    }

    #[test]
    fn compose_examples() {
        let p = Poly::from_ints(&[3, 0, 2]);
        assert_eq!(Distribution::delta(g(1), 0).compose_poly(&p), Distribution::delta(g(1), 0).scale(&g(5)));
        assert_eq!(Distribution::delta(g(0), 1).compose_poly(&Poly::var()), Distribution::delta(g(0), 0));
        let z2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(Distribution::delta(g(0), 2).compose_poly(&z2), Distribution::delta(g(0), 0).scale(&g(2)));
    }

    #[test]
    fn echelon_basis_and_membership() {
        let a = Distribution::delta(g(0), 1).add(&Distribution::delta(g(1), 1));
        let b = Distribution::delta(g(1), 1);
        let c = ConditionSpace::new(alloc::vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(c.basis()[0], Distribution::delta(g(0), 1));
        assert!(c.contains(&a.scale(&g(3))));
        assert!(!c.contains(&Distribution::delta(g(0), 0)));
        assert!(ConditionSpace::new(alloc::vec![a.clone(), a.scale(&g(2))]).is_err());
        assert!(ConditionSpace::new(alloc::vec![]).is_err());
    }
}
