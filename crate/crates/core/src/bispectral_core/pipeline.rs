//! From a condition space to its wave function and the bispectral pair of
//! operators.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg;
use super::space::{ConditionSpace, Distribution};
use crate::error::{Error, Result};
use crate::exactfield::{Gq, Poly, PolyExp, RatExp};
use crate::opalgebra_x::{kbar_from_kernel, wronskian, DiffOpX, Side};
use crate::opalgebra_z::{b_map, RatFunZ, TransDiffOpZ};
use crate::waveform::{symbol, WaveForm};

/// A certified identity between two wave-form expressions.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub lhs: WaveForm,
    pub rhs: WaveForm,
    pub holds: bool,
}

impl Identity {
    pub fn new(name: impl Into<String>, lhs: WaveForm, rhs: WaveForm) -> Self {
        let holds = lhs == rhs;
        Identity { name: name.into(), lhs, rhs, holds }
    }
}

/// The Wronskian of `c_i(e^{xz})` over the basis.
pub fn tau(c: &ConditionSpace) -> Result<PolyExp> {
    let w = wronskian(&c.kernel_functions())?;
    if w.is_zero() {
        return Err(Error::Degenerate("the functions c_i(e^{xz}) are linearly dependent".into()));
    }
    Ok(w)
}

/// The operator with kernel spanned by `c_i(e^{xz})` and leading coefficient `τ`.
pub fn kbar(c: &ConditionSpace) -> Result<DiffOpX> {
    kbar_from_kernel(&c.kernel_functions())
}

fn z_power(n: usize) -> Poly {
    Poly::monomial(Gq::one(), n)
}

fn wave_from_kbar(kb: &DiffOpX, tau: &PolyExp, n: usize) -> Result<WaveForm> {
    let inv_tau = RatExp::new(PolyExp::one(), tau)?;
    let inv_zn = RatFunZ::with_roots(Poly::one(), [(Gq::zero(), n as u32)]);
    Ok(symbol(kb)?.scale(&inv_tau, &inv_zn).reduce())
}

/// `ψ_C = z⁻ⁿ τ⁻¹ K̄ e^{xz}`.
pub fn wavefunction(c: &ConditionSpace) -> Result<WaveForm> {
    let t = tau(c)?;
    wave_from_kbar(&kbar(c)?, &t, c.dim())
}

/// `∏ (z − λ)^{m_λ + 1}` over the support.
pub fn qpoly(c: &ConditionSpace) -> Poly {
    q_roots(c).iter().fold(Poly::one(), |q, (l, e)| &q * &Poly::linear_power(l, *e))
}

/// The roots of `q_C` with multiplicities.
pub fn q_roots(c: &ConditionSpace) -> Vec<(Gq, u32)> {
    c.support().into_iter().map(|l| {
        let m = c.max_order_at(&l).unwrap_or(0);
        (l, m + 1)
    }).collect()
}

/// Whether `c∘p ∈ C` for every `c ∈ C`.
pub fn in_ac(c: &ConditionSpace, p: &Poly) -> bool {
    c.basis().iter().all(|b| c.contains(&b.compose_poly(p)))
}

/// Basis of `A_C ∩ {deg ≤ d}` in reduced echelon form on monomial
/// coefficients, lowest degree pivots last.
pub fn ac_basis_up_to_degree(c: &ConditionSpace, d: usize) -> Vec<Poly> {
    // column k carries the reductions of c_i∘z^k
    let cols: Vec<Vec<Distribution>> = (0..=d)
        .map(|k| c.basis().iter().map(|b| c.reduce(&b.compose_poly(&z_power(k)))).collect())
        .collect();
    let mut keys = alloc::collections::BTreeSet::new();
    for col in &cols {
        for r in col {
            for (l, n, _) in r.terms() {
                keys.insert((l.clone(), n));
            }
        }
    }
    let mut rows = Vec::new();
    for i in 0..c.dim() {
        for (l, n) in &keys {
            rows.push(cols.iter().map(|col| col[i].coeff(l, *n)).collect());
        }
    }
    let mut basis: Vec<Poly> = linalg::nullspace(rows, d + 1).into_iter().map(Poly::from_coeffs).collect();
    basis.sort_by_key(|p| p.degree());
    basis
}

/// `L_p` with `L_p ψ_C = p(z) ψ_C`, obtained from `K̄∘p(∂) = M∘K̄` as `τ⁻¹∘M∘τ`.
pub fn lp(c: &ConditionSpace, p: &Poly) -> Result<DiffOpX> {
    let kb = kbar(c)?;
    lp_with(&kb, &tau(c)?, p)
}

fn lp_with(kb: &DiffOpX, tau: &PolyExp, p: &Poly) -> Result<DiffOpX> {
    let (m, r) = (kb * &DiffOpX::from_poly_in_d(p)).right_divide(kb)?;
    if !r.is_zero() {
        return Err(Error::NotInRing);
    }
    m.with_function(&RatExp::from(tau.clone()), Side::Conjugate)
}

/// `Q′` with `q_C(∂) = Q′∘K̄`, checked by re-expansion.
fn right_quotient(kb: &DiffOpX, q: &Poly) -> Result<DiffOpX> {
    let l0 = DiffOpX::from_poly_in_d(q);
    let (qp, r) = l0.right_divide(kb)?;
    if !r.is_zero() || &qp * kb != l0 {
        return Err(Error::Internal("q_C(∂) has no right factor K̄".into()));
    }
    Ok(qp)
}

/// The default multiplier: `1` when `Q` already has polynomial-exponential
/// coefficients, otherwise the least power `d^p` of the denominator `d` of
/// `Q` making `Q∘d^p` polynomial-exponential.
fn choose_g(qop: &DiffOpX) -> Result<(PolyExp, DiffOpX)> {
    if let Ok(qb) = qop.certify_polyexp() {
        return Ok((PolyExp::one(), qb));
    }
    let d = qop.den().expand();
    let ord = qop.order().unwrap_or(0);
    let mut g = PolyExp::one();
    for _ in 1..=ord + 1 {
        g = &g * &d;
        if let Ok(qb) = (qop * &DiffOpX::function(g.clone().into())).certify_polyexp() {
            return Ok((g, qb));
        }
    }
    Err(Error::Internal("no power of the denominator certifies Q∘g".into()))
}

/// `(Q̄, g, π)` with `q_C(∂) = Q̄∘π⁻¹∘K̄`, `π = g·τ` and `Q̄` polynomial-exponential.
/// A supplied `g` is used as is and must certify.
pub fn factorize(c: &ConditionSpace, g: Option<&PolyExp>) -> Result<(DiffOpX, PolyExp, PolyExp)> {
    let t = tau(c)?;
    let kb = kbar(c)?;
    factorize_with(&kb, &t, &qpoly(c), g)
}

fn factorize_with(kb: &DiffOpX, tau: &PolyExp, q: &Poly, g: Option<&PolyExp>) -> Result<(DiffOpX, PolyExp, PolyExp)> {
    let qp = right_quotient(kb, q)?;
    // Q = Q′∘τ, so that q_C(∂) = Q∘τ⁻¹∘K̄
    let qop = (&qp * &DiffOpX::function(tau.clone().into())).cancel();
    let (g, qb) = match g {
        Some(g) => {
            if g.is_zero() {
                return Err(Error::Invalid("g must be nonzero".into()));
            }
            let qb = (&qop * &DiffOpX::function(g.clone().into())).certify_polyexp()?;
            (g.clone(), qb)
        }
        None => choose_g(&qop)?,
    };
    let pi = &g * tau;
    // Q̄∘π⁻¹ = Q′ together with Q′∘K̄ = q_C(∂)
    if &qp * &DiffOpX::function(pi.clone().into()) != qb {
        return Err(Error::Internal("q_C(∂) ≠ Q̄∘π⁻¹∘K̄".into()));
    }
    Ok((qb, g, pi))
}

/// `z⁻ⁿ ∘ b(K̄) ∘ b(Q̄) ∘ zⁿ/q` for `q = ∏ (z − a)^e` given by its roots.
pub fn lambda_from_parts(kb: &DiffOpX, qb: &DiffOpX, q_roots: &[(Gq, u32)], n: usize) -> Result<TransDiffOpZ> {
    let left = TransDiffOpZ::function(RatFunZ::with_roots(Poly::one(), [(Gq::zero(), n as u32)]));
    let right = TransDiffOpZ::function(RatFunZ::with_roots(z_power(n), q_roots.iter().cloned()));
    Ok(&(&(&left * &b_map(kb)?) * &b_map(qb)?) * &right)
}

/// The operator in `z` with eigenvalue `π(x)` on `ψ_C`.
pub fn lambda_op(c: &ConditionSpace, g: Option<&PolyExp>) -> Result<TransDiffOpZ> {
    Ok(BispectralData::compute(c, g)?.lambda_op)
}

/// Whether `C` has a basis of distributions each supported at one point.
pub fn is_point_supported(c: &ConditionSpace) -> bool {
    let keys = c.keys();
    let n = c.dim();
    let mut total = 0;
    for l in c.support() {
        let cols: Vec<&(Gq, u32)> = keys.iter().filter(|(m, _)| *m != l).collect();
        let rows: Vec<Vec<Gq>> = c.basis().iter().map(|b| cols.iter().map(|(m, k)| b.coeff(m, *k)).collect()).collect();
        total += n - linalg::rank(rows, cols.len());
    }
    total == n
}

/// Every output of the construction for one condition space.
#[derive(Clone, Debug)]
pub struct BispectralData {
    pub space: ConditionSpace,
    pub tau: PolyExp,
    pub kbar: DiffOpX,
    pub psi: WaveForm,
    pub q: Poly,
    pub qbar: DiffOpX,
    pub g: PolyExp,
    pub pi: PolyExp,
    pub lambda_op: TransDiffOpZ,
}

impl BispectralData {
    /// Runs the construction; `g` overrides the default multiplier.
    pub fn compute(c: &ConditionSpace, g: Option<&PolyExp>) -> Result<Self> {
        let tau = tau(c)?;
        let kb = kbar(c)?;
        let psi = wave_from_kbar(&kb, &tau, c.dim())?;
        let q = qpoly(c);
        let (qbar, g, pi) = factorize_with(&kb, &tau, &q, g)?;
        let lambda_op = lambda_from_parts(&kb, &qbar, &q_roots(c), c.dim())?;
        Ok(BispectralData { space: c.clone(), tau, kbar: kb, psi, q, qbar, g, pi, lambda_op })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `L_p` for `p ∈ A_C`.
    pub fn lp(&self, p: &Poly) -> Result<DiffOpX> {
        lp_with(&self.kbar, &self.tau, p)
    }

    /// `K̄ c_i(e^{xz}) = 0` for each basis element.
    pub fn kernel_identity(&self) -> bool {
        self.space.kernel_functions().iter().all(|f| self.kbar.apply(f).is_zero())
    }

    /// `L_p ψ = p(z) ψ`.
    pub fn lp_identity(&self, p: &Poly) -> Result<Identity> {
        let l = self.lp(p)?;
        let lhs = self.psi.apply_x(&l);
        let rhs = self.psi.scale(&RatExp::one(), &RatFunZ::from_poly(p.clone()));
        Ok(Identity::new("L_p psi = p(z) psi", lhs, rhs))
    }

    /// `Λ̂ ψ = π(x) ψ`.
    pub fn lambda_identity(&self) -> Identity {
        let lhs = self.psi.apply_z(&self.lambda_op);
        let rhs = self.psi.scale(&RatExp::from(self.pi.clone()), &RatFunZ::one());
        Identity::new("Lambda psi = pi(x) psi", lhs, rhs)
    }

    /// `Λ̂` for the multiplier `g·h`, obtained as `Q̄∘h`.
    pub fn lambda_for_multiple(&self, h: &PolyExp) -> Result<TransDiffOpZ> {
        let qb = (&self.qbar * &DiffOpX::function(h.clone().into())).certify_polyexp()?;
        lambda_from_parts(&self.kbar, &qb, &q_roots(&self.space), self.dim())
    }

    /// Whether `Λ̂_g` and `Λ̂_{g·h}` commute.
    pub fn lambda_family_commute(&self, h: &PolyExp) -> Result<bool> {
        let other = self.lambda_for_multiple(h)?;
        Ok(self.lambda_op.commutator(&other).is_zero())
    }

    /// Iterated commutators linking the two eigenvalue problems.
    pub fn ad_chain(&self, p: &Poly, m_max: usize) -> Result<AdChain> {
        let l = self.lp(p)?;
        let ord = l.order().unwrap_or(0);
        let top = m_max.max(ord + 1);
        let pz = TransDiffOpZ::function(RatFunZ::from_poly(p.clone()));
        let pix = DiffOpX::function(self.pi.clone().into());
        let mut a = pix.clone();
        let mut ah = self.lambda_op.clone();
        let mut b = l.clone();
        let mut bh = pz.clone();
        let mut steps = Vec::new();
        for m in 0..=top {
            if m > 0 {
                a = l.commutator(&a);
                ah = ah.commutator(&pz);
                b = pix.commutator(&b);
                bh = bh.commutator(&self.lambda_op);
            }
            let identities = if m <= m_max {
                vec![
                    Identity::new(format!("A_{m} psi = Ahat_{m} psi"), self.psi.apply_x(&a), self.psi.apply_z(&ah)),
                    Identity::new(format!("B_{m} psi = Bhat_{m} psi"), self.psi.apply_x(&b), self.psi.apply_z(&bh)),
                ]
            } else {
                Vec::new()
            };
            steps.push(AdStep { m, b_zero: b.is_zero(), bhat_zero: bh.is_zero(), a: a.clone(), ahat: ah.clone(), b: b.clone(), bhat: bh.clone(), identities });
        }
        Ok(AdChain { order: ord, m_max, steps })
    }
}

/// One level `m` of the ad-chain.
#[derive(Clone, Debug)]
pub struct AdStep {
    pub m: usize,
    pub a: DiffOpX,
    pub ahat: TransDiffOpZ,
    pub b: DiffOpX,
    pub bhat: TransDiffOpZ,
    pub b_zero: bool,
    pub bhat_zero: bool,
    pub identities: Vec<Identity>,
}

#[derive(Clone, Debug)]
pub struct AdChain {
    /// Order of `L_p`.
    pub order: usize,
    pub m_max: usize,
    pub steps: Vec<AdStep>,
}

impl AdChain {
    /// `B_m = 0` and `B̂_m = 0` for every computed `m` beyond the order of `L_p`.
    pub fn vanishing_holds(&self) -> bool {
        self.steps.iter().filter(|s| s.m > self.order).all(|s| s.b_zero && s.bhat_zero)
    }

    pub fn identities_hold(&self) -> bool {
        self.steps.iter().flat_map(|s| &s.identities).all(|i| i.holds)
    }
}
