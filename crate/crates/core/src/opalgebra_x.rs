//! Differential operators in `x` with rational-exponential coefficients.
//!
//! An operator is stored as `D⁻¹ ∘ ∑ aᵢ(x)∂ⁱ` with polynomial-exponential
//! numerators `aᵢ` and one factored common denominator `D`. All products and
//! divisions work on the numerators; the denominator only records how many
//! powers of which factors have to be divided out.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactfield::{cancel_common, Denom, Gq, Poly, PolyExp, RatExp};

#[derive(Clone, Debug)]
pub struct DiffOpX {
    coeffs: Vec<PolyExp>,
    den: Denom,
}

/// Side for [`DiffOpX::with_function`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `L ∘ g`
    RightCompose,
    /// `g ∘ L`
    LeftCompose,
    /// `g⁻¹ ∘ L ∘ g`
    Conjugate,
}

pub(crate) fn binomial(n: usize, k: usize) -> Gq {
    let mut acc: i64 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i64 / (j + 1) as i64;
    }
    Gq::from_int(acc)
}

impl DiffOpX {
    pub fn zero() -> Self {
        DiffOpX { coeffs: Vec::new(), den: Denom::one() }
    }

    pub fn one() -> Self {
        Self::from_polyexp(vec![PolyExp::one()])
    }

    /// `∂ = d/dx`.
    pub fn d() -> Self {
        Self::from_polyexp(vec![PolyExp::zero(), PolyExp::one()])
    }

    /// Multiplication by a function.
    pub fn function(f: RatExp) -> Self {
        Self::from_coeffs(vec![f])
    }

    /// `p(∂)` for a polynomial `p`.
    pub fn from_poly_in_d(p: &Poly) -> Self {
        Self::from_polyexp(p.coeffs().iter().map(|c| PolyExp::constant(c.clone())).collect())
    }

    /// `∑ cᵢ ∂ⁱ` with polynomial-exponential coefficients.
    pub fn from_polyexp(coeffs: Vec<PolyExp>) -> Self {
        Self::from_parts(coeffs, Denom::one())
    }

    /// `∑ cᵢ ∂ⁱ`, brought over a common denominator.
    pub fn from_coeffs(coeffs: Vec<RatExp>) -> Self {
        let den = coeffs.iter().fold(Denom::one(), |acc, c| acc.lcm(c.den()));
        let nums = coeffs.iter().map(|c| c.num() * &den.cofactor(c.den())).collect();
        Self::from_parts(nums, den)
    }

    pub fn from_parts(mut coeffs: Vec<PolyExp>, den: Denom) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let den = if coeffs.is_empty() { Denom::one() } else { den };
        DiffOpX { coeffs, den }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Numerators of the coefficients, over the common [`Self::den`].
    pub fn numerators(&self) -> &[PolyExp] {
        &self.coeffs
    }

    pub fn den(&self) -> &Denom {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> RatExp {
        match self.coeffs.get(i) {
            Some(c) => RatExp::from_parts(c.clone(), self.den.clone()),
            None => RatExp::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<RatExp> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading_coeff(&self) -> RatExp {
        self.order().map_or_else(RatExp::zero, |n| self.coeff(n))
    }

    /// True when every coefficient is known to be polynomial-exponential.
    pub fn has_polyexp_coeffs(&self) -> bool {
        self.den.is_one()
    }

    /// Cancels denominator factors shared by all numerators.
    pub fn cancel(mut self) -> Self {
        cancel_common(&mut self.coeffs, &mut self.den);
        self
    }

    /// Returns the same operator with a trivial denominator, or `NotPolyExp`
    /// when some coefficient is not polynomial-exponential.
    pub fn certify_polyexp(&self) -> Result<DiffOpX> {
        if self.den.is_one() {
            return Ok(self.clone());
        }
        let c = self.clone().cancel();
        if c.den.is_one() {
            return Ok(c);
        }
        let d = c.den.expand();
        let mut out = Vec::with_capacity(c.coeffs.len());
        for a in &c.coeffs {
            out.push(a.exact_div(&d).map_err(|_| Error::NotPolyExp)?);
        }
        Ok(DiffOpX::from_polyexp(out))
    }

    pub fn scale(&self, c: &Gq) -> Self {
        Self::from_parts(self.coeffs.iter().map(|a| a.scale(c)).collect(), self.den.clone())
    }

    /// `f ∘ self` for a function `f`.
    pub fn left_mul_function(&self, f: &RatExp) -> Self {
        Self::from_parts(
            self.coeffs.iter().map(|a| a * f.num()).collect(),
            self.den.mul(f.den()),
        )
    }

    /// `L ∘ g`, `g ∘ L` or `g⁻¹ ∘ L ∘ g`.
    pub fn with_function(&self, g: &RatExp, side: Side) -> Result<Self> {
        match side {
            Side::LeftCompose => Ok(self.left_mul_function(g)),
            Side::RightCompose => Ok(self * &DiffOpX::function(g.clone())),
            Side::Conjugate => {
                let gi = g.inv()?;
                Ok((&DiffOpX::function(gi) * &(self * &DiffOpX::function(g.clone()))).cancel())
            }
        }
    }

    /// Applies the operator to a polynomial-exponential function.
    pub fn apply(&self, f: &PolyExp) -> RatExp {
        let mut acc = PolyExp::zero();
        let mut df = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                df = df.derive();
            }
            if !a.is_zero() {
                acc = &acc + &(a * &df);
            }
        }
        RatExp::from_parts(acc, self.den.clone()).cancel()
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &DiffOpX) -> DiffOpX {
        (&(self * other) - &(other * self)).cancel()
    }

    /// `self = Q∘divisor + R` with `ord R < ord divisor`.
    pub fn right_divide(&self, divisor: &DiffOpX) -> Result<(DiffOpX, DiffOpX)> {
        let n = divisor.order().ok_or(Error::DivisionByZero)?;
        let lc = divisor.coeffs[n].clone();
        let (p, r, k) = pseudo_right_divide(&self.coeffs, &divisor.coeffs);
        // lc^k·A_num = P∘B_num + R, A = D_A⁻¹A_num, B = D_B⁻¹B_num
        //   ⇒ Q = (D_A·lc^k)⁻¹ (P∘D_B),  R = (D_A·lc^k)⁻¹ R.
        let (unit, lcden) = Denom::split(&lc)?;
        let unit_k = unit.pow(k);
        let den = self.den.mul(&lcden.pow(k));
        let strip = |v: Vec<PolyExp>| -> Result<Vec<PolyExp>> {
            v.into_iter().map(|a| a.exact_div(&unit_k)).collect()
        };
        let mut q = DiffOpX::from_polyexp(strip(p)?);
        if !divisor.den.is_one() {
            q = &q * &DiffOpX::from_polyexp(vec![divisor.den.expand()]);
        }
        let q = DiffOpX::from_parts(q.coeffs, den.clone()).cancel();
        let r = DiffOpX::from_parts(strip(r)?, den).cancel();
        Ok((q, r))
    }

    /// Evaluation of `L` on `e^{xz}` divided by `e^{xz}`, as coefficients of
    /// `z^k`: `(∑ aᵢ zⁱ)` over the operator denominator.
    pub(crate) fn symbol_parts(&self) -> (&[PolyExp], &Denom) {
        (&self.coeffs, &self.den)
    }
}

/// `d⁻¹` and its derivatives: returns `Pₖ` with `(1/D)^{(k)} = Pₖ/(D·Rᵏ)`
/// for `k = 0..=m`, `R` the radical of `D`.
fn inverse_derivatives(d: &Denom, m: usize) -> (Vec<PolyExp>, PolyExp) {
    let (rad, logd) = d.log_derivative();
    let drad = rad.derive();
    let mut out = vec![PolyExp::one()];
    for k in 0..m {
        let p = &out[k];
        let next = &(&p.derive() * &rad) - &(p * &(&logd + &drad.scale(&Gq::from_int(k as i64))));
        out.push(next);
    }
    (out, rad)
}

/// Composition of operators with polynomial-exponential coefficients.
fn compose_numerators(a: &[PolyExp], b: &[PolyExp]) -> Vec<PolyExp> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ra = a.len() - 1;
    // derivatives of each b_j up to order ra
    let derivs: Vec<Vec<PolyExp>> = b
        .iter()
        .map(|bj| {
            let mut v = Vec::with_capacity(ra + 1);
            let mut cur = bj.clone();
            for k in 0..=ra {
                if k > 0 {
                    cur = cur.derive();
                }
                v.push(cur.clone());
            }
            v
        })
        .collect();
    let mut out = vec![PolyExp::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for k in 0..=i {
            let c = binomial(i, k);
            for (j, dj) in derivs.iter().enumerate() {
                let bjk = &dj[k];
                if bjk.is_zero() {
                    continue;
                }
                let t = (ai * bjk).scale(&c);
                let slot = i - k + j;
                out[slot] = &out[slot] + &t;
            }
        }
    }
    out
}

/// Fraction-free right division: `lc(B)^k·A = P∘B + R`. Returns `(P, R, k)`.
fn pseudo_right_divide(a: &[PolyExp], b: &[PolyExp]) -> (Vec<PolyExp>, Vec<PolyExp>, u32) {
    let n = b.len() - 1;
    let lc = &b[n];
    let mut r: Vec<PolyExp> = a.to_vec();
    let mut p: Vec<PolyExp> = Vec::new();
    let mut k = 0u32;
    let trim = |v: &mut Vec<PolyExp>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut r);
    while r.len() > n {
        let s = r.len() - 1;
        let lead = r[s].clone();
        let shift = s - n;
        // exact step when lc divides the leading coefficient
        let (mult, q) = match lead.exact_div(lc) {
            Ok(q) => (None, q),
            Err(_) => (Some(lc.clone()), lead.clone()),
        };
        if let Some(m) = &mult {
            for c in r.iter_mut() {
                *c = &*c * m;
            }
            for c in p.iter_mut() {
                *c = &*c * m;
            }
            k += 1;
        }
        let mut mono = vec![PolyExp::zero(); shift + 1];
        mono[shift] = q.clone();
        let sub = compose_numerators(&mono, b);
        for (i, c) in sub.iter().enumerate() {
            r[i] = &r[i] - c;
        }
        debug_assert!(r[s].is_zero());
        if p.len() <= shift {
            p.resize(shift + 1, PolyExp::zero());
        }
        p[shift] = &p[shift] + &q;
        trim(&mut r);
    }
    trim(&mut p);
    (p, r, k)
}

impl<'a> Mul<&'a DiffOpX> for &'a DiffOpX {
    type Output = DiffOpX;
    fn mul(self, o: &DiffOpX) -> DiffOpX {
        if self.is_zero() || o.is_zero() {
            return DiffOpX::zero();
        }
        if o.den.is_one() {
            return DiffOpX::from_parts(compose_numerators(&self.coeffs, &o.coeffs), self.den.clone());
        }
        // self_num ∘ D⁻¹ = (D·Rʳ)⁻¹ ∘ ∑ aᵢ C(i,k) Pₖ R^{r−k} ∂^{i−k}
        let r = self.coeffs.len() - 1;
        let (ps, rad) = inverse_derivatives(&o.den, r);
        let radpows: Vec<PolyExp> = (0..=r).map(|j| rad.pow(j as u32)).collect();
        let mut moved = vec![PolyExp::zero(); r + 1];
        for (i, ai) in self.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for k in 0..=i {
                if ps[k].is_zero() {
                    continue;
                }
                let t = (&(ai * &ps[k]) * &radpows[r - k]).scale(&binomial(i, k));
                moved[i - k] = &moved[i - k] + &t;
            }
        }
        let den = self.den.mul(&o.den).mul(&Denom::from_radical(&o.den).pow(r as u32));
        DiffOpX::from_parts(compose_numerators(&moved, &o.coeffs), den)
    }
}

fn add_sub(a: &DiffOpX, b: &DiffOpX, neg: bool) -> DiffOpX {
    let (den, ca, cb) = if a.den == b.den {
        (a.den.clone(), PolyExp::one(), PolyExp::one())
    } else {
        let l = a.den.lcm(&b.den);
        let ca = l.cofactor(&a.den);
        let cb = l.cofactor(&b.den);
        (l, ca, cb)
    };
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).map(|c| if ca.is_one() { c.clone() } else { c * &ca });
        let y = b.coeffs.get(i).map(|c| if cb.is_one() { c.clone() } else { c * &cb });
        let v = match (x, y) {
            (Some(x), Some(y)) => {
                if neg {
                    &x - &y
                } else {
                    &x + &y
                }
            }
            (Some(x), None) => x,
            (None, Some(y)) => {
                if neg {
                    -y
                } else {
                    y
                }
            }
            (None, None) => PolyExp::zero(),
        };
        out.push(v);
    }
    DiffOpX::from_parts(out, den)
}

impl<'a> Add<&'a DiffOpX> for &'a DiffOpX {
    type Output = DiffOpX;
    fn add(self, o: &DiffOpX) -> DiffOpX {
        add_sub(self, o, false)
    }
}

impl<'a> Sub<&'a DiffOpX> for &'a DiffOpX {
    type Output = DiffOpX;
    fn sub(self, o: &DiffOpX) -> DiffOpX {
        add_sub(self, o, true)
    }
}

impl Neg for &DiffOpX {
    type Output = DiffOpX;
    fn neg(self) -> DiffOpX {
        DiffOpX::from_parts(self.coeffs.iter().map(|c| -c).collect(), self.den.clone())
    }
}

impl PartialEq for DiffOpX {
    fn eq(&self, o: &DiffOpX) -> bool {
        if self.den == o.den {
            return self.coeffs == o.coeffs;
        }
        (self - o).is_zero()
    }
}

impl Eq for DiffOpX {}

/// Determinant of the square submatrix on `rows` (all columns), by Laplace
/// expansion along rows with memoization over column subsets.
fn minor(m: &[Vec<PolyExp>], rows: &[usize], ncols: usize) -> PolyExp {
    let mut memo: BTreeMap<u32, PolyExp> = BTreeMap::new();
    fn go(m: &[Vec<PolyExp>], rows: &[usize], depth: usize, mask: u32, ncols: usize, memo: &mut BTreeMap<u32, PolyExp>) -> PolyExp {
        if depth == rows.len() {
            return PolyExp::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = PolyExp::zero();
        let mut pos = 0;
        for j in 0..ncols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let e = &m[rows[depth]][j];
            if !e.is_zero() {
                let sub = go(m, rows, depth + 1, mask & !(1 << j), ncols, memo);
                let t = e * &sub;
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(m, rows, 0, (1u32 << ncols) - 1, ncols, &mut memo)
}

/// Rows `0..=rows-1` of successive derivatives of `fs`.
fn derivative_matrix(fs: &[PolyExp], rows: usize) -> Vec<Vec<PolyExp>> {
    let mut m = Vec::with_capacity(rows);
    let mut cur: Vec<PolyExp> = fs.to_vec();
    for r in 0..rows {
        if r > 0 {
            cur = cur.iter().map(|f| f.derive()).collect();
        }
        m.push(cur.clone());
    }
    m
}

/// Wronskian determinant `Wr(f₁, …, fₙ)`.
pub fn wronskian(fs: &[PolyExp]) -> Result<PolyExp> {
    if fs.is_empty() {
        return Err(Error::Invalid("Wronskian of an empty list".into()));
    }
    let n = fs.len();
    let m = derivative_matrix(fs, n);
    let rows: Vec<usize> = (0..n).collect();
    Ok(minor(&m, &rows, n))
}

/// `K̄ = Wr(f₁, …, fₙ, ·)`: the order-`n` operator with leading coefficient
/// `Wr(f₁, …, fₙ)` whose kernel is spanned by the `fᵢ`, from the cofactor
/// expansion of the bordered Wronskian along its last column.
pub fn kbar_from_kernel(fs: &[PolyExp]) -> Result<DiffOpX> {
    if fs.is_empty() {
        return Ok(DiffOpX::one());
    }
    let n = fs.len();
    let m = derivative_matrix(fs, n + 1);
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let rows: Vec<usize> = (0..=n).filter(|&r| r != i).collect();
        let c = minor(&m, &rows, n);
        coeffs.push(if (i + n) % 2 == 0 { c } else { -c });
    }
    if coeffs[n].is_zero() {
        return Err(Error::Degenerate("kernel functions are linearly dependent".into()));
    }
    Ok(DiffOpX::from_polyexp(coeffs))
}
