//! Images of Gaussian rationals in a prime field, used to certify that an
//! exact quantity is nonzero without big-integer arithmetic.

use num_bigint::Sign;
use num_traits::ToPrimitive;

use super::polyexp::PolyExp;
use super::rational::Rat;
use super::scalar::Gq;

/// A prime with `P ≡ 1 (mod 4)`, so that `−1` has a square root.
const P: u64 = 2_305_843_009_213_693_921;
/// A square root of `−1` modulo `P`, the image of `i`.
const I: u64 = 583_529_827_753_931_384;

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub(crate) fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn int(n: &num_bigint::BigInt) -> u64 {
    let m = (n.magnitude() % P).to_u64().expect("residue below the modulus");
    if n.sign() == Sign::Minus && m != 0 {
        P - m
    } else {
        m
    }
}

fn small(n: i64) -> u64 {
    n.rem_euclid(P as i64) as u64
}

fn rat(r: &Rat) -> Option<u64> {
    let (n, d) = match r {
        Rat::Small(n, d) => (small(*n), small(*d)),
        Rat::Big(b) => (int(b.numer()), int(b.denom())),
    };
    (d != 0).then(|| mul(n, pow(d, P - 2)))
}

/// The image of `g`, or `None` when a denominator vanishes modulo `P`.
pub(crate) fn image(g: &Gq) -> Option<u64> {
    let (re, im) = g.parts();
    Some(add(rat(re)?, mul(I, rat(im)?)))
}

/// `false` only when `∑ cₖ aᵏ` is certainly nonzero.
pub(crate) fn may_vanish(coeffs: &[Gq], a: &Gq) -> bool {
    let Some(at) = image(a) else { return true };
    let mut acc = 0;
    for c in coeffs.iter().rev() {
        let Some(v) = image(c) else { return true };
        acc = add(mul(acc, at), v);
    }
    acc == 0
}

/// `false` only when `∑ cₖ aᵏ` is certainly nonzero, for coefficients in
/// polynomial-exponentials: each monomial `xʲ e^{λx}` gets its own weight.
pub(crate) fn may_vanish_polyexp(coeffs: &[PolyExp], a: &Gq) -> bool {
    let Some(at) = image(a) else { return true };
    let mut acc = 0;
    for c in coeffs.iter().rev() {
        let mut v = 0;
        for (lambda, p) in c.terms() {
            let Some(l) = image(lambda) else { return true };
            let base = add(l, 0x1d87_2b41_d24c_9c3f);
            for (j, cj) in p.coeffs().iter().enumerate() {
                let Some(w) = image(cj) else { return true };
                v = add(v, mul(w, pow(base, 2 * j as u64 + 3)));
            }
        }
        acc = add(mul(acc, at), v);
    }
    acc == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(mul(I, I), P - 1);
        assert_eq!(image(&(&Gq::i() * &Gq::i())), Some(P - 1));
    }

    #[test]
    fn images_are_ring_homomorphic() {
        let a: Gq = "3/7 - 2/5*i".parse().unwrap();
        let b: Gq = "-11/4 + 9*i".parse().unwrap();
        let big = Gq::from_int(i64::MAX) * Gq::from_int(i64::MAX) * a.clone();
        let (ia, ib, ig) = (image(&a).unwrap(), image(&b).unwrap(), image(&big).unwrap());
        assert_eq!(image(&(&a * &b)), Some(mul(ia, ib)));
        assert_eq!(image(&(&a + &b)), Some(add(ia, ib)));
        assert_eq!(ig, mul(mul(small(i64::MAX), small(i64::MAX)), ia));
        assert_eq!(image(&Gq::from_frac(1, P as i64)), None);
    }

    #[test]
    fn vanishing_is_never_missed() {
        // (z − 1/2)(z + i) = z² + (i − 1/2) z − i/2
        let c = [Gq::from_parts((0, 1), (-1, 2)), "-1/2 + i".parse().unwrap(), Gq::one()];
        assert!(may_vanish(&c, &Gq::from_frac(1, 2)));
        assert!(may_vanish(&c, &-Gq::i()));
        assert!(!may_vanish(&c, &Gq::one()));
    }
}
