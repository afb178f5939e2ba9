use alloc::vec;

use super::*;
use crate::exactfield::{Gq, Poly, PolyExp, RatExp};
use crate::opalgebra_x::DiffOpX;
use crate::opalgebra_z::{RatFunZ, TransDiffOpZ};
use crate::waveform::WaveForm;

fn g(n: i64) -> Gq {
    Gq::from_int(n)
}

#[test]
fn polyexp_forms() {
    let f = PolyExp::term(g(1), Poly::from_ints(&[2, 1]));
    assert_eq!(f.text(), "(2 + x)*exp(x)");
    assert_eq!(PolyExp::exp(g(-1)).text(), "exp(-x)");
    assert_eq!(PolyExp::exp(Gq::from_parts((1, 1), (1, 1))).text(), "exp((1+i)*x)");
    assert_eq!(PolyExp::exp(Gq::from_frac(1, 2)).text(), "exp(1/2*x)");
    let h = &PolyExp::monomial(g(-3), 2, g(0)) + &PolyExp::exp(g(2));
    assert_eq!(h.text(), "-3*x^2 + exp(2*x)");
    assert_eq!(f.latex(), "\\left(2 + x\\right)e^{x}");
    for s in ["(2 + x)*exp(x)", "exp(-x)", "exp((1+i)*x)", "-3*x^2 + exp(2*x)", "-i*exp(-1/3*x) + 1/2*x"] {
        let p = parse_polyexp(s).unwrap();
        assert_eq!(p.text(), s);
        assert_eq!(parse_polyexp(&p.text()).unwrap(), p);
    }
}

#[test]
fn implicit_multiplication_and_powers() {
    let a = parse_polyexp("2x^2exp(x)").unwrap();
    assert_eq!(a, PolyExp::monomial(g(2), 2, g(1)));
    assert_eq!(parse_polyexp("(1+x)(1-x)").unwrap(), parse_polyexp("1 - x^2").unwrap());
    assert_eq!(parse_scalar("2^-1").unwrap(), Gq::from_frac(1, 2));
    assert_eq!(parse_scalar("(1+i)^2").unwrap(), Gq::from_parts((0, 1), (2, 1)));
    assert_eq!(parse_ratexp("x^(-2)").unwrap(), RatExp::new(PolyExp::one(), &PolyExp::monomial(g(1), 2, g(0))).unwrap());
    assert!(parse_polyexp("x +").is_err());
    assert!(parse_polyexp("z").is_err());
    assert!(parse_polyexp("exp(x^2)").is_err());
    assert!(parse_polyexp("x)").is_err());
}

#[test]
fn zpoly_forms() {
    let q = Poly::from_ints(&[0, 2, -1, -2, 1]);
    assert_eq!(ZPoly(&q).text(), "z^4-2*z^3-z^2+2*z");
    assert_eq!(parse_zpoly("z^4-2*z^3-z^2+2*z").unwrap(), q);
    assert_eq!(parse_zpoly("z(z-1)(z+1)(z-2)").unwrap(), q);
    assert_eq!(ZPoly(&q).latex(), "z^{4}-2z^{3}-z^{2}+2z");
}

#[test]
fn rational_forms_round_trip() {
    let r = parse_ratexp("(2 + x)/(x^2*(1 + exp(2*x)))").unwrap();
    assert_eq!(parse_ratexp(&r.text()).unwrap(), r);
    let w = parse_ratfunz("(12z-6)/(z^2(z-1)^2)").unwrap();
    assert_eq!(w.text(), "(12*z-6)/(z^2*(z-1)^2)");
    assert_eq!(parse_ratfunz(&w.text()).unwrap(), w);
    let irreducible = parse_ratfunz("1/(z^2+2)").unwrap();
    assert_eq!(parse_ratfunz(&irreducible.text()).unwrap(), irreducible);
    assert_eq!(parse_ratfunz("z/(z-z^2)").unwrap(), RatFunZ::new(Poly::from_ints(&[-1]), Poly::from_ints(&[-1, 1])).unwrap());
}

#[test]
fn operator_forms_round_trip() {
    let l = parse_diffop("D^2 - 2/x^2").unwrap();
    assert_eq!(l.text(), "D^2 - 2/x^2");
    let k = parse_diffop("D - 1 - 2/x").unwrap();
    assert_eq!(parse_diffop(&k.text()).unwrap(), k);
    assert_eq!(parse_diffop("D*x").unwrap(), parse_diffop("x*D + 1").unwrap());
    assert_eq!(parse_diffop("x^2*D/x^2").unwrap(), parse_diffop("D - 2/x").unwrap());
    assert_eq!(DiffOpX::d().latex(), "\\partial");
    assert!(parse_diffop("1/D").is_err());

    let t = parse_tdiff("Dz^3 + 3/(z-z^2)*Dz^2 - (6z^2-12z+3)/(z^3(z-1)^2)*Dz + (12z-6)/(z^2(z-1)^2)").unwrap();
    assert_eq!(parse_tdiff(&t.text()).unwrap(), t);
    assert_eq!(parse_tdiff("Dz*z").unwrap(), parse_tdiff("z*Dz + 1").unwrap());
    assert_eq!(parse_tdiff("S[1]*z").unwrap(), parse_tdiff("(z+1)*S[1]").unwrap());
    let s = parse_tdiff("z^-2*((z^4+1)*S[-3] + 2*S[5])*(z^2/(z^4-2*z^3-z^2+2*z))").unwrap();
    assert_eq!(parse_tdiff(&s.text()).unwrap(), s);
    assert!(s.text().contains("S[-3]"));
    assert_eq!(TransDiffOpZ::dz().text(), "Dz");
}

#[test]
fn waveform_forms_round_trip() {
    let psi = WaveForm::new(
        vec![PolyExp::from_int(6), PolyExp::from_int(-4) * &PolyExp::x(), PolyExp::monomial(g(1), 2, g(0))],
        &PolyExp::monomial(g(1), 2, g(0)),
        Poly::from_ints(&[0, 0, 1]),
    )
    .unwrap();
    let s = psi.text();
    assert_eq!(parse_waveform(&s).unwrap(), psi);
    assert_eq!(parse_waveform("(1 - 4/(x*z) + 6/(x^2*z^2))*exp(x*z)").unwrap(), psi);
    assert_eq!(parse_waveform("exp(x*z)").unwrap(), WaveForm::exz());
    assert_eq!(WaveForm::exz().text(), "exp(x*z)");
    assert!(parse_waveform("exp(x*z)^2").is_err());
    assert!(parse_waveform("exp(x*z)/(x+z)").is_err());
    assert!(psi.latex().ends_with("e^{xz}"));
}
