use tbisp_core::bispectral_core::*;
use tbisp_core::exactfield::{Gq, Poly, PolyExp, RatExp};
use tbisp_core::opalgebra_x::DiffOpX;
use tbisp_core::opalgebra_z::RatFunZ;
use tbisp_core::waveform::WaveForm;

fn g(n: i64) -> Gq {
    Gq::from_int(n)
}

fn d(l: i64, n: u32) -> Distribution {
    Distribution::delta(g(l), n)
}

fn cm() -> ConditionSpace {
    ConditionSpace::new(vec![d(0, 1), d(1, 1)]).unwrap()
}

fn soliton() -> ConditionSpace {
    ConditionSpace::new(vec![d(1, 0).add(&d(-1, 0)), d(2, 0).add(&d(0, 0))]).unwrap()
}

fn point() -> ConditionSpace {
    ConditionSpace::new(vec![d(0, 0)]).unwrap()
}

fn pe(terms: &[(i64, usize, i64)]) -> PolyExp {
    terms.iter().map(|&(c, k, l)| PolyExp::monomial(g(c), k, g(l))).sum()
}

fn zp(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

#[test]
fn tau_examples() {
    assert_eq!(tau(&cm()).unwrap(), pe(&[(1, 2, 1)]));
    assert_eq!(tau(&soliton()).unwrap(), pe(&[(1, 0, 3), (2, 0, 1), (1, 0, -1)]));
    let l = Gq::from_frac(1, 2);
    let c = ConditionSpace::new(vec![Distribution::delta(l.clone(), 0)]).unwrap();
    assert_eq!(tau(&c).unwrap(), PolyExp::exp(l));
}

#[test]
fn wavefunction_examples() {
    // (x²z² + 2 + x − (2x + x²)z) / (x²z²)
    let num = vec![pe(&[(2, 0, 0), (1, 1, 0)]), pe(&[(-2, 1, 0), (-1, 2, 0)]), pe(&[(1, 2, 0)])];
    let expected = WaveForm::new(num, &pe(&[(1, 2, 0)]), zp(&[0, 0, 1])).unwrap();
    assert_eq!(wavefunction(&cm()).unwrap(), expected);

    // ((eˣ+e⁻ˣ)²z² − 6 − (3z−2)e^{2x} − 2z + z e^{−2x}) / ((eˣ+e⁻ˣ)²z²)
    let s = pe(&[(1, 0, 2), (2, 0, 0), (1, 0, -2)]);
    let num = vec![
        pe(&[(-6, 0, 0), (2, 0, 2)]),
        pe(&[(-3, 0, 2), (-2, 0, 0), (1, 0, -2)]),
        s.clone(),
    ];
    let expected = WaveForm::new(num, &s, zp(&[0, 0, 1])).unwrap();
    assert_eq!(wavefunction(&soliton()).unwrap(), expected);

    assert_eq!(wavefunction(&point()).unwrap(), WaveForm::exz());
}

#[test]
fn qpoly_examples() {
    assert_eq!(qpoly(&cm()), zp(&[0, 0, 1, -2, 1]));
    assert_eq!(qpoly(&soliton()), zp(&[0, 2, -1, -2, 1]));
    assert_eq!(qpoly(&point()), zp(&[0, 1]));
}

#[test]
fn ring_membership() {
    assert!(!in_ac(&cm(), &zp(&[0, -1, 1])));
    assert!(in_ac(&cm(), &qpoly(&cm())));
    assert!(in_ac(&soliton(), &qpoly(&soliton())));
    assert!(in_ac(&cm(), &zp(&[7])));
    assert_eq!(ac_basis_up_to_degree(&cm(), 1), vec![zp(&[1])]);
    let b4 = ac_basis_up_to_degree(&cm(), 4);
    assert!(b4.iter().all(|p| in_ac(&cm(), p)));
    assert_eq!(b4.len(), 3);
    let coords = |p: &Poly| (0..5).map(|k| p.coeff(k)).collect::<Vec<_>>();
    let mut rows: Vec<_> = b4.iter().map(coords).collect();
    rows.push(coords(&qpoly(&cm())));
    assert_eq!(tbisp_core::bispectral_core::linalg::rank(rows, 5), 3);
    assert_eq!(ac_basis_up_to_degree(&point(), 1).len(), 2);
}

#[test]
fn lp_examples() {
    assert_eq!(lp(&point(), &zp(&[0, 1])).unwrap(), DiffOpX::d());
    for c in [cm(), soliton()] {
        let data = BispectralData::compute(&c, None).unwrap();
        assert!(data.kernel_identity());
        let l = data.lp(&data.q).unwrap();
        assert_eq!(l.order(), Some(4));
        assert!(data.lp_identity(&data.q).unwrap().holds);
    }
    assert!(lp(&cm(), &zp(&[0, -1, 1])).is_err());
}

#[test]
fn factorization_examples() {
    let (qb, gg, pi) = factorize(&point(), None).unwrap();
    assert_eq!((qb, gg, pi), (DiffOpX::one(), PolyExp::one(), PolyExp::one()));
    let l0 = DiffOpX::from_poly_in_d(&qpoly(&cm()));
    for f in [PolyExp::x(), pe(&[(1, 1, 1)])] {
        assert!(l0.apply(&f).is_zero());
    }
    let gs = pe(&[(1, 0, -2), (2, 0, 0), (1, 0, 2)]);
    let (_, _, pi) = factorize(&soliton(), Some(&gs)).unwrap();
    assert_eq!(pi, pe(&[(1, 0, -3), (4, 0, -1), (6, 0, 1), (4, 0, 3), (1, 0, 5)]));
}

#[test]
fn theorem_identity() {
    for c in [point(), cm(), soliton()] {
        let data = BispectralData::compute(&c, None).unwrap();
        assert_eq!(data.pi, &data.g * &data.tau);
        assert!(data.lambda_identity().holds, "{:?}", c);
    }
    let data = BispectralData::compute(&point(), None).unwrap();
    let lhs = WaveForm::exz().apply_z(&data.lambda_op);
    assert_eq!(lhs, WaveForm::exz().scale(&RatExp::one(), &RatFunZ::one()));
}

#[test]
fn point_support() {
    assert!(is_point_supported(&cm()));
    assert!(!is_point_supported(&soliton()));
    assert!(is_point_supported(&point()));
}

#[test]
fn ad_chain_and_family() {
    let data = BispectralData::compute(&cm(), None).unwrap();
    let chain = data.ad_chain(&data.q, 3).unwrap();
    assert_eq!(chain.order, 4);
    assert!(chain.vanishing_holds());
    assert!(chain.identities_hold());
    assert!(data.lambda_family_commute(&PolyExp::one()).unwrap());
    assert!(data.lambda_family_commute(&pe(&[(1, 0, 0), (1, 1, 0)])).unwrap());
    let sol = BispectralData::compute(&soliton(), None).unwrap();
    assert!(sol.lambda_family_commute(&pe(&[(1, 0, 2)])).unwrap());
}


#[test]
fn printed_operators() {
    use tbisp_core::text::{parse_tdiff, Render};
    let verbatim = parse_tdiff("Dz^3 + 3/(z-z^2)*Dz^2 - (6z^2-12z+3)/(z^3(z-1)^2)*Dz + (12z-6)/(z^2(z-1)^2)").unwrap();
    let printed = parse_tdiff("Dz^3 + 3/(z-z^2)*Dz^2 - (6z^2-12z+3)/(z^2(z-1)^2)*Dz + (12z-6)/(z^2(z-1)^2)").unwrap();
    let psi = wavefunction(&cm()).unwrap();
    let x3 = RatExp::from(pe(&[(1, 3, 0)]));
    assert_ne!(psi.apply_z(&verbatim), psi.scale(&x3, &RatFunZ::one()));
    assert_eq!(psi.apply_z(&printed), psi.scale(&x3, &RatFunZ::one()));
    let data = BispectralData::compute(&cm(), Some(&pe(&[(1, 1, -1)]))).unwrap();
    assert_eq!(data.pi, pe(&[(1, 3, 0)]));
    assert_eq!(data.lambda_op, printed, "{}", data.lambda_op.text());

    let printed = parse_tdiff(
        "z^-2*((20z+11z^2-8z^3+z^4)*S[-3] + (60-68z-z^2+8z^3+z^4)*S[5] + (-36+24z+16z^2-16z^3+4z^4)*S[-1] \
         + (-44-88z-8z^2+16z^3+4z^4)*S[3] + (-12-16z-2z^2+6z^4)*S[1])*(z^2/(z^4-2z^3-z^2+2z))",
    )
    .unwrap();
    let psi = wavefunction(&soliton()).unwrap();
    let pi = pe(&[(1, 0, -3), (4, 0, -1), (6, 0, 1), (4, 0, 3), (1, 0, 5)]);
    let lhs = psi.apply_z(&printed);
    let rhs = psi.scale(&RatExp::from(pi), &RatFunZ::one());
    assert_eq!(lhs, rhs, "residual {}", (&lhs - &rhs).text());
    let gs = pe(&[(1, 0, -2), (2, 0, 0), (1, 0, 2)]);
    let sol = lambda_op(&soliton(), Some(&gs)).unwrap();
    assert_eq!(sol, printed, "{}", sol.text());
}
