use num_complex::Complex64;
use proptest::prelude::*;

use tbisp_core::bispectral_core::ConditionSpace;
use tbisp_core::exactfield::{Gq, Poly, PolyExp, RatExp};
use tbisp_core::opalgebra_x::{kbar_from_kernel, wronskian, DiffOpX};
use tbisp_core::opalgebra_z::{b_map, RatFunZ, TransDiffOpZ};
use tbisp_core::text::{parse_diffop, parse_polyexp, parse_tdiff, parse_waveform, Render};
use tbisp_core::waveform::{symbol, WaveForm};

fn gq() -> impl Strategy<Value = Gq> {
    (-2i64..=2, -1i64..=1).prop_map(|(a, b)| Gq::from_parts((a, 1), (b, 1)))
}

fn nonzero_gq() -> impl Strategy<Value = Gq> {
    gq().prop_filter("nonzero", |c| !c.is_zero())
}

fn lambda() -> impl Strategy<Value = Gq> {
    prop_oneof![Just(Gq::zero()), Just(Gq::from_int(1)), Just(Gq::from_int(-1)), Just(Gq::from_int(2)), Just(Gq::i())]
}

fn monomial() -> impl Strategy<Value = PolyExp> {
    (nonzero_gq(), 0usize..=2, lambda()).prop_map(|(c, k, l)| PolyExp::monomial(c, k, l))
}

fn polyexp() -> impl Strategy<Value = PolyExp> {
    proptest::collection::vec(monomial(), 1..=3).prop_map(|v| v.into_iter().sum())
}

fn nonzero_polyexp() -> impl Strategy<Value = PolyExp> {
    polyexp().prop_filter("nonzero", |f| !f.is_zero())
}

fn diffop(max_order: usize) -> impl Strategy<Value = DiffOpX> {
    proptest::collection::vec(prop_oneof![Just(PolyExp::zero()), monomial()], 1..=max_order + 1)
        .prop_map(DiffOpX::from_polyexp)
}

fn monic_diffop(max_order: usize) -> impl Strategy<Value = DiffOpX> {
    (proptest::collection::vec(prop_oneof![Just(PolyExp::zero()), monomial()], 0..=max_order - 1), nonzero_polyexp())
        .prop_map(|(mut v, lc)| {
            v.push(lc);
            DiffOpX::from_polyexp(v)
        })
}

fn rfz() -> impl Strategy<Value = RatFunZ> {
    (proptest::collection::vec(-2i64..=2, 1..=3), prop_oneof![Just(vec![1i64]), Just(vec![0, 1]), Just(vec![-1, 1]), Just(vec![2, 0, 1])])
        .prop_map(|(n, d)| RatFunZ::new(Poly::from_ints(&n), Poly::from_ints(&d)).unwrap())
}

fn tdiff() -> impl Strategy<Value = TransDiffOpZ> {
    proptest::collection::vec((lambda(), 0usize..=2, rfz()), 1..=3).prop_map(|ts| {
        ts.into_iter().fold(TransDiffOpZ::zero(), |acc, (l, k, r)| {
            let mut cs = vec![RatFunZ::zero(); k + 1];
            cs[k] = r;
            &acc + &TransDiffOpZ::term(l, cs)
        })
    })
}

fn waveform() -> impl Strategy<Value = WaveForm> {
    (diffop(2), rfz()).prop_map(|(l, r)| symbol(&l).unwrap().scale(&RatExp::one(), &r))
}

fn point() -> impl Strategy<Value = Complex64> {
    (0.5f64..1.5, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polyexp_canonical_sum(fs in proptest::collection::vec(monomial(), 1..6)) {
        let folded = fs.iter().fold(PolyExp::zero(), |a, f| &a + f);
        let mut rev = fs.clone();
        rev.reverse();
        let merged = PolyExp::from_terms(rev.iter().flat_map(|f| f.terms().map(|(l, p)| (l.clone(), p.clone())).collect::<Vec<_>>()));
        prop_assert_eq!(folded, merged);
    }

    #[test]
    fn polyexp_ring_axioms(f in polyexp(), g in polyexp(), h in polyexp()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn polyexp_exact_divide(q in polyexp(), g in nonzero_polyexp()) {
        let f = &q * &g;
        prop_assert_eq!(f.exact_div(&g).unwrap(), q);
        if let Ok(r) = g.exact_div(&f) {
            prop_assert_eq!(&r * &f, g);
        }
    }

    #[test]
    fn polyexp_derivation(f in polyexp(), g in polyexp()) {
        prop_assert_eq!((&f * &g).derive(), &(&f.derive() * &g) + &(&f * &g.derive()));
    }

    #[test]
    fn polyexp_eval_homomorphism(f in polyexp(), g in polyexp(), x in point()) {
        let x = x * 1.3;
        let prod = (&f * &g).eval(x).unwrap();
        prop_assert!(close(prod, f.eval(x).unwrap() * g.eval(x).unwrap()));
        let sum = (&f + &g).eval(x).unwrap();
        prop_assert!(close(sum, f.eval(x).unwrap() + g.eval(x).unwrap()));
    }

    #[test]
    fn ratexp_field_operations(f in polyexp(), g in nonzero_polyexp(), h in nonzero_polyexp()) {
        let a = RatExp::new(f.clone(), &g).unwrap();
        let b = RatExp::new(g.clone(), &h).unwrap();
        prop_assert_eq!(&(&a * &b) * &RatExp::new(h.clone(), &PolyExp::one()).unwrap(), RatExp::from(f.clone()));
        prop_assert_eq!((&a + &b).derive(), &a.derive() + &b.derive());
        prop_assert_eq!((&a * &b).derive(), &(&a.derive() * &b) + &(&a * &b.derive()));
    }

    #[test]
    fn diffop_associativity(a in diffop(2), b in diffop(2), c in diffop(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn diffop_division_reconstruction(a in diffop(4), b in monic_diffop(2)) {
        let (q, r) = a.right_divide(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.order().map_or(true, |o| o < b.order().unwrap()));
    }

    #[test]
    fn diffop_symbol_multiplicative(a in diffop(2), b in diffop(2)) {
        let lhs = symbol(&(&a * &b)).unwrap();
        prop_assert_eq!(lhs, symbol(&b).unwrap().apply_x(&a));
    }

    #[test]
    fn kbar_annihilates_kernel(fs in proptest::collection::vec(monomial(), 1..=3)) {
        if let Ok(w) = wronskian(&fs) {
            if w.is_zero() {
                return Ok(());
            }
            let k = kbar_from_kernel(&fs).unwrap();
            for f in &fs {
                prop_assert!(k.apply(f).is_zero());
            }
            prop_assert_eq!(k.leading_coeff(), RatExp::from(w));
        }
    }

    #[test]
    fn tdiff_associativity(a in tdiff(), b in tdiff(), c in tdiff()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn tdiff_shifts_compose(l in lambda(), m in lambda()) {
        prop_assert_eq!(&TransDiffOpZ::shift(l.clone()) * &TransDiffOpZ::shift(m.clone()), TransDiffOpZ::shift(&l + &m));
    }

    #[test]
    fn tdiff_shift_free_subring_closed(r in rfz(), s in rfz(), j in 0usize..3, k in 0usize..3) {
        let mut a = vec![RatFunZ::zero(); j + 1];
        a[j] = r;
        let mut b = vec![RatFunZ::zero(); k + 1];
        b[k] = s;
        let p = &TransDiffOpZ::term(Gq::zero(), a) * &TransDiffOpZ::term(Gq::zero(), b);
        prop_assert!(p.is_shift_free());
    }

    #[test]
    fn b_defining_relation(l in diffop(3)) {
        let lhs = WaveForm::exz().apply_x(&l);
        prop_assert_eq!(lhs, WaveForm::exz().apply_z(&b_map(&l).unwrap()));
    }

    #[test]
    fn waveform_module_action_z(a in tdiff(), b in tdiff(), w in waveform()) {
        prop_assert_eq!(w.apply_z(&(&a * &b)), w.apply_z(&b).apply_z(&a));
    }

    #[test]
    fn waveform_module_action_x(a in diffop(2), b in diffop(2), w in waveform()) {
        prop_assert_eq!(w.apply_x(&(&a * &b)), w.apply_x(&b).apply_x(&a));
    }

    #[test]
    fn waveform_equality_matches_evaluation(w in waveform(), f in nonzero_polyexp(), r in rfz(), x in point(), z in point()) {
        prop_assume!(!r.is_zero());
        let fx = RatExp::new(f.clone(), &f).unwrap();
        let other = w.scale(&fx, &r).scale(&RatExp::one(), &r.inv().unwrap());
        prop_assert_eq!(&other, &w);
        if let (Ok(a), Ok(b)) = (w.eval(x, z), other.eval(x, z)) {
            prop_assert!((a - b).norm() < 1e-6 * (1.0 + a.norm().max(b.norm())));
        }
    }

    #[test]
    fn text_round_trip(f in polyexp(), l in diffop(3), t in tdiff(), w in waveform(), g in nonzero_polyexp()) {
        prop_assert_eq!(parse_polyexp(&f.text()).unwrap(), f);
        let lr = l.with_function(&RatExp::new(PolyExp::one(), &g).unwrap(), tbisp_core::opalgebra_x::Side::RightCompose).unwrap();
        prop_assert_eq!(parse_diffop(&lr.text()).unwrap(), lr);
        prop_assert_eq!(parse_tdiff(&t.text()).unwrap(), t);
        prop_assert_eq!(parse_waveform(&w.text()).unwrap(), w.clone());
        let wx = w.scale(&RatExp::new(PolyExp::one(), &g).unwrap(), &RatFunZ::one());
        prop_assert_eq!(parse_waveform(&wx.text()).unwrap(), wx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn b_anti_homomorphism_on_monomials(
        a in nonzero_gq(), j in 0usize..=2, la in lambda(), ka in 0usize..=2,
        c in nonzero_gq(), k in 0usize..=2, lc in lambda(), kc in 0usize..=2,
    ) {
        let mono = |c: Gq, j: usize, l: Gq, k: usize| {
            let mut v = vec![PolyExp::zero(); k + 1];
            v[k] = PolyExp::monomial(c, j, l);
            DiffOpX::from_polyexp(v)
        };
        let l = mono(a, j, la, ka);
        let m = mono(c, k, lc, kc);
        prop_assert_eq!(b_map(&(&l * &m)).unwrap(), &b_map(&m).unwrap() * &b_map(&l).unwrap());
    }
}

#[test]
fn condition_space_rejects_dependent_generators() {
    use tbisp_core::bispectral_core::Distribution;
    let d = Distribution::delta(Gq::zero(), 1);
    assert!(ConditionSpace::new(vec![d.clone(), d.scale(&Gq::from_int(2))]).is_err());
    assert!(ConditionSpace::new(vec![]).is_err());
}
