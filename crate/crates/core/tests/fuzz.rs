use tbisp_core::bispectral_core::*;
use tbisp_core::exactfield::Gq;

/// SplitMix64, enough to pick small random condition spaces reproducibly.
struct Mix(u64);

impl Mix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn pick_point(r: &mut Mix) -> Gq {
    [Gq::zero(), Gq::one(), Gq::from_int(-1), Gq::from_int(2), Gq::from_int(-2), Gq::i()][r.below(6)].clone()
}

fn pick_coeff(r: &mut Mix) -> Gq {
    [Gq::one(), Gq::from_int(-1), Gq::from_int(2), Gq::from_int(-2), Gq::i(), -Gq::i()][r.below(6)].clone()
}

fn random_space(r: &mut Mix) -> Option<ConditionSpace> {
    let dim = 1 + r.below(3);
    let gens = (0..dim)
        .map(|_| {
            let terms = 1 + r.below(2);
            Distribution::from_terms((0..terms).map(|_| (pick_point(r), r.below(3) as u32, pick_coeff(r))))
        })
        .collect();
    let c = ConditionSpace::new(gens).ok()?;
    tau(&c).ok()?;
    (qpoly(&c).degree()? <= 6).then_some(c)
}

#[test]
fn random_spaces_satisfy_both_eigenvalue_equations() {
    let mut r = Mix(7);
    let mut done = 0;
    while done < 20 {
        let Some(c) = random_space(&mut r) else { continue };
        let data = BispectralData::compute(&c, None).unwrap();
        assert!(data.kernel_identity(), "{c:?}");
        assert!(data.lp_identity(&data.q).unwrap().holds, "{c:?}");
        assert!(data.lambda_identity().holds, "{c:?}");
        done += 1;
    }
}

#[test]
fn membership_agrees_with_division() {
    let mut r = Mix(11);
    let mut done = 0;
    while done < 20 {
        let Some(c) = random_space(&mut r) else { continue };
        let coeffs: Vec<Gq> = (0..=r.below(5)).map(|_| Gq::from_int(r.below(5) as i64 - 2)).collect();
        let p = tbisp_core::exactfield::Poly::from_coeffs(coeffs);
        assert_eq!(in_ac(&c, &p), lp(&c, &p).is_ok(), "{c:?} {p:?}");
        done += 1;
    }
}
