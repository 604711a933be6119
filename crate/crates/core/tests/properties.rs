use proptest::prelude::*;

use so32_legendre::algebra::{commutator, lookup};
use so32_legendre::index::is_admissible;
use so32_legendre::transforms::{analyze, synthesize, ChannelSpectrum};
use so32_legendre::{gauss_legendre, CoeffVector, GeneratorName, ModeIndex, SparseOperator, Truncation};

fn generator() -> impl Strategy<Value = GeneratorName> {
    proptest::sample::select(GeneratorName::ALL.to_vec())
}

fn coeff_vector(l_max: i64) -> impl Strategy<Value = CoeffVector<f64>> {
    let t = Truncation::new(l_max).unwrap();
    proptest::collection::vec(-1.0f64..1.0, t.size()).prop_map(move |vals| {
        let mut v = CoeffVector::zeros(t);
        for (md, x) in t.lattice().into_iter().zip(vals) {
            v.set(md, x).unwrap();
        }
        v
    })
}

proptest! {
    #[test]
    fn lattice_is_the_admissible_cone(l_max in 0i64..=50) {
        let t = Truncation::new(l_max).unwrap();
        let lat = t.lattice();
        prop_assert_eq!(lat.len() as i64, (l_max + 1) * (l_max + 1));
        prop_assert!(lat.iter().all(|md| is_admissible(md.l, md.m) && md.l <= l_max));
        prop_assert!(lat.windows(2).all(|w| (w[0].l, w[0].m) < (w[1].l, w[1].m)));
    }

    #[test]
    fn operators_are_linear(g in generator(), a in coeff_vector(6), b in coeff_vector(6), s in -3.0f64..3.0) {
        let op = SparseOperator::generator(g, a.truncation());
        let lhs = op.apply(&a.add_scaled(&b, s).unwrap()).unwrap();
        let rhs = op.apply(&a).unwrap().add_scaled(&op.apply(&b).unwrap(), s).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn images_stay_admissible(g in generator(), l in 0i64..=8, dm in 0i64..=16) {
        let m = dm.min(2 * l) - l;
        match g.action(ModeIndex::new(l, m).unwrap()) {
            Some((img, c)) => {
                prop_assert!(is_admissible(img.l, img.m));
                prop_assert!(g.is_diagonal() || c != 0.0);
            }
            None => prop_assert!(!g.is_diagonal()),
        }
    }

    #[test]
    fn commutators_are_antisymmetric(a in generator(), b in generator()) {
        let t = Truncation::new(7).unwrap();
        let ga = SparseOperator::generator(a, t);
        let gb = SparseOperator::generator(b, t);
        let ab = commutator(&ga, &gb).unwrap();
        let ba = commutator(&gb, &ga).unwrap();
        prop_assert!(ab.max_deviation(&ba.scaled(-1.0), 5).unwrap() < 1e-12);
        if a != b {
            let (id, flipped) = lookup(a, b).unwrap();
            let rhs = id.rhs_operator(t).unwrap().scaled(if flipped { -1.0 } else { 1.0 });
            prop_assert!(ab.max_deviation(&rhs, 5).unwrap() < 1e-12);
        }
    }

    #[test]
    fn band_limited_channels_round_trip(m in -6i64..=6, extra in 0usize..4, coeffs in proptest::collection::vec(-5.0f64..5.0, 13)) {
        let l_max = 12;
        let spec = ChannelSpectrum::from_coeffs(
            m,
            l_max,
            (m.abs()..=l_max).zip(coeffs),
        ).unwrap();
        let rule = gauss_legendre(l_max as usize + 1 + extra).unwrap();
        let back = analyze(&synthesize(&spec, &rule).unwrap(), l_max).unwrap();
        prop_assert!(back.max_abs_diff(&spec) < 1e-11);
    }
}
