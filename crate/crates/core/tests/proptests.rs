use std::collections::BTreeMap;

use jacstrata::deform::{Poly, Rational};
use jacstrata::{
    flat_limit, CreateMode, DeformationFamily, EnumFilter, GammaSemimodule, NumericalSemigroup,
};
use proptest::prelude::*;

fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    prop::collection::vec(2u64..12, 1..5)
        .prop_filter_map("coprime", |g| NumericalSemigroup::from_generators(&g).ok())
}

fn with_module() -> impl Strategy<Value = (NumericalSemigroup, GammaSemimodule)> {
    semigroup().prop_flat_map(|s| {
        let v0 = s.conductor();
        prop::collection::vec(0..v0.max(1), 0..4).prop_map(move |e| {
            let m = GammaSemimodule::create(&s, &e, CreateMode::Generate).unwrap();
            (s.clone(), m)
        })
    })
}

fn family_over() -> impl Strategy<Value = (NumericalSemigroup, DeformationFamily)> {
    semigroup()
        .prop_filter("small conductor", |s| s.conductor() <= 12)
        .prop_flat_map(|s| {
            let v0 = s.conductor();
            let term = (0..v0, 0usize..3, -2i64..=2);
            prop::collection::vec(term, 0..4).prop_map(move |terms| {
                let mut m: BTreeMap<usize, Poly> = BTreeMap::new();
                m.insert(0, Poly::monomial(Rational::from_integer(1.into()), 1));
                for (j, w, c) in terms {
                    m.entry(j)
                        .or_default()
                        .add_assign(&Poly::monomial(Rational::from_integer(c.into()), w));
                }
                // The constant term may cancel; fall back to the unit family.
                let fam = DeformationFamily::from_coeffs(v0, m)
                    .unwrap_or_else(|_| DeformationFamily::one(&s));
                (s.clone(), fam)
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn semigroup_invariants(s in semigroup()) {
        let v0 = s.conductor();
        prop_assert_eq!(s.gamma() + s.delta(), v0);
        prop_assert!(s.check_remarks().all_hold());
        prop_assert!(s.condition_0_6().consistent());
        prop_assert!(!s.contains(v0 - 1));
        for &g in s.generators() {
            // Minimal generators are not sums of two smaller nonzero elements.
            prop_assert!((1..g).all(|a| !(s.contains(a) && s.contains(g - a))));
        }
        let again = NumericalSemigroup::from_generators(
            &s.generators().iter().map(|&g| g as u64).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert_eq!(again, s);
    }

    #[test]
    fn module_invariants((s, m) in with_module()) {
        let v0 = s.conductor();
        for d in m.below().iter() {
            for &g in s.generators() {
                prop_assert!(m.contains(d + g));
            }
        }
        let ranks = m.ranks();
        prop_assert_eq!(ranks.codim + ranks.rk_mod_c, v0);
        let n = m.normalize();
        prop_assert!(n.module.is_normalized());
        prop_assert_eq!(n.shift, m.order());
        let end = m.end_semigroup().semigroup;
        for &e in s.elements_below_conductor() {
            prop_assert!(end.contains(e));
        }
        prop_assert_eq!(m.dual(), n.module.dual());
        let d = m.dual().module;
        prop_assert_eq!(d.dual().module.dual().module, d);
        let orders = m.filtration().orders;
        prop_assert!(orders.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_is_complete((s, m) in with_module()) {
        prop_assume!(s.conductor() <= 14);
        let all = GammaSemimodule::enumerate(&s, EnumFilter::codim(m.ranks().codim));
        prop_assert!(all.binary_search(&m).is_ok());
    }

    #[test]
    fn flat_limits_stay_in_e_and_filt((s, fam) in family_over()) {
        let lim = flat_limit(&s, &fam).unwrap();
        prop_assert_eq!(lim.codim, s.delta());
        prop_assert!(lim.invariant);
        prop_assert!(lim.in_filt);
        if let Some(m) = &lim.module {
            prop_assert_eq!(m.below_vec(), lim.orders.clone());
            prop_assert!(m.in_filt_locus().unwrap());
        }
    }

    #[test]
    fn family_display_round_trips((s, fam) in family_over()) {
        let back = DeformationFamily::parse(&fam.to_string(), &s).unwrap();
        prop_assert_eq!(back, fam);
    }
}
