//! What Hom into O does and does not preserve, checked over the family.

use jacstrata::{enumerate_semigroups, EnumFilter, GammaSemimodule, NumericalSemigroup};
use rayon::prelude::*;

fn family() -> Vec<NumericalSemigroup> {
    enumerate_semigroups(7, 16)
}

fn overring(s: &NumericalSemigroup, j: usize) -> GammaSemimodule {
    let step = &s.normalization_chain().steps[j];
    GammaSemimodule::from_overring(s, step).unwrap()
}

#[test]
fn triple_dual_is_dual() {
    family().par_iter().for_each(|s| {
        for m in GammaSemimodule::enumerate(s, EnumFilter::normalized()) {
            let d = m.dual().module;
            assert_eq!(d.dual().module.dual().module, d, "{s} {:?}", m.below_vec());
        }
    });
}

#[test]
fn reflexive_exactly_on_symmetric_semigroups() {
    family().par_iter().for_each(|s| {
        let reflexive = GammaSemimodule::enumerate(s, EnumFilter::normalized())
            .iter()
            .all(|m| m.dual().module.dual().module == *m);
        assert_eq!(reflexive, s.is_symmetric(), "{s}");
    });
}

#[test]
fn dual_of_the_dualizing_module_is_free_up_to_dualizing() {
    // Hom(W, O) has the same class as O only when W ≅ O.
    family().par_iter().for_each(|s| {
        let w = GammaSemimodule::dualizing(s);
        let free = GammaSemimodule::free(s);
        assert_eq!(w.dual().module == free, s.is_symmetric(), "{s}");
        assert_eq!(free.dual().module, free);
    });
}

#[test]
fn hom_of_overrings_is_a_conductor_ideal() {
    family().par_iter().for_each(|s| {
        let v0 = s.conductor();
        let chain = s.normalization_chain();
        for (j, step) in chain.steps.iter().enumerate() {
            let h = overring(s, j).hom_to_o().unwrap();
            let bound = v0 - step.conductor();
            let expected: Vec<usize> = s
                .elements_below_conductor()
                .iter()
                .copied()
                .filter(|&e| e >= bound)
                .collect();
            assert_eq!(h.below_vec(), expected, "{s} j={j}");
        }
    });
}

#[test]
fn homs_of_overrings_are_the_filtration_ideals() {
    // As sets the two families agree, although the indices do not match.
    family().par_iter().for_each(|s| {
        let chain = s.normalization_chain();
        let mut homs: Vec<Vec<usize>> = (0..chain.len())
            .map(|j| overring(s, j).hom_to_o().unwrap().below_vec())
            .collect();
        homs.sort();
        homs.dedup();
        let mut ideals: Vec<Vec<usize>> = (0..=s.gamma())
            .map(|i| GammaSemimodule::filtration_ideal(s, i).below_vec())
            .collect();
        ideals.sort();
        ideals.dedup();
        assert_eq!(homs, ideals, "{s}");
    });
}

#[test]
fn index_mismatch_example() {
    let s = NumericalSemigroup::from_generators(&[4, 6, 7, 9]).unwrap();
    let h2 = overring(&s, 2).hom_to_o().unwrap();
    assert_eq!(h2, GammaSemimodule::filtration_ideal(&s, 1));
    assert_ne!(h2, GammaSemimodule::filtration_ideal(&s, 2));
}
