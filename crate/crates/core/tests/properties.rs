mod common;

use proptest::prelude::*;

use whitehead::cl1::{self, AbelianInvariants, Cl1Options, RelationVector};
use whitehead::cli::{Cl1Report, Report};
use whitehead::genetic;
use whitehead::subgroups;
use whitehead::sympoly::HomogeneousPoly;
use whitehead::GroupSpec;

fn assert_everywhere(suite: common::Suite) {
    let n = common::run_everywhere(suite).unwrap_or_else(|e| panic!("{e}"));
    assert!(n > 0);
}

#[test]
fn u_vector_conjugation_invariance() {
    assert_everywhere(common::conjugation_invariance);
}

#[test]
fn generator_of_h_is_in_the_kernel() {
    assert_everywhere(common::h_in_kernel);
}

#[test]
fn double_coset_representative_independence() {
    assert_everywhere(common::representative_independence);
}

#[test]
fn enlarging_e_h_keeps_the_relation_subgroup() {
    assert_everywhere(common::enlargement_invariance);
}

#[test]
fn linkage_is_an_equivalence() {
    assert_everywhere(common::linked_transitivity);
}

#[test]
fn one_and_two_sided_genetic_conditions_agree() {
    assert_everywhere(common::genetic_conditions_agree);
}

#[test]
fn index_modes_agree_on_special_groups() {
    for (spec, g) in common::special_groups() {
        common::index_mode_agreement(spec, &g).unwrap_or_else(|e| panic!("{e}"));
    }
}

#[test]
fn cyclic_subgroup_with_redundant_generators() {
    let g = common::group("C(3,2)");
    let x = g.generators()[0];
    let h = subgroups::closure(&g, &[g.pow(x, 3), x]);
    assert!(h.is_cyclic(&g));
    let basis = genetic::genetic_basis(&g).unwrap();
    let v = cl1::u_vector(&g, &basis, &h, x, &Cl1Options::default()).unwrap();
    assert!(v.is_zero());
}

#[test]
fn result_does_not_depend_on_worker_count() {
    let g = common::group("ES(3,2,1)");
    let basis = genetic::genetic_basis(&g).unwrap();
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| cl1::relation_generators(&g, &basis, &Cl1Options::default()).unwrap())
    };
    let one: Vec<Vec<u64>> = run(1).into_iter().map(|r| r.entries).collect();
    let four: Vec<Vec<u64>> = run(4).into_iter().map(|r| r.entries).collect();
    assert_eq!(one, four);
}

#[test]
fn deflation_along_the_frattini_subgroup_of_sampled_groups() {
    for (spec, g) in common::sampled_groups() {
        let d = cl1::deflation(&g, g.frattini(), &Cl1Options::default()).unwrap();
        assert!(d.consistent(3), "{spec}");
    }
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    let p = prop_oneof![Just(3u32), Just(5), Just(7), Just(11)];
    p.prop_flat_map(|p| {
        prop_oneof![
            (1u32..6).prop_map(move |n| GroupSpec::Cyclic { p, n }),
            (1u32..6).prop_map(move |k| GroupSpec::ElementaryAbelian { p, k }),
            Just(GroupSpec::M { p }),
            Just(GroupSpec::N { p }),
            (1u32..4, any::<bool>()).prop_map(move |(r, e)| GroupSpec::ExtraSpecial { p, r, exponent_p2: e }),
            (1u32..4).prop_map(move |r| GroupSpec::AlmostExtraSpecial { p, r }),
        ]
    })
}

fn invariants_strategy() -> impl Strategy<Value = AbelianInvariants> {
    (prop_oneof![Just(3u64), Just(5), Just(7)], proptest::collection::vec(1u32..4, 0..8))
        .prop_map(|(p, exps)| AbelianInvariants::from_cyclic_orders(exps.into_iter().map(|e| p.pow(e)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_spec_display_round_trips(spec in spec_strategy()) {
        let back: GroupSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn invariants_json_round_trips(inv in invariants_strategy()) {
        let json = serde_json::to_string(&inv).unwrap();
        prop_assert_eq!(serde_json::from_str::<AbelianInvariants>(&json).unwrap(), inv);
    }

    #[test]
    fn report_json_round_trips(inv in invariants_strategy(), matches in any::<Option<bool>>()) {
        let report = Report::Cl1(Cl1Report {
            spec: "EA(3,3)".into(),
            order: "3^3".into(),
            basis: whitehead::cli::BasisSummary {
                path: genetic::BasisPath::General,
                entries: 3,
                quotient_orders: vec![],
            },
            gamma_moduli: vec![1, 3, 9],
            relations: 2,
            invariants: inv.clone(),
            expected: Some(inv),
            matches,
        });
        let json = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(serde_json::from_str::<Report>(&json).unwrap(), report);
    }

    #[test]
    fn degree_p_forms_scale_by_lambda(
        forms in proptest::collection::vec(proptest::collection::vec(0u64..3, 3), 3),
        psi in proptest::collection::vec(0u64..3, 3),
        lambda in 0u64..3,
    ) {
        let refs: Vec<&[u64]> = forms.iter().map(|f| f.as_slice()).collect();
        let a = HomogeneousPoly::product_of_linear(3, &refs);
        let scaled: Vec<u64> = psi.iter().map(|&x| x * lambda % 3).collect();
        prop_assert_eq!(a.evaluate(&scaled), lambda * a.evaluate(&psi) % 3);
    }

    #[test]
    fn add_scaled_cancels(
        v in proptest::collection::vec(0u64..9, 5),
        w in proptest::collection::vec(0u64..9, 5),
        k in -20i64..20,
    ) {
        let moduli = [1, 3, 3, 9, 9];
        let reduce = |x: Vec<u64>| RelationVector {
            entries: x.iter().zip(&moduli).map(|(&a, &m)| a % m).collect(),
            source: None,
        };
        let (v, w) = (reduce(v), reduce(w));
        let mut s = v.clone();
        s.add_scaled(&w, k, &moduli);
        s.add_scaled(&w, -k, &moduli);
        prop_assert_eq!(s.entries, v.entries);
    }
}
