mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitcode_core::algebra::AbelianGroup;
use splitcode_core::analysis::{
    amd_strong_epsilon, bound_tightness_check, perfect_secrecy, substitution_probability,
    substitution_probability_any_distribution, TightnessOptions,
};
use splitcode_core::constructions::{
    catalog, develop_amd, fill_groups, inflate_gdd, latin_square_td, prime_td, splitting_inflate,
    sts, CatalogEntry,
};
use splitcode_core::designs::{AmdCode, BibdParams, Block, SourceDistribution, SplittingSystem};
use splitcode_core::ordering::{order_development, order_gdd};
use splitcode_core::ratio;
use splitcode_core::verify::{
    check_equitably_ordered, check_gdd, check_group_generated, check_splitting_bibd,
    equitable_necessary_condition, GroupAction,
};

fn system(name: &str) -> SplittingSystem {
    match catalog(name).unwrap() {
        CatalogEntry::System(s) => s,
        _ => unreachable!(),
    }
}

fn amd(name: &str) -> AmdCode {
    match catalog(name).unwrap() {
        CatalogEntry::Amd(a) => a,
        _ => unreachable!(),
    }
}

/// r = (v-1)/((m-1)c) and b = v r / (mc) for lambda = 1.
fn assert_identities(sys: &SplittingSystem) {
    let c = sys.c_splitting_profile().unwrap();
    let p = BibdParams::new(sys.v(), sys.m(), c, 1);
    assert!(p.is_integral());
    let r = p.r.to_integer() as usize;
    assert_eq!(r, (sys.v() - 1) / ((sys.m() - 1) * c));
    assert_eq!(p.b.to_integer() as usize, sys.b());
    assert!(sys.replication().iter().all(|&x| x == r));
    assert_eq!(
        BibdParams::lambda_from_block_count(sys.b(), sys.v(), sys.m(), c),
        ratio(1, 1)
    );
    assert!(equitable_necessary_condition(sys.v(), sys.m(), c));
}

#[test]
fn bibd_identities() {
    for name in ["sbibd9", "sbibd25"] {
        assert_identities(&system(name));
    }
    let og = order_gdd(&latin_square_td(12)).unwrap();
    let f = system("sbibd25");
    let big = fill_groups(
        &splitting_inflate(&og, 2).unwrap(),
        &[f.clone(), f.clone(), f],
    )
    .unwrap();
    assert_identities(&big);
}

#[test]
fn development_orbits() {
    // every development with distinct translates is one semiregular orbit
    for name in ["amd_z9", "amd_z10"] {
        let code = amd(name);
        let dev = develop_amd(&code).unwrap();
        let r =
            check_group_generated(&dev, &GroupAction::translation(code.group()).unwrap()).unwrap();
        assert!(r.ok && r.semiregular);
        assert_eq!(r.orbits, vec![(0..dev.b()).collect::<Vec<_>>()]);
    }
    let g = AbelianGroup::new(vec![2, 6]).unwrap();
    let code = AmdCode::new(g.clone(), vec![vec![0, 1], vec![3], vec![8, 10]]).unwrap();
    let dev = develop_amd(&code).unwrap();
    let r = check_group_generated(&dev, &GroupAction::translation(&g).unwrap()).unwrap();
    assert!(r.ok && r.semiregular);
    assert!(perfect_secrecy(&dev, None).unwrap().universal);
}

#[test]
fn strong_amd_matches_any_distribution() {
    for name in ["amd_z9", "amd_z10"] {
        let code = amd(name);
        let dev = develop_amd(&code).unwrap();
        let strong = amd_strong_epsilon(&code).unwrap().value;
        let any = substitution_probability_any_distribution(&dev)
            .unwrap()
            .value;
        assert_eq!(strong, any, "{name}");
    }
}

#[test]
fn tightness() {
    let opts = TightnessOptions::default();
    let dev = develop_amd(&amd("amd_z10")).unwrap();
    let r = bound_tightness_check(&dev, &SourceDistribution::uniform(4), &opts).unwrap();
    assert!(r.tight && r.all_derangements_equal && !r.exhaustive);
    assert_eq!(r.optimum, ratio(1, 2));

    let skew =
        SourceDistribution::new(vec![ratio(1, 2), ratio(1, 4), ratio(1, 8), ratio(1, 8)]).unwrap();
    let r = bound_tightness_check(&dev, &skew, &opts).unwrap();
    assert!(!r.tight);
    assert!(r.bound < r.optimum);
    assert_eq!(
        r.optimum,
        substitution_probability(&dev, &skew).unwrap().value
    );

    let first = system("acode5");
    let r = bound_tightness_check(&first, &SourceDistribution::uniform(2), &opts).unwrap();
    assert!(r.tight && r.exhaustive && r.all_derangements_equal);
    assert_eq!(r.strategies_checked, 4u64.pow(5));
}

#[test]
fn constructed_gdds_verify() {
    let mut gdds = vec![
        latin_square_td(5),
        prime_td(5, 7).unwrap(),
        sts(13).unwrap(),
        sts(15).unwrap(),
    ];
    gdds.push(inflate_gdd(&sts(7).unwrap(), 3, None).unwrap());
    gdds.push(inflate_gdd(&prime_td(4, 5).unwrap(), 4, None).unwrap());
    for g in &gdds {
        let r = check_gdd(g);
        assert!(r.is_gdd, "{:?}", r.witness);
    }
    // replication 5 is not a multiple of k = 4
    assert!(order_gdd(&prime_td(4, 5).unwrap()).is_err());
    let og = order_gdd(&latin_square_td(6)).unwrap();
    assert!(og.position_counts().iter().flatten().all(|&n| n == 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn developments_preserve_differences(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = rng.gen_range(5..=30);
        let m = rng.gen_range(2..=3);
        let base = common::random_base_block(&mut rng, v, m);
        let group = AbelianGroup::cyclic(v as u64).unwrap();
        let block = Block::new(base.clone());
        let dev = common::cyclic_development(v, m, std::slice::from_ref(&base));
        match order_development(&[block], &group) {
            Ok(sys) => {
                prop_assert_eq!(&sys, &dev);
                let same = base.iter().all(|p| p.len() == base[0].len());
                prop_assert_eq!(check_equitably_ordered(&sys).ok, same);
                let r = check_group_generated(&sys, &GroupAction::translation(&group).unwrap()).unwrap();
                prop_assert!(r.ok && r.semiregular);
            }
            Err(e) => {
                prop_assert!(!dev.repeated_blocks().is_empty(), "{}", e);
            }
        }
    }

    #[test]
    fn substitution_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = rng.gen_range(3..=12);
        let m = rng.gen_range(2..=3.min(v));
        let b = rng.gen_range(1..=8);
        let sys = common::random_system(&mut rng, v, m, b);
        for probs in [common::uniform(m), common::front_loaded(m)] {
            let lib = substitution_probability(&sys, &SourceDistribution::new(probs.clone()).unwrap()).unwrap();
            prop_assert_eq!(lib.value, common::separable_substitution(&sys, &probs));
            if let splitcode_core::analysis::Witness::Strategy(s) = &lib.witness {
                prop_assert_eq!(common::success(&sys, &probs, s), lib.value);
            }
        }
        let r = check_splitting_bibd(&sys);
        prop_assert_eq!(r.is_bibd, r.count_range.0 == r.count_range.1 && r.c.is_some());
    }
}
