use std::sync::Arc;

use proptest::prelude::*;

use hwenv::bqa::Algebra;
use hwenv::catalog;
use hwenv::envelope::{right_envelope, ThinCollection};
use hwenv::format::{parse_algebra, parse_module, print_algebra, print_module};
use hwenv::fuzz::Fuzzer;
use hwenv::homalg::{ext_dim, universal_coextension, universal_extension};
use hwenv::hw::{check_hw, simples, standard_modules, SearchOptions, WeightPoset};
use hwenv::recollement::{recollement_at, RecollementPack};
use hwenv::rep::{is_isomorphic, IsoOptions};
use hwenv::Error;

fn load(name: &str) -> (Arc<Algebra>, WeightPoset) {
    let f = catalog::load(name).unwrap().unwrap();
    (f.build().unwrap(), f.poset().unwrap())
}

#[test]
fn catalog_round_trips_through_the_printer() {
    for (name, _) in catalog::ENTRIES {
        let f = catalog::load(name).unwrap().unwrap();
        let printed = print_algebra(&f.presentation, &f.order);
        let again = parse_algebra(&printed).unwrap();
        assert_eq!(again.presentation, f.presentation, "{name}");
        assert_eq!(again.order, f.order, "{name}");
    }
}

#[test]
fn module_files_round_trip() {
    let (alg, _) = load("diamond");
    let mut fz = Fuzzer::new(5, 20);
    for _ in 0..20 {
        let (_, m) = fz.module(&alg).unwrap();
        let back = parse_module(&alg, &print_module(&m)).unwrap();
        assert_eq!(back.dims(), m.dims());
        assert_eq!(back.maps(), m.maps());
    }
}

#[test]
fn envelope_of_simples_recovers_directed_algebra() {
    // F(simples) is every module, so the relative projectives are the projectives.
    let (alg, _) = load("a2");
    let c = ThinCollection::with_canonical(simples(&alg), alg.vertices().to_vec()).unwrap();
    let env = right_envelope(&c, &SearchOptions::default()).unwrap();
    assert_eq!(env.cartan(), alg.cartan());
    assert!(env.report.verdict);
    assert!(env.transports_match);
}

#[test]
fn non_standarizable_collection_is_rejected() {
    let (alg, _) = load("auslander");
    let err = ThinCollection::with_canonical(simples(&alg), alg.vertices().to_vec()).unwrap_err();
    assert!(
        matches!(err, Error::CyclicRelation(..) | Error::NotStandarizable(_)),
        "{err}"
    );
}

#[test]
fn packs_at_every_weight_verify() {
    for name in ["a2", "auslander", "diamond"] {
        let (alg, poset) = load(name);
        assert!(check_hw(&alg, &poset, &SearchOptions::default()).unwrap().verdict);
        let deltas = standard_modules(&alg, &poset).unwrap();
        let canonical = hwenv::hw::canonical_poset(&deltas, poset.labels().to_vec()).unwrap();
        for l in 0..canonical.len() {
            let pack = recollement_at(&alg, &canonical, l).unwrap();
            let serre = pack.serre_simples();
            assert!(serre.contains(&l));
            assert!(serre.iter().all(|&m| canonical.le(l, m)));
            pack.verify(30, l as u64).unwrap();
        }
    }
}

#[test]
fn j_shriek_of_corner_modules_has_injective_counit() {
    let (alg, _) = load("diamond");
    let pack = RecollementPack::new(&alg, &[0, 2]).unwrap();
    let corner = pack.corner_algebra().unwrap().clone();
    let mut fz = Fuzzer::new(9, 12);
    for _ in 0..15 {
        let (_, n) = fz.module(&corner).unwrap();
        let m = pack.j_shriek(&n).unwrap();
        assert!(pack.counit(&m).unwrap().is_isomorphism());
        assert!(pack.l1_istar(&m).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn universal_constructions_kill_extensions(seed in 0u64..10_000, which in 0usize..3) {
        let name = ["a2", "auslander", "diamond"][which];
        let (alg, _) = load(name);
        let mut fz = Fuzzer::new(seed, 10);
        let (_, q) = fz.module(&alg).unwrap();
        let (_, t) = fz.module(&alg).unwrap();
        let e = ext_dim(&q, &t, 1).unwrap();
        if ext_dim(&t, &t, 1).unwrap() == 0 {
            let r = universal_extension(&q, &t).unwrap();
            prop_assert_eq!(r.ext_dim, e);
            prop_assert_eq!(ext_dim(&r.module, &t, 1).unwrap(), 0);
            prop_assert!(r.inclusion.is_injective() && r.projection.is_surjective());
        }
        if ext_dim(&q, &q, 1).unwrap() == 0 {
            let u = universal_coextension(&t, &q).unwrap();
            prop_assert_eq!(u.ext_dim, e);
            prop_assert_eq!(ext_dim(&q, &u.module, 1).unwrap(), 0);
        }
    }

    #[test]
    fn j_star_after_j_shriek_is_identity(seed in 0u64..10_000) {
        let (alg, _) = load("auslander");
        let pack = RecollementPack::build(&alg, &[0]).unwrap();
        let corner = pack.corner_algebra().unwrap().clone();
        let mut fz = Fuzzer::new(seed, 12);
        let (_, n) = fz.module(&corner).unwrap();
        let back = pack.j_star(&pack.j_shriek(&n).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&back, &n, &IsoOptions::default()).unwrap().is_some());
    }
}
