use proptest::prelude::*;
use qforge::congruence::{
    all_congruences, congruence_from_family, family_from_congruence, pi_congruence, theta_congruence,
};
use qforge::construct::SiqSpec;
use qforge::iso::{are_homologous, DEFAULT_AUT_CAP};
use qforge::mesh::canonical_mesh;
use qforge::search::random_mesh;
use qforge::{AffineMesh, Quandle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mesh_from_seed(seed: u64, max: usize) -> AffineMesh {
    random_mesh(&mut ChaCha8Rng::seed_from_u64(seed), max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sums_are_medial_quandles(seed in any::<u64>()) {
        let q = mesh_from_seed(seed, 10).sum().unwrap().quandle().clone();
        prop_assert!(q.is_medial());
        prop_assert!(Quandle::from_table(&q.table()).is_ok());
    }

    #[test]
    fn canonical_mesh_is_homologous_to_source(seed in any::<u64>()) {
        let m = mesh_from_seed(seed, 10);
        let q = m.sum().unwrap().quandle().clone();
        let (canon, ls) = canonical_mesh(&q).unwrap();
        prop_assert_eq!(ls.quandle(), &q);
        let w = are_homologous(&m, &canon, DEFAULT_AUT_CAP).unwrap();
        prop_assert!(w.is_some_and(|w| w.verify(&m, &canon)));
    }

    #[test]
    fn reductivity_transfers_from_the_mesh(seed in any::<u64>()) {
        let m = mesh_from_seed(seed, 10);
        let q = m.sum().unwrap().quandle().clone();
        prop_assert_eq!(q.reductivity_degree(), m.reductivity_from_phis());
    }

    #[test]
    fn theta_detects_quasi_reductivity(seed in any::<u64>()) {
        let q = mesh_from_seed(seed, 10).sum().unwrap().quandle().clone();
        prop_assert_eq!(!theta_congruence(&q).unwrap().is_diagonal(), q.is_quasi_reductive());
    }

    #[test]
    fn congruences_below_pi_are_submodule_families(seed in any::<u64>()) {
        let q = mesh_from_seed(seed, 8).sum().unwrap().quandle().clone();
        let (_, ls) = canonical_mesh(&q).unwrap();
        let pi = pi_congruence(&q).unwrap();
        for rho in all_congruences(&q, 100_000).unwrap() {
            if rho.is_below(&pi) {
                let fam = family_from_congruence(&ls, &rho).unwrap();
                prop_assert_eq!(congruence_from_family(&ls, &fam).unwrap(), rho);
            } else {
                prop_assert!(family_from_congruence(&ls, &rho).is_err());
            }
        }
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let m = mesh_from_seed(seed, 10);
        let back: AffineMesh = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        let q = m.sum().unwrap().quandle().clone();
        let back_sum = back.sum().unwrap();
        prop_assert_eq!(back_sum.quandle(), &q);
        let back: Quandle = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn cyclic_siq_sizes_and_orbits(k in 0usize..4, gen in 1i64..9) {
        // siq(Z_9, 7, C) with C drawn from distinct cosets of 3Z_9
        let reps = [[gen % 3].to_vec(), vec![0, 1], vec![0, 1, 2], vec![1, 2]];
        let c = &reps[k];
        if gen % 3 == 0 && k == 0 {
            prop_assert!(SiqSpec::cyclic(9, 7, c).is_err());
        } else {
            let spec = SiqSpec::cyclic(9, 7, c).unwrap();
            let q = spec.quandle().unwrap();
            prop_assert_eq!(q.size(), 9 + 3 * c.len());
            prop_assert_eq!(q.orbits().len(), 1 + c.len());
            prop_assert!(q.is_medial());
        }
    }
}
