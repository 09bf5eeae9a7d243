mod common;

use common::*;
use qforge::classify::{enumerate_si, two_reductive_si, SiOptions};
use qforge::config::RunConfig;
use qforge::congruence::{all_congruences, minimal_nontrivial, monolith, principal_congruence};
use qforge::iso::quandle_isomorphic;
use qforge::mesh::orbit_module;
use qforge::search::{enumerate_medial, random_mesh, MeshFilter};
use qforge::Quandle;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_quandles(seed: u64, count: usize, max: usize) -> Vec<Quandle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = random_mesh(&mut rng, max).sum().unwrap().quandle().clone();
            let mut perm: Vec<usize> = (0..q.size()).collect();
            perm.shuffle(&mut rng);
            q.relabel(&perm).unwrap()
        })
        .collect()
}

#[test]
fn principal_congruence_matches_xn_recursion() {
    let mut qs = random_quandles(1, 500, 8);
    qs.extend((1..=4).flat_map(all_quandle_tables));
    for q in &qs {
        for a in 0..q.size() {
            for b in a + 1..q.size() {
                let fast = principal_congruence(q, a, b).unwrap();
                assert_eq!(fast.blocks(), xn_principal(q, a, b).as_slice());
            }
        }
    }
}

#[test]
fn orbit_modules_are_abelian_groups() {
    for q in random_quandles(2, 200, 8) {
        let orbits = naive_orbits(&q);
        assert_eq!(q.orbits(), orbits);
        for orbit in &orbits {
            let m = orbit_module(&q, orbit[0]).unwrap();
            assert!(is_abelian_group_table(m.addition_table(), m.len()));
            assert_eq!(m.group().order(), orbit.len());
        }
    }
}

#[test]
fn enumeration_matches_brute_force_up_to_order_four() {
    for n in 1..=4 {
        let medial: Vec<Quandle> = all_quandle_tables(n).into_iter().filter(naive_medial).collect();
        let brute = brute_classes(&medial);
        let found = enumerate_medial(n, &MeshFilter::default(), |_| true);
        assert_eq!(found.len(), brute.len(), "order {n}");
        for q in &brute {
            assert!(found.iter().any(|f| brute_isomorphic(f, q)), "order {n}");
        }
    }
}

#[test]
fn medial_counts_up_to_order_six() {
    // numbers of medial quandles of orders 1..6 up to isomorphism
    let expected = [1, 1, 3, 6, 18, 58];
    for (n, &count) in (1..=6).zip(&expected) {
        assert_eq!(enumerate_medial(n, &MeshFilter::default(), |_| true).len(), count, "order {n}");
    }
}

#[test]
fn table_isomorphism_matches_brute_force() {
    let qs = random_quandles(3, 120, 6);
    for pair in qs.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let witness = quandle_isomorphic(a, b);
        assert_eq!(witness.is_some(), brute_isomorphic(a, b));
        if let Some(f) = witness {
            for x in 0..a.size() {
                for y in 0..a.size() {
                    assert_eq!(f[a.op(x, y)], b.op(f[x], f[y]));
                }
            }
        }
    }
}

#[test]
fn monolith_is_the_unique_atom() {
    for q in random_quandles(4, 150, 7) {
        let lattice = all_congruences(&q, 100_000).unwrap();
        let atoms = minimal_nontrivial(&lattice);
        match monolith(&q) {
            Some(m) => {
                assert_eq!(atoms.len(), 1);
                assert_eq!(atoms[0], m);
            }
            None => assert!(atoms.len() != 1 || q.size() < 2),
        }
    }
}

#[test]
fn pruned_two_reductive_search_matches_full_enumeration() {
    let filter = MeshFilter {
        zero_phi: true,
        ..MeshFilter::default()
    };
    for n in 3..=8 {
        let full = enumerate_medial(n, &filter, |q| q.reductivity_degree() == Some(2) && monolith(q).is_some());
        let pruned = two_reductive_si(n);
        assert_eq!(full.len(), pruned.len(), "order {n}");
        for q in &full {
            assert!(pruned.iter().any(|p| quandle_isomorphic(p, q).is_some()), "order {n}");
        }
    }
}

#[test]
fn si_enumeration_matches_filtered_mesh_enumeration() {
    let cfg = RunConfig::default();
    for n in 2..=7 {
        let full = enumerate_medial(n, &MeshFilter::default(), |q| monolith(q).is_some());
        let rep = enumerate_si(n, &SiOptions::default(), &cfg).unwrap();
        assert!(!rep.truncated);
        assert_eq!(rep.representatives.len(), full.len(), "order {n}");
        for q in &full {
            assert!(
                rep.representatives.iter().any(|r| quandle_isomorphic(&r.quandle, q).is_some()),
                "order {n}"
            );
        }
    }
}
