use std::collections::BTreeSet;

use proptest::prelude::*;

use semiforest::elementary::{self, is_elementary_kunz};
use semiforest::forest::{
    self, children, children_semigroup, parent_step, theta, theta_kunz, Scope,
};
use semiforest::kunz::{
    self, is_kunz_vector, kunz_from_apery, kunz_from_semigroup, kunz_invariants,
};
use semiforest::oracle;
use semiforest::{GapSemigroup, KunzVector};

fn visited(g: u32) -> Vec<(u32, KunzVector, KunzVector)> {
    let mut out = Vec::new();
    forest::enumerate_genus::<semiforest::Error, _>(g, |v| {
        out.push((v.frobenius, *v.node, *v.root));
        Ok(())
    })
    .unwrap();
    out
}

#[test]
fn kunz_predicate_matches_genus_tree_for_every_vector() {
    let tree = oracle::oracle_genus_tree(7).unwrap();
    for g in 1..=7u32 {
        let images: BTreeSet<String> = tree[&g]
            .iter()
            .map(|s| kunz_from_semigroup(s).unwrap().to_string())
            .collect();
        let len = 2 * g - 1;
        for word in 0u32..1 << len {
            let coords: Vec<bool> = (0..len).map(|k| word >> k & 1 == 1).collect();
            let text: String = coords.iter().map(|&b| if b { '1' } else { '0' }).collect();
            assert_eq!(is_kunz_vector(&coords), images.contains(&text), "{text}");
        }
    }
}

#[test]
fn kunz_invariants_agree_with_semigroup_computations() {
    for g in 1..=10 {
        for (f, x, _) in visited(g) {
            let s = x.to_semigroup();
            let inv = kunz_invariants(&x);
            assert_eq!(Some(u64::from(inv.frobenius)), s.frobenius());
            assert_eq!(inv.frobenius, f);
            assert_eq!(u64::from(inv.multiplicity), s.multiplicity());
            let window_gens: Vec<u64> = s
                .minimal_generators()
                .into_iter()
                .filter(|&m| m < 2 * u64::from(g))
                .collect();
            assert_eq!(
                inv.minimal_generators
                    .iter()
                    .map(|&m| u64::from(m))
                    .collect::<Vec<_>>(),
                window_gens
            );
            assert_eq!(
                inv.pseudo_frobenius
                    .iter()
                    .map(|&p| u64::from(p))
                    .collect::<Vec<_>>(),
                s.pseudo_frobenius().unwrap()
            );
            assert!(x.is_kunz_of_fg(f));
            assert_eq!(is_elementary_kunz(&x), elementary::is_elementary(&s));
        }
    }
}

#[test]
fn codec_routes_agree() {
    for g in 1..=10 {
        for (_, x, _) in visited(g) {
            let s = kunz::semigroup_from_kunz(&x).unwrap();
            assert_eq!(kunz_from_semigroup(&s).unwrap(), x);
            assert_eq!(kunz_from_apery(&s).unwrap(), x);
            assert_eq!(
                GapSemigroup::from_generators(&x.inverse_generators()).unwrap(),
                s
            );
            assert_eq!(x.to_string().parse::<KunzVector>().unwrap(), x);
        }
    }
}

#[test]
fn theta_on_semigroups_matches_theta_on_vectors() {
    for g in 1..=9 {
        for (f, x, root) in visited(g) {
            assert_eq!(theta_kunz(&x, f).unwrap(), root);
            let projected = theta(&x.to_semigroup(), f).unwrap();
            assert_eq!(kunz_from_semigroup(&projected).unwrap(), root);
            // idempotent
            assert_eq!(theta_kunz(&root, f).unwrap(), root);
        }
    }
}

#[test]
fn semigroup_and_kunz_child_rules_agree() {
    for g in 1..=10 {
        for (f, z, _) in visited(g) {
            let by_kunz: BTreeSet<GapSemigroup> = children(&z, f)
                .iter()
                .map(KunzVector::to_semigroup)
                .collect();
            let by_semigroup: BTreeSet<GapSemigroup> = children_semigroup(&z.to_semigroup(), f)
                .into_iter()
                .collect();
            assert_eq!(by_kunz, by_semigroup, "z = {z}, F = {f}");
        }
    }
}

#[test]
fn every_node_has_one_root_and_the_stack_stays_shallow() {
    for g in 1..=14 {
        let scope = Scope::genus(g).unwrap();
        for class in scope.roots() {
            let mut walk = class.traversal();
            for y in walk.by_ref() {
                let mut node = y;
                let mut steps = 0;
                while let Some(up) = parent_step(&node, class.frobenius) {
                    node = up;
                    steps += 1;
                }
                assert_eq!(node, class.root);
                assert!(steps < g as usize);
            }
            assert!(walk.max_depth() <= g as usize);
        }
    }
}

#[test]
fn parallel_count_matches_sequential() {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    for g in 1..=16 {
        let scope = Scope::genus(g).unwrap();
        assert_eq!(
            pool.install(|| forest::par_count(scope)),
            forest::count(scope),
            "g = {g}"
        );
    }
    let scope = Scope::frobenius(15).unwrap();
    assert_eq!(
        pool.install(|| forest::par_count(scope)),
        forest::count(scope)
    );
}

#[test]
fn frobenius_scope_matches_oracle() {
    let tree = oracle::oracle_genus_tree(11).unwrap();
    for f in 1..=11u32 {
        let expected: BTreeSet<GapSemigroup> = tree
            .values()
            .flatten()
            .filter(|s| s.frobenius() == Some(u64::from(f)))
            .cloned()
            .collect();
        let actual: BTreeSet<GapSemigroup> = forest::collect(Scope::frobenius(f).unwrap())
            .iter()
            .map(KunzVector::to_semigroup)
            .collect();
        assert_eq!(actual, expected, "F = {f}");
    }
}

proptest! {
    #[test]
    fn kunz_predicate_is_closure_plus_weight(g in 1u32..=16, word in any::<u64>()) {
        let len = 2 * g - 1;
        let coords: Vec<bool> = (0..len).map(|k| word >> k & 1 == 1).collect();
        let gaps = (1..=u64::from(len)).filter(|&i| coords[i as usize - 1]);
        let closed = GapSemigroup::from_gaps(gaps).map(|s| s.genus() == u64::from(g)).unwrap_or(false);
        prop_assert_eq!(is_kunz_vector(&coords), closed);
    }

    #[test]
    fn roots_are_fixed_points(g in 1u32..=20, pick in any::<u64>()) {
        let f = g + (pick % u64::from(g)) as u32;
        let total = elementary::count_elementary(f, g).unwrap();
        let seed = elementary::seed_at(f, g, pick % total).unwrap().unwrap();
        let x = seed.kunz();
        prop_assert_eq!(theta_kunz(&x, f).unwrap(), x);
        prop_assert_eq!(parent_step(&x, f), None);
        prop_assert_eq!(theta(&seed.semigroup(), f).unwrap(), seed.semigroup());
    }
}
