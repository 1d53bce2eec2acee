use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use residua::{NormalSection, Params, PermGroup, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group_and_extra() -> impl Strategy<Value = (PermGroup, Vec<Permutation>)> {
    (2usize..=7).prop_flat_map(|n| {
        (
            prop::collection::vec(perm(n), 1..=3),
            prop::collection::vec(perm(n), 1..=3),
        )
            .prop_map(move |(gens, extra)| (PermGroup::new(n, gens).unwrap(), extra))
    })
}

fn closure(gens: &[Permutation], n: usize) -> HashSet<Permutation> {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_and_membership_match_enumeration((g, extra) in group_and_extra()) {
        let all = closure(g.generators(), g.degree());
        prop_assert_eq!(g.order(), &big(all.len()));
        for x in &extra {
            prop_assert_eq!(g.contains(x), all.contains(x));
        }
        for x in all.iter().take(50) {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn normal_closure_is_normal_and_contains_its_seeds((g, extra) in group_and_extra()) {
        let seeds: Vec<_> = extra.iter().filter(|x| g.contains(x)).cloned().collect();
        let n = g.normal_closure(&seeds).unwrap();
        for t in &seeds {
            prop_assert!(n.contains(t));
        }
        for a in n.generators() {
            for b in g.generators() {
                prop_assert!(n.contains(&a.conjugate(b)));
            }
        }
    }

    #[test]
    fn agemo_quotient_is_elementary_abelian((g, _) in group_and_extra(), pi in 0usize..3) {
        let q = [2u64, 3, 5][pi];
        let a = g.agemo_derived(q, &g).unwrap();
        for x in g.generators() {
            prop_assert!(a.contains(&x.pow(q)));
            for y in g.generators() {
                prop_assert!(a.contains(&Permutation::commutator(x, y)));
            }
        }
    }

    #[test]
    fn sylow_is_a_full_p_subgroup((g, _) in group_and_extra()) {
        let p = Params::default();
        for q in g.primes() {
            let s = g.sylow(q, &p).unwrap();
            prop_assert!(s.is_subgroup_of(&g));
            let mut part = BigUint::from(1u32);
            let mut rest = g.order().clone();
            while &rest % q == BigUint::from(0u32) {
                rest /= q;
                part *= q;
            }
            prop_assert_eq!(s.order(), &part);
            for x in s.elements().iter().take(200) {
                let mut o = x.order();
                while o % q == 0 {
                    o /= q;
                }
                prop_assert_eq!(o, 1);
            }
        }
    }

    #[test]
    fn centralizer_section_is_maximal((g, _) in group_and_extra()) {
        prop_assume!(g.order() <= &big(720));
        let p = Params::default();
        let d = g.derived_subgroup();
        for (top, bottom) in [(g.clone(), d.clone()), (d.clone(), PermGroup::trivial(g.degree()))] {
            let sec = NormalSection::new(g.clone(), top.clone(), bottom.clone()).unwrap();
            let c = g.centralizer_section(&sec, &p).unwrap();
            prop_assert!(bottom.is_subgroup_of(&c) && c.is_normal_in(&g));
            let brute = g
                .elements()
                .into_iter()
                .filter(|x| top.generators().iter().all(|h| bottom.contains(&Permutation::commutator(x, h))))
                .count();
            prop_assert_eq!(c.order(), &big(brute));
        }
    }
}
