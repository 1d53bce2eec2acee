mod common;

use common::{corpus, hereditary_atoms, order};
use residua::formations::nilpotent;
use residua::oracle::{normal_lattice, SubgroupLattice};
use residua::subnormal::{is_f_subnormal, is_k_f_subnormal, is_subnormal};
use residua::Params;

#[test]
fn nilpotent_descent_is_classical_subnormality() {
    let p = Params::default();
    for e in corpus().into_iter().filter(|e| order(&e.group) <= 500) {
        let lat = SubgroupLattice::new(&e.group).unwrap();
        for h in lat.subgroups() {
            let (alg, _) = is_k_f_subnormal(&e.group, h, &nilpotent(), &p).unwrap();
            assert_eq!(
                alg,
                is_subnormal(&e.group, h).unwrap(),
                "{} |H|={}",
                e.name,
                h.order()
            );
        }
    }
}

#[test]
fn plain_implies_k() {
    let p = Params::default();
    for e in corpus().into_iter().filter(|e| order(&e.group) <= 120) {
        let lat = SubgroupLattice::new(&e.group).unwrap();
        for f in hereditary_atoms() {
            for h in lat.subgroups() {
                if is_f_subnormal(&e.group, h, &f, &p).unwrap().0 {
                    assert!(
                        is_k_f_subnormal(&e.group, h, &f, &p).unwrap().0,
                        "{} {} |H|={}",
                        e.name,
                        f.name,
                        h.order()
                    );
                }
            }
        }
    }
}

#[test]
fn descent_chains_strictly_decrease() {
    let p = Params::default();
    for e in corpus().into_iter().filter(|e| order(&e.group) <= 60) {
        let lat = SubgroupLattice::new(&e.group).unwrap();
        for f in hereditary_atoms() {
            for h in lat.subgroups() {
                let (_, t) = is_k_f_subnormal(&e.group, h, &f, &p).unwrap();
                let orders = t.orders();
                assert!(orders.windows(2).all(|w| w[0] > w[1]));
                assert!(orders.len() <= 2 * e.group.degree().max(2) - 2);
                assert!(h.is_subgroup_of(&t.terminal));
            }
        }
    }
}

#[test]
fn sylow_subnormality_persists_in_quotients() {
    let p = Params::default();
    for e in corpus().into_iter().filter(|e| order(&e.group) <= 200) {
        let lat = normal_lattice(&e.group, &p).unwrap();
        for f in hereditary_atoms() {
            for q in e.group.primes() {
                let s = e.group.sylow(q, &p).unwrap();
                if !is_k_f_subnormal(&e.group, &s, &f, &p).unwrap().0 {
                    continue;
                }
                for n in &lat.members {
                    let image = s.join(n);
                    assert!(
                        is_k_f_subnormal(&e.group, &image, &f, &p).unwrap().0,
                        "{} {} p={q} |N|={}",
                        e.name,
                        f.name,
                        n.order()
                    );
                }
            }
        }
    }
}
