//! Brute-force ground truth at desk scale: full normal subgroup lattices,
//! subgroup lattices, definition-level membership, residuals and
//! (K-)𝔉-subnormality, and submodule enumeration.
//!
//! Nothing here is fast. Everything here is meant to be obviously correct.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formations::ChiefFunction;
use crate::group::{NormalSection, PermGroup};
use crate::module_fp::{spin, FpModule, Subspace, Vector};
use crate::params::Params;
use crate::perm::Permutation;
use crate::subnormal::{SubnormalKind, SylowClass};

#[derive(Clone, Debug)]
pub struct NormalLattice {
    pub group: PermGroup,
    /// All normal subgroups (of the whole lattice's range), sorted by order.
    pub members: Vec<PermGroup>,
    /// `covers[i]` lists the members `j` with `members[i] < members[j]` and
    /// nothing strictly between them.
    pub covers: Vec<Vec<usize>>,
}

impl NormalLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, h: &PermGroup) -> Option<usize> {
        self.members.iter().position(|m| m.equals(h))
    }

    pub fn orders(&self) -> Vec<BigUint> {
        self.members.iter().map(|m| m.order().clone()).collect()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.members[i].is_subgroup_of(&self.members[j])
    }

    /// Members covered by `members[j]` (the maximal ones below it).
    pub fn maximal_below(&self, j: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.covers[i].contains(&j))
            .collect()
    }
}

/// Conjugacy class representatives of `g`, by orbit computation.
pub fn class_representatives(g: &PermGroup, params: &Params) -> Result<Vec<Permutation>> {
    g.check_enumerable(params.max_order, "conjugacy class enumeration")?;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen.contains(&x) {
            continue;
        }
        reps.push(x.clone());
        seen.insert(x.clone());
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for s in g.generators() {
                let z = y.conjugate(s);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
    }
    Ok(reps)
}

fn push_unique(members: &mut Vec<PermGroup>, h: PermGroup) -> bool {
    if members.iter().any(|m| m.equals(&h)) {
        return false;
    }
    members.push(h);
    true
}

/// Every normal subgroup of `g` that contains `bottom` (which must be normal).
pub fn normal_subgroups_containing(
    g: &PermGroup,
    bottom: &PermGroup,
    params: &Params,
) -> Result<NormalLattice> {
    if !bottom.is_subgroup_of(g) || !bottom.is_normal_in(g) {
        return Err(Error::Input(
            "lattice bottom is not normal in the group".into(),
        ));
    }
    let reps = class_representatives(g, params)?;
    let mut members = vec![bottom.clone()];
    for x in reps {
        if bottom.contains(&x) {
            continue;
        }
        let n = g.normal_closure_unchecked(&[x]).join(bottom);
        push_unique(&mut members, n);
    }
    // join closure
    let mut i = 1;
    while i < members.len() {
        for j in 1..i {
            let (a, b) = (&members[i], &members[j]);
            if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
                continue;
            }
            let ab = a.join(b);
            push_unique(&mut members, ab);
            if members.len() > params.max_lattice {
                return Err(Error::Resource(format!(
                    "normal lattice exceeds {} members",
                    params.max_lattice
                )));
            }
        }
        i += 1;
    }
    push_unique(&mut members, g.clone());
    members.sort_by(|a, b| a.order().cmp(b.order()));
    let covers = covering_relation(&members);
    Ok(NormalLattice {
        group: g.clone(),
        members,
        covers,
    })
}

pub fn normal_lattice(g: &PermGroup, params: &Params) -> Result<NormalLattice> {
    normal_subgroups_containing(g, &PermGroup::trivial(g.degree()), params)
}

fn covering_relation(members: &[PermGroup]) -> Vec<Vec<usize>> {
    let n = members.len();
    let below: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && members[i].is_subgroup_of(&members[j]))
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]))
                .collect()
        })
        .collect()
}

/// A maximal chain of the lattice from `members[k]` up to the whole group,
/// as indices in increasing order.
fn maximal_chain_from(lat: &NormalLattice, k: usize) -> Vec<usize> {
    let top = lat.len() - 1;
    let mut chain = vec![k];
    let mut cur = k;
    while cur != top {
        cur = *lat.covers[cur]
            .iter()
            .min()
            .expect("every proper member has a cover");
        chain.push(cur);
    }
    chain
}

/// `G/K ∈ C(f)` by evaluating `f` on a chief series through `K` read off the
/// lattice.
pub fn brute_member(
    g: &PermGroup,
    k: &PermGroup,
    f: &ChiefFunction,
    params: &Params,
) -> Result<bool> {
    let lat = normal_subgroups_containing(g, k, params)?;
    brute_member_in(&lat, 0, f, params)
}

fn brute_member_in(
    lat: &NormalLattice,
    k: usize,
    f: &ChiefFunction,
    params: &Params,
) -> Result<bool> {
    let chain = maximal_chain_from(lat, k);
    for w in chain.windows(2) {
        let sec = NormalSection::new_unchecked(&lat.group, &lat.members[w[1]], &lat.members[w[0]]);
        if !f.evaluate(&sec, params)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The smallest normal subgroup with quotient in `C(f)`, by sweeping the
/// whole normal lattice.
pub fn brute_residual(g: &PermGroup, f: &ChiefFunction, params: &Params) -> Result<PermGroup> {
    let lat = normal_lattice(g, params)?;
    let mut good = Vec::new();
    for i in 0..lat.len() {
        if brute_member_in(&lat, i, f, params)? {
            good.push(i);
        }
    }
    let Some(&first) = good.first() else {
        return Err(Error::Internal(
            "no normal subgroup satisfies the formation".into(),
        ));
    };
    for &i in &good {
        if !lat.le(first, i) {
            return Err(Error::Internal(format!(
                "formation residual is not unique for {}",
                f.name
            )));
        }
    }
    Ok(lat.members[first].clone())
}

/// Whether `top/bottom` is a chief factor of `g`.
pub fn is_chief_factor(
    g: &PermGroup,
    top: &PermGroup,
    bottom: &PermGroup,
    params: &Params,
) -> Result<bool> {
    if top.order() == bottom.order() || !bottom.is_subgroup_of(top) {
        return Ok(false);
    }
    let lat = normal_subgroups_containing(g, bottom, params)?;
    let Some(t) = lat.index_of(top) else {
        return Ok(false);
    };
    Ok(lat.covers[0].contains(&t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    NonAbelian,
    Prime(u64),
}

/// `Res_N(N, G)` or `Res_p(N, G)` read off the normal lattice of `G`: the
/// intersection of the maximal `G`-normal subgroups `M < N` whose factor
/// `N/M` is of the requested type.
pub fn brute_layer_residual(
    g: &PermGroup,
    n: &PermGroup,
    layer: Layer,
    params: &Params,
) -> Result<PermGroup> {
    let lat = normal_lattice(g, params)?;
    let top = lat
        .index_of(n)
        .ok_or_else(|| Error::Input("N is not normal in G".into()))?;
    let derived = n.derived_subgroup();
    let chosen: Vec<usize> = lat
        .maximal_below(top)
        .into_iter()
        .filter(|&i| {
            let sec = NormalSection::new_unchecked(g, n, &lat.members[i]);
            match layer {
                Layer::NonAbelian => !derived.is_subgroup_of(&lat.members[i]),
                Layer::Prime(p) => sec.prime_power_base() == Some(p),
            }
        })
        .collect();
    let best = (0..lat.len())
        .rev()
        .find(|&j| lat.le(j, top) && chosen.iter().all(|&i| lat.le(j, i)))
        .expect("the trivial subgroup lies below everything");
    Ok(lat.members[best].clone())
}

/// Every subgroup of a small group, as element bitsets over a
/// multiplication table.
pub struct SubgroupLattice {
    pub group: PermGroup,
    elements: Vec<Permutation>,
    table: Vec<Vec<u16>>,
    inverse: Vec<u16>,
    sets: Vec<Vec<u64>>,
    gens: Vec<Vec<usize>>,
    perm_groups: Vec<PermGroup>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub const SUBGROUP_ORDER_CAP: u64 = 500;

impl SubgroupLattice {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let n = g.check_enumerable(SUBGROUP_ORDER_CAP, "subgroup enumeration")? as usize;
        let elements = g.elements();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        let table: Vec<Vec<u16>> = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&x.mul(y)] as u16).collect())
            .collect();
        let inverse = elements
            .iter()
            .map(|x| index[&x.inverse()] as u16)
            .collect();
        let mut lat = SubgroupLattice {
            group: g.clone(),
            elements,
            table,
            inverse,
            sets: Vec::new(),
            gens: Vec::new(),
            perm_groups: Vec::new(),
        };
        let words = n.div_ceil(64);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let identity = lat
            .elements
            .iter()
            .position(Permutation::is_identity)
            .unwrap();
        let mut cyclic = Vec::new();
        for x in 0..n {
            let set = lat.closure(&[x], words);
            if seen.insert(set.clone()) {
                cyclic.push(lat.sets.len());
                lat.sets.push(set);
                lat.gens.push(if x == identity { vec![] } else { vec![x] });
            }
        }
        let mut i = 0;
        while i < lat.sets.len() {
            for &c in &cyclic {
                if subset(&lat.sets[c], &lat.sets[i]) {
                    continue;
                }
                let mut g2 = lat.gens[i].clone();
                g2.extend(lat.gens[c].iter().copied());
                let set = lat.closure(&g2, words);
                if seen.insert(set.clone()) {
                    lat.sets.push(set);
                    lat.gens.push(g2);
                }
            }
            i += 1;
        }
        let mut order: Vec<usize> = (0..lat.sets.len()).collect();
        order.sort_by_key(|&k| lat.size(k));
        lat.sets = order.iter().map(|&k| lat.sets[k].clone()).collect();
        lat.gens = order.iter().map(|&k| lat.gens[k].clone()).collect();
        lat.perm_groups = lat
            .gens
            .iter()
            .map(|gs| {
                PermGroup::from_gens_unchecked(
                    g.degree(),
                    &gs.iter()
                        .map(|&k| lat.elements[k].clone())
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        Ok(lat)
    }

    fn closure(&self, gens: &[usize], words: usize) -> Vec<u64> {
        let identity = self
            .elements
            .iter()
            .position(Permutation::is_identity)
            .unwrap();
        let mut set = vec![0u64; words];
        set_bit(&mut set, identity);
        let mut queue = vec![identity];
        while let Some(x) = queue.pop() {
            for &s in gens {
                let y = self.table[x][s] as usize;
                if !bit(&set, y) {
                    set_bit(&mut set, y);
                    queue.push(y);
                }
            }
        }
        set
    }

    fn size(&self, k: usize) -> u32 {
        self.sets[k].iter().map(|w| w.count_ones()).sum()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn subgroups(&self) -> &[PermGroup] {
        &self.perm_groups
    }

    pub fn index_of(&self, h: &PermGroup) -> Option<usize> {
        (0..self.len()).find(|&k| {
            self.size(k) as u64 == h.order_u64().unwrap_or(0)
                && self.gens[k].iter().all(|&x| h.contains(&self.elements[x]))
        })
    }

    fn members(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.elements.len()).filter(move |&i| bit(&self.sets[k], i))
    }

    fn conj(&self, x: usize, b: usize) -> usize {
        self.table[self.table[self.inverse[b] as usize][x] as usize][b] as usize
    }

    pub fn is_normal_in(&self, a: usize, b: usize) -> bool {
        self.gens[b].iter().all(|&y| {
            self.gens[a]
                .iter()
                .all(|&x| bit(&self.sets[a], self.conj(x, y)))
        })
    }

    /// `Core_B(A)` as a lattice index.
    pub fn core(&self, a: usize, b: usize) -> usize {
        let mut set = self.sets[a].clone();
        for y in self.members(b) {
            let mut c = vec![0u64; set.len()];
            for x in self.members(a) {
                set_bit(&mut c, self.conj(x, y));
            }
            for (w, cw) in set.iter_mut().zip(&c) {
                *w &= cw;
            }
        }
        self.sets
            .iter()
            .position(|s| *s == set)
            .expect("cores are subgroups")
    }
}

/// Definition-level (K-)𝔉-subnormality by path search in the subgroup
/// lattice, with per-pair memoization.
pub struct BruteSubnormal<'a> {
    pub lattice: &'a SubgroupLattice,
    f: ChiefFunction,
    kind: SubnormalKind,
    params: Params,
    quotient_ok: HashMap<(usize, usize), bool>,
    lattices: HashMap<usize, NormalLattice>,
}

impl<'a> BruteSubnormal<'a> {
    pub fn new(
        lattice: &'a SubgroupLattice,
        f: &ChiefFunction,
        kind: SubnormalKind,
        params: &Params,
    ) -> Self {
        BruteSubnormal {
            lattice,
            f: f.clone(),
            kind,
            params: params.clone(),
            quotient_ok: HashMap::new(),
            lattices: HashMap::new(),
        }
    }

    /// `B/N ∈ C(f)` for `N ⊴ B`.
    fn quotient_in(&mut self, b: usize, n: usize) -> Result<bool> {
        if let Some(&v) = self.quotient_ok.get(&(b, n)) {
            return Ok(v);
        }
        let lat = &self.lattice;
        if !self.lattices.contains_key(&b) {
            let nl = normal_lattice(&lat.perm_groups[b], &self.params)?;
            self.lattices.insert(b, nl);
        }
        let nl = &self.lattices[&b];
        let k = nl
            .index_of(&lat.perm_groups[n])
            .ok_or_else(|| Error::Internal("core missing from the normal lattice".into()))?;
        let v = brute_member_in(nl, k, &self.f, &self.params)?;
        self.quotient_ok.insert((b, n), v);
        Ok(v)
    }

    fn edge(&mut self, a: usize, b: usize) -> Result<bool> {
        let lat = self.lattice;
        if self.kind == SubnormalKind::K && lat.is_normal_in(a, b) {
            return Ok(true);
        }
        let core = lat.core(a, b);
        self.quotient_in(b, core)
    }

    pub fn is_subnormal(&mut self, h: usize) -> Result<bool> {
        let lat = self.lattice;
        let top = lat.len() - 1;
        let mut reached = vec![false; lat.len()];
        reached[h] = true;
        let mut queue = VecDeque::from([h]);
        while let Some(a) = queue.pop_front() {
            if a == top {
                return Ok(true);
            }
            for b in 0..lat.len() {
                if reached[b] || lat.size(b) <= lat.size(a) || !subset(&lat.sets[a], &lat.sets[b]) {
                    continue;
                }
                if self.edge(a, b)? {
                    reached[b] = true;
                    queue.push_back(b);
                }
            }
        }
        Ok(false)
    }
}

pub fn brute_kf_subnormal(
    g: &PermGroup,
    h: &PermGroup,
    f: &ChiefFunction,
    kind: SubnormalKind,
    params: &Params,
) -> Result<bool> {
    let lat = SubgroupLattice::new(g)?;
    let idx = lat
        .index_of(h)
        .ok_or_else(|| Error::Input("H is not a subgroup of G".into()))?;
    BruteSubnormal::new(&lat, f, kind, params).is_subnormal(idx)
}

/// Smallest normal `N` such that `G/N` lies in the Sylow class, using the
/// definition-level subnormality search on the preimages `P·N`.
pub fn brute_sylow_residual(
    g: &PermGroup,
    class: &SylowClass,
    params: &Params,
) -> Result<PermGroup> {
    let lat = normal_lattice(g, params)?;
    let subs = SubgroupLattice::new(g)?;
    let mut search = BruteSubnormal::new(&subs, &class.f, class.kind, params);
    let mut sylows = Vec::new();
    for p in g.primes() {
        if class.primes.contains(&p) {
            sylows.push(g.sylow(p, params)?);
        }
    }
    let mut good: Vec<&PermGroup> = Vec::new();
    for n in &lat.members {
        let mut ok = true;
        for s in &sylows {
            let idx = subs
                .index_of(&s.join(n))
                .ok_or_else(|| Error::Internal("subgroup missing from the lattice".into()))?;
            if !search.is_subnormal(idx)? {
                ok = false;
                break;
            }
        }
        if ok {
            good.push(n);
        }
    }
    let Some(first) = good.first() else {
        return Err(Error::Internal(
            "the whole group fails the Sylow class".into(),
        ));
    };
    if good.iter().any(|n| !first.is_subgroup_of(n)) {
        return Err(Error::Internal(format!(
            "{}: residual is not unique",
            class.name()
        )));
    }
    Ok((*first).clone())
}

/// Every submodule of a small module: spans of cyclic submodules closed
/// under sums.
pub fn brute_submodules(m: &FpModule) -> Result<Vec<Subspace>> {
    let total = m
        .p
        .checked_pow(m.dim as u32)
        .filter(|&t| t <= 1 << 16)
        .ok_or_else(|| Error::Resource("module too large for brute-force enumeration".into()))?;
    let mut subs = vec![Subspace::zero(m.p, m.dim)];
    let mut cyclic = Vec::new();
    for idx in 1..total {
        let mut v: Vector = Vec::with_capacity(m.dim);
        let mut r = idx;
        for _ in 0..m.dim {
            v.push(r % m.p);
            r /= m.p;
        }
        let s = spin(m, &[v]);
        if !cyclic.contains(&s) {
            cyclic.push(s.clone());
        }
        if !subs.contains(&s) {
            subs.push(s);
        }
    }
    let mut i = 0;
    while i < subs.len() {
        for c in &cyclic {
            let s = subs[i].sum(c);
            if !subs.contains(&s) {
                subs.push(s);
            }
        }
        i += 1;
    }
    Ok(subs)
}

/// Intersection of all maximal submodules, by enumeration.
pub fn brute_radical(m: &FpModule) -> Result<Subspace> {
    let subs = brute_submodules(m)?;
    let proper: Vec<&Subspace> = subs.iter().filter(|s| s.dim() < m.dim).collect();
    let mut rad = Subspace::full(m.p, m.dim);
    for s in &proper {
        let maximal = !proper
            .iter()
            .any(|t| t.dim() > s.dim() && s.is_subspace_of(t));
        if maximal {
            rad = rad.intersect(s);
        }
    }
    Ok(rad)
}


#[cfg(test)]
mod brute_tests {
    use super::*;
    use crate::formations::{nilpotent, supersoluble};
    use crate::module_fp::{radical, random_module, Matrix};

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|s| Permutation::parse_cycles(n, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn brute_residual_examples() {
        let p = Params::default();
        let s4 = PermGroup::symmetric(4);
        assert_eq!(
            brute_residual(&s4, &supersoluble(), &p)
                .unwrap()
                .order_u64(),
            Some(4)
        );
        assert_eq!(
            brute_residual(&s4, &nilpotent(), &p).unwrap().order_u64(),
            Some(12)
        );
        let a5 = PermGroup::alternating(5);
        assert!(brute_residual(&a5, &nilpotent(), &p).unwrap().equals(&a5));
    }

    #[test]
    fn brute_member_examples() {
        let p = Params::default();
        let s4 = PermGroup::symmetric(4);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(brute_member(&s4, &v4, &supersoluble(), &p).unwrap());
        assert!(!brute_member(&s4, &PermGroup::trivial(4), &supersoluble(), &p).unwrap());
        assert!(brute_member(&s4, &s4, &nilpotent(), &p).unwrap());
    }

    #[test]
    fn subgroup_lattice_counts() {
        assert_eq!(
            SubgroupLattice::new(&PermGroup::symmetric(4))
                .unwrap()
                .len(),
            30
        );
        assert_eq!(
            SubgroupLattice::new(&PermGroup::alternating(5))
                .unwrap()
                .len(),
            59
        );
        assert_eq!(
            SubgroupLattice::new(&PermGroup::cyclic(12)).unwrap().len(),
            6
        );
        assert!(SubgroupLattice::new(&PermGroup::symmetric(6)).is_err());
    }

    #[test]
    fn brute_kf_subnormal_examples() {
        let p = Params::default();
        let s4 = PermGroup::symmetric(4);
        let h = g(4, &["(1 2)"]);
        assert!(!brute_kf_subnormal(&s4, &h, &nilpotent(), SubnormalKind::K, &p).unwrap());
        assert!(brute_kf_subnormal(&s4, &h, &supersoluble(), SubnormalKind::Plain, &p).unwrap());
        assert!(brute_kf_subnormal(&s4, &s4, &nilpotent(), SubnormalKind::Plain, &p).unwrap());
    }

    #[test]
    fn brute_radical_small_cases() {
        let j = FpModule::new(2, 2, vec![Matrix::from_rows(&[vec![1, 1], vec![0, 1]], 2)]).unwrap();
        assert_eq!(brute_radical(&j).unwrap().basis, vec![vec![0, 1]]);
        for seed in 0..10 {
            let m = random_module(2, 3, 2, seed);
            assert_eq!(brute_radical(&m).unwrap(), radical(&m, seed).unwrap());
        }
    }
}
