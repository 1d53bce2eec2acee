//! Permutation groups backed by a stabilizer chain, and the group-theoretic
//! toolbox everything else is built on: joins, commutators, normal closures,
//! centralizers of sections, Sylow subgroups, normalizers and cores.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::perm::Permutation;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Arc<StabChain>,
    order: BigUint,
    /// Derived subgroup once computed, shared by clones. `None` means the
    /// group is perfect (storing a clone of itself would form a cycle).
    derived: Arc<OnceLock<Option<PermGroup>>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(deg {}, order {}, gens [",
            self.degree, self.order
        )?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// How a group acts on the points it moves, when that action is a full
/// symmetric or alternating group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaturalAction {
    Symmetric(usize),
    Alternating(usize),
}

impl PermGroup {
    /// Builds the group generated by `gens` (the `build_group` operation).
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::Input("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        Ok(Self::from_gens_unchecked(degree, &gens))
    }

    pub fn with_params(
        degree: usize,
        gens: Vec<Permutation>,
        params: &Params,
    ) -> Result<PermGroup> {
        if degree > params.max_degree {
            return Err(Error::Resource(format!(
                "degree {degree} exceeds the configured cap {}",
                params.max_degree
            )));
        }
        Self::new(degree, gens)
    }

    pub(crate) fn from_gens_unchecked(degree: usize, gens: &[Permutation]) -> PermGroup {
        let mut chain = StabChain::new(degree, &[]);
        let mut kept = Vec::new();
        for g in gens {
            if chain.add_generator(g) {
                kept.push(g.clone());
            }
        }
        let order = chain.order();
        PermGroup {
            degree,
            gens: kept,
            chain: Arc::new(chain),
            order,
            derived: Arc::default(),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        Self::from_gens_unchecked(degree, &[])
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
            gens.push(Permutation::from_cycles(n, &[(1..=n as u32).collect()]).unwrap());
        }
        Self::from_gens_unchecked(n, &gens)
    }

    pub fn alternating(n: usize) -> PermGroup {
        let gens: Vec<_> = (3..=n as u32)
            .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]).unwrap())
            .collect();
        Self::from_gens_unchecked(n, &gens)
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let gen = Permutation::from_cycles(n, &[(1..=n as u32).collect()]).unwrap();
        Self::from_gens_unchecked(n, &[gen])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// A non-redundant generating list (each generator enlarged the group
    /// when added), so its length never exceeds log₂|G| ≤ n².
    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`, for desk-scale arithmetic.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Equal orders plus generator membership.
    pub fn equals(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient
                .gens
                .iter()
                .all(|g| self.gens.iter().all(|h| self.contains(&h.conjugate(g))))
    }

    /// Adds generators; returns the enlarged group.
    pub fn extended(&self, extra: &[Permutation]) -> PermGroup {
        if extra.iter().all(|g| self.chain.contains(g)) {
            return self.clone();
        }
        let mut chain = (*self.chain).clone();
        let mut gens = self.gens.clone();
        for g in extra {
            if chain.add_generator(g) {
                gens.push(g.clone());
            }
        }
        let order = chain.order();
        PermGroup {
            degree: self.degree,
            gens,
            chain: Arc::new(chain),
            order,
            derived: Arc::default(),
        }
    }

    /// `⟨H, K⟩`.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        self.extended(&other.gens)
    }

    pub fn join_all<'a>(
        degree: usize,
        groups: impl IntoIterator<Item = &'a PermGroup>,
    ) -> PermGroup {
        groups
            .into_iter()
            .fold(PermGroup::trivial(degree), |acc, g| acc.join(g))
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Permutation {
        self.chain.random_element(rng)
    }

    pub fn for_each_element(&self, visit: impl FnMut(&Permutation)) {
        self.chain.for_each_element(visit)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.chain.for_each_element(|g| out.push(g.clone()));
        out
    }

    pub(crate) fn check_enumerable(&self, cap: u64, what: &str) -> Result<u64> {
        match self.order_u64() {
            Some(o) if o <= cap => Ok(o),
            _ => Err(Error::Resource(format!(
                "{what}: group order {} exceeds the enumeration cap {cap}",
                self.order
            ))),
        }
    }

    pub fn canonical_coset_rep(&self, x: &Permutation) -> Permutation {
        self.chain.canonical_coset_rep(x)
    }

    /// `⟨T⟩^G`: smallest normal subgroup of `self` containing `t`.
    pub fn normal_closure(&self, t: &[Permutation]) -> Result<PermGroup> {
        for x in t {
            if !self.contains(x) {
                return Err(Error::Input(format!("{x} is not an element of the group")));
            }
        }
        Ok(self.normal_closure_unchecked(t))
    }

    pub(crate) fn normal_closure_unchecked(&self, t: &[Permutation]) -> PermGroup {
        let mut chain = StabChain::new(self.degree, &[]);
        let mut gens: Vec<Permutation> = Vec::new();
        for x in t {
            if chain.add_generator(x) {
                gens.push(x.clone());
            }
        }
        // The closure lies in `self`, so reaching its order ends the search.
        let mut full = chain.order() == self.order;
        let mut k = 0;
        while k < gens.len() && !full {
            let n = gens[k].clone();
            k += 1;
            for g in &self.gens {
                let c = n.conjugate(g);
                if chain.add_generator(&c) {
                    gens.push(c);
                    if chain.order() == self.order {
                        full = true;
                        break;
                    }
                }
            }
        }
        if full {
            return self.clone();
        }
        let order = chain.order();
        PermGroup {
            degree: self.degree,
            gens,
            chain: Arc::new(chain),
            order,
            derived: Arc::default(),
        }
    }

    pub fn normal_closure_of_group(&self, h: &PermGroup) -> PermGroup {
        self.normal_closure_unchecked(&h.gens)
    }

    /// `[H, K]`: commutators of generators, closed normally in `⟨H, K⟩`.
    pub fn commutator(h: &PermGroup, k: &PermGroup) -> PermGroup {
        let comms: Vec<_> = h
            .gens
            .iter()
            .flat_map(|a| k.gens.iter().map(move |b| Permutation::commutator(a, b)))
            .collect();
        if Arc::ptr_eq(&h.chain, &k.chain) {
            return h.normal_closure_unchecked(&comms);
        }
        h.join(k).normal_closure_unchecked(&comms)
    }

    /// `[H, K] ≤ N` for `N` normal in `⟨H, K⟩`: modulo `N` the two groups
    /// commute elementwise exactly when their generators do.
    pub fn commutes_modulo(h: &PermGroup, k: &PermGroup, n: &PermGroup) -> bool {
        h.gens.iter().all(|a| {
            k.gens
                .iter()
                .all(|b| n.contains(&Permutation::commutator(a, b)))
        })
    }

    /// As [`PermGroup::commutator`] but checks that both arguments lie in `ambient`.
    pub fn commutator_in(h: &PermGroup, k: &PermGroup, ambient: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(ambient) || !k.is_subgroup_of(ambient) {
            return Err(Error::Input(
                "commutator arguments must lie in the ambient group".into(),
            ));
        }
        Ok(Self::commutator(h, k))
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let d = self.derived.get_or_init(|| {
            let d = Self::commutator(self, self);
            (d.order != self.order).then_some(d)
        });
        d.clone().unwrap_or_else(|| self.clone())
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_solvable(&self) -> bool {
        let mut cur = self.clone();
        loop {
            if cur.is_trivial() {
                return true;
            }
            let next = cur.derived_subgroup();
            if next.order == cur.order {
                return false;
            }
            cur = next;
        }
    }

    /// `N′N^p`, the smallest normal subgroup of `self` with elementary abelian
    /// `p`-quotient. `ambient` is a group `self` is normal in; normality of the
    /// result in it is verified.
    pub fn agemo_derived(&self, p: u64, ambient: &PermGroup) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        // N/N' is abelian, so N'N^p is N' together with p-th powers of the
        // generators.
        let powers: Vec<Permutation> = self.gens.iter().map(|x| x.pow(p)).collect();
        let q = self.derived_subgroup().extended(&powers);
        if !q.is_normal_in(ambient) {
            return Err(Error::Internal(
                "N'N^p is not normal in the ambient group".into(),
            ));
        }
        Ok(q)
    }

    /// Points moved by some generator.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&p| self.gens.iter().any(|g| g.apply(p) != p))
            .collect()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            k += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    /// Recognises groups acting on their support as the full symmetric or
    /// alternating group of degree at least 3.
    pub fn natural_action(&self) -> Option<NaturalAction> {
        let support = self.support();
        let m = support.len();
        if m < 3 || self.orbit(support[0]).len() != m {
            return None;
        }
        let fact: BigUint = (1..=m as u32).map(BigUint::from).product();
        if self.order == fact {
            Some(NaturalAction::Symmetric(m))
        } else if self.order.clone() * 2u32 == fact {
            Some(NaturalAction::Alternating(m))
        } else {
            None
        }
    }

    /// Prime divisors of |G|; all are at most the degree.
    pub fn primes(&self) -> Vec<u64> {
        let mut n = self.order.clone();
        let mut out = Vec::new();
        for p in 2..=self.degree.max(2) as u64 {
            if !is_prime(p) {
                continue;
            }
            let bp = BigUint::from(p);
            if (&n % &bp) == BigUint::from(0u32) {
                out.push(p);
                while (&n % &bp) == BigUint::from(0u32) {
                    n /= &bp;
                }
            }
        }
        out
    }

    /// Exponent of `p` in |G|.
    pub fn p_part_exponent(&self, p: u64) -> u32 {
        let bp = BigUint::from(p);
        let mut n = self.order.clone();
        let mut e = 0;
        while !n.is_one() && (&n % &bp) == BigUint::from(0u32) {
            n /= &bp;
            e += 1;
        }
        e
    }

    /// Kernel of a homomorphism into `Sym(m)` given by the images of the
    /// generators, computed as a pointwise stabilizer in the graph group on
    /// `n + m` points.
    pub(crate) fn action_kernel(&self, images: &[Permutation]) -> PermGroup {
        debug_assert_eq!(images.len(), self.gens.len());
        let m = images.first().map(|p| p.degree()).unwrap_or(0);
        if m == 0 {
            return self.clone();
        }
        let n = self.degree;
        let graph: Vec<_> = self
            .gens
            .iter()
            .zip(images)
            .map(|(g, a)| g.direct_sum(a))
            .collect();
        let prefix: Vec<usize> = (n..n + m).collect();
        let chain = StabChain::from_generators(n + m, &graph, &prefix);
        let kernel_gens: Vec<_> = chain
            .stabilizer_gens(m)
            .iter()
            .map(|g| g.restrict_prefix(n))
            .collect();
        Self::from_gens_unchecked(n, &kernel_gens)
    }

    /// `C_G(H/K)` as its full preimage in `G`: the kernel of the conjugation
    /// action of `G` on the elements of `H/K`.
    pub fn centralizer_section(&self, sec: &NormalSection, params: &Params) -> Result<PermGroup> {
        let (h, k) = (&sec.top, &sec.bottom);
        let index = (h.order() / k.order())
            .to_usize()
            .filter(|&i| i <= params.max_section)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "section of order {} exceeds the centralizer cap {}",
                    h.order() / k.order(),
                    params.max_section
                ))
            })?;
        let (reps, lookup) = coset_enumeration(k, h.generators(), self.degree, index);
        let images: Vec<Permutation> = self
            .gens
            .iter()
            .map(|g| {
                let table: Vec<u32> = reps
                    .iter()
                    .map(|r| lookup[&k.canonical_coset_rep(&r.conjugate(g))] as u32)
                    .collect();
                Permutation::from_images(table).expect("conjugation permutes cosets")
            })
            .collect();
        Ok(self.action_kernel(&images))
    }

    /// `Core_G(H)`: kernel of the action on right cosets of `H`.
    pub fn core(&self, h: &PermGroup, params: &Params) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Input("core: H is not a subgroup of G".into()));
        }
        let index = (self.order() / h.order())
            .to_usize()
            .filter(|&i| i <= params.max_index)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "index {} exceeds the coset-action cap {}",
                    self.order() / h.order(),
                    params.max_index
                ))
            })?;
        let (reps, lookup) = coset_enumeration(h, &self.gens, self.degree, index);
        let images: Vec<Permutation> = self
            .gens
            .iter()
            .map(|g| {
                let table: Vec<u32> = reps
                    .iter()
                    .map(|r| lookup[&h.canonical_coset_rep(&r.mul(g))] as u32)
                    .collect();
                Permutation::from_images(table).expect("right multiplication permutes cosets")
            })
            .collect();
        Ok(self.action_kernel(&images))
    }

    /// `H ∩ K` by enumerating the smaller group.
    pub fn intersection(&self, other: &PermGroup, params: &Params) -> Result<PermGroup> {
        let (small, big) = if self.order <= other.order {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_subgroup_of(big) {
            return Ok(small.clone());
        }
        small.check_enumerable(params.max_order, "intersection")?;
        let mut chain = StabChain::new(self.degree, &[]);
        let mut gens = Vec::new();
        small.for_each_element(|g| {
            if big.contains(g) && chain.add_generator(g) {
                gens.push(g.clone());
            }
        });
        Ok(Self::from_gens_unchecked(self.degree, &gens))
    }

    /// Backtrack search over the stabilizer chain for all elements satisfying
    /// `prop`, which must define a subgroup containing `known`. `prune(d, b, img)`
    /// may reject a partial base image (base point `b` sent to `img`).
    fn subgroup_search(
        &self,
        known: PermGroup,
        prop: &dyn Fn(&Permutation) -> bool,
        prune: &dyn Fn(usize, usize) -> bool,
    ) -> PermGroup {
        fn rec(
            g: &PermGroup,
            depth: usize,
            acc: &Permutation,
            found: &mut PermGroup,
            prop: &dyn Fn(&Permutation) -> bool,
            prune: &dyn Fn(usize, usize) -> bool,
        ) {
            let chain = &g.chain;
            if depth == chain.levels.len() {
                if !found.contains(acc) && prop(acc) {
                    *found = found.extended(std::slice::from_ref(acc));
                }
                return;
            }
            let level = &chain.levels[depth];
            for &pt in &level.orbit {
                let next = level.rep(pt).unwrap().mul(acc);
                if prune(level.base, next.apply(level.base)) {
                    continue;
                }
                rec(g, depth + 1, &next, found, prop, prune);
            }
        }
        let mut found = known;
        rec(self, 0, &self.identity(), &mut found, prop, prune);
        found
    }

    /// `N_G(H)` by backtrack search; base images are pruned by requiring
    /// that H-orbit lengths are preserved.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Input("normalizer: H is not a subgroup of G".into()));
        }
        if h.is_normal_in(self) {
            return Ok(self.clone());
        }
        let mut orbit_len = vec![0usize; self.degree];
        for p in 0..self.degree {
            if orbit_len[p] == 0 {
                let orb = h.orbit(p);
                for &q in &orb {
                    orbit_len[q] = orb.len();
                }
            }
        }
        let prop = |g: &Permutation| h.gens.iter().all(|x| h.contains(&x.conjugate(g)));
        let prune = |b: usize, img: usize| orbit_len[b] != orbit_len[img];
        Ok(self.subgroup_search(h.clone(), &prop, &prune))
    }

    /// A Sylow `p`-subgroup, grown one `p`-element at a time inside
    /// successive normalizers.
    pub fn sylow(&self, p: u64, params: &Params) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        let target = BigUint::from(p).pow(self.p_part_exponent(p));
        let mut rng = ChaCha8Rng::seed_from_u64(params.stream(0x5910_0000 ^ p));
        let mut sylow = PermGroup::trivial(self.degree);
        while sylow.order != target {
            let norm = self.normalizer(&sylow)?;
            let mut grown = None;
            for _ in 0..256 {
                if let Some(x) = p_part(&norm.random_element(&mut rng), p) {
                    if !sylow.contains(&x) {
                        grown = Some(x);
                        break;
                    }
                }
            }
            if grown.is_none() {
                norm.for_each_element(|g| {
                    if grown.is_none() {
                        if let Some(x) = p_part(g, p) {
                            if !sylow.contains(&x) {
                                grown = Some(x);
                            }
                        }
                    }
                });
            }
            let x = grown.ok_or_else(|| {
                Error::Internal(format!("no p-element found to enlarge a {p}-subgroup"))
            })?;
            sylow = sylow.extended(&[x]);
        }
        Ok(sylow)
    }
}

/// The `p`-part `g^m` of `g`, where `|g| = p^a m`; `None` when trivial.
fn p_part(g: &Permutation, p: u64) -> Option<Permutation> {
    let mut m = g.order();
    while m.is_multiple_of(p) {
        m /= p;
    }
    let x = g.pow(m);
    (!x.is_identity()).then_some(x)
}

/// Enumerates the right cosets `Kx` reachable from `K` by right
/// multiplication with `gens`; returns canonical representatives and an index.
fn coset_enumeration(
    k: &PermGroup,
    gens: &[Permutation],
    degree: usize,
    expected: usize,
) -> (Vec<Permutation>, HashMap<Permutation, usize>) {
    let start = k.canonical_coset_rep(&Permutation::identity(degree));
    let mut reps = vec![start.clone()];
    let mut lookup = HashMap::with_capacity(expected);
    lookup.insert(start, 0usize);
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i].clone();
        i += 1;
        for g in gens {
            let c = k.canonical_coset_rep(&r.mul(g));
            if !lookup.contains_key(&c) {
                lookup.insert(c.clone(), reps.len());
                reps.push(c);
            }
        }
    }
    (reps, lookup)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A triple `(G, H, K)` with `K ≤ H`, both normal in `G`.
#[derive(Clone, Debug)]
pub struct NormalSection {
    pub ambient: PermGroup,
    pub top: PermGroup,
    pub bottom: PermGroup,
}

impl NormalSection {
    pub fn new(ambient: PermGroup, top: PermGroup, bottom: PermGroup) -> Result<Self> {
        if !bottom.is_subgroup_of(&top) {
            return Err(Error::Input(
                "section bottom is not contained in its top".into(),
            ));
        }
        if !top.is_normal_in(&ambient) || !bottom.is_normal_in(&ambient) {
            return Err(Error::Input(
                "section terms must be normal in the ambient group".into(),
            ));
        }
        Ok(NormalSection {
            ambient,
            top,
            bottom,
        })
    }

    pub(crate) fn new_unchecked(ambient: &PermGroup, top: &PermGroup, bottom: &PermGroup) -> Self {
        NormalSection {
            ambient: ambient.clone(),
            top: top.clone(),
            bottom: bottom.clone(),
        }
    }

    /// |H/K|.
    pub fn size(&self) -> BigUint {
        self.top.order() / self.bottom.order()
    }

    pub fn is_abelian(&self) -> bool {
        PermGroup::commutes_modulo(&self.top, &self.top, &self.bottom)
    }

    /// The prime `p` when |H/K| is a power of `p`.
    pub fn prime_power_base(&self) -> Option<u64> {
        let size = self.size();
        if size.is_one() {
            return None;
        }
        let primes = self.primes();
        (primes.len() == 1).then(|| primes[0])
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut n = self.size();
        let mut out = Vec::new();
        for p in 2..=self.ambient.degree().max(2) as u64 {
            if !is_prime(p) {
                continue;
            }
            let bp = BigUint::from(p);
            if (&n % &bp) == BigUint::from(0u32) {
                out.push(p);
                while (&n % &bp) == BigUint::from(0u32) {
                    n /= &bp;
                }
            }
        }
        out
    }

    /// Whether `[G, H] ≤ K`.
    pub fn is_central(&self) -> bool {
        PermGroup::commutes_modulo(&self.ambient, &self.top, &self.bottom)
    }
}

/// Subgroup chains in `Sym(n)` have length at most `2n − 3` for `n ≥ 2`
/// (length counted in strict inclusions).
pub fn check_chain_length(terms: usize, degree: usize) -> Result<()> {
    let steps = terms.saturating_sub(1);
    let bound = if degree >= 2 { 2 * degree - 3 } else { 0 };
    if steps > bound {
        return Err(Error::Internal(format!(
            "subgroup chain with {steps} steps exceeds the bound 2n-3 = {bound} for degree {degree}"
        )));
    }
    Ok(())
}
