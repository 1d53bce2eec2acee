//! Stabilizer chains built with the deterministic Schreier–Sims algorithm.
//!
//! Level `i` stores the base point `β_i`, the strong generators fixing
//! `β_0..β_{i-1}`, and an explicit transversal: for every point `δ` in the
//! orbit of `β_i`, an element `u_δ` with `β_i^{u_δ} = δ`.

use num_bigint::BigUint;
use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    pub transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
    /// For each point, how many generators (a prefix) give Schreier
    /// generators known to sift through. Representatives never change once
    /// set and lower levels only grow, so this stays valid.
    verified: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            inverse: transversal.clone(),
            transversal,
            verified: vec![0; degree],
        }
    }

    fn push_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        self.extend_orbit();
    }

    /// Grows the orbit under the current generators, keeping existing
    /// representatives.
    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            k += 1;
            for s in &self.gens {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().mul(s);
                    self.inverse[q] = Some(u.inverse());
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }

    #[inline]
    pub fn rep(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref()
    }

    #[inline]
    fn rep_inverse(&self, point: usize) -> Option<&Permutation> {
        self.inverse[point].as_ref()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, base_prefix: &[usize]) -> Self {
        StabChain {
            degree,
            levels: base_prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        }
    }

    pub fn from_generators(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> Self {
        let mut chain = StabChain::new(degree, base_prefix);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    /// Sifts `g` from level `start`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went all the way through).
    pub fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.base);
            match level.rep_inverse(b) {
                Some(u) => h = h.mul(u),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.sift_from(g, 0);
        h.is_identity()
    }

    /// Adds a generator. Returns false when it was already in the group.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        if g.is_identity() || self.contains(g) {
            return false;
        }
        let fixed = self
            .levels
            .iter()
            .take_while(|l| g.apply(l.base) == l.base)
            .count();
        if fixed == self.levels.len() {
            let moved = (0..self.degree).find(|&p| g.apply(p) != p).unwrap();
            self.levels.push(Level::new(self.degree, moved));
        }
        for l in 0..=fixed {
            self.levels[l].push_gen(g.clone());
        }
        self.complete_from(fixed);
        true
    }

    /// Schreier–Sims verification, assuming levels above `start` are complete.
    fn complete_from(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.first_failure(lvl) {
                Some((r, j)) => {
                    if j == self.levels.len() {
                        let moved = (0..self.degree).find(|&x| r.apply(x) != x).unwrap();
                        self.levels.push(Level::new(self.degree, moved));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].push_gen(r.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// The first Schreier generator at `lvl` that does not sift through the
    /// levels below, with the level where it stopped.
    fn first_failure(&mut self, lvl: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[lvl].orbit.len() {
            let p = self.levels[lvl].orbit[k];
            k += 1;
            for gi in self.levels[lvl].verified[p]..self.levels[lvl].gens.len() {
                let level = &self.levels[lvl];
                let s = &level.gens[gi];
                let q = s.apply(p);
                let schreier = level
                    .rep(p)
                    .unwrap()
                    .mul(s)
                    .mul(level.rep_inverse(q).unwrap());
                let (r, j) = if schreier.is_identity() {
                    (schreier, 0)
                } else {
                    self.sift_from(&schreier, lvl + 1)
                };
                if !r.is_identity() {
                    return Some((r, j));
                }
                self.levels[lvl].verified[p] = gi + 1;
            }
        }
        None
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Generators of the pointwise stabilizer of the first `depth` base points.
    pub fn stabilizer_gens(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.stabilizer_gens(0)
    }

    /// Uniformly random element: product of random transversal elements.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let pt = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.mul(level.rep(pt).unwrap());
        }
        g
    }

    /// Calls `visit` on every group element exactly once.
    pub fn for_each_element(&self, mut visit: impl FnMut(&Permutation)) {
        fn rec(
            chain: &StabChain,
            depth: usize,
            acc: &Permutation,
            visit: &mut dyn FnMut(&Permutation),
        ) {
            if depth == chain.levels.len() {
                visit(acc);
                return;
            }
            let level = &chain.levels[depth];
            for &pt in &level.orbit {
                // g = v_{k-1} ... v_0, built innermost first
                let next = level.rep(pt).unwrap().mul(acc);
                rec(chain, depth + 1, &next, visit);
            }
        }
        rec(self, 0, &Permutation::identity(self.degree), &mut visit);
    }

    /// Canonical representative of the right coset `Kx` where `self` is the
    /// chain of `K`: the element of `Kx` whose base images are
    /// lexicographically least.
    pub fn canonical_coset_rep(&self, x: &Permutation) -> Permutation {
        let mut x = x.clone();
        for level in &self.levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&d| x.apply(d))
                .unwrap();
            x = level.rep(best).unwrap().mul(&x);
        }
        x
    }
}
