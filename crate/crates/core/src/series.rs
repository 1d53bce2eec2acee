//! Composition and chief series, and the two layer decompositions: the
//! non-abelian layer `Res_N(N, G)` and the `p`-layer `Res_p(N, G)`.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{check_chain_length, is_prime, NaturalAction, NormalSection, PermGroup};
use crate::module_fp::{module_seed, radical, section_to_module, semisimple_decompose};
use crate::oracle::normal_subgroups_containing;
use crate::params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Composition,
    Chief,
}

#[derive(Clone, Debug)]
pub struct SeriesChain {
    /// Descending, from the top group to the bottom one.
    pub terms: Vec<PermGroup>,
    pub kind: SeriesKind,
}

impl SeriesChain {
    pub fn orders(&self) -> Vec<BigUint> {
        self.terms.iter().map(|t| t.order().clone()).collect()
    }

    /// `|H_i / H_{i+1}|` for consecutive terms.
    pub fn factor_orders(&self) -> Vec<BigUint> {
        self.terms
            .windows(2)
            .map(|w| w[0].order() / w[1].order())
            .collect()
    }

    /// Consecutive pairs as sections of `ambient`.
    pub fn factors(&self, ambient: &PermGroup) -> Vec<NormalSection> {
        self.terms
            .windows(2)
            .map(|w| NormalSection::new_unchecked(ambient, &w[0], &w[1]))
            .collect()
    }
}

/// `residual` together with preimages of minimal normal subgroups of
/// `G/residual` whose product is `N/residual`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub residual: PermGroup,
    pub minimals: Vec<PermGroup>,
}

impl Decomposition {
    /// Checks the structural contract against `G` and `N`.
    pub fn check(&self, g: &PermGroup, n: &PermGroup) -> Result<()> {
        let r = &self.residual;
        let bad = |m: &str| Err(Error::Internal(format!("decomposition: {m}")));
        if !r.is_subgroup_of(n) || !r.is_normal_in(g) {
            return bad("residual is not a normal subgroup of G below N");
        }
        let mut prod = BigUint::one();
        let mut joined = r.clone();
        for m in &self.minimals {
            if !r.is_subgroup_of(m) || !m.is_subgroup_of(n) || !m.is_normal_in(g) {
                return bad("minimal is not normal between residual and N");
            }
            if m.order() == r.order() {
                return bad("minimal equals the residual");
            }
            prod *= m.order() / r.order();
            joined = joined.join(m);
        }
        if !joined.equals(n) {
            return bad("minimals do not generate N over the residual");
        }
        if &prod * r.order() != *n.order() {
            return bad("product of minimals is not direct");
        }
        Ok(())
    }
}

/// Descending subnormal series from `a` to `b` with simple factors. `b` must
/// be normal in `a`.
fn refine(a: &PermGroup, b: &PermGroup, params: &Params) -> Result<Vec<PermGroup>> {
    if a.order() == b.order() {
        return Ok(vec![a.clone()]);
    }
    let d = a.derived_subgroup().join(b);
    if d.order() != a.order() {
        let mut below = refine(&d, b, params)?;
        let mut ladder = vec![d.clone()];
        let mut cur = d;
        for x in a.generators() {
            if cur.contains(x) {
                continue;
            }
            let mut m = 1u64;
            let mut y = x.clone();
            while !cur.contains(&y) {
                y = y.mul(x);
                m += 1;
            }
            // split the cyclic step <cur, x> / cur of order m into prime steps
            let mut rest = m;
            let mut q = 2;
            while rest > 1 {
                while rest.is_multiple_of(q) {
                    rest /= q;
                    cur = cur.extended(&[x.pow(rest)]);
                    ladder.push(cur.clone());
                }
                q += 1;
            }
        }
        ladder.reverse();
        ladder.pop();
        ladder.append(&mut below);
        return Ok(ladder);
    }
    // a/b is perfect
    if b.is_trivial() && matches!(a.natural_action(), Some(NaturalAction::Alternating(m)) if m >= 5)
    {
        return Ok(vec![a.clone(), b.clone()]);
    }
    let lat = normal_subgroups_containing(a, b, params)?;
    let top = lat.len() - 1;
    let c = lat.maximal_below(top)[0];
    let mut out = vec![a.clone()];
    out.extend(refine(&lat.members[c], b, params)?);
    Ok(out)
}

/// A composition series of `g` passing through every listed normal subgroup.
pub fn composition_series_through(
    g: &PermGroup,
    normals: &[PermGroup],
    params: &Params,
) -> Result<SeriesChain> {
    let mut chain: Vec<PermGroup> = Vec::new();
    for n in normals {
        if !n.is_subgroup_of(g) || !n.is_normal_in(g) {
            return Err(Error::Input("listed subgroup is not normal in G".into()));
        }
        chain.push(n.clone());
    }
    chain.push(PermGroup::trivial(g.degree()));
    chain.push(g.clone());
    chain.sort_by(|a, b| a.order().cmp(b.order()));
    for w in chain.windows(2) {
        if !w[0].is_subgroup_of(&w[1]) {
            return Err(Error::Input("listed subgroups do not form a chain".into()));
        }
    }
    chain.dedup_by(|a, b| a.order() == b.order());
    let mut terms = vec![g.clone()];
    for w in chain.windows(2).rev() {
        let steps = refine(&w[1], &w[0], params)?;
        terms.extend(steps.into_iter().skip(1));
    }
    check_chain_length(terms.len(), g.degree())?;
    Ok(SeriesChain {
        terms,
        kind: SeriesKind::Composition,
    })
}

/// `B` with `K < B ≤ A`, `B` subnormal in `A` and `B/K` simple.
pub fn minimal_subnormal_over(a: &PermGroup, k: &PermGroup, params: &Params) -> Result<PermGroup> {
    if a.order() == k.order() {
        return Err(Error::Input(
            "no subnormal subgroup strictly above K = A".into(),
        ));
    }
    if !k.is_subgroup_of(a) || !k.is_normal_in(a) {
        return Err(Error::Input("K is not normal in A".into()));
    }
    let steps = refine(a, k, params)?;
    Ok(steps[steps.len() - 2].clone())
}

/// Smallest normal `R` of `N` such that `N/R` is a direct product of
/// non-abelian simple groups (`R = N` if there is no such proper quotient).
pub fn nonabelian_residual(n: &PermGroup, params: &Params) -> Result<PermGroup> {
    if n.is_trivial() || n.is_solvable() {
        return Ok(n.clone());
    }
    match n.natural_action() {
        Some(NaturalAction::Alternating(m)) if m >= 5 => return Ok(PermGroup::trivial(n.degree())),
        Some(NaturalAction::Symmetric(m)) if m >= 5 => return Ok(n.clone()),
        _ => {}
    }
    let lat = normal_subgroups_containing(n, &PermGroup::trivial(n.degree()), params)?;
    let top = lat.len() - 1;
    let derived = n.derived_subgroup();
    let maxes: Vec<usize> = lat
        .maximal_below(top)
        .into_iter()
        .filter(|&i| !derived.is_subgroup_of(&lat.members[i]))
        .collect();
    if maxes.is_empty() {
        return Ok(n.clone());
    }
    // the intersection is the largest member below all of them
    let best = (0..lat.len())
        .rev()
        .find(|&j| maxes.iter().all(|&i| lat.le(j, i)))
        .expect("the trivial subgroup lies below everything");
    Ok(lat.members[best].clone())
}

/// Non-abelian layer of `N`: `Res_N(N, G)` and the non-abelian minimal
/// normal subgroups of `G/Res_N(N, G)` inside `N`.
pub fn nonabelian_decomposition(
    g: &PermGroup,
    n: &PermGroup,
    params: &Params,
) -> Result<Decomposition> {
    if !n.is_subgroup_of(g) || !n.is_normal_in(g) {
        return Err(Error::Input("N is not normal in G".into()));
    }
    let k = nonabelian_residual(n, params)?;
    let mut minimals = Vec::new();
    let mut a = n.clone();
    while a.order() != k.order() {
        let b = minimal_subnormal_over(&a, &k, params)?;
        let bg = g.normal_closure_of_group(&b).join(&k);
        if bg.order() == a.order() {
            minimals.push(bg);
            break;
        }
        let sec = NormalSection::new_unchecked(g, &bg, &k);
        a = a.centralizer_section(&sec, params)?;
        minimals.push(bg);
    }
    Ok(Decomposition {
        residual: k,
        minimals,
    })
}

/// `p`-layer of `N`: `Res_p(N, G)` and minimal normal `p`-subgroups of
/// `G/Res_p(N, G)` whose product is `N/Res_p(N, G)`.
pub fn p_decomposition(
    g: &PermGroup,
    n: &PermGroup,
    p: u64,
    params: &Params,
) -> Result<Decomposition> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if !n.is_subgroup_of(g) || !n.is_normal_in(g) {
        return Err(Error::Input("N is not normal in G".into()));
    }
    let q = n.agemo_derived(p, g)?;
    if q.order() == n.order() {
        return Ok(Decomposition {
            residual: n.clone(),
            minimals: Vec::new(),
        });
    }
    let seed = module_seed(params, p);
    let full = section_to_module(g, n, &q, p)?;
    if full.module.dim > params.max_module_dim {
        return Err(Error::Resource(format!(
            "module dimension {} above the cap {}",
            full.module.dim, params.max_module_dim
        )));
    }
    let rad = radical(&full.module, seed)?;
    let k = full.subgroup_of(&rad);
    let top = section_to_module(g, n, &k, p)?;
    let parts = semisimple_decompose(&top.module, seed)?;
    let minimals = parts.iter().map(|s| top.subgroup_of(s)).collect();
    Ok(Decomposition {
        residual: k,
        minimals,
    })
}

/// Chief series of `G` from `top` down to `bottom` (both normal in `G`).
pub fn chief_series_between(
    g: &PermGroup,
    top: &PermGroup,
    bottom: &PermGroup,
    params: &Params,
) -> Result<SeriesChain> {
    for x in [top, bottom] {
        if !x.is_subgroup_of(g) || !x.is_normal_in(g) {
            return Err(Error::Input("series endpoint is not normal in G".into()));
        }
    }
    if !bottom.is_subgroup_of(top) {
        return Err(Error::Input("series bottom is not below its top".into()));
    }
    let mut terms = vec![top.clone()];
    let mut cur = top.clone();
    while cur.order() != bottom.order() {
        let index = cur.order() / bottom.order();
        let mut layer = None;
        let na = nonabelian_decomposition(g, &cur, params)?;
        if !na.minimals.is_empty() && na.residual.join(bottom).order() != cur.order() {
            layer = Some(na);
        } else {
            for p in cur.primes() {
                if (&index % p) != BigUint::from(0u32) {
                    continue;
                }
                let dec = p_decomposition(g, &cur, p, params)?;
                if !dec.minimals.is_empty() && dec.residual.join(bottom).order() != cur.order() {
                    layer = Some(dec);
                    break;
                }
            }
        }
        let Some(dec) = layer else {
            return Err(Error::Internal(
                "no decomposition makes progress on a nontrivial section".into(),
            ));
        };
        let base = dec.residual.join(bottom);
        let mut ladder = vec![base.clone()];
        let mut y = base.clone();
        for m in &dec.minimals {
            let next = y.join(m);
            if next.order() != y.order() {
                y = next;
                ladder.push(y.clone());
            }
        }
        if y.order() != cur.order() {
            return Err(Error::Internal(
                "layer minimals do not reach the top".into(),
            ));
        }
        ladder.pop();
        terms.extend(ladder.into_iter().rev());
        cur = base;
    }
    check_chain_length(terms.len(), g.degree())?;
    Ok(SeriesChain {
        terms,
        kind: SeriesKind::Chief,
    })
}

pub fn chief_series(g: &PermGroup, params: &Params) -> Result<SeriesChain> {
    chief_series_between(g, g, &PermGroup::trivial(g.degree()), params)
}
