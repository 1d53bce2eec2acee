//! 𝔉-subnormality and K-𝔉-subnormality by residual descent, and the
//! formations of groups whose Sylow subgroups are (K-)𝔉-subnormal.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formations::{o_p, residual, ChiefFunction};
use crate::group::{check_chain_length, PermGroup};
use crate::params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubnormalKind {
    /// K-𝔉-subnormal: steps may also be plain normal inclusions.
    K,
    /// 𝔉-subnormal.
    Plain,
}

#[derive(Clone, Debug)]
pub struct DescentTrace {
    /// From `G` down to `terminal`, strictly decreasing.
    pub chain: Vec<PermGroup>,
    pub verdict: bool,
    pub terminal: PermGroup,
}

impl DescentTrace {
    pub fn orders(&self) -> Vec<num_bigint::BigUint> {
        self.chain.iter().map(|t| t.order().clone()).collect()
    }
}

fn check_inputs(g: &PermGroup, h: &PermGroup, f: &ChiefFunction) -> Result<()> {
    if !f.hereditary {
        return Err(Error::Capability(format!(
            "{} is not known to be hereditary",
            f.name
        )));
    }
    if !h.is_subgroup_of(g) {
        return Err(Error::Input("H is not a subgroup of G".into()));
    }
    Ok(())
}

fn descend(
    g: &PermGroup,
    h: &PermGroup,
    f: &ChiefFunction,
    kind: SubnormalKind,
    params: &Params,
) -> Result<DescentTrace> {
    check_inputs(g, h, f)?;
    let mut chain = vec![g.clone()];
    let mut cur = g.clone();
    let verdict = loop {
        if cur.order() == h.order() {
            break true;
        }
        let x = h.join(&residual(&cur, f, params)?);
        if x.order() != cur.order() {
            cur = x;
            chain.push(cur.clone());
            continue;
        }
        if kind == SubnormalKind::K {
            let n = cur.normal_closure_of_group(h);
            if n.order() != cur.order() {
                cur = n;
                chain.push(cur.clone());
                continue;
            }
        }
        break false;
    };
    check_chain_length(chain.len(), g.degree())?;
    Ok(DescentTrace {
        chain,
        verdict,
        terminal: cur,
    })
}

pub fn is_k_f_subnormal(
    g: &PermGroup,
    h: &PermGroup,
    f: &ChiefFunction,
    params: &Params,
) -> Result<(bool, DescentTrace)> {
    let t = descend(g, h, f, SubnormalKind::K, params)?;
    Ok((t.verdict, t))
}

pub fn is_f_subnormal(
    g: &PermGroup,
    h: &PermGroup,
    f: &ChiefFunction,
    params: &Params,
) -> Result<(bool, DescentTrace)> {
    let t = descend(g, h, f, SubnormalKind::Plain, params)?;
    Ok((t.verdict, t))
}

pub fn is_subnormal_kind(
    g: &PermGroup,
    h: &PermGroup,
    f: &ChiefFunction,
    kind: SubnormalKind,
    params: &Params,
) -> Result<(bool, DescentTrace)> {
    let t = descend(g, h, f, kind, params)?;
    Ok((t.verdict, t))
}

/// Classical subnormality through iterated normal closures.
pub fn is_subnormal(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if !h.is_subgroup_of(g) {
        return Err(Error::Input("H is not a subgroup of G".into()));
    }
    let mut cur = g.clone();
    let mut terms = 1;
    loop {
        let n = cur.normal_closure_of_group(h);
        if n.order() == cur.order() {
            check_chain_length(terms, g.degree())?;
            return Ok(cur.order() == h.order());
        }
        cur = n;
        terms += 1;
    }
}

/// Groups in which, for every listed prime `p`, a Sylow `p`-subgroup is
/// (K-)𝔉-subnormal.
#[derive(Clone, Debug)]
pub struct SylowClass {
    pub f: ChiefFunction,
    pub primes: Vec<u64>,
    pub kind: SubnormalKind,
    extra_passes: Arc<AtomicUsize>,
}

impl SylowClass {
    pub fn new(f: ChiefFunction, mut primes: Vec<u64>, kind: SubnormalKind) -> Result<Self> {
        if !f.hereditary {
            return Err(Error::Capability(format!(
                "{} is not known to be hereditary",
                f.name
            )));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(SylowClass {
            f,
            primes,
            kind,
            extra_passes: Arc::default(),
        })
    }

    pub fn name(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        let head = match self.kind {
            SubnormalKind::K => "sylwk",
            SubnormalKind::Plain => "sylw",
        };
        format!("{head}({},{})", self.f.name, ps.join(" "))
    }

    /// How many residual computations needed more than one pass so far.
    pub fn extra_passes(&self) -> usize {
        self.extra_passes.load(Ordering::Relaxed)
    }

    /// Descents of `P·R` for the relevant Sylow subgroups `P`, i.e. the test
    /// in `G/R`. Returns the terminal subgroups of the failing ones.
    fn failing(
        &self,
        g: &PermGroup,
        r: &PermGroup,
        params: &Params,
    ) -> Result<Vec<(u64, PermGroup)>> {
        let mut out = Vec::new();
        for p in g.primes() {
            if !self.primes.contains(&p) {
                continue;
            }
            let x = g.sylow(p, params)?.join(r);
            let t = descend(g, &x, &self.f, self.kind, params)?;
            if !t.verdict {
                out.push((p, t.terminal));
            }
        }
        Ok(out)
    }

    pub fn member(&self, g: &PermGroup, params: &Params) -> Result<bool> {
        Ok(self
            .failing(g, &PermGroup::trivial(g.degree()), params)?
            .is_empty())
    }

    pub fn member_mod(&self, g: &PermGroup, k: &PermGroup, params: &Params) -> Result<bool> {
        if !k.is_subgroup_of(g) || !k.is_normal_in(g) {
            return Err(Error::Input("K is not a normal subgroup of G".into()));
        }
        Ok(self.failing(g, k, params)?.is_empty())
    }

    pub fn residual(&self, g: &PermGroup, params: &Params) -> Result<PermGroup> {
        let mut r = PermGroup::trivial(g.degree());
        let mut passes = 0;
        loop {
            let fails = self.failing(g, &r, params)?;
            if fails.is_empty() {
                break;
            }
            passes += 1;
            let before = r.order().clone();
            for (p, m) in fails {
                let o = o_p(&m, p, params)?;
                r = r.join(&g.normal_closure_of_group(&o));
            }
            if *r.order() == before {
                return Err(Error::Internal(format!(
                    "{}: residual construction stalled",
                    self.name()
                )));
            }
        }
        if passes > 1 {
            self.extra_passes.fetch_add(1, Ordering::Relaxed);
        }
        Ok(r)
    }
}
