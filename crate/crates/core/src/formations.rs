//! Chief factor functions, formation residuals and quotient membership,
//! lattice combinators, local and Baer-local definitions, quasi-𝔉, and the
//! builtin catalog with its expression language.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{is_prime, NormalSection, PermGroup};
use crate::params::Params;
use crate::perm::Permutation;
use crate::series::{
    chief_series_between, nonabelian_decomposition, p_decomposition, Decomposition,
};
use crate::subnormal::{SubnormalKind, SylowClass};

pub type Evaluator = Arc<dyn Fn(&NormalSection, &Params) -> Result<bool> + Send + Sync>;
/// `(G, p) ↦ G^{f(p)}`.
pub type LocalResidual = Arc<dyn Fn(&PermGroup, u64, &Params) -> Result<PermGroup> + Send + Sync>;
/// `G ↦ G^{f(0)}`.
pub type GroupResidual = Arc<dyn Fn(&PermGroup, &Params) -> Result<PermGroup> + Send + Sync>;

/// A chief factor function `f`; the formation is `C(f)`, the groups all of
/// whose chief factors evaluate to 1.
#[derive(Clone)]
pub struct ChiefFunction {
    pub name: String,
    pub hereditary: bool,
    eval: Evaluator,
    local: Option<LocalResidual>,
    baer0: Option<GroupResidual>,
}

impl fmt::Debug for ChiefFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChiefFunction")
            .field("name", &self.name)
            .field("hereditary", &self.hereditary)
            .field("local", &self.local.is_some())
            .finish()
    }
}

impl ChiefFunction {
    pub fn new(name: impl Into<String>, hereditary: bool, eval: Evaluator) -> Self {
        ChiefFunction {
            name: name.into(),
            hereditary,
            eval,
            local: None,
            baer0: None,
        }
    }

    /// `f(H/K, G)` for a chief factor `H/K` of `G`.
    pub fn evaluate(&self, sec: &NormalSection, params: &Params) -> Result<bool> {
        (self.eval)(sec, params)
    }

    /// `G^{f(0)}` for a Baer-local definition.
    pub fn residual0(&self, g: &PermGroup, params: &Params) -> Result<PermGroup> {
        match &self.baer0 {
            Some(r) => r(g, params),
            None => Err(Error::Capability(format!(
                "{} carries no Baer-local definition",
                self.name
            ))),
        }
    }

    pub fn has_local(&self) -> bool {
        self.local.is_some()
    }

    /// `G^{f(p)}` for the local definition, if there is one.
    pub fn local_residual(&self, g: &PermGroup, p: u64, params: &Params) -> Result<PermGroup> {
        match &self.local {
            Some(l) => l(g, p, params),
            None => Err(Error::Capability(format!(
                "{} carries no local definition",
                self.name
            ))),
        }
    }
}

type CacheKey = (Vec<Permutation>, u64);

/// Memoizes `G^{f(p)}` per ambient generating set; a pure optimization.
fn cached(local: LocalResidual) -> LocalResidual {
    let cache: Arc<Mutex<HashMap<CacheKey, PermGroup>>> = Arc::default();
    Arc::new(move |g: &PermGroup, p: u64, params: &Params| {
        let key = (g.generators().to_vec(), p);
        if let Some(hit) = cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let r = local(g, p, params)?;
        cache.lock().unwrap().insert(key, r.clone());
        Ok(r)
    })
}

fn centralizes(r: &PermGroup, sec: &NormalSection) -> bool {
    PermGroup::commutes_modulo(r, &sec.top, &sec.bottom)
}

/// Join of `dec.residual` with the minimals on which `f` vanishes.
pub fn residual_part(
    g: &PermGroup,
    dec: &Decomposition,
    f: &ChiefFunction,
    params: &Params,
) -> Result<PermGroup> {
    let mut t = dec.residual.clone();
    for m in &dec.minimals {
        let sec = NormalSection::new_unchecked(g, m, &dec.residual);
        if !f.evaluate(&sec, params)? {
            t = t.join(m);
        }
    }
    Ok(t)
}

/// `G^𝔉` for `𝔉 = C(f)`.
pub fn residual(g: &PermGroup, f: &ChiefFunction, params: &Params) -> Result<PermGroup> {
    let mut k = g.clone();
    loop {
        let before = k.order().clone();
        let dec = nonabelian_decomposition(g, &k, params)?;
        k = residual_part(g, &dec, f, params)?;
        // p-layers are trivial unless p divides |K:K'|.
        let index = k.order() / k.derived_subgroup().order();
        for p in k.primes() {
            if (&index % p) != BigUint::from(0u32) {
                continue;
            }
            let dec = p_decomposition(g, &k, p, params)?;
            k = residual_part(g, &dec, f, params)?;
        }
        if *k.order() == before {
            break;
        }
    }
    let series = chief_series_between(g, g, &k, params)?;
    for sec in series.factors(g) {
        if !f.evaluate(&sec, params)? {
            return Err(Error::Internal(format!(
                "{} rejects a chief factor above its computed residual; it is not a chief factor function",
                f.name
            )));
        }
    }
    Ok(k)
}

/// `G/K ∈ C(f)`.
pub fn member_mod(
    g: &PermGroup,
    k: &PermGroup,
    f: &ChiefFunction,
    params: &Params,
) -> Result<bool> {
    if !k.is_subgroup_of(g) || !k.is_normal_in(g) {
        return Err(Error::Input("K is not a normal subgroup of G".into()));
    }
    Ok(residual(g, f, params)?.join(k).order() == k.order())
}

pub fn member(g: &PermGroup, f: &ChiefFunction, params: &Params) -> Result<bool> {
    Ok(residual(g, f, params)?.is_trivial())
}

pub fn meet(a: &ChiefFunction, b: &ChiefFunction) -> ChiefFunction {
    let (ea, eb) = (a.eval.clone(), b.eval.clone());
    ChiefFunction::new(
        format!("meet({},{})", a.name, b.name),
        false,
        Arc::new(move |s, p| Ok(ea(s, p)? && eb(s, p)?)),
    )
}

pub fn join(a: &ChiefFunction, b: &ChiefFunction) -> ChiefFunction {
    let (ea, eb) = (a.eval.clone(), b.eval.clone());
    ChiefFunction::new(
        format!("join({},{})", a.name, b.name),
        false,
        Arc::new(move |s, p| Ok(ea(s, p)? || eb(s, p)?)),
    )
}

pub fn complement(a: &ChiefFunction) -> ChiefFunction {
    let ea = a.eval.clone();
    ChiefFunction::new(
        format!("not({})", a.name),
        false,
        Arc::new(move |s, p| Ok(!ea(s, p)?)),
    )
}

/// `f(H/K, G) = 1` iff `[G^{f(p)}, H] ≤ K` for every prime `p` dividing
/// `|H/K|`.
pub fn local_formation(name: &str, local: LocalResidual, hereditary: bool) -> ChiefFunction {
    let local = cached(local);
    let l = local.clone();
    let eval: Evaluator = Arc::new(move |sec, params| {
        for p in sec.primes() {
            if !centralizes(&l(&sec.ambient, p, params)?, sec) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    ChiefFunction {
        name: name.to_string(),
        hereditary,
        eval,
        local: Some(local),
        baer0: None,
    }
}

/// Abelian `p`-factors are tested against `G^{f(p)}`, non-abelian factors
/// against `G^{f(0)}`.
pub fn baer_local_formation(
    name: &str,
    local: LocalResidual,
    residual0: GroupResidual,
    hereditary: bool,
) -> ChiefFunction {
    let local = cached(local);
    let (l, r0) = (local.clone(), residual0.clone());
    let eval: Evaluator = Arc::new(move |sec, params| {
        if sec.is_abelian() {
            let Some(p) = sec.prime_power_base() else {
                return Ok(true);
            };
            Ok(centralizes(&l(&sec.ambient, p, params)?, sec))
        } else {
            Ok(centralizes(&r0(&sec.ambient, params)?, sec))
        }
    });
    ChiefFunction {
        name: name.to_string(),
        hereditary,
        eval,
        local: Some(local),
        baer0: Some(residual0),
    }
}

/// `O^p(X)`: normal closure of the Sylow `q`-subgroups for `q ≠ p`.
pub fn o_p(x: &PermGroup, p: u64, params: &Params) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for q in x.primes() {
        if q != p {
            gens.extend(x.sylow(q, params)?.generators().iter().cloned());
        }
    }
    Ok(x.normal_closure_unchecked(&gens))
}

/// `G^{F(p)} = O^p(G^{f(p)} G^𝔉)` for the canonical local definition `F`.
pub fn canonical_local_residual(
    f: &ChiefFunction,
    g: &PermGroup,
    p: u64,
    params: &Params,
) -> Result<PermGroup> {
    let gf = f.local_residual(g, p, params)?;
    let res = residual(g, f, params)?;
    o_p(&gf.join(&res), p, params)
}

/// `𝔉*`: a chief factor is accepted when it is 𝔉-central (canonical local
/// test) or every element of `G` induces an inner automorphism on it.
pub fn quasi(f: &ChiefFunction) -> Result<ChiefFunction> {
    if !f.has_local() {
        return Err(Error::Capability(format!(
            "quasi({}) needs a local definition",
            f.name
        )));
    }
    let base = f.clone();
    let canonical = cached(Arc::new(move |g: &PermGroup, p: u64, params: &Params| {
        canonical_local_residual(&base, g, p, params)
    }));
    let eval: Evaluator = Arc::new(move |sec, params| {
        let mut central = true;
        for p in sec.primes() {
            if !centralizes(&canonical(&sec.ambient, p, params)?, sec) {
                central = false;
                break;
            }
        }
        if central {
            return Ok(true);
        }
        let c = sec.ambient.centralizer_section(sec, params)?;
        Ok(sec.top.join(&c).order() == sec.ambient.order())
    });
    Ok(ChiefFunction::new(
        format!("quasi({})", f.name),
        false,
        eval,
    ))
}

fn rad(mut n: u64) -> u64 {
    let mut r = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            r *= q;
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

fn prime_divides(q: u64, n: u64) -> bool {
    n.is_multiple_of(q)
}

/// Normal closure of `{[x,y], x^e : x,y ∈ S}`; `e = 0` drops the powers.
fn commutators_and_powers(s: &[Permutation], e: u64) -> Vec<Permutation> {
    let mut out = Vec::new();
    for (i, x) in s.iter().enumerate() {
        for y in &s[i + 1..] {
            out.push(Permutation::commutator(x, y));
        }
        if e > 0 {
            out.push(x.pow(e));
        }
    }
    out
}

/// Same generator recipe applied to a generating set of every Sylow subgroup.
fn per_sylow(g: &PermGroup, e: u64, params: &Params) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for q in g.primes() {
        let s = g.sylow(q, params)?;
        gens.extend(commutators_and_powers(s.generators(), e));
    }
    Ok(g.normal_closure_unchecked(&gens))
}

fn whole_group(name: &str) -> ChiefFunction {
    local_formation(
        name,
        Arc::new(|g: &PermGroup, _p, _params: &Params| Ok(g.clone())),
        true,
    )
}

pub fn nilpotent() -> ChiefFunction {
    whole_group("nilpotent")
}

pub fn supersoluble() -> ChiefFunction {
    local_formation(
        "supersoluble",
        Arc::new(|g: &PermGroup, p, _params: &Params| {
            Ok(g.normal_closure_unchecked(&commutators_and_powers(g.generators(), p - 1)))
        }),
        true,
    )
}

pub fn wsupersoluble() -> ChiefFunction {
    local_formation(
        "wsupersoluble",
        Arc::new(|g: &PermGroup, p, params: &Params| per_sylow(g, p - 1, params)),
        true,
    )
}

pub fn na() -> ChiefFunction {
    local_formation(
        "na",
        Arc::new(|g: &PermGroup, _p, params: &Params| per_sylow(g, 0, params)),
        true,
    )
}

pub fn smsupersoluble() -> ChiefFunction {
    local_formation(
        "smsupersoluble",
        Arc::new(|g: &PermGroup, p, params: &Params| per_sylow(g, rad(p - 1), params)),
        true,
    )
}

pub fn ssupersoluble() -> ChiefFunction {
    local_formation(
        "ssupersoluble",
        Arc::new(|g: &PermGroup, p, _params: &Params| {
            Ok(g.normal_closure_unchecked(&commutators_and_powers(g.generators(), rad(p - 1))))
        }),
        true,
    )
}

pub fn shu() -> ChiefFunction {
    local_formation(
        "shu",
        Arc::new(|g: &PermGroup, p, params: &Params| {
            let mut gens = Vec::new();
            for q in g.primes() {
                if !prime_divides(q, p - 1) {
                    gens.extend(g.sylow(q, params)?.generators().iter().cloned());
                }
            }
            Ok(g.normal_closure_unchecked(&gens))
        }),
        true,
    )
}

pub fn pgroups(p: u64) -> ChiefFunction {
    ChiefFunction::new(
        format!("pgroups({p})"),
        true,
        Arc::new(move |sec, _| Ok(sec.prime_power_base() == Some(p))),
    )
}

/// 1 unless the factor is a central `r`-factor.
pub fn noncentral(r: u64) -> ChiefFunction {
    ChiefFunction::new(
        format!("noncentral({r})"),
        false,
        Arc::new(move |sec, _| Ok(sec.prime_power_base() != Some(r) || !sec.is_central())),
    )
}

pub fn quasinilpotent() -> ChiefFunction {
    let mut f = quasi(&nilpotent()).expect("nilpotent is local");
    f.name = "quasinilpotent".into();
    f
}

/// Names of the builtin atoms that take no arguments.
pub const SIMPLE_BUILTINS: &[&str] = &[
    "nilpotent",
    "supersoluble",
    "wsupersoluble",
    "ssupersoluble",
    "smsupersoluble",
    "na",
    "shu",
    "quasinilpotent",
];

pub fn builtin(name: &str) -> Result<ChiefFunction> {
    Ok(match name {
        "nilpotent" => nilpotent(),
        "supersoluble" => supersoluble(),
        "wsupersoluble" => wsupersoluble(),
        "ssupersoluble" => ssupersoluble(),
        "smsupersoluble" => smsupersoluble(),
        "na" => na(),
        "shu" => shu(),
        "quasinilpotent" => quasinilpotent(),
        other => return Err(Error::Input(format!("unknown formation {other:?}"))),
    })
}

/// A formation as produced by the expression language.
#[derive(Clone, Debug)]
pub enum Formation {
    Chief(ChiefFunction),
    Sylow(SylowClass),
}

impl Formation {
    pub fn name(&self) -> String {
        match self {
            Formation::Chief(f) => f.name.clone(),
            Formation::Sylow(s) => s.name(),
        }
    }

    pub fn chief(&self) -> Result<&ChiefFunction> {
        match self {
            Formation::Chief(f) => Ok(f),
            Formation::Sylow(s) => Err(Error::Capability(format!(
                "{} is not given by a chief factor function",
                s.name()
            ))),
        }
    }

    pub fn residual(&self, g: &PermGroup, params: &Params) -> Result<PermGroup> {
        match self {
            Formation::Chief(f) => residual(g, f, params),
            Formation::Sylow(s) => s.residual(g, params),
        }
    }

    pub fn member_mod(&self, g: &PermGroup, k: &PermGroup, params: &Params) -> Result<bool> {
        match self {
            Formation::Chief(f) => member_mod(g, k, f, params),
            Formation::Sylow(s) => s.member_mod(g, k, params),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Input(format!(
            "formation expression, byte {}: {msg}",
            self.pos
        )))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a formation name");
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn prime(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a prime");
        }
        let n: u64 = rest[..len]
            .parse()
            .or_else(|_| self.err("number out of range"))?;
        if !is_prime(n) {
            return self.err(&format!("{n} is not prime"));
        }
        self.pos += len;
        Ok(n)
    }

    fn chief_arg(&mut self) -> Result<ChiefFunction> {
        let at = self.pos;
        match self.expr()? {
            Formation::Chief(f) => Ok(f),
            Formation::Sylow(s) => Err(Error::Capability(format!(
                "formation expression, byte {at}: {} cannot be combined",
                s.name()
            ))),
        }
    }

    fn expr(&mut self) -> Result<Formation> {
        let (start, name) = self.ident()?;
        let f = match name {
            "meet" | "join" => {
                self.expect('(')?;
                let a = self.chief_arg()?;
                self.expect(',')?;
                let b = self.chief_arg()?;
                self.expect(')')?;
                if name == "meet" {
                    meet(&a, &b)
                } else {
                    join(&a, &b)
                }
            }
            "not" => {
                self.expect('(')?;
                let a = self.chief_arg()?;
                self.expect(')')?;
                complement(&a)
            }
            "quasi" => {
                self.expect('(')?;
                let a = self.chief_arg()?;
                self.expect(')')?;
                quasi(&a)?
            }
            "pgroups" | "noncentral" => {
                self.expect('(')?;
                let p = self.prime()?;
                self.expect(')')?;
                if name == "pgroups" {
                    pgroups(p)
                } else {
                    noncentral(p)
                }
            }
            "sylw" | "sylwk" => {
                self.expect('(')?;
                let f = self.chief_arg()?;
                self.expect(',')?;
                let mut primes = vec![self.prime()?];
                loop {
                    self.eat(',');
                    self.skip_ws();
                    if self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                        primes.push(self.prime()?);
                    } else {
                        break;
                    }
                }
                self.expect(')')?;
                let kind = if name == "sylwk" {
                    SubnormalKind::K
                } else {
                    SubnormalKind::Plain
                };
                return Ok(Formation::Sylow(SylowClass::new(f, primes, kind)?));
            }
            other => match builtin(other) {
                Ok(f) => f,
                Err(_) => {
                    self.pos = start;
                    return self.err(&format!("unknown formation {other:?}"));
                }
            },
        };
        Ok(Formation::Chief(f))
    }
}

/// Parses `expr := NAME | NAME(args) | meet(e,e) | join(e,e) | not(e) | quasi(e)`.
pub fn parse_formation(src: &str) -> Result<Formation> {
    let mut p = Parser { src, pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(f)
}
