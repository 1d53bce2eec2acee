//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed.

mod common;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use common::{chief_atoms, corpus, hereditary_atoms, order, Entry};
use residua::formations::{
    meet, member_mod, nilpotent, quasinilpotent, residual, supersoluble, ChiefFunction,
};
use residua::group::check_chain_length;
use residua::module_fp::{radical, random_module};
use residua::oracle::{
    brute_layer_residual, brute_member, brute_radical, brute_residual, brute_sylow_residual,
    is_chief_factor, normal_lattice, BruteSubnormal, Layer, SubgroupLattice,
};
use residua::series::{
    chief_series, composition_series_through, nonabelian_decomposition, nonabelian_residual,
    p_decomposition, Decomposition,
};
use residua::subnormal::{is_subnormal, is_subnormal_kind, SubnormalKind, SylowClass};
use residua::{Params, PermGroup};

type Outcome = std::result::Result<String, String>;

static CHAINS_CHECKED: AtomicUsize = AtomicUsize::new(0);
static CHAIN_VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

fn record_chain(terms: usize, degree: usize) {
    CHAINS_CHECKED.fetch_add(1, Ordering::Relaxed);
    if check_chain_length(terms, degree).is_err() {
        CHAIN_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn find<'a>(entries: &'a [Entry], name: &str) -> &'a PermGroup {
    &entries.iter().find(|e| e.name == name).unwrap().group
}

fn criterion_1(entries: &[Entry]) -> Outcome {
    let p = Params::default();
    let s4 = find(entries, "s4");
    let cases: Vec<(&str, &PermGroup, ChiefFunction, u64)> = vec![
        ("S_4 supersoluble", s4, supersoluble(), 4),
        ("S_4 nilpotent", s4, nilpotent(), 12),
        (
            "SL(2,3) supersoluble",
            find(entries, "sl23"),
            supersoluble(),
            8,
        ),
        (
            "S_5 quasinilpotent",
            find(entries, "s5"),
            quasinilpotent(),
            60,
        ),
        ("A_5 supersoluble", find(entries, "a5"), supersoluble(), 60),
        ("S_3 supersoluble", find(entries, "s3"), supersoluble(), 1),
    ];
    let mut slowest = Duration::ZERO;
    for (label, grp, f, want) in cases {
        let t = Instant::now();
        let r = residual(grp, &f, &p).map_err(err(label))?;
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        let brute = brute_residual(grp, &f, &p).map_err(err(label))?;
        ensure(order(&r) == want, || {
            format!("{label}: order {} != {want}", order(&r))
        })?;
        ensure(r.equals(&brute), || {
            format!("{label}: differs from the oracle")
        })?;
        ensure(dt < Duration::from_secs(1), || {
            format!("{label}: took {dt:?}")
        })?;
    }
    Ok(format!("6 fixed residuals, slowest {slowest:?}"))
}

fn criterion_2(entries: &[Entry]) -> Outcome {
    let p = Params::default();
    let atoms = chief_atoms();
    let mut n = 0;
    for e in entries {
        for f in &atoms {
            let label = format!("{} {}", e.name, f.name);
            let fast = residual(&e.group, f, &p).map_err(err(&label))?;
            let slow = brute_residual(&e.group, f, &p).map_err(err(&label))?;
            ensure(fast.order() == slow.order(), || {
                format!(
                    "{label}: |fast| = {} but |oracle| = {}",
                    fast.order(),
                    slow.order()
                )
            })?;
            ensure(
                fast.is_subgroup_of(&slow) && slow.is_subgroup_of(&fast),
                || format!("{label}: generators not mutually contained"),
            )?;
            n += 1;
        }
    }
    let mut sylow = 0;
    for e in entries.iter().filter(|e| order(&e.group) <= 500) {
        for f in hereditary_atoms() {
            for kind in [SubnormalKind::K, SubnormalKind::Plain] {
                let class =
                    SylowClass::new(f.clone(), vec![2, 3, 5], kind).map_err(err(&f.name))?;
                let label = format!("{} {}", e.name, class.name());
                let fast = class.residual(&e.group, &p).map_err(err(&label))?;
                let slow = brute_sylow_residual(&e.group, &class, &p).map_err(err(&label))?;
                ensure(fast.equals(&slow), || {
                    format!(
                        "{label}: |fast| = {} but |oracle| = {}",
                        fast.order(),
                        slow.order()
                    )
                })?;
                sylow += 1;
            }
        }
    }
    Ok(format!(
        "{n} chief-function pairs and {sylow} Sylow-class pairs agree with the oracle"
    ))
}

fn criterion_3(entries: &[Entry]) -> Outcome {
    let p = Params::default();
    let atoms = chief_atoms();
    let mut n = 0;
    for e in entries {
        let lat = normal_lattice(&e.group, &p).map_err(err(&e.name))?;
        for f in &atoms {
            let r = residual(&e.group, f, &p).map_err(err(&e.name))?;
            for k in &lat.members {
                let label = format!("{} {} |K|={}", e.name, f.name, k.order());
                let fast = member_mod(&e.group, k, f, &p).map_err(err(&label))?;
                let slow = brute_member(&e.group, k, f, &p).map_err(err(&label))?;
                ensure(fast == slow && fast == r.is_subgroup_of(k), || {
                    format!("{label}: member_mod {fast}, oracle {slow}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (group, normal subgroup, formation) triples"))
}

fn criterion_4(entries: &[Entry]) -> Outcome {
    let p = Params::default();
    let atoms = chief_atoms();
    let mut n = 0;
    for e in entries {
        let residuals: Vec<PermGroup> = atoms
            .iter()
            .map(|f| residual(&e.group, f, &p))
            .collect::<residua::Result<_>>()
            .map_err(err(&e.name))?;
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                let m = meet(&atoms[i], &atoms[j]);
                let label = format!("{} {}", e.name, m.name);
                let r = residual(&e.group, &m, &p).map_err(err(&label))?;
                let want = residuals[i].join(&residuals[j]);
                ensure(r.order() == want.order(), || {
                    format!("{label}: {} != {}", r.order(), want.order())
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (group, pair) meets"))
}

fn criterion_5(entries: &[Entry]) -> Outcome {
    let p = Params::default();
    let atoms = hereditary_atoms();
    let mut checks = 0;
    for e in entries.iter().filter(|e| order(&e.group) <= 200) {
        let lat = SubgroupLattice::new(&e.group).map_err(err(&e.name))?;
        for h in lat.subgroups() {
            let classical = is_subnormal(&e.group, h).map_err(err(&e.name))?;
            let (alg, trace) = is_subnormal_kind(&e.group, h, &nilpotent(), SubnormalKind::K, &p)
                .map_err(err(&e.name))?;
            record_chain(trace.chain.len(), e.group.degree());
            ensure(alg == classical, || {
                format!(
                    "{}: nilpotent K-descent {alg} vs subnormal {classical} for |H|={}",
                    e.name,
                    h.order()
                )
            })?;
            checks += 1;
        }
        for f in &atoms {
            for kind in [SubnormalKind::K, SubnormalKind::Plain] {
                let mut brute = BruteSubnormal::new(&lat, f, kind, &p);
                for (idx, h) in lat.subgroups().iter().enumerate() {
                    let label = format!("{} {} {kind:?} |H|={}", e.name, f.name, h.order());
                    let (alg, trace) =
                        is_subnormal_kind(&e.group, h, f, kind, &p).map_err(err(&label))?;
                    record_chain(trace.chain.len(), e.group.degree());
                    let truth = brute.is_subnormal(idx).map_err(err(&label))?;
                    ensure(alg == truth, || {
                        format!("{label}: descent {alg}, oracle {truth}")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} subgroup verdicts agree"))
}

fn check_decomposition(
    grp: &PermGroup,
    n: &PermGroup,
    dec: &Decomposition,
    truth: &PermGroup,
    label: &str,
    p: &Params,
) -> std::result::Result<(), String> {
    dec.check(grp, n).map_err(err(label))?;
    ensure(dec.residual.equals(truth), || {
        format!("{label}: residual differs from the oracle")
    })?;
    for m in &dec.minimals {
        let chief = is_chief_factor(grp, m, &dec.residual, p).map_err(err(label))?;
        ensure(chief, || {
            format!("{label}: a minimal is not G-chief over the residual")
        })?;
    }
    Ok(())
}

fn criterion_6(entries: &[Entry]) -> Outcome {
    let p = Params::default();
    let mut n = 0;
    for e in entries.iter().filter(|e| order(&e.group) <= 500) {
        let grp = &e.group;
        let lat = normal_lattice(grp, &p).map_err(err(&e.name))?;
        for norm in &lat.members {
            let label = format!("{} |N|={}", e.name, norm.order());
            let dec = nonabelian_decomposition(grp, norm, &p).map_err(err(&label))?;
            let truth =
                brute_layer_residual(grp, norm, Layer::NonAbelian, &p).map_err(err(&label))?;
            check_decomposition(grp, norm, &dec, &truth, &label, &p)?;
            let own = nonabelian_residual(norm, &p).map_err(err(&label))?;
            ensure(own.equals(&dec.residual), || {
                format!("{label}: Res_N(N) != Res_N(N, G)")
            })?;
            n += 1;
            for q in norm.primes() {
                let label = format!("{label} p={q}");
                let dec = p_decomposition(grp, norm, q, &p).map_err(err(&label))?;
                let truth =
                    brute_layer_residual(grp, norm, Layer::Prime(q), &p).map_err(err(&label))?;
                check_decomposition(grp, norm, &dec, &truth, &label, &p)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} decompositions satisfy their contracts"))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for seed in 0..100u64 {
        let p = if seed % 2 == 0 { 2 } else { 3 };
        let dim = 1 + (seed as usize / 2) % 5;
        let gens = 1 + (seed as usize / 10) % 3;
        let m = random_module(p, dim, gens, seed);
        let fast = radical(&m, seed).map_err(err("radical"))?;
        let slow = brute_radical(&m).map_err(err("brute radical"))?;
        ensure(fast == slow, || {
            format!(
                "seed {seed} (p={p}, dim={dim}): radical dim {} vs {}",
                fast.dim(),
                slow.dim()
            )
        })?;
        n += 1;
    }
    Ok(format!("{n} random modules over F_2 and F_3, dim 1..5"))
}

fn criterion_8(entries: &[Entry]) -> Outcome {
    for e in entries {
        let mut reference: Option<Vec<u64>> = None;
        for seed in 0..20 {
            let p = Params::with_seed(seed);
            let c = chief_series(&e.group, &p).map_err(err(&e.name))?;
            record_chain(c.terms.len(), e.group.degree());
            let mut orders: Vec<u64> = c
                .factor_orders()
                .iter()
                .map(|o| o.try_into().unwrap())
                .collect();
            orders.sort_unstable();
            match &reference {
                None => reference = Some(orders),
                Some(r) => ensure(*r == orders, || {
                    format!(
                        "{}: seed {seed} gives chief factors {orders:?}, seed 0 gave {r:?}",
                        e.name
                    )
                })?,
            }
        }
    }
    Ok(format!("{} groups x 20 seeds", entries.len()))
}

fn criterion_9(entries: &[Entry]) -> Outcome {
    let p = Params::default();
    for e in entries {
        let c = composition_series_through(&e.group, &[], &p).map_err(err(&e.name))?;
        record_chain(c.terms.len(), e.group.degree());
        let c = chief_series(&e.group, &p).map_err(err(&e.name))?;
        record_chain(c.terms.len(), e.group.degree());
    }
    let checked = CHAINS_CHECKED.load(Ordering::Relaxed);
    let bad = CHAIN_VIOLATIONS.load(Ordering::Relaxed);
    ensure(bad == 0, || {
        format!("{bad} of {checked} chains exceed 2n-3 steps")
    })?;
    Ok(format!("{checked} chains within 2n-3 steps"))
}

/// Median over `samples` batches of the time per call. Each batch repeats
/// the call until it has run for at least 50ms, which keeps timer and
/// scheduler noise small relative to millisecond-scale calls.
fn median_time(grp: &PermGroup, samples: usize) -> std::result::Result<Duration, String> {
    let p = Params::default();
    let mut times = Vec::new();
    for _ in 0..samples {
        let t = Instant::now();
        let mut calls = 0u32;
        while calls == 0 || t.elapsed() < Duration::from_millis(50) {
            residual(grp, &supersoluble(), &p).map_err(err("timing"))?;
            calls += 1;
        }
        times.push(t.elapsed() / calls);
    }
    times.sort();
    Ok(times[samples / 2])
}

fn criterion_10() -> Outcome {
    // Warm caches and the allocator before the baseline.
    median_time(&PermGroup::symmetric(6), 3)?;
    let mut times = BTreeMap::new();
    for n in 4..=9 {
        times.insert(n, median_time(&PermGroup::symmetric(n), 7)?);
    }
    let base = times[&4].as_secs_f64();
    let mut report = Vec::new();
    let mut ok = true;
    for (&n, t) in &times {
        let ratio = t.as_secs_f64() / base;
        let bound = (n as f64 / 4.0).powi(2);
        if n > 4 {
            ok &= ratio < bound;
        }
        report.push(format!(
            "n={n} {:.2}ms x{ratio:.2} (bound x{bound:.2})",
            t.as_secs_f64() * 1e3
        ));
    }
    let line = report.join(", ");
    if ok {
        Ok(line)
    } else {
        Err(line)
    }
}

/// Wall-clock limits in seconds, where a criterion has one.
fn time_limit(id: usize) -> Option<f64> {
    match id {
        2 | 3 => Some(300.0),
        5 => Some(600.0),
        7 => Some(60.0),
        10 => Some(120.0),
        _ => None,
    }
}

fn main() {
    let entries = corpus();
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome>)> = vec![
        (1, Box::new(|| criterion_1(&entries))),
        (2, Box::new(|| criterion_2(&entries))),
        (3, Box::new(|| criterion_3(&entries))),
        (4, Box::new(|| criterion_4(&entries))),
        (5, Box::new(|| criterion_5(&entries))),
        (6, Box::new(|| criterion_6(&entries))),
        (7, Box::new(criterion_7)),
        (8, Box::new(|| criterion_8(&entries))),
        (9, Box::new(|| criterion_9(&entries))),
        (10, Box::new(criterion_10)),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (id, run) in &criteria {
        if only.is_some_and(|o| o != *id) {
            continue;
        }
        let t = Instant::now();
        let mut outcome = run();
        let secs = t.elapsed().as_secs_f64();
        if let (Ok(detail), Some(limit)) = (&outcome, time_limit(*id)) {
            if secs > limit {
                outcome = Err(format!("{detail}, but over the {limit}s limit"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
