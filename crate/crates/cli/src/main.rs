use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use residua::formations::{parse_formation, Formation};
use residua::groupfile::{self, GroupFile};
use residua::oracle::{brute_kf_subnormal, brute_member, brute_residual, brute_sylow_residual};
use residua::series::{chief_series, nonabelian_decomposition, p_decomposition};
use residua::subnormal::{is_subnormal_kind, SubnormalKind};
use residua::{Error, Params, PermGroup, Permutation, Result};

mod fixtures;

#[derive(Parser)]
#[command(
    name = "residua",
    version,
    about = "Formation residuals, quotient membership and F-subnormality for permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output, one JSON document per input file.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order the brute-force oracle will enumerate.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_order: Option<u64>,
    /// Worker threads over input files. Output order follows the arguments.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Order, prime divisors and chief series.
    Info(Files),
    /// Residual of each group for a formation.
    Residual(FormationArgs),
    /// Whether G/K lies in the formation (exit 0 true, 1 false).
    Member(MemberArgs),
    /// Whether the `sub:` subgroup is (K-)F-subnormal (exit 0 true, 1 false).
    Subnormal(SubnormalArgs),
    /// Orders of the terms of a chief series.
    ChiefSeries(Files),
    /// Non-abelian or p-layer decomposition of a normal subgroup.
    Decompose(DecomposeArgs),
    /// The same questions answered by brute force over subgroup lattices.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Rewrite the oracle-verified `.expected.json` sidecars of a corpus.
    RegenFixtures {
        #[arg(default_value = "corpus")]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Residual(FormationArgs),
    Member(MemberArgs),
    Subnormal(SubnormalArgs),
}

#[derive(Args)]
struct Files {
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct FormationArgs {
    #[arg(long)]
    formation: String,
    #[command(flatten)]
    files: Files,
}

#[derive(Args)]
struct MemberArgs {
    #[command(flatten)]
    formation: FormationArgs,
    /// Generators of the normal subgroup K, in cycle notation. Repeat the
    /// flag or separate with ';'.
    #[arg(long = "mod")]
    modulo: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    K,
    F,
}

#[derive(Args)]
struct SubnormalArgs {
    #[command(flatten)]
    formation: FormationArgs,
    #[arg(long, value_enum, default_value = "k")]
    kind: Kind,
    /// Generators of H; overrides the file's `sub:` lines.
    #[arg(long)]
    sub: Vec<String>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Generators of the normal subgroup N (default: the whole group).
    #[arg(long)]
    normal: Vec<String>,
    /// Decompose the p-layer instead of the non-abelian layer.
    #[arg(long)]
    prime: Option<u64>,
    #[command(flatten)]
    files: Files,
}

/// What one file produced: a report, plus a verdict for yes/no commands.
struct Report {
    text: String,
    json: Value,
    verdict: Option<bool>,
}

impl Report {
    fn plain(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            verdict: None,
        }
    }
}

fn kind_of(k: Kind) -> SubnormalKind {
    match k {
        Kind::K => SubnormalKind::K,
        Kind::F => SubnormalKind::Plain,
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::K => "k",
        Kind::F => "f",
    }
}

/// Generators from repeated `--mod`-style flags; each value may hold several
/// permutations separated by ';'.
fn subgroup_from(g: &PermGroup, values: &[String], params: &Params) -> Result<PermGroup> {
    let gens = values
        .iter()
        .flat_map(|v| v.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse_cycles(g.degree(), s))
        .collect::<Result<Vec<_>>>()?;
    let h = PermGroup::with_params(g.degree(), gens, params)?;
    if !h.is_subgroup_of(g) {
        return Err(Error::Input("given generators do not lie in G".into()));
    }
    Ok(h)
}

fn group_json(h: &PermGroup) -> Value {
    json!({
        "order": h.order().to_string(),
        "generators": h.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn group_text(h: &PermGroup) -> String {
    let gens: Vec<String> = h.generators().iter().map(ToString::to_string).collect();
    let gens = if gens.is_empty() {
        "()".to_string()
    } else {
        gens.join(" ")
    };
    format!("order: {}\ngenerators: {gens}", h.order())
}

fn verdict(key: &str, v: bool, mut extra: serde_json::Map<String, Value>, text: String) -> Report {
    extra.insert(key.to_string(), Value::Bool(v));
    Report {
        text,
        json: Value::Object(extra),
        verdict: Some(v),
    }
}

fn info(file: &GroupFile, params: &Params) -> Result<Report> {
    let g = &file.group;
    let series = chief_series(g, params)?;
    let factors = series.factors(g);
    let primes = g.primes();
    let mut text = format!(
        "order: {}\nprimes: {}\nchief factors:",
        g.order(),
        primes
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    if factors.is_empty() {
        text.push_str(" none");
    }
    let mut entries = Vec::new();
    for sec in &factors {
        let abelian = sec.is_abelian();
        text.push_str(&format!(
            " {}{}",
            sec.size(),
            if abelian { "" } else { "*" }
        ));
        entries.push(json!({"order": sec.size().to_string(), "abelian": abelian}));
    }
    if factors.iter().any(|s| !s.is_abelian()) {
        text.push_str("  (* non-abelian)");
    }
    let json = json!({
        "order": g.order().to_string(),
        "primes": primes,
        "chief_factors": entries,
    });
    Ok(Report::plain(text, json))
}

fn chief(file: &GroupFile, params: &Params) -> Result<Report> {
    let orders: Vec<String> = chief_series(&file.group, params)?
        .orders()
        .iter()
        .map(ToString::to_string)
        .collect();
    Ok(Report::plain(
        orders.join(" > "),
        json!({ "orders": orders }),
    ))
}

fn residual(file: &GroupFile, f: &Formation, oracle: bool, params: &Params) -> Result<Report> {
    let g = &file.group;
    let r = match (f, oracle) {
        (_, false) => f.residual(g, params)?,
        (Formation::Chief(c), true) => brute_residual(g, c, params)?,
        (Formation::Sylow(s), true) => brute_sylow_residual(g, s, params)?,
    };
    Ok(Report::plain(group_text(&r), group_json(&r)))
}

fn member(
    file: &GroupFile,
    a: &MemberArgs,
    f: &Formation,
    oracle: bool,
    params: &Params,
) -> Result<Report> {
    let g = &file.group;
    let k = subgroup_from(g, &a.modulo, params)?;
    if !k.is_normal_in(g) {
        return Err(Error::Input("K is not a normal subgroup of G".into()));
    }
    let v = match (f, oracle) {
        (_, false) => f.member_mod(g, &k, params)?,
        (Formation::Chief(c), true) => brute_member(g, &k, c, params)?,
        (Formation::Sylow(s), true) => brute_sylow_residual(g, s, params)?.is_subgroup_of(&k),
    };
    let mut extra = serde_json::Map::new();
    extra.insert("mod_order".into(), Value::String(k.order().to_string()));
    Ok(verdict("member", v, extra, format!("member: {v}")))
}

fn subnormal(
    file: &GroupFile,
    a: &SubnormalArgs,
    f: &Formation,
    oracle: bool,
    params: &Params,
) -> Result<Report> {
    let g = &file.group;
    let h = if !a.sub.is_empty() {
        subgroup_from(g, &a.sub, params)?
    } else {
        file.sub
            .clone()
            .ok_or_else(|| Error::Input("no subgroup: add `sub:` lines or pass --sub".into()))?
    };
    let c = f.chief()?;
    let kind = kind_of(a.kind);
    let mut extra = serde_json::Map::new();
    extra.insert("kind".into(), Value::String(kind_name(a.kind).into()));
    if oracle {
        let v = brute_kf_subnormal(g, &h, c, kind, params)?;
        return Ok(verdict("subnormal", v, extra, format!("subnormal: {v}")));
    }
    let (v, trace) = is_subnormal_kind(g, &h, c, kind, params)?;
    let chain: Vec<String> = trace.orders().iter().map(ToString::to_string).collect();
    let text = format!("subnormal: {v}\nchain: {}", chain.join(" > "));
    extra.insert("chain".into(), json!(chain));
    Ok(verdict("subnormal", v, extra, text))
}

fn decompose(file: &GroupFile, a: &DecomposeArgs, params: &Params) -> Result<Report> {
    let g = &file.group;
    let n = if a.normal.is_empty() {
        g.clone()
    } else {
        subgroup_from(g, &a.normal, params)?
    };
    let dec = match a.prime {
        Some(p) => p_decomposition(g, &n, p, params)?,
        None => nonabelian_decomposition(g, &n, params)?,
    };
    let mut text = format!("residual {}", group_text(&dec.residual).replace('\n', ", "));
    for m in &dec.minimals {
        text.push_str(&format!("\nminimal {}", group_text(m).replace('\n', ", ")));
    }
    let json = json!({
        "residual": group_json(&dec.residual),
        "minimals": dec.minimals.iter().map(group_json).collect::<Vec<_>>(),
    });
    Ok(Report::plain(text, json))
}

fn run_file(cli: &Cli, path: &Path, f: Option<&Formation>, params: &Params) -> Result<Report> {
    let file = groupfile::load(path, params)?;
    let f = || f.expect("formation parsed up front");
    match &cli.command {
        Command::Info(_) => info(&file, params),
        Command::ChiefSeries(_) => chief(&file, params),
        Command::Residual(_) => residual(&file, f(), false, params),
        Command::Member(a) => member(&file, a, f(), false, params),
        Command::Subnormal(a) => subnormal(&file, a, f(), false, params),
        Command::Decompose(a) => decompose(&file, a, params),
        Command::Oracle(OracleCommand::Residual(_)) => residual(&file, f(), true, params),
        Command::Oracle(OracleCommand::Member(a)) => member(&file, a, f(), true, params),
        Command::Oracle(OracleCommand::Subnormal(a)) => subnormal(&file, a, f(), true, params),
        Command::RegenFixtures { .. } => unreachable!(),
    }
}

fn files_and_formation(cmd: &Command) -> (&[PathBuf], Option<&str>) {
    match cmd {
        Command::Info(a) | Command::ChiefSeries(a) => (&a.files, None),
        Command::Decompose(a) => (&a.files.files, None),
        Command::Residual(a) | Command::Oracle(OracleCommand::Residual(a)) => {
            (&a.files.files, Some(&a.formation))
        }
        Command::Member(a) | Command::Oracle(OracleCommand::Member(a)) => {
            (&a.formation.files.files, Some(&a.formation.formation))
        }
        Command::Subnormal(a) | Command::Oracle(OracleCommand::Subnormal(a)) => {
            (&a.formation.files.files, Some(&a.formation.formation))
        }
        Command::RegenFixtures { .. } => (&[], None),
    }
}

/// Runs `work` on every path with up to `jobs` threads, keeping input order.
fn run_all<T: Send>(paths: &[PathBuf], jobs: usize, work: impl Fn(&Path) -> T + Sync) -> Vec<T> {
    let jobs = jobs.min(paths.len()).max(1);
    if jobs == 1 {
        return paths.iter().map(|p| work(p)).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..paths.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= paths.len() {
                    break;
                }
                let out = work(&paths[i]);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    slots.into_iter().map(|s| s.unwrap()).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut params = Params::with_seed(cli.seed);
    if let Some(m) = cli.max_order {
        params.max_order = m;
    }
    if let Command::RegenFixtures { dir } = &cli.command {
        return match fixtures::regen(dir, &params) {
            Ok(n) => {
                println!("wrote {n} sidecars");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("residua: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        };
    }
    let (paths, expr) = files_and_formation(&cli.command);
    let formation = match expr.map(parse_formation).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("residua: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let results = run_all(paths, cli.jobs as usize, |p| {
        run_file(&cli, p, formation.as_ref(), &params)
    });
    let many = paths.len() > 1;
    let mut error_code = None;
    let mut all_true = true;
    for (path, res) in paths.iter().zip(results) {
        match res {
            Ok(report) => {
                all_true &= report.verdict.unwrap_or(true);
                if cli.json {
                    let mut v = report.json;
                    if many {
                        v["file"] = Value::String(path.display().to_string());
                    }
                    println!("{v}");
                } else {
                    if many {
                        println!("== {} ==", path.display());
                    }
                    println!("{}", report.text);
                }
            }
            Err(e) => {
                eprintln!("residua: {}: {e}", path.display());
                error_code.get_or_insert(e.exit_code());
            }
        }
    }
    match error_code {
        Some(c) => ExitCode::from(c as u8),
        None if all_true => ExitCode::SUCCESS,
        None => ExitCode::from(1),
    }
}
