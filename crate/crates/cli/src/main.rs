use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use gamelang::{build, emit_dot, CompiledGame, Program};
use opengame::compare::{compare_builder, compare_game, detect_shape, CompareReport, OracleKind};
use opengame::finite::DEFAULT_ENUMERATION_CAP;
use opengame::json::{
    classic_game_from_json, context_from_json, context_to_json, profile_to_json, table_to_json, value_to_json,
};
use opengame::laws::{check_law, Algebra, Law, LawConfig};
use opengame::{sequential_game, simultaneous_game, Context, CoreError, OpenGame, Relation, StrategyProfile};

use opengame_cli::report::{Pair, Profile, Report, Slot, BR_TABLE_LIMIT};

#[derive(Parser)]
#[command(
    name = "opengame",
    version,
    about = "Compile and analyse open games over finite data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the equilibria of a game.
    Analyze(AnalyzeArgs),
    /// Check algebraic laws on random small games.
    Check(CheckArgs),
    /// Compare a game's best response relation with the classic oracle.
    Compare(CompareArgs),
    /// Print a game's string diagram in Graphviz DOT.
    Dot(DotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sim,
    Seq,
}

impl From<Kind> for OracleKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Sim => OracleKind::Simultaneous,
            Kind::Seq => OracleKind::Sequential,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutant {
    BrokenCompose,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Game to analyse; defaults to the last one declared.
    #[arg(long)]
    game: Option<String>,
    /// A context declared in the source.
    #[arg(long)]
    context: Option<String>,
    /// A context in JSON; takes precedence over `--context`.
    #[arg(long)]
    context_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the game's diagram to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Print the best response relation when it has at most 10^4 pairs.
    #[arg(long)]
    br_table: bool,
    /// Query best response membership for two profile indices.
    #[arg(long, num_args = 2, value_names = ["SIGMA", "DEV"])]
    pair: Option<Vec<u128>>,
    #[arg(long)]
    timing: bool,
    /// Largest number of strategy profiles to enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,
    /// Treat FILE as a JSON description of a classic game and solve it directly.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated laws; all of them by default.
    #[arg(long, value_delimiter = ',')]
    laws: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Composites with more profiles are redrawn.
    #[arg(long, default_value_t = 16)]
    max_profiles: u128,
    #[arg(long, value_enum)]
    mutant: Option<Mutant>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    file: Option<PathBuf>,
    #[arg(long)]
    game: Option<String>,
    /// Build the standard game instead of reading a file.
    #[arg(long, value_enum, conflicts_with = "file")]
    builder: Option<Kind>,
    /// Move set sizes for `--builder`.
    #[arg(long, value_delimiter = ',', requires = "builder")]
    sizes: Vec<usize>,
    /// Oracle to compare against; defaults to the builder's kind.
    #[arg(long, value_enum)]
    oracle: Option<Kind>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct DotArgs {
    file: PathBuf,
    #[arg(long)]
    game: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    /// Bad input; the message is printed as is.
    Usage(String),
    Core(CoreError),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

type RelationFn<'a> = dyn Fn() -> opengame::Result<Relation> + 'a;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => analyze(&a),
        Command::Check(c) => check(&c),
        Command::Compare(c) => compare(&c),
        Command::Dot(d) => dot(&d),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap_exceeded() { 3 } else { 2 })
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("error: cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("error: cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(String, Program), Failure> {
    let src = read(path)?;
    let name = path.display().to_string();
    match build(&src) {
        Ok(p) => Ok((src, p)),
        Err(diags) => Err(Failure::Usage(
            diags.0.iter().map(|d| d.render(&name, &src) + "\n").collect::<String>(),
        )),
    }
}

fn pick<'a>(program: &'a Program, name: Option<&str>) -> Result<&'a CompiledGame, Failure> {
    match name {
        Some(n) => program
            .game(n)
            .ok_or_else(|| Failure::Usage(format!("error: no game named `{n}`"))),
        None => program
            .games
            .last()
            .ok_or_else(|| Failure::Usage("error: the file declares no games".into())),
    }
}

fn emit(format: Format, text: String, json: &Json) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(json).expect("json")),
    }
}

fn analyze(a: &AnalyzeArgs) -> Outcome {
    if a.oracle {
        return analyze_oracle(a);
    }
    let start = Instant::now();
    let (_, program) = load(&a.file)?;
    let compiled = pick(&program, a.game.as_deref())?;
    let game = &compiled.game;
    if let Some(path) = &a.dot {
        write(path, &emit_dot(&compiled.name, &compiled.typed))?;
    }
    let ctx = resolve_context(a, &program, compiled)?;
    let mut report = Report::new(&compiled.name, format!("{} -> {}", game.dom(), game.cod()));
    report.slots = game
        .slots()
        .iter()
        .map(|s| Slot {
            id: s.id.clone(),
            obs: s.obs.to_string(),
            moves: s.moves.to_string(),
        })
        .collect();
    let space = game.profile_space()?;
    report.profiles = space.count();
    if !game.is_scalar() {
        report.context = Some(context_to_json(&ctx));
        report.context_display = Some(format!("state {}, continuation {}", ctx.state, ctx.continuation));
    }
    report.equilibria = game
        .equilibria_capped(&ctx, a.cap)?
        .into_iter()
        .map(|p| Profile {
            index: space.index_of(&p).expect("enumerated profile"),
            display: p.to_string(),
            tables: profile_to_json(&p),
        })
        .collect();
    let br = game.best_response(&ctx)?;
    if a.br_table {
        report.best_response = br_table(space.count(), &mut report.warnings, || br.materialize(BR_TABLE_LIMIT))?;
    }
    if let Some(pair) = &a.pair {
        let (s, t) = pair_indices(pair, space.count())?;
        let (sp, tp) = (space.nth(s), space.nth(t));
        report.pair = Some(Pair {
            sigma: s,
            dev: t,
            sigma_display: sp.to_string(),
            dev_display: tp.to_string(),
            member: br.contains(&sp, &tp)?,
        });
    }
    if a.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    print_report(a.format, &report);
    Ok(ExitCode::SUCCESS)
}

fn print_report(format: Format, report: &Report) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
}

fn br_table(
    count: u128,
    warnings: &mut Vec<String>,
    materialize: impl FnOnce() -> opengame::Result<Relation>,
) -> Result<Option<Vec<Vec<bool>>>, Failure> {
    let pairs = count.saturating_mul(count);
    if pairs > BR_TABLE_LIMIT {
        warnings.push(format!(
            "best response table omitted: {pairs} pairs exceed {BR_TABLE_LIMIT}; query single pairs with --pair"
        ));
        return Ok(None);
    }
    let rel = materialize()?;
    let n = rel.size();
    Ok(Some(
        (0..n).map(|i| (0..n).map(|j| rel.contains(i, j)).collect()).collect(),
    ))
}

fn pair_indices(pair: &[u128], count: u128) -> Result<(u128, u128), Failure> {
    let (s, t) = (pair[0], pair[1]);
    if s >= count || t >= count {
        return Err(Failure::Usage(format!(
            "error: profile index out of range: the game has {count} profiles"
        )));
    }
    Ok((s, t))
}

fn resolve_context(a: &AnalyzeArgs, program: &Program, compiled: &CompiledGame) -> Result<Context, Failure> {
    let game = &compiled.game;
    if let Some(path) = &a.context_file {
        let text = read(path)?;
        let j: Json =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("error: {}: {e}", path.display())))?;
        let ctx = context_from_json(&j, &game.dom().fwd, game.cod())?;
        game.check_context(&ctx)?;
        return Ok(ctx);
    }
    if let Some(name) = &a.context {
        let nc = program
            .context(name)
            .ok_or_else(|| Failure::Usage(format!("error: no context named `{name}`")))?;
        if nc.game != compiled.name {
            return Err(Failure::Usage(format!(
                "error: context `{name}` is declared for game `{}`, not `{}`",
                nc.game, compiled.name
            )));
        }
        return Ok(nc.context.clone());
    }
    if game.is_scalar() {
        return Ok(Context::trivial());
    }
    match program.contexts_for(&compiled.name).next() {
        Some(nc) => Ok(nc.context.clone()),
        None => Err(Failure::Usage(format!(
            "error: game `{}` has boundary {} -> {} and needs a context; declare one or pass --context-file",
            compiled.name,
            game.dom(),
            game.cod()
        ))),
    }
}

fn analyze_oracle(a: &AnalyzeArgs) -> Outcome {
    let start = Instant::now();
    let text = read(&a.file)?;
    let j: Json =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("error: {}: {e}", a.file.display())))?;
    let (kind, classic) = classic_game_from_json(&j)?;
    let moves = classic.moves().to_vec();
    // The compositional counterpart only supplies the profile count.
    let shape = match kind {
        OracleKind::Simultaneous => simultaneous_game(&moves)?,
        OracleKind::Sequential => sequential_game(&moves)?,
    };
    let count = shape.profile_count();
    if count > a.cap {
        return Err(CoreError::EnumerationCapExceeded {
            what: "strategy profiles".into(),
            count,
            cap: a.cap,
        }
        .into());
    }
    let name = a
        .file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut report = Report::new(&name, format!("{} -> {}", shape.dom(), shape.dom()));
    report.profiles = count;
    report.slots = (0..classic.players())
        .map(|i| Slot {
            id: format!("player{}", i + 1),
            obs: match kind {
                OracleKind::Simultaneous => opengame::Ty::unit().to_string(),
                OracleKind::Sequential => classic.history(i).to_string(),
            },
            moves: moves[i].to_string(),
        })
        .collect();
    let (profiles, rel_fn): (Vec<(String, Json)>, Box<RelationFn>) = match kind {
        OracleKind::Simultaneous => {
            let ps = classic.sim_profiles()?;
            let shown = ps
                .iter()
                .map(|p| {
                    let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                    (
                        format!("({})", parts.join(", ")),
                        Json::Array(p.iter().map(value_to_json).collect()),
                    )
                })
                .collect();
            (shown, Box::new(|| classic.sim_relation()))
        }
        OracleKind::Sequential => {
            let ps = classic.seq_profiles()?;
            let shown = ps
                .iter()
                .map(|p| {
                    let sp = StrategyProfile::new(p.clone());
                    (sp.to_string(), Json::Array(p.iter().map(table_to_json).collect()))
                })
                .collect();
            (shown, Box::new(|| classic.seq_relation()))
        }
    };
    let equilibria: Vec<String> = match kind {
        OracleKind::Simultaneous => classic
            .sim_equilibria()?
            .iter()
            .map(|p| format!("({})", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
            .collect(),
        OracleKind::Sequential => classic
            .seq_equilibria()?
            .into_iter()
            .map(|p| StrategyProfile::new(p).to_string())
            .collect(),
    };
    report.equilibria = profiles
        .iter()
        .enumerate()
        .filter(|(_, (d, _))| equilibria.contains(d))
        .map(|(i, (d, t))| Profile {
            index: i as u128,
            display: d.clone(),
            tables: t.clone(),
        })
        .collect();
    if a.br_table {
        report.best_response = br_table(count, &mut report.warnings, &rel_fn)?;
    }
    if let Some(pair) = &a.pair {
        let (s, t) = pair_indices(pair, count)?;
        let member = match kind {
            OracleKind::Simultaneous => {
                let ps = classic.sim_profiles()?;
                classic.sim_best_response(&ps[s as usize], &ps[t as usize])?
            }
            OracleKind::Sequential => {
                let ps = classic.seq_profiles()?;
                classic.seq_best_response(&ps[s as usize], &ps[t as usize])?
            }
        };
        report.pair = Some(Pair {
            sigma: s,
            dev: t,
            sigma_display: profiles[s as usize].0.clone(),
            dev_display: profiles[t as usize].0.clone(),
            member,
        });
    }
    if a.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    print_report(a.format, &report);
    Ok(ExitCode::SUCCESS)
}

fn check(c: &CheckArgs) -> Outcome {
    let laws = if c.laws.is_empty() {
        Law::ALL.to_vec()
    } else {
        c.laws
            .iter()
            .map(|s| {
                Law::parse(s.trim()).ok_or_else(|| {
                    let known: Vec<&str> = Law::ALL.iter().map(|l| l.name()).collect();
                    Failure::Usage(format!("error: unknown law `{s}`; known laws: {}", known.join(", ")))
                })
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let algebra = match c.mutant {
        Some(Mutant::BrokenCompose) => Algebra::BrokenCompose,
        None => Algebra::Faithful,
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = false;
    for law in laws {
        let config = LawConfig {
            seed: c.seed,
            trials: c.trials,
            max_profiles: c.max_profiles,
            ..LawConfig::default()
        };
        let out = check_law(law, algebra, &config)?;
        match &out.counterexample {
            None => {
                text.push_str(&format!("{law}: pass ({}/{})\n", out.passed, out.trials));
                rows.push(json!({"law": law.name(), "passed": out.passed, "trials": out.trials, "holds": true}));
            }
            Some(cex) => {
                failed = true;
                let mutant = if c.mutant.is_some() {
                    " --mutant broken-compose"
                } else {
                    ""
                };
                let repro = format!("opengame check --laws {law} --seed {} --trials 1{mutant}", cex.seed);
                text.push_str(&format!(
                    "{law}: FAIL at trial {} ({}/{} passed)\n  reason: {}\n  lhs: {}\n  rhs: {}\n  reproduce: {repro}\n",
                    cex.trial, out.passed, out.trials, cex.reason, cex.lhs, cex.rhs
                ));
                rows.push(json!({
                    "law": law.name(),
                    "passed": out.passed,
                    "trials": out.trials,
                    "holds": false,
                    "counterexample": {
                        "trial": cex.trial,
                        "seed": cex.seed,
                        "reason": cex.reason,
                        "lhs": cex.lhs,
                        "rhs": cex.rhs,
                    },
                }));
            }
        }
    }
    emit(c.format, text, &json!({"seed": c.seed, "laws": rows}));
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn compare(c: &CompareArgs) -> Outcome {
    let report: CompareReport = match (&c.file, c.builder) {
        (Some(file), _) => {
            let kind: OracleKind = c
                .oracle
                .ok_or_else(|| Failure::Usage("error: --oracle sim|seq is required with a file".into()))?
                .into();
            let (_, program) = load(file)?;
            let game: &OpenGame = &pick(&program, c.game.as_deref())?.game;
            detect_shape(game, kind).map_err(|e| Failure::Usage(format!("error: {e}")))?;
            compare_game(game, kind, c.trials, c.seed)?
        }
        (None, Some(builder)) => {
            if c.sizes.is_empty() || c.sizes.contains(&0) {
                return Err(Failure::Usage("error: --sizes needs positive move set sizes".into()));
            }
            let kind: OracleKind = c.oracle.unwrap_or(builder).into();
            let built: OracleKind = builder.into();
            if kind != built {
                return Err(Failure::Usage(
                    "error: game does not have the expected shape: builder and oracle differ".into(),
                ));
            }
            compare_builder(kind, &c.sizes, c.trials, c.seed)?
        }
        (None, None) => return Err(Failure::Usage("error: pass a FILE or --builder".into())),
    };
    let kind = match report.kind {
        OracleKind::Simultaneous => "sim",
        OracleKind::Sequential => "seq",
    };
    let mut text = format!(
        "agreement {}/{} ({kind} oracle, {} profiles, seed {})\n",
        report.agreed, report.trials, report.profiles, c.seed
    );
    let mut j = json!({
        "oracle": kind,
        "trials": report.trials,
        "agreed": report.agreed,
        "profiles": report.profiles,
        "seed": c.seed,
    });
    if let Some(d) = &report.first_disagreement {
        text.push_str(&format!(
            "first disagreement at trial {} (seed {}): pair ({}, {}) game {} oracle {}\n  q: {}\n",
            d.trial,
            c.seed.wrapping_add(d.trial as u64),
            d.sigma,
            d.dev,
            d.game,
            d.oracle,
            d.q
        ));
        j["disagreement"] = json!({
            "trial": d.trial,
            "sigma": d.sigma,
            "dev": d.dev,
            "game": d.game,
            "oracle": d.oracle,
            "q": table_to_json(&d.q),
        });
    }
    emit(c.format, text, &j);
    Ok(if report.all_agree() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn dot(d: &DotArgs) -> Outcome {
    let (_, program) = load(&d.file)?;
    let compiled = pick(&program, d.game.as_deref())?;
    let text = emit_dot(&compiled.name, &compiled.typed);
    match &d.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
