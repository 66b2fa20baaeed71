//! `cluster-dyn`: seeds, mutation, Q-system orbits and the verification suites
//! as reproducible batch runs. Exit status is 0 iff every requested check passed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info};

use cluster_dyn::algebra::{format_rational, parse_rational, Rational};
use cluster_dyn::cartan::{build_sigma_c, build_word_seed, catalog, DoubleReducedWord, FiniteType, TypeTag};
use cluster_dyn::groups::{factorization_element, invariant_ratios};
use cluster_dyn::qsystem::{self, QState, QSystemSpec};
use cluster_dyn::sampling;
use cluster_dyn::seeds::{cluster_automorphism, Flavor, Label, Seed, TorusPoint};
use cluster_dyn::suite::{self, SuiteReport};

type Error = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(name = "cluster-dyn", version, about = "Exact cluster-algebra dynamics and verification runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a word seed or the seed Σ_C.
    Seed(SeedArgs),
    /// Mutate a seed along a sequence, optionally carrying A-coordinates.
    Mutate(MutateArgs),
    /// Tabulate a Q-system orbit.
    Qsystem(QsystemArgs),
    /// Iterate the cluster map μ̂_σ of Σ_C on numeric coordinates.
    Orbit(OrbitArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SeedSource {
    /// Type tag such as A2, G2, D4~ or A5(2).
    #[arg(long = "type")]
    tag: String,
    /// Comma-separated double reduced word such as -1,-2,1,2.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "sigma_c")]
    word: Option<String>,
    /// Σ_C (the default when no word is given).
    #[arg(long)]
    sigma_c: bool,
}

impl SeedSource {
    fn build(&self) -> Result<(String, Seed), Error> {
        let tag: TypeTag = self.tag.parse()?;
        let cartan = catalog(tag)?;
        Ok(match &self.word {
            Some(w) => {
                let word = DoubleReducedWord::parse(&cartan, w)?;
                (format!("{tag} word {word}"), build_word_seed(&cartan, &word)?)
            }
            None => (format!("{tag} Sigma_C"), build_sigma_c(&cartan)?.seed),
        })
    }
}

#[derive(Args)]
struct SeedArgs {
    #[command(flatten)]
    source: SeedSource,
    /// Also write the seed as JSON; `-` for standard output.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct MutateArgs {
    #[command(flatten)]
    source: SeedSource,
    /// Comma-separated mutation indices, applied left to right.
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    /// Initial A-coordinates, one per index; omitted means exchange matrices only.
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct QsystemArgs {
    /// Affine tag (A1~, D4(3), ...) or the finite type Y_M of the Q-system.
    #[arg(long = "type")]
    tag: String,
    /// The 2r values `Q_0^(1..r), Q_1^(1..r)`.
    #[arg(long, allow_hyphen_values = true)]
    init: String,
    /// Number of recurrence steps; levels 0 through `steps` are printed.
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// Use the Q-system with signs instead of the normalized one.
    #[arg(long)]
    signed: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    A,
    X,
}

#[derive(Args)]
struct OrbitArgs {
    /// Finite type of Σ_C.
    #[arg(long = "type")]
    tag: String,
    /// Initial coordinates; random positive rationals from `--seed` when omitted.
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = FlavorArg::X)]
    flavor: FlavorArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    SigmaPeriod,
    Amalgamation,
    BmatrixBlocks,
    CoxeterIdentity,
    QVsCluster,
    QRelations,
    QConservation,
    Twist,
    Ensemble,
    FactorizationConservation,
    Sl2Golden,
    Laurent,
    Involutions,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    /// Comma-separated tags, or all-finite, all-untwisted, all-twisted.
    #[arg(long = "type", default_value = "all-finite")]
    tag: String,
    /// Rank bound for the `all-*` tag sets.
    #[arg(long, alias = "rank", default_value_t = 8)]
    max_rank: usize,
    /// Comma-separated `n` for the SL_n checks (ranks for q-conservation).
    #[arg(long, default_value = "2,3,4")]
    n: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Orbit length, or the maximal sequence length for laurent.
    #[arg(long, default_value_t = 50)]
    steps: usize,
    /// Starting points per orbit check, or sequences per seed for laurent.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// q-vs-cluster: compare rational functions instead of random points.
    #[arg(long)]
    symbolic: bool,
    /// laurent: term pairs allowed per mutation step.
    #[arg(long, default_value_t = suite::LAURENT_WORK_BUDGET)]
    budget: usize,
    /// Write the report as JSON; `-` for standard output.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CLUSTER_DYN_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Seed(a) => cmd_seed(a),
        Command::Mutate(a) => cmd_mutate(a),
        Command::Qsystem(a) => cmd_qsystem(a),
        Command::Orbit(a) => cmd_orbit(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Error>
where
    T::Err: std::fmt::Display,
{
    s.split(',').map(|t| t.trim().parse::<T>().map_err(|e| format!("bad list entry {t:?}: {e}").into())).collect()
}

fn parse_values(s: &str) -> Result<Vec<Rational>, Error> {
    Ok(s.split(',').map(|t| parse_rational(t.trim())).collect::<Result<_, _>>()?)
}

fn join(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn write_json(path: &PathBuf, body: &str) -> Result<(), Error> {
    if path.as_os_str() == "-" {
        println!("{body}");
    } else {
        fs::write(path, format!("{body}\n"))?;
        info!("wrote {}", path.display());
    }
    Ok(())
}

fn print_seed(title: &str, seed: &Seed) {
    println!("{title}");
    let labels: Vec<String> = seed.indices().iter().map(Label::to_string).collect();
    println!("indices: {}", labels.join(" "));
    let frozen: Vec<String> = seed.frozen().iter().map(Label::to_string).collect();
    println!("frozen: {}", if frozen.is_empty() { "-".to_string() } else { frozen.join(" ") });
    let d: Vec<String> = seed.d().iter().map(i64::to_string).collect();
    println!("d: {}", d.join(" "));
    println!("B:");
    let rows = seed.b().to_strings();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        println!("  {}", cells.join(" "));
    }
}

fn cmd_seed(a: &SeedArgs) -> Result<bool, Error> {
    let (title, seed) = a.source.build()?;
    print_seed(&title, &seed);
    if let Some(path) = &a.json {
        write_json(path, &seed.to_json())?;
    }
    Ok(true)
}

fn cmd_mutate(a: &MutateArgs) -> Result<bool, Error> {
    let (title, mut seed) = a.source.build()?;
    let seq: Vec<Label> = parse_list(&a.seq)?;
    let mut point = match &a.init {
        Some(s) => Some(TorusPoint::new(Flavor::A, seed.indices().to_vec(), parse_values(s)?)?),
        None => None,
    };
    if let Some(p) = &point {
        println!("A: {}", join(p.values()));
    }
    for &k in &seq {
        if let Some(p) = &point {
            let next = p.mutate_a(&seed, k)?;
            println!("mu_{k} A: {}", join(next.values()));
            point = Some(next);
        }
        seed = seed.mutate(k)?;
    }
    let steps: Vec<String> = seq.iter().map(Label::to_string).collect();
    print_seed(&format!("{title} mutated along {}", steps.join(",")), &seed);
    if let Some(path) = &a.json {
        write_json(path, &seed.to_json())?;
    }
    Ok(true)
}

fn cmd_qsystem(a: &QsystemArgs) -> Result<bool, Error> {
    let spec: QSystemSpec = a.tag.parse()?;
    let values = parse_values(&a.init)?;
    let state = QState::initial(&values, !a.signed)?;
    let (layers, failure) = qsystem::orbit(&spec, &state, a.steps.saturating_sub(1));
    let layers = &layers[..layers.len().min(a.steps + 1)];
    println!("{} Q-system, Y = {}{}", spec.tag(), spec.cartan().tag().map(|t| t.to_string()).unwrap_or_default(),
        if a.signed { "" } else { ", normalized" });
    for (n, layer) in layers.iter().enumerate() {
        println!("{n}\t{}", layer.iter().map(format_rational).collect::<Vec<_>>().join("\t"));
    }
    for node in 0..spec.rank() {
        let series: Vec<Rational> = layers.iter().map(|l| l[node].clone()).collect();
        println!("Q({}): {}", node + 1, join(&series));
    }
    match failure {
        Some(e) => {
            eprintln!("orbit stopped: {e}");
            Ok(false)
        }
        None => Ok(true),
    }
}

fn cmd_orbit(a: &OrbitArgs) -> Result<bool, Error> {
    let tag: TypeTag = a.tag.parse()?;
    let cartan = catalog(tag)?;
    let sigma = build_sigma_c(&cartan)?;
    let values = match &a.init {
        Some(s) => parse_values(s)?,
        None => sampling::positive_rationals(&mut sampling::rng(a.seed), sigma.seed.len()),
    };
    let flavor = match a.flavor {
        FlavorArg::A => Flavor::A,
        FlavorArg::X => Flavor::X,
    };
    // The X-orbit of type A_{n-1} is the factorization dynamics on SL_n; its
    // invariants are reported alongside.
    let sl_n = match (tag, flavor) {
        (TypeTag::Finite(FiniteType { family: cluster_dyn::cartan::Family::A, rank }), Flavor::X) => Some(rank + 1),
        _ => None,
    };
    let invariants = |x: &[Rational]| -> Option<String> {
        let n = sl_n?;
        let ratios = factorization_element(n, x).and_then(|g| invariant_ratios(&g)).ok()?;
        Some(ratios.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
    };
    println!("{tag} Sigma_C {:?}-orbit", flavor);
    let mut point = TorusPoint::new(flavor, sigma.seed.indices().to_vec(), values)?;
    let mut conserved = true;
    let initial = invariants(point.values());
    for step in 0..=a.steps {
        let inv = invariants(point.values());
        match &inv {
            Some(s) => println!("{step}\t{}\tI: {s}", join(point.values())),
            None => println!("{step}\t{}", join(point.values())),
        }
        conserved &= inv == initial;
        if step == a.steps {
            break;
        }
        debug!("step {step}");
        point = match cluster_automorphism(&sigma.seed, &sigma.sequence, &sigma.sigma, &point, false) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("orbit stopped after step {step}: {e}");
                return Ok(false);
            }
        };
    }
    if sl_n.is_some() && !conserved {
        eprintln!("invariants not conserved");
    }
    Ok(conserved)
}

fn tag_set(spec: &str, max_rank: usize) -> Result<Vec<TypeTag>, Error> {
    Ok(match spec {
        "all-finite" => suite::finite_tags(max_rank),
        "all-untwisted" => TypeTag::all_untwisted_up_to(max_rank),
        "all-twisted" => TypeTag::all_twisted_up_to(max_rank),
        _ => parse_list(spec)?,
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool, Error> {
    let tags = || tag_set(&a.tag, a.max_rank);
    let ns = || parse_list::<usize>(&a.n);
    info!("verify {:?} seed {}", a.check.to_possible_value().map(|v| v.get_name().to_string()), a.seed);
    let report: SuiteReport = match a.check {
        Check::SigmaPeriod => suite::sigma_period(&tags()?),
        Check::Amalgamation => suite::amalgamation(&tags()?),
        Check::BmatrixBlocks => suite::bmatrix_blocks(&tags()?),
        Check::CoxeterIdentity => suite::coxeter_identity(&tags()?),
        Check::QVsCluster if a.symbolic => suite::q_vs_cluster_symbolic(&tags()?, a.depth),
        Check::QVsCluster => suite::q_vs_cluster_numeric(&tags()?, a.depth, a.trials, a.seed),
        Check::QRelations => suite::q_relations(&tags()?),
        Check::QConservation => suite::q_orbit_conservation(&ns()?, a.points, a.steps, a.seed),
        Check::Twist => suite::twist_theorem(&ns()?, a.trials, a.seed),
        Check::Ensemble => suite::ensemble(&ns()?, a.trials, a.seed),
        Check::FactorizationConservation => suite::factorization_conservation(&ns()?, a.points, a.steps, a.seed),
        Check::Sl2Golden => suite::sl2_golden(),
        Check::Laurent => suite::laurent(&tags()?, a.points, a.steps, a.budget, a.seed),
        Check::Involutions => suite::involutions(ns()?.into_iter().max().unwrap_or(2)),
    };
    for c in &report.cases {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        match &c.detail {
            Some(d) => println!("{verdict} {}: {d}", c.name),
            None => println!("{verdict} {}", c.name),
        }
    }
    let failed = report.failures().count();
    println!("{}: {} cases, {failed} failed", report.check, report.cases.len());
    if let Some(path) = &a.json {
        write_json(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(report.passed())
}
