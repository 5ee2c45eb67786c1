use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use entrank::cert_json::CertificateJson;
use entrank::corpus::{CorpusSpec, NamedGraph};
use entrank::io::{read_graph, to_dot, to_edge_list};
use entrank::suite::{run_equivalence_suite, run_theorem_suite, SuiteOptions};
use entrank_core::comeback::{solve_comeback_game, ComebackGame};
use entrank_core::entanglement::{min_k, EntanglementGame, Variant};
use entrank_core::game::{self, verify_certificate, Game, DEFAULT_CEILING};
use entrank_core::muterm::{analyze, infer_signature, parse_with, Signature};
use entrank_core::rank::{rank, RankGame};
use entrank_core::translate::translate_rank_strategy;
use entrank_core::Player;

#[derive(Parser)]
#[command(name = "entrank", version, about = "Rank and entanglement of digraphs through their pursuit games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rank and the entanglement of a graph.
    Measure {
        file: PathBuf,
        #[arg(long)]
        rank: bool,
        #[arg(long)]
        ent: bool,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Solve one game and check the winner's strategy by replay.
    Game {
        kind: GameChoice,
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        variant: Option<VariantChoice>,
        /// Write the winner's certificate as JSON.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Run a verification suite; the exit code is 1 on any violation.
    Verify {
        suite: SuiteChoice,
        /// Corpus spec such as `random:n=6,p=0.3,seed=42,count=100` or
        /// `upath:1..32`; repeatable.
        #[arg(long)]
        corpus: Vec<CorpusSpec>,
        /// Graph files.
        files: Vec<PathBuf>,
        /// Write the JSON report to a file, or to stdout without one.
        #[arg(long, num_args = 0..=1)]
        json: Option<Option<PathBuf>>,
        /// Add wall time to the report summary.
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Write a corpus as graph files.
    Gen(GenArgs),
    /// Work with μ-terms.
    Muterm {
        #[command(subcommand)]
        command: MutermCommand,
    },
    /// Turn a Cops strategy for the rank game with come back into one for
    /// the entanglement game with virtual cops, and check it.
    Translate {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
    },
}

#[derive(Subcommand)]
enum MutermCommand {
    /// Star height, term-graph rank and entanglement of the term in a file.
    /// Lines `op <symbol> <arity>` declare the signature; without them it is
    /// inferred from the term.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    corpus: Option<CorpusSpec>,
    #[arg(long, conflicts_with_all = ["corpus", "n"])]
    family: Option<String>,
    /// A size or an inclusive range `lo..hi`.
    #[arg(long, requires = "family")]
    size: Option<String>,
    #[arg(long, conflicts_with = "corpus")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    p: Option<f64>,
    #[arg(long, requires = "n", default_value_t = 0)]
    seed: u64,
    #[arg(long, requires = "n", default_value_t = 1)]
    count: usize,
    #[arg(short, long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Edges)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameChoice {
    Rank,
    Ent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantChoice {
    Gamma,
    Et,
    Entv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteChoice {
    Theorem,
    Equiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when a check failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Measure { file, rank: r, ent, all, ceiling } => measure(&file, r, ent, all, ceiling),
        Command::Game { kind, file, k, variant, cert, ceiling } => {
            let g = read_graph(&file)?;
            match (kind, variant) {
                (GameChoice::Rank, None) => play(&RankGame::new(&g, k), cert.as_deref(), ceiling),
                (GameChoice::Rank, Some(VariantChoice::Gamma)) => {
                    play(&ComebackGame::new(&g, k), cert.as_deref(), ceiling)
                }
                (GameChoice::Ent, None) => play(&EntanglementGame::new(&g, k, Variant::Ent), cert.as_deref(), ceiling),
                (GameChoice::Ent, Some(VariantChoice::Et)) => {
                    play(&EntanglementGame::new(&g, k, Variant::Et), cert.as_deref(), ceiling)
                }
                (GameChoice::Ent, Some(VariantChoice::Entv)) => {
                    play(&EntanglementGame::new(&g, k, Variant::Entv), cert.as_deref(), ceiling)
                }
                (GameChoice::Rank, Some(_)) => bail!("the rank game takes only --variant gamma"),
                (GameChoice::Ent, Some(_)) => bail!("the entanglement game takes --variant et or entv"),
            }
        }
        Command::Verify { suite, corpus, files, json, timing, ceiling } => {
            verify(suite, &corpus, &files, json, SuiteOptions { ceiling, timing, ..SuiteOptions::default() })
        }
        Command::Gen(args) => generate(args),
        Command::Muterm { command: MutermCommand::Analyze { file, ceiling } } => analyze_term(&file, ceiling),
        Command::Translate { file, k, cert, ceiling } => translate(&file, k, cert.as_deref(), ceiling),
    }
}

fn measure(file: &Path, want_rank: bool, want_ent: bool, all: bool, ceiling: usize) -> Result<bool> {
    let g = read_graph(file)?;
    let everything = all || !(want_rank || want_ent);
    println!("vertices={}", g.vertex_count());
    println!("edges={}", g.edge_count());
    if everything || want_rank {
        println!("rank={}", rank(&g));
    }
    if everything || want_ent {
        println!("ent={}", min_k(&g, Variant::Ent, ceiling)?);
    }
    Ok(true)
}

fn play<G>(g: &G, cert: Option<&Path>, ceiling: usize) -> Result<bool>
where
    G: Game,
    G::Position: std::fmt::Display,
    G::Move: std::fmt::Display,
{
    let solution = game::solve(g, ceiling)?;
    println!("game={} k={}", g.kind().name(), g.budget());
    println!("winner={}", solution.winner);
    println!("positions={}", solution.stats.positions);
    println!("moves={}", solution.stats.moves);
    let verdict = verify_certificate(g, &solution.certificate, ceiling);
    println!("certificate_entries={}", solution.certificate.entries.len());
    println!("certificate={}", if verdict.passed() { "verified" } else { "rejected" });
    if let Some(path) = cert {
        write_file(path, &CertificateJson::from(&solution.certificate).to_json())?;
    }
    Ok(verdict.passed())
}

fn load_corpus(specs: &[CorpusSpec], files: &[PathBuf]) -> Result<Vec<NamedGraph>> {
    let mut corpus: Vec<NamedGraph> = specs.iter().flat_map(CorpusSpec::generate).collect();
    for path in files {
        corpus.push(NamedGraph {
            id: path.display().to_string(),
            graph: read_graph(path)?,
        });
    }
    if corpus.is_empty() {
        bail!("no graphs: give --corpus specs or graph files");
    }
    Ok(corpus)
}

fn verify(
    suite: SuiteChoice,
    specs: &[CorpusSpec],
    files: &[PathBuf],
    json: Option<Option<PathBuf>>,
    options: SuiteOptions,
) -> Result<bool> {
    let corpus = load_corpus(specs, files)?;
    let report = match suite {
        SuiteChoice::Theorem => run_theorem_suite(&corpus, &options),
        SuiteChoice::Equiv => run_equivalence_suite(&corpus, &options),
    };
    match json {
        Some(None) => std::io::stdout().write_all(report.to_json().as_bytes())?,
        Some(Some(path)) => write_file(&path, &report.to_json())?,
        None => {
            for v in &report.violations {
                println!("violation {} {}: {}", v.graph, v.check, v.detail);
            }
            for s in &report.skips {
                println!("skip {} {}: {}", s.graph, s.check, s.reason);
            }
        }
    }
    let s = &report.summary;
    eprintln!(
        "{}: checked={} violations={} skips={}",
        report.suite, s.checked, s.violations, s.ceiling_skips
    );
    Ok(report.passed())
}

fn generate(args: GenArgs) -> Result<bool> {
    let spec = if let Some(spec) = args.corpus {
        spec
    } else if let Some(family) = args.family {
        let size = args.size.context("--family needs --size")?;
        format!("{family}:{size}").parse()?
    } else if let Some(n) = args.n {
        CorpusSpec::random(n, args.p.context("--n needs --p")?, args.seed, args.count)?
    } else {
        bail!("give --corpus, --family with --size, or --n with --p");
    };
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let graphs = spec.generate();
    for named in &graphs {
        let (text, ext) = match args.format {
            Format::Edges => (to_edge_list(&named.graph), "txt"),
            Format::Dot => (to_dot(&named.graph), "dot"),
        };
        write_file(&args.out.join(format!("{}.{ext}", named.id)), &text)?;
    }
    println!("wrote {} graphs to {}", graphs.len(), args.out.display());
    Ok(true)
}

fn analyze_term(file: &Path, ceiling: usize) -> Result<bool> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mut signature = Signature::new();
    let mut term = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or_default().trim();
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["op", symbol, arity] => {
                let arity = arity.parse().with_context(|| format!("bad arity in `{line}`"))?;
                signature.insert(symbol.to_string(), arity);
            }
            _ => {
                term.push_str(line);
                term.push('\n');
            }
        }
    }
    if signature.is_empty() {
        signature = infer_signature(&term)?;
    }
    let t = parse_with(&term, &signature)?;
    let report = analyze(&t, ceiling)?;
    println!("term={t}");
    print!("{report}");
    Ok(true)
}

fn translate(file: &Path, k: usize, cert: Option<&Path>, ceiling: usize) -> Result<bool> {
    let g = read_graph(file)?;
    let solution = solve_comeback_game(&g, k, ceiling)?;
    println!("comeback_winner={}", solution.winner);
    if solution.winner != Player::Cops {
        println!("nothing to translate: Cops lose the rank game with come back at k={k}");
        return Ok(false);
    }
    let translation = translate_rank_strategy(&g, &solution.certificate, ceiling).map_err(|e| anyhow::anyhow!("{e}"))?;
    let s = translation.stats;
    println!("entv_positions={}", s.cops_positions);
    println!("forward={} come_back={} rewind={} skip={} materialize={}", s.forward_moves, s.come_backs, s.rewinds, s.skips, s.materializations);
    let game = EntanglementGame::new(&g, k, Variant::Entv);
    let verdict = verify_certificate(&game, &translation.certificate, ceiling);
    match &verdict.failure {
        None => println!("certificate=verified"),
        Some(failure) => {
            println!("certificate=rejected {failure:?}");
            let trace: Vec<String> = verdict.trace.iter().map(ToString::to_string).collect();
            println!("trace={}", trace.join(" "));
        }
    }
    if let Some(path) = cert {
        write_file(path, &CertificateJson::from(&translation.certificate).to_json())?;
    }
    Ok(verdict.passed())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

