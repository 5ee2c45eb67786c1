//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use entrank::terms::{default_signature, TermGenerator, VARIABLES};
use entrank::suite::Violation;
use entrank::{run_equivalence_suite, run_theorem_suite, CorpusSpec, Family, NamedGraph, SuiteOptions, VerificationReport};
use entrank_core::entanglement::entanglement;
use entrank_core::families;
use entrank_core::muterm::{alpha_eq, analyze, compose, parse_with, substitute, MuTerm, Substitution};
use entrank_core::rank::rank;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PROBABILITIES: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];
const PER_CELL: usize = 20;
const TERM_SAMPLES: usize = 300;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn corpus() -> Vec<NamedGraph> {
    let mut graphs = Vec::new();
    for n in 2..=7 {
        for (i, &p) in PROBABILITIES.iter().enumerate() {
            let seed = 1000 + 10 * n as u64 + i as u64;
            graphs.extend(CorpusSpec::random(n, p, seed, PER_CELL).unwrap().generate());
        }
    }
    for family in Family::ALL {
        graphs.extend(CorpusSpec::family(family, 1..=7).unwrap().generate());
    }
    graphs
}

fn up_to(corpus: &[NamedGraph], n: usize) -> Vec<NamedGraph> {
    corpus.iter().filter(|g| g.graph.vertex_count() <= n).cloned().collect()
}

fn random_count(corpus: &[NamedGraph]) -> usize {
    corpus.iter().filter(|g| g.id.starts_with("random")).count()
}

fn failures<'a>(report: &'a VerificationReport, checks: &[&str]) -> Vec<&'a Violation> {
    report.violations.iter().filter(|v| checks.contains(&v.check.as_str())).collect()
}

fn describe(violations: &[&Violation]) -> String {
    violations
        .iter()
        .take(3)
        .map(|v| format!("{} [{}] {}", v.graph, v.check, v.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn path_rank() -> Outcome {
    let start = Instant::now();
    let wrong: Vec<String> = (1..=32usize)
        .filter_map(|n| {
            let r = rank(&families::undirected_path(n));
            (r != n.ilog2() as usize).then(|| format!("n={n}: rank {r}"))
        })
        .collect();
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(30);
    outcome(
        wrong.is_empty() && fast,
        format!("n=1..32, mismatches={:?}, {:.2?} (limit 30s)", wrong, elapsed),
    )
}

fn path_entanglement() -> Outcome {
    let mut wrong = Vec::new();
    for n in 1..=32usize {
        let e = entanglement(&families::undirected_path(n));
        if e > 2 || (n >= 3 && e != 2) {
            wrong.push(format!("n={n}: ent {e}"));
        }
    }
    outcome(wrong.is_empty(), format!("n=1..32, expected <= 2 and = 2 for n >= 3, mismatches={wrong:?}"))
}

fn theorem(corpus: &[NamedGraph]) -> Outcome {
    let start = Instant::now();
    let report = run_theorem_suite(corpus, &SuiteOptions { translate_max: 0, ..SuiteOptions::default() });
    let elapsed = start.elapsed();
    let bad = failures(&report, &["theorem"]);
    let randoms = random_count(corpus);
    let pass = bad.is_empty() && report.skips.is_empty() && randoms >= 500 && elapsed < Duration::from_secs(600);
    outcome(
        pass,
        format!(
            "{} graphs ({randoms} random, n<=7), violations={}, skips={}, {:.2?} (limit 10min) {}",
            report.records.len(),
            bad.len(),
            report.skips.len(),
            elapsed,
            describe(&bad)
        ),
    )
}

fn game_equivalence(report: &VerificationReport) -> Outcome {
    let bad = failures(report, &["rank-game", "comeback-game", "comeback-termination"]);
    let rank_game = report.records.iter().filter(|r| r.rank_game_min_k.is_some()).count();
    let comeback = report.records.iter().filter(|r| r.comeback_min_k.is_some()).count();
    let skips: Vec<&str> = report
        .skips
        .iter()
        .filter(|s| s.check == "rank-game" || s.check == "comeback-game")
        .map(|s| s.graph.as_str())
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "rank game on {rank_game} graphs (n<=6), come-back game on {comeback} (n<=5), violations={}, skips={} {:?} {}",
            bad.len(),
            skips.len(),
            skips,
            describe(&bad)
        ),
    )
}

fn variant_equivalence(report: &VerificationReport) -> Outcome {
    let bad = failures(report, &["variants", "monotonicity"]);
    let checked = report.records.iter().filter(|r| r.entv_min_k.is_some()).count();
    let skipped = report.skips.iter().filter(|s| s.check == "variants").count();
    outcome(
        bad.is_empty() && skipped == 0,
        format!(
            "Ent/ET/Entv on {checked} graphs (n<=6, every k<=n), violations={}, skips={skipped} {}",
            bad.len(),
            describe(&bad)
        ),
    )
}

fn translation(corpus: &[NamedGraph]) -> Outcome {
    let small = up_to(corpus, 5);
    let report = run_theorem_suite(&small, &SuiteOptions::default());
    let bad = failures(&report, &["translation"]);
    let verified = report.records.iter().filter(|r| r.certificate_ok == Some(true)).count();
    let skipped = report.skips.iter().filter(|s| s.check == "translation").count();
    outcome(
        bad.is_empty() && skipped == 0 && verified == small.len(),
        format!(
            "{verified}/{} Entv certificates verified at k=rank (n<=5), failures={}, skips={skipped} {}",
            small.len(),
            bad.len(),
            describe(&bad)
        ),
    )
}

fn degenerate(corpus: &[NamedGraph]) -> Outcome {
    let mut wrong = Vec::new();
    for named in corpus {
        let g = &named.graph;
        let (acyclic, r, e) = (g.is_acyclic(), rank(g), entanglement(g));
        if (r == 0) != acyclic || (e == 0) != acyclic {
            wrong.push(format!("{}: acyclic={acyclic} rank={r} ent={e}", named.id));
        }
    }
    for n in 1..=5 {
        let g = families::clique(n);
        let (r, e) = (rank(&g), entanglement(&g));
        if r != n - 1 || e != n - 1 {
            wrong.push(format!("clique-{n}: rank={r} ent={e}"));
        }
    }
    outcome(
        wrong.is_empty(),
        format!("{} corpus graphs and K1..K5, mismatches={wrong:?}", corpus.len()),
    )
}

fn image_free(t: &MuTerm, rho: &Substitution) -> BTreeSet<String> {
    t.free_vars()
        .iter()
        .flat_map(|y| rho.get(y).map_or_else(|| BTreeSet::from([y.clone()]), MuTerm::free_vars))
        .collect()
}

/// Free-variable and substitution laws on one term and a pair of
/// substitutions.
fn substitution_laws(t: &MuTerm, rho: &Substitution, pi: &Substitution, junk: &MuTerm) -> Result<(), String> {
    let fail = |law: &str| Err(format!("{law} fails on {t} with {rho:?}"));
    let empty = Substitution::new();
    for x in VARIABLES {
        if MuTerm::var(x).free_vars() != BTreeSet::from([x.to_string()]) {
            return fail("free variables of a variable");
        }
        let bound = MuTerm::mu(x, t.clone());
        let mut expected = t.free_vars();
        expected.remove(x);
        if bound.free_vars() != expected {
            return fail("free variables under a binder");
        }
        let looked_up = substitute(&MuTerm::var(x), rho);
        let image = rho.get(x).map_or_else(|| MuTerm::var(x), |u| substitute(u, &empty));
        if looked_up != image {
            return fail("variable lookup");
        }
    }
    let explicit = MuTerm::Subst(Box::new(t.clone()), rho.clone().into_iter().collect());
    if explicit.free_vars() != image_free(t, rho) || substitute(t, rho).free_vars() != image_free(t, rho) {
        return fail("free variables under substitution");
    }
    let free = t.free_vars();
    let mut restricted: Substitution = rho.iter().filter(|(x, _)| free.contains(*x)).map(|(x, u)| (x.clone(), u.clone())).collect();
    for y in VARIABLES.iter().filter(|y| !free.contains(**y)) {
        restricted.insert(y.to_string(), junk.clone());
    }
    if !alpha_eq(&substitute(t, rho), &substitute(t, &restricted)) {
        return fail("only free variables matter");
    }
    let twice = substitute(&substitute(t, rho), pi);
    if !alpha_eq(&twice, &substitute(t, &compose(rho, pi))) {
        return fail("composition");
    }
    Ok(())
}

fn muterms() -> Outcome {
    let signature = default_signature();
    let goldens = [
        ("x", 0),
        ("f(x, g(c))", 0),
        ("mu x. nu y. f(x, y)", 2),
        ("f(mu x. g(x), mu y. g(y))", 1),
        ("g(x)[x := mu y. g(y)]", 1),
        ("mu x. g(mu y. f(x, mu z. h(x, y, z)))", 3),
    ];
    let golden_misses: Vec<&str> = goldens
        .iter()
        .filter(|(text, h)| parse_with(text, &signature).map(|t| t.star_height()) != Ok(*h))
        .map(|(text, _)| *text)
        .collect();

    let generator = TermGenerator::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut law_failures = Vec::new();
    let mut measure_failures = Vec::new();
    for _ in 0..TERM_SAMPLES {
        let t = generator.term(&mut rng);
        let (rho, pi, junk) = (generator.substitution(&mut rng), generator.substitution(&mut rng), generator.term(&mut rng));
        if let Err(e) = substitution_laws(&t, &rho, &pi, &junk) {
            law_failures.push(e);
        }
        match analyze(&t, entrank_core::game::DEFAULT_CEILING) {
            Ok(r) if r.entanglement <= r.rank && r.rank <= r.star_height => {}
            Ok(r) => measure_failures.push(format!("{t}: ent={} rank={} h={}", r.entanglement, r.rank, r.star_height)),
            Err(e) => measure_failures.push(format!("{t}: {e}")),
        }
    }
    outcome(
        golden_misses.is_empty() && law_failures.is_empty() && measure_failures.is_empty(),
        format!(
            "{} golden star heights (misses {golden_misses:?}), substitution laws on {TERM_SAMPLES} term/substitution pairs \
             (failures {}), ent<=rank<=h on {TERM_SAMPLES} terms (violations {}) {:?}",
            goldens.len(),
            law_failures.len(),
            measure_failures.len(),
            law_failures.iter().chain(&measure_failures).take(2).collect::<Vec<_>>()
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_entrank"))
            .args(["verify", "theorem", "--corpus", "random:n=6,p=0.3,seed=42,count=100", "--json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success();
    outcome(
        ok && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!(
            "two runs: exit {:?}/{:?}, {} bytes, identical={}",
            a.status.code(),
            b.status.code(),
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

fn main() -> ExitCode {
    let corpus = corpus();
    let options = SuiteOptions { rank_game_max: 6, comeback_max: 5, variants_max: 6, ..SuiteOptions::default() };
    let mut all_pass = true;
    let mut report = |id: usize, name: &str, o: Outcome| {
        all_pass &= o.pass;
        println!("criterion {id} ({name}): {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    };

    report(1, "path rank", path_rank());
    report(2, "path entanglement", path_entanglement());
    report(3, "entanglement <= rank", theorem(&corpus));
    let eq = run_equivalence_suite(&up_to(&corpus, 6), &options);
    report(4, "game oracles", game_equivalence(&eq));
    report(5, "entanglement variants", variant_equivalence(&eq));
    report(6, "strategy translation", translation(&corpus));
    report(7, "degenerate laws", degenerate(&corpus));
    report(8, "mu-terms", muterms());
    report(9, "determinism", determinism());

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
