use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use garland_core::checks::{
    check_graph_laws, goldman_defect, jacobi_sum, section13_walkthrough, Section13Report,
};
use garland_core::fgroup::conjugacy_class;
use garland_core::garlands::{
    alpha_merge, lie_bracket, loop_class, min_intersection_number, star, ElementRecord,
};
use garland_core::oracle::brute_tree_class_equal;
use garland_core::sampling::Sampler;
use garland_core::signcalc::verify_parity_identities;
use garland_core::{
    Error, GarlandElement, LabeledElement, LoopSum, Rational, RibbonSurface, SearchBounds, Word,
};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "garland",
    version,
    about = "Brackets and minimal intersection numbers of loops on surfaces"
)]
struct Cli {
    /// Builtin surface name (torus1, pants, section13, annulus) or a surface
    /// file. When given, every positional argument is a word.
    #[arg(long, global = true)]
    surface: Option<String>,

    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cross-check class decisions with bounded brute-force search.
    #[arg(long, global = true, hide = true)]
    oracle: bool,

    /// Conjugator length bound for the brute-force search.
    #[arg(long, global = true, default_value_t = 12)]
    max_len: usize,

    /// Power bound for the brute-force search.
    #[arg(long, global = true, default_value_t = 12)]
    max_power: i64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal number of intersection points of two free loops: SURFACE W1 W2.
    MinInt { args: Vec<String> },
    /// Bracket of two loop classes: SURFACE W1 W2.
    Bracket { args: Vec<String> },
    /// Goldman bracket and its comparison with the merged bracket: SURFACE W1 W2.
    Goldman { args: Vec<String> },
    /// Product of loop classes: W1 W2 ...
    Star { words: Vec<String> },
    /// Sampled Jacobi identity checks: SURFACE N.
    JacobiCheck { args: Vec<String> },
    /// Sign identities over all parity assignments.
    SignCheck,
    /// Sampled graph composition laws: N.
    GraphCheck { n: usize },
    /// The two-loop example on section13 with expected and actual values.
    ExampleSection13,
}

enum Failure {
    Parse(String),
    Precondition(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Precondition(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_precondition() {
            Failure::Precondition(msg)
        } else if matches!(e, Error::Verification(_)) {
            Failure::Verification(msg)
        } else {
            Failure::Parse(msg)
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::MinInt { args } => {
            let (s, w) = surface_and_words(cli, args, 2)?;
            min_int(cli, &s, &w[0], &w[1])
        }
        Command::Bracket { args } => {
            let (s, w) = surface_and_words(cli, args, 2)?;
            bracket(cli, &s, &w[0], &w[1])
        }
        Command::Goldman { args } => {
            let (s, w) = surface_and_words(cli, args, 2)?;
            goldman(cli, &s, &w[0], &w[1])
        }
        Command::Star { words } => {
            let words = words
                .iter()
                .map(|w| parse_word(w))
                .collect::<Result<Vec<_>, _>>()?;
            star_cmd(cli, &words)
        }
        Command::JacobiCheck { args } => {
            let (s, rest) = split_surface(cli, args)?;
            let [n] = rest else {
                return Err(Failure::Parse("expected SURFACE N".into()));
            };
            let n = n
                .parse()
                .map_err(|_| Failure::Parse(format!("bad count `{n}`")))?;
            jacobi_check(cli, &s, n)
        }
        Command::SignCheck => sign_check(cli),
        Command::GraphCheck { n } => graph_check(cli, *n),
        Command::ExampleSection13 => example_section13(cli),
    }
}

fn load_surface(source: &str) -> Result<RibbonSurface, Failure> {
    if let Some(s) = RibbonSurface::builtin(source) {
        return Ok(s);
    }
    let text = std::fs::read_to_string(source).map_err(|e| {
        Failure::Parse(format!(
            "surface `{source}` is neither builtin nor readable: {e}"
        ))
    })?;
    Ok(text.parse()?)
}

fn parse_word(s: &str) -> Result<Word, Failure> {
    Ok(s.parse()?)
}

fn split_surface<'a>(
    cli: &Cli,
    args: &'a [String],
) -> Result<(RibbonSurface, &'a [String]), Failure> {
    match &cli.surface {
        Some(source) => Ok((load_surface(source)?, args)),
        None => {
            let (first, rest) = args
                .split_first()
                .ok_or_else(|| Failure::Parse("missing surface".into()))?;
            Ok((load_surface(first)?, rest))
        }
    }
}

fn surface_and_words(
    cli: &Cli,
    args: &[String],
    n: usize,
) -> Result<(RibbonSurface, Vec<Word>), Failure> {
    let (s, rest) = split_surface(cli, args)?;
    if rest.len() != n {
        return Err(Failure::Parse(format!(
            "expected {n} words, got {}",
            rest.len()
        )));
    }
    let words = rest
        .iter()
        .map(|w| parse_word(w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((s, words))
}

fn bounds(cli: &Cli) -> Result<SearchBounds, Failure> {
    if cli.max_len == 0 || cli.max_power < 1 {
        return Err(Failure::Parse("search bounds must be positive".into()));
    }
    Ok(SearchBounds::new(cli.max_len, cli.max_power))
}

/// With `--oracle`, every pair of stored terms must be told apart by the
/// bounded search too, and every term must match itself.
fn oracle_check(cli: &Cli, e: &LabeledElement) -> Result<(), Failure> {
    if !cli.oracle {
        return Ok(());
    }
    let b = bounds(cli)?;
    let terms = e.terms();
    for (i, (x, _)) in terms.iter().enumerate() {
        for (j, (y, _)) in terms.iter().enumerate() {
            if brute_tree_class_equal(x, y, &b) != (i == j) {
                return Err(Failure::Verification(format!(
                    "bounded search disagrees on {x} versus {y}"
                )));
            }
        }
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> Outcome {
    let mut s =
        serde_json::to_string_pretty(v).map_err(|e| Failure::Verification(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn rational(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Serialize)]
struct CrossingRecord {
    coef: i32,
    p: usize,
    q: usize,
    u: String,
    v: String,
}

#[derive(Serialize)]
struct MinIntReport {
    bracket: ElementRecord,
    crossings: Vec<CrossingRecord>,
    epsilon: i64,
    epsilon_tilde: String,
    min_int: i64,
    reduced: ElementRecord,
    surface: String,
    words: Vec<String>,
}

fn surface_name(s: &RibbonSurface) -> String {
    s.name()
        .map(str::to_string)
        .unwrap_or_else(|| s.to_string().replace('\n', "; "))
}

fn min_int(cli: &Cli, s: &RibbonSurface, w1: &Word, w2: &Word) -> Outcome {
    let m = min_intersection_number(s, w1, w2)?;
    oracle_check(cli, &m.reduced)?;
    if cli.json {
        return json(&MinIntReport {
            bracket: ElementRecord::from(&m.bracket),
            crossings: m
                .crossings
                .iter()
                .map(|t| CrossingRecord {
                    coef: t.coef,
                    p: t.p,
                    q: t.q,
                    u: t.u.to_string(),
                    v: t.v.to_string(),
                })
                .collect(),
            epsilon: m.epsilon,
            epsilon_tilde: rational(m.epsilon_tilde),
            min_int: m.value,
            reduced: ElementRecord::from(&m.reduced),
            surface: surface_name(s),
            words: vec![w1.to_string(), w2.to_string()],
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "crossing terms:");
    for t in &m.crossings {
        let _ = writeln!(
            out,
            "  {:+} <{}, {}>  at ({}, {})",
            t.coef, t.u, t.v, t.p, t.q
        );
    }
    let _ = writeln!(out, "reduced terms:");
    for line in m.reduced.to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "epsilon = {}", m.epsilon);
    let _ = writeln!(out, "epsilon of the bracket = {}", m.epsilon_tilde);
    let _ = writeln!(out, "minimal intersection number = {}", m.value);
    Ok(out)
}

#[derive(Serialize)]
struct BracketReport {
    element: ElementRecord,
    surface: String,
    words: Vec<String>,
}

fn bracket(cli: &Cli, s: &RibbonSurface, w1: &Word, w2: &Word) -> Outcome {
    let b = lie_bracket(&loop_class(w1)?, &loop_class(w2)?, s)?;
    oracle_check(cli, &b.expanded()?)?;
    if cli.json {
        return json(&BracketReport {
            element: ElementRecord::from(&b),
            surface: surface_name(s),
            words: vec![w1.to_string(), w2.to_string()],
        });
    }
    Ok(b.to_string())
}

#[derive(Serialize)]
struct LoopTerm {
    class: String,
    coef: String,
}

#[derive(Serialize)]
struct GoldmanReport {
    crossings: Vec<CrossingRecord>,
    cross_check: bool,
    goldman: Vec<LoopTerm>,
    merged_bracket: Vec<LoopTerm>,
    surface: String,
    words: Vec<String>,
}

fn loop_terms(sum: &LoopSum<Rational>) -> Vec<LoopTerm> {
    sum.terms()
        .map(|(k, c)| LoopTerm {
            class: k.to_string(),
            coef: rational(c),
        })
        .collect()
}

fn goldman(cli: &Cli, s: &RibbonSurface, w1: &Word, w2: &Word) -> Outcome {
    let (c1, c2) = (conjugacy_class(w1), conjugacy_class(w2));
    let crossings = s.linked_pairs(&c1, &c2)?;
    let g = s.goldman_bracket(&c1, &c2)?;
    let merged = alpha_merge(&lie_bracket(&loop_class(w1)?, &loop_class(w2)?, s)?)?;
    let ok = goldman_defect(s, w1, w2)?.is_zero();
    let out = if cli.json {
        json(&GoldmanReport {
            crossings: crossings
                .iter()
                .map(|t| CrossingRecord {
                    coef: t.geom_sign,
                    p: t.p,
                    q: t.q,
                    u: t.u.to_string(),
                    v: t.v.to_string(),
                })
                .collect(),
            cross_check: ok,
            goldman: loop_terms(&g.map(Rational::from)),
            merged_bracket: loop_terms(&merged),
            surface: surface_name(s),
            words: vec![w1.to_string(), w2.to_string()],
        })?
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "crossings:");
        for t in &crossings {
            let _ = writeln!(
                out,
                "  {:+} [{}]  at ({}, {})",
                t.geom_sign,
                conjugacy_class(&t.u.concat(&t.v)),
                t.p,
                t.q
            );
        }
        let _ = writeln!(out, "Goldman bracket = {g}");
        let _ = writeln!(out, "merged bracket  = {merged}");
        let _ = writeln!(
            out,
            "merged bracket = -(Goldman bracket): {}",
            if ok { "pass" } else { "FAIL" }
        );
        out
    };
    if ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification(
            "merged bracket differs from minus the Goldman bracket".into(),
        ))
    }
}

fn star_cmd(cli: &Cli, words: &[Word]) -> Outcome {
    let mut e = GarlandElement::single(
        garland_core::TreeGarlandClass::circle(
            words
                .first()
                .cloned()
                .ok_or_else(|| Failure::Parse("star needs at least one word".into()))?,
        )?,
        Rational::from(1),
    );
    for w in &words[1..] {
        e = star(&e, &loop_class(w)?)?;
    }
    if cli.json {
        return json(&ElementRecord::from(&e));
    }
    Ok(e.to_string())
}

#[derive(Serialize)]
struct CheckReport {
    failures: Vec<String>,
    passed: bool,
    total: usize,
}

fn finish_check(cli: &Cli, r: CheckReport, text: String) -> Outcome {
    let out = if cli.json { json(&r)? } else { text };
    if r.passed {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification(format!(
            "{} of {} checks failed",
            r.failures.len(),
            r.total
        )))
    }
}

fn jacobi_check(cli: &Cli, s: &RibbonSurface, n: usize) -> Outcome {
    let mut smp = Sampler::new(cli.seed);
    let mut failures = Vec::new();
    let mut text = String::new();
    for _ in 0..n {
        let v = smp.admissible(3, s.rank(), 5);
        let e: Vec<GarlandElement> = v.iter().map(loop_class).collect::<Result<_, _>>()?;
        let d = jacobi_sum(&e[0], &e[1], &e[2], s)?;
        let verdict = if d.is_zero() { "pass" } else { "FAIL" };
        let _ = writeln!(text, "{verdict}  {} {} {}", v[0], v[1], v[2]);
        if !d.is_zero() {
            failures.push(format!("{} {} {}", v[0], v[1], v[2]));
        }
    }
    let _ = writeln!(text, "{} of {n} instances pass", n - failures.len());
    finish_check(
        cli,
        CheckReport {
            passed: failures.is_empty(),
            failures,
            total: n,
        },
        text,
    )
}

fn sign_check(cli: &Cli) -> Outcome {
    let r = verify_parity_identities();
    let failures: Vec<String> = r
        .odd
        .iter()
        .filter(|i| !i.passed())
        .map(|i| i.name.to_string())
        .collect();
    let passed = r.passed();
    let total = r.odd.len() + r.even.len();
    finish_check(
        cli,
        CheckReport {
            failures,
            passed,
            total,
        },
        r.to_string(),
    )
}

fn graph_check(cli: &Cli, n: usize) -> Outcome {
    let mut smp = Sampler::new(cli.seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    for _ in 0..n {
        let (a, b, c) = (smp.graph(4), smp.graph(4), smp.graph(4));
        let r = check_graph_laws(&a, &b, &c)?;
        checked += r.checked;
        failures.extend(r.failures);
    }
    let text = format!(
        "{checked} law instances on {n} graph triples, {} failures\n{}",
        failures.len(),
        failures
            .iter()
            .map(|f| format!("  {f}\n"))
            .collect::<String>()
    );
    finish_check(
        cli,
        CheckReport {
            passed: failures.is_empty(),
            failures,
            total: checked,
        },
        text,
    )
}

#[derive(Serialize)]
struct ComparisonRecord {
    actual: String,
    expected: String,
    name: String,
    passed: bool,
}

fn example_section13(cli: &Cli) -> Outcome {
    let r: Section13Report = section13_walkthrough()?;
    let failures: Vec<String> = r
        .comparisons
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.to_string())
        .collect();
    let out = if cli.json {
        json(
            &r.comparisons
                .iter()
                .map(|c| ComparisonRecord {
                    actual: c.actual.clone(),
                    expected: c.expected.clone(),
                    name: c.name.to_string(),
                    passed: c.passed,
                })
                .collect::<Vec<_>>(),
        )?
    } else {
        r.to_string()
    };
    if failures.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification(format!(
            "mismatches: {}",
            failures.join(", ")
        )))
    }
}
