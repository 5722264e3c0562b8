//! The `weylmod` command line.
//!
//! [`run`] takes the arguments after the program name and returns the exit
//! code with everything that would be printed, so tests can drive it
//! without a process.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use weylmod_core::embedding::{Engine, Init, Outcome};
use weylmod_core::linoracle::TypeA;
use weylmod_core::subcats::{
    is_submodule_closed, subcat_of_word, verify_bijection, CofiniteSubcat,
};
use weylmod_core::{
    is_reduced, leftmost_bfs, leftmost_greedy, parse_cartan_file, rho, word_compare, ArQuiver,
    CoxeterMatrix, Error, ModMultiset, Vertex, Word,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "weylmod",
    version,
    about = "Leftmost Coxeter words and submodule-closed subcategories"
)]
struct Cli {
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print the Coxeter matrix.
    Coxmat { input: PathBuf },
    /// Grid pairs of a word.
    Rho {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Compare two words in the order <_l.
    Cmp {
        input: PathBuf,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
    /// Leftmost word of the element a word represents.
    Leftmost {
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Method::Bfs)]
        method: Method,
    },
    /// Whether a word is reduced.
    Reduced {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Whether M is a submodule of U.
    Embed {
        input: PathBuf,
        #[arg(long)]
        m: String,
        #[arg(long)]
        u: String,
        /// Print every rewriting step.
        #[arg(long)]
        trace: bool,
    },
    /// Whether a cofinite subcategory is submodule closed.
    Closed {
        input: PathBuf,
        #[arg(
            long,
            conflicts_with = "excluded",
            required_unless_present = "excluded"
        )]
        word: Option<String>,
        #[arg(long)]
        excluded: Option<String>,
    },
    /// List leftmost words, or check the word / subcategory correspondence.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        verify: bool,
    },
    /// The first slices of the preinjective component in DOT format.
    ArDot {
        input: PathBuf,
        #[arg(long)]
        slices: u32,
    },
    /// Dimension vectors (roots for valued data) of the first slices.
    Dims {
        input: PathBuf,
        #[arg(long)]
        slices: u32,
    },
    /// Cross-check the engine against linear algebra (type A only).
    OracleCheck { input: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bfs,
    Greedy,
    Both,
}

/// What a subcommand produced.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        Self {
            code,
            text: text.into(),
            json,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn load(path: &PathBuf) -> CliResult<ArQuiver> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let cartan =
        parse_cartan_file(&src).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(ArQuiver::new(cartan))
}

/// Attaches the argument name to a parse error.
fn arg<T>(name: &str, r: weylmod_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

fn word_json(w: &Word) -> Value {
    json!(w.letters().iter().map(|l| l + 1).collect::<Vec<_>>())
}

fn run_cmd(cmd: Cmd) -> CliResult<Report> {
    match cmd {
        Cmd::Coxmat { input } => {
            let q = load(&input)?;
            let cox = CoxeterMatrix::of(q.cartan());
            let rows: Vec<Vec<Value>> = cox
                .rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|m| m.map_or(json!("inf"), |m| json!(m)))
                        .collect()
                })
                .collect();
            Ok(Report::new(
                EXIT_OK,
                format!("{cox}\n"),
                json!({ "coxeter": rows }),
            ))
        }
        Cmd::Rho { input, word } => {
            let q = load(&input)?;
            let w = arg("word", Word::parse(&word, q.n()))?;
            let pairs = rho(&w);
            Ok(Report::new(
                EXIT_OK,
                format!("{pairs}\n"),
                json!({ "word": word_json(&w), "rho": pairs.pairs() }),
            ))
        }
        Cmd::Cmp { input, w1, w2 } => {
            let q = load(&input)?;
            let a = arg("w1", Word::parse(&w1, q.n()))?;
            let b = arg("w2", Word::parse(&w2, q.n()))?;
            let ord = match word_compare(&a, &b) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Ok(Report::new(
                EXIT_OK,
                format!("{ord}\n"),
                json!({ "w1": word_json(&a), "w2": word_json(&b), "order": ord }),
            ))
        }
        Cmd::Leftmost {
            input,
            word,
            method,
        } => {
            let q = load(&input)?;
            let w = arg("word", Word::parse(&word, q.n()))?;
            let bfs = matches!(method, Method::Bfs | Method::Both)
                .then(|| leftmost_bfs(&w, q.cartan()))
                .transpose()?;
            let greedy = matches!(method, Method::Greedy | Method::Both)
                .then(|| leftmost_greedy(&w, q.cartan()));
            match (bfs, greedy) {
                (Some(b), Some(g)) if b != g => Ok(Report::new(
                    EXIT_FALSE,
                    format!("bfs: {b}\ngreedy: {g}\n"),
                    json!({ "word": word_json(&w), "bfs": word_json(&b), "greedy": word_json(&g), "agree": false }),
                )),
                (b, g) => {
                    let l = b.or(g).expect("one method ran");
                    Ok(Report::new(
                        EXIT_OK,
                        format!("{l}\n"),
                        json!({ "word": word_json(&w), "leftmost": word_json(&l), "is_leftmost": l == w }),
                    ))
                }
            }
        }
        Cmd::Reduced { input, word } => {
            let q = load(&input)?;
            let w = arg("word", Word::parse(&word, q.n()))?;
            let (reduced, _) = is_reduced(&w, q.cartan());
            let text = if reduced { "reduced" } else { "not reduced" };
            Ok(Report::new(
                if reduced { EXIT_OK } else { EXIT_FALSE },
                format!("{text}\n"),
                json!({ "word": word_json(&w), "reduced": reduced }),
            ))
        }
        Cmd::Embed { input, m, u, trace } => {
            let q = load(&input)?;
            let m = arg("m", ModMultiset::parse(&m, q.n()))?;
            let u = arg("u", ModMultiset::parse(&u, q.n()))?;
            embed(&q, &m, &u, trace)
        }
        Cmd::Closed {
            input,
            word,
            excluded,
        } => {
            let q = load(&input)?;
            let mut text = String::new();
            let (subcat, word_json_value) = match (word, excluded) {
                (Some(word), _) => {
                    let w = arg("word", Word::parse(&word, q.n()))?;
                    let ws = subcat_of_word(&q, &w);
                    if !ws.all_exist() {
                        let dropped: Vec<String> =
                            ws.dropped.iter().map(Vertex::to_string).collect();
                        writeln!(
                            text,
                            "warning: zero grid pairs dropped: {}",
                            dropped.join(" ")
                        )
                        .unwrap();
                    }
                    (ws.subcat, word_json(&w))
                }
                (None, Some(list)) => {
                    let set = arg("excluded", ModMultiset::parse(&list, q.n()))?;
                    (CofiniteSubcat::new(&q, set.support())?, Value::Null)
                }
                (None, None) => {
                    return Err(CliError::Input(
                        "one of --word, --excluded is required".into(),
                    ))
                }
            };
            let report = is_submodule_closed(&q, &subcat)?;
            if report.closed {
                text.push_str("closed\n");
            } else {
                let (m, cert) = &report.witnesses[0];
                writeln!(text, "not closed: {m} embeds into {cert}").unwrap();
            }
            Ok(Report::new(
                if report.closed { EXIT_OK } else { EXIT_FALSE },
                text,
                json!({
                    "word": word_json_value,
                    "excluded": subcat.excluded(),
                    "closed": report.closed,
                    "witnesses": report.witnesses.iter()
                        .map(|(m, c)| json!({ "module": m, "certificate": c }))
                        .collect::<Vec<_>>(),
                }),
            ))
        }
        Cmd::Enumerate {
            input,
            max_len,
            verify,
        } => {
            let q = load(&input)?;
            if verify {
                let report = verify_bijection(q.cartan(), max_len)?;
                let mut text = format!("{}\n", report.summary());
                for v in report.violations.iter().skip(1).take(9) {
                    writeln!(text, "violation: {v}").unwrap();
                }
                return Ok(Report::new(
                    if report.ok() { EXIT_OK } else { EXIT_FALSE },
                    text,
                    serde_json::to_value(&report).expect("serializable"),
                ));
            }
            let mut leftmost: BTreeSet<Word> = BTreeSet::new();
            let mut frontier = vec![Word::empty()];
            leftmost.insert(Word::empty());
            // Prefixes of leftmost words are leftmost, so extend only those.
            for _ in 0..max_len {
                let mut next = Vec::new();
                for w in &frontier {
                    for i in 0..q.n() {
                        let x = w.concat(&Word::new(vec![i]));
                        if leftmost_greedy(&x, q.cartan()) == x {
                            next.push(x);
                        }
                    }
                }
                leftmost.extend(next.iter().cloned());
                frontier = next;
            }
            let mut rows: Vec<&Word> = leftmost.iter().collect();
            rows.sort_by(|a, b| word_compare(a, b));
            let mut text = String::new();
            let mut table = Vec::new();
            for w in rows {
                let ws = subcat_of_word(&q, w);
                let set: Vec<String> = ws.subcat.excluded().iter().map(Vertex::to_string).collect();
                let shown = if w.is_empty() {
                    "()".to_string()
                } else {
                    w.to_string()
                };
                writeln!(text, "{shown}: {{{}}}", set.join(",")).unwrap();
                table.push(json!({ "word": word_json(w), "excluded": ws.subcat.excluded() }));
            }
            Ok(Report::new(EXIT_OK, text, json!({ "leftmost": table })))
        }
        Cmd::ArDot { input, slices } => {
            let q = load(&input)?;
            Ok(Report::new(
                EXIT_OK,
                ar_dot(&q, slices),
                json!({ "dot": ar_dot(&q, slices) }),
            ))
        }
        Cmd::Dims { input, slices } => {
            let q = load(&input)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for v in q.vertices(slices) {
                let root = q.root(v).expect("vertex exists");
                writeln!(text, "{}:{} {}", v.r, v.i + 1, bracket(&root)).unwrap();
                rows.push(json!({ "vertex": v, "dim": root }));
            }
            Ok(Report::new(EXIT_OK, text, json!({ "vertices": rows })))
        }
        Cmd::OracleCheck { input } => {
            let q = load(&input)?;
            oracle_check(&q)
        }
    }
}

fn bracket(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn embed(q: &ArQuiver, m: &ModMultiset, u: &ModMultiset, trace: bool) -> CliResult<Report> {
    let engine = Engine::new(q);
    let out = engine.decide(m, u)?;
    let mut text = String::new();
    if trace {
        if let Init::State(s) = engine.init_state(m, weylmod_core::Target::Module(u))? {
            writeln!(text, "init: middle {} coker {}", s.middle, s.coker).unwrap();
        }
        for line in weylmod_core::embedding::format_trace(out.trace()) {
            writeln!(text, "{line}").unwrap();
        }
    }
    let code = match &out {
        Outcome::Embeds { certificate, .. } => {
            writeln!(text, "YES: certificate {certificate}").unwrap();
            EXIT_OK
        }
        Outcome::NoEmbed { witness, .. } => {
            writeln!(text, "NO: {witness}").unwrap();
            EXIT_FALSE
        }
    };
    let mut value = serde_json::to_value(&out).expect("serializable");
    value["embeds"] = json!(out.embeds());
    Ok(Report::new(code, text, value))
}

/// DOT export: one node per vertex, one edge per class of irreducible maps.
pub fn ar_dot(q: &ArQuiver, slices: u32) -> String {
    let mut out = String::from("digraph preinjective {\n  rankdir=RL;\n");
    let vertices = q.vertices(slices);
    for &v in &vertices {
        let root = q.root(v).expect("vertex exists");
        writeln!(
            out,
            "  \"{}:{}\" [label=\"{}:{} {}\"];",
            v.r,
            v.i + 1,
            v.r,
            v.i + 1,
            bracket(&root)
        )
        .unwrap();
    }
    for &v in &vertices {
        for (t, k) in q.successors(v).iter() {
            writeln!(
                out,
                "  \"{}:{}\" -> \"{}:{}\" [label=\"{k}\"];",
                v.r,
                v.i + 1,
                t.r,
                t.i + 1
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct OracleSummary {
    embedding_pairs: usize,
    embedding_mismatches: Vec<String>,
    subsets: usize,
    closure_mismatches: Vec<String>,
}

fn oracle_check(q: &ArQuiver) -> CliResult<Report> {
    let t = TypeA::new(q.cartan())?;
    let all = q
        .all_vertices()
        .ok_or_else(|| CliError::Input("type A is of finite type".into()))?;
    if all.len() > 16 {
        return Err(CliError::Core(Error::ResourceCap {
            what: "indecomposables for oracle-check",
            limit: 16,
        }));
    }
    let mut summary = OracleSummary {
        embedding_pairs: 0,
        embedding_mismatches: Vec::new(),
        subsets: 0,
        closure_mismatches: Vec::new(),
    };
    // Every U with multiplicities at most one, against every indecomposable.
    for mask in 0u32..1 << all.len() {
        let set: BTreeSet<Vertex> = all
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let u: ModMultiset = set.iter().copied().collect();
        let urep = t.rep_of(q, &u)?;
        for &m in &all {
            let ms = ModMultiset::singleton(m);
            let engine = weylmod_core::decide_embedding(q, &ms, &u)?.embeds();
            let oracle = t.has_mono(&t.rep_of(q, &ms)?, &urep)?;
            summary.embedding_pairs += 1;
            if engine != oracle {
                summary.embedding_mismatches.push(format!("{m} -> {u}"));
            }
        }
        let engine = is_submodule_closed(q, &CofiniteSubcat::new(q, set.iter().copied())?)?.closed;
        let brute = t.brute_closed(q, &set)?;
        summary.subsets += 1;
        if engine != brute {
            summary.closure_mismatches.push(format!("{set:?}"));
        }
    }
    let ok = summary.embedding_mismatches.is_empty() && summary.closure_mismatches.is_empty();
    let text = format!(
        "{} embedding pairs, {} mismatches; {} subsets, {} closure mismatches\n",
        summary.embedding_pairs,
        summary.embedding_mismatches.len(),
        summary.subsets,
        summary.closure_mismatches.len()
    );
    let mut value = serde_json::to_value(&summary).expect("serializable");
    value["agree"] = json!(ok);
    Ok(Report::new(
        if ok { EXIT_OK } else { EXIT_FALSE },
        text,
        value,
    ))
}

fn error_code(e: &Error) -> i32 {
    if e.is_resource_cap() {
        EXIT_CAP
    } else {
        EXIT_INPUT
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    /// A one-line diagnostic on failure.
    pub stderr: String,
}

impl CliOutput {
    fn out(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs the command line on the arguments after the program name.
pub fn run<S: AsRef<str>>(args: &[S]) -> CliOutput {
    let argv = std::iter::once("weylmod").chain(args.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CliOutput::out(EXIT_OK, e.to_string())
                }
                _ => {
                    let line = e.to_string();
                    let first = line.lines().next().unwrap_or("invalid arguments");
                    CliOutput::err(EXIT_INPUT, format!("{first}\n"))
                }
            };
        }
    };
    let json_mode = cli.json;
    match run_cmd(cli.cmd) {
        Ok(report) if json_mode => {
            let mut value = report.json;
            if let Value::Object(map) = &mut value {
                map.insert("exit".into(), json!(report.code));
            }
            CliOutput::out(
                report.code,
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&value).expect("serializable")
                ),
            )
        }
        Ok(report) => CliOutput::out(report.code, report.text),
        Err(err) => {
            let (code, msg) = match err {
                CliError::Input(msg) => (EXIT_INPUT, msg),
                CliError::Core(e) => (error_code(&e), e.to_string()),
            };
            if json_mode {
                CliOutput::out(code, format!("{}\n", json!({ "error": msg, "exit": code })))
            } else {
                CliOutput::err(code, format!("error: {msg}\n"))
            }
        }
    }
}
