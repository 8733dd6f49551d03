//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code:
//! 0 success or deterministic, 1 nondeterministic or rejected, 2 usage or
//! input error, 3 resource limit or inconclusive.

mod bench;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::attrs::AttributedTree;
use crate::checker::{determ_marked, determ_unmarked, determ_w, Verdict};
use crate::expr::{parse, print, simplify, ExtExpr, Letter};
use crate::generator::{generate_batch, GenConfig, GenError};
use crate::grammar::{build, export, stats, BuildError, Variant};
use crate::oracle::{determinism_oracle, enumerate, membership, word_to_string, Determinism, OracleBounds};
use crate::symset::set_to_string;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "idre", version, about = "Deterministic regular expressions with interleaving and counting")]
pub struct CliConfig {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Word length bound for the brute-force oracle (default: derived from the expression).
    #[arg(long, global = true)]
    pub oracle_max_len: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide determinism.
    Check {
        expr: Option<String>,
        /// Read expressions from a file, one per line.
        #[arg(long, short, conflicts_with = "expr")]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Engine::Unmarked)]
        engine: Engine,
    },
    /// Print the attributes of every node.
    Attrs { expr: String },
    /// Test membership of a word (`eps` for the empty word).
    Match { expr: String, word: String },
    /// List the words up to a length.
    Enum { expr: String, max_len: usize },
    /// Build a grammar of the class.
    Grammar {
        #[arg(long, value_enum, default_value_t = VariantArg::G1)]
        variant: VariantArg,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        simplify: bool,
        #[arg(long, conflicts_with = "export")]
        stats: bool,
        /// Write the grammar to a file, `-` for standard output.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Generate random deterministic expressions.
    Gen {
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        max_size: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Reproduce the size and timing tables.
    Bench {
        #[arg(value_enum)]
        table: bench::Table,
        /// Largest alphabet size measured.
        #[arg(long)]
        max_sigma: Option<usize>,
        /// Expressions per alphabet size for gen-time.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    W,
    Unmarked,
    Marked,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    G1,
    G2,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::G1 => Variant::G1,
            VariantArg::G2 => Variant::G2,
        }
    }
}

/// Output sink shared by the commands.
struct Ctx<'a> {
    cfg: &'a CliConfig,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, doc: Value) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *self.out, &doc)?;
        writeln!(self.out)
    }

    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> i32 {
        if self.cfg.json {
            let _ = self.emit(json!({ "error": msg.to_string(), "exit": code }));
        } else {
            let _ = writeln!(self.err, "idre: {msg}");
        }
        code
    }

    fn bounds(&self, e: &ExtExpr) -> OracleBounds {
        match self.cfg.oracle_max_len {
            Some(n) => OracleBounds::new(n),
            None => OracleBounds::for_expr(e),
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { cfg: &cfg, out, err };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(e) => ctx.fail(EXIT_RESOURCE, format!("i/o error: {e}")),
    }
}

fn dispatch(ctx: &mut Ctx) -> io::Result<i32> {
    match &ctx.cfg.command {
        Command::Check { expr, file, engine } => {
            let lines = match (expr, file) {
                (Some(e), _) => vec![e.clone()],
                (None, Some(path)) => match fs::read_to_string(path) {
                    Ok(text) => text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect(),
                    Err(e) => return Ok(ctx.fail(EXIT_USAGE, format!("{}: {e}", path.display()))),
                },
                (None, None) => return Ok(ctx.fail(EXIT_USAGE, "check needs an expression or --file")),
            };
            cmd_check(ctx, &lines, *engine)
        }
        Command::Attrs { expr } => cmd_attrs(ctx, expr),
        Command::Match { expr, word } => cmd_match(ctx, expr, word),
        Command::Enum { expr, max_len } => cmd_enum(ctx, expr, *max_len),
        Command::Grammar { variant, sigma, simplify, stats, export } => {
            cmd_grammar(ctx, (*variant).into(), *sigma, *simplify, *stats, export.as_ref())
        }
        Command::Gen { sigma, max_size, count } => cmd_gen(ctx, *sigma, *max_size, *count),
        Command::Bench { table, max_sigma, count } => bench::run(ctx, *table, *max_sigma, *count),
    }
}

fn read_expr(ctx: &mut Ctx, text: &str) -> Result<ExtExpr, i32> {
    match parse(text) {
        Ok(e) => Ok(simplify(&e)),
        Err(e) => Err(ctx.fail(EXIT_USAGE, format!("{text:?}: {e}"))),
    }
}

fn cmd_check(ctx: &mut Ctx, lines: &[String], engine: Engine) -> io::Result<i32> {
    let mut code = EXIT_OK;
    let mut docs = Vec::new();
    for text in lines {
        let e = match read_expr(ctx, text) {
            Ok(e) => e,
            Err(c) => return Ok(c),
        };
        let (doc, line, c) = match engine {
            Engine::Oracle => check_oracle(ctx, &e),
            _ => {
                let v = match engine {
                    Engine::W => determ_w(&e),
                    Engine::Marked => determ_marked(&e),
                    _ => determ_unmarked(&e),
                };
                check_doc(&e, &v)
            }
        };
        code = worse(code, c);
        docs.push(doc);
        if !ctx.cfg.json {
            writeln!(ctx.out, "{line}")?;
        }
    }
    if ctx.cfg.json {
        let engine = format!("{engine:?}").to_lowercase();
        ctx.emit(json!({ "command": "check", "engine": engine, "results": docs }))?;
    }
    Ok(code)
}

/// Exit code of a batch: inconclusive outranks nondeterministic.
fn worse(a: i32, b: i32) -> i32 {
    let rank = |c| match c {
        EXIT_OK => 0,
        EXIT_NEGATIVE => 1,
        _ => 2,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn check_doc(e: &ExtExpr, v: &Verdict) -> (Value, String, i32) {
    let shown = print(e);
    let sub = v.locus.as_ref().and_then(|p| e.at(p)).map(print);
    let doc = json!({
        "expr": shown,
        "deterministic": v.deterministic,
        "locus": v.locus,
        "locus_expr": sub,
        "clause": v.violated_clause,
        "visited": v.visited_nodes,
        "entered": v.entered,
    });
    let line = match (&v.locus, &sub) {
        (Some(p), Some(s)) if !v.deterministic => {
            format!("{shown}: nondeterministic at {p} ({s}) [{}]", v.violated_clause.unwrap_or("-"))
        }
        _ => format!("{shown}: deterministic"),
    };
    (doc, line, if v.deterministic { EXIT_OK } else { EXIT_NEGATIVE })
}

fn check_oracle(ctx: &Ctx, e: &ExtExpr) -> (Value, String, i32) {
    let shown = print(e);
    let bounds = ctx.bounds(e);
    match determinism_oracle(e, bounds) {
        Determinism::Deterministic => (
            json!({ "expr": shown, "deterministic": true, "max_len": bounds.max_len }),
            format!("{shown}: deterministic (words up to length {})", bounds.max_len),
            EXIT_OK,
        ),
        Determinism::Violation(w) => {
            let prefix = if w.prefix.is_empty() { "eps".to_string() } else { w.prefix_string() };
            (
                json!({
                    "expr": shown,
                    "deterministic": false,
                    "witness": { "prefix": prefix, "x": w.x.to_string(), "y": w.y.to_string() },
                }),
                format!("{shown}: nondeterministic, after {prefix} both {} and {} may follow", w.x, w.y),
                EXIT_NEGATIVE,
            )
        }
        Determinism::Inconclusive => (
            json!({ "expr": shown, "deterministic": null, "max_len": bounds.max_len }),
            format!("{shown}: inconclusive up to length {}", bounds.max_len),
            EXIT_RESOURCE,
        ),
    }
}

fn cmd_attrs(ctx: &mut Ctx, text: &str) -> io::Result<i32> {
    let e = match read_expr(ctx, text) {
        Ok(e) => e,
        Err(c) => return Ok(c),
    };
    let tree = AttributedTree::new(&e);
    let mut nodes = Vec::new();
    for n in &tree.nodes {
        let a = &n.attrs;
        let sub = e.at(&n.path).map(print).unwrap_or_default();
        if ctx.cfg.json {
            nodes.push(json!({
                "path": n.path,
                "kind": n.kind,
                "expr": sub,
                "sym": set_to_string(&a.sym),
                "first": set_to_string(&a.first),
                "followlast": set_to_string(&a.followlast),
                "nullable": a.nullable,
                "w": a.w,
                "ct": a.ct,
                "flexible": a.flexible,
            }));
        } else {
            let flex = a.flexible.map_or("-".to_string(), |f| f.to_string());
            writeln!(
                ctx.out,
                "{:<10} {:<8} {:<20} sym={} first={} followlast={} nullable={} w={} ct={} flexible={}",
                n.path.to_string(),
                format!("{:?}", n.kind).to_lowercase(),
                sub,
                set_to_string(&a.sym),
                set_to_string(&a.first),
                set_to_string(&a.followlast),
                a.nullable,
                a.w,
                a.ct,
                flex
            )?;
        }
    }
    if ctx.cfg.json {
        let undecided: Vec<String> = tree.undecided.iter().map(|p| p.to_string()).collect();
        ctx.emit(json!({ "command": "attrs", "expr": print(&e), "nodes": nodes, "undecided_flexible": undecided }))?;
    } else {
        for p in &tree.undecided {
            writeln!(ctx.out, "note: flexibility at {p} undecided, assumed true")?;
        }
    }
    Ok(EXIT_OK)
}

fn read_word(word: &str) -> Option<Vec<Letter>> {
    if word == "eps" {
        return Some(Vec::new());
    }
    word.chars().map(Letter::from_char).collect()
}

fn cmd_match(ctx: &mut Ctx, text: &str, word: &str) -> io::Result<i32> {
    let e = match read_expr(ctx, text) {
        Ok(e) => e,
        Err(c) => return Ok(c),
    };
    let Some(w) = read_word(word) else {
        return Ok(ctx.fail(EXIT_USAGE, format!("{word:?} is not a word over a-z")));
    };
    let accepted = membership(&e, &w);
    if ctx.cfg.json {
        ctx.emit(json!({ "command": "match", "expr": print(&e), "word": word, "accepted": accepted }))?;
    } else {
        writeln!(ctx.out, "{}", if accepted { "accepted" } else { "rejected" })?;
    }
    Ok(if accepted { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_enum(ctx: &mut Ctx, text: &str, max_len: usize) -> io::Result<i32> {
    let e = match read_expr(ctx, text) {
        Ok(e) => e,
        Err(c) => return Ok(c),
    };
    let lang = match enumerate(&e, max_len) {
        Ok(l) => l,
        Err(err) => return Ok(ctx.fail(EXIT_RESOURCE, err)),
    };
    let mut words: Vec<&Vec<Letter>> = lang.words.iter().collect();
    words.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let shown: Vec<String> = words.iter().map(|w| if w.is_empty() { "eps".into() } else { word_to_string(w) }).collect();
    if ctx.cfg.json {
        ctx.emit(json!({ "command": "enum", "expr": print(&e), "max_len": max_len, "count": shown.len(), "words": shown }))?;
    } else {
        for w in &shown {
            writeln!(ctx.out, "{w}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_grammar(
    ctx: &mut Ctx,
    variant: Variant,
    sigma: usize,
    simplified: bool,
    want_stats: bool,
    path: Option<&PathBuf>,
) -> io::Result<i32> {
    if !want_stats && path.is_none() {
        return Ok(ctx.fail(EXIT_USAGE, "grammar needs --stats or --export PATH"));
    }
    let g = match build(variant, sigma, simplified) {
        Ok(g) => g,
        Err(e @ BuildError::Alphabet(_)) => return Ok(ctx.fail(EXIT_USAGE, e)),
        Err(e) => return Ok(ctx.fail(EXIT_RESOURCE, e)),
    };
    let s = stats(&g);
    if let Some(path) = path {
        if path.as_os_str() == "-" {
            export(&g, &mut ctx.out)?;
            return Ok(EXIT_OK);
        }
        let mut file = io::BufWriter::new(fs::File::create(path)?);
        export(&g, &mut file)?;
        file.flush()?;
    }
    if ctx.cfg.json {
        ctx.emit(json!({
            "command": "grammar",
            "variant": variant.to_string(),
            "sigma": sigma,
            "simplified": simplified,
            "nonterminals": s.nonterminals,
            "productions": s.productions,
        }))?;
    } else {
        writeln!(ctx.out, "N={} P={}", s.nonterminals, s.productions)?;
    }
    Ok(EXIT_OK)
}

fn cmd_gen(ctx: &mut Ctx, sigma: usize, max_size: u64, count: usize) -> io::Result<i32> {
    let cfg = GenConfig::new(sigma, max_size, ctx.cfg.seed);
    let mut code = EXIT_OK;
    let mut docs = Vec::new();
    for r in generate_batch(&cfg, count) {
        match r {
            Ok(g) => {
                if ctx.cfg.json {
                    docs.push(json!({ "expr": print(&g.expr), "key": g.key.map(|k| k.to_string()), "restarts": g.restarts }));
                } else {
                    writeln!(ctx.out, "{}", print(&g.expr))?;
                }
            }
            Err(e @ GenError::Config(_)) => return Ok(ctx.fail(EXIT_USAGE, e)),
            Err(e) => {
                code = EXIT_RESOURCE;
                if ctx.cfg.json {
                    docs.push(json!({ "error": e.to_string() }));
                } else {
                    writeln!(ctx.err, "idre: {e}")?;
                }
            }
        }
    }
    if ctx.cfg.json {
        ctx.emit(json!({ "command": "gen", "sigma": sigma, "max_size": max_size, "seed": ctx.cfg.seed, "results": docs }))?;
    }
    Ok(code)
}
