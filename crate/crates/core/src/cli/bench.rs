use std::io;
use std::time::Duration;

use clap::ValueEnum;
use serde_json::{json, Value};

use super::{Ctx, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use crate::generator::{generate_batch, GenConfig};
use crate::grammar::{build, fixpoint_productive, key_count, stats, BuildError, CountHead, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Unsimplified first-variant grammar sizes.
    GrammarSize,
    /// Simplified sizes of both variants against both published columns.
    SimplifiedSize,
    /// Median generation time per alphabet size.
    GenTime,
}

/// Published (|N|, |P|) of the unsimplified first variant; `None` where no
/// production count was published.
const PUBLISHED_FULL: [(u64, Option<u64>); 4] = [(33, Some(2097)), (257, Some(103_810)), (2049, Some(4_926_467)), (16_385, None)];

/// The published simplified columns, by alphabet size 1..=4.
const PUBLISHED_SIMPLIFIED: [(&str, [(u64, u64); 4]); 2] = [
    ("size table, simplified", [(6, 15), (44, 1116), (282, 46_865), (1652, 1_495_482)]),
    ("comparison table, first column", [(8, 19), (47, 1100), (255, 40_754), (1367, 1_182_718)]),
];

/// Published seconds per expression at l = 30, alphabet sizes 1..=7.
const PUBLISHED_SECONDS: [f64; 7] = [0.01, 0.12, 0.2, 3.0, 13.0, 114.0, 892.0];

pub(super) fn run(ctx: &mut Ctx, table: Table, max_sigma: Option<usize>, count: usize) -> io::Result<i32> {
    match table {
        Table::GrammarSize => grammar_size(ctx, max_sigma.unwrap_or(3)),
        Table::SimplifiedSize => simplified_size(ctx, max_sigma.unwrap_or(4)),
        Table::GenTime => gen_time(ctx, max_sigma.unwrap_or(5), count),
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "match"
    } else {
        "MISMATCH"
    }
}

fn grammar_size(ctx: &mut Ctx, max: usize) -> io::Result<i32> {
    if !(1..=4).contains(&max) {
        return Ok(ctx.fail(EXIT_USAGE, "--max-sigma must be in 1..=4 for grammar-size"));
    }
    let mut rows = Vec::new();
    let mut lines = vec![format!("{:>3} {:>8} {:>10} {:>8} {:>10}  status", "|S|", "|N|", "|P|", "pub |N|", "pub |P|")];
    for k in 1..=max {
        let (pn, pp) = PUBLISHED_FULL[k - 1];
        let (n, p) = match build(Variant::G1, k, false) {
            Ok(g) => {
                let s = stats(&g);
                (s.nonterminals, Some(s.productions))
            }
            Err(BuildError::TooLarge { .. }) => (key_count(k) as u64 + 1, None),
            Err(e) => return Ok(ctx.fail(EXIT_RESOURCE, e)),
        };
        let ok = n == pn && p == pp;
        let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        lines.push(format!("{k:>3} {n:>8} {:>10} {pn:>8} {:>10}  {}", show(p), show(pp), mark(ok)));
        rows.push(json!({ "sigma": k, "nonterminals": n, "productions": p, "published": [pn, pp], "match": ok }));
    }
    finish(ctx, "grammar-size", rows, lines)
}

fn simplified_size(ctx: &mut Ctx, max: usize) -> io::Result<i32> {
    if !(1..=4).contains(&max) {
        return Ok(ctx.fail(EXIT_USAGE, "--max-sigma must be in 1..=4 for simplified-size"));
    }
    let mut rows = Vec::new();
    let mut lines = vec![format!("{:>7} {:>3} {:>6} {:>9} {:>9}  published columns", "variant", "|S|", "|N|", "|P|", "recount N")];
    for variant in [Variant::G1, Variant::G2] {
        for k in 1..=max {
            let g = match build(variant, k, true) {
                Ok(g) => g,
                Err(e) => return Ok(ctx.fail(EXIT_RESOURCE, e)),
            };
            let s = stats(&g);
            let recount = fixpoint_productive(variant, k, false, CountHead::ChildAlpha).len() as u64 + 1;
            let mut cols = Vec::new();
            let mut notes = Vec::new();
            for (name, values) in PUBLISHED_SIMPLIFIED {
                let (pn, pp) = values[k - 1];
                let ok = (pn, pp) == (s.nonterminals, s.productions);
                let delta = s.productions as i64 - pp as i64;
                notes.push(format!("{name}: ({pn}, {pp}) {} dP={delta:+}", mark(ok)));
                cols.push(json!({ "column": name, "published": [pn, pp], "match": ok, "delta_productions": delta }));
            }
            lines.push(format!(
                "{:>7} {k:>3} {:>6} {:>9} {recount:>9}  {}",
                variant.to_string(),
                s.nonterminals,
                s.productions,
                notes.join("; ")
            ));
            rows.push(json!({
                "variant": variant.to_string(),
                "sigma": k,
                "nonterminals": s.nonterminals,
                "productions": s.productions,
                "recount_nonterminals": recount,
                "published": cols,
            }));
        }
    }
    finish(ctx, "simplified-size", rows, lines)
}

fn gen_time(ctx: &mut Ctx, max: usize, count: usize) -> io::Result<i32> {
    if !(1..=7).contains(&max) || count == 0 {
        return Ok(ctx.fail(EXIT_USAGE, "--max-sigma must be in 1..=7 and --count positive for gen-time"));
    }
    let mut rows = Vec::new();
    let mut lines = vec![format!("{:>3} {:>12} {:>12} {:>12} {:>8}  {:>9}", "|S|", "median s", "mean s", "max s", "failures", "pub s")];
    let mut code = EXIT_OK;
    for k in 1..=max {
        let cfg = GenConfig::new(k, 30, ctx.cfg.seed);
        let results = generate_batch(&cfg, count);
        let mut times: Vec<Duration> = results.iter().filter_map(|r| r.as_ref().ok()).map(|r| r.elapsed).collect();
        let failures = results.len() - times.len();
        if failures > 0 {
            code = EXIT_RESOURCE;
        }
        times.sort();
        let secs = |d: Duration| d.as_secs_f64();
        let median = times.get(times.len() / 2).copied().map(secs);
        let mean = (!times.is_empty()).then(|| times.iter().map(|d| secs(*d)).sum::<f64>() / times.len() as f64);
        let worst = times.last().copied().map(secs);
        let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6}"));
        lines.push(format!(
            "{k:>3} {:>12} {:>12} {:>12} {failures:>8}  {:>9}",
            show(median),
            show(mean),
            show(worst),
            PUBLISHED_SECONDS[k - 1]
        ));
        rows.push(json!({
            "sigma": k,
            "count": count,
            "median_seconds": median,
            "mean_seconds": mean,
            "max_seconds": worst,
            "failures": failures,
            "published_seconds": PUBLISHED_SECONDS[k - 1],
        }));
    }
    lines.push("max size 30; published seconds are for comparison of the trend only".into());
    finish(ctx, "gen-time", rows, lines).map(|c| if c == EXIT_OK { code } else { c })
}

fn finish(ctx: &mut Ctx, table: &str, rows: Vec<Value>, lines: Vec<String>) -> io::Result<i32> {
    if ctx.cfg.json {
        ctx.emit(json!({ "command": "bench", "table": table, "rows": rows }))?;
    } else {
        for l in lines {
            writeln!(ctx.out, "{l}")?;
        }
    }
    Ok(EXIT_OK)
}
