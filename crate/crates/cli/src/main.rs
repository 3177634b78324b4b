//! `orbitlab` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! budget exceeded.

mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use orbitlab::orbit::OrbitSummary;
use orbitlab::residue::render_rows;
use orbitlab::rg::{enumerate_words_with_budget, words_with_budget};
use orbitlab::{
    canonical_form, count_words, encode_word, r_formula, sequence_table, verify_bridge, Error,
    GroupSpec, Method, OrbitEngine, RGWord, DEFAULT_STATE_BUDGET,
};

use crate::output::{Format, Out};

#[derive(Parser, Debug)]
#[command(
    name = "orbitlab",
    version,
    about = "Exact orbit counts for SL(2, Z_p) on pairs of vectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of states (or words) an enumerative command may visit.
    #[arg(long, global = true, env = "ORBITLAB_BUDGET", default_value_t = DEFAULT_STATE_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count orbits of Z_p^n x Z_p^n.
    Orbits {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CountMethod::Bfs)]
        method: CountMethod,
        /// List one line per orbit: representative, size, stabilizer order.
        #[arg(long)]
        list: bool,
    },
    /// Count (or list) restricted-growth words of length m.
    Words {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        list: bool,
    },
    /// Encode a word as a bit matrix and report its orbit's canonical form.
    Encode { word: String },
    /// Cross-check every method, formula and the word encoding for m = 1..=m-max.
    Verify {
        #[arg(long = "m-max")]
        m_max: usize,
    },
    /// Emit r(Z_p^n) for n = 0..=n-max.
    Sequence {
        #[arg(long)]
        p: u64,
        #[arg(long = "n-max")]
        n_max: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Bfs,
    Canonical,
    Burnside,
    Formula,
}

enum Failure {
    Usage(String),
    Budget(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::IndexOverflow(_) => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = Out::new(stdout.lock(), cli.format);
    let result = run(&cli, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run<W: Write>(cli: &Cli, out: &mut Out<W>) -> CmdResult {
    let engine = OrbitEngine::with_budget(cli.budget);
    match &cli.command {
        Command::Orbits { p, n, method, list } => cmd_orbits(&engine, *p, *n, *method, *list, out),
        Command::Words { m, list } => cmd_words(cli.budget, *m, *list, out),
        Command::Encode { word } => cmd_encode(word, out),
        Command::Verify { m_max } => cmd_verify(&engine, *m_max, out),
        Command::Sequence { p, n_max } => cmd_sequence(*p, *n_max, out),
    }
}

fn cmd_orbits<W: Write>(
    engine: &OrbitEngine,
    p: u64,
    n: usize,
    method: CountMethod,
    list: bool,
    out: &mut Out<W>,
) -> CmdResult {
    let spec = match method {
        CountMethod::Bfs => GroupSpec::uniform(p, n)?,
        _ => GroupSpec::uniform_prime(p, n)?,
    };
    let (name, count) = match method {
        CountMethod::Bfs => ("bfs", engine.census(&spec, Method::Bfs)?.orbit_count),
        CountMethod::Canonical => (
            "canonical",
            engine.census(&spec, Method::Canonical)?.orbit_count,
        ),
        CountMethod::Burnside => (
            "burnside",
            engine.census(&spec, Method::Burnside)?.orbit_count,
        ),
        CountMethod::Formula => ("formula", r_formula(p, n as i64)?),
    };
    let summaries = if list {
        Some(if orbitlab::is_prime(p) {
            engine.orbit_summaries_zp(p, n)?
        } else {
            engine.orbit_summaries(&spec)?
        })
    } else {
        None
    };

    match out.format() {
        Format::Text => match &summaries {
            None => out.line(&count.to_string())?,
            Some(list) => {
                for s in list {
                    out.line(&format!(
                        "{} {} {}",
                        s.representative,
                        s.size,
                        stabilizer(s)
                    ))?;
                }
            }
        },
        Format::Csv => match &summaries {
            None => out.csv(
                &["p", "n", "method", "orbit_count"],
                [[
                    p.to_string(),
                    n.to_string(),
                    name.to_string(),
                    count.to_string(),
                ]],
            )?,
            Some(list) => out.csv(
                &["representative", "size", "stabilizer_order"],
                list.iter().map(|s| {
                    [
                        s.representative.to_string(),
                        s.size.to_string(),
                        stabilizer(s),
                    ]
                }),
            )?,
        },
        Format::Json => {
            let mut obj = serde_json::json!({
                "p": p,
                "n": n,
                "method": name,
                "orbit_count": count.to_string(),
            });
            if let Some(list) = &summaries {
                obj["orbits"] = list
                    .iter()
                    .map(|s| {
                        serde_json::json!({
                            "representative": render_rows(&s.representative),
                            "size": s.size.to_string(),
                            "stabilizer_order": s.stabilizer_order.as_ref().map(ToString::to_string),
                        })
                    })
                    .collect();
            }
            out.json(&obj)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn stabilizer(s: &OrbitSummary) -> String {
    s.stabilizer_order
        .as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn cmd_words<W: Write>(budget: u64, m: usize, list: bool, out: &mut Out<W>) -> CmdResult {
    let count = count_words(m as u64);
    if !list {
        match out.format() {
            Format::Text => out.line(&count.to_string())?,
            Format::Csv => out.csv(&["m", "count"], [[m.to_string(), count.to_string()]])?,
            Format::Json => out.json(&serde_json::json!({"m": m, "count": count.to_string()}))?,
        }
        return Ok(ExitCode::SUCCESS);
    }
    match out.format() {
        Format::Text => {
            for w in words_with_budget(m, budget)? {
                out.line(&w.to_string())?;
            }
        }
        Format::Csv => {
            let words = enumerate_words_with_budget(m, budget)?;
            out.csv(&["word"], words.iter().map(|w| [w.to_string()]))?;
        }
        Format::Json => {
            let words = enumerate_words_with_budget(m, budget)?;
            let words: Vec<String> = words.iter().map(ToString::to_string).collect();
            out.json(&serde_json::json!({"m": m, "count": count.to_string(), "words": words}))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_encode<W: Write>(word: &str, out: &mut Out<W>) -> CmdResult {
    let word: RGWord = word.parse()?;
    let state = encode_word(&word)?;
    let canonical = canonical_form(&state)?;
    let rows = render_rows(&state);
    let canon_rows = render_rows(&canonical);
    match out.format() {
        Format::Text => {
            for r in &rows {
                out.line(r)?;
            }
            out.line(&format!("canonical {canonical}"))?;
        }
        Format::Csv => out.csv(
            &["row", "g", "k", "canonical_g", "canonical_k"],
            state
                .rows()
                .zip(canonical.rows())
                .enumerate()
                .map(|(i, ((g, k), (cg, ck)))| {
                    [
                        (i + 1).to_string(),
                        g.to_string(),
                        k.to_string(),
                        cg.to_string(),
                        ck.to_string(),
                    ]
                }),
        )?,
        Format::Json => out.json(&serde_json::json!({
            "word": word.to_string(),
            "rows": rows,
            "canonical": canon_rows,
        }))?,
    }
    Ok(ExitCode::SUCCESS)
}

struct VerifyRow {
    m: usize,
    methods: bool,
    formula: bool,
    words: bool,
    bridge: bool,
    r: BigInt,
}

impl VerifyRow {
    fn passed(&self) -> bool {
        self.methods && self.formula && self.words && self.bridge
    }
}

fn cmd_verify<W: Write>(engine: &OrbitEngine, m_max: usize, out: &mut Out<W>) -> CmdResult {
    if m_max > 0 {
        engine.check_budget(&GroupSpec::uniform(2, m_max)?, "verification")?;
    }
    let mut rows = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let spec = GroupSpec::uniform(2, m)?;
        let bfs = engine.count_orbits_bfs(&spec)?.orbit_count;
        let canonical = engine.count_orbits_canonical(&spec)?.orbit_count;
        let burnside = engine.count_orbits_burnside(&spec)?.orbit_count;
        let r = r_formula(2, m as i64)?;
        let bridge = verify_bridge(m, engine)?;
        rows.push(VerifyRow {
            m,
            methods: bfs == canonical && bfs == burnside,
            formula: bfs == r,
            words: count_words(m as u64) == r,
            bridge: bridge.is_bijective(),
            r,
        });
    }
    let all_pass = rows.iter().all(VerifyRow::passed);
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" }.to_string();

    match out.format() {
        Format::Text => {
            out.line(&format!(
                "{:>3}  {:<7}  {:<7}  {:<5}  {:<6}  r",
                "m", "methods", "formula", "words", "bridge"
            ))?;
            for row in &rows {
                out.line(&format!(
                    "{:>3}  {:<7}  {:<7}  {:<5}  {:<6}  {}",
                    row.m,
                    mark(row.methods),
                    mark(row.formula),
                    mark(row.words),
                    mark(row.bridge),
                    row.r
                ))?;
            }
            out.line(if all_pass { "PASS" } else { "FAIL" })?;
        }
        Format::Csv => out.csv(
            &["m", "methods", "formula", "words", "bridge", "r"],
            rows.iter().map(|row| {
                [
                    row.m.to_string(),
                    mark(row.methods),
                    mark(row.formula),
                    mark(row.words),
                    mark(row.bridge),
                    row.r.to_string(),
                ]
            }),
        )?,
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "m": row.m,
                        "methods": row.methods,
                        "formula": row.formula,
                        "words": row.words,
                        "bridge": row.bridge,
                        "r": row.r.to_string(),
                    })
                })
                .collect();
            out.json(&serde_json::json!({"m_max": m_max, "all_pass": all_pass, "rows": rows}))?;
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_sequence<W: Write>(p: u64, n_max: u64, out: &mut Out<W>) -> CmdResult {
    let table = sequence_table(p, n_max)?;
    match out.format() {
        Format::Text => {
            for (n, r) in &table {
                out.line(&format!("{n} {r}"))?;
            }
        }
        Format::Csv => out.csv(
            &["n", "r"],
            table.iter().map(|(n, r)| [n.to_string(), r.to_string()]),
        )?,
        Format::Json => {
            let arr: Vec<serde_json::Value> = table
                .iter()
                .map(|(n, r)| serde_json::json!({"n": n, "r": r.to_string()}))
                .collect();
            out.json(&serde_json::Value::Array(arr))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
