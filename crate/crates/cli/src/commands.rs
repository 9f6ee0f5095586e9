use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lambda3_core::framing::parse_framing;
use lambda3_core::tripleform::TRIPLES;
use lambda3_core::{
    build_context, census, check_hantzsche, is_obstructed, linking_form_from_framing, m0,
    scan_obstructed, triple_linking_from_grope, verify_universal_vanishing, DeterminantVector,
    GropeData, HantzscheVerdict, IntMatrix, LinkingForm, ObstructionVector, ScanBudget,
    ScanStrategy, SearchContext, SignConvention, VerifyMode,
};

use crate::render;

#[derive(Parser, Debug)]
#[command(
    name = "lambda3",
    version,
    about = "Torsion linking forms and triple linking obstructions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariant factors and linking form of the cokernel of a framing matrix.
    LinkingForm {
        framing: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Paper)]
        convention: Convention,
        #[command(flatten)]
        out: Output,
    },
    /// Count Lagrangians and dual pairs of the linking form.
    Census {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Convention::Paper)]
        convention: Convention,
        #[command(flatten)]
        out: Output,
    },
    /// Test a coefficient vector against every dual pair of the builtin form.
    Obstructed {
        /// 20 comma-separated trits in {-1,0,1} or {0,1,2}.
        #[arg(long = "v", allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check that every coefficient vector vanishes on some Lagrangian.
    VerifyUniversal {
        #[arg(long, value_enum, default_value_t = Mode::Rank)]
        mode: Mode,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Use determinant vectors from a file (one line of 20 trits each)
        /// instead of the builtin form.
        #[arg(long)]
        det_vectors: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate the triple linking number from grope intersection data.
    Grope {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        g: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        cy: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        dz: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        cz: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        dy: String,
        #[command(flatten)]
        out: Output,
    },
    /// Square-order test and dual Lagrangian splitting search.
    Hantzsche {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Convention::Paper)]
        convention: Convention,
        #[command(flatten)]
        out: Output,
    },
    /// Search for obstructed coefficient vectors.
    Scan {
        #[arg(long, value_enum, default_value_t = Strategy::Sequential)]
        strategy: Strategy,
        /// First vector index for the sequential strategy.
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of vectors to test.
        #[arg(long)]
        budget: u64,
        /// Optional wall-clock limit; makes output timing dependent.
        #[arg(long)]
        seconds: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Framing matrix file.
    framing: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Builtin {
    M0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Convention {
    Paper,
    Lemma,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Rank,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Strategy {
    Sequential,
    Random,
}

impl From<Convention> for SignConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Paper => SignConvention::Paper,
            Convention::Lemma => SignConvention::Lemma,
        }
    }
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn new(format: Format, json: Value, text: String, code: u8) -> Self {
        let stdout = match format {
            Format::Json => render::to_json(&json),
            Format::Text => text,
        };
        Outcome { stdout, code }
    }
}

type CliResult = Result<Outcome, String>;

pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::LinkingForm {
            framing,
            convention,
            out,
        } => cmd_linking_form(&read_framing(framing)?, *convention, out.format),
        Command::Census {
            source,
            convention,
            out,
        } => cmd_census(&load_form(source, *convention)?, out.format),
        Command::Obstructed { v, out } => cmd_obstructed(v, out.format),
        Command::VerifyUniversal {
            mode,
            threads,
            det_vectors,
            out,
        } => cmd_verify_universal(*mode, *threads, det_vectors.as_deref(), out.format),
        Command::Grope {
            t,
            g,
            cy,
            dz,
            cz,
            dy,
            out,
        } => cmd_grope(*t, *g, [cy, dz, cz, dy], out.format),
        Command::Hantzsche {
            source,
            convention,
            out,
        } => cmd_hantzsche(&load_form(source, *convention)?, out.format),
        Command::Scan {
            strategy,
            start,
            seed,
            budget,
            seconds,
            out,
        } => cmd_scan(*strategy, *start, *seed, *budget, *seconds, out.format),
    }
}

fn read_framing(path: &Path) -> Result<IntMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_framing(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_form(source: &Source, convention: Convention) -> Result<LinkingForm, String> {
    let framing = match (&source.framing, source.builtin) {
        (_, Some(Builtin::M0)) => m0::framing(),
        (Some(path), None) => read_framing(path)?,
        (None, None) => return Err("no framing matrix given".into()),
    };
    linking_form_from_framing(&framing, convention.into())
        .map(|(_, form)| form)
        .map_err(|e| e.to_string())
}

fn cmd_linking_form(framing: &IntMatrix, convention: Convention, format: Format) -> CliResult {
    let (group, form) =
        linking_form_from_framing(framing, convention.into()).map_err(|e| e.to_string())?;
    let gram: Vec<Vec<String>> = form
        .gram()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let json = json!({
        "invariant_factors": render::factors(&group),
        "order": render::big(&group.order()),
        "exponent": render::big(&group.exponent()),
        "convention": SignConvention::from(convention),
        "gram": gram,
    });
    let mut text = format!(
        "group: {}\norder: {}\nexponent: {}\n",
        render::group_text(&group),
        group.order(),
        group.exponent()
    );
    if !gram.is_empty() {
        text.push_str("gram:\n");
        for row in &gram {
            let _ = writeln!(text, "  {}", row.join(" "));
        }
    }
    Ok(Outcome::new(format, json, text, 0))
}

fn cmd_census(form: &LinkingForm, format: Format) -> CliResult {
    let c = census(form).map_err(|e| e.to_string())?;
    let json = serde_json::to_value(&c).expect("serialisable");
    let text = format!(
        "lagrangians: {}\nleft_block_nonsingular: {}\nleft_block_singular: {}\ndual_pairs: {}\n",
        c.lagrangians, c.left_block_nonsingular, c.left_block_singular, c.dual_pairs
    );
    Ok(Outcome::new(format, json, text, 0))
}

fn m0_context() -> SearchContext {
    build_context(&m0::form()).expect("builtin form is (Z/3)^6")
}

fn cmd_obstructed(v: &str, format: Format) -> CliResult {
    let v: ObstructionVector = v.parse().map_err(|e: lambda3_core::Error| e.to_string())?;
    let ctx = m0_context();
    let report = is_obstructed(&v, &ctx);
    let json = serde_json::to_value(&report).expect("serialisable");
    let text = match report.failing_pair {
        None => format!("v = [{v}]: obstructed\n"),
        Some((i, j)) => {
            let ls = ctx.lagrangians();
            format!(
                "v = [{v}]: not obstructed\nfailing pair ({i}, {j}):\n  {}\n  {}\n",
                render::basis_text(&ls[i]),
                render::basis_text(&ls[j])
            )
        }
    };
    let code = if report.obstructed { 0 } else { 1 };
    Ok(Outcome::new(format, json, text, code))
}

fn read_det_vectors(path: &Path) -> Result<SearchContext, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut dets = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: ObstructionVector = line
            .parse()
            .map_err(|e| format!("{}:{}: {e}", path.display(), n + 1))?;
        let entries: [u8; TRIPLES] = *v.entries();
        dets.push(DeterminantVector::from_entries(entries));
    }
    SearchContext::synthetic(dets, vec![]).map_err(|e| e.to_string())
}

fn cmd_verify_universal(
    mode: Mode,
    threads: usize,
    det_vectors: Option<&Path>,
    format: Format,
) -> CliResult {
    let ctx = match det_vectors {
        Some(path) => read_det_vectors(path)?,
        None => m0_context(),
    };
    let mode = match mode {
        Mode::Rank => VerifyMode::RankReduced,
        Mode::Exhaustive => VerifyMode::Exhaustive,
    };
    let report = verify_universal_vanishing(&ctx, mode, threads);
    let json = serde_json::to_value(&report).expect("serialisable");
    let mut text = format!(
        "verdict: {}\nrank: {}\nvectors tested: {}\nelapsed: {:.3}s\n",
        report.holds, report.rank, report.vectors_tested, report.elapsed_seconds
    );
    if let Some(v) = report.counterexample {
        let _ = writeln!(text, "counterexample: [{v}]");
    }
    Ok(Outcome::new(
        format,
        json,
        text,
        if report.holds { 0 } else { 1 },
    ))
}

fn parse_list(name: &str, s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| format!("--{name}: bad integer {tok:?}"))
        })
        .collect()
}

fn cmd_grope(t: u64, g: usize, lists: [&String; 4], format: Format) -> CliResult {
    let names = ["cy", "dz", "cz", "dy"];
    let mut parsed = Vec::with_capacity(4);
    for (name, s) in names.iter().zip(lists) {
        let l = parse_list(name, s)?;
        if l.len() != g {
            return Err(format!(
                "--{name} has {} entries, expected g = {g}",
                l.len()
            ));
        }
        parsed.push(l);
    }
    let [cy, dz, cz, dy]: [Vec<i64>; 4] = parsed.try_into().expect("four lists");
    let data = GropeData::new(t, cy, dz, cz, dy).map_err(|e| e.to_string())?;
    let value = triple_linking_from_grope(&data);
    let representative = format!("{}/{}", data.numerator(), t);
    let json = json!({
        "t": t,
        "genus": g,
        "representative": representative,
        "value": value,
    });
    let text = format!("representative: {representative}\nvalue mod 1: {value}\n");
    Ok(Outcome::new(format, json, text, 0))
}

fn cmd_hantzsche(form: &LinkingForm, format: Format) -> CliResult {
    let verdict = check_hantzsche(form).map_err(|e| e.to_string())?;
    let order = form.group().order();
    let (json, text, code) = match &verdict {
        HantzscheVerdict::NoSquareOrder { order } => (
            json!({"verdict": "no_square_order", "order": render::big(order)}),
            format!("order {order} not a square: no embedding splitting\n"),
            1,
        ),
        HantzscheVerdict::Splitting { pair } => (
            json!({
                "verdict": "splitting",
                "order": render::big(&order),
                "first": render::basis(&pair.first),
                "second": render::basis(&pair.second),
            }),
            format!(
                "order {order}: splitting\n  A = {}\n  B = {}\n",
                render::basis_text(&pair.first),
                render::basis_text(&pair.second)
            ),
            0,
        ),
        HantzscheVerdict::NoSplittingFound => (
            json!({"verdict": "no_splitting_found", "order": render::big(&order)}),
            format!("order {order} is a square but no dual Lagrangian pair exists\n"),
            1,
        ),
        HantzscheVerdict::SquareOrderOnly { order } => (
            json!({"verdict": "square_order_only", "order": render::big(order)}),
            format!("order {order} is a square; splitting search not supported for this group\n"),
            0,
        ),
    };
    Ok(Outcome::new(format, json, text, code))
}

fn cmd_scan(
    strategy: Strategy,
    start: u64,
    seed: u64,
    budget: u64,
    seconds: Option<f64>,
    format: Format,
) -> CliResult {
    let ctx = m0_context();
    let strategy = match strategy {
        Strategy::Sequential => ScanStrategy::Sequential { start },
        Strategy::Random => ScanStrategy::Random { seed },
    };
    let max_duration = match seconds {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(format!("--seconds must be a nonnegative number, got {s}")),
        None => None,
    };
    let found = scan_obstructed(
        &ctx,
        ScanBudget {
            max_vectors: budget,
            max_duration,
        },
        strategy,
    );
    let json = json!({"count": found.len(), "obstructed": found});
    let mut text = format!("{} obstructed vectors\n", found.len());
    for v in &found {
        let _ = writeln!(text, "[{v}]");
    }
    Ok(Outcome::new(format, json, text, 0))
}
