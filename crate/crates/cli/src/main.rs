//! `cradix`: command-line front end for the complex-radix engines.
//!
//! Every command prints one JSON object (keys sorted) or, with
//! `--output text`, the same data as `key: value` lines. Exit status is 0 on
//! success, 1 on malformed input and 2 when a hypothesis of the requested
//! computation fails.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use complex_radix::dimension::Regime;
use complex_radix::expansion::{expansion_multiplicity, Multiplicity};
use complex_radix::intersection::{build_translation, dimension, m_k};
use complex_radix::neighbour::tile_neighbours;
use complex_radix::radix::{encode_integer, eval, member};
use complex_radix::render::render_ppm;
use complex_radix::selfsim::{
    admissible_words, attractor_words, classify_general, classify_two_digit, ifs_dimension,
    ssc_check, BetaChoice, SepWitness,
};
use complex_radix::sep::{sep_decide_int, sep_decide_sets, SepDecomposition};
use complex_radix::tiles::{admissible_tiles, cylinder_cover_bound, pairwise_disjoint, witness_point};
use complex_radix::{
    Base, Config, DigitSeq, DigitSet, DimensionReport, Error, GaussianInt, Ifs, IntSet, SetSeq,
    TileKind, QI,
};

#[derive(Parser, Debug)]
#[command(name = "cradix", version, about = "Exact arithmetic and fractal geometry in base -n+i")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Tile {
    Fundamental,
    Extended,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeqKind {
    Int,
    Set,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Bounded,
    Sparse,
    TwoDigit,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Bounded => Regime::Bounded,
            RegimeArg::Sparse => Regime::Sparse,
            RegimeArg::TwoDigit => Regime::TwoDigit,
        }
    }
}

/// `(n, D)` plus an optional declared regime; without one the first regime
/// that applies is used.
#[derive(clap::Args, Debug)]
struct DigitArgs {
    #[arg(long)]
    n: i64,
    /// Comma-separated digits, a subset of {0, ..., n^2}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    digits: Vec<i64>,
    #[arg(long, value_enum)]
    regime: Option<RegimeArg>,
}

impl DigitArgs {
    fn config(&self) -> Result<Config, Error> {
        Base::new(self.n)?;
        let digits = DigitSet::restricted(self.n, self.digits.iter().copied())?;
        match self.regime {
            Some(r) => Config::new(self.n, digits, r.into()),
            None => Config::detect(self.n, digits),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Katai-Szabo digits of a Gaussian integer.
    Encode {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Exact value of an eventually periodic digit sequence.
    Eval {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Decide membership of a point in C_{n,D} (default D = {0, ..., n^2}).
    Member {
        #[arg(long)]
        n: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        digits: Option<Vec<i64>>,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Neighbour set of a tile.
    Neighbours {
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Tile::Fundamental)]
        tile: Tile,
        /// Digit set for `--tile custom`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        digits: Option<Vec<i64>>,
    },
    /// Dimensions of C(α) = C ∩ (C + α).
    Dim {
        #[command(flatten)]
        d: DigitArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Translation code whose intersection has dimension λ log|D| / log|b|.
    BuildTranslation {
        #[command(flatten)]
        d: DigitArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        prefix: Vec<i64>,
    },
    /// Strongly-eventually-periodic decision.
    Sep {
        #[arg(long, value_enum)]
        kind: SeqKind,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Self-similarity classification of C(α).
    Selfsim {
        #[command(flatten)]
        d: DigitArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Shift sequence for the general classification.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "exhaustive")]
        beta: Option<String>,
        /// Try every shift laid out like α.
        #[arg(long)]
        exhaustive: bool,
        /// Depth of the cylinder-word comparison; 0 skips it.
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// Brute-force tile checks at depth k.
    Oracle {
        #[command(flatten)]
        d: DigitArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        depth: usize,
    },
    /// Plain PPM picture of depth-k representative points.
    Render {
        #[command(flatten)]
        d: DigitArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 256)]
        size: usize,
        /// Write the image here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a command, mapped to an exit status.
enum Failure {
    Input(String),
    Hypothesis(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Hypothesis(v) => Failure::Hypothesis(v),
            Error::NonUniqueExpansion { .. } | Error::NonUniqueDecomposition { .. } => {
                Failure::Hypothesis(vec![e.to_string()])
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<Report, Failure>;

/// A JSON report, or raw text that bypasses the formatter.
enum Report {
    Json(Value),
    Raw(String),
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, Failure> {
    s.parse::<T>().map_err(Failure::from)
}

/// Integers as JSON numbers when they fit in `i64`, as strings otherwise.
fn big_json(v: &num_bigint::BigInt) -> Value {
    v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))
}

fn gaussian_json(g: &GaussianInt) -> Value {
    json!({ "re": big_json(&g.re), "im": big_json(&g.im) })
}

fn set_json(s: &IntSet) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn dimension_json(r: &DimensionReport) -> Value {
    let v = r.value();
    json!({
        "coefficient": v.coefficient().to_string(),
        "base_log": v.base_log_text(),
        "decimal": v.decimal(4),
        "m_cycle": r.m_cycle,
        "hausdorff": r.hausdorff.to_string(),
        "packing": r.packing.to_string(),
        "lower_box": r.lower_box.to_string(),
        "upper_box": r.upper_box.to_string(),
    })
}

fn ifs_json(ifs: &Ifs) -> Value {
    Value::Array(
        ifs.maps()
            .iter()
            .map(|m| json!({ "p": m.p, "u": m.translation.to_string() }))
            .collect(),
    )
}

fn config_json(cfg: &Config) -> Value {
    json!({ "n": cfg.n(), "digits": cfg.digits().digits(), "regime": cfg.regime().name() })
}

fn cmd_encode(n: i64, z: &str) -> CmdResult {
    let base = Base::new(n)?;
    let g: GaussianInt = parse(z)?;
    let digits = encode_integer(&g, base);
    Ok(Report::Json(json!({
        "n": n,
        "z": g.to_string(),
        "digits_lsb_first": digits,
    })))
}

fn cmd_eval(n: i64, seq: &str) -> CmdResult {
    let base = Base::new(n)?;
    let s: DigitSeq = parse(seq)?;
    let v = eval(&s, base);
    let (re, im): (f64, f64) = v.approx();
    Ok(Report::Json(json!({
        "n": n,
        "seq": s.to_string(),
        "value": v.to_string(),
        "decimal": format!("{re:.6} {im:+.6}i"),
    })))
}

fn cmd_member(n: i64, digits: Option<&[i64]>, z: &str) -> CmdResult {
    let base = Base::new(n)?;
    let d = match digits {
        Some(ds) => DigitSet::restricted(n, ds.iter().copied())?,
        None => DigitSet::fundamental(n),
    };
    let z: QI = parse(z)?;
    let exp = member(&z, base, &d);
    Ok(Report::Json(json!({
        "n": n,
        "digits": d.digits(),
        "z": z.to_string(),
        "member": exp.is_some(),
        "expansion": exp.map(|e| e.to_string()),
    })))
}

fn cmd_neighbours(n: i64, tile: Tile, digits: Option<&[i64]>) -> CmdResult {
    let base = Base::new(n)?;
    let kind = match (tile, digits) {
        (Tile::Fundamental, _) => TileKind::Fundamental,
        (Tile::Extended, _) => TileKind::Extended,
        (Tile::Custom, Some(ds)) => TileKind::Custom(DigitSet::restricted(n, ds.iter().copied())?),
        (Tile::Custom, None) => {
            return Err(Failure::Input("--tile custom needs --digits".into()));
        }
    };
    let ns = tile_neighbours(base, &kind);
    let members: Vec<Value> = ns
        .members()
        .iter()
        .map(|s| {
            let mut entry = gaussian_json(s);
            entry["witness"] = json!(ns.witness(s).map(|w| w.to_string()));
            entry
        })
        .collect();
    Ok(Report::Json(json!({
        "n": n,
        "tile": format!("{tile:?}").to_lowercase(),
        "alphabet": ns.alphabet().digits(),
        "count": ns.len(),
        "members": members,
        "real": ns.real_neighbours().into_iter().collect::<Vec<_>>(),
        "reim_bound": ns.reim_bound_holds(),
    })))
}

fn cmd_dim(d: &DigitArgs, alpha: &str) -> CmdResult {
    let cfg = d.config()?;
    let alpha: DigitSeq = parse(alpha)?;
    let report = dimension(&cfg, &alpha)?;
    let mut out = dimension_json(&report);
    out["config"] = config_json(&cfg);
    out["alpha"] = json!(alpha.to_string());
    Ok(Report::Json(out))
}

fn cmd_build(d: &DigitArgs, lambda: &str, prefix: &[i64]) -> CmdResult {
    let cfg = d.config()?;
    let lambda: BigRational = lambda
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("malformed lambda {lambda:?}")))?;
    let alpha = build_translation(&cfg, prefix, &lambda)?;
    let report = dimension(&cfg, &alpha)?;
    Ok(Report::Json(json!({
        "config": config_json(&cfg),
        "lambda": lambda.to_string(),
        "alpha": alpha.to_string(),
        "dimension": dimension_json(&report),
    })))
}

fn decomposition_json<T>(dec: &SepDecomposition<T>, item: impl Fn(&T) -> Value) -> Value {
    json!({
        "p": dec.period,
        "head": dec.head.iter().map(&item).collect::<Vec<_>>(),
        "increments": dec.increments.iter().map(&item).collect::<Vec<_>>(),
    })
}

fn cmd_sep(kind: SeqKind, seq: &str) -> CmdResult {
    let (text, dec) = match kind {
        SeqKind::Int => {
            let s: DigitSeq = parse(seq)?;
            (s.to_string(), sep_decide_int(&s).map(|d| decomposition_json(&d, |v| json!(v))))
        }
        SeqKind::Set => {
            let s: SetSeq = parse(seq)?;
            if let Some(j) = s.prefix().iter().chain(s.cycle()).position(|x| x.is_empty()) {
                return Err(Failure::Input(format!("term {} is an empty set", j + 1)));
            }
            (s.to_string(), sep_decide_sets(&s).map(|d| decomposition_json(&d, set_json)))
        }
    };
    let mut out = json!({ "seq": text, "sep": dec.is_some() });
    if let Some(Value::Object(fields)) = dec {
        for (k, v) in fields {
            out[k] = v;
        }
    }
    Ok(Report::Json(out))
}

/// Fields shared by both classifications once an IFS exists.
fn ifs_fields(
    out: &mut Value,
    ifs: &Ifs,
    witness: &SepWitness,
    shift: &QI,
    digits: &SetSeq,
    depth: usize,
) -> Result<(), Failure> {
    out["ifs"] = ifs_json(ifs);
    out["dimension"] = dimension_json(&ifs_dimension(ifs, witness)?);
    out["ssc"] = json!(ssc_check(ifs, digits));
    if depth > 0 {
        let got = attractor_words(ifs, shift, digits, depth)?;
        let want = admissible_words(digits, depth);
        out["cylinder_words"] = json!({
            "depth": depth,
            "count": got.len(),
            "match": got == want,
        });
    }
    Ok(())
}

fn cmd_selfsim(
    d: &DigitArgs,
    alpha: &str,
    beta: Option<&str>,
    exhaustive: bool,
    depth: usize,
) -> CmdResult {
    let cfg = d.config()?;
    let alpha: DigitSeq = parse(alpha)?;
    let two_digit = cfg.digits().len() == 2 && cfg.digits().min() == 0;
    if two_digit && beta.is_none() && !exhaustive {
        let c = classify_two_digit(&cfg, &alpha)?;
        let mut out = json!({
            "config": config_json(&cfg),
            "alpha": alpha.to_string(),
            "method": "two-digit",
            "m": c.m,
            "sep_seq": c.sep_seq.to_string(),
            "gamma": c.gamma.to_string(),
            "shifted_digits": c.shifted_digits.to_string(),
            "sep": c.decomposition.is_some(),
            "classification": if c.decomposition.is_some() { "SEP-witnessed" } else { "no witness found" },
        });
        if let (Some(dec), Some(ifs)) = (&c.decomposition, &c.ifs) {
            out["p"] = json!(dec.period);
            out["head"] = json!(dec.head);
            out["increments"] = json!(dec.increments);
            let w = SepWitness::TwoDigit { m: c.m, decomposition: dec.clone() };
            ifs_fields(&mut out, ifs, &w, &c.gamma, &c.shifted_digits, depth)?;
        }
        return Ok(Report::Json(out));
    }
    let choice = match (beta, exhaustive) {
        (Some(b), _) => BetaChoice::Given(parse(b)?),
        (None, true) => BetaChoice::Exhaustive,
        (None, false) => BetaChoice::Minimal,
    };
    let c = classify_general(&cfg, &alpha, &choice)?;
    let mut out = json!({
        "config": config_json(&cfg),
        "alpha": alpha.to_string(),
        "method": "general",
        "beta": c.beta.to_string(),
        "shift": c.shift.to_string(),
        "set_seq": c.set_seq.to_string(),
        "sep": c.decomposition.is_some(),
        "classification": if c.decomposition.is_some() { "SEP-witnessed" } else { "no witness found" },
    });
    if let (Some(dec), Some(ifs)) = (&c.decomposition, &c.ifs) {
        out["p"] = json!(dec.period);
        out["head"] = json!(dec.head.iter().map(set_json).collect::<Vec<_>>());
        out["increments"] = json!(dec.increments.iter().map(set_json).collect::<Vec<_>>());
        let w = SepWitness::General(dec.clone());
        ifs_fields(&mut out, ifs, &w, &c.shift, &c.set_seq, depth)?;
    }
    Ok(Report::Json(out))
}

fn cmd_oracle(d: &DigitArgs, alpha: &str, depth: usize) -> CmdResult {
    let cfg = d.config()?;
    let alpha: DigitSeq = parse(alpha)?;
    let ns = tile_neighbours(cfg.base(), &TileKind::Fundamental);
    let tiles = admissible_tiles(&cfg, &alpha, depth)?;
    let mut verified = 0usize;
    for t in &tiles {
        witness_point(&cfg, &alpha, t)?;
        verified += 1;
    }
    let (_, upper) = cylinder_cover_bound(&cfg, &alpha, depth, &ns)?;
    let mk = m_k(&cfg, &alpha, depth)?;
    let unique = matches!(
        expansion_multiplicity(&eval(&alpha, cfg.base()), cfg.base(), &cfg.digits().differences()),
        Multiplicity::Unique(_)
    );
    Ok(Report::Json(json!({
        "config": config_json(&cfg),
        "alpha": alpha.to_string(),
        "depth": depth,
        "m_k": mk.to_string(),
        "admissible_count": tiles.len(),
        "witnesses_verified": verified,
        "pairwise_disjoint": pairwise_disjoint(&tiles, &ns)?,
        "upper_bound": upper,
        "unique_alpha_expansion": unique,
    })))
}

fn cmd_render(d: &DigitArgs, alpha: &str, depth: usize, size: usize, out: Option<&PathBuf>) -> CmdResult {
    let cfg = d.config()?;
    let alpha: DigitSeq = parse(alpha)?;
    let img = render_ppm(&cfg, &alpha, depth, size)?;
    match out {
        Some(path) => {
            fs::write(path, &img)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Report::Json(json!({
                "path": path.display().to_string(),
                "size": size.max(1),
                "depth": depth,
            })))
        }
        None => Ok(Report::Raw(img)),
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Encode { n, z } => cmd_encode(*n, z),
        Command::Eval { n, seq } => cmd_eval(*n, seq),
        Command::Member { n, digits, z } => cmd_member(*n, digits.as_deref(), z),
        Command::Neighbours { n, tile, digits } => cmd_neighbours(*n, *tile, digits.as_deref()),
        Command::Dim { d, alpha } => cmd_dim(d, alpha),
        Command::BuildTranslation { d, lambda, prefix } => cmd_build(d, lambda, prefix),
        Command::Sep { kind, seq } => cmd_sep(*kind, seq),
        Command::Selfsim { d, alpha, beta, exhaustive, depth } => {
            cmd_selfsim(d, alpha, beta.as_deref(), *exhaustive, *depth)
        }
        Command::Oracle { d, alpha, depth } => cmd_oracle(d, alpha, *depth),
        Command::Render { d, alpha, depth, size, out } => {
            cmd_render(d, alpha, *depth, *size, out.as_ref())
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn write_text(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                write_text(&key, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            for (i, child) in items.iter().enumerate() {
                write_text(&format!("{prefix}[{i}]"), child, out);
            }
        }
        other => {
            out.push_str(&format!("{prefix}: {}\n", scalar_text(other)));
        }
    }
}

fn render(report: Report, output: Output) -> String {
    match (report, output) {
        (Report::Raw(s), _) => s,
        (Report::Json(v), Output::Json) => {
            let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        (Report::Json(v), Output::Text) => {
            let mut s = String::new();
            write_text("", &v, &mut s);
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", render(report, cli.output));
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            let body = json!({ "error": "input", "message": msg });
            eprintln!("{}", serde_json::to_string(&body).expect("JSON values serialize"));
            ExitCode::from(1)
        }
        Err(Failure::Hypothesis(violations)) => {
            let body = json!({ "error": "hypothesis", "violations": violations });
            eprintln!("{}", serde_json::to_string(&body).expect("JSON values serialize"));
            ExitCode::from(2)
        }
    }
}
