//! `sawsis` command-line driver.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 a resource limit
//! was exceeded.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use sawsis::asymptotics::real::to_decimal_string;
use sawsis::asymptotics::{growth_bounds, verify_expansions, ExpansionSet};
use sawsis::enumerate::{crossing_walks, directed_closed_sum};
use sawsis::estimator::estimate_parallel;
use sawsis::genfunc::{first_moment_gf, nes_moment_gf};
use sawsis::{
    enumerate_crossing, enumerate_directed, enumerate_nes, render_svg, rng, EnumLimits, EnumReport,
    Model, ModelParams, Sample, SawError, SvgOptions, Walk,
};

#[derive(Parser, Debug)]
#[command(
    name = "sawsis",
    version,
    about = "Importance sampling of self-avoiding walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw walks, one JSON object (or CSV row) per sample.
    Sample(SampleArgs),
    /// Estimate the number of walks from weighted samples.
    Estimate(SampleArgs),
    /// Exact E(X) and E(X^2) for l (nes) or k (directed) up to --lmax.
    Moments(MomentArgs),
    /// Exhaustive enumeration with exact weighted sums.
    Enumerate(ModelArgs),
    /// Dominant pole and residue of the NES moment generating function.
    Asymptotics(AsymptoticArgs),
    /// Growth-constant lower bounds from crossing counts for k = 1..K.
    Bounds(BoundsArgs),
    /// SVG picture of sampled walks, or of all crossing walks with --all.
    Render(RenderArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    #[arg(long)]
    model: Model,
    /// Square side, or strip height for nes.
    #[arg(long)]
    k: Option<usize>,
    /// Rectangle width (nes).
    #[arg(long)]
    l: Option<usize>,
    /// Walk length (untrapped).
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of samples.
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Streams (seed, 0..threads); results depend on this count.
    #[arg(long, env = "SAWSIS_THREADS", default_value_t = 1)]
    threads: usize,
    /// Also write an SVG of the samples here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[arg(long)]
    model: Model,
    /// Strip height (nes).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    lmax: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SetArg {
    Printed,
    Corrected,
}

#[derive(Args, Debug)]
struct AsymptoticArgs {
    #[arg(long)]
    k: usize,
    /// Coefficient set for the truncated expansions.
    #[arg(long, value_enum, default_value = "printed")]
    set: SetArg,
    /// Significant digits of the printed reals.
    #[arg(long, default_value_t = 40)]
    digits: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Largest side K.
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    sample: SampleArgs,
    /// Render every crossing walk of the square instead of samples.
    #[arg(long)]
    all: bool,
    /// Panels per row.
    #[arg(long)]
    columns: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Limit(String),
    Io(io::Error),
}

impl From<SawError> for Failure {
    fn from(e: SawError) -> Self {
        match e {
            SawError::LimitExceeded { .. } => Failure::Limit(e.to_string()),
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

type Out<'a> = &'a mut dyn Write;

fn positive(name: &str, v: Option<usize>, model: Model) -> Result<usize, Failure> {
    match v {
        Some(0) => Err(Failure::Usage(format!("--{name} must be positive"))),
        Some(v) => Ok(v),
        None => Err(Failure::Usage(format!("model {model} needs --{name}"))),
    }
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams, Failure> {
        let m = self.model;
        Ok(match m {
            Model::Crossing => ModelParams::Crossing {
                k: positive("k", self.k, m)?,
            },
            Model::Directed => ModelParams::Directed {
                k: positive("k", self.k, m)?,
            },
            Model::Nes => ModelParams::Nes {
                k: positive("k", self.k, m)?,
                l: positive("l", self.l, m)?,
            },
            Model::Untrapped => ModelParams::Untrapped {
                n: positive("length", self.length, m)?,
            },
        })
    }
}

fn write_json(out: Out, v: &Value) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv(out: Out, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `n` samples from streams `(seed, 0..threads)`, concatenated in stream
/// order.
fn draw(params: &ModelParams, n: u64, seed: u64, threads: usize) -> Result<Vec<Sample>, Failure> {
    let threads = threads.max(1) as u64;
    let share = |t: u64| n / threads + u64::from(t < n % threads);
    let parts: Vec<sawsis::Result<Vec<Sample>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut r = rng::stream(seed, t);
                    (0..share(t)).map(|_| params.sample(&mut r)).collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(n as usize);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn sample_json(s: &Sample) -> Value {
    json!({
        "model": s.model,
        "steps": s.walk.to_string(),
        "inverse_probability": s.inverse_probability().to_string(),
        "a": s.trace.a,
        "b": s.trace.b,
    })
}

fn svg_of(
    walks: &[Walk],
    traces: &[sawsis::ProbTrace],
    columns: Option<usize>,
) -> Result<String, Failure> {
    let opts = SvgOptions {
        columns,
        ..SvgOptions::default()
    };
    Ok(render_svg(walks, Some(traces), &opts)?)
}

fn write_svg_file(
    path: &PathBuf,
    samples: &[Sample],
    columns: Option<usize>,
) -> Result<(), Failure> {
    let walks: Vec<Walk> = samples.iter().map(|s| s.walk.clone()).collect();
    let traces: Vec<_> = samples.iter().map(|s| s.trace.clone()).collect();
    std::fs::write(path, svg_of(&walks, &traces, columns)?)?;
    Ok(())
}

fn cmd_sample(a: &SampleArgs, out: Out) -> Result<(), Failure> {
    let params = a.model.params()?;
    let samples = draw(&params, a.n, a.seed, a.threads)?;
    match a.model.format {
        Format::Json => {
            for s in &samples {
                write_json(out, &sample_json(s))?;
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = samples
                .iter()
                .map(|s| {
                    vec![
                        s.model.to_string(),
                        s.walk.to_string(),
                        s.inverse_probability().to_string(),
                        s.trace.a.to_string(),
                        s.trace.b.to_string(),
                    ]
                })
                .collect();
            write_csv(
                out,
                &["model", "steps", "inverse_probability", "a", "b"],
                &rows,
            )?;
        }
    }
    if let Some(path) = &a.svg {
        write_svg_file(path, &samples, None)?;
    }
    Ok(())
}

fn cmd_estimate(a: &SampleArgs, out: Out) -> Result<(), Failure> {
    let params = a.model.params()?;
    if a.n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let acc = estimate_parallel(&params, a.n, a.seed, a.threads)?;
    let e = acc.estimate()?;
    let mean = format!("{:.6e}", e.mean_f64);
    let std_error = e.std_error.map(|s| format!("{s:.6e}"));
    let rv = format!("{:.6e}", e.relative_variance_estimate);
    match a.model.format {
        Format::Json => write_json(
            out,
            &json!({
                "model": params.model(),
                "n": e.n,
                "seed": a.seed,
                "threads": a.threads,
                "mean": mean,
                "mean_exact": e.mean.to_string(),
                "std_error": std_error,
                "relative_variance_estimate": rv,
            }),
        ),
        Format::Csv => write_csv(
            out,
            &[
                "model",
                "n",
                "seed",
                "threads",
                "mean",
                "std_error",
                "relative_variance_estimate",
            ],
            &[vec![
                params.model().to_string(),
                e.n.to_string(),
                a.seed.to_string(),
                a.threads.to_string(),
                mean,
                std_error.unwrap_or_default(),
                rv,
            ]],
        ),
    }
}

fn cmd_moments(a: &MomentArgs, out: Out) -> Result<(), Failure> {
    // rows of (index, E(X), E(X^2))
    let (index, rows): (&str, Vec<(usize, BigInt, BigInt)>) = match a.model {
        Model::Nes => {
            let k = positive("k", a.k, a.model)?;
            let m1 = first_moment_gf(k)?.coefficients(a.lmax)?;
            let m2 = nes_moment_gf(k)?.coefficients(a.lmax)?;
            let rows = (1..=a.lmax)
                .map(|l| {
                    let mean = BigInt::from(k + 1).pow(l as u32);
                    debug_assert_eq!(&mean * &mean, m1[l]);
                    (l, mean, m2[l].clone())
                })
                .collect();
            ("l", rows)
        }
        Model::Directed => {
            let rows = (1..=a.lmax)
                .map(|k| {
                    let mean = num_integer::binomial(BigInt::from(2 * k), BigInt::from(k));
                    (k, mean, BigInt::from(directed_closed_sum(k)))
                })
                .collect();
            ("k", rows)
        }
        m => {
            return Err(Failure::Usage(format!(
                "no generating function for model {m}; use `enumerate`"
            )))
        }
    };
    match a.common.format {
        Format::Json => write_json(
            out,
            &json!({
                "model": a.model,
                "k": a.k,
                "rows": rows.iter().map(|(i, m, m2)| json!({
                    index: i,
                    "mean": m.to_string(),
                    "mean_square": (m * m).to_string(),
                    "second_moment": m2.to_string(),
                })).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => write_csv(
            out,
            &[index, "mean", "mean_square", "second_moment"],
            &rows
                .iter()
                .map(|(i, m, m2)| {
                    vec![
                        i.to_string(),
                        m.to_string(),
                        (m * m).to_string(),
                        m2.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

fn report_row(r: &EnumReport) -> Vec<String> {
    vec![
        r.model.to_string(),
        r.k.to_string(),
        r.l.map(|l| l.to_string()).unwrap_or_default(),
        r.count.to_string(),
        r.weighted_sum.to_string(),
        r.weighted_sq_sum
            .as_ref()
            .map(|v| v.to_string())
            .unwrap_or_default(),
        r.exhaustive.to_string(),
    ]
}

const REPORT_HEADER: [&str; 7] = [
    "model",
    "k",
    "l",
    "count",
    "weighted_sum",
    "weighted_sq_sum",
    "exhaustive",
];

fn cmd_enumerate(a: &ModelArgs, out: Out) -> Result<(), Failure> {
    let limits = EnumLimits::default();
    let report = match a.params()? {
        ModelParams::Crossing { k } => enumerate_crossing(k, &limits)?,
        ModelParams::Directed { k } => enumerate_directed(k, &limits)?,
        ModelParams::Nes { k, l } => enumerate_nes(k, l, &limits)?,
        ModelParams::Untrapped { .. } => {
            return Err(Failure::Usage("untrapped walks are not enumerated".into()))
        }
    };
    match a.format {
        Format::Json => write_json(
            out,
            &serde_json::to_value(&report).map_err(io::Error::from)?,
        ),
        Format::Csv => write_csv(out, &REPORT_HEADER, &[report_row(&report)]),
    }
}

fn cmd_asymptotics(a: &AsymptoticArgs, out: Out) -> Result<(), Failure> {
    let set = match a.set {
        SetArg::Printed => ExpansionSet::Printed,
        SetArg::Corrected => ExpansionSet::Corrected,
    };
    let d = verify_expansions(a.k, set)?;
    let dec = |x| to_decimal_string(x, a.digits.max(1));
    let fields = [
        ("rho", dec(&d.rho)),
        ("alpha", dec(&d.alpha)),
        ("rho_expansion", dec(&d.rho_expansion)),
        ("alpha_expansion", dec(&d.alpha_expansion)),
        ("rho_residual", dec(&d.rho_residual)),
        ("alpha_residual", dec(&d.alpha_residual)),
        ("rho_ratio", format!("{:.6e}", d.rho_ratio)),
        ("alpha_ratio", format!("{:.6e}", d.alpha_ratio)),
    ];
    let set_name = format!("{:?}", a.set).to_lowercase();
    match a.common.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("k".into(), json!(a.k));
            obj.insert("set".into(), json!(set_name));
            for (name, v) in fields {
                obj.insert(name.into(), json!(v));
            }
            write_json(out, &Value::Object(obj))
        }
        Format::Csv => {
            let mut header = vec!["k", "set"];
            header.extend(fields.iter().map(|f| f.0));
            let mut row = vec![a.k.to_string(), set_name];
            row.extend(fields.iter().map(|f| f.1.clone()));
            write_csv(out, &header, &[row])
        }
    }
}

fn cmd_bounds(a: &BoundsArgs, out: Out) -> Result<(), Failure> {
    let limits = EnumLimits::default();
    if a.k == 0 {
        return Err(Failure::Usage("--k must be positive".into()));
    }
    let reports = (1..=a.k)
        .map(|k| enumerate_crossing(k, &limits))
        .collect::<sawsis::Result<Vec<_>>>()?;
    let b = growth_bounds(&reports)?;
    match a.common.format {
        Format::Json => write_json(out, &serde_json::to_value(&b).map_err(io::Error::from)?),
        Format::Csv => write_csv(
            out,
            &["k", "c", "d", "lambda_lb", "beta_lb"],
            &b.table
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        r.k.to_string(),
                        r.c.to_string(),
                        r.d.to_string(),
                        b.lambda_prefix[i].to_string(),
                        b.beta_prefix[i].to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

fn cmd_render(a: &RenderArgs, out: Out) -> Result<(), Failure> {
    let (walks, traces): (Vec<Walk>, Vec<_>) = if a.all {
        let ModelParams::Crossing { k } = a.sample.model.params()? else {
            return Err(Failure::Usage(
                "--all is only available for crossing walks".into(),
            ));
        };
        crossing_walks(k, &EnumLimits::default())?
            .into_iter()
            .unzip()
    } else {
        let p = a.sample.model.params()?;
        draw(&p, a.sample.n, a.sample.seed, a.sample.threads)?
            .into_iter()
            .map(|s| (s.walk, s.trace))
            .unzip()
    };
    let svg = svg_of(&walks, &traces, a.columns)?;
    match &a.sample.svg {
        Some(path) => std::fs::write(path, svg)?,
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli, out: Out) -> Result<(), Failure> {
    match &cli.command {
        Command::Sample(a) => cmd_sample(a, out),
        Command::Estimate(a) => cmd_estimate(a, out),
        Command::Moments(a) => cmd_moments(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Asymptotics(a) => cmd_asymptotics(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Render(a) => cmd_render(a, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
