use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use hybridnet::graphs::{classify, generate, oracle_diameter, oracle_sssp, GenParams, GraphClass};
use hybridnet::scaling::{fit_rounds, measure, Fit, Model, Sample};
use hybridnet::{run_algo, Algo, Metrics, Net, Output, SimConfig, WeightedGraph};
use serde::Serialize;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "hybridnet", version, about = "Shortest paths and diameter under a simulated hybrid network")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one algorithm on one graph and check it against the oracle.
    Run {
        /// Edge-list file: "n m" then m lines "u v w".
        #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
        graph: Option<PathBuf>,
        /// CLASS,N,SEED[,key=value...] with keys lo, hi, extra, c.
        #[arg(long)]
        gen: Option<String>,
        #[arg(long, value_parser = parse_algo)]
        algo: Algo,
        #[arg(long, default_value_t = 0)]
        source: usize,
        /// SimConfig as JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Measure rounds over generated instances and fit them against log n.
    Scaling {
        /// Comma-separated node counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: u64,
        #[arg(long, value_parser = parse_algo)]
        algo: Algo,
        /// Graph class; defaults to sparse for the approximations, tree otherwise.
        #[arg(long)]
        class: Option<GraphClass>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for scaling.csv and fit.json; CSV goes to stdout without it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse()
}

fn load_config(path: Option<&Path>) -> Result<SimConfig> {
    let mut cfg: SimConfig = match path {
        Some(p) => serde_json::from_reader(BufReader::new(File::open(p).with_context(|| format!("opening {}", p.display()))?))
            .with_context(|| format!("parsing {}", p.display()))?,
        None => SimConfig::default(),
    };
    if let Ok(s) = std::env::var("HYBRIDNET_SEED") {
        cfg.seed = s.trim().parse().with_context(|| format!("HYBRIDNET_SEED={s} is not a u64"))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_gen(spec: &str) -> Result<(GraphClass, usize, u64, GenParams)> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() < 3 {
        bail!("--gen expects CLASS,N,SEED[,key=value...], got '{spec}'");
    }
    let class: GraphClass = parts[0].parse().map_err(|e| anyhow::anyhow!("{e}"))?;
    let n = parts[1].parse().context("N")?;
    let seed = parts[2].parse().context("SEED")?;
    let mut p = GenParams::default();
    for kv in &parts[3..] {
        let (k, v) = kv.split_once('=').with_context(|| format!("expected key=value, got '{kv}'"))?;
        match k {
            "lo" => p.weight_lo = v.parse()?,
            "hi" => p.weight_hi = v.parse()?,
            "extra" => p.extra_edges = Some(v.parse()?),
            "c" => p.c = v.parse()?,
            _ => bail!("unknown generator parameter '{k}'"),
        }
    }
    Ok((class, n, seed, p))
}

#[derive(Serialize)]
struct RunResult<'a> {
    schema_version: u32,
    algorithm: Algo,
    class: GraphClass,
    n: usize,
    m: usize,
    source: Option<usize>,
    seed: u64,
    output: &'a Output,
    rounds: usize,
    local_msgs: usize,
    global_msgs: usize,
    max_in: usize,
    max_out: usize,
    overflow_events: usize,
    verification: Verification,
}

#[derive(Serialize)]
struct Verification {
    exact_match: bool,
    mismatches: usize,
    /// Worst computed/true ratio; 1 for zero distances.
    max_ratio: f64,
    /// Counts of ratios in [1, 1], (1, 1.5], (1.5, 2], (2, 2.5], (2.5, 3], above 3.
    ratio_histogram: [usize; 6],
    within_bound: bool,
}

fn verify(g: &WeightedGraph, algo: Algo, source: usize, out: &Output) -> Verification {
    let pairs: Vec<(u64, u64)> = match out {
        Output::Distances(d) => d.iter().copied().zip(oracle_sssp(g, source)).collect(),
        Output::Diameter(d) => vec![(*d, oracle_diameter(g))],
    };
    let mut hist = [0usize; 6];
    let mut max_ratio = 1.0f64;
    let mut under = false;
    for &(got, want) in &pairs {
        under |= got < want;
        let r = if want == 0 { if got == 0 { 1.0 } else { f64::INFINITY } } else { got as f64 / want as f64 };
        max_ratio = max_ratio.max(r);
        let bucket = [1.0, 1.5, 2.0, 2.5, 3.0].iter().position(|&b| r <= b).unwrap_or(5);
        hist[bucket] += 1;
    }
    let mismatches = pairs.iter().filter(|(a, b)| a != b).count();
    let bound = if algo.is_exact() { 1.0 } else { 3.0 };
    Verification {
        exact_match: mismatches == 0,
        mismatches,
        max_ratio,
        ratio_histogram: hist,
        within_bound: !under && max_ratio <= bound,
    }
}

fn write_metrics(dir: &Path, m: &Metrics) -> Result<()> {
    let mut f = io::BufWriter::new(File::create(dir.join("metrics.csv"))?);
    m.write_csv(&mut f)?;
    f.flush()?;
    Ok(())
}

fn cmd_run(graph: Option<PathBuf>, gen: Option<String>, algo: Algo, source: usize, config: Option<PathBuf>, out: PathBuf) -> Result<bool> {
    let cfg = load_config(config.as_deref())?;
    let g = match (graph, gen) {
        (Some(p), _) => WeightedGraph::read_text(BufReader::new(File::open(&p).with_context(|| format!("opening {}", p.display()))?))?,
        (None, Some(s)) => {
            let (class, n, seed, params) = parse_gen(&s)?;
            generate(class, n, &params, seed)?
        }
        (None, None) => bail!("one of --graph or --gen is required"),
    };
    let class = classify(&g)?.class;
    let mut net = Net::new(&g, &cfg)?;
    let output = run_algo(&mut net, &g, algo, source)?;
    let metrics = net.into_metrics();
    let verification = verify(&g, algo, source, &output);
    let ok = verification.within_bound;
    let res = RunResult {
        schema_version: SCHEMA_VERSION,
        algorithm: algo,
        class,
        n: g.n(),
        m: g.m(),
        source: algo.needs_source().then_some(source),
        seed: cfg.seed,
        output: &output,
        rounds: metrics.rounds,
        local_msgs: metrics.local_msgs,
        global_msgs: metrics.global_msgs,
        max_in: metrics.max_in,
        max_out: metrics.max_out,
        overflow_events: metrics.overflow_events.len(),
        verification,
    };
    fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    fs::write(out.join("result.json"), serde_json::to_string_pretty(&res)? + "\n")?;
    write_metrics(&out, &metrics)?;
    let v = &res.verification;
    println!(
        "{algo} on {class} n={} m={}: rounds={} exact_match={} max_ratio={:.4} within_bound={}",
        res.n, res.m, res.rounds, v.exact_match, v.max_ratio, v.within_bound
    );
    println!("wrote {}", out.display());
    Ok(ok)
}

#[derive(Serialize)]
struct FitReport {
    schema_version: u32,
    algorithm: Algo,
    class: GraphClass,
    model: Model,
    fit: Option<Fit>,
    /// The other model, for comparison.
    alternative: Option<Fit>,
}

fn cmd_scaling(sizes: Vec<usize>, trials: u64, algo: Algo, class: Option<GraphClass>, config: Option<PathBuf>, out: Option<PathBuf>) -> Result<bool> {
    let cfg = load_config(config.as_deref())?;
    let class = class.unwrap_or(if algo.is_exact() { GraphClass::Tree } else { GraphClass::Sparse });
    let params = GenParams::default();
    let mut samples: Vec<Sample> = Vec::new();
    for &n in &sizes {
        for t in 0..trials.max(1) {
            samples.push(measure(class, algo, n, t, &params, &cfg).with_context(|| format!("n = {n}, trial {t}"))?);
        }
    }
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        for s in &samples {
            w.write_record([
                s.n.to_string(),
                s.algorithm.to_string(),
                s.trial.to_string(),
                s.rounds.to_string(),
                s.msgs.to_string(),
                s.max_in.to_string(),
                s.max_out.to_string(),
            ])?;
        }
        w.flush()?;
    }
    let header = format!("# schema_version={SCHEMA_VERSION}\nn,algorithm,trial,rounds,msgs,max_in,max_out\n");
    let csv_text = header + std::str::from_utf8(&buf)?;
    let model = Model::expected(class, algo);
    let other = match model {
        Model::Log => Model::LogSquared,
        Model::LogSquared => Model::Log,
    };
    let report = FitReport {
        schema_version: SCHEMA_VERSION,
        algorithm: algo,
        class,
        model,
        fit: fit_rounds(&samples, model),
        alternative: fit_rounds(&samples, other),
    };
    let summary = match report.fit {
        Some(f) => format!("fit rounds = {:.3}·x + {:.3} with x = {:?}(n): R² = {:.4}", f.a, f.b, model, f.r2),
        None => "fit skipped: fewer than two sizes".to_string(),
    };
    match out {
        Some(dir) => {
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("scaling.csv"), &csv_text)?;
            fs::write(dir.join("fit.json"), serde_json::to_string_pretty(&report)? + "\n")?;
            println!("{summary}");
            println!("wrote {}", dir.display());
        }
        None => {
            print!("{csv_text}");
            eprintln!("{summary}");
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Run { graph, gen, algo, source, config, out } => cmd_run(graph, gen, algo, source, config, out),
        Cmd::Scaling { sizes, trials, algo, class, config, out } => cmd_scaling(sizes, trials, algo, class, config, out),
    };
    match r {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
