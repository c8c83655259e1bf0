//! Command-line front end.
//!
//! Every subcommand is plumbing around the library: load or generate
//! polynomials, fan experiment trials out over a worker pool, and write CSV
//! or JSON artifacts. All runs are reproducible from `--seed`; the worker
//! count (`--jobs`, or the `GAUSS_PTF_JOBS` environment variable) never
//! affects output bytes.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime error.

use crate::error::{Error, Result};
use crate::experiment::{
    corpus_generate, exp_anticoncentration, exp_fooling_error, exp_hybrid_step,
    exp_hypervariance, exp_restriction_fixing, exp_slow_growth, fmt_float, reports_to_csv,
    CorpusKind, CorpusLabel, ExperimentReport, PtfInstance,
};
use crate::poly::{gaussian_moment, Basis, Poly};

use crate::prg::{MomentSampler, Prg, PrgConfig, SamplerKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

pub const JOBS_ENV_VAR: &str = "GAUSS_PTF_JOBS";

#[derive(Parser)]
#[command(
    name = "gauss-ptf",
    version,
    about = "Experiments on polynomial threshold functions over gaussian space: \
             derivative growth, random restrictions, hypervariance, mollifier hybrid \
             steps, and the fooling error of moment-matched generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantiles of the growth ratio between consecutive derivative norms at
    /// random gaussian points (the slow-growth property of low-degree
    /// polynomials)
    SlowGrowth(SlowGrowthArgs),
    /// Fraction of random restriction centers at which the restricted
    /// threshold function is nearly fixed to a constant sign
    RestrictionFixing(RestrictionFixingArgs),
    /// Quantiles of the normalized hypervariance of random restrictions (how
    /// fast higher-order coefficient mass decays after restricting)
    Hypervariance(HypervarianceArgs),
    /// Frequency of |p(x)| <= eps * ||grad p(x)|| under gaussian x (relative
    /// anticoncentration of low-degree polynomials)
    Anticoncentration(AnticoncentrationArgs),
    /// One hybrid step at a fixed center: mollified sign expectation under
    /// the moment-matching sampler versus gaussian draws, with the
    /// well-/poorly-behaved case diagnosis
    HybridStep(HybridStepArgs),
    /// Two-sided fooling error of the bucketed generator Z = sum Y_i/sqrt(L)
    /// against Monte Carlo gaussian sampling, per corpus instance
    Fool(FoolArgs),
    /// Print the Gauss-Hermite node law matching k moments and audit its
    /// moment residuals and seed cost
    Moments(MomentsArgs),
    /// Restrict a polynomial at a random gaussian center and write the
    /// restricted polynomial
    Restrict(RestrictArgs),
    /// Convert a polynomial file between the hermite and standard bases
    Convert(ConvertArgs),
    /// Generate a deterministic polynomial corpus as JSON files
    Corpus(CorpusArgs),
    /// Run every experiment once with shared parameters into a single CSV
    Suite(SuiteArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Master seed; every byte of output is a pure function of it
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Worker threads (0 = GAUSS_PTF_JOBS or all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InstanceArgs {
    /// Polynomial JSON file; overrides corpus generation
    #[arg(long)]
    poly: Option<PathBuf>,
    /// Corpus family to generate when no file is given
    #[arg(long, value_enum, default_value_t = CorpusKindArg::RandomHermite)]
    corpus: CorpusKindArg,
    /// Number of generated corpus instances
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Variable count of generated instances
    #[arg(long = "n", default_value_t = 4)]
    n: usize,
    /// Degree of generated instances
    #[arg(long = "d", default_value_t = 3)]
    d: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusKindArg {
    RandomHermite,
    RandomStandard,
    Sparse,
    MonomialPower,
    Mixed,
}

impl From<CorpusKindArg> for CorpusKind {
    fn from(v: CorpusKindArg) -> CorpusKind {
        match v {
            CorpusKindArg::RandomHermite => CorpusKind::RandomHermite,
            CorpusKindArg::RandomStandard => CorpusKind::RandomStandard,
            CorpusKindArg::Sparse => CorpusKind::Sparse,
            CorpusKindArg::MonomialPower => CorpusKind::MonomialPower,
            CorpusKindArg::Mixed => CorpusKind::Mixed,
        }
    }
}

impl InstanceArgs {
    fn load(&self, seed: u64) -> Result<Vec<PtfInstance>> {
        match &self.poly {
            Some(path) => Ok(vec![PtfInstance {
                poly: Poly::read_json(path)?,
                label: CorpusLabel::Custom,
            }]),
            None => corpus_generate(self.corpus.into(), self.n, self.d, self.count, seed),
        }
    }
}

#[derive(Args)]
struct SlowGrowthArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Tail probabilities delta; reports the (1-delta)-quantile per value
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1])]
    delta: Vec<f64>,
    /// Also report the fraction of trials whose max growth ratio exceeds this
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Args)]
struct RestrictionFixingArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Free-variance fractions to sweep (comma separated)
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.01, 0.001])]
    lambda: Vec<f64>,
    /// A center counts as fixed when max_b P(sign = b) exceeds 1 - eps
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Restriction centers sampled
    #[arg(long, default_value_t = 1000)]
    outer: u64,
    /// Gaussian draws per center for the sign-probability estimate
    #[arg(long, default_value_t = 10_000)]
    inner: u64,
}

#[derive(Args)]
struct HypervarianceArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.01, 0.001])]
    lambda: Vec<f64>,
    /// Geometric weight R on coefficient order in the hypervariance sum
    #[arg(long = "r-weight", default_value_t = 3.0)]
    r_weight: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
}

#[derive(Args)]
struct AnticoncentrationArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Relative thresholds eps to sweep
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.01, 0.05, 0.1])]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Args)]
struct HybridStepArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.001])]
    lambda: Vec<f64>,
    /// Well-behavedness width for the mollifier factors
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Moment multiplier: the sampler matches d * R moments
    #[arg(long = "R", default_value_t = 4)]
    moment_param: u64,
    /// Stream used to draw the fixed center x
    #[arg(long, default_value_t = 0)]
    x_seed: u64,
    /// Use k-wise independent coordinates over this prime field instead of
    /// fully independent ones
    #[arg(long)]
    kwise_prime: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Args)]
struct FoolArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Polynomial JSON file; overrides corpus generation
    #[arg(long)]
    poly: Option<PathBuf>,
    /// Corpus family (the default mixed family interleaves random, sparse,
    /// and near-balanced power instances)
    #[arg(long, value_enum, default_value_t = CorpusKindArg::Mixed)]
    corpus: CorpusKindArg,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long = "n", default_value_t = 4)]
    n: usize,
    #[arg(long = "d", default_value_t = 3)]
    d: usize,
    /// Bucket count L of the generator (lambda = 1/L per hybrid step)
    #[arg(long = "L", default_value_t = 16)]
    buckets: u64,
    /// Moment multiplier: each bucket matches d * R moments
    #[arg(long = "R", default_value_t = 4)]
    moment_param: u64,
    /// Generator draws
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Gaussian reference draws
    #[arg(long, default_value_t = 1_000_000)]
    mc_draws: u64,
    /// Realize buckets with k-wise independent coordinates over this prime
    #[arg(long)]
    kwise_prime: Option<u64>,
}

#[derive(Args)]
struct MomentsArgs {
    /// Moment order the node law must match exactly
    #[arg(long = "k", default_value_t = 6)]
    k: usize,
    /// Print per-moment residuals up to 2M+1
    #[arg(long, default_value_t = false)]
    audit: bool,
    /// Also audit the k-wise quantized law over this prime field
    #[arg(long)]
    prime: Option<u64>,
    /// Dimension used for seed accounting
    #[arg(long = "n", default_value_t = 4)]
    n: usize,
    /// Bucket count used for seed accounting
    #[arg(long = "L", default_value_t = 16)]
    buckets: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct RestrictArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long)]
    lambda: f64,
    /// Stream drawing the gaussian restriction center
    #[arg(long, default_value_t = 0)]
    x_seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long)]
    poly: PathBuf,
    /// Target basis
    #[arg(long, value_enum)]
    to: BasisArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Hermite,
    Standard,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, value_enum, default_value_t = CorpusKindArg::Mixed)]
    corpus: CorpusKindArg,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long = "n", default_value_t = 4)]
    n: usize,
    #[arg(long = "d", default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Directory receiving one JSON file per instance
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SuiteArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long = "n", default_value_t = 4)]
    n: usize,
    #[arg(long = "d", default_value_t = 3)]
    d: usize,
    /// Base trial count; the heavier experiments derive scaled-down counts
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

/// Entry point for the installed binary.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Parse and execute; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors to stderr
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::SlowGrowth(args) => with_pool(args.common.jobs, || slow_growth(&args)),
        Command::RestrictionFixing(args) => {
            with_pool(args.common.jobs, || restriction_fixing(&args))
        }
        Command::Hypervariance(args) => with_pool(args.common.jobs, || hypervariance_cmd(&args)),
        Command::Anticoncentration(args) => {
            with_pool(args.common.jobs, || anticoncentration(&args))
        }
        Command::HybridStep(args) => with_pool(args.common.jobs, || hybrid_step(&args)),
        Command::Fool(args) => with_pool(args.common.jobs, || fool(&args)),
        Command::Moments(args) => moments(&args),
        Command::Restrict(args) => restrict_cmd(&args),
        Command::Convert(args) => convert_cmd(&args),
        Command::Corpus(args) => corpus_cmd(&args),
        Command::Suite(args) => with_pool(args.common.jobs, || suite(&args)),
    }
}

/// Run `f` inside a worker pool of the requested size. Zero means: honor the
/// environment variable, else let the pool pick all cores.
fn with_pool<F: FnOnce() -> Result<()> + Send>(jobs: usize, f: F) -> Result<()> {
    let jobs = if jobs > 0 {
        jobs
    } else {
        std::env::var(JOBS_ENV_VAR)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(0)
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if jobs > 0 {
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    pool.install(f)
}

fn emit(common: &CommonArgs, reports: &[ExperimentReport]) -> Result<()> {
    let csv = reports_to_csv(reports);
    match &common.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

/// Tag each report row with the corpus instance it came from.
fn tag_instance(report: &mut ExperimentReport, idx: usize, label: CorpusLabel) {
    report
        .aux
        .push(("instance".to_string(), idx as f64));
    report.aux.push(("label".to_string(), label.code()));
}

fn slow_growth(args: &SlowGrowthArgs) -> Result<()> {
    let mut reports = Vec::new();
    for (idx, inst) in args.instance.load(args.common.seed)?.iter().enumerate() {
        for &delta in &args.delta {
            let mut r = exp_slow_growth(
                &inst.poly,
                delta,
                args.threshold,
                args.trials,
                args.common.seed,
            )?;
            tag_instance(&mut r, idx, inst.label);
            reports.push(r);
        }
    }
    emit(&args.common, &reports)
}

fn restriction_fixing(args: &RestrictionFixingArgs) -> Result<()> {
    let mut reports = Vec::new();
    for (idx, inst) in args.instance.load(args.common.seed)?.iter().enumerate() {
        for &lambda in &args.lambda {
            let mut r = exp_restriction_fixing(
                &inst.poly,
                lambda,
                args.eps,
                args.outer,
                args.inner,
                args.common.seed,
            )?;
            tag_instance(&mut r, idx, inst.label);
            reports.push(r);
        }
    }
    emit(&args.common, &reports)
}

fn hypervariance_cmd(args: &HypervarianceArgs) -> Result<()> {
    let mut reports = Vec::new();
    for (idx, inst) in args.instance.load(args.common.seed)?.iter().enumerate() {
        for &lambda in &args.lambda {
            let mut r = exp_hypervariance(
                &inst.poly,
                lambda,
                args.r_weight,
                args.trials,
                args.common.seed,
            )?;
            tag_instance(&mut r, idx, inst.label);
            reports.push(r);
        }
    }
    emit(&args.common, &reports)
}

fn anticoncentration(args: &AnticoncentrationArgs) -> Result<()> {
    let mut reports = Vec::new();
    for (idx, inst) in args.instance.load(args.common.seed)?.iter().enumerate() {
        for &eps in &args.eps {
            let mut r = exp_anticoncentration(&inst.poly, eps, args.trials, args.common.seed)?;
            tag_instance(&mut r, idx, inst.label);
            reports.push(r);
        }
    }
    emit(&args.common, &reports)
}

fn hybrid_step(args: &HybridStepArgs) -> Result<()> {
    let kind = match args.kwise_prime {
        Some(prime) => SamplerKind::KWise { prime },
        None => SamplerKind::FullyIndependent,
    };
    let mut reports = Vec::new();
    for (idx, inst) in args.instance.load(args.common.seed)?.iter().enumerate() {
        let x = crate::prg::gaussian_point(args.x_seed, 0, inst.poly.n());
        for &lambda in &args.lambda {
            let mut r = exp_hybrid_step(
                &inst.poly,
                &x,
                lambda,
                args.eps,
                args.moment_param,
                args.trials,
                args.common.seed,
                kind,
            )?;
            tag_instance(&mut r, idx, inst.label);
            reports.push(r);
        }
    }
    emit(&args.common, &reports)
}

fn fool(args: &FoolArgs) -> Result<()> {
    let instances = match &args.poly {
        Some(path) => vec![PtfInstance {
            poly: Poly::read_json(path)?,
            label: CorpusLabel::Custom,
        }],
        None => corpus_generate(args.corpus.into(), args.n, args.d, args.count, args.common.seed)?,
    };
    let mut reports = Vec::new();
    for (idx, inst) in instances.iter().enumerate() {
        let mut config = PrgConfig::new(
            inst.poly.n(),
            args.d.max(inst.poly.degree()),
            args.buckets,
            args.moment_param,
            args.common.seed,
        );
        if let Some(prime) = args.kwise_prime {
            config.mode = SamplerKind::KWise { prime };
        }
        let mut r = exp_fooling_error(&inst.poly, &config, args.trials, args.mc_draws)?;
        tag_instance(&mut r, idx, inst.label);
        reports.push(r);
    }
    emit(&args.common, &reports)
}

fn moments(args: &MomentsArgs) -> Result<()> {
    let sampler = MomentSampler::fully_independent(args.n, args.k, args.seed)?;
    let nodes = sampler.nodes();
    println!(
        "node law: M = {} nodes matching {} moments (exact through degree {})",
        nodes.len(),
        args.k,
        2 * nodes.len() - 1
    );
    println!("node,weight");
    for &(x, w) in nodes {
        println!("{},{}", fmt_float(x), fmt_float(w));
    }
    if args.audit {
        let max_m = 2 * nodes.len() + 1;
        let residuals = sampler.moment_residuals(max_m);
        println!("moment,exact,residual");
        for (m, res) in residuals.iter().enumerate() {
            println!("{m},{},{}", fmt_float(gaussian_moment(m)), fmt_float(*res));
        }
    }
    let mut config = PrgConfig::new(args.n, 1, args.buckets, args.k as u64, args.seed);
    if let Some(prime) = args.prime {
        config.mode = SamplerKind::KWise { prime };
        let kwise = MomentSampler::k_wise(args.n, args.k, prime, args.seed)?;
        if args.audit {
            println!("quantized law over F_{prime}: moment residuals");
            println!("moment,residual");
            for (m, res) in kwise.moment_residuals(args.k).iter().enumerate() {
                println!("{m},{}", fmt_float(*res));
            }
        }
    }
    let acct = Prg::new(config)?.seed_accounting();
    println!(
        "seed accounting: bits_per_bucket={} total_bits={} seed_optimal={}",
        acct.bits_per_bucket, acct.total_bits, acct.seed_optimal
    );
    Ok(())
}

fn restrict_cmd(args: &RestrictArgs) -> Result<()> {
    let p = Poly::read_json(&args.poly)?;
    let p = match p.basis() {
        Basis::Hermite => p,
        Basis::Standard => p.to_hermite()?,
    };
    let x = crate::prg::gaussian_point(args.x_seed, 0, p.n());
    let q = crate::analysis::restrict(
        &p,
        &crate::analysis::Restriction::new(args.lambda, x)?,
    )?;
    q.write_json(&args.out)?;
    Ok(())
}

fn convert_cmd(args: &ConvertArgs) -> Result<()> {
    let p = Poly::read_json(&args.poly)?;
    let q = match (p.basis(), args.to) {
        (Basis::Hermite, BasisArg::Standard) => p.to_standard()?,
        (Basis::Standard, BasisArg::Hermite) => p.to_hermite()?,
        _ => p,
    };
    q.write_json(&args.out)?;
    Ok(())
}

fn corpus_cmd(args: &CorpusArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    let instances = corpus_generate(args.corpus.into(), args.n, args.d, args.count, args.seed)?;
    for (idx, inst) in instances.iter().enumerate() {
        let name = format!("poly_{idx:03}_{}.json", inst.label);
        inst.poly.write_json(&args.out_dir.join(name))?;
    }
    println!("wrote {} instances to {}", instances.len(), args.out_dir.display());
    Ok(())
}

/// Fixed tour through every experiment with sizes derived from one base
/// trial count. Reruns with the same seed are byte-identical for any worker
/// count.
fn suite(args: &SuiteArgs) -> Result<()> {
    let seed = args.common.seed;
    let trials = args.trials.max(10_000);
    let outer = (trials / 10).clamp(100, 1000);
    let inner = (trials / 10).clamp(100, 10_000);
    let instances = corpus_generate(CorpusKind::Mixed, args.n, args.d, 5, seed)?;
    let mut reports = Vec::new();
    for (idx, inst) in instances.iter().enumerate() {
        let mut r = exp_slow_growth(&inst.poly, 0.1, None, trials, seed)?;
        tag_instance(&mut r, idx, inst.label);
        reports.push(r);
    }
    for &lambda in &[0.1, 0.01] {
        let mut r =
            exp_restriction_fixing(&instances[0].poly, lambda, 0.05, outer, inner, seed)?;
        tag_instance(&mut r, 0, instances[0].label);
        reports.push(r);
    }
    for (idx, inst) in instances.iter().enumerate().take(2) {
        let mut r = exp_hypervariance(&inst.poly, 0.01, 3.0, trials / 10, seed)?;
        tag_instance(&mut r, idx, inst.label);
        reports.push(r);
    }
    for (idx, inst) in instances.iter().enumerate().take(2) {
        let mut r = exp_anticoncentration(&inst.poly, 0.05, trials, seed)?;
        tag_instance(&mut r, idx, inst.label);
        reports.push(r);
    }
    let x = crate::prg::gaussian_point(seed, 0, args.n);
    let mut r = exp_hybrid_step(
        &instances[0].poly,
        &x,
        0.001,
        0.1,
        4,
        trials / 10,
        seed,
        SamplerKind::FullyIndependent,
    )?;
    tag_instance(&mut r, 0, instances[0].label);
    reports.push(r);
    for (idx, inst) in instances.iter().enumerate() {
        let config = PrgConfig::new(args.n, args.d, 16, 4, seed);
        let mut r = exp_fooling_error(&inst.poly, &config, trials, 2 * trials)?;
        tag_instance(&mut r, idx, inst.label);
        reports.push(r);
    }
    emit(&args.common, &reports)
}
