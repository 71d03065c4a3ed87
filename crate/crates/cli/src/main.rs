use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ppl_core::density::{
    seeded_rng, verify_ratio_lemma, LemmaParams, LemmaSampler, LemmaVerdict, WindowSet,
};
use ppl_core::padic::PositiveRational;
use ppl_core::partition::{
    build_legendre_partition, build_modular_partition, build_valuation_parity_partition,
    Construction, PartitionHandle,
};
use ppl_core::scanner::{scan, ScanConfig, ScanMode, ScanReport};

/// Extremal partitions of the positive integers and their p-adic density.
#[derive(Parser, Debug)]
#[command(name = "ppl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a partition and write its JSON spec
    Construct(ConstructArgs),
    /// Scan a partition spec for exceptional primes
    Scan(ScanArgs),
    /// Check the cell-counting lemma on explicit or random sets
    CheckLemma(LemmaArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// modular, valuation-parity or legendre
    construction: Construction,

    /// Number of parts
    #[arg(long)]
    k: usize,

    /// Construction primes, comma separated
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,

    /// Output path (defaults to <construction>-k<k>.json)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Zp,
    Qp,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,

    /// Partition spec written by `construct`
    #[arg(long)]
    spec: PathBuf,

    /// Scan every prime up to this bound
    #[arg(long, default_value_t = 50)]
    primes_upto: u64,

    /// Window [1, N]
    #[arg(long, default_value_t = 100_000)]
    window: u64,

    /// Residue depth for zp mode
    #[arg(long, default_value_t = 2)]
    depth: u32,

    /// Cell precision for qp mode
    #[arg(long, default_value_t = 2)]
    w: u32,

    /// Valuation range for qp mode, e.g. -2..2 (inclusive)
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true, value_parser = parse_range)]
    s_range: (i64, i64),

    /// Report path (defaults to <spec stem>.<mode>.json next to the spec)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also write a CSV table beside the JSON report
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    w: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Density constant, as a fraction or decimal (3/4, 0.75)
    #[arg(long)]
    c: Option<PositiveRational>,
    #[arg(long)]
    m: Option<u32>,

    /// Explicit set, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["range", "random"])]
    set: Option<Vec<u64>>,

    /// Explicit set a..b (inclusive)
    #[arg(long, value_parser = parse_range, conflicts_with = "random")]
    range: Option<(i64, i64)>,

    /// Number of random instances
    #[arg(long)]
    random: Option<usize>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Largest element of a random set
    #[arg(long, default_value_t = 10_000)]
    max_element: u64,

    /// Print every random instance, not only violations
    #[arg(long)]
    verbose: bool,

    /// Write all verdicts as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    /// Bad flags, unreadable input, failed precondition.
    Usage(anyhow::Error),
    /// The run completed but an expected bound did not hold.
    Bound(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like -2..2, got `{s}`"))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad range start `{lo}`: {e}"))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad range end `{hi}`: {e}"))?;
    Ok((lo, hi))
}

/// Name the flag behind a library field in diagnostics.
fn with_flag(e: ppl_core::Error) -> anyhow::Error {
    if let ppl_core::Error::InvalidParameter { field, reason } = &e {
        let flag = match *field {
            "prime_bound" => "--primes-upto",
            "window" => "--window",
            "depth" => "--depth",
            "w" => "--w",
            "s_range" => "--s-range",
            "t" => "--t",
            "m" => "--m",
            "k" => "--k",
            "primes" => "--primes",
            _ => return anyhow!(e),
        };
        return anyhow!("invalid `{flag}`: {reason}");
    }
    anyhow!(e)
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("PPL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        anyhow!("invalid `PPL_THREADS`: expected a positive integer, got `{raw}`")
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn construct(args: ConstructArgs) -> Result<(), Failure> {
    let handle = match args.construction {
        Construction::Modular => build_modular_partition(args.k, &args.primes),
        Construction::ValuationParity => build_valuation_parity_partition(args.k, &args.primes),
        Construction::Legendre => build_legendre_partition(args.k, &args.primes),
    }
    .map_err(with_flag)?;

    let doc = handle.to_document();
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    println!("construction: {}", doc.construction);
    println!("k: {}", doc.k);
    println!("primes: {}", join(&doc.primes));
    if let Some(exps) = &doc.exponents {
        let exps: Vec<u64> = exps.iter().map(|&e| e.into()).collect();
        println!("exponents: {}", join(&exps));
    }
    match &doc.table {
        Some(table) => println!("table size: {}", table.len()),
        None => {
            println!("base parts: {}", handle.base_parts());
            match &doc.refinement {
                Some(r) => println!(
                    "refinement: part {} split into {} pieces by (n mod {}) mod {}",
                    r.base_part, r.pieces, r.modulus, r.pieces
                ),
                None => println!("refinement: none"),
            }
        }
    }

    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}-k{}.json", doc.construction, doc.k)));
    write_file(&out, &handle.to_json())?;
    println!("wrote {}", out.display());
    Ok(())
}

fn load_spec(path: &Path) -> anyhow::Result<PartitionHandle> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("invalid `--spec`: cannot read {}", path.display()))?;
    PartitionHandle::from_json(&text)
        .map_err(|e| anyhow!("invalid `--spec` {}: {e}", path.display()))
}

fn run_scan(args: ScanArgs) -> Result<(), Failure> {
    let handle = load_spec(&args.spec)?;
    let mode = match args.mode {
        ModeArg::Zp => ScanMode::Zp,
        ModeArg::Qp => ScanMode::QpRatio,
    };
    let cfg = ScanConfig {
        mode,
        prime_bound: args.primes_upto,
        window: args.window,
        depth: args.depth,
        w: args.w,
        s_min: args.s_range.0,
        s_max: args.s_range.1,
    };
    cfg.validate(&handle).map_err(with_flag)?;
    let report = scan(&handle, &cfg).map_err(with_flag)?;

    let out = args.out.unwrap_or_else(|| {
        let stem = args.spec.file_stem().unwrap_or_default().to_string_lossy();
        args.spec
            .with_file_name(format!("{stem}.{}.json", mode.as_str()))
    });
    write_file(&out, &report.to_json())?;
    let csv = args.csv.then(|| out.with_extension("csv"));
    if let Some(path) = &csv {
        write_file(path, &report.to_csv())?;
    }

    print_scan_summary(&handle, &report);
    println!("wrote {}", out.display());
    if let Some(path) = &csv {
        println!("wrote {}", path.display());
    }
    match report.violation {
        Some(v) => Err(Failure::Bound(v)),
        None => Ok(()),
    }
}

fn print_scan_summary(handle: &PartitionHandle, report: &ScanReport) {
    let cfg = &report.config;
    let precision = match cfg.mode {
        ScanMode::Zp => format!("depth {}", cfg.depth),
        ScanMode::QpRatio => format!("w {}, s in [{}, {}]", cfg.w, cfg.s_min, cfg.s_max),
    };
    println!(
        "{} scan of {} over primes <= {}, window {}, {precision}",
        cfg.mode.as_str(),
        handle.metadata().description,
        cfg.prime_bound,
        cfg.window
    );
    println!(
        "exceptional primes: {:?} ({} of at most {})",
        report.exceptional_primes,
        report.exceptional_primes.len(),
        report.bound
    );
    let limited: Vec<u64> = report
        .primes
        .iter()
        .filter(|p| p.window_limited)
        .map(|p| p.p)
        .collect();
    if !limited.is_empty() {
        println!("window-limited: {limited:?}");
    }
    println!(
        "bound {}",
        if report.bound_holds { "holds" } else { "FAILS" }
    );
}

fn explicit_params(args: &LemmaArgs) -> anyhow::Result<Option<LemmaParams>> {
    let given = [
        args.p.is_some(),
        args.w.is_some(),
        args.t.is_some(),
        args.c.is_some(),
        args.m.is_some(),
    ];
    if given.iter().all(|&g| !g) {
        return Ok(None);
    }
    let missing =
        |name: &str| anyhow!("missing `--{name}`: give all of --p --w --t --c --m or none");
    Ok(Some(LemmaParams {
        p: args.p.ok_or_else(|| missing("p"))?,
        w: args.w.ok_or_else(|| missing("w"))?,
        t: args.t.ok_or_else(|| missing("t"))?,
        c: args.c.ok_or_else(|| missing("c"))?,
        m: args.m.ok_or_else(|| missing("m"))?,
    }))
}

fn verdict_row(set: &WindowSet, v: &LemmaVerdict) -> String {
    let p = &v.params;
    let outcome = match (v.hypothesis, v.conclusion) {
        (false, _) => "hypothesis ✗ (skipped)".to_string(),
        (true, Some(true)) => "hypothesis ✓ conclusion ✓".to_string(),
        (true, _) => format!(
            "hypothesis ✓ conclusion ✗ (missed {})",
            v.counterexample.map(|c| c.to_string()).unwrap_or_default()
        ),
    };
    format!(
        "p={} w={} t={} c={} m={} |X|={} cells {}/{}  {outcome}",
        p.p,
        p.w,
        p.t,
        p.c,
        p.m,
        set.len(),
        v.cells_hit,
        v.cell_bound
    )
}

fn check_lemma(args: LemmaArgs) -> Result<(), Failure> {
    let fixed = explicit_params(&args)?;
    if let Some(params) = &fixed {
        params.validate().map_err(with_flag)?;
    }

    let mut verdicts = Vec::new();
    if let Some(count) = args.random {
        if args.max_element == 0 {
            return Err(anyhow!("invalid `--max-element`: must be at least 1").into());
        }
        let sampler = LemmaSampler {
            max_element: args.max_element,
            ..LemmaSampler::default()
        };
        let mut rng = seeded_rng(args.seed);
        let (mut met, mut skipped) = (0, 0);
        for _ in 0..count {
            let (params, set) = match fixed {
                Some(params) => (params, sampler.sample_set(&mut rng)),
                None => {
                    let inst = sampler.sample(&mut rng);
                    (inst.params, inst.set)
                }
            };
            let v = verify_ratio_lemma(&set, &params).map_err(with_flag)?;
            if args.verbose || v.is_violation() {
                println!("{}", verdict_row(&set, &v));
            }
            if v.hypothesis {
                met += 1;
            } else {
                skipped += 1;
            }
            verdicts.push(v);
        }
        println!(
            "{count} instances (seed {}): {met} met the hypothesis, {skipped} skipped",
            args.seed
        );
    } else {
        let params = fixed.ok_or_else(|| anyhow!("explicit sets need --p --w --t --c --m"))?;
        let elements: Vec<u64> = match (&args.set, args.range) {
            (Some(set), _) => set.clone(),
            (None, Some((lo, hi))) => {
                if lo < 1 || hi < lo {
                    return Err(
                        anyhow!("invalid `--range`: need 1 <= a <= b, got {lo}..{hi}").into(),
                    );
                }
                (lo as u64..=hi as u64).collect()
            }
            (None, None) => return Err(anyhow!("give one of --set, --range or --random").into()),
        };
        let bound = elements.iter().copied().max().unwrap_or(1);
        let set = WindowSet::from_elements(bound, elements)
            .map_err(|e| anyhow!("invalid `--set`: {e}"))?;
        let v = verify_ratio_lemma(&set, &params).map_err(with_flag)?;
        println!("{}", verdict_row(&set, &v));
        verdicts.push(v);
    }

    if let Some(out) = &args.out {
        let json = serde_json::to_string_pretty(&verdicts).context("serializing verdicts")?;
        write_file(out, &json)?;
        println!("wrote {}", out.display());
    }

    let violations = verdicts.iter().filter(|v| v.is_violation()).count();
    println!("violations: {violations}");
    if violations > 0 {
        return Err(Failure::Bound(format!("{violations} lemma violations")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads()
        .map_err(Failure::from)
        .and_then(|()| match cli.command {
            Command::Construct(args) => construct(args),
            Command::Scan(args) => run_scan(args),
            Command::CheckLemma(args) => check_lemma(args),
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Bound(msg)) => {
            eprintln!("bound failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
