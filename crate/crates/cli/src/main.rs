use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use symdiv::{format_value, linspace, read_code, read_distribution, write_csv};
use symdiv_core::coding::{analyze, l1_bounds_for_redundancy, shannon_code, CodeReport};
use symdiv_core::dist::{check_support, total_variation};
use symdiv_core::fdiv;
use symdiv_core::oracle::{default_grid_steps, sweep_pairs, Measure, OracleReport};
use symdiv_core::{bounds, Distribution};

#[derive(Parser)]
#[command(
    name = "symdiv",
    version,
    about = "Symmetric divergences, their tight bounds in total variation, and source-code audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Divergence measures between two distribution files.
    Divergence(DivergenceArgs),
    /// Emit closed-form bound curves over a total-variation grid as CSV.
    Curves(CurvesArgs),
    /// Audit a uniquely decodable code, or tabulate L1 bounds against redundancy.
    Coding(CodingArgs),
    /// Check a closed-form bound against a brute-force grid search.
    /// Exits 0 when the bound holds and is attained within grid tolerance, 1 otherwise.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DivergenceArgs {
    p: PathBuf,
    q: PathBuf,
    /// Comma-separated: kl, kl_dual, jeffreys, hellinger_sq, capacitory,
    /// bhattacharyya_coeff, bhattacharyya_dist, chernoff, renyi@<lambda>, tv.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "tv,kl,kl_dual,jeffreys,hellinger_sq,capacitory,bhattacharyya_coeff,bhattacharyya_dist,chernoff"
    )]
    measures: Vec<DivMeasure>,
    /// Report log-based measures in bits instead of nats.
    #[arg(long)]
    bits: bool,
    /// Zero-pad the shorter distribution instead of rejecting unequal lengths.
    #[arg(long)]
    pad: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Curve {
    /// `epsilon,C,L`: minimum Chernoff information and minimum relative entropy.
    Figure1,
    /// Every closed-form bound at each epsilon.
    Bounds,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(value_enum)]
    which: Curve,
    #[arg(long, default_value_t = 0.0)]
    eps_min: f64,
    #[arg(long, default_value_t = 0.99)]
    eps_max: f64,
    /// Number of rows, endpoints included.
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    bits: bool,
    /// figure1 only: append an `L_over_C` column (4 at epsilon = 0, its limit).
    #[arg(long)]
    ratio: bool,
}

#[derive(Args)]
struct CodingArgs {
    /// Code file: `d=<int>` then `<length>` or `<length> <probability>` per line.
    #[arg(conflicts_with_all = ["shannon", "grid"], required_unless_present_any = ["shannon", "grid"])]
    code: Option<PathBuf>,
    /// Source distribution for a code file that lists lengths only.
    #[arg(long, requires = "code")]
    source: Option<PathBuf>,
    /// Build the Shannon code for this distribution file.
    #[arg(long, conflicts_with = "grid")]
    shannon: Option<PathBuf>,
    /// Tabulate `delta,csiszar,kl_tight,jeffreys_tight` over a redundancy grid.
    #[arg(long)]
    grid: bool,
    /// Code alphabet size.
    #[arg(long, default_value_t = 10)]
    d: u32,
    /// Grid rows, endpoints included.
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Largest redundancy on the grid, in d-ary units.
    #[arg(long, default_value_t = 0.1)]
    delta_max: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report divergences in bits instead of nats.
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// chernoff, capacitory, jeffreys, hellinger_sq, kl, bhattacharyya_min or bhattacharyya_max.
    measure: String,
    epsilon: f64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
    support: u8,
    /// Grid resolution; 200 for support 2 and 40 for support 3 by default.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum DivMeasure {
    Kl,
    KlDual,
    Jeffreys,
    HellingerSq,
    Capacitory,
    BhattacharyyaCoeff,
    BhattacharyyaDist,
    Chernoff,
    Renyi(f64),
    Tv,
}

impl DivMeasure {
    fn label(self) -> String {
        match self {
            DivMeasure::Kl => "kl".into(),
            DivMeasure::KlDual => "kl_dual".into(),
            DivMeasure::Jeffreys => "jeffreys".into(),
            DivMeasure::HellingerSq => "hellinger_sq".into(),
            DivMeasure::Capacitory => "capacitory".into(),
            DivMeasure::BhattacharyyaCoeff => "bhattacharyya_coeff".into(),
            DivMeasure::BhattacharyyaDist => "bhattacharyya_dist".into(),
            DivMeasure::Chernoff => "chernoff".into(),
            DivMeasure::Renyi(lambda) => format!("renyi@{lambda}"),
            DivMeasure::Tv => "tv".into(),
        }
    }

    /// Whether the value is a logarithm and so changes with `--bits`.
    fn in_nats(self) -> bool {
        !matches!(
            self,
            DivMeasure::Tv | DivMeasure::BhattacharyyaCoeff | DivMeasure::HellingerSq
        )
    }

    fn evaluate(self, p: &Distribution, q: &Distribution) -> anyhow::Result<f64> {
        Ok(match self {
            DivMeasure::Kl => fdiv::kl(p, q),
            DivMeasure::KlDual => fdiv::kl(q, p),
            DivMeasure::Jeffreys => fdiv::jeffreys(p, q),
            DivMeasure::HellingerSq => fdiv::hellinger_sq(p, q),
            DivMeasure::Capacitory => fdiv::capacitory(p, q),
            DivMeasure::BhattacharyyaCoeff => fdiv::bhattacharyya_coefficient(p, q),
            DivMeasure::BhattacharyyaDist => fdiv::bhattacharyya_distance(p, q),
            DivMeasure::Chernoff => fdiv::chernoff_information(p, q).value,
            DivMeasure::Renyi(lambda) => fdiv::renyi_divergence(p, q, lambda)?,
            DivMeasure::Tv => total_variation(p, q),
        })
    }
}

impl FromStr for DivMeasure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(lambda) = s.strip_prefix("renyi@") {
            let lambda: f64 = lambda
                .parse()
                .map_err(|_| format!("`{lambda}` is not a number"))?;
            if !(lambda > 0.0 && lambda < 1.0) {
                return Err(format!("renyi order must lie in (0, 1), got {lambda}"));
            }
            return Ok(DivMeasure::Renyi(lambda));
        }
        Ok(match s {
            "kl" => DivMeasure::Kl,
            "kl_dual" => DivMeasure::KlDual,
            "jeffreys" => DivMeasure::Jeffreys,
            "hellinger_sq" => DivMeasure::HellingerSq,
            "capacitory" => DivMeasure::Capacitory,
            "bhattacharyya_coeff" => DivMeasure::BhattacharyyaCoeff,
            "bhattacharyya_dist" => DivMeasure::BhattacharyyaDist,
            "chernoff" => DivMeasure::Chernoff,
            "tv" => DivMeasure::Tv,
            other => return Err(format!("unknown measure `{other}`")),
        })
    }
}

fn field(out: &mut impl Write, label: &str, value: impl Display) -> io::Result<()> {
    writeln!(out, "{label:<20} {value}")
}

fn unit_scale(bits: bool) -> f64 {
    if bits {
        std::f64::consts::LN_2
    } else {
        1.0
    }
}

fn load(path: &Path) -> anyhow::Result<Distribution> {
    read_distribution(path).with_context(|| format!("reading {}", path.display()))
}

fn open_output(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn divergence(args: &DivergenceArgs) -> anyhow::Result<()> {
    let p = load(&args.p)?;
    let q = load(&args.q)?;
    if !args.pad {
        check_support(&p, &q).context("pass --pad to zero-pad the shorter distribution")?;
    }
    let scale = unit_scale(args.bits);
    let mut out = io::stdout().lock();
    for &measure in &args.measures {
        let mut value = measure.evaluate(&p, &q)?;
        if measure.in_nats() {
            value /= scale;
        }
        field(&mut out, &measure.label(), format_value(value))?;
    }
    Ok(())
}

fn curves(args: &CurvesArgs) -> anyhow::Result<()> {
    if !(0.0 <= args.eps_min && args.eps_min < args.eps_max && args.eps_max < 1.0) {
        bail!(
            "need 0 <= eps-min < eps-max < 1, got [{}, {}]",
            args.eps_min,
            args.eps_max
        );
    }
    if args.steps < 2 {
        bail!("--steps must be at least 2");
    }
    if args.ratio && !matches!(args.which, Curve::Figure1) {
        bail!("--ratio applies to figure1 only");
    }
    let scale = unit_scale(args.bits);
    let grid = linspace(args.eps_min, args.eps_max, args.steps);
    let (header, rows): (Vec<&str>, Vec<Vec<f64>>) = match args.which {
        Curve::Figure1 => {
            let mut header = vec!["epsilon", "C", "L"];
            if args.ratio {
                header.push("L_over_C");
            }
            let rows = grid
                .iter()
                .map(|&eps| {
                    let c = bounds::chernoff_min(eps)?;
                    let l = bounds::l_curve(eps)?.value;
                    let mut row = vec![eps, c / scale, l / scale];
                    if args.ratio {
                        row.push(if eps == 0.0 { 4.0 } else { l / c });
                    }
                    Ok(row)
                })
                .collect::<anyhow::Result<_>>()?;
            (header, rows)
        }
        Curve::Bounds => {
            let measures = [
                Measure::BhattacharyyaMin,
                Measure::BhattacharyyaMax,
                Measure::HellingerSq,
                Measure::Chernoff,
                Measure::Capacitory,
                Measure::Jeffreys,
                Measure::Kl,
            ];
            let mut header = vec!["epsilon"];
            header.extend(measures.iter().map(|m| m.label()));
            let rows = grid
                .iter()
                .map(|&eps| {
                    let mut row = vec![eps];
                    for m in measures {
                        let value = m.closed_form(eps)?;
                        let logarithmic = !matches!(
                            m,
                            Measure::BhattacharyyaMin
                                | Measure::BhattacharyyaMax
                                | Measure::HellingerSq
                        );
                        row.push(if logarithmic { value / scale } else { value });
                    }
                    Ok(row)
                })
                .collect::<anyhow::Result<_>>()?;
            (header, rows)
        }
    };
    write_csv(open_output(args.out.as_deref())?, &header, &rows)?;
    Ok(())
}

fn print_report(report: &CodeReport, d: u32, lengths: &[u32], bits: bool) -> io::Result<()> {
    let scale = unit_scale(bits);
    let unit = if bits { "bits" } else { "nats" };
    let list = |values: &mut dyn Iterator<Item = String>| values.collect::<Vec<_>>().join(",");
    let optional = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), format_value);
    let mut out = io::stdout().lock();
    field(&mut out, "d", d)?;
    field(
        &mut out,
        "lengths",
        list(&mut lengths.iter().map(u32::to_string)),
    )?;
    field(&mut out, "kraft_sum", format_value(report.kraft_sum))?;
    field(
        &mut out,
        "q_induced",
        list(&mut report.q_induced.probs().iter().map(|&v| format_value(v))),
    )?;
    field(
        &mut out,
        "average_length",
        format_value(report.average_length_dary),
    )?;
    field(&mut out, "redundancy", format_value(report.redundancy_dary))?;
    field(
        &mut out,
        &format!("kl_pq_{unit}"),
        format_value(report.kl_pq_nats / scale),
    )?;
    field(
        &mut out,
        &format!("kl_qp_{unit}"),
        format_value(report.kl_qp_nats / scale),
    )?;
    field(
        &mut out,
        &format!("jeffreys_{unit}"),
        format_value(report.jeffreys_nats / scale),
    )?;
    field(&mut out, "condition_holds", report.condition_holds)?;
    field(&mut out, "l1_actual", format_value(report.l1_actual))?;
    field(
        &mut out,
        "bound_csiszar",
        format_value(report.bound_csiszar),
    )?;
    field(&mut out, "bound_kl", format_value(report.bound_kl))?;
    field(&mut out, "bound_jeffreys", optional(report.bound_jeffreys))?;
    Ok(())
}

fn coding(args: &CodingArgs) -> anyhow::Result<()> {
    if args.grid {
        if !(args.delta_max > 0.0 && args.delta_max.is_finite()) {
            bail!("--delta-max must be positive, got {}", args.delta_max);
        }
        if args.steps < 2 {
            bail!("--steps must be at least 2");
        }
        let rows = linspace(0.0, args.delta_max, args.steps)
            .into_iter()
            .map(|delta| {
                let b = l1_bounds_for_redundancy(delta, args.d)?;
                let jeffreys = b.jeffreys_tight.expect("filled for every redundancy");
                Ok(vec![delta, b.csiszar, b.kl_tight, jeffreys])
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let header = ["delta", "csiszar", "kl_tight", "jeffreys_tight"];
        write_csv(open_output(args.out.as_deref())?, &header, &rows)?;
        return Ok(());
    }
    let code = match (&args.code, &args.shannon) {
        (Some(path), _) => {
            let spec = read_code(path).with_context(|| format!("reading {}", path.display()))?;
            let source = args.source.as_deref().map(load).transpose()?;
            spec.into_code(source)?
        }
        (None, Some(path)) => shannon_code(&load(path)?, args.d)?,
        (None, None) => unreachable!("clap requires a code file, --shannon or --grid"),
    };
    let report = analyze(&code)?;
    print_report(&report, code.d(), code.lengths(), args.bits)?;
    Ok(())
}

fn verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let measure: Measure = args.measure.parse()?;
    let support = usize::from(args.support);
    let steps = args.steps.unwrap_or_else(|| default_grid_steps(support));
    let report = sweep_pairs(support, args.epsilon, steps, measure)?;
    print_oracle_report(&report)?;
    if measure == Measure::BhattacharyyaMin && support == 2 && !report.is_tight() {
        field(
            &mut io::stdout().lock(),
            "note",
            "the lower bound 1 - eps needs 3-element pairs; try --support 3",
        )?;
    }
    Ok(report.passed())
}

fn print_oracle_report(report: &OracleReport) -> io::Result<()> {
    let list = |d: &Distribution| {
        d.probs()
            .iter()
            .map(|&v| format_value(v))
            .collect::<Vec<_>>()
            .join(",")
    };
    let extremum = if report.measure.is_upper_bound() {
        "oracle_max"
    } else {
        "oracle_min"
    };
    let verdict = |ok: bool| if ok { "yes" } else { "no" };
    let mut out = io::stdout().lock();
    field(&mut out, "measure", report.measure)?;
    field(&mut out, "epsilon", format_value(report.epsilon))?;
    field(&mut out, "support", report.support)?;
    field(&mut out, "grid_steps", report.grid_steps)?;
    field(&mut out, "closed_form", format_value(report.closed_form))?;
    field(&mut out, extremum, format_value(report.oracle_extremum))?;
    field(&mut out, "witness_p", list(&report.witness_p))?;
    field(&mut out, "witness_q", list(&report.witness_q))?;
    field(&mut out, "gap", format_value(report.gap))?;
    field(&mut out, "tolerance", format_value(report.tolerance))?;
    field(&mut out, "pairs_examined", report.pairs_examined)?;
    field(&mut out, "violations", report.violations)?;
    field(&mut out, "valid", verdict(report.is_valid()))?;
    field(&mut out, "tight", verdict(report.is_tight()))?;
    field(
        &mut out,
        "result",
        if report.passed() { "PASS" } else { "FAIL" },
    )?;
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Divergence(args) => divergence(args)?,
        Command::Curves(args) => curves(args)?,
        Command::Coding(args) => coding(args)?,
        Command::Verify(args) => {
            if !verify(args)? {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
