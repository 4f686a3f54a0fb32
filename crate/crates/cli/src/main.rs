use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gfgm::association::{
    check_concordance, default_grid, measures, measures_by_quadrature, AssociationReport,
    Direction, OrderVerdict,
};
use gfgm::exchangeable::{extremal_count_pmfs, mean_split, MeanSplit};
use gfgm::io::CopulaSpec;
use gfgm::sampling::{
    empirical_measures, sample, sample_range, write_csv_header, write_csv_rows, GENERATOR_ID,
};
use gfgm::tables::{format_half_even, table, TableKind};
use gfgm::GfgmCopula;

/// Generalized FGM copulas: evaluation, association measures, sampling.
#[derive(Parser)]
#[command(name = "gfgm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the cdf, density or survival function at points.
    Eval(EvalArgs),
    /// Density of a bivariate copula on a regular grid.
    PdfGrid(PdfGridArgs),
    /// Association measures of a copula.
    Measures(MeasuresArgs),
    /// Extremal association tables over p and d.
    Tables(TablesArgs),
    /// Draw replicates with the stochastic representation.
    Sample(SampleArgs),
    /// Extremal points of the exchangeable class with given p and d.
    Extremals(ExtremalsArgs),
    /// Compare two copulas in the lower and upper orthant orders.
    OrderCheck(OrderCheckArgs),
}

/// Copula construction: a spec file, an inline spec, or individual keys.
#[derive(Args, Clone, Default)]
struct CopulaArgs {
    /// Copula specification file (`key=value` lines).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Inline specification, `;`-separated, e.g. "d=2;p=0.5,0.5;theta=1".
    #[arg(long)]
    inline: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    /// Shape vector, comma separated (one value is broadcast to d).
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Bivariate dependence parameter.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Bernoulli pmf file.
    #[arg(long)]
    pmf_file: Option<PathBuf>,
    /// counts:q0,...,qd | end:p | comonotone:p | beta:alpha,beta
    #[arg(long)]
    exchangeable: Option<String>,
    /// independence | comonotone | countermonotone
    #[arg(long)]
    structure: Option<String>,
}

impl CopulaArgs {
    fn spec(&self) -> anyhow::Result<CopulaSpec> {
        let mut pairs = Vec::new();
        if let Some(d) = self.d {
            pairs.push(format!("d={d}"));
        }
        if let Some(p) = &self.p {
            pairs.push(format!("p={p}"));
        }
        if let Some(t) = self.theta {
            pairs.push(format!("theta={t}"));
        }
        if let Some(f) = &self.pmf_file {
            pairs.push(format!("pmf_file={}", f.display()));
        }
        if let Some(e) = &self.exchangeable {
            pairs.push(format!("exchangeable={e}"));
        }
        if let Some(s) = &self.structure {
            pairs.push(format!("structure={s}"));
        }
        let sources = usize::from(self.spec.is_some()) + usize::from(self.inline.is_some());
        match (&self.spec, &self.inline) {
            _ if sources > 1 || (sources == 1 && !pairs.is_empty()) => {
                Err(gfgm::Error::InvalidArgument(
                    "give the copula through exactly one of --spec, --inline or individual flags"
                        .into(),
                )
                .into())
            }
            (Some(path), None) => Ok(CopulaSpec::from_file(path)?),
            (None, Some(text)) => Ok(CopulaSpec::parse(text, None)?),
            _ => Ok(CopulaSpec::parse(&pairs.join(";"), None)?),
        }
    }

    fn build(&self) -> anyhow::Result<GfgmCopula> {
        Ok(self.spec()?.build()?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn open(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Cdf,
    Pdf,
    Survival,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    copula: CopulaArgs,
    /// Point, comma separated; repeat for several points.
    #[arg(long = "u", required = true)]
    points: Vec<String>,
    #[arg(long, value_enum, default_value = "cdf")]
    function: Function,
    /// Use the natural (polynomial) representation for the cdf.
    #[arg(long)]
    natural: bool,
    /// Decimal places; trailing zeros are dropped.
    #[arg(long, default_value_t = 12)]
    precision: usize,
}

#[derive(Args)]
struct PdfGridArgs {
    #[command(flatten)]
    copula: CopulaArgs,
    /// Points per axis; cells are evaluated at their midpoints.
    #[arg(long, default_value_t = 50)]
    resolution: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureMethod {
    ClosedForm,
    Quadrature,
    MonteCarlo,
    All,
}

#[derive(Args)]
struct MeasuresArgs {
    #[command(flatten)]
    copula: CopulaArgs,
    #[arg(long, value_enum, default_value = "closed-form")]
    method: MeasureMethod,
    /// Replicates for the Monte Carlo estimates.
    #[arg(long, default_value_t = 200_000)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Fail with exit code 3 if the closed form and the quadrature oracle
    /// (d = 2) differ by more than this.
    #[arg(long)]
    verify: Option<f64>,
    /// Decimal places (4 uses half-even display rounding).
    #[arg(long, default_value_t = 4)]
    precision: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TablesArgs {
    /// rhoL-max, rhoU-max, rhoC-max, tau-max, rhoL-min, rhoU-min or all.
    #[arg(long, default_value = "all")]
    which: String,
    /// Print this many decimals instead of the 4-decimal display rounding.
    #[arg(long)]
    precision: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    copula: CopulaArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExtremalsArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    d: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OrderCheckArgs {
    #[command(flatten)]
    first: CopulaArgs,
    /// Second copula: specification file.
    #[arg(long)]
    other_spec: Option<PathBuf>,
    /// Second copula: inline specification.
    #[arg(long)]
    other_inline: Option<String>,
    /// Grid points per axis (default 21 for d <= 4, 9 for d <= 6).
    #[arg(long)]
    grid: Option<usize>,
}

/// Closed form and numeric oracle disagree.
#[derive(Debug)]
struct OracleMismatch(String);

impl std::fmt::Display for OracleMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "oracle disagreement: {}", self.0)
    }
}

impl std::error::Error for OracleMismatch {}

fn trim_number(v: f64, precision: usize) -> String {
    let s = format!("{v:.precision$}");
    if !s.contains('.') {
        return s;
    }
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn parse_point(text: &str) -> anyhow::Result<Vec<f64>> {
    text.split(',')
        .map(|v| {
            v.trim().parse::<f64>().map_err(|_| {
                gfgm::Error::InvalidArgument(format!("invalid coordinate `{v}`")).into()
            })
        })
        .collect()
}

fn shape_label(c: &GfgmCopula) -> String {
    c.shape()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn eval(args: EvalArgs) -> anyhow::Result<()> {
    let c = args.copula.build()?;
    let mut out = io::stdout().lock();
    for text in &args.points {
        let u = parse_point(text)?;
        let v = match (args.function, args.natural) {
            (Function::Cdf, false) => c.cdf(&u)?,
            (Function::Cdf, true) => c.cdf_natural(&u)?,
            (Function::Pdf, _) => c.pdf(&u)?,
            (Function::Survival, _) => c.survival(&u)?,
        };
        writeln!(out, "{}", trim_number(v, args.precision))?;
    }
    Ok(())
}

fn pdf_grid(args: PdfGridArgs) -> anyhow::Result<()> {
    let c = args.copula.build()?;
    if c.dim() != 2 {
        return Err(gfgm::Error::Dimension {
            d: c.dim(),
            expected: "d = 2 for pdf-grid",
        }
        .into());
    }
    if args.resolution == 0 {
        bail!(gfgm::Error::TooSmall {
            what: "resolution",
            got: 0,
            min: 1
        });
    }
    let mut out = args.output.open()?;
    let r = args.resolution;
    writeln!(out, "# p={} resolution={r}", shape_label(&c))?;
    writeln!(out, "u,v,density")?;
    for i in 0..r {
        let u = (i as f64 + 0.5) / r as f64;
        for j in 0..r {
            let v = (j as f64 + 0.5) / r as f64;
            writeln!(out, "{u},{v},{:.12e}", c.pdf(&[u, v])?)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn report_rows(
    out: &mut dyn Write,
    r: &AssociationReport,
    p: &str,
    precision: usize,
) -> io::Result<()> {
    for (name, v) in r.entries() {
        let value = if precision == 4 {
            format_half_even(v, 4)
        } else {
            format!("{v:.precision$}")
        };
        writeln!(out, "{name},{},{},{p},{value}", r.method, r.d)?;
    }
    Ok(())
}

fn measures_cmd(args: MeasuresArgs) -> anyhow::Result<()> {
    let c = args.copula.build()?;
    let bivariate = c.dim() == 2;
    if args.verify.is_some() && !bivariate {
        return Err(gfgm::Error::InvalidArgument(
            "--verify needs the quadrature oracle, which requires d = 2".into(),
        )
        .into());
    }
    let label = shape_label(&c);
    let mut out = args.output.open()?;
    writeln!(out, "# d={} p={label}", c.dim())?;
    writeln!(out, "measure,method,d,p,value")?;
    let closed = measures(&c)?;
    let want = |m: MeasureMethod| args.method == m || args.method == MeasureMethod::All;
    // `all` skips quadrature outside the bivariate case
    let run_quad = args.method == MeasureMethod::Quadrature
        || (bivariate && (args.method == MeasureMethod::All || args.verify.is_some()));
    if want(MeasureMethod::ClosedForm) {
        report_rows(&mut out, &closed, &label, args.precision)?;
    }
    let quad = if run_quad {
        Some(measures_by_quadrature(&c)?)
    } else {
        None
    };
    if let (true, Some(q)) = (want(MeasureMethod::Quadrature), quad.as_ref()) {
        report_rows(&mut out, q, &label, args.precision)?;
    }
    if want(MeasureMethod::MonteCarlo) {
        let batch = sample(&c, args.n, args.seed)?;
        let est = empirical_measures(&batch)?;
        writeln!(
            out,
            "# seed={} generator={} n={}",
            args.seed, GENERATOR_ID, args.n
        )?;
        report_rows(&mut out, &est.report, &label, args.precision)?;
        let se = est.standard_errors;
        writeln!(
            out,
            "# standard errors: rho_cL={:.2e} rho_cU={:.2e} rho_c={:.2e} tau={:.2e}",
            se.rho_cl, se.rho_cu, se.rho_c, se.tau
        )?;
    }
    out.flush()?;
    if let (Some(tol), Some(q)) = (args.verify, quad) {
        for ((name, a), (_, b)) in closed.entries().into_iter().zip(q.entries()) {
            if (a - b).abs() > tol {
                return Err(
                    OracleMismatch(format!("{name}: closed form {a} vs quadrature {b}")).into(),
                );
            }
        }
    }
    Ok(())
}

fn tables_cmd(args: TablesArgs) -> anyhow::Result<()> {
    let kinds: Vec<TableKind> = if args.which == "all" {
        TableKind::ALL.to_vec()
    } else {
        vec![args.which.parse()?]
    };
    let mut out = args.output.open()?;
    for (i, kind) in kinds.into_iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        write!(out, "{}", table(kind)?.to_csv(args.precision))?;
    }
    out.flush()?;
    Ok(())
}

const SAMPLE_BLOCK: usize = 1 << 16;

fn sample_cmd(args: SampleArgs) -> anyhow::Result<()> {
    let c = args.copula.build()?;
    if args.n == 0 {
        bail!(gfgm::Error::TooSmall {
            what: "sample size",
            got: 0,
            min: 1
        });
    }
    let mut out = args.output.open()?;
    write_csv_header(&mut out, args.seed, GENERATOR_ID, c.dim())?;
    let mut start = 0;
    while start < args.n {
        let end = (start + SAMPLE_BLOCK).min(args.n);
        write_csv_rows(&mut out, &sample_range(&c, args.seed, start..end), c.dim())?;
        start = end;
    }
    out.flush()?;
    Ok(())
}

fn extremals_cmd(args: ExtremalsArgs) -> anyhow::Result<()> {
    let points = extremal_count_pmfs(args.p, args.d)?;
    let mut out = args.output.open()?;
    let split = match mean_split(args.p, args.d) {
        MeanSplit::Integer(k) => format!("integer {k}"),
        MeanSplit::Between(j) => format!("between {j} and {}", j + 1),
    };
    writeln!(
        out,
        "# p={} d={} pd {split} points={}",
        args.p,
        args.d,
        points.len()
    )?;
    let header: Vec<String> = (0..=args.d).map(|k| format!("q{k}")).collect();
    writeln!(out, "point,{}", header.join(","))?;
    for (i, e) in points.iter().enumerate() {
        let cells: Vec<String> = e.counts().iter().map(|v| trim_number(*v, 15)).collect();
        writeln!(out, "{},{}", i + 1, cells.join(","))?;
    }
    out.flush()?;
    Ok(())
}

fn order_check(args: OrderCheckArgs) -> anyhow::Result<()> {
    let first = args.first.build()?;
    let other = CopulaArgs {
        spec: args.other_spec,
        inline: args.other_inline,
        ..CopulaArgs::default()
    };
    if other.spec.is_none() && other.inline.is_none() {
        bail!(gfgm::Error::InvalidArgument(
            "second copula needs --other-spec or --other-inline".into()
        ));
    }
    let second = other.build()?;
    let d = first.dim();
    let grid = match args.grid.or_else(|| default_grid(d)) {
        Some(g) => g,
        None => bail!(gfgm::Error::Dimension {
            d,
            expected: "d <= 6 for the grid order check"
        }),
    };
    let check = check_concordance(&first, &second, grid)?;
    let describe = |dir: Option<Direction>| match dir {
        Some(Direction::FirstBelow) => "first_below",
        Some(Direction::SecondBelow) => "second_below",
        Some(Direction::Equal) => "equal",
        None => "none",
    };
    let mut out = io::stdout().lock();
    writeln!(out, "# grid_points_per_axis={}", check.grid_points_per_axis)?;
    writeln!(out, "relation,result")?;
    writeln!(out, "lower_orthant,{}", describe(check.lower))?;
    writeln!(out, "upper_orthant,{}", describe(check.upper))?;
    let verdict = match check.verdict() {
        OrderVerdict::Concordance(Direction::Equal) => "equal",
        OrderVerdict::Concordance(Direction::FirstBelow) => "first_below",
        OrderVerdict::Concordance(Direction::SecondBelow) => "second_below",
        OrderVerdict::LowerOnly(_) => "lower_orthant_only",
        OrderVerdict::UpperOnly(_) => "upper_orthant_only",
        OrderVerdict::Incomparable => "incomparable",
    };
    writeln!(out, "verdict,{verdict}")?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Eval(a) => eval(a),
        Command::PdfGrid(a) => pdf_grid(a),
        Command::Measures(a) => measures_cmd(a),
        Command::Tables(a) => tables_cmd(a),
        Command::Sample(a) => sample_cmd(a),
        Command::Extremals(a) => extremals_cmd(a),
        Command::OrderCheck(a) => order_check(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<OracleMismatch>().is_some() {
                ExitCode::from(3)
            } else if e.downcast_ref::<gfgm::Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
