//! Command-line front end: polynomial generation, moment tables, root
//! certificates, limit diagnostics, tableaux enumeration, and the
//! enumeration-vs-polynomial cross-check.
//!
//! Output goes to stdout in json, csv, or plain text; errors go to
//! stderr. Exit codes: 0 success, 2 usage error, 1 computation error.
//! Identical invocations produce byte-identical output regardless of
//! thread count.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyrec::{
    builtin, certify, clt_report, diagnose_poisson_family, enumerate_symmetric,
    enumerate_tableaux, isolate, local_limit_report, moment_report, parse_rational,
    scaled_moment_limit, statistic_distribution, Caps, Family, MomentReport, Rational,
    RecurrenceSpec, RootCertificate, Statistic, Tableau,
};

#[derive(Parser)]
#[command(
    name = "polyrec",
    version,
    about = "Exact polynomial recurrences with probabilistic diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Render CSV numeric columns as decimal floats (lossy) instead of
    /// exact rationals.
    #[arg(long, global = true)]
    floats: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a polynomial sequence and print its last element.
    Gen(GenArgs),
    /// Exact (or float) moment tables for a family.
    Moments(MomentsArgs),
    /// Certify real-rootedness and isolate roots into rational enclosures.
    Roots(RootsArgs),
    /// Distributional-limit diagnostics.
    Diagnose {
        #[command(subcommand)]
        kind: Diagnose,
    },
    /// Brute-force tree-like tableaux enumeration.
    Tableaux {
        #[command(subcommand)]
        kind: TableauxCmd,
    },
    /// Compare an enumeration histogram against its generating polynomial.
    Crosscheck(CrosscheckArgs),
}

/// Selects a recurrence: a named builtin (with its parameters) or a JSON
/// spec file.
#[derive(Args)]
struct FamilyArgs {
    /// Built-in family: abn, lz, lz-symmetric, hj, eulerian, dhh, ah, w, be1.
    #[arg(long)]
    family: Option<String>,
    /// JSON recurrence spec file (as produced by gen --emit-spec).
    #[arg(long, value_name = "PATH", conflicts_with = "family")]
    spec_file: Option<PathBuf>,
    /// First parameter of the hj family (rational, >= 0).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Second parameter of the hj family (rational, >= 0).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// First parameter of the w family (rational, >= 0).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Parameter of the w family (rational, > 0) or be1 family (integer, >= 1).
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Index of the polynomial to generate.
    #[arg(long)]
    n: u64,
    /// Print the recurrence spec as JSON instead of generating.
    #[arg(long)]
    emit_spec: bool,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Largest sequence index to tabulate.
    #[arg(long)]
    nmax: u64,
    /// Highest factorial-moment order (2..=12).
    #[arg(long, default_value_t = 4)]
    rmax: usize,
    /// Compute through the derivative-vector recurrence instead of
    /// expanding full polynomials.
    #[arg(long)]
    vector_recurrence: bool,
    /// Propagate the vector recurrence in double precision (requires
    /// --vector-recurrence); reaches large nmax cheaply.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct RootsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Index of the polynomial whose roots are isolated.
    #[arg(long)]
    n: u64,
    /// Maximum enclosure width, as an exact rational.
    #[arg(long, default_value = "1/1024", allow_hyphen_values = true)]
    eps: String,
    /// Also verify that every root lies in [LO,HI] (exact Sturm check).
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    certify_interval: Option<String>,
}

#[derive(Subcommand)]
enum Diagnose {
    /// Poisson-limit criterion tables for a derivative-form family.
    Poisson {
        #[arg(long, default_value = "lz")]
        family: String,
        #[arg(long, default_value_t = 50)]
        nmax: u64,
        #[arg(long, default_value_t = 5)]
        rmax: usize,
    },
    /// Real-rootedness certificate, Lyapunov bracket, and standardized
    /// moments at one n.
    Clt {
        #[arg(long, default_value = "abn")]
        family: String,
        #[arg(long)]
        n: u64,
    },
    /// Sup distance between the exact pmf and its matching Gaussian
    /// density.
    LocalLimit {
        #[arg(long, default_value = "abn")]
        family: String,
        #[arg(long)]
        n: u64,
    },
    /// Scaled raw-moment ratios on a logarithmic n-grid (float mode).
    ScaledMoments {
        #[arg(long, default_value = "ah")]
        family: String,
        #[arg(long, default_value_t = 10000)]
        nmax: u64,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
}

#[derive(Subcommand)]
enum TableauxCmd {
    /// List every tableau of the given size.
    Enumerate {
        /// Tableau size; with --symmetric, the half-size m (tableaux then
        /// have size 2m+1).
        #[arg(long)]
        size: usize,
        /// Enumerate symmetric tableaux instead of plain ones.
        #[arg(long)]
        symmetric: bool,
    },
    /// Exact histogram of a statistic over the enumerated tableaux.
    Distribution {
        /// occupied-corners, corners, or diagonal-cells.
        #[arg(long)]
        stat: String,
        /// Tableau size (half-size m for diagonal-cells).
        #[arg(long)]
        size: usize,
    },
}

#[derive(Args)]
struct CrosscheckArgs {
    /// occupied-corners (vs the corner family) or diagonal-cells (vs the
    /// diagonal family).
    #[arg(long)]
    stat: String,
    /// Tableau size (half-size m for diagonal-cells).
    #[arg(long)]
    n: usize,
}

enum AppError {
    Usage(String),
    Computation(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, AppError> {
    Err(AppError::Usage(msg.into()))
}

fn comp(e: impl std::fmt::Display) -> AppError {
    AppError::Computation(e.to_string())
}

/// Die silently on a closed pipe (`polyrec ... | head`) instead of
/// panicking mid-print.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(AppError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(AppError::Computation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    let format = cli.format;
    let floats = cli.floats;
    match cli.command {
        Command::Gen(args) => gen(args, format),
        Command::Moments(args) => moments(args, format, floats),
        Command::Roots(args) => roots(args, format),
        Command::Diagnose { kind } => diagnose(kind, format),
        Command::Tableaux { kind } => tableaux(kind, format),
        Command::Crosscheck(args) => crosscheck(args),
    }
}

// -------------------------------------------------------------------
// family / spec resolution

fn parse_family(name: &str, args: &FamilyArgs) -> Result<Family, AppError> {
    let rational = |value: &Option<String>, flag: &str| -> Result<Rational, AppError> {
        match value {
            Some(s) => parse_rational(s).map_err(|e| AppError::Usage(e.to_string())),
            None => usage(format!("family '{name}' requires {flag}")),
        }
    };
    match name.to_ascii_lowercase().replace('_', "-").as_str() {
        "abn" => Ok(Family::Abn),
        "lz" => Ok(Family::Lz),
        "lz-symmetric" => Ok(Family::LzSymmetric),
        "eulerian" => Ok(Family::Eulerian),
        "dhh" => Ok(Family::Dhh),
        "ah" => Ok(Family::Ah),
        "hj" => Ok(Family::Hj {
            a: rational(&args.a, "--a")?,
            b: rational(&args.b, "--b")?,
        }),
        "w" => Ok(Family::W {
            c: rational(&args.c, "--c")?,
            m: rational(&args.m, "--m")?,
        }),
        "be1" => match &args.m {
            Some(s) => Ok(Family::Be1 {
                m: s.parse()
                    .map_err(|_| AppError::Usage(format!("--m must be a positive integer, got '{s}'")))?,
            }),
            None => usage("family 'be1' requires --m"),
        },
        other => usage(format!("unknown family '{other}'")),
    }
}

impl FamilyArgs {
    fn resolve(&self) -> Result<RecurrenceSpec, AppError> {
        match (&self.family, &self.spec_file) {
            (Some(name), None) => builtin(&parse_family(name, self)?).map_err(comp),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| AppError::Usage(format!("cannot read {}: {e}", path.display())))?;
                RecurrenceSpec::from_json(&text)
                    .map_err(|e| AppError::Usage(format!("invalid spec file: {e}")))
            }
            _ => usage("exactly one of --family or --spec-file is required"),
        }
    }
}

fn named_family(name: &str) -> Result<Family, AppError> {
    let empty = FamilyArgs {
        family: None,
        spec_file: None,
        a: None,
        b: None,
        c: None,
        m: None,
    };
    parse_family(name, &empty)
}

fn caps_from_env() -> Result<Caps, AppError> {
    let mut caps = Caps::default();
    for (var, slot) in [
        ("POLYREC_CAP_PLAIN", &mut caps.plain),
        ("POLYREC_CAP_SYMMETRIC", &mut caps.symmetric),
    ] {
        if let Ok(value) = std::env::var(var) {
            *slot = value
                .parse()
                .map_err(|_| AppError::Usage(format!("invalid {var} '{value}'")))?;
        }
    }
    Ok(caps)
}

// -------------------------------------------------------------------
// subcommands

fn gen(args: GenArgs, format: Format) -> Result<ExitCode, AppError> {
    let spec = args.family.resolve()?;
    if args.emit_spec {
        println!("{}", spec.to_json());
        return Ok(ExitCode::SUCCESS);
    }
    let polys = spec.generate(args.n).map_err(comp)?;
    let p = &polys[args.n as usize];
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&p.to_coeff_strings()).expect("string array serializes")
        ),
        Format::Csv => {
            println!("k,coefficient");
            for (k, c) in p.coeffs().iter().enumerate() {
                println!("{k},{c}");
            }
        }
        Format::Text => println!("{p}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn moments(args: MomentsArgs, format: Format, floats: bool) -> Result<ExitCode, AppError> {
    if !(2..=12).contains(&args.rmax) {
        return usage(format!("--rmax must be between 2 and 12, got {}", args.rmax));
    }
    if args.float && !args.vector_recurrence {
        return usage("--float requires --vector-recurrence");
    }
    let spec = args.family.resolve()?;
    if args.float {
        let table =
            polyrec::derivative_vector_table_f64(&spec, args.nmax, args.rmax).map_err(comp)?;
        match format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&table).expect("float table serializes")
            ),
            Format::Csv => {
                println!("{}", MomentReport::CSV_HEADER);
                for row in &table {
                    println!("{}", row.to_csv_row());
                }
            }
            Format::Text => {
                for row in &table {
                    println!("n={} mean={} variance={}", row.n, row.mean, row.variance);
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let reports = if args.vector_recurrence {
        polyrec::derivative_vector_table(&spec, args.nmax, args.rmax).map_err(comp)?
    } else {
        let polys = spec.generate(args.nmax).map_err(comp)?;
        let mut reports = Vec::with_capacity(polys.len());
        for (n, p) in polys.iter().enumerate() {
            let mut report = moment_report(p, args.rmax).map_err(comp)?;
            report.n = n as u64;
            reports.push(report);
        }
        reports
    };
    print_reports(&reports, format, floats);
    Ok(ExitCode::SUCCESS)
}

fn print_reports(reports: &[MomentReport], format: Format, floats: bool) {
    match format {
        Format::Json => {
            let values: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| serde_json::from_str(&r.to_json()).expect("report JSON is valid"))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&values).expect("array serializes")
            );
        }
        Format::Csv => {
            println!("{}", MomentReport::CSV_HEADER);
            for r in reports {
                println!("{}", r.to_csv_row(floats));
            }
        }
        Format::Text => {
            for r in reports {
                println!(
                    "n={} mean={} variance={} moments=[{}]",
                    r.n,
                    r.mean,
                    r.variance,
                    join_rationals(&r.factorial_moments)
                );
            }
        }
    }
}

fn roots(args: RootsArgs, format: Format) -> Result<ExitCode, AppError> {
    let eps = parse_rational(&args.eps).map_err(|e| AppError::Usage(e.to_string()))?;
    let spec = args.family.resolve()?;
    let polys = spec.generate(args.n).map_err(comp)?;
    let p = &polys[args.n as usize];
    let mut cert = isolate(p, &eps).map_err(comp)?;
    if let Some(interval) = &args.certify_interval {
        let (lo, hi) = parse_interval(interval)?;
        let verdict = certify(p, Some((&lo, &hi))).map_err(comp)?;
        cert.within_expected = verdict.within_expected;
    }
    print_certificate(&cert, format);
    Ok(ExitCode::SUCCESS)
}

fn parse_interval(s: &str) -> Result<(Rational, Rational), AppError> {
    let bad = || AppError::Usage(format!("--certify-interval must be LO,HI, got '{s}'"));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    let lo = parse_rational(lo).map_err(|_| bad())?;
    let hi = parse_rational(hi).map_err(|_| bad())?;
    Ok((lo, hi))
}

fn print_certificate(cert: &RootCertificate, format: Format) {
    match format {
        Format::Json => println!("{}", cert.to_json()),
        Format::Csv => {
            println!("lo,hi,multiplicity");
            for r in &cert.roots {
                println!("{},{},{}", r.lo, r.hi, r.multiplicity);
            }
        }
        Format::Text => {
            println!("degree={}", cert.degree);
            println!("real_rooted={}", cert.real_rooted);
            println!("width_bound={}", cert.width_bound);
            if let Some(within) = cert.within_expected {
                println!("within_expected={within}");
            }
            for r in &cert.roots {
                println!("root [{}, {}] multiplicity {}", r.lo, r.hi, r.multiplicity);
            }
        }
    }
}

fn diagnose(kind: Diagnose, format: Format) -> Result<ExitCode, AppError> {
    match kind {
        Diagnose::Poisson { family, nmax, rmax } => {
            if nmax == 0 {
                return usage("--nmax must be at least 1");
            }
            let family = named_family(&family)?;
            let d = diagnose_poisson_family(&family, nmax, rmax).map_err(comp)?;
            match format {
                Format::Json => println!("{}", d.to_json()),
                Format::Csv => {
                    let orders: Vec<String> = (1..=rmax).map(|r| format!("E{r}")).collect();
                    println!("n,{}", orders.join(","));
                    for row in &d.factorial_moments {
                        println!("{},{}", row.n, join_rationals(&row.factorial_moments));
                    }
                }
                Format::Text => {
                    println!("limit={}", d.limit_label);
                    println!("scale={}", d.scale);
                    println!("c_limit={}", d.c_limit);
                    println!("max_deviation_at_nmax={}", d.max_deviation_at_nmax);
                    println!("c_estimates=[{}]", join_rationals(&d.c_estimates));
                }
            }
        }
        Diagnose::Clt { family, n } => {
            let spec = builtin(&named_family(&family)?).map_err(comp)?;
            let r = clt_report(&spec, n).map_err(comp)?;
            match format {
                Format::Json => println!("{}", r.to_json()),
                Format::Csv => {
                    println!("n,real_rooted,variance,lyapunov_lo,lyapunov_hi,m3,m4");
                    println!(
                        "{},{},{},{},{},{},{}",
                        r.n,
                        r.certificate.real_rooted,
                        r.variance,
                        r.lyapunov.0,
                        r.lyapunov.1,
                        r.standardized_m3,
                        r.standardized_m4
                    );
                }
                Format::Text => {
                    println!("n={}", r.n);
                    println!("real_rooted={}", r.certificate.real_rooted);
                    println!("variance={}", r.variance);
                    println!("lyapunov=[{}, {}]", r.lyapunov.0, r.lyapunov.1);
                    println!(
                        "standardized_m3={} (gaussian {})",
                        r.standardized_m3, r.gaussian_m3
                    );
                    println!(
                        "standardized_m4={} (gaussian {})",
                        r.standardized_m4, r.gaussian_m4
                    );
                }
            }
        }
        Diagnose::LocalLimit { family, n } => {
            let family = named_family(&family)?;
            let r = local_limit_report(&family, n).map_err(comp)?;
            match format {
                Format::Json => println!("{}", r.to_json()),
                Format::Csv => {
                    println!("n,sup_abs_error");
                    println!("{},{}", r.n, r.sup_abs_error);
                }
                Format::Text => println!("n={} sup_abs_error={}", r.n, r.sup_abs_error),
            }
        }
        Diagnose::ScaledMoments { family, nmax, kmax } => {
            let spec = builtin(&named_family(&family)?).map_err(comp)?;
            let r = scaled_moment_limit(&spec, nmax, kmax).map_err(comp)?;
            match format {
                Format::Json => println!("{}", r.to_json()),
                Format::Csv => print!("{}", r.to_csv()),
                Format::Text => {
                    println!("scaling={}", r.scaling);
                    for row in &r.rows {
                        println!(
                            "n={} variance_over_n={} ratios={:?} third_factorial_ratio={}",
                            row.n, row.variance_over_n, row.ratios, row.third_factorial_ratio
                        );
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tableaux(kind: TableauxCmd, format: Format) -> Result<ExitCode, AppError> {
    let caps = caps_from_env()?;
    match kind {
        TableauxCmd::Enumerate { size, symmetric } => {
            let all = if symmetric {
                enumerate_symmetric(size, &caps).map_err(comp)?
            } else {
                enumerate_tableaux(size, &caps).map_err(comp)?
            };
            match format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = all.iter().map(tableau_json).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&rows).expect("tableaux serialize")
                    );
                }
                Format::Csv => {
                    println!("index,size,corners,occupied_corners,diagonal_cells");
                    for (i, t) in all.iter().enumerate() {
                        let s = t.stats();
                        println!(
                            "{i},{},{},{},{}",
                            s.size, s.corners, s.occupied_corners, s.diagonal_cells
                        );
                    }
                }
                Format::Text => {
                    for t in &all {
                        print!("{}\n", t.to_text());
                    }
                    println!("total {}", all.len());
                }
            }
        }
        TableauxCmd::Distribution { stat, size } => {
            let statistic: Statistic = stat.parse().map_err(|e| AppError::Usage(format!("{e}")))?;
            let h = statistic_distribution(statistic, size, &caps).map_err(comp)?;
            match format {
                Format::Json => println!("{}", h.to_json()),
                Format::Csv => {
                    println!("k,count");
                    for (k, c) in h.counts.iter().enumerate() {
                        println!("{k},{c}");
                    }
                }
                Format::Text => {
                    println!(
                        "statistic={} n={} counts=[{}]",
                        h.statistic,
                        h.n,
                        join_display(&h.counts)
                    );
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tableau_json(t: &Tableau) -> serde_json::Value {
    serde_json::json!({
        "row_lengths": t.shape().row_lengths(),
        "points": t.points(),
    })
}

fn crosscheck(args: CrosscheckArgs) -> Result<ExitCode, AppError> {
    let statistic: Statistic = args
        .stat
        .parse()
        .map_err(|e| AppError::Usage(format!("{e}")))?;
    let family = match statistic {
        Statistic::OccupiedCorners => Family::Lz,
        Statistic::DiagonalCells => Family::Abn,
        Statistic::Corners => {
            return usage("statistic 'corners' has no generating polynomial to check against")
        }
    };
    let caps = caps_from_env()?;
    let histogram = statistic_distribution(statistic, args.n, &caps).map_err(comp)?;
    let spec = builtin(&family).map_err(comp)?;
    let polys = spec.generate(args.n as u64).map_err(comp)?;
    let p = &polys[args.n];
    let counts_line = format!("counts=[{}]", join_display(&histogram.counts));
    let as_rationals: Vec<Rational> = histogram
        .counts
        .iter()
        .map(|&c| Rational::from_integer(c.into()))
        .collect();
    if as_rationals == p.coeffs() {
        println!("MATCH {counts_line}");
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "MISMATCH {counts_line} coefficients=[{}]",
            join_rationals(p.coeffs())
        );
        Ok(ExitCode::FAILURE)
    }
}

// -------------------------------------------------------------------
// small formatting helpers

fn join_rationals(values: &[Rational]) -> String {
    values
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn join_display<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
