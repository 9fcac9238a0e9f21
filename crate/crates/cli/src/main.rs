use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hwfactor::format::{parse_auto, to_json, to_text};
use hwfactor::{construct_hamilton_only, construct_hw, supported, verify_certificate, Certificate, Error, Support};
use rayon::prelude::*;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_BAD_FILE: u8 = 4;

/// Build and check 2-factorizations of K_n into Hamilton cycles and
/// C_4k-factors.
#[derive(Parser)]
#[command(name = "hwfactor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a certificate for n = 4kt with r Hamilton cycles.
    Construct(ConstructArgs),
    /// Check a certificate file (JSON or text) and print a per-check report.
    Verify { path: PathBuf },
    /// Construct and verify every r for the given k and t.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, required_unless_present = "hamilton_only")]
    k: Option<usize>,
    #[arg(long, required_unless_present = "hamilton_only")]
    t: Option<usize>,
    #[arg(long, required_unless_present = "hamilton_only")]
    r: Option<usize>,
    /// Order of the complete graph, with --hamilton-only.
    #[arg(long, requires = "hamilton_only")]
    n: Option<usize>,
    /// Hamilton decomposition of K_n (or K_n - I) only.
    #[arg(long, requires = "n", conflicts_with_all = ["k", "t", "r"])]
    hamilton_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write each certificate as r<r>.<ext> into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Format {
    fn render(self, cert: &Certificate) -> String {
        match self {
            Format::Json => to_json(cert) + "\n",
            Format::Text => to_text(cert),
        }
    }

    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "txt",
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Unsupported { .. } => EXIT_UNSUPPORTED,
        _ => EXIT_INVALID,
    }
}

fn write_output(out: Option<&Path>, body: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn construct(args: ConstructArgs) -> u8 {
    let result = if args.hamilton_only {
        construct_hamilton_only(args.n.expect("clap enforces --n"))
    } else {
        construct_hw(
            args.k.expect("clap enforces --k"),
            args.t.expect("clap enforces --t"),
            args.r.expect("clap enforces --r"),
        )
    };
    let cert = match result {
        Ok(cert) => cert,
        Err(err) => {
            eprintln!("error: {err}");
            return exit_for(&err);
        }
    };
    if let Err(err) = write_output(args.out.as_deref(), &args.format.render(&cert)) {
        eprintln!("error: cannot write output: {err}");
        return EXIT_BAD_FILE;
    }
    0
}

fn verify(path: &Path) -> u8 {
    let input = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            return EXIT_BAD_FILE;
        }
    };
    let cert = match parse_auto(&input) {
        Ok(c) => c,
        Err(err) => {
            eprintln!("error: {} is not a certificate: {err}", path.display());
            return EXIT_BAD_FILE;
        }
    };
    let report = verify_certificate(&cert);
    print!("{report}");
    if report.passed() {
        println!("certificate valid (n = {}, r = {}, s = {})", cert.n, cert.r, cert.s);
        0
    } else {
        let failed: Vec<String> = report.failed_checks().iter().map(|c| c.number().to_string()).collect();
        println!("certificate INVALID (failed checks: {})", failed.join(", "));
        EXIT_VERIFY_FAILED
    }
}

enum Row {
    Pass(Certificate),
    Fail(String),
    Unsupported,
}

fn sweep(args: SweepArgs) -> u8 {
    let (k, t) = (args.k, args.t);
    if supported(k, t, 0) == Support::Invalid {
        eprintln!("error: k and t must be positive, got k = {k}, t = {t}");
        return EXIT_INVALID;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(err) => {
            eprintln!("error: cannot start worker pool: {err}");
            return EXIT_INVALID;
        }
    };
    let n = 4 * k * t;
    let top = (n - 2) / 2;
    let rows: Vec<Row> = pool.install(|| {
        (0..=top)
            .into_par_iter()
            .map(|r| match construct_hw(k, t, r) {
                Err(Error::Unsupported { .. }) => Row::Unsupported,
                Err(err) => Row::Fail(err.to_string()),
                Ok(cert) => {
                    let report = verify_certificate(&cert);
                    if report.passed() {
                        Row::Pass(cert)
                    } else {
                        let failed: Vec<String> = report
                            .failed_checks()
                            .iter()
                            .map(|c| format!("check {}", c.number()))
                            .collect();
                        Row::Fail(failed.join(", "))
                    }
                }
            })
            .collect()
    });

    if let Some(dir) = &args.out_dir {
        if let Err(err) = fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {err}", dir.display());
            return EXIT_BAD_FILE;
        }
    }
    println!("n = {n}, k = {k}, t = {t}");
    println!("{:>5} {:>5}  status", "r", "s");
    let mut failures = 0;
    for (r, row) in rows.iter().enumerate() {
        let status = match row {
            Row::Pass(cert) => {
                if let Some(dir) = &args.out_dir {
                    let path = dir.join(format!("r{r}.{}", args.format.extension()));
                    if let Err(err) = fs::write(&path, args.format.render(cert)) {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return EXIT_BAD_FILE;
                    }
                }
                "pass".to_string()
            }
            Row::Unsupported => "unsupported".to_string(),
            Row::Fail(why) => {
                failures += 1;
                format!("FAIL ({why})")
            }
        };
        println!("{r:>5} {:>5}  {status}", top - r);
    }
    if failures == 0 {
        0
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INVALID),
            };
        }
    };
    let code = match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify { path } => verify(&path),
        Command::Sweep(args) => sweep(args),
    };
    ExitCode::from(code)
}
