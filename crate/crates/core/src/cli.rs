//! Command-line front end. [`run`] never exits the process; it returns the
//! exit code: 0 on success or PASS, 1 on FAIL, 2 on input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certify::{parse_certificates, parse_witnesses, CasePattern};
use crate::cone::LatticeOp;
use crate::data;
use crate::exactnum::{check_dim, RowVector};
use crate::oracle::{count_good, hk_table, hk_table_csv, sample_min_fraction};
use crate::scheme::{classify_pairs, parse_scheme, parse_tuple, reduce_even_rows, verify_all, verify_leg_data};
use crate::signspace::SignVector;
use crate::solve::{decide_leg, lp_max_margin, qp_min_norm};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "signcert", version, about = "Exact certificates for |εa| ≤ ‖a‖ over sign vectors")]
struct Cli {
    /// Worker threads for parallel steps; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a proof scheme and its certificates end to end.
    Verify(VerifyArgs),
    /// Split all conjugate pairs into twins and non-twins.
    Classify {
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide a single leg: certificate or refuting witness.
    Twin {
        leg: usize,
        #[arg(long, default_value_t = 9)]
        n: usize,
    },
    /// Minimum-norm (R, λ) for one case, with its dual witness.
    SolveQp(CaseArgs),
    /// Best λ for a given R on one case.
    SolveLambda {
        #[command(flatten)]
        case: CaseArgs,
        /// Comma-separated rationals.
        #[arg(long = "r")]
        r: String,
    },
    /// Count sign vectors with (εa)² ≤ aa' (or < with --strict).
    Count {
        /// Comma-separated rationals.
        a: String,
        #[arg(long)]
        strict: bool,
    },
    /// Strict fractions at the library vectors next to the published constants.
    HkTable {
        #[arg(long)]
        csv: bool,
    },
    /// Smallest fraction of good sign vectors over random points of Q.
    Sample {
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Join or meet of two sign vectors in the cumulative order.
    Lattice {
        op: LatticeArg,
        i: usize,
        j: usize,
        #[arg(long, default_value_t = 9)]
        n: usize,
    },
    /// Keep odd-lead rows and halve indices, repeatedly.
    ReduceScheme {
        /// Row-structured scheme; defaults to the shipped one.
        #[arg(long)]
        scheme: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Scheme file (JSON or text); defaults to the shipped scheme.
    #[arg(long)]
    scheme: Option<PathBuf>,
    /// Certificate JSON; defaults to the shipped library.
    #[arg(long)]
    certs: Option<PathBuf>,
    /// Single-leg certificates cross-checked against the classification.
    #[arg(long)]
    leg_certs: Option<PathBuf>,
    /// Witnesses cross-checked against the classification.
    #[arg(long)]
    witnesses: Option<PathBuf>,
    /// Skip the single-leg data cross-check.
    #[arg(long)]
    no_leg_data: bool,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CaseArgs {
    /// Tuple in text form, e.g. "(0 255 (94 161))".
    #[arg(long)]
    tuple: String,
    /// Case pattern, e.g. "2,*,*,7".
    #[arg(long)]
    case: String,
    #[arg(long, default_value_t = 9)]
    n: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LatticeArg {
    Join,
    Meet,
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if cli.jobs == 0 {
        let _ = writeln!(err, "error: --jobs must be at least 1");
        return 2;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut buf = Vec::new();
    let res = pool.install(|| dispatch(cli.command, &mut buf));
    let _ = out.write_all(&buf);
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn parse_case(text: &str) -> Result<CasePattern> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let tokens: Vec<&str> = inner.split([',', ' ']).filter(|t| !t.is_empty()).collect();
    CasePattern::parse(&tokens)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Verify(args) => verify(args, out),
        Command::Classify { n, json } => {
            check_dim(n)?;
            if n < 3 {
                return Err(Error::InvalidDimension(n));
            }
            let c = classify_pairs(n)?;
            if json {
                let mut v = c.to_json();
                v["witnesses"] = serde_json::to_value(c.non_twins.iter().flat_map(|t| t.witnesses.clone()).collect::<Vec<_>>())?;
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "twins: {}", c.twins.len())?;
                writeln!(out, "non-twins: {}", c.non_twins.len())?;
                for t in &c.non_twins {
                    let legs: Vec<String> = t
                        .witnesses
                        .iter()
                        .map(|w| format!("leg {} RR'={}", w.leg.index(), w.r.norm_sq()))
                        .collect();
                    writeln!(out, "  ({}, {}): {}", t.pair.0, t.pair.1, legs.join(", "))?;
                }
            }
            Ok(0)
        }
        Command::Twin { leg, n } => {
            let d = decide_leg(leg, n)?;
            if let Some(w) = d.witness() {
                writeln!(out, "leg {leg}: non-twin leg (RR' = {} > 1)", d.result.value)?;
                writeln!(out, "witness: {}", serde_json::to_string(&w)?)?;
            } else {
                writeln!(out, "leg {leg}: twin leg (RR' = {} <= 1)", d.result.value)?;
                if let Some(c) = d.certificate() {
                    writeln!(out, "certificate: {}", serde_json::to_string(&c)?)?;
                }
            }
            writeln!(out, "dual: {}", serde_json::to_string(&d.result.dual)?)?;
            Ok(0)
        }
        Command::SolveQp(args) => {
            let tuple = parse_tuple(&args.tuple, args.n)?;
            let res = qp_min_norm(&tuple, &parse_case(&args.case)?)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&res.to_json())?)?;
            Ok(0)
        }
        Command::SolveLambda { case, r } => {
            let tuple = parse_tuple(&case.tuple, case.n)?;
            let r: RowVector = r.parse()?;
            let res = lp_max_margin(&r, &tuple, &parse_case(&case.case)?)?;
            let v = serde_json::json!({
                "lambda": res.lambda.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "margin": res.margin.to_string(),
                "in_qstar": res.margin >= num_traits::Zero::zero(),
                "norm_sq": r.norm_sq().to_string(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            Ok(0)
        }
        Command::Count { a, strict } => {
            let a: RowVector = a.parse()?;
            let c = count_good(&a);
            let (count, frac) = if strict {
                (c.count_lt, c.fraction_lt())
            } else {
                (c.count_le, c.fraction_le())
            };
            writeln!(out, "{count}/{} = {frac}", c.total)?;
            Ok(0)
        }
        Command::HkTable { csv } => {
            let rows = hk_table();
            if csv {
                write!(out, "{}", hk_table_csv(&rows))?;
            } else {
                writeln!(out, "{:>2}  {:<6} {:>10} {:>10}  match", "k", "vector", "computed", "claimed")?;
                for r in &rows {
                    let published = r.paper_value.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
                    let agrees = match r.agrees {
                        Some(true) => "yes",
                        Some(false) => "NO",
                        None => "-",
                    };
                    writeln!(out, "{:>2}  {:<6} {:>10} {:>10}  {agrees}", r.k, r.name, r.fraction_lt.to_string(), published)?;
                }
            }
            Ok(0)
        }
        Command::Sample { n, samples, seed } => {
            let f = sample_min_fraction(n, samples, seed)?;
            writeln!(out, "min fraction {f} over {samples} samples (n = {n}, seed {seed})")?;
            Ok(0)
        }
        Command::Lattice { op, i, j, n } => {
            let op = match op {
                LatticeArg::Join => LatticeOp::Join,
                LatticeArg::Meet => LatticeOp::Meet,
            };
            let a = SignVector::from_index(i, n)?.to_row_vector();
            let b = SignVector::from_index(j, n)?.to_row_vector();
            let res = op.apply(&a, &b)?;
            match SignVector::from_row_vector(&res) {
                Ok(s) => writeln!(out, "{s}")?,
                Err(_) => writeln!(out, "{res}")?,
            }
            Ok(0)
        }
        Command::ReduceScheme { scheme, steps } => {
            let mut s = match scheme {
                Some(p) => parse_scheme(&read(&p)?)?,
                None => data::table2()?,
            };
            for _ in 0..steps {
                s = reduce_even_rows(&s)?;
                write!(out, "{}", s.to_text())?;
            }
            Ok(0)
        }
    }
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let scheme = match &args.scheme {
        Some(p) => parse_scheme(&read(p)?)?,
        None => data::table1()?,
    };
    let certs = match &args.certs {
        Some(p) => parse_certificates(&read(p)?)?,
        None => data::certificates()?,
    };
    let classification = classify_pairs(scheme.n)?;
    let mut report = verify_all(&scheme, &certs, &classification);
    let mut leg_summary = None;
    if !args.no_leg_data && scheme.n == 9 {
        let leg_certs = match &args.leg_certs {
            Some(p) => parse_certificates(&read(p)?)?,
            None => data::leg_certificates()?,
        };
        let witnesses = match &args.witnesses {
            Some(p) => parse_witnesses(&read(p)?)?,
            None => data::witnesses()?,
        };
        leg_summary = Some((leg_certs.len(), witnesses.len()));
        report.absorb(verify_leg_data(&classification, &leg_certs, &witnesses));
    }
    if let Some(path) = &args.report {
        std::fs::write(path, report.to_json_pretty() + "\n")?;
    }
    if args.json {
        writeln!(out, "{}", report.to_json_pretty())?;
    } else {
        let cases: usize = report.tuples.iter().map(|t| t.cases.len()).sum();
        writeln!(out, "verdict: {}", if report.passed() { "PASS" } else { "FAIL" })?;
        writeln!(out, "n: {}", scheme.n)?;
        writeln!(
            out,
            "obligations: {} tuples, {} twin pairs, {cases} cases",
            scheme.tuples().count(),
            report.tuples.len() - scheme.tuples().count()
        )?;
        writeln!(out, "certificates checked: {}", certs.len())?;
        writeln!(
            out,
            "classification: {} twins, {} non-twins",
            classification.twins.len(),
            classification.non_twins.len()
        )?;
        if let Some((c, w)) = leg_summary {
            writeln!(out, "leg data: {c} certificates, {w} witnesses")?;
        }
        for f in &report.failures {
            writeln!(out, "FAIL [{}] {}", f.check, f.detail)?;
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}
