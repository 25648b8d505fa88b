use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coalg_core::address::{fold_dyadic, gasket_coords, parse_word_pair, word_distance};
use coalg_core::completion::completion_distance;
use coalg_core::experiments::{
    lipschitz_problems, lipschitz_table, stable_word, triangle_g_claims, verify_claims_ab,
    ClaimsReport, IntervalE, TriangleE, TrianglePoint,
};
use coalg_core::morphisms::{
    algebra_fold, coalgebra_iterate, Algebra, BipAlg, Coalgebra, FreydI, TripAlg,
};
use coalg_core::suites::{self, Suite, SuiteParams, SuiteSelection};
use coalg_core::{AddressError, AddressWord, Alphabet, CompletionPoint, Dyadic};

#[derive(Parser)]
#[command(
    name = "coalg",
    version,
    about = "Exact distances, folds and mediating maps for the interval and gasket functors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two words, or an interval for two streams such as `ll(r)*`
    Dist {
        first: String,
        second: String,
        /// Truncation depth when the arguments are streams
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Fold a word to its dyadic (bi-pointed) or planar point (tri-pointed)
    Fold { word: String },
    /// Whether two words name the same point
    Equiv { first: String, second: String },
    /// Depth-p truncation of a builtin coalgebra's mediating map
    Approx {
        coalgebra: CoalgebraName,
        point: String,
        depth: usize,
    },
    /// Evaluate a builtin algebra on a word, or a builtin coalgebra's mediating map on a point
    Eval { name: String, input: String },
    /// Run a verification suite (or `all`); the optional cap overrides the suite's main size
    Verify {
        suite: String,
        cap: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit an experiment table as CSV
    Table {
        table: TableName,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Interior samples per interval for the claims tables
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Write to this file instead of standard output
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoalgebraName {
    IntervalE,
    TriangleE,
    FreydI,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    /// `f` on the intervals `I_n` and `J_n`
    Claims,
    /// `g(x, 0)` on the same samples
    GClaims,
    /// Lipschitz ratios of `f`
    Lipschitz,
}

enum Outcome {
    Ok,
    Failed,
}

/// Anything that should end the process with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> CmdResult {
    match command {
        Command::Dist {
            first,
            second,
            depth,
        } => dist(&first, &second, depth, out),
        Command::Fold { word } => fold(&word, out),
        Command::Equiv { first, second } => {
            let (w, v) = parse_word_pair(&first, &second)?;
            writeln!(out, "{}", word_distance(&w, &v)?.is_zero())?;
            Ok(Outcome::Ok)
        }
        Command::Approx {
            coalgebra,
            point,
            depth,
        } => approx(coalgebra, &point, depth, out),
        Command::Eval { name, input } => eval(&name, &input, out),
        Command::Verify {
            suite,
            cap,
            depth,
            nmax,
            samples,
            seed,
        } => {
            let selection: SuiteSelection = suite.parse()?;
            let mut params = SuiteParams {
                depth,
                nmax,
                samples,
                seed,
            };
            if let Some(cap) = cap {
                apply_cap(selection, cap, &mut params);
            }
            verify(selection, &params, out)
        }
        Command::Table {
            table,
            nmax,
            samples,
            csv,
        } => match csv {
            Some(path) => {
                let file = File::create(&path)
                    .map_err(|e| UsageError(format!("cannot create {}: {e}", path.display())))?;
                let (rows, outcome) = table_csv(table, nmax, samples, file)?;
                writeln!(out, "wrote {rows} rows to {}", path.display())?;
                Ok(outcome)
            }
            None => table_csv(table, nmax, samples, &mut *out).map(|(_, outcome)| outcome),
        },
    }
}

fn dist(first: &str, second: &str, depth: usize, out: &mut impl Write) -> CmdResult {
    if first.contains('(') || second.contains('(') {
        if depth == 0 {
            return Err(UsageError("--depth must be at least 1".into()));
        }
        let s: CompletionPoint = first.parse()?;
        let t: CompletionPoint = second.parse()?;
        writeln!(out, "{}", completion_distance(&s, &t, depth)?)?;
    } else {
        let (w, v) = parse_word_pair(first, second)?;
        writeln!(out, "{}", word_distance(&w, &v)?)?;
    }
    Ok(Outcome::Ok)
}

fn fold(word: &str, out: &mut impl Write) -> CmdResult {
    let w = match AddressWord::parse_with(word, None) {
        Err(AddressError::Ambiguous(_)) => AddressWord::parse_with(word, Some(Alphabet::Bi))?,
        parsed => parsed?,
    };
    match w.alphabet() {
        Alphabet::Bi => writeln!(out, "{}", fold_dyadic(&w)?)?,
        Alphabet::Tri => writeln!(out, "{}", gasket_coords(&w)?)?,
    }
    Ok(Outcome::Ok)
}

fn describe_word(w: &AddressWord, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "word: {w}")?;
    match w.alphabet() {
        Alphabet::Bi => writeln!(out, "fold: {}", fold_dyadic(w).expect("bi-pointed word")),
        Alphabet::Tri => writeln!(
            out,
            "coords: {}",
            gasket_coords(w).expect("tri-pointed word")
        ),
    }
}

fn approx(name: CoalgebraName, point: &str, depth: usize, out: &mut impl Write) -> CmdResult {
    let w = match name {
        CoalgebraName::IntervalE => {
            coalgebra_iterate(&IntervalE, &point.parse::<Dyadic>()?, depth)?
        }
        CoalgebraName::FreydI => coalgebra_iterate(&FreydI, &point.parse::<Dyadic>()?, depth)?,
        CoalgebraName::TriangleE => {
            coalgebra_iterate(&TriangleE, &point.parse::<TrianglePoint>()?, depth)?
        }
    };
    describe_word(&w, out)?;
    writeln!(out, "error: {}", Dyadic::pow2_neg(depth as u32))?;
    Ok(Outcome::Ok)
}

fn eval(name: &str, input: &str, out: &mut impl Write) -> CmdResult {
    match name {
        "bip-alg" => eval_algebra(&BipAlg, input, out),
        "trip-alg" => eval_algebra(&TripAlg, input, out),
        "interval-e" => eval_coalgebra(&IntervalE, &input.parse()?, out),
        "freyd-i" => eval_coalgebra(&FreydI, &input.parse()?, out),
        "triangle-e" => eval_coalgebra(&TriangleE, &input.parse()?, out),
        other => Err(UsageError(format!(
            "unknown (co)algebra `{other}`; expected bip-alg, trip-alg, interval-e, triangle-e or freyd-i"
        ))),
    }
}

fn eval_algebra<A>(a: &A, input: &str, out: &mut impl Write) -> CmdResult
where
    A: Algebra,
    A::Point: std::fmt::Display,
{
    let w = AddressWord::parse_with(input, Some(a.alphabet()))?;
    writeln!(out, "{}", algebra_fold(a, &w)?)?;
    Ok(Outcome::Ok)
}

/// Prints the image stream, which is eventually constant for dyadic inputs,
/// and the point it converges to.
fn eval_coalgebra<C: Coalgebra>(c: &C, x: &C::Point, out: &mut impl Write) -> CmdResult {
    let w = stable_word(c, x)?;
    let (last, prefix) = w
        .letters()
        .split_last()
        .expect("stable words have at least one letter");
    let stream = CompletionPoint::periodic(c.alphabet(), prefix.to_vec(), vec![*last])?;
    writeln!(out, "stream: {stream}")?;
    match c.alphabet() {
        Alphabet::Bi => writeln!(out, "value: {}", fold_dyadic(&w)?)?,
        Alphabet::Tri => writeln!(out, "value: {}", gasket_coords(&w)?)?,
    }
    Ok(Outcome::Ok)
}

/// The positional cap of `verify` sets whichever size the suite is driven by.
fn apply_cap(selection: SuiteSelection, cap: usize, params: &mut SuiteParams) {
    match selection {
        SuiteSelection::One(Suite::ClaimsAb | Suite::Lipschitz | Suite::Discontinuity) => {
            params.nmax = Some(cap)
        }
        SuiteSelection::One(Suite::TensorMaps) => params.samples = Some(cap),
        SuiteSelection::One(_) => params.depth = Some(cap),
        SuiteSelection::All => {
            params.depth = Some(cap);
            params.nmax = Some(cap);
        }
    }
}

fn verify(selection: SuiteSelection, params: &SuiteParams, out: &mut impl Write) -> CmdResult {
    if selection == SuiteSelection::One(Suite::Lipschitz) {
        let rows = lipschitz_table(params.nmax.unwrap_or(10))?;
        for row in &rows {
            writeln!(
                out,
                "n={} x={} y={} f(x)={} f(y)={} ratio={}",
                row.n, row.x, row.y, row.fx, row.fy, row.ratio
            )?;
        }
    }
    let report = suites::run(selection, params)?;
    write!(out, "{report}")?;
    let failed = report.checks.iter().filter(|c| !c.ok()).count();
    writeln!(
        out,
        "{}: {} checks, {} failed",
        if report.ok() { "pass" } else { "FAIL" },
        report.checks.len(),
        failed
    )?;
    Ok(if report.ok() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn table_csv(
    table: TableName,
    nmax: usize,
    samples: usize,
    sink: impl Write,
) -> Result<(usize, Outcome), UsageError> {
    let mut writer = csv::Writer::from_writer(sink);
    let (rows, ok) = match table {
        TableName::Claims => claims_rows(&mut writer, &verify_claims_ab(nmax, samples)?)?,
        TableName::GClaims => claims_rows(&mut writer, &triangle_g_claims(nmax, samples)?)?,
        TableName::Lipschitz => {
            let rows = lipschitz_table(nmax)?;
            writer.write_record(["n", "ratio_num", "ratio_exp"])?;
            for row in &rows {
                writer.write_record([
                    row.n.to_string(),
                    row.ratio.numerator().to_string(),
                    row.ratio.exponent().to_string(),
                ])?;
            }
            (rows.len(), lipschitz_problems(&rows).is_empty())
        }
    };
    writer.flush()?;
    Ok((rows, if ok { Outcome::Ok } else { Outcome::Failed }))
}

fn claims_rows<W: Write>(
    writer: &mut csv::Writer<W>,
    report: &ClaimsReport,
) -> Result<(usize, bool), UsageError> {
    writer.write_record(["n", "x_num", "x_exp", "f_num", "f_exp"])?;
    for s in &report.samples {
        writer.write_record([
            s.n.to_string(),
            s.x.numerator().to_string(),
            s.x.exponent().to_string(),
            s.route_a.numerator().to_string(),
            s.route_a.exponent().to_string(),
        ])?;
    }
    Ok((report.samples.len(), report.passed()))
}
