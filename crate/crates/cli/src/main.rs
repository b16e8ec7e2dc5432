mod args;
mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use arcbeta_core::arcsine_law::{ks_against, simulate_argmax_fractions, KsReport, WalkConfig};
use arcbeta_core::identities::{sweep, verify_worked_examples, Identity};
use arcbeta_core::special::beta;
use arcbeta_core::{Error, GeneralizedBetaDist};
use clap::Parser;

use args::{Cli, Command, DistArgs, EvalKind, OutputFormat, Suite};
use output::{emit_eval, emit_table, emit_values_with_ks, Record};

/// Why a command did not succeed.
enum Failure {
    /// Invalid parameters or another library error.
    Domain(Error),
    /// Output was written but some check failed.
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn dist(a: &DistArgs) -> Result<GeneralizedBetaDist, Error> {
    GeneralizedBetaDist::from_params(a.r1, a.r2, a.shape.s, a.shape.t)
}

fn dist_inputs(a: &DistArgs) -> Record {
    vec![
        ("r1", a.r1.into()),
        ("r2", a.r2.into()),
        ("s", a.shape.s.into()),
        ("t", a.shape.t.into()),
    ]
}

fn ks_record(r: &KsReport) -> Record {
    vec![
        ("statistic", r.statistic.into()),
        ("critical_1pct", r.critical_at_1pct.into()),
        ("n", r.n.into()),
        ("passed", r.passed.into()),
    ]
}

fn eval(out: &mut impl Write, format: OutputFormat, kind: &EvalKind) -> Outcome {
    let (name, inputs, value) = match kind {
        EvalKind::Beta(a) => (
            "beta",
            vec![("s", a.s.into()), ("t", a.t.into())],
            beta(a.s, a.t)?,
        ),
        EvalKind::Pdf(a) => {
            let mut inputs = dist_inputs(&a.dist);
            inputs.push(("x", a.x.into()));
            ("pdf", inputs, dist(&a.dist)?.pdf(a.x))
        }
        EvalKind::Cdf(a) => {
            let mut inputs = dist_inputs(&a.dist);
            inputs.push(("x", a.x.into()));
            ("cdf", inputs, dist(&a.dist)?.cdf(a.x))
        }
        EvalKind::Quantile(a) => {
            let mut inputs = dist_inputs(&a.dist);
            inputs.push(("p", a.p.into()));
            ("quantile", inputs, dist(&a.dist)?.quantile(a.p)?)
        }
        EvalKind::Mean(a) => ("mean", dist_inputs(a), dist(a)?.mean()),
    };
    emit_eval(out, format, name, &inputs, value)?;
    Ok(())
}

fn moments(out: &mut impl Write, format: OutputFormat, a: &args::MomentsArgs) -> Outcome {
    let table = dist(&a.dist)?.moment_table(a.max_k)?;
    let rows: Vec<Record> = table
        .rows
        .iter()
        .map(|r| {
            vec![
                ("k", r.k.into()),
                ("value", r.value.into()),
                ("method", r.method.name().into()),
            ]
        })
        .collect();
    emit_table(out, format, &rows)?;
    Ok(())
}

fn verify(out: &mut impl Write, format: OutputFormat, a: &args::VerifyArgs) -> Outcome {
    let identities: Vec<Identity> = match a.suite {
        Suite::Shifted => vec![Identity::Shifted],
        Suite::SplitUpper => vec![Identity::SplitUpper],
        Suite::SplitLower => vec![Identity::SplitLower],
        Suite::HalfInterval => vec![Identity::HalfInterval],
        Suite::All => Identity::ALL.to_vec(),
    };
    let mut rows = Vec::new();
    let mut failed = 0usize;
    for id in identities {
        let mut reports = sweep(id, a.rel_tol)?;
        reports.extend(verify_worked_examples(id, a.rel_tol)?);
        for r in reports {
            failed += usize::from(!r.passed);
            rows.push(vec![
                ("identity", id.name().into()),
                ("r1", r.interval.r1().into()),
                ("r2", r.interval.r2().into()),
                ("s", r.shape.s().into()),
                ("t", r.shape.t().into()),
                ("closed_value", r.closed_value.into()),
                ("oracle_value", r.oracle.value.into()),
                ("oracle_error_estimate", r.oracle.abs_error_estimate.into()),
                ("abs_diff", r.abs_diff.into()),
                ("rel_diff", r.rel_diff.into()),
                ("passed", r.passed.into()),
            ]);
        }
    }
    emit_table(out, format, &rows)?;
    if failed > 0 {
        return Err(Failure::Verification(format!(
            "{failed} of {} identity checks failed at relative tolerance {}",
            rows.len(),
            a.rel_tol
        )));
    }
    Ok(())
}

fn sample(out: &mut impl Write, format: OutputFormat, a: &args::SampleArgs) -> Outcome {
    if a.n == 0 {
        return Err(Error::Domain("--n must be at least 1".into()).into());
    }
    let d = dist(&a.dist)?;
    let values = d.sample(a.n, a.seed)?;
    let ks = ks_against(&values, &d)?;
    let mut inputs = dist_inputs(&a.dist);
    inputs.push(("n", a.n.into()));
    inputs.push(("seed", a.seed.into()));
    emit_values_with_ks(out, format, &inputs, &values, &ks_record(&ks))?;
    Ok(())
}

fn simulate(out: &mut impl Write, format: OutputFormat, a: &args::SimulateArgs) -> Outcome {
    let cfg = WalkConfig::new(a.steps, a.paths, a.seed)?;
    let fractions = simulate_argmax_fractions(&cfg);
    let ks = ks_against(&fractions, &GeneralizedBetaDist::standard_arcsine())?;
    let inputs: Record = vec![
        ("steps", a.steps.into()),
        ("paths", a.paths.into()),
        ("seed", a.seed.into()),
    ];
    emit_values_with_ks(out, format, &inputs, &fractions, &ks_record(&ks))?;
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Eval(kind) => eval(&mut out, cli.format, kind),
        Command::Moments(a) => moments(&mut out, cli.format, a),
        Command::Verify(a) => verify(&mut out, cli.format, a),
        Command::Sample(a) => sample(&mut out, cli.format, a),
        Command::Simulate(a) => simulate(&mut out, cli.format, a),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
