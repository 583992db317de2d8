mod args;
mod report;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use kcspace::fixtures::{reproduce, space_for, FixtureError, ReproduceTarget};
use kcspace::{
    build_m1, build_root_system, build_z, classical_p_range, classify, classify_closed_form,
    cross_check, ClassifyError, Family, GradedSpace,
};
use rayon::prelude::*;

use args::{resolve_algebra, Cli, Command, Settings};
use report::SweepRow;

const EXIT_MISMATCH: u8 = 1;
const EXIT_OUT_OF_SCOPE: u8 = 2;
const EXIT_DISCREPANCY: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    OutOfScope(String),
    /// The report is still written before exiting.
    Discrepancy(String),
    Mismatch(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::OutOfScope(_) => EXIT_OUT_OF_SCOPE,
            CliError::Discrepancy(_) => EXIT_DISCREPANCY,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::OutOfScope(m)
            | CliError::Discrepancy(m)
            | CliError::Mismatch(m)
            | CliError::Internal(m) => m,
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::OutOfTheoremScope { .. } => CliError::OutOfScope(e.to_string()),
            ClassifyError::Discrepancy { .. } => CliError::Discrepancy(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        match e {
            FixtureError::UnknownTarget(_) => CliError::Usage(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// A finished report and the failure, if any, to exit with after writing it.
struct Outcome {
    text: String,
    failure: Option<CliError>,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome {
            text,
            failure: None,
        }
    }
}

fn space(args: &args::SpaceArgs) -> Result<GradedSpace, CliError> {
    let (algebra, p) = args.resolve()?;
    space_for(algebra, p).map_err(internal)
}

fn analyze(args: &args::SpaceArgs, settings: &Settings) -> Result<Outcome, CliError> {
    let space = space(args)?;
    let verdict = classify(&space, &settings.options)?;
    let text = report::verdict(&verdict, settings.format);
    let failure = match cross_check(&space, &settings.options) {
        Ok(_) => None,
        Err(e @ ClassifyError::Discrepancy { .. }) => Some(e.into()),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome { text, failure })
}

fn sweep(
    family: &str,
    ranks: &std::ops::RangeInclusive<usize>,
    settings: &Settings,
) -> Result<Outcome, CliError> {
    let family: Family = family
        .parse()
        .map_err(|e| CliError::Usage(format!("{e}")))?;
    if !family.is_classical() {
        return Err(CliError::Usage(format!(
            "sweeps cover B, C and D, not {family}"
        )));
    }
    let mut cases = Vec::new();
    for n in ranks.clone() {
        let algebra = resolve_algebra(&family.to_string(), Some(n))?;
        let ps = classical_p_range(family, n).map_err(internal)?;
        cases.extend(ps.map(|p| (algebra, p)));
    }
    let rows: Vec<SweepRow> = cases
        .par_iter()
        .map(|&(algebra, p)| {
            let space = space_for(algebra, p)?;
            let closed = classify_closed_form(algebra, p)?;
            let verdict = classify(&space, &settings.options)?;
            let consistent = match cross_check(&space, &settings.options) {
                Ok(_) => true,
                Err(ClassifyError::Discrepancy { .. }) => false,
                Err(e) => return Err(e.into()),
            };
            Ok(SweepRow {
                verdict,
                closed,
                consistent,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let text = report::sweep(&rows, settings.format);
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.consistent)
        .map(|r| format!("({}, α{})", r.verdict.algebra, r.verdict.p))
        .collect();
    let failure = (!bad.is_empty()).then(|| {
        CliError::Discrepancy(format!(
            "numeric and closed-form verdicts disagree for {}",
            bad.join(", ")
        ))
    });
    Ok(Outcome { text, failure })
}

fn reproduce_targets(name: &str) -> Result<Outcome, CliError> {
    let targets: Vec<ReproduceTarget> = if name.eq_ignore_ascii_case("all") {
        let mut all = vec![ReproduceTarget::G2M1, ReproduceTarget::G2Z];
        all.extend(Family::EXCEPTIONAL.into_iter().map(ReproduceTarget::Tables));
        all
    } else {
        vec![name.parse()?]
    };
    let mut text = String::new();
    let mut failed = Vec::new();
    for target in targets {
        let report = reproduce(target)?;
        text += &format!("# {target}\n");
        for line in &report.lines {
            text += line;
            text.push('\n');
        }
        for m in &report.mismatches {
            text += &format!("MISMATCH {m}\n");
        }
        text += &format!(
            "# {target}: {}\n",
            if report.is_match() {
                "matches golden copy".to_string()
            } else {
                format!("{} mismatches", report.mismatches.len())
            }
        );
        if !report.is_match() {
            failed.push(target.to_string());
        }
    }
    let failure = (!failed.is_empty())
        .then(|| CliError::Mismatch(format!("golden mismatch in {}", failed.join(", "))));
    Ok(Outcome { text, failure })
}

fn run(cli: &Cli) -> Result<(Settings, Outcome), CliError> {
    let settings = cli.common.settings()?;
    let format = settings.format;
    let outcome = match &cli.command {
        Command::Roots(a) => {
            let system = build_root_system(resolve_algebra(&a.algebra, a.n)?).map_err(internal)?;
            report::roots(&system, format).into()
        }
        Command::Grade(a) => report::grading(&space(a)?, format).into(),
        Command::M1(a) => {
            let space = space(a)?;
            let m = build_m1(&space).map_err(internal)?;
            report::m1(&space, &m, format).into()
        }
        Command::Z(a) => {
            let space = space(a)?;
            let z = build_z(&space).map_err(internal)?;
            report::z(&space, &z, format).into()
        }
        Command::Analyze(a) => analyze(a, &settings)?,
        Command::Sweep { family, n } => sweep(family, n, &settings)?,
        Command::Reproduce { target } => reproduce_targets(target)?,
    };
    Ok((settings, outcome))
}

fn emit(settings: &Settings, text: &str) -> Result<(), CliError> {
    match &settings.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(internal)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = run(&cli).and_then(|(settings, outcome)| {
        emit(&settings, &outcome.text)?;
        outcome.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kcspace: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
