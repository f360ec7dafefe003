//! `traceforge`: list, run and search the registered trace-inequality checks.

mod args;
mod output;

use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;
use traceforge_verify::{
    registry, run_check, search_counterexample, CheckConfig, CheckId, CheckReport, ReportDocument, Status, VerifyError,
};

use args::{Cli, Command, Common, Format, ListArgs, RunArgs, SearchArgs};

const EXIT_UNEXPECTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownCheck(_) | VerifyError::Config(_) | VerifyError::NotSearchable(_) => CliError::Usage(e.to_string()),
            VerifyError::Core(_) => CliError::Runtime(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::List(a) => list(&a),
        Command::Run(a) => run(&a),
        Command::Search(a) => search(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_UNEXPECTED)
        }
    }
}

fn list(a: &ListArgs) -> Result<u8, CliError> {
    let rows: Vec<_> = registry()
        .into_iter()
        .filter(|info| a.filter.as_deref().is_none_or(|f| info.name.contains(f) || info.statement.contains(f)))
        .collect();
    match a.format {
        Format::Json => {
            let ids: Vec<&str> = rows.iter().map(|i| i.name).collect();
            println!("{}", serde_json::to_string_pretty(&ids).map_err(|e| CliError::Runtime(e.to_string()))?);
        }
        Format::Csv => return Err(CliError::Usage("list supports --format human or json".into())),
        Format::Human => {
            for info in rows {
                let dims: Vec<String> =
                    info.default_dims.iter().map(|d| d.iter().map(usize::to_string).collect::<Vec<_>>().join("×")).collect();
                println!(
                    "{:<30} {:<9} {:<12} {:<16} {}",
                    info.name,
                    format!("{:?}", info.mode).to_lowercase(),
                    format!("expect {}", info.expected),
                    dims.join(" "),
                    info.statement
                );
            }
        }
    }
    Ok(0)
}

fn parse_id(name: &str) -> Result<CheckId, CliError> {
    CheckId::from_str(name).map_err(|_| CliError::Usage(format!("unknown check '{name}' (see `traceforge list`)")))
}

fn config(common: &Common, trials: Option<usize>, tol: Option<f64>) -> Result<CheckConfig, CliError> {
    let cfg = CheckConfig { dims: common.dims.clone(), trials, seed: common.seed, tol, search_budget: common.budget };
    cfg.validate()?;
    if common.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(cfg)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Runtime(e.to_string()))
}

fn finish(reports: Vec<CheckReport>, format: Format, common: &Common) -> Result<ReportDocument, CliError> {
    let reports = if common.bits { reports.into_iter().map(CheckReport::into_bits).collect() } else { reports };
    let doc = ReportDocument::new(reports);
    let rendered = output::render(&doc, format, common.out.as_deref()).map_err(CliError::Runtime)?;
    output::emit(&rendered, common.out.as_deref()).map_err(|e| CliError::Runtime(format!("writing report: {e}")))?;
    if common.out.is_some() {
        for r in &doc.reports {
            eprintln!("{}", output::summary(r));
        }
    }
    Ok(doc)
}

fn run(a: &RunArgs) -> Result<u8, CliError> {
    let names: Vec<String> =
        if a.all { registry().iter().map(|i| i.name.to_string()).collect() } else { a.ids.iter().chain(&a.checks).cloned().collect() };
    if names.is_empty() {
        return Err(CliError::Usage("no checks selected; pass ids, --checks or --all".into()));
    }
    let mut ids = Vec::new();
    for name in &names {
        let id = parse_id(name)?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    let cfg = config(&a.common, a.trials, a.tol)?;
    if let Some(dims) = &cfg.dims {
        for id in &ids {
            id.info().check_dims(dims)?;
        }
    }
    if a.format == Format::Csv && a.common.out.is_none() {
        return Err(CliError::Usage("csv output stores witnesses in a sidecar file and needs --out".into()));
    }
    let reports = pool(a.common.jobs)?.install(|| ids.iter().map(|&id| run_check(id, &cfg)).collect::<Result<Vec<_>, _>>())?;
    let doc = finish(reports, a.format, &a.common)?;
    Ok(if doc.all_as_expected() { 0 } else { EXIT_UNEXPECTED })
}

fn search(a: &SearchArgs) -> Result<u8, CliError> {
    let id = parse_id(&a.id)?;
    let cfg = config(&a.common, None, None)?;
    if !id.info().searchable {
        return Err(VerifyError::NotSearchable(a.id.clone()).into());
    }
    if let Some(dims) = &cfg.dims {
        id.info().check_dims(dims)?;
    }
    if a.format == Format::Csv && a.common.out.is_none() {
        return Err(CliError::Usage("csv output stores witnesses in a sidecar file and needs --out".into()));
    }
    let report = pool(a.common.jobs)?.install(|| search_counterexample(id, &cfg))?;
    let status = report.status;
    finish(vec![report], a.format, &a.common)?;
    Ok(match status {
        Status::Fail => 0,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
        Status::Pass => EXIT_UNEXPECTED,
    })
}
