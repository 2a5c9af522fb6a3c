//! Command-line front end: `describe`, `table`, `verify`, `restrict`.
//!
//! Exit status: 0 on success, 2 on invalid input or usage errors, 3 when
//! any crosscheck fails. Output goes to stdout, diagnostics to stderr, and
//! identical invocations produce byte-identical output.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{self, InvariantReport, TheoremRow};
use crate::lattice::{GroupKind, GroupSpec};
use crate::restrict;
use crate::verify::{self, Suite, SuiteReport};

#[derive(Parser)]
#[command(
    name = "qdec",
    version,
    about = "Exact lattice computation of degree-3 cohomological invariant groups \
             for the split groups SL_n/mu_m and HSpin_4n"
)]
struct Cli {
    /// Emit JSON instead of markdown
    #[arg(long, global = true)]
    json: bool,

    /// Height bound for the dominant-character enumeration behind n_G
    #[arg(long, global = true, default_value_t = 4)]
    height: u64,

    /// Include a derivation trace in describe output
    #[arg(long, global = true)]
    trace: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report ell, n_G, Q(G), Dec(G) and the invariant groups of one group
    Describe {
        #[command(subcommand)]
        group: GroupArg,
    },
    /// Theorem case tables compared against the engine, row by row
    Table {
        #[command(subcommand)]
        family: TableArg,
    },
    /// Re-derive every closed form from the exact oracles
    Verify {
        /// Which suite to run
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Largest n for the SL_n/mu_m parameter grids
        #[arg(long = "max-n", default_value_t = 30)]
        max_n: u64,
    },
    /// Restriction of indecomposable invariants from HSpin_{4n} to SL_{2n}/mu_2
    Restrict {
        /// Parameter n of the half-spin group HSpin_{4n}
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum GroupArg {
    /// The group SL_n/mu_m (requires m | n)
    Sl {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// The half-spin group HSpin_rank (rank must be a multiple of 4, at least 8)
    Hspin {
        #[arg(long)]
        rank: u64,
    },
}

#[derive(Subcommand)]
enum TableArg {
    /// SL_n/mu_{p^r} for all valid n up to max-n
    Sl {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long = "max-n", default_value_t = 27)]
        max_n: u64,
    },
    /// HSpin_{4n} for n in min-n..=max-n
    Hspin {
        #[arg(long = "min-n", default_value_t = 2)]
        min_n: u64,
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Qtau,
    Ell,
    Ng,
    Typea,
    #[value(name = "halfspin-index")]
    HalfspinIndex,
    Tables,
    Restrict,
    Props,
}

#[derive(Serialize)]
struct ParamsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<u64>,
    height: u64,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    closed_form: &'a str,
    oracle: &'a str,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    group: String,
    params: ParamsJson,
    ell: u64,
    n_g: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_g_note: Option<&'a str>,
    q_group: &'a str,
    dec_group: &'a str,
    inv_dec: &'a str,
    inv_ind_order: u64,
    inv_ind_presentation: &'a str,
    crosschecks: Vec<CheckJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    split_note: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a [String]>,
}

fn params_of(report: &InvariantReport) -> ParamsJson {
    match report.spec.kind() {
        GroupKind::SlModMu { n, m } => ParamsJson {
            n: Some(n),
            m: Some(m),
            rank: None,
            height: report.height,
        },
        GroupKind::HalfSpin { n } => ParamsJson {
            n: Some(n),
            m: None,
            rank: Some(4 * n),
            height: report.height,
        },
        _ => ParamsJson { n: None, m: None, rank: None, height: report.height },
    }
}

fn checks_json(report: &InvariantReport) -> Vec<CheckJson<'_>> {
    report
        .crosschecks
        .iter()
        .map(|c| CheckJson {
            name: &c.name,
            closed_form: &c.closed_form,
            oracle: &c.oracle,
            pass: c.pass,
        })
        .collect()
}

fn render_describe_json(report: &InvariantReport) -> String {
    let json = ReportJson {
        group: report.spec.name(),
        params: params_of(report),
        ell: report.ell,
        n_g: report.n_g,
        n_g_note: report.n_g_note.as_deref(),
        q_group: &report.q_group,
        dec_group: &report.dec_group,
        inv_dec: &report.inv_dec,
        inv_ind_order: report.inv_ind_order,
        inv_ind_presentation: &report.inv_ind_presentation,
        crosschecks: checks_json(report),
        split_note: report.split_note.as_deref(),
        trace: report.trace.as_deref(),
    };
    serde_json::to_string_pretty(&json).expect("report serializes")
}

fn render_describe_markdown(report: &InvariantReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {}\n\n", report.spec.name()));
    out.push_str("| quantity | value |\n| --- | --- |\n");
    out.push_str(&format!("| ℓ | {} |\n", report.ell));
    out.push_str(&format!("| n_G | {} |\n", report.n_g));
    out.push_str(&format!("| Q(G) | {} |\n", report.q_group));
    out.push_str(&format!("| Dec(G) | {} |\n", report.dec_group));
    out.push_str(&format!("| Inv³_dec | {} |\n", report.inv_dec));
    out.push_str(&format!(
        "| Inv³_ind | {} (order {}) |\n",
        report.inv_ind_presentation, report.inv_ind_order
    ));
    if let Some(note) = &report.split_note {
        out.push_str(&format!("\nSplitting: Inv³_norm ≅ {note}\n"));
    }
    if let Some(note) = &report.n_g_note {
        out.push_str(&format!("\nNote: {note}\n"));
    }
    out.push_str("\nCrosschecks:\n\n| name | closed form | oracle | pass |\n| --- | --- | --- | --- |\n");
    for c in &report.crosschecks {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            c.name,
            c.closed_form,
            c.oracle,
            if c.pass { "ok" } else { "FAIL" }
        ));
    }
    if let Some(trace) = &report.trace {
        out.push_str("\nTrace:\n");
        for line in trace {
            out.push_str(&format!("- {line}\n"));
        }
    }
    out
}

#[derive(Serialize)]
struct TableRowJson<'a> {
    group: String,
    n: u64,
    case: &'a str,
    ell: u64,
    n_g: u64,
    inv_dec: &'a str,
    inv_ind_order: u64,
    presentation: &'a str,
    pass: bool,
}

#[derive(Serialize)]
struct TableJson<'a> {
    table: &'a str,
    height: u64,
    rows: Vec<TableRowJson<'a>>,
    failed: usize,
}

fn render_table_json(kind: &str, height: u64, rows: &[TheoremRow]) -> String {
    let json = TableJson {
        table: kind,
        height,
        rows: rows
            .iter()
            .map(|row| TableRowJson {
                group: row.group.clone(),
                n: row.n,
                case: &row.case_label,
                ell: row.report.ell,
                n_g: row.report.n_g,
                inv_dec: &row.report.inv_dec,
                inv_ind_order: row.report.inv_ind_order,
                presentation: &row.report.inv_ind_presentation,
                pass: row.pass,
            })
            .collect(),
        failed: rows.iter().filter(|r| !r.pass).count(),
    };
    serde_json::to_string_pretty(&json).expect("table serializes")
}

fn render_table_markdown(rows: &[TheoremRow]) -> String {
    let mut out = String::new();
    out.push_str("| group | ℓ | n_G | Inv³_dec | Inv³_ind | presentation | checks |\n");
    out.push_str("| --- | --- | --- | --- | --- | --- | --- |\n");
    for row in rows {
        let ind = if row.report.inv_ind_order == 1 {
            "0".to_string()
        } else {
            format!("Z/{}Z", row.report.inv_ind_order)
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            row.group,
            row.report.ell,
            row.report.n_g,
            row.report.inv_dec,
            ind,
            row.report.inv_ind_presentation,
            if row.pass { "ok" } else { "FAIL" }
        ));
    }
    out
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    suite: &'a str,
    total: usize,
    failed: usize,
    checks: Vec<CheckJson<'a>>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    max_n: u64,
    height: u64,
    suites: Vec<SuiteJson<'a>>,
    total: usize,
    failed: usize,
}

fn render_verify_json(max_n: u64, height: u64, reports: &[SuiteReport]) -> String {
    let suites: Vec<SuiteJson> = reports
        .iter()
        .map(|r| SuiteJson {
            suite: r.suite,
            total: r.checks.len(),
            failed: r.failed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: &c.name,
                    closed_form: &c.closed_form,
                    oracle: &c.oracle,
                    pass: c.pass,
                })
                .collect(),
        })
        .collect();
    let total = reports.iter().map(|r| r.checks.len()).sum();
    let failed = reports.iter().map(|r| r.failed()).sum();
    let json = VerifyJson { max_n, height, suites, total, failed };
    serde_json::to_string_pretty(&json).expect("verify serializes")
}

fn render_verify_markdown(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for report in reports {
        out.push_str(&format!(
            "## suite {}: {} checks, {} failed\n",
            report.suite,
            report.checks.len(),
            report.failed()
        ));
        for c in report.checks.iter().filter(|c| !c.pass) {
            out.push_str(&format!(
                "- FAIL {}: expected {}, got {}\n",
                c.name, c.closed_form, c.oracle
            ));
        }
    }
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports.iter().map(|r| r.failed()).sum();
    out.push_str(&format!("\nTOTAL: {total} checks, {failed} failed\n"));
    out
}

#[derive(Serialize)]
struct RestrictJson {
    n: u64,
    source: String,
    target: String,
    rost_multiplier: u64,
    source_order: u64,
    target_order: u64,
    image_of_generator: u64,
}

fn command_describe(group: &GroupArg, height: u64, json: bool, trace: bool) -> Result<(String, i32)> {
    let spec = match *group {
        GroupArg::Sl { n, m } => GroupSpec::sl_mod_mu(n, m)?,
        GroupArg::Hspin { rank } => {
            if rank % 4 != 0 || rank < 8 {
                return Err(Error::invalid(
                    "rank must be a multiple of 4 and at least 8 (HSpin_rank with rank = 4n)",
                ));
            }
            GroupSpec::half_spin(rank / 4)?
        }
    };
    let report = invariants::report(&spec, height, trace)?;
    let text = if json {
        render_describe_json(&report)
    } else {
        render_describe_markdown(&report)
    };
    let status = if report.all_pass() { 0 } else { 3 };
    Ok((text, status))
}

fn command_table(family: &TableArg, height: u64, json: bool) -> Result<(String, i32)> {
    let (kind, rows) = match *family {
        TableArg::Sl { p, r, max_n } => {
            if r == 0 {
                return Err(Error::invalid("r must be positive"));
            }
            let m = p
                .checked_pow(r)
                .ok_or_else(|| Error::invalid("p^r overflow"))?;
            let ns: Vec<u64> = (1..)
                .map(|k| k * m)
                .take_while(|&n| n <= max_n)
                .filter(|&n| n >= 2)
                .collect();
            if ns.is_empty() {
                return Err(Error::invalid("empty range: no n <= max-n divisible by p^r"));
            }
            ("sl", invariants::theorem_table_sl(p, r, &ns, height)?)
        }
        TableArg::Hspin { min_n, max_n } => {
            if min_n < 2 || min_n > max_n {
                return Err(Error::invalid("need 2 <= min-n <= max-n"));
            }
            let ns: Vec<u64> = (min_n..=max_n).collect();
            ("hspin", invariants::theorem_table_halfspin(&ns, height)?)
        }
    };
    let text = if json {
        render_table_json(kind, height, &rows)
    } else {
        render_table_markdown(&rows)
    };
    let status = if rows.iter().all(|r| r.pass) { 0 } else { 3 };
    Ok((text, status))
}

fn command_verify(suite: SuiteArg, max_n: u64, height: u64, json: bool) -> Result<(String, i32)> {
    let reports = match suite {
        SuiteArg::All => verify::run_all(max_n, height)?,
        SuiteArg::Qtau => vec![verify::run_suite(Suite::QTau, max_n, height)?],
        SuiteArg::Ell => vec![verify::run_suite(Suite::Ell, max_n, height)?],
        SuiteArg::Ng => vec![verify::run_suite(Suite::Ng, max_n, height)?],
        SuiteArg::Typea => vec![verify::run_suite(Suite::TypeA, max_n, height)?],
        SuiteArg::HalfspinIndex => vec![verify::run_suite(Suite::HalfSpinIndex, max_n, height)?],
        SuiteArg::Tables => vec![verify::run_suite(Suite::Tables, max_n, height)?],
        SuiteArg::Restrict => vec![verify::run_suite(Suite::Restrict, max_n, height)?],
        SuiteArg::Props => vec![verify::run_suite(Suite::Props, max_n, height)?],
    };
    let failed: usize = reports.iter().map(|r| r.failed()).sum();
    let text = if json {
        render_verify_json(max_n, height, &reports)
    } else {
        render_verify_markdown(&reports)
    };
    Ok((text, if failed == 0 { 0 } else { 3 }))
}

fn command_restrict(n: u64, json: bool) -> Result<(String, i32)> {
    let source = GroupSpec::half_spin(n)?;
    let target = GroupSpec::sl_mod_mu(2 * n, 2)?;
    let desc = restrict::induced_quotient_map(&source, &target)?;
    let text = if json {
        serde_json::to_string_pretty(&RestrictJson {
            n,
            source: source.name(),
            target: target.name(),
            rost_multiplier: desc.rost_multiplier,
            source_order: desc.source_order,
            target_order: desc.target_order,
            image_of_generator: desc.image_of_generator,
        })
        .expect("restriction serializes")
    } else {
        let mut out = String::new();
        out.push_str(&format!("# {} → {}\n\n", source.name(), target.name()));
        out.push_str("| quantity | value |\n| --- | --- |\n");
        out.push_str(&format!("| Rost multiplier | {} |\n", desc.rost_multiplier));
        out.push_str(&format!("| source Inv³_ind order | {} |\n", desc.source_order));
        out.push_str(&format!("| target Inv³_ind order | {} |\n", desc.target_order));
        out.push_str(&format!("| image of generator | {} |\n", desc.image_of_generator));
        out
    };
    Ok((text, 0))
}

/// Parse and run; returns the process exit status. Output is written to
/// `out`, diagnostics to `err`.
pub fn run<W: Write, E: Write>(args: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    if cli.height < 2 {
        let _ = writeln!(err, "error: height must be at least 2");
        return 2;
    }
    let outcome = match &cli.command {
        Command::Describe { group } => command_describe(group, cli.height, cli.json, cli.trace),
        Command::Table { family } => command_table(family, cli.height, cli.json),
        Command::Verify { suite, max_n } => command_verify(*suite, *max_n, cli.height, cli.json),
        Command::Restrict { n } => command_restrict(*n, cli.json),
    };
    match outcome {
        Ok((text, status)) => {
            let _ = write!(out, "{text}");
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Entry point used by the binary.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(&args, &mut stdout.lock(), &mut stderr.lock())
}
