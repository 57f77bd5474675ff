use std::fmt;
use std::fs;

use anyhow::{Context, Result};
use log::{debug, info};
use lscat_core::catalog::{self, expected_tables, verify_entry, CheckOutcome, CheckStatus, VerificationReport};
use lscat_core::coalgebra::tor_model;
use lscat_core::complex::DimDiscrepancy;
use lscat_core::{
    bar_homology, cobar_homology, collapse_check, compare_dims, mwgt_lower, schema, CatalogEntry, Group,
    HomologyReport, InvariantReport, MwgtOptions, StrictContext,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Cli, Command, Format, Mode, Source, VerifySelection};
use crate::table::Table;

/// Text to print and whether a check failed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub failed: bool,
}

/// A problem with the invocation or its input rather than with the data.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Invariants(source) => invariants(cli, &load(source)?),
        Command::Homology { mode, source } => homology(cli, *mode, &load(source)?),
        Command::Verify(selection) => verify(cli, selection),
        Command::Report => report(cli),
        Command::Export(sel) => {
            let entry = catalog::get(&sel.group.to_string(), sel.prime)?;
            let mut output = schema::to_json(&entry)?;
            output.push('\n');
            Ok(Outcome { output, failed: false })
        }
    }
}

fn load(source: &Source) -> Result<CatalogEntry> {
    match (&source.input, source.group, source.prime) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
            schema::from_json(&text).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
        }
        (None, Some(group), Some(prime)) => Ok(catalog::get(&group.to_string(), prime)?),
        _ => Err(Usage("select an entry with --group and --prime, or pass --input".into()).into()),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// The single computation behind `invariants` and `report`.
pub fn compute_invariants(entry: &CatalogEntry, strict: bool, exploratory: bool) -> Result<InvariantReport> {
    let strict = match (strict, &entry.expected_cotor) {
        (false, _) => None,
        (true, Some(e2)) => Some(StrictContext { e2, differentials: &entry.differentials }),
        (true, None) => return Err(Usage(format!("--strict needs a cotor presentation for {}", entry.label())).into()),
    };
    let report = mwgt_lower(&entry.algebra, &entry.action_table, &entry.z_classes, MwgtOptions { strict, exploratory })
        .with_context(|| format!("computing invariants of {}", entry.label()))?;
    debug!("{}: {} rejected candidates", entry.label(), report.rejected.len());
    Ok(report)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct InvariantsOutput<'a> {
    group: &'a str,
    prime: u32,
    #[serde(flatten)]
    report: &'a InvariantReport,
}

fn invariants(cli: &Cli, entry: &CatalogEntry) -> Result<Outcome> {
    info!("invariants of {}", entry.label());
    let report = compute_invariants(entry, cli.strict, cli.exploratory)?;
    let witness = report.certificate.as_ref().map(|c| format!("{}({}) = {}, μ = {}", c.op, c.z, c.x, c.mu));
    let output = match cli.format {
        Format::Json => {
            to_json(&InvariantsOutput { group: &entry.group, prime: entry.prime.value(), report: &report })?
        }
        Format::Csv | Format::Markdown => {
            let mut t = Table::new(["group", "prime", "cup", "wgt", "mwgtLower", "witness", "m"]);
            t.push([
                entry.group.clone(),
                entry.prime.to_string(),
                report.cup.to_string(),
                report.wgt.to_string(),
                report.mwgt_lower.to_string(),
                witness.clone().unwrap_or_default(),
                report.certificate.as_ref().map(|c| c.m.to_string()).unwrap_or_default(),
            ]);
            let mut out = t.render(cli.format)?;
            if let (Some(c), Format::Markdown) = (&report.certificate, cli.format) {
                let mut checks = Table::new(["check", "result", "detail"]).titled("certificate checks");
                for check in &c.checks {
                    checks.push([check.name, if check.passed { "PASS" } else { "FAIL" }, check.detail.as_str()]);
                }
                out.push('\n');
                out.push_str(&checks.render(cli.format)?);
            }
            out
        }
        Format::Text => {
            let mut out =
                format!("{}: cup={} wgt={} mwgtLower={}\n", entry.label(), report.cup, report.wgt, report.mwgt_lower);
            match &report.certificate {
                Some(c) => {
                    out.push_str(&format!(
                        "certificate: {} at level m={} gives Mwgt >= {}\n",
                        witness.unwrap_or_default(),
                        c.m,
                        c.bound
                    ));
                    for check in &c.checks {
                        out.push_str(&format!(
                            "  {:<4}  {:<18}  {}\n",
                            if check.passed { "PASS" } else { "FAIL" },
                            check.name,
                            check.detail
                        ));
                    }
                }
                None => out.push_str(&format!(
                    "no certificate: {}\n",
                    report.fallback_reason.as_deref().unwrap_or("no candidates")
                )),
            }
            if !report.rejected.is_empty() {
                out.push_str(&format!("rejected candidates: {}\n", report.rejected.len()));
            }
            if let Some(x) = &report.exploratory {
                out.push_str(&format!(
                    "exploratory (not certified): checks pass through m={}, suggesting Mwgt >= {}{}\n",
                    x.m,
                    x.bound,
                    if x.capped { " (scan cap reached)" } else { "" }
                ));
            }
            out
        }
    };
    Ok(Outcome { output, failed: false })
}

fn comparison(entry: &CatalogEntry, check: &str, diffs: &[DimDiscrepancy]) -> CheckOutcome {
    let detail = if diffs.is_empty() {
        "dimensions agree".to_string()
    } else {
        diffs
            .iter()
            .map(|d| format!("degree {}: computed {}, expected {}", d.degree, d.computed, d.expected))
            .collect::<Vec<_>>()
            .join("; ")
    };
    status_of(entry, check, diffs.is_empty(), detail)
}

fn status_of(entry: &CatalogEntry, check: &str, ok: bool, detail: String) -> CheckOutcome {
    let (status, detail) = match (ok, entry.is_known_discrepancy(check)) {
        (true, _) => (CheckStatus::Pass, detail),
        (false, Some(k)) => (CheckStatus::Finding, format!("{detail}. {}", k.note)),
        (false, None) => (CheckStatus::Fail, detail),
    };
    CheckOutcome { check: check.to_string(), status, detail }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BigradedEntry {
    s: u32,
    internal: u32,
    total: u32,
    dim: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct HomologyOutput<'a> {
    group: &'a str,
    prime: u32,
    mode: &'static str,
    cutoff: u32,
    d_squared_zero: bool,
    euler_consistent: bool,
    bigraded: Vec<BigradedEntry>,
    total_dims: Vec<usize>,
    expected: Vec<(&'static str, Vec<usize>)>,
    checks: Vec<CheckOutcome>,
}

fn homology(cli: &Cli, mode: Mode, entry: &CatalogEntry) -> Result<Outcome> {
    let n = cli.max_degree;
    info!("{} homology of {} through degree {n}", if mode == Mode::Tor { "bar" } else { "cobar" }, entry.label());
    let mut expected: Vec<(&'static str, Vec<usize>)> = Vec::new();
    let mut checks = Vec::new();
    let (mode_name, report): (&'static str, HomologyReport) = match mode {
        Mode::Tor => {
            let bar = bar_homology(&entry.algebra, n)?;
            let dims = bar.dims.total_dims();
            let model = tor_model(&entry.algebra)?.graded_dims(n);
            checks.push(comparison(entry, "bar-vs-tor-model", &compare_dims(&dims, &model)));
            expected.push(("torModel", model));
            if let Some(c) = &entry.loop_coalgebra {
                let loop_dims = c.graded_dims(n);
                checks.push(comparison(entry, "bar-vs-loop", &compare_dims(&dims, &loop_dims)));
                expected.push(("loopCoalgebra", loop_dims));
            }
            let collapse = collapse_check(&bar.dims);
            checks.push(status_of(
                entry,
                "collapse",
                collapse,
                if collapse { "all classes in even degrees".into() } else { "classes in odd total degree".into() },
            ));
            ("tor", bar)
        }
        Mode::Cotor => {
            let coalgebra = match &entry.loop_coalgebra {
                Some(c) => c.clone(),
                None => tor_model(&entry.algebra)?,
            };
            let cobar = cobar_homology(&coalgebra, n)?;
            if let Some(cotor) = &entry.expected_cotor {
                let cotor_dims = cotor.poincare_dims(n);
                checks.push(comparison(entry, "cobar-vs-cotor", &compare_dims(&cobar.dims.total_dims(), &cotor_dims)));
                expected.push(("cotor", cotor_dims));
            }
            ("cotor", cobar)
        }
    };
    checks.insert(
        0,
        status_of(
            entry,
            "complex",
            report.d_squared_zero && report.euler_consistent,
            format!(
                "d∘d = 0: {}, Euler characteristics consistent: {}",
                report.d_squared_zero, report.euler_consistent
            ),
        ),
    );
    let failed = checks.iter().any(|c| c.status == CheckStatus::Fail);
    let dims = report.dims.total_dims();
    let output = HomologyOutput {
        group: &entry.group,
        prime: entry.prime.value(),
        mode: mode_name,
        cutoff: n,
        d_squared_zero: report.d_squared_zero,
        euler_consistent: report.euler_consistent,
        bigraded: report
            .dims
            .entries()
            .map(|(s, internal, dim)| BigradedEntry { s, internal, total: report.dims.total_degree(s, internal), dim })
            .collect(),
        total_dims: dims.clone(),
        expected,
        checks,
    };
    let text = match cli.format {
        Format::Json => to_json(&output)?,
        format => {
            let mut headers = vec!["degree".to_string(), "computed".to_string()];
            headers.extend(output.expected.iter().map(|(name, _)| name.to_string()));
            let mut t = Table::new(headers).titled(format!("{} {} through degree {n}", entry.label(), mode_name));
            for (d, c) in dims.iter().enumerate() {
                let mut row = vec![d.to_string(), c.to_string()];
                row.extend(output.expected.iter().map(|(_, e)| e[d].to_string()));
                t.push(row);
            }
            let mut out = t.render(format)?;
            out.push('\n');
            out.push_str(&checks_table(&output.checks).render(format)?);
            out
        }
    };
    Ok(Outcome { output: text, failed })
}

fn checks_table(checks: &[CheckOutcome]) -> Table {
    let mut t = Table::new(["check", "status", "detail"]);
    for c in checks {
        t.push([c.check.clone(), c.status.to_string(), c.detail.clone()]);
    }
    t
}

fn verify(cli: &Cli, selection: &VerifySelection) -> Result<Outcome> {
    let entries: Vec<CatalogEntry> = match &selection.input {
        Some(path) => vec![load(&Source { group: None, prime: None, input: Some(path.clone()) })?],
        None => catalog::all()
            .into_iter()
            .filter(|e| selection.all || selection.group.is_none_or(|g| e.group == g.to_string()))
            .filter(|e| selection.all || selection.prime.is_none_or(|p| e.prime.value() == p))
            .collect(),
    };
    let n = cli.max_degree;
    let reports: Vec<VerificationReport> = entries
        .par_iter()
        .map(|e| {
            info!("verifying {} through degree {n}", e.label());
            verify_entry(e, n)
        })
        .collect();
    let failed = reports.iter().any(VerificationReport::has_failures);
    let count = |s: CheckStatus| reports.iter().map(|r| r.count(s)).sum::<usize>();
    let summary = format!(
        "{} entries: {} PASS, {} FINDING, {} FAIL, {} SKIP",
        reports.len(),
        count(CheckStatus::Pass),
        count(CheckStatus::Finding),
        count(CheckStatus::Fail),
        count(CheckStatus::Skipped)
    );
    let output = match cli.format {
        Format::Json => to_json(&reports)?,
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&format!("{} p={} (through degree {})\n", r.group, r.prime, r.cutoff));
                for o in &r.outcomes {
                    out.push_str(&format!("  {:<7}  {:<24}  {}\n", o.status.to_string(), o.check, o.detail));
                }
            }
            out.push_str(&summary);
            out.push('\n');
            out
        }
        format => {
            let mut t = Table::new(["group", "prime", "check", "status", "detail"]);
            for r in &reports {
                for o in &r.outcomes {
                    t.push([
                        r.group.clone(),
                        r.prime.to_string(),
                        o.check.clone(),
                        o.status.to_string(),
                        o.detail.clone(),
                    ]);
                }
            }
            t.render(format)?
        }
    };
    Ok(Outcome { output, failed })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Mod2Cells {
    group: Group,
    cup: u32,
    wgt: u32,
    mwgt_lower: u32,
    published_wgt: u32,
    published_mwgt_lower: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Mod3Cells {
    group: Group,
    wgt_minus_cup: u32,
    mwgt_minus_wgt_mod2: u32,
    mwgt_minus_wgt_mod3: u32,
    published_wgt_minus_cup: u32,
    published_mwgt_minus_wgt_mod2: u32,
    published_mwgt_minus_wgt_mod3: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EntryReport {
    group: String,
    prime: u32,
    #[serde(flatten)]
    report: InvariantReport,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportOutput {
    mod2: Vec<Mod2Cells>,
    mod3: Vec<Mod3Cells>,
    matches_published: bool,
    entries: Vec<EntryReport>,
}

fn report(cli: &Cli) -> Result<Outcome> {
    let entries = catalog::all();
    let reports: Vec<InvariantReport> =
        entries.par_iter().map(|e| compute_invariants(e, cli.strict, cli.exploratory)).collect::<Result<_>>()?;
    let find = |g: Group, p: u32| {
        entries
            .iter()
            .zip(&reports)
            .find(|(e, _)| e.group == g.to_string() && e.prime.value() == p)
            .map(|(_, r)| r)
            .with_context(|| format!("catalog has no entry for {g} at p = {p}"))
    };
    let published = expected_tables();
    let mut mod2 = Vec::new();
    for row in &published.mod2 {
        let r = find(row.group, 2)?;
        mod2.push(Mod2Cells {
            group: row.group,
            cup: r.cup,
            wgt: r.wgt,
            mwgt_lower: r.mwgt_lower,
            published_wgt: row.wgt,
            published_mwgt_lower: row.mwgt_lower,
        });
    }
    let mut mod3 = Vec::new();
    for row in &published.mod3 {
        let (r2, r3) = (find(row.group, 2)?, find(row.group, 3)?);
        mod3.push(Mod3Cells {
            group: row.group,
            wgt_minus_cup: r3.wgt - r3.cup,
            mwgt_minus_wgt_mod2: r2.mwgt_lower - r2.wgt,
            mwgt_minus_wgt_mod3: r3.mwgt_lower - r3.wgt,
            published_wgt_minus_cup: row.wgt_minus_cup,
            published_mwgt_minus_wgt_mod2: row.mwgt_minus_wgt_mod2,
            published_mwgt_minus_wgt_mod3: row.mwgt_minus_wgt_mod3,
        });
    }
    let matches_published = mod2.iter().all(|r| r.wgt == r.published_wgt && r.mwgt_lower == r.published_mwgt_lower)
        && mod3.iter().all(|r| {
            r.wgt_minus_cup == r.published_wgt_minus_cup
                && r.mwgt_minus_wgt_mod2 == r.published_mwgt_minus_wgt_mod2
                && r.mwgt_minus_wgt_mod3 == r.published_mwgt_minus_wgt_mod3
        });
    let output = match cli.format {
        Format::Json => to_json(&ReportOutput {
            mod2,
            mod3,
            matches_published,
            entries: entries
                .iter()
                .zip(reports)
                .map(|(e, report)| EntryReport { group: e.group.clone(), prime: e.prime.value(), report })
                .collect(),
        })?,
        format => {
            let ge = |v: u32| format!("≥{v}");
            let mut t2 = Table::new(["group", "cup", "wgt", "Mwgt", "published wgt", "published Mwgt"]).titled("mod 2");
            for r in &mod2 {
                t2.push([
                    r.group.to_string(),
                    r.cup.to_string(),
                    r.wgt.to_string(),
                    ge(r.mwgt_lower),
                    r.published_wgt.to_string(),
                    ge(r.published_mwgt_lower),
                ]);
            }
            let mut t3 = Table::new([
                "group",
                "wgt-cup (p=3)",
                "Mwgt-wgt (p=2)",
                "Mwgt-wgt (p=3)",
                "published wgt-cup",
                "published Mwgt-wgt (p=2)",
                "published Mwgt-wgt (p=3)",
            ])
            .titled("differences");
            for r in &mod3 {
                t3.push([
                    r.group.to_string(),
                    r.wgt_minus_cup.to_string(),
                    ge(r.mwgt_minus_wgt_mod2),
                    ge(r.mwgt_minus_wgt_mod3),
                    r.published_wgt_minus_cup.to_string(),
                    ge(r.published_mwgt_minus_wgt_mod2),
                    ge(r.published_mwgt_minus_wgt_mod3),
                ]);
            }
            let mut out = t2.render(format)?;
            out.push('\n');
            out.push_str(&t3.render(format)?);
            if format != Format::Csv {
                out.push_str(if matches_published {
                    "\nall values match the published tables\n"
                } else {
                    "\nsome values differ from the published tables\n"
                });
            }
            out
        }
    };
    Ok(Outcome { output, failed: !matches_published })
}
