use std::fmt;

use serde::Serialize;

use super::CatalogEntry;
use crate::algebra::Height;
use crate::coalgebra::tor_model;
use crate::complex::{bar_homology, cobar_homology, collapse_check, compare_dims, DimDiscrepancy};
use crate::error::Error;
use crate::invariants::{mwgt_lower, MwgtOptions, StrictContext};
use crate::spectral::{apply_differentials, check_differential};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Finding,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Finding => "FINDING",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub prime: u32,
    pub cutoff: u32,
    pub outcomes: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn has_failures(&self) -> bool {
        self.outcomes.iter().any(|o| o.status == CheckStatus::Fail)
    }

    pub fn outcome(&self, check: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.check == check)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.outcomes.iter().filter(|o| o.status == status).count()
    }
}

struct Recorder<'a> {
    entry: &'a CatalogEntry,
    outcomes: Vec<CheckOutcome>,
}

impl Recorder<'_> {
    /// Records a check; a failure becomes a finding when the entry lists it
    /// as a known discrepancy.
    fn record(&mut self, check: &str, ok: bool, detail: String) {
        let status = match (ok, self.entry.is_known_discrepancy(check)) {
            (true, _) => CheckStatus::Pass,
            (false, Some(_)) => CheckStatus::Finding,
            (false, None) => CheckStatus::Fail,
        };
        let detail = match (status, self.entry.is_known_discrepancy(check)) {
            (CheckStatus::Finding, Some(k)) => format!("{detail}. {}", k.note),
            _ => detail,
        };
        self.outcomes.push(CheckOutcome { check: check.to_string(), status, detail });
    }

    fn skip(&mut self, check: &str, why: &str) {
        self.outcomes.push(CheckOutcome {
            check: check.to_string(),
            status: CheckStatus::Skipped,
            detail: why.to_string(),
        });
    }

    fn error(&mut self, check: &str, e: Error) {
        self.outcomes.push(CheckOutcome { check: check.to_string(), status: CheckStatus::Fail, detail: e.to_string() });
    }
}

fn describe(diffs: &[DimDiscrepancy]) -> String {
    if diffs.is_empty() {
        return "dimensions agree".into();
    }
    diffs
        .iter()
        .map(|d| format!("degree {}: computed {}, expected {}", d.degree, d.computed, d.expected))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Runs every cross-check that ties the stored data to computation, with
/// bar and cobar homology taken through total degree `cutoff`.
pub fn verify_entry(entry: &CatalogEntry, cutoff: u32) -> VerificationReport {
    let mut r = Recorder { entry, outcomes: Vec::new() };
    let a = &entry.algebra;

    // (a) top degree
    match (entry.dimension, a.top_degree()) {
        (Some(dim), Ok(top)) => r.record("top-degree", top == dim, format!("top degree {top}, dimension {dim}")),
        (None, Ok(top)) => r.skip("top-degree", &format!("no dimension given; top degree {top}")),
        (_, Err(e)) => r.error("top-degree", e),
    }

    // (b) action table
    match entry.action_table.autofill() {
        Ok(_) => {
            let report = entry.action_table.validate();
            let detail = if report.is_clean() {
                "no violations".to_string()
            } else {
                report.violations.iter().map(|v| format!("{}: {}", v.kind, v.detail)).collect::<Vec<_>>().join("; ")
            };
            r.record("action-table", report.is_clean(), detail);
        }
        Err(e) => r.error("action-table", e),
    }

    // (c) bar homology against the loop-space coalgebra
    match bar_homology(a, cutoff) {
        Ok(bar) => {
            r.record(
                "bar-complex",
                bar.d_squared_zero && bar.euler_consistent,
                format!("d∘d = 0: {}, Euler characteristics consistent: {}", bar.d_squared_zero, bar.euler_consistent),
            );
            let dims = bar.dims.total_dims();
            match tor_model(a) {
                Ok(model) => {
                    let diffs = compare_dims(&dims, &model.graded_dims(cutoff));
                    r.record("bar-vs-tor-model", diffs.is_empty(), describe(&diffs));
                }
                Err(e) => r.error("bar-vs-tor-model", e),
            }
            match &entry.loop_coalgebra {
                Some(loop_coalgebra) => {
                    let diffs = compare_dims(&dims, &loop_coalgebra.graded_dims(cutoff));
                    r.record("bar-vs-loop", diffs.is_empty(), describe(&diffs));
                }
                None => r.skip("bar-vs-loop", "no loop-space coalgebra given"),
            }
            let odd: Vec<String> = bar
                .dims
                .entries()
                .filter(|&(s, i, _)| bar.dims.total_degree(s, i) % 2 == 1)
                .map(|(s, i, d)| format!("dim {d} at s={s}, degree {}", bar.dims.total_degree(s, i)))
                .collect();
            r.record(
                "collapse",
                collapse_check(&bar.dims),
                if odd.is_empty() {
                    "all classes in even degrees".into()
                } else {
                    format!("odd classes: {}", odd.join(", "))
                },
            );
        }
        Err(e) => r.error("bar-complex", e),
    }

    // (d) cobar homology against the cotor presentation
    match (&entry.loop_coalgebra, &entry.expected_cotor) {
        (Some(c), Some(cotor)) => match cobar_homology(c, cutoff) {
            Ok(cobar) => {
                r.record(
                    "cobar-complex",
                    cobar.d_squared_zero && cobar.euler_consistent,
                    format!(
                        "d∘d = 0: {}, Euler characteristics consistent: {}",
                        cobar.d_squared_zero, cobar.euler_consistent
                    ),
                );
                let diffs = compare_dims(&cobar.dims.total_dims(), &cotor.poincare_dims(cutoff));
                r.record("cobar-vs-cotor", diffs.is_empty(), describe(&diffs));
            }
            Err(e) => r.error("cobar-complex", e),
        },
        _ => r.skip("cobar-vs-cotor", "no loop-space coalgebra or cotor given"),
    }

    // (e) differentials reproduce the algebra
    if let Some(cotor) = &entry.expected_cotor {
        let mut issues = Vec::new();
        for d in &entry.differentials {
            match check_differential(cotor, d) {
                Ok(found) => issues.extend(found),
                Err(e) => issues.push(e.to_string()),
            }
        }
        r.record(
            "differential-consistency",
            issues.is_empty(),
            if issues.is_empty() {
                let checked: Vec<String> = entry.differentials.iter().map(|d| d.describe()).collect();
                format!("degrees and filtrations consistent for {}", checked.join(", "))
            } else {
                issues.join("; ")
            },
        );
        let inferred: Vec<String> = entry.differentials.iter().filter(|d| d.inferred).map(|d| d.describe()).collect();
        if !inferred.is_empty() {
            r.record("inferred-differential", false, format!("uses {}", inferred.join(", ")));
        }
        let through = cutoff.max(entry.dimension.unwrap_or(0) + 1);
        match apply_differentials(cotor, &entry.differentials) {
            Ok(einf) => {
                let diffs = compare_dims(&einf.poincare_dims(through), &a.poincare_dims(through));
                r.record("e-infinity", diffs.is_empty(), format!("through degree {through}: {}", describe(&diffs)));
            }
            Err(e) => r.error("e-infinity", e),
        }
    } else {
        r.skip("e-infinity", "no cotor given");
    }

    // (f) invariants
    let strict = entry.expected_cotor.as_ref().map(|e2| StrictContext { e2, differentials: &entry.differentials });
    match mwgt_lower(a, &entry.action_table, &entry.z_classes, MwgtOptions::default()) {
        Ok(report) => {
            let got = format!("cup {}, wgt {}, Mwgt ≥ {}", report.cup, report.wgt, report.mwgt_lower);
            match &entry.expected {
                Some(exp) => {
                    let ok = report.cup == exp.cup && report.wgt == exp.wgt && report.mwgt_lower == exp.mwgt_lower;
                    r.record(
                        "invariants",
                        ok,
                        format!("{got}; expected cup {}, wgt {}, Mwgt ≥ {}", exp.cup, exp.wgt, exp.mwgt_lower),
                    );
                    let witness_ok = match (&exp.witness, &report.certificate) {
                        (None, None) => true,
                        (Some(w), Some(c)) => {
                            let mu = a.monomial_from(&w.mu.iter().map(|(g, e)| (g.as_str(), *e)).collect::<Vec<_>>());
                            c.z == w.z
                                && c.x == w.x
                                && c.op == w.op.to_string()
                                && c.m == w.m
                                && mu.is_ok_and(|mu| mu == c.mu_exponents)
                        }
                        _ => false,
                    };
                    let detail = match &report.certificate {
                        Some(c) => format!("{} {} = {}, μ = {}, m = {}", c.op, c.z, c.x, c.mu, c.m),
                        None => {
                            format!("no certificate: {}", report.fallback_reason.as_deref().unwrap_or("no candidates"))
                        }
                    };
                    r.record("witness", witness_ok, detail);
                }
                None => r.skip("invariants", &got),
            }
            if let Some(ctx) = strict {
                let options = MwgtOptions { strict: Some(ctx), exploratory: false };
                match mwgt_lower(a, &entry.action_table, &entry.z_classes, options) {
                    Ok(s) => r.record(
                        "strict-survival",
                        s.mwgt_lower == report.mwgt_lower,
                        format!("bound with the survival check: {}", s.mwgt_lower),
                    ),
                    Err(e) => r.error("strict-survival", e),
                }
            }
        }
        Err(e) => r.error("invariants", e),
    }

    // (g) internal consistency of the stored data
    let mut problems = Vec::new();
    if let Some(cotor) = &entry.expected_cotor {
        for z in &entry.z_classes {
            match cotor.generator(&z.name) {
                Ok(g) if g.degree == z.degree && g.height == Height::Finite(2) => {}
                Ok(_) => problems.push(format!("{} does not match its cotor generator", z.name)),
                Err(_) => problems.push(format!("{} is not a cotor generator", z.name)),
            }
            for rel in &z.relations {
                if cotor.generator(&rel.target).is_err() {
                    problems.push(format!("{} {} targets unknown {}", rel.op, z.name, rel.target));
                }
                let shift = rel.op.shift(entry.prime);
                if let Ok(t) = a.generator(&rel.target) {
                    if z.degree + shift != t.degree {
                        problems.push(format!("{} {} = {} has inconsistent degrees", rel.op, z.name, rel.target));
                    }
                }
            }
        }
        for d in &entry.differentials {
            if !entry.z_classes.iter().any(|z| z.name == d.source) {
                problems.push(format!("{} has a source that is not a z-class", d.describe()));
            }
            if let Ok((g, k)) = d.target_power() {
                if a.generator(g).ok().map(|g| g.height) != Some(Height::Finite(k)) {
                    problems.push(format!("{} does not match the height of {g}", d.describe()));
                }
            }
        }
    }
    r.record(
        "structure",
        problems.is_empty(),
        if problems.is_empty() {
            "z-classes, relations and differentials are consistent".into()
        } else {
            problems.join("; ")
        },
    );

    VerificationReport { group: entry.group.clone(), prime: entry.prime.value(), cutoff, outcomes: r.outcomes }
}
