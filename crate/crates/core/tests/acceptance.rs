//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines always reach the output; exits nonzero on any FAIL.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use lscat_core::catalog::{self, CatalogEntry};
use lscat_core::coalgebra::divided_power_product;
use lscat_core::invariants::cup_length_oracle;
use lscat_core::{
    bar_homology, cobar_homology, collapse_check, compare_dims, cup_length, e_infinity_dims, mwgt_lower,
    verify_witness, ActionTable, AlgebraPresentation, BasicOp, CoalgebraPresentation, CofactorSpec, Element,
    GeneratorSpec, Monomial, MwgtOptions, Prime, VerifyOptions, ZClass,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_SECONDS: f64 = 10.0;
const COTOR_SECONDS_PER_ENTRY: f64 = 60.0;
const COTOR_CUTOFF: u32 = 16;
const TOR_CUTOFF: u32 = 16;
const E_INFINITY_MIN_CUTOFF: u32 = 20;
const RANDOM_TRIPLES: usize = 200;
const RNG_SEED: u64 = 0x5eed;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn entry(group: &str, prime: u32) -> CatalogEntry {
    catalog::get(group, prime).expect("catalog entry")
}

const GROUPS: [&str; 5] = ["G2", "F4", "E6", "E7", "E8"];

/// `(cup, wgt, mwgtLower)` per group, and the oracle cup length.
fn invariant_table(prime: u32, expected: [(u32, u32, u32); 5]) -> Verdict {
    let start = Instant::now();
    let mut cells = Vec::new();
    for (g, want) in GROUPS.iter().zip(expected) {
        let e = entry(g, prime);
        let r = mwgt_lower(&e.algebra, &e.action_table, &e.z_classes, MwgtOptions::default())
            .map_err(|err| format!("{g}: {err}"))?;
        let oracle = cup_length_oracle(&e.algebra).map_err(|err| err.to_string())?;
        let got = (r.cup, r.wgt, r.mwgt_lower);
        ensure(got == want, || format!("{g}: got {got:?}, expected {want:?}"))?;
        ensure(oracle == r.cup, || format!("{g}: enumerated cup length {oracle}, closed form {}", r.cup))?;
        cells.push(format!("{g} {got:?}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < TABLE_SECONDS, || format!("took {secs:.2} s, limit {TABLE_SECONDS} s"))?;
    Ok(format!("{} in {secs:.2} s", cells.join(", ")))
}

fn mu_of(a: &AlgebraPresentation, factors: &[(&str, u32)]) -> Monomial {
    a.monomial_from(factors).expect("generators exist")
}

fn witnesses() -> Verdict {
    let sq4 = BasicOp::Sq(4);
    let p1 = BasicOp::p(1);
    let valid: [(&str, u32, BasicOp, &[(&str, u32)], u32); 5] = [
        ("F4", 2, sq4, &[("x3", 3), ("x5", 1), ("x23", 1)], 7),
        ("E6", 2, sq4, &[("x3", 3), ("x5", 1), ("x9", 1), ("x17", 1), ("x23", 1)], 9),
        ("E7", 2, sq4, &[("x3", 3), ("x5", 3), ("x9", 3), ("x17", 1), ("x23", 1), ("x27", 1)], 14),
        ("E7", 3, p1, &[("x3", 1), ("x7", 1), ("x8", 2), ("x11", 1), ("x15", 1), ("x19", 1), ("x35", 1)], 12),
        (
            "E8",
            3,
            p1,
            &[("x3", 1), ("x7", 1), ("x8", 2), ("x15", 1), ("x19", 1), ("x20", 2), ("x35", 1), ("x39", 1), ("x47", 1)],
            17,
        ),
    ];
    let mut seen = Vec::new();
    for (g, p, op, mu, m) in valid {
        let e = entry(g, p);
        let (z, x) = if p == 2 { ("z11", "x15") } else { ("z23", "x27") };
        let zc = e.z_classes.iter().find(|c| c.name == z).ok_or(format!("{g}: no {z}"))?;
        let mu = mu_of(&e.algebra, mu);
        let cert = verify_witness(&e.algebra, &e.action_table, zc, op, x, &mu, m, VerifyOptions::default())
            .map_err(|err| err.to_string())?;
        ensure(cert.valid, || format!("{g} p={p}: failed {:?}", cert.failed_checks()))?;
        seen.push(format!("{g} p={p} m={m}"));
    }

    // negative controls
    let f4 = entry("F4", 2);
    let z11 = f4.z_classes.iter().find(|c| c.name == "z11").unwrap();
    let perturbed = mu_of(&f4.algebra, &[("x3", 2), ("x5", 1), ("x23", 1)]);
    let cert = verify_witness(&f4.algebra, &f4.action_table, z11, sq4, "x15", &perturbed, 7, VerifyOptions::default())
        .map_err(|err| err.to_string())?;
    ensure(!cert.valid, || "perturbed μ = x3^2 x5 x23 verified valid".into())?;

    let bare = ZClass::new("z11", 11);
    let mu = mu_of(&f4.algebra, &[("x3", 3), ("x5", 1), ("x23", 1)]);
    let cert = verify_witness(&f4.algebra, &f4.action_table, &bare, sq4, "x15", &mu, 7, VerifyOptions::default())
        .map_err(|err| err.to_string())?;
    ensure(!cert.valid && cert.check("relation") == Some(false), || "removed relation verified valid".into())?;

    let e7 = entry("E7", 3);
    let z4 = ZClass::new("z4", 4).with_relation(p1, "x8");
    let mut top = e7.algebra.top_monomial().unwrap();
    top.0[e7.algebra.index_of("x8").unwrap()] -= 1;
    let cert = verify_witness(&e7.algebra, &e7.action_table, &z4, p1, "x8", &top, 12, VerifyOptions::default())
        .map_err(|err| err.to_string())?;
    ensure(!cert.valid && cert.check("parity") == Some(false), || "even-degree target verified valid".into())?;

    Ok(format!("valid: {}; 3 negative controls invalid", seen.join(", ")))
}

fn cotor() -> Verdict {
    let mut parts = Vec::new();
    for (g, p) in [("G2", 2), ("G2", 3), ("F4", 3)] {
        let e = entry(g, p);
        let start = Instant::now();
        let r = cobar_homology(e.loop_coalgebra.as_ref().unwrap(), COTOR_CUTOFF).map_err(|err| err.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        let diffs = compare_dims(&r.dims.total_dims(), &e.expected_cotor.as_ref().unwrap().poincare_dims(COTOR_CUTOFF));
        ensure(diffs.is_empty(), || format!("{g} p={p}: {diffs:?}"))?;
        ensure(r.d_squared_zero, || format!("{g} p={p}: d∘d ≠ 0"))?;
        ensure(secs < COTOR_SECONDS_PER_ENTRY, || format!("{g} p={p}: {secs:.2} s"))?;
        parts.push(format!("{g} p={p} ({secs:.2} s)"));
    }
    let f4 = entry("F4", 2);
    let n = COTOR_CUTOFF + 1;
    let r = cobar_homology(f4.loop_coalgebra.as_ref().unwrap(), n).map_err(|err| err.to_string())?;
    let diffs = compare_dims(&r.dims.total_dims(), &f4.expected_cotor.as_ref().unwrap().poincare_dims(n));
    ensure(diffs.iter().any(|d| d.degree == 17), || format!("F4 p=2: no degree-17 difference, got {diffs:?}"))?;
    ensure(f4.is_known_discrepancy("cobar-vs-cotor").is_some(), || "F4 p=2 difference is not allow-listed".into())?;
    Ok(format!("match through {COTOR_CUTOFF}: {}; F4 p=2 FINDING at degree 17", parts.join(", ")))
}

fn tor() -> Verdict {
    let mut matched = Vec::new();
    for g in GROUPS {
        let e = entry(g, 2);
        let r = bar_homology(&e.algebra, TOR_CUTOFF).map_err(|err| err.to_string())?;
        ensure(r.d_squared_zero, || format!("{g} p=2: d∘d ≠ 0"))?;
        ensure(collapse_check(&r.dims), || format!("{g} p=2: odd classes"))?;
        if g != "F4" {
            let diffs = compare_dims(&r.dims.total_dims(), &e.loop_coalgebra.as_ref().unwrap().graded_dims(TOR_CUTOFF));
            ensure(diffs.is_empty(), || format!("{g} p=2: {diffs:?}"))?;
            matched.push(g);
        }
    }
    let mut findings = Vec::new();
    for g in GROUPS {
        let e = entry(g, 3);
        let has_truncated = e.algebra.generators().iter().any(|x| x.height.max_exponent().is_some_and(|h| h > 1));
        let r = bar_homology(&e.algebra, TOR_CUTOFF).map_err(|err| err.to_string())?;
        let collapses = collapse_check(&r.dims);
        if has_truncated {
            ensure(!collapses, || format!("{g} p=3: collapse expected to fail"))?;
            ensure(e.is_known_discrepancy("collapse").is_some(), || format!("{g} p=3: silent pass"))?;
            findings.push(g);
        } else {
            ensure(collapses, || format!("{g} p=3: odd classes"))?;
        }
    }
    Ok(format!(
        "p=2 matches through {TOR_CUTOFF} for {}, all p=2 collapse; p=3 FINDINGs for {}",
        matched.join(", "),
        findings.join(", ")
    ))
}

fn e_infinity() -> Verdict {
    let mut through = Vec::new();
    for e in catalog::all() {
        let n = E_INFINITY_MIN_CUTOFF.max(e.dimension.unwrap() + 1);
        let got = e_infinity_dims(e.expected_cotor.as_ref().unwrap(), &e.differentials, n)
            .map_err(|err| format!("{}: {err}", e.label()))?;
        let diffs = compare_dims(&got, &e.algebra.poincare_dims(n));
        ensure(diffs.is_empty(), || format!("{}: {diffs:?}", e.label()))?;
        through.push(format!("{} ({n})", e.label()));
    }
    Ok(format!("all ten entries through max(20, dim+1): {}", through.join(", ")))
}

fn sparse_element(a: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> (Element, u32) {
    let all = a.all_monomials().unwrap();
    let d = a.degree(all.choose(rng).unwrap());
    let basis = a.basis_of_degree(d);
    let p = a.prime();
    let mut e = Element::zero();
    for _ in 0..3 {
        e.add_term(p, basis.choose(rng).unwrap().clone(), rng.gen_range(1..p.value()));
    }
    (e, d)
}

/// `C(n, k) mod p` from Pascal's triangle.
fn pascal(p: u32, n: u32, k: u32) -> u32 {
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % p;
        }
        row = next;
    }
    row.get(k as usize).copied().unwrap_or(0) % p
}

fn properties() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let tops = [14, 52, 78, 133, 248];
    for e in catalog::all() {
        let a = &e.algebra;
        let p = a.prime();
        for _ in 0..RANDOM_TRIPLES {
            let (x, dx) = sparse_element(a, &mut rng);
            let (y, dy) = sparse_element(a, &mut rng);
            let (z, _) = sparse_element(a, &mut rng);
            let xy = a.multiply(&x, &y).unwrap();
            let yx = a.multiply(&y, &x).unwrap();
            ensure(xy == yx.scaled(p, p.sign(dx * dy % 2 == 1)), || format!("{}: commutativity", e.label()))?;
            let left = a.multiply(&xy, &z).unwrap();
            let right = a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap();
            ensure(left == right, || format!("{}: associativity", e.label()))?;
        }
        let top = a.top_degree().unwrap();
        let idx = GROUPS.iter().position(|g| *g == e.group).unwrap();
        ensure(top == tops[idx], || format!("{}: top degree {top}", e.label()))?;

        let report = e.action_table.validate();
        ensure(report.is_clean(), || format!("{}: {:?}", e.label(), report.violations))?;

        for r in [
            bar_homology(a, 12).map_err(|err| err.to_string())?,
            cobar_homology(e.loop_coalgebra.as_ref().unwrap(), 12).map_err(|err| err.to_string())?,
        ] {
            ensure(r.d_squared_zero, || format!("{}: d∘d ≠ 0", e.label()))?;
        }

        let inv =
            mwgt_lower(a, &e.action_table, &e.z_classes, MwgtOptions::default()).map_err(|err| err.to_string())?;
        ensure(inv.cup <= inv.wgt && inv.wgt <= inv.mwgt_lower, || format!("{}: chain", e.label()))?;
        ensure(cup_length(a).is_ok(), || format!("{}: cup length disagreement", e.label()))?;
    }

    for p in [Prime::TWO, Prime::THREE] {
        ensure(divided_power_product(p, 1, 1) == 2 % p.value(), || "γ1γ1 ≠ 2γ2".into())?;
        for n in 1..=10u32 {
            let gamma = CoalgebraPresentation::new(p, vec![CofactorSpec::divided("a2", 2)]).unwrap();
            let trunc = CoalgebraPresentation::new(p, vec![CofactorSpec::truncated("a2", 2, n + 1)]).unwrap();
            for (c, binomial) in [(gamma, false), (trunc, true)] {
                for (l, _, k) in c.coproduct(&Monomial(vec![n])) {
                    let want = if binomial { pascal(p.value(), n, l.0[0]) } else { 1 };
                    ensure(k == want, || format!("Δ of degree-{n} class at p={p}"))?;
                }
            }
        }
    }

    // an unstable-axiom violation and a nonzero β² are both caught
    let g2 = entry("G2", 2);
    let mut bad = ActionTable::new(g2.algebra.clone()).unwrap();
    bad.set("x3", BasicOp::Sq(3), lscat_core::ActionValue::Known(Element::zero())).unwrap();
    ensure(bad.validate().violations.iter().any(|v| v.kind == "unstable axiom"), || "Sq^3 x3 = 0 not flagged".into())?;
    let small = AlgebraPresentation::new(
        Prime::THREE,
        vec![GeneratorSpec::exterior("x3", 3), GeneratorSpec::truncated("y4", 4, 3), GeneratorSpec::exterior("x5", 5)],
    )
    .unwrap();
    let mut bad = ActionTable::new(small).unwrap();
    bad.set_generator("x3", BasicOp::BOCKSTEIN, "y4").unwrap();
    bad.set_generator("y4", BasicOp::BOCKSTEIN, "x5").unwrap();
    ensure(bad.validate().violations.iter().any(|v| v.kind == "bockstein"), || "β² ≠ 0 not flagged".into())?;

    Ok(format!("{RANDOM_TRIPLES} triples per entry, divided powers, d∘d = 0, clean tables, chain, tops {tops:?}"))
}

fn empty_degrees() -> Verdict {
    let cases = [("F4", 2, 48), ("E6", 2, 74), ("E7", 2, 129), ("E7", 3, 129), ("E8", 3, 244)];
    for (g, p, d) in cases {
        let a = entry(g, p).algebra;
        let basis = a.basis_of_degree(d);
        ensure(basis.is_empty(), || format!("{g} p={p}: H^{d} contains {}", a.format_monomial(&basis[0])))?;
        // the enumeration is not vacuous: neighbouring degrees are occupied
        ensure(!a.basis_of_degree(d - 1).is_empty() || !a.basis_of_degree(d + 1).is_empty(), || {
            format!("{g} p={p}: degrees around {d} are empty too")
        })?;
    }
    Ok(cases.iter().map(|(g, p, d)| format!("H^{d}({g};F{p}) = 0")).collect::<Vec<_>>().join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("mod-2 invariant table", || {
            invariant_table(2, [(4, 4, 4), (6, 6, 8), (8, 8, 10), (13, 13, 15), (32, 32, 32)])
        }),
        ("mod-3 invariant table", || {
            invariant_table(3, [(2, 2, 2), (6, 8, 8), (8, 10, 10), (9, 11, 13), (12, 16, 18)])
        }),
        ("witness certificates", witnesses),
        ("cotor cross-check", cotor),
        ("tor cross-check", tor),
        ("E-infinity reconstruction", e_infinity),
        ("property suites", properties),
        ("degree vanishing", empty_degrees),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS [{}] {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL [{}] {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
