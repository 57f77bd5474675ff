//! Cup length, filtration weight and certified lower bounds for the module
//! category weight.
//!
//! A lower bound `Mwgt ≥ m + 1` is certified by a witness: a class `z` of
//! the loop-space cotor with a listed relation `op(z) = x`, and a monomial
//! `μ` such that in the level-`m` projective-space model the product `z·μ`
//! survives, `op(z·μ) = x·μ ≠ 0`, and no Steenrod-equivariant retraction
//! can reproduce that relation because `deg(z·μ)` is empty in `A`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::error::Error;
use crate::spectral::DifferentialSpec;
use crate::steenrod::{ActionTable, BasicOp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZRelation {
    pub op: BasicOp,
    pub target: String,
}

/// A cotor class supporting a differential, with the Steenrod relations it
/// is known to satisfy. Operations not listed are unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZClass {
    pub name: String,
    pub degree: u32,
    pub weight: u32,
    pub relations: Vec<ZRelation>,
}

impl ZClass {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        ZClass { name: name.into(), degree, weight: 1, relations: Vec::new() }
    }

    pub fn with_relation(mut self, op: BasicOp, target: impl Into<String>) -> Self {
        self.relations.push(ZRelation { op, target: target.into() });
        self
    }

    pub fn relation_target(&self, op: BasicOp) -> Option<&str> {
        self.relations.iter().find(|r| r.op == op).map(|r| r.target.as_str())
    }
}

/// `Σ (height − 1)` over the generators.
fn cup_length_formula(a: &AlgebraPresentation) -> Result<u32, Error> {
    a.generators().iter().map(|g| g.height.max_exponent().ok_or_else(|| Error::InfiniteHeight(g.name.clone()))).sum()
}

/// Largest exponent sum over every nonzero monomial, by enumeration.
pub fn cup_length_oracle(a: &AlgebraPresentation) -> Result<u32, Error> {
    Ok(a.all_monomials()?.iter().map(Monomial::length).max().unwrap_or(0))
}

/// Longest nonzero product of positive-degree classes. The closed form is
/// checked against enumeration.
pub fn cup_length(a: &AlgebraPresentation) -> Result<u32, Error> {
    let formula = cup_length_formula(a)?;
    let oracle = cup_length_oracle(a)?;
    if formula != oracle {
        return Err(Error::CupLengthDisagreement { formula, oracle });
    }
    Ok(formula)
}

/// Largest filtration weight of a nonzero monomial.
pub fn wgt(a: &AlgebraPresentation) -> Result<u32, Error> {
    Ok(a.weight(&a.top_monomial()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCandidate {
    pub z: String,
    pub op: BasicOp,
    pub x: String,
    pub mu: Monomial,
}

/// Candidates `(z, op, x, μ)` with `x·μ` the top monomial, one per listed
/// relation whose target is a generator of `a`. When there are none the
/// second component explains why.
pub fn find_witness_candidates(
    a: &AlgebraPresentation,
    zs: &[ZClass],
) -> Result<(Vec<WitnessCandidate>, Option<String>), Error> {
    let top = a.top_monomial()?;
    let mut out = Vec::new();
    for z in zs {
        for r in &z.relations {
            let Some(idx) = a.index_of(&r.target) else { continue };
            let mut mu = top.clone();
            mu.0[idx] -= 1;
            out.push(WitnessCandidate { z: z.name.clone(), op: r.op, x: r.target.clone(), mu });
        }
    }
    if !out.is_empty() {
        return Ok((out, None));
    }
    let reason = if zs.is_empty() {
        "no z-classes: the cotor has no classes supporting differentials".to_string()
    } else {
        let max_x = a.generators().iter().map(|g| g.degree).max().unwrap_or(0);
        let min_z = zs.iter().map(|z| z.degree).min().unwrap_or(0);
        if max_x < min_z {
            format!(
                "degree screening: the largest generator degree {max_x} is below the smallest z-class degree {min_z}, so no operation on a z-class can land on a generator"
            )
        } else {
            "no listed z-relation targets a generator of the algebra".to_string()
        }
    };
    Ok((out, Some(reason)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessCertificate {
    pub z: String,
    pub op: String,
    pub x: String,
    pub mu: String,
    pub mu_exponents: Monomial,
    pub m: u32,
    pub checks: Vec<Check>,
    pub valid: bool,
    pub bound: u32,
}

impl WitnessCertificate {
    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

/// Data for the optional check that `z·μ` is not killed by a differential
/// before level `m`.
#[derive(Clone, Copy, Debug)]
pub struct StrictContext<'a> {
    pub e2: &'a AlgebraPresentation,
    pub differentials: &'a [DifferentialSpec],
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions<'a> {
    pub strict: Option<StrictContext<'a>>,
}

/// Evaluates every check of a witness at level `m`.
#[allow(clippy::too_many_arguments)]
pub fn verify_witness(
    a: &AlgebraPresentation,
    table: &ActionTable,
    z: &ZClass,
    op: BasicOp,
    x: &str,
    mu: &Monomial,
    m: u32,
    options: VerifyOptions<'_>,
) -> Result<WitnessCertificate, Error> {
    let p = a.prime();
    let x_gen = a.generator(x)?;
    let x_mono = a.generator_monomial(x)?;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| checks.push(Check { name, passed, detail });

    let listed = z.relation_target(op) == Some(x);
    push("relation", listed, format!("{op} {} = {x} is {}listed", z.name, if listed { "" } else { "not " }));

    let shift = op.shift(p);
    push(
        "degree",
        z.degree + shift == x_gen.degree,
        format!("|{}| + {shift} = {}, |{x}| = {}", z.name, z.degree + shift, x_gen.degree),
    );

    let mu_nonzero = a.is_nonzero(mu);
    let w_mu = a.weight(mu);
    let x_mu = a.multiply_monomials(&x_mono, mu).filter(|_| mu_nonzero);
    let w_x_mu = a.weight(&x_mono) + w_mu;
    push(
        "survival",
        mu_nonzero && w_mu < m && w_x_mu <= m,
        format!("weight(μ) = {w_mu} ≤ {}, weight(x·μ) = {w_x_mu} ≤ {m}", m.saturating_sub(1)),
    );

    push(
        "nonvanishing",
        x_mu.is_some(),
        if x_mu.is_some() { "x·μ ≠ 0".to_string() } else { "x·μ = 0 in A".to_string() },
    );

    let top = wgt(a)?;
    push("maximal-weight", x_mu.is_some() && w_x_mu == top, format!("weight(x·μ) = {w_x_mu}, wgt(A) = {top}"));

    let zmu_degree = z.degree + a.degree(mu);
    let basis = a.basis_of_degree(zmu_degree);
    push(
        "degree-vanishing",
        basis.is_empty(),
        if basis.is_empty() {
            format!("H^{zmu_degree}(A) = 0")
        } else {
            format!("H^{zmu_degree}(A) contains {}", a.format_monomial(&basis[0]))
        },
    );

    push(
        "parity",
        x_gen.degree % 2 == 1,
        format!("|{x}| = {} is {}", x_gen.degree, if x_gen.degree % 2 == 1 { "odd" } else { "even" }),
    );

    // op(z·μ) = Σ op'(z)·op''(μ); the split op' = op gives x·μ and every
    // other split must vanish whatever the unknown entries are
    let mu_el = Element::monomial(mu.clone());
    let mut offending = Vec::new();
    if mu_nonzero {
        for (on_z, on_mu, _) in op.cartan_splits(z.degree) {
            if on_mu.is_identity() || on_z.kills_degree(z.degree) {
                continue;
            }
            let part = table.cartan_apply(on_mu, &mu_el);
            let vanishes = match z.relation_target(on_z) {
                Some(t) => match a.generator_monomial(t) {
                    Ok(tm) => part.left_multiply(a, &Element::monomial(tm)).is_pessimistically_zero(a),
                    Err(_) => part.is_pessimistically_zero(a),
                },
                None => part.is_pessimistically_zero(a),
            };
            if !vanishes {
                offending.push(format!("{on_z} {} · {on_mu} μ", z.name));
            }
        }
    }
    push(
        "cross-term",
        mu_nonzero && offending.is_empty(),
        if offending.is_empty() {
            "every other Cartan term vanishes".to_string()
        } else {
            format!("possibly nonzero: {}", offending.join(", "))
        },
    );

    if let Some(ctx) = options.strict {
        let (passed, detail) = strict_survival(ctx, z, a, mu, m)?;
        push("strict-survival", passed, detail);
    }

    let valid = checks.iter().all(|c| c.passed);
    Ok(WitnessCertificate {
        z: z.name.clone(),
        op: op.to_string(),
        x: x.to_string(),
        mu: a.format_monomial(mu),
        mu_exponents: mu.clone(),
        m,
        checks,
        valid,
        bound: m + 1,
    })
}

/// `z·μ` dies at level `m` once `d(z)·μ` is a nonzero class of weight at
/// most `m` in E₂.
fn strict_survival(
    ctx: StrictContext<'_>,
    z: &ZClass,
    a: &AlgebraPresentation,
    mu: &Monomial,
    m: u32,
) -> Result<(bool, String), Error> {
    let Some(d) = ctx.differentials.iter().find(|d| d.source == z.name) else {
        return Ok((true, format!("no differential on {}", z.name)));
    };
    let (target, k) = d.target_power()?;
    let mut exps = vec![0u32; ctx.e2.num_generators()];
    let ti = ctx.e2.index_of(target).ok_or_else(|| Error::UnknownGenerator(target.to_string()))?;
    exps[ti] += k;
    for (g, &e) in a.generators().iter().zip(&mu.0) {
        if e > 0 {
            let i = ctx.e2.index_of(&g.name).ok_or_else(|| Error::UnknownGenerator(g.name.clone()))?;
            exps[i] += e;
        }
    }
    let product = Monomial(exps);
    if !ctx.e2.is_nonzero(&product) {
        return Ok((true, format!("{}·μ = 0 in E2", d.describe())));
    }
    let w = ctx.e2.weight(&product);
    Ok((w > m, format!("weight of {}·μ in E2 is {w}, level {m}", ctx.e2.format_monomial(&product))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExploratoryBound {
    /// Largest level at which every check, including strict survival,
    /// still passes.
    pub m: u32,
    pub bound: u32,
    /// The scan stopped at its cap rather than at a failing check.
    pub capped: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    pub cup: u32,
    pub wgt: u32,
    pub mwgt_lower: u32,
    pub certificate: Option<WitnessCertificate>,
    pub rejected: Vec<WitnessCertificate>,
    pub fallback_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exploratory: Option<ExploratoryBound>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MwgtOptions<'a> {
    pub strict: Option<StrictContext<'a>>,
    pub exploratory: bool,
}

/// Cup length, weight and the best certified lower bound.
pub fn mwgt_lower(
    a: &AlgebraPresentation,
    table: &ActionTable,
    zs: &[ZClass],
    options: MwgtOptions<'_>,
) -> Result<InvariantReport, Error> {
    let cup = cup_length(a)?;
    let w = wgt(a)?;
    let (candidates, mut fallback_reason) = find_witness_candidates(a, zs)?;
    let mut certificate: Option<WitnessCertificate> = None;
    let mut rejected = Vec::new();
    let verify = VerifyOptions { strict: options.strict };
    for c in &candidates {
        let z = zs.iter().find(|z| z.name == c.z).expect("candidate from listed z-class");
        let m = z.weight + a.weight(&c.mu) + 1;
        let cert = verify_witness(a, table, z, c.op, &c.x, &c.mu, m, verify)?;
        if cert.valid && certificate.as_ref().is_none_or(|best| cert.m > best.m) {
            if let Some(old) = certificate.replace(cert) {
                rejected.push(old);
            }
        } else {
            rejected.push(cert);
        }
    }
    if certificate.is_none() && fallback_reason.is_none() {
        fallback_reason = Some("no candidate certificate passed every check".into());
    }
    let mwgt_lower = certificate.as_ref().map_or(w, |c| w.max(c.bound));

    let exploratory = match (&certificate, options.exploratory) {
        (Some(cert), true) => {
            let z = zs.iter().find(|z| z.name == cert.z).expect("certificate from listed z-class");
            let c = candidates
                .iter()
                .find(|c| c.z == cert.z && c.x == cert.x && c.mu == cert.mu_exponents)
                .expect("certificate from candidate");
            let cap = 4 * w.max(1);
            let mut best = cert.m;
            let mut capped = true;
            for m in cert.m + 1..=cap {
                let probe = verify_witness(a, table, z, c.op, &c.x, &c.mu, m, verify)?;
                if !probe.valid {
                    capped = false;
                    break;
                }
                best = m;
            }
            Some(ExploratoryBound { m: best, bound: best + 1, capped, certified: false })
        }
        _ => None,
    };

    Ok(InvariantReport { cup, wgt: w, mwgt_lower, certificate, rejected, fallback_reason, exploratory })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorSpec;
    use crate::fp::Prime;

    fn g2() -> AlgebraPresentation {
        AlgebraPresentation::new(
            Prime::TWO,
            vec![GeneratorSpec::truncated("x3", 3, 4), GeneratorSpec::exterior("x5", 5)],
        )
        .unwrap()
    }

    #[test]
    fn g2_invariants() {
        let a = g2();
        assert_eq!(cup_length(&a).unwrap(), 4);
        assert_eq!(wgt(&a).unwrap(), 4);
        let z = [ZClass::new("z11", 11)];
        let (c, reason) = find_witness_candidates(&a, &z).unwrap();
        assert!(c.is_empty());
        assert!(reason.unwrap().contains("5 is below the smallest z-class degree 11"));
    }

    #[test]
    fn weights_raise_wgt() {
        let a = AlgebraPresentation::new(
            Prime::THREE,
            vec![GeneratorSpec::truncated("x8", 8, 3).with_weight(2), GeneratorSpec::exterior("x3", 3)],
        )
        .unwrap();
        assert_eq!(cup_length(&a).unwrap(), 3);
        assert_eq!(wgt(&a).unwrap(), 5);
    }
}
